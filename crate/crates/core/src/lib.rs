//! Finite lattices, closure systems, and convex-geometry property checkers.
//!
//! The crate is organized around five pieces:
//!
//! - [`lattice`]: explicit finite lattices with order algebra, covers,
//!   join irreducibles, and named constructors;
//! - [`closure`]: closure systems `(X, gamma)` given by a Moore family or an
//!   implication base, with anti-exchange and cover-condition checkers;
//! - [`checks`]: lattice-theoretic predicates (join semidistributivity,
//!   lower semimodularity, local distributivity, canonical join
//!   decompositions) and the consolidated equivalence report;
//! - [`generators`]: convex-subset, subsemilattice, suborder, and filter
//!   lattice constructions, plus enumerated and random corpora;
//! - [`explorer`]: bounded top-down exploration of infinite strongly
//!   coatomic lattices given by oracles, with three-valued verdicts.
//!
//! [`io`] holds the JSON file formats and DOT emission used by the CLI.

pub mod checks;
pub mod closure;
pub mod explorer;
pub mod generators;
pub mod io;
pub mod lattice;
pub mod set;

pub use closure::ClosureSystem;
pub use lattice::FiniteLattice;
pub use set::IdSet;
