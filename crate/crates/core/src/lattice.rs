//! Explicit finite lattices: order algebra, covers, join irreducibles,
//! refinement, and constructors for named lattices and combinations.
//!
//! Elements are dense ids `0..n`.  The order is kept both as per-element
//! up/down sets (bit vectors) and as the cover list (transitive reduction);
//! meets and joins are precomputed into n x n tables for n <= 512.

use crate::set::IdSet;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

/// Meet/join tables are precomputed up to this many elements.
const TABLE_LIMIT: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    Meet,
    Join,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundKind::Meet => write!(f, "meet"),
            BoundKind::Join => write!(f, "join"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("unknown element id {0}")]
    UnknownElement(usize),
    #[error("relation is not a partial order (cycle or antisymmetry failure at element {0})")]
    NotAPartialOrder(usize),
    #[error("not a lattice: elements {a} and {b} have no unique {kind}")]
    NotALattice { a: usize, b: usize, kind: BoundKind },
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("empty interval: {a} is not below {b}")]
    EmptyInterval { a: usize, b: usize },
}

/// How the input relation of [`FiniteLattice::build`] is to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationMode {
    /// Pairs `(a, b)` meaning `a <= b`; covers are computed by transitive reduction.
    Order,
    /// Pairs `(a, b)` meaning `a` is covered by `b`; the order is the transitive closure.
    Covers,
}

/// A witness that a family `A` refines a family `B`: each element of `A`
/// is mapped to an element of `B` above it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinementWitness {
    pub pairs: Vec<(usize, usize)>,
}

/// An explicit finite lattice over element ids `0..n`.
///
/// Immutable after construction; all queries are pure reads.
#[derive(Clone)]
pub struct FiniteLattice {
    names: Vec<String>,
    /// up[a] = { b : a <= b }
    up: Vec<IdSet>,
    /// down[a] = { b : b <= a }
    down: Vec<IdSet>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
    ji: Vec<usize>,
    ji_set: IdSet,
    /// For join irreducibles, the unique lower cover j_*.
    ji_lower: Vec<Option<usize>>,
    meet_tab: Option<Vec<u32>>,
    join_tab: Option<Vec<u32>>,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("n", &self.len())
            .field("covers", &self.covers().collect::<Vec<_>>())
            .finish()
    }
}

impl FiniteLattice {
    /// Validates a relation over named elements and builds the lattice.
    ///
    /// Fails with `NotAPartialOrder` on cycles, and with `NotALattice`
    /// (carrying a witness pair) when some pair lacks a meet or a join.
    pub fn build(
        names: Vec<String>,
        relation: &[(usize, usize)],
        mode: RelationMode,
    ) -> Result<Self, LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        for &(a, b) in relation {
            if a >= n {
                return Err(LatticeError::UnknownElement(a));
            }
            if b >= n {
                return Err(LatticeError::UnknownElement(b));
            }
        }
        // Reflexive-transitive closure; in Covers mode the input is read the
        // same way since closure of the cover relation is the order.
        let _ = mode;
        let mut up: Vec<IdSet> = (0..n).map(|a| IdSet::singleton(n, a)).collect();
        for &(a, b) in relation {
            up[a].insert(b);
        }
        // Warshall on up-sets.
        for mid in 0..n {
            for a in 0..n {
                if up[a].contains(mid) {
                    let umid = up[mid].clone();
                    up[a].union_with(&umid);
                }
            }
        }
        // Antisymmetry: a <= b <= a with a != b is a cycle.
        for a in 0..n {
            for b in up[a].iter() {
                if b != a && up[b].contains(a) {
                    return Err(LatticeError::NotAPartialOrder(a));
                }
            }
        }
        Self::from_up_sets(names, up)
    }

    /// Builds from already-validated up-sets (must be a partial order).
    fn from_up_sets(names: Vec<String>, up: Vec<IdSet>) -> Result<Self, LatticeError> {
        let n = names.len();
        let mut down: Vec<IdSet> = (0..n).map(|_| IdSet::empty(n)).collect();
        for (a, ups) in up.iter().enumerate() {
            for b in ups.iter() {
                down[b].insert(a);
            }
        }
        // Transitive reduction: b covers a iff a < b and no c with a < c < b.
        let mut lower: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut upper: Vec<Vec<usize>> = vec![Vec::new(); n];
        for a in 0..n {
            'next: for b in up[a].iter() {
                if b == a {
                    continue;
                }
                for c in up[a].iter() {
                    if c != a && c != b && up[c].contains(b) {
                        continue 'next;
                    }
                }
                lower[b].push(a);
                upper[a].push(b);
            }
        }
        for v in lower.iter_mut().chain(upper.iter_mut()) {
            v.sort_unstable();
        }

        // Bottom and top must exist and be unique.
        let bottoms: Vec<usize> = (0..n).filter(|&a| down[a].len() == 1).collect();
        let tops: Vec<usize> = (0..n).filter(|&a| up[a].len() == 1).collect();
        if bottoms.len() != 1 {
            return Err(LatticeError::NotALattice {
                a: bottoms[0],
                b: bottoms[1],
                kind: BoundKind::Meet,
            });
        }
        if tops.len() != 1 {
            return Err(LatticeError::NotALattice {
                a: tops[0],
                b: tops[1],
                kind: BoundKind::Join,
            });
        }
        let bottom = bottoms[0];
        let top = tops[0];

        let mut lat = FiniteLattice {
            names,
            up,
            down,
            lower,
            upper,
            bottom,
            top,
            ji: Vec::new(),
            ji_set: IdSet::empty(n),
            ji_lower: vec![None; n],
            meet_tab: None,
            join_tab: None,
        };

        // Lattice axioms: every pair needs a unique glb and lub.  Fill the
        // tables on the way when n is small enough.
        let with_tables = n <= TABLE_LIMIT;
        let mut meet_tab = if with_tables { vec![0u32; n * n] } else { Vec::new() };
        let mut join_tab = if with_tables { vec![0u32; n * n] } else { Vec::new() };
        for a in 0..n {
            for b in a..n {
                let m = lat
                    .bound_of_pair(a, b, BoundKind::Meet)
                    .ok_or(LatticeError::NotALattice { a, b, kind: BoundKind::Meet })?;
                let j = lat
                    .bound_of_pair(a, b, BoundKind::Join)
                    .ok_or(LatticeError::NotALattice { a, b, kind: BoundKind::Join })?;
                if with_tables {
                    meet_tab[a * n + b] = m as u32;
                    meet_tab[b * n + a] = m as u32;
                    join_tab[a * n + b] = j as u32;
                    join_tab[b * n + a] = j as u32;
                }
            }
        }
        if with_tables {
            lat.meet_tab = Some(meet_tab);
            lat.join_tab = Some(join_tab);
        }

        // Join irreducibles: exactly one lower cover (bottom has none).
        for a in 0..n {
            if a != bottom && lat.lower[a].len() == 1 {
                lat.ji.push(a);
                lat.ji_set.insert(a);
                lat.ji_lower[a] = Some(lat.lower[a][0]);
            }
        }
        Ok(lat)
    }

    /// Computes the unique glb/lub of a pair, if it exists.
    fn bound_of_pair(&self, a: usize, b: usize, kind: BoundKind) -> Option<usize> {
        let (bounds, dominates): (&Vec<IdSet>, &Vec<IdSet>) = match kind {
            BoundKind::Meet => (&self.down, &self.down),
            BoundKind::Join => (&self.up, &self.up),
        };
        let cand = bounds[a].intersection(&bounds[b]);
        // The glb is the candidate whose down-set contains all candidates
        // (dually for joins).
        let mut found = None;
        for m in cand.iter() {
            if cand.is_subset(&dominates[m]) {
                if found.is_some() {
                    return None;
                }
                found = Some(m);
            }
        }
        found
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn check_id(&self, a: usize) -> Result<(), LatticeError> {
        if a < self.len() {
            Ok(())
        } else {
            Err(LatticeError::UnknownElement(a))
        }
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// { b : a <= b }
    pub fn up_set(&self, a: usize) -> &IdSet {
        &self.up[a]
    }

    /// { b : b <= a }
    pub fn down_set(&self, a: usize) -> &IdSet {
        &self.down[a]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        match &self.meet_tab {
            Some(t) => t[a * self.len() + b] as usize,
            None => self.bound_of_pair(a, b, BoundKind::Meet).expect("validated lattice"),
        }
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        match &self.join_tab {
            Some(t) => t[a * self.len() + b] as usize,
            None => self.bound_of_pair(a, b, BoundKind::Join).expect("validated lattice"),
        }
    }

    /// Meet over an arbitrary subset; the empty meet is the top element.
    pub fn meet_set(&self, s: &IdSet) -> usize {
        s.iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join over an arbitrary subset; the empty join is the bottom element.
    pub fn join_set(&self, s: &IdSet) -> usize {
        s.iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn join_ids(&self, ids: &[usize]) -> usize {
        ids.iter().fold(self.bottom, |acc, &x| self.join(acc, x))
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower[a]
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper[a]
    }

    /// All cover pairs `(a, b)` with `a` covered by `b`, in id order.
    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |a| self.upper[a].iter().map(move |&b| (a, b)))
    }

    /// Whether `a` is covered by `b`.
    pub fn covered_by(&self, a: usize, b: usize) -> bool {
        self.lower[b].binary_search(&a).is_ok()
    }

    pub fn atoms(&self) -> &[usize] {
        &self.upper[self.bottom]
    }

    /// Nonzero join irreducibles, i.e. elements with a unique lower cover.
    pub fn ji(&self) -> &[usize] {
        &self.ji
    }

    pub fn ji_set(&self) -> &IdSet {
        &self.ji_set
    }

    pub fn is_ji(&self, a: usize) -> bool {
        self.ji_set.contains(a)
    }

    /// The unique lower cover j_* of a join irreducible.
    pub fn ji_unique_lower_cover(&self, a: usize) -> Option<usize> {
        self.ji_lower[a]
    }

    /// Ji(a) = { p in Ji(L) : p <= a }.
    pub fn ji_below(&self, a: usize) -> IdSet {
        self.down[a].intersection(&self.ji_set)
    }

    /// A refinement witness for `A << B`, when every element of `A` lies
    /// below some element of `B`.  The least witness in id order is chosen.
    pub fn refines(&self, a: &IdSet, b: &IdSet) -> Option<RefinementWitness> {
        let mut pairs = Vec::new();
        for x in a.iter() {
            let y = b.iter().find(|&y| self.leq(x, y))?;
            pairs.push((x, y));
        }
        Some(RefinementWitness { pairs })
    }

    /// The dual lattice (order reversed), with the same element names.
    pub fn dual(&self) -> FiniteLattice {
        let up = self.down.clone();
        Self::from_up_sets(self.names.clone(), up).expect("dual of a lattice is a lattice")
    }

    /// Direct product; element `(a, b)` gets id `a * |L2| + b`.
    pub fn product(l1: &FiniteLattice, l2: &FiniteLattice) -> FiniteLattice {
        let n1 = l1.len();
        let n2 = l2.len();
        let n = n1 * n2;
        let mut names = Vec::with_capacity(n);
        let mut up: Vec<IdSet> = Vec::with_capacity(n);
        for a in 0..n1 {
            for b in 0..n2 {
                names.push(format!("({},{})", l1.name(a), l2.name(b)));
                let mut s = IdSet::empty(n);
                for a2 in l1.up[a].iter() {
                    for b2 in l2.up[b].iter() {
                        s.insert(a2 * n2 + b2);
                    }
                }
                up.push(s);
            }
        }
        Self::from_up_sets(names, up).expect("product of lattices is a lattice")
    }

    /// The interval sublattice [a, b]; errors when `a` is not below `b`.
    pub fn interval(&self, a: usize, b: usize) -> Result<FiniteLattice, LatticeError> {
        self.check_id(a)?;
        self.check_id(b)?;
        if !self.leq(a, b) {
            return Err(LatticeError::EmptyInterval { a, b });
        }
        let members: Vec<usize> = (0..self.len())
            .filter(|&x| self.leq(a, x) && self.leq(x, b))
            .collect();
        Ok(self.sublattice_of(&members))
    }

    /// Restriction of the order to a subset of ids that is closed under the
    /// lattice operations of the restriction (caller's responsibility).
    fn sublattice_of(&self, members: &[usize]) -> FiniteLattice {
        let n = members.len();
        let names = members.iter().map(|&x| self.names[x].clone()).collect();
        let up = members
            .iter()
            .map(|&x| {
                IdSet::from_ids(
                    n,
                    members
                        .iter()
                        .enumerate()
                        .filter(|&(_, &y)| self.leq(x, y))
                        .map(|(i, _)| i),
                )
            })
            .collect();
        Self::from_up_sets(names, up).expect("interval of a lattice is a lattice")
    }
}

/// Named constructors.
pub mod construct {
    use super::*;

    /// The chain 0 < 1 < .. < n-1.
    pub fn chain(n: usize) -> FiniteLattice {
        assert!(n >= 1, "chain needs at least one element");
        let names = (0..n).map(|i| i.to_string()).collect();
        let rel: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        FiniteLattice::build(names, &rel, RelationMode::Covers).expect("chain is a lattice")
    }

    /// The boolean lattice of subsets of an n-element set; element ids are
    /// the subset bitmasks.
    pub fn boolean(n: usize) -> FiniteLattice {
        assert!(n <= 16, "boolean lattice limited to 16 atoms");
        let size = 1usize << n;
        let names = (0..size).map(|m| format!("{m:0width$b}", width = n.max(1))).collect();
        let mut rel = Vec::new();
        for m in 0..size {
            for b in 0..n {
                if m & (1 << b) == 0 {
                    rel.push((m, m | (1 << b)));
                }
            }
        }
        FiniteLattice::build(names, &rel, RelationMode::Covers).expect("boolean is a lattice")
    }

    /// The diamond: bottom 0, atoms a, b, c, top 1.
    pub fn m3() -> FiniteLattice {
        let names = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        let rel = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)];
        FiniteLattice::build(names, &rel, RelationMode::Covers).expect("M3 is a lattice")
    }

    /// The pentagon: 0 < a < c < 1 and 0 < b < 1.
    pub fn n5() -> FiniteLattice {
        let names = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        let rel = [(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)];
        FiniteLattice::build(names, &rel, RelationMode::Covers).expect("N5 is a lattice")
    }

    /// Finite truncation of the dual-omega-chain-times-two shape with its
    /// atom doubled: take chain(n) x 2, locate the atom on the two-element
    /// coordinate, and replace it by two incomparable copies with identical
    /// order relations elsewhere.  Lattice axioms are re-checked after
    /// doubling.
    pub fn chain_dual_times_two_doubled_atom(n: usize) -> Result<FiniteLattice, LatticeError> {
        assert!(n >= 2, "need a chain of length at least 2");
        let base = FiniteLattice::product(&chain(n), &chain(2));
        // Atom (0, 1): chain bottom paired with the top of the 2-chain.
        let t = 1; // id of (0,1) under the product numbering
        let nb = base.len();
        let mut names: Vec<String> = base.names().to_vec();
        names[t] = "t".into();
        names.push("t'".into());
        let mut rel: Vec<(usize, usize)> = Vec::new();
        for a in 0..nb {
            for b in 0..nb {
                if a != b && base.leq(a, b) {
                    rel.push((a, b));
                }
            }
        }
        // The copy t' receives exactly the strict relations of t.
        for a in 0..nb {
            if a != t && base.lt(a, t) {
                rel.push((a, nb));
            }
            if a != t && base.lt(t, a) {
                rel.push((nb, a));
            }
        }
        FiniteLattice::build(names, &rel, RelationMode::Order)
    }
}
