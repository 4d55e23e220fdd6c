//! JSON file formats and DOT emission.
//!
//! Lattice files carry element names plus either the cover relation or the
//! full order; closure files carry a ground set plus either the closed-set
//! family or an implication base; semilattice files carry a meet table.
//! DOT output is deterministic: identical inputs produce identical bytes.

use crate::checks;
use crate::closure::{ClosureSystem, Implication};
use crate::explorer::WindowGraph;
use crate::generators::MeetSemilattice;
use crate::lattice::{FiniteLattice, RelationMode};
use crate::set::IdSet;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid file: {0}")]
    Format(String),
    #[error("lattice: {0}")]
    Lattice(#[from] crate::lattice::LatticeError),
    #[error("closure system: {0}")]
    Closure(#[from] crate::closure::ClosureError),
    #[error("semilattice: {0}")]
    Generator(#[from] crate::generators::GeneratorError),
}

/// On-disk lattice: `elements` plus exactly one of `covers` / `leq`, both
/// as index pairs `[lower, upper]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeFile {
    pub elements: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<(usize, usize)>>,
}

impl LatticeFile {
    pub fn into_lattice(self) -> Result<FiniteLattice, IoError> {
        let (rel, mode) = match (self.covers, self.leq) {
            (Some(c), None) => (c, RelationMode::Covers),
            (None, Some(o)) => (o, RelationMode::Order),
            _ => {
                return Err(IoError::Format(
                    "a lattice file needs exactly one of `covers` or `leq`".into(),
                ))
            }
        };
        Ok(FiniteLattice::build(self.elements, &rel, mode)?)
    }

    pub fn from_lattice(l: &FiniteLattice) -> LatticeFile {
        LatticeFile {
            elements: l.names().to_vec(),
            covers: Some(l.covers().collect()),
            leq: None,
        }
    }
}

/// On-disk closure system: `ground` plus exactly one of `closed` (a list
/// of index lists) or `implications` (`{"if": [...], "then": i}`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClosureFile {
    pub ground: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub implications: Option<Vec<ImplicationFile>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ImplicationFile {
    #[serde(rename = "if")]
    pub premise: Vec<usize>,
    #[serde(rename = "then")]
    pub conclusion: usize,
}

impl ClosureFile {
    pub fn into_closure(self) -> Result<ClosureSystem, IoError> {
        let n = self.ground.len();
        match (self.closed, self.implications) {
            (Some(closed), None) => {
                for set in &closed {
                    if let Some(&bad) = set.iter().find(|&&e| e >= n) {
                        return Err(IoError::Format(format!(
                            "closed set references element {bad} outside the ground set"
                        )));
                    }
                }
                let family: Vec<IdSet> = closed
                    .iter()
                    .map(|s| IdSet::from_ids(n, s.iter().copied()))
                    .collect();
                Ok(ClosureSystem::from_family(self.ground, &family)?)
            }
            (None, Some(imps)) => {
                for imp in &imps {
                    if imp.conclusion >= n || imp.premise.iter().any(|&e| e >= n) {
                        return Err(IoError::Format(
                            "implication references an element outside the ground set".into(),
                        ));
                    }
                }
                let base = imps
                    .into_iter()
                    .map(|i| Implication {
                        premise: IdSet::from_ids(n, i.premise),
                        conclusion: i.conclusion,
                    })
                    .collect();
                Ok(ClosureSystem::from_implications(self.ground, base)?)
            }
            _ => Err(IoError::Format(
                "a closure file needs exactly one of `closed` or `implications`".into(),
            )),
        }
    }

    pub fn from_closure(cs: &ClosureSystem) -> ClosureFile {
        if let Some(base) = cs.implication_base() {
            ClosureFile {
                ground: cs.ground_names().to_vec(),
                closed: None,
                implications: Some(
                    base.iter()
                        .map(|i| ImplicationFile {
                            premise: i.premise.to_vec(),
                            conclusion: i.conclusion,
                        })
                        .collect(),
                ),
            }
        } else {
            ClosureFile {
                ground: cs.ground_names().to_vec(),
                closed: Some(
                    cs.family()
                        .expect("family kind")
                        .iter()
                        .map(|s| s.to_vec())
                        .collect(),
                ),
                implications: None,
            }
        }
    }
}

/// On-disk meet semilattice: element names plus the row-major meet table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SemilatticeFile {
    pub elements: Vec<String>,
    pub meet_table: Vec<Vec<usize>>,
}

impl SemilatticeFile {
    pub fn into_semilattice(self) -> Result<MeetSemilattice, IoError> {
        let n = self.elements.len();
        if self.meet_table.len() != n || self.meet_table.iter().any(|r| r.len() != n) {
            return Err(IoError::Format(format!(
                "meet table must be {n}x{n} to match the element list"
            )));
        }
        let flat: Vec<usize> = self.meet_table.into_iter().flatten().collect();
        Ok(MeetSemilattice::build(self.elements, flat)?)
    }

    pub fn from_semilattice(s: &MeetSemilattice) -> SemilatticeFile {
        let n = s.len();
        SemilatticeFile {
            elements: s.names().to_vec(),
            meet_table: (0..n)
                .map(|a| (0..n).map(|b| s.meet(a, b)).collect())
                .collect(),
        }
    }
}

pub fn load_lattice(path: &Path) -> Result<FiniteLattice, IoError> {
    let text = std::fs::read_to_string(path)?;
    let file: LatticeFile = serde_json::from_str(&text)?;
    file.into_lattice()
}

pub fn save_lattice(path: &Path, l: &FiniteLattice) -> Result<(), IoError> {
    let text = serde_json::to_string_pretty(&LatticeFile::from_lattice(l))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

pub fn load_closure(path: &Path) -> Result<ClosureSystem, IoError> {
    let text = std::fs::read_to_string(path)?;
    let file: ClosureFile = serde_json::from_str(&text)?;
    file.into_closure()
}

pub fn save_closure(path: &Path, cs: &ClosureSystem) -> Result<(), IoError> {
    let text = serde_json::to_string_pretty(&ClosureFile::from_closure(cs))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

pub fn load_semilattice(path: &Path) -> Result<MeetSemilattice, IoError> {
    let text = std::fs::read_to_string(path)?;
    let file: SemilatticeFile = serde_json::from_str(&text)?;
    file.into_semilattice()
}

/// Node annotations for Hasse diagrams.
#[derive(Debug, Clone, Default)]
pub struct DotOptions {
    /// Double-circle the join irreducibles.
    pub mark_ji: bool,
    /// Shade the extreme points of the given element.
    pub extreme_of: Option<usize>,
    /// Highlight these elements (e.g. a property-failure witness).
    pub witness: Vec<usize>,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram of a finite lattice, edges drawn bottom-to-top.
pub fn lattice_dot(l: &FiniteLattice, opts: &DotOptions) -> String {
    let extreme: Option<IdSet> = opts
        .extreme_of
        .map(|w| checks::extreme_point_join(l, w).extreme);
    let mut out = String::new();
    out.push_str("digraph lattice {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=circle];\n");
    for a in 0..l.len() {
        let mut attrs = vec![format!("label={}", quote(l.name(a)))];
        if opts.mark_ji && l.is_ji(a) {
            attrs.push("peripheries=2".into());
        }
        if extreme.as_ref().is_some_and(|e| e.contains(a)) {
            attrs.push("style=filled".into());
            attrs.push("fillcolor=lightgrey".into());
        }
        if opts.witness.contains(&a) {
            attrs.push("color=red".into());
            attrs.push("penwidth=2".into());
        }
        let _ = writeln!(out, "  n{a} [{}];", attrs.join(", "));
    }
    for (lo, hi) in l.covers() {
        let _ = writeln!(out, "  n{lo} -> n{hi};");
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of an explored window; frontier (unexpanded or
/// truncated) nodes are drawn dashed.
pub fn window_dot(g: &WindowGraph) -> String {
    let mut out = String::new();
    out.push_str("digraph window {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=circle];\n");
    for (i, node) in g.nodes.iter().enumerate() {
        let mut attrs = vec![format!("label={}", quote(&node.label))];
        if node.frontier {
            attrs.push("style=dashed".into());
        }
        let _ = writeln!(out, "  n{i} [{}];", attrs.join(", "));
    }
    let mut edges = g.edges.clone();
    edges.sort_unstable();
    for (upper, lower) in edges {
        let _ = writeln!(out, "  n{lower} -> n{upper};");
    }
    out.push_str("}\n");
    out
}
