//! Bounded top-down exploration of infinite strongly coatomic lattices.
//!
//! A [`LazyLattice`] presents a lattice through oracles: a top element, a
//! lower-cover enumerator with a per-element budget, and a partial meet.
//! [`explore`] materializes a finite window of the order, and
//! [`window_check`] evaluates properties over that window with three-valued
//! [`Verdict`]s: a failure is reported only when the window certifies it, a
//! positive answer only when no violation can exist among explored
//! elements, and everything truncation could hide stays inconclusive.

use crate::set::IdSet;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExplorerError {
    #[error("oracle inconsistent: {0}")]
    OracleInconsistent(String),
    #[error("property requires a meet oracle, but the instance has none")]
    PropertyNeedsMeetOracle,
    #[error("unknown instance `{0}`")]
    UnknownInstance(String),
    #[error("element `{0}` is not in the explored window")]
    ElementNotInWindow(String),
    #[error("exploration needs depth >= 1 and budget >= 1")]
    BadExplorationBounds,
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
}

/// Extensional description of a lattice element as a subset of ω, when the
/// instance has one.  Lets the explorer measure cover differences exactly
/// even for infinite sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetRepr {
    Finite(BTreeSet<u64>),
    /// ω minus the given finite set.
    CofiniteExcluding(BTreeSet<u64>),
}

impl SetRepr {
    /// |upper ∖ lower|; `None` when the difference is infinite.
    pub fn difference_size(upper: &SetRepr, lower: &SetRepr) -> Option<usize> {
        use SetRepr::*;
        match (upper, lower) {
            (Finite(u), Finite(l)) => Some(u.difference(l).count()),
            (Finite(u), CofiniteExcluding(e)) => Some(u.intersection(e).count()),
            (CofiniteExcluding(_), Finite(_)) => None,
            (CofiniteExcluding(eu), CofiniteExcluding(el)) => {
                Some(el.difference(eu).count())
            }
        }
    }
}

/// An infinite (or just large) lattice presented by oracles.
///
/// Oracles must be pure: repeated queries with the same arguments return
/// the same answers, covers are pairwise distinct and strictly below their
/// input.  [`explore`] re-queries to detect violations.
pub trait LazyLattice {
    type Elem: Clone + Eq + Hash + Ord + fmt::Display;

    fn top(&self) -> Self::Elem;

    /// Lower covers of `e`, at most `budget` of them in a fixed canonical
    /// order; the flag is true when the output was capped.
    fn lower_covers(&self, e: &Self::Elem, budget: usize) -> (Vec<Self::Elem>, bool);

    /// Meet, when the instance can compute it.
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// Extensional set description, when the instance has one.
    fn set_repr(&self, _e: &Self::Elem) -> Option<SetRepr> {
        None
    }
}

/// A finite explored fragment: the downward closure of the top under the
/// cover oracle, to a depth, with truncation marks.
#[derive(Debug, Clone)]
pub struct Window<E> {
    /// Elements in canonical (`Ord`) order.
    pub elements: Vec<E>,
    /// Explored lower-cover edges, per element, ascending.
    pub lower: Vec<Vec<usize>>,
    /// Whether the cover oracle was ever invoked on the element.
    pub expanded: Vec<bool>,
    /// Whether the oracle capped its cover list for the element.
    pub truncated: Vec<bool>,
    /// Recursively fully explored: expanded, untruncated, and all explored
    /// covers closed.  Below a closed element the window order is exact.
    pub closed: Vec<bool>,
    pub top: usize,
    pub depth: usize,
    pub budget: usize,
    /// down[i] = reflexive-transitive closure of explored edges below i.
    down: Vec<IdSet>,
}

impl<E: Clone + Eq + Hash + Ord + fmt::Display> Window<E> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Window order: reflexive-transitive closure of explored cover edges.
    /// An under-approximation of the true order, exact below closed
    /// elements.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b].contains(a)
    }

    pub fn any_truncation(&self) -> bool {
        self.truncated.iter().any(|&t| t)
            || self.expanded.iter().any(|&e| !e)
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }

    pub fn label(&self, i: usize) -> String {
        self.elements[i].to_string()
    }

    /// Display-labelled digest for rendering.
    pub fn graph(&self) -> WindowGraph {
        WindowGraph {
            nodes: (0..self.len())
                .map(|i| WindowNode {
                    label: self.label(i),
                    frontier: !self.expanded[i] || self.truncated[i],
                })
                .collect(),
            edges: (0..self.len())
                .flat_map(|u| self.lower[u].iter().map(move |&l| (u, l)))
                .collect(),
            top: self.top,
        }
    }

    /// Whether every window element is the window-join of the window join
    /// irreducibles below it (elements with at most one explored lower
    /// cover).  A consistency probe for spatiality, not a proof.
    pub fn spatial_consistent(&self) -> bool {
        let n = self.len();
        let jis: Vec<usize> = (0..n).filter(|&i| self.lower[i].len() <= 1).collect();
        (0..n).all(|x| {
            let below: Vec<usize> = jis.iter().copied().filter(|&j| self.leq(j, x)).collect();
            // x must be the least window upper bound of `below`.
            let ubs: Vec<usize> = (0..n)
                .filter(|&v| below.iter().all(|&j| self.leq(j, v)))
                .collect();
            ubs.contains(&x) && ubs.iter().all(|&v| self.leq(x, v))
        })
    }
}

/// Rendering digest of a window: display labels, cover edges, frontier
/// marks on unexpanded or truncated nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowGraph {
    pub nodes: Vec<WindowNode>,
    /// (upper, lower) pairs.
    pub edges: Vec<(usize, usize)>,
    pub top: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowNode {
    pub label: String,
    pub frontier: bool,
}

/// Breadth-first downward closure of the top to `depth` levels, expanding
/// each element's covers up to `budget`.  Elements are deduplicated by
/// equality; every oracle call is repeated once to detect nondeterminism.
pub fn explore<L: LazyLattice>(
    ll: &L,
    depth: usize,
    budget: usize,
) -> Result<Window<L::Elem>, ExplorerError> {
    if depth == 0 || budget == 0 {
        return Err(ExplorerError::BadExplorationBounds);
    }
    let top = ll.top();
    let mut elements: Vec<L::Elem> = vec![top.clone()];
    let mut index: HashMap<L::Elem, usize> = HashMap::new();
    index.insert(top, 0);
    let mut lower: Vec<Vec<usize>> = vec![Vec::new()];
    let mut expanded = vec![false];
    let mut truncated = vec![false];
    let mut frontier = vec![0usize];
    for _level in 0..depth {
        let mut next = Vec::new();
        for &e in &frontier {
            if expanded[e] {
                continue;
            }
            let elem = elements[e].clone();
            let (covers, capped) = ll.lower_covers(&elem, budget);
            let (again, capped2) = ll.lower_covers(&elem, budget);
            if covers != again || capped != capped2 {
                return Err(ExplorerError::OracleInconsistent(format!(
                    "lower_covers({elem}) changed between queries"
                )));
            }
            if covers.len() > budget {
                return Err(ExplorerError::OracleInconsistent(format!(
                    "lower_covers({elem}) exceeded the budget"
                )));
            }
            expanded[e] = true;
            truncated[e] = capped;
            let mut seen_here = Vec::new();
            for c in covers {
                if c == elem {
                    return Err(ExplorerError::OracleInconsistent(format!(
                        "cover of {elem} is not strictly below it"
                    )));
                }
                let id = *index.entry(c.clone()).or_insert_with(|| {
                    elements.push(c);
                    lower.push(Vec::new());
                    expanded.push(false);
                    truncated.push(false);
                    next.push(elements.len() - 1);
                    elements.len() - 1
                });
                if seen_here.contains(&id) {
                    return Err(ExplorerError::OracleInconsistent(format!(
                        "duplicate cover reported for {elem}"
                    )));
                }
                seen_here.push(id);
                lower[e].push(id);
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }

    // Remap to canonical element order for determinism regardless of
    // discovery order.
    let n = elements.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by(|&a, &b| elements[a].cmp(&elements[b]));
    let mut pos = vec![0usize; n];
    for (new, &old) in perm.iter().enumerate() {
        pos[old] = new;
    }
    let mut new_elements = Vec::with_capacity(n);
    let mut new_lower = vec![Vec::new(); n];
    let mut new_expanded = vec![false; n];
    let mut new_truncated = vec![false; n];
    for (new, &old) in perm.iter().enumerate() {
        new_elements.push(elements[old].clone());
        new_lower[new] = lower[old].iter().map(|&l| pos[l]).collect();
        new_lower[new].sort_unstable();
        new_expanded[new] = expanded[old];
        new_truncated[new] = truncated[old];
    }
    let top_id = pos[0];

    // Transitive closure; a cycle means some "cover" was not strictly
    // below its element.
    let mut down: Vec<IdSet> = (0..n).map(|i| IdSet::singleton(n, i)).collect();
    for _ in 0..n {
        let mut changed = false;
        for i in 0..n {
            for &l in &new_lower[i] {
                let dl = down[l].clone();
                let before = down[i].len();
                down[i].union_with(&dl);
                changed |= down[i].len() != before;
            }
        }
        if !changed {
            break;
        }
    }
    for i in 0..n {
        for &l in &new_lower[i] {
            if down[l].contains(i) {
                return Err(ExplorerError::OracleInconsistent(format!(
                    "cover cycle through {}",
                    new_elements[i]
                )));
            }
        }
    }

    // closed = expanded, untruncated, and all explored covers closed.
    let mut closed = vec![false; n];
    loop {
        let mut changed = false;
        for i in 0..n {
            if !closed[i]
                && new_expanded[i]
                && !new_truncated[i]
                && new_lower[i].iter().all(|&l| closed[l])
            {
                closed[i] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    Ok(Window {
        elements: new_elements,
        lower: new_lower,
        expanded: new_expanded,
        truncated: new_truncated,
        closed,
        top: top_id,
        depth,
        budget,
        down,
    })
}

/// A property evaluable over a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WindowProperty<E> {
    /// Every cover pair differs in exactly one point (needs set
    /// descriptions).
    CoverSingleton,
    /// Each cover `c` of `w` is separated from `w` by a unique minimal
    /// join irreducible.
    UniqueJ,
    /// If `u` covers two distinct elements `a, b`, then `a` and `b` both
    /// cover `a ∧ b`.
    LowerSemimodular,
    /// There is a minimal `u` with `b ∨ u = a`.
    StronglySpatialAt(E, E),
}

/// Verdict status; a window can certify failures and rule out violations
/// among explored elements, but truncation keeps everything else open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    HoldsInWindow,
    FailsWithWitness,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowInfo {
    pub depth: usize,
    pub budget: usize,
    pub elements: usize,
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    pub window: WindowInfo,
}

impl Verdict {
    fn info<E: Clone + Eq + Hash + Ord + fmt::Display>(w: &Window<E>) -> WindowInfo {
        WindowInfo {
            depth: w.depth,
            budget: w.budget,
            elements: w.len(),
            truncated: w.any_truncation(),
        }
    }

    fn holds<E: Clone + Eq + Hash + Ord + fmt::Display>(w: &Window<E>) -> Verdict {
        Verdict {
            status: VerdictStatus::HoldsInWindow,
            witness: None,
            window: Self::info(w),
        }
    }

    fn fails<E: Clone + Eq + Hash + Ord + fmt::Display>(
        w: &Window<E>,
        witness: Vec<usize>,
    ) -> Verdict {
        Verdict {
            status: VerdictStatus::FailsWithWitness,
            witness: Some(witness.into_iter().map(|i| w.label(i)).collect()),
            window: Self::info(w),
        }
    }

    fn inconclusive<E: Clone + Eq + Hash + Ord + fmt::Display>(w: &Window<E>) -> Verdict {
        Verdict {
            status: VerdictStatus::Inconclusive,
            witness: None,
            window: Self::info(w),
        }
    }
}

/// Evaluates a property over the window.  Failures are certified: the
/// witness is valid in the true lattice, not just the window.  A positive
/// verdict means no violation can exist among the explored elements.
pub fn window_check<L: LazyLattice>(
    ll: &L,
    w: &Window<L::Elem>,
    property: &WindowProperty<L::Elem>,
) -> Result<Verdict, ExplorerError> {
    match property {
        WindowProperty::CoverSingleton => Ok(check_cover_singleton(ll, w)),
        WindowProperty::UniqueJ => Ok(check_unique_j(w)),
        WindowProperty::LowerSemimodular => {
            let t = ll.top();
            if ll.meet(&t, &t).is_none() {
                return Err(ExplorerError::PropertyNeedsMeetOracle);
            }
            Ok(check_lower_semimodular(w))
        }
        WindowProperty::StronglySpatialAt(a, b) => {
            let ai = w
                .index_of(a)
                .ok_or_else(|| ExplorerError::ElementNotInWindow(a.to_string()))?;
            let bi = w
                .index_of(b)
                .ok_or_else(|| ExplorerError::ElementNotInWindow(b.to_string()))?;
            Ok(check_strongly_spatial_at(w, ai, bi))
        }
    }
}

fn check_cover_singleton<L: LazyLattice>(ll: &L, w: &Window<L::Elem>) -> Verdict {
    let mut all_measured = true;
    for u in 0..w.len() {
        for &l in &w.lower[u] {
            let (ru, rl) = (ll.set_repr(&w.elements[u]), ll.set_repr(&w.elements[l]));
            match (ru, rl) {
                (Some(ru), Some(rl)) => {
                    // Oracle contract says (u, l) is a true cover, so a
                    // non-singleton difference is a certified violation.
                    if SetRepr::difference_size(&ru, &rl) != Some(1) {
                        return Verdict::fails(w, vec![l, u]);
                    }
                }
                _ => all_measured = false,
            }
        }
    }
    if all_measured {
        Verdict::holds(w)
    } else {
        Verdict::inconclusive(w)
    }
}

/// Below a closed element the window coincides with the true lattice, so
/// join irreducibles and minimal separators are exact there.
fn check_unique_j<E: Clone + Eq + Hash + Ord + fmt::Display>(w: &Window<E>) -> Verdict {
    let n = w.len();
    let ji: Vec<usize> = (0..n)
        .filter(|&j| w.closed[j] && w.lower[j].len() == 1)
        .collect();
    for u in (0..n).filter(|&u| w.closed[u]) {
        for &c in &w.lower[u] {
            let seps: Vec<usize> = ji
                .iter()
                .copied()
                .filter(|&j| w.leq(j, u) && !w.leq(j, c))
                .collect();
            let minimal: Vec<usize> = seps
                .iter()
                .copied()
                .filter(|&j| seps.iter().all(|&k| k == j || !w.leq(k, j)))
                .collect();
            if minimal.len() != 1 {
                return Verdict::fails(w, vec![u, c]);
            }
        }
    }
    if w.closed.iter().all(|&c| c) {
        Verdict::holds(w)
    } else {
        Verdict::inconclusive(w)
    }
}

fn check_lower_semimodular<E: Clone + Eq + Hash + Ord + fmt::Display>(
    w: &Window<E>,
) -> Verdict {
    let n = w.len();
    for u in (0..n).filter(|&u| w.closed[u]) {
        let covers = &w.lower[u];
        for (i, &a) in covers.iter().enumerate() {
            for &b in &covers[i + 1..] {
                // Below closed u the order is exact: the meet is the
                // greatest common lower bound in the window.
                let common: Vec<usize> = (0..n)
                    .filter(|&x| w.leq(x, a) && w.leq(x, b))
                    .collect();
                let Some(m) = common
                    .iter()
                    .copied()
                    .find(|&m| common.iter().all(|&x| w.leq(x, m)))
                else {
                    continue; // not a lattice fragment we can judge
                };
                let a_covers_m = w.lower[a].contains(&m);
                let b_covers_m = w.lower[b].contains(&m);
                if !(a_covers_m && b_covers_m) {
                    return Verdict::fails(w, vec![u, a, b, m]);
                }
            }
        }
    }
    if w.closed.iter().all(|&c| c) {
        Verdict::holds(w)
    } else {
        Verdict::inconclusive(w)
    }
}

/// Minimality searches descend unbounded chains, so a finite window can
/// only certify the property when it is complete (everything closed).
fn check_strongly_spatial_at<E: Clone + Eq + Hash + Ord + fmt::Display>(
    w: &Window<E>,
    a: usize,
    b: usize,
) -> Verdict {
    if !w.closed.iter().all(|&c| c) {
        return Verdict::inconclusive(w);
    }
    let n = w.len();
    let join = |x: usize, y: usize| -> Option<usize> {
        let ubs: Vec<usize> = (0..n).filter(|&v| w.leq(x, v) && w.leq(y, v)).collect();
        ubs.iter().copied().find(|&v| ubs.iter().all(|&u2| w.leq(v, u2)))
    };
    let candidates: Vec<usize> = (0..n).filter(|&u| join(b, u) == Some(a)).collect();
    if candidates.is_empty() {
        // b never reaches a by joining; nothing to be minimal about.
        return Verdict::holds(w);
    }
    let has_minimal = candidates
        .iter()
        .any(|&u| candidates.iter().all(|&v| v == u || !w.leq(v, u)));
    if has_minimal {
        Verdict::holds(w)
    } else {
        Verdict::fails(w, vec![a, b])
    }
}

// ---------------------------------------------------------------------------
// Named instances
// ---------------------------------------------------------------------------

/// The lattice K: a descending chain 1 > a1 > a2 > … > 0 together with a
/// single extra element 0 < b < 1.  Strongly coatomic and spatial, but the
/// minimal-relative-complement search below b ∨ a1 = 1 never terminates.
pub struct LatticeK;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KElem {
    Top,
    A(u64),
    B,
    Bottom,
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KElem::Top => write!(f, "1"),
            KElem::A(i) => write!(f, "a{i}"),
            KElem::B => write!(f, "b"),
            KElem::Bottom => write!(f, "0"),
        }
    }
}

impl LazyLattice for LatticeK {
    type Elem = KElem;

    fn top(&self) -> KElem {
        KElem::Top
    }

    fn lower_covers(&self, e: &KElem, budget: usize) -> (Vec<KElem>, bool) {
        let covers = match *e {
            KElem::Top => vec![KElem::A(1), KElem::B],
            KElem::A(i) => vec![KElem::A(i + 1)],
            KElem::B => vec![KElem::Bottom],
            KElem::Bottom => vec![],
        };
        let capped = covers.len() > budget;
        (covers.into_iter().take(budget).collect(), capped)
    }

    fn meet(&self, a: &KElem, b: &KElem) -> Option<KElem> {
        use KElem::*;
        Some(match (a, b) {
            (Top, x) | (x, Top) => x.clone(),
            (Bottom, _) | (_, Bottom) => Bottom,
            (A(i), A(j)) => A(*i.max(j)),
            (B, B) => B,
            (A(_), B) | (B, A(_)) => Bottom,
        })
    }
}

/// The closure system on ω whose closed sets are the finite sets and the
/// sets containing 0, ordered by inclusion.  Strongly coatomic with
/// singleton cover differences, but not upper continuous: with
/// F_k = {1,…,k}, the meet {0} ∧ F_k is empty for every k while the F_k
/// increase towards a set whose meet with {0} is {0}.
pub struct OmegaZeroOrFinite;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OmegaSet {
    Finite(BTreeSet<u64>),
    /// ω ∖ E for a finite E with 0 ∉ E (infinite closed sets contain 0).
    Cofinite(BTreeSet<u64>),
}

impl OmegaSet {
    pub fn finite<I: IntoIterator<Item = u64>>(xs: I) -> OmegaSet {
        OmegaSet::Finite(xs.into_iter().collect())
    }

    pub fn cofinite_excluding<I: IntoIterator<Item = u64>>(xs: I) -> OmegaSet {
        let e: BTreeSet<u64> = xs.into_iter().collect();
        assert!(!e.contains(&0), "infinite closed sets must contain 0");
        OmegaSet::Cofinite(e)
    }

    fn repr(&self) -> SetRepr {
        match self {
            OmegaSet::Finite(s) => SetRepr::Finite(s.clone()),
            OmegaSet::Cofinite(e) => SetRepr::CofiniteExcluding(e.clone()),
        }
    }
}

impl fmt::Display for OmegaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, s: &BTreeSet<u64>) -> fmt::Result {
            write!(f, "{{")?;
            for (i, x) in s.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")
        }
        match self {
            OmegaSet::Finite(s) => list(f, s),
            OmegaSet::Cofinite(e) if e.is_empty() => write!(f, "ω"),
            OmegaSet::Cofinite(e) => {
                write!(f, "ω∖")?;
                list(f, e)
            }
        }
    }
}

impl LazyLattice for OmegaZeroOrFinite {
    type Elem = OmegaSet;

    fn top(&self) -> OmegaSet {
        OmegaSet::Cofinite(BTreeSet::new())
    }

    fn lower_covers(&self, e: &OmegaSet, budget: usize) -> (Vec<OmegaSet>, bool) {
        match e {
            // Covers of a finite closed set: drop any one point, in
            // increasing order of the removed point.
            OmegaSet::Finite(s) => {
                let covers: Vec<OmegaSet> = s
                    .iter()
                    .take(budget)
                    .map(|&x| {
                        let mut t = s.clone();
                        t.remove(&x);
                        OmegaSet::Finite(t)
                    })
                    .collect();
                (covers, s.len() > budget)
            }
            // Covers of an infinite closed set S: S ∖ {x} for x ∈ S,
            // x ≠ 0 (dropping 0 leaves an infinite set without 0, which
            // is not closed).  Infinitely many, so always truncated.
            OmegaSet::Cofinite(excl) => {
                let covers: Vec<OmegaSet> = (1u64..)
                    .filter(|x| !excl.contains(x))
                    .take(budget)
                    .map(|x| {
                        let mut e2 = excl.clone();
                        e2.insert(x);
                        OmegaSet::Cofinite(e2)
                    })
                    .collect();
                (covers, true)
            }
        }
    }

    fn meet(&self, a: &OmegaSet, b: &OmegaSet) -> Option<OmegaSet> {
        use OmegaSet::*;
        // Closed sets are intersection-closed, so the meet is the
        // set-theoretic intersection.
        Some(match (a, b) {
            (Finite(s), Finite(t)) => Finite(s.intersection(t).copied().collect()),
            (Finite(s), Cofinite(e)) | (Cofinite(e), Finite(s)) => {
                Finite(s.iter().copied().filter(|x| !e.contains(x)).collect())
            }
            (Cofinite(e1), Cofinite(e2)) => Cofinite(e1.union(e2).copied().collect()),
        })
    }

    fn set_repr(&self, e: &OmegaSet) -> Option<SetRepr> {
        Some(e.repr())
    }
}

/// The dual ω-chain times the two-element chain, with the atom of the
/// product duplicated.  Top-down windows only ever see the grid part
/// (k, i) with k ∈ ω, i ∈ {0, 1}; the duplicated atoms and the bottom sit
/// below every infinite descending chain and are unreachable at finite
/// depth.
pub struct ChainDualTimesTwoDoubledAtom;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DoubledElem {
    /// (k, i): k steps down the dual ω chain, times i ∈ {0, 1}.
    Grid(u64, u8),
    T1,
    T2,
    Bottom,
}

impl fmt::Display for DoubledElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DoubledElem::Grid(k, i) => write!(f, "({k},{i})"),
            DoubledElem::T1 => write!(f, "t1"),
            DoubledElem::T2 => write!(f, "t2"),
            DoubledElem::Bottom => write!(f, "0"),
        }
    }
}

impl LazyLattice for ChainDualTimesTwoDoubledAtom {
    type Elem = DoubledElem;

    fn top(&self) -> DoubledElem {
        DoubledElem::Grid(0, 1)
    }

    fn lower_covers(&self, e: &DoubledElem, budget: usize) -> (Vec<DoubledElem>, bool) {
        let covers = match *e {
            DoubledElem::Grid(k, 1) => vec![DoubledElem::Grid(k, 0), DoubledElem::Grid(k + 1, 1)],
            DoubledElem::Grid(k, _) => vec![DoubledElem::Grid(k + 1, 0)],
            DoubledElem::T1 | DoubledElem::T2 => vec![DoubledElem::Bottom],
            DoubledElem::Bottom => vec![],
        };
        let capped = covers.len() > budget;
        (covers.into_iter().take(budget).collect(), capped)
    }

    fn meet(&self, a: &DoubledElem, b: &DoubledElem) -> Option<DoubledElem> {
        use DoubledElem::*;
        Some(match (a, b) {
            (Bottom, _) | (_, Bottom) => Bottom,
            (Grid(k, i), Grid(l, j)) => Grid(*k.max(l), *i.min(j)),
            (T1, T1) => T1,
            (T2, T2) => T2,
            (T1, T2) | (T2, T1) => Bottom,
            // t1, t2 sit below every (k, 1) and are incomparable to the
            // (k, 0) chain except through the bottom.
            (Grid(_, 1), t @ (T1 | T2)) | (t @ (T1 | T2), Grid(_, 1)) => t.clone(),
            (Grid(_, _), T1 | T2) | (T1 | T2, Grid(_, _)) => Bottom,
        })
    }
}

/// Instance names accepted by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedInstance {
    LatticeK,
    OmegaZeroOrFinite,
    ChainDualTimesTwoDoubledAtom,
}

impl FromStr for NamedInstance {
    type Err = ExplorerError;

    fn from_str(s: &str) -> Result<Self, ExplorerError> {
        match s {
            "lattice_K" | "lattice_k" => Ok(NamedInstance::LatticeK),
            "omega_zero_or_finite" => Ok(NamedInstance::OmegaZeroOrFinite),
            "chain_dual_times_two_doubled_atom" => {
                Ok(NamedInstance::ChainDualTimesTwoDoubledAtom)
            }
            other => Err(ExplorerError::UnknownInstance(other.to_string())),
        }
    }
}

/// A property spelled with display labels, as on the CLI:
/// `cover_singleton`, `unique_j`, `lower_semimodular`, or
/// `strongly_spatial_at:<a>,<b>` (with `top` accepted for the window top).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertySpec {
    CoverSingleton,
    UniqueJ,
    LowerSemimodular,
    StronglySpatialAt(String, String),
}

impl FromStr for PropertySpec {
    type Err = ExplorerError;

    fn from_str(s: &str) -> Result<Self, ExplorerError> {
        match s {
            "cover_singleton" => Ok(PropertySpec::CoverSingleton),
            "unique_j" => Ok(PropertySpec::UniqueJ),
            "lower_semimodular" => Ok(PropertySpec::LowerSemimodular),
            _ => {
                if let Some(rest) = s.strip_prefix("strongly_spatial_at:") {
                    let mut it = rest.splitn(2, ',');
                    let a = it.next().unwrap_or("").trim();
                    let b = it.next().unwrap_or("").trim();
                    if a.is_empty() || b.is_empty() {
                        return Err(ExplorerError::UnknownProperty(s.to_string()));
                    }
                    Ok(PropertySpec::StronglySpatialAt(a.to_string(), b.to_string()))
                } else {
                    Err(ExplorerError::UnknownProperty(s.to_string()))
                }
            }
        }
    }
}

fn resolve<E: Clone + Eq + Hash + Ord + fmt::Display>(
    w: &Window<E>,
    label: &str,
) -> Result<E, ExplorerError> {
    if label == "top" {
        return Ok(w.elements[w.top].clone());
    }
    w.elements
        .iter()
        .find(|e| e.to_string() == label)
        .cloned()
        .ok_or_else(|| ExplorerError::ElementNotInWindow(label.to_string()))
}

fn run<L: LazyLattice>(
    ll: &L,
    depth: usize,
    budget: usize,
    check: Option<&PropertySpec>,
) -> Result<(WindowGraph, Option<Verdict>), ExplorerError> {
    let w = explore(ll, depth, budget)?;
    let verdict = match check {
        None => None,
        Some(spec) => {
            let property = match spec {
                PropertySpec::CoverSingleton => WindowProperty::CoverSingleton,
                PropertySpec::UniqueJ => WindowProperty::UniqueJ,
                PropertySpec::LowerSemimodular => WindowProperty::LowerSemimodular,
                PropertySpec::StronglySpatialAt(a, b) => {
                    WindowProperty::StronglySpatialAt(resolve(&w, a)?, resolve(&w, b)?)
                }
            };
            Some(window_check(ll, &w, &property)?)
        }
    };
    Ok((w.graph(), verdict))
}

/// Explores a named instance and optionally checks a property; the window
/// is returned as a rendering digest so callers can emit DOT without
/// knowing the instance's element type.
pub fn explore_named(
    name: NamedInstance,
    depth: usize,
    budget: usize,
    check: Option<&PropertySpec>,
) -> Result<(WindowGraph, Option<Verdict>), ExplorerError> {
    match name {
        NamedInstance::LatticeK => run(&LatticeK, depth, budget, check),
        NamedInstance::OmegaZeroOrFinite => run(&OmegaZeroOrFinite, depth, budget, check),
        NamedInstance::ChainDualTimesTwoDoubledAtom => {
            run(&ChainDualTimesTwoDoubledAtom, depth, budget, check)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels<E: Clone + Eq + Hash + Ord + fmt::Display>(w: &Window<E>) -> Vec<String> {
        (0..w.len()).map(|i| w.label(i)).collect()
    }

    #[test]
    fn k_window_depth_two() {
        let w = explore(&LatticeK, 2, 4).unwrap();
        let mut got = labels(&w);
        got.sort();
        assert_eq!(got, ["0", "1", "a1", "a2", "b"]);
        assert!(w.any_truncation()); // a2 and 0 are unexpanded
        assert!(w.leq(w.index_of(&KElem::A(2)).unwrap(), w.index_of(&KElem::Top).unwrap()));
        assert!(!w.leq(w.index_of(&KElem::B).unwrap(), w.index_of(&KElem::A(1)).unwrap()));
    }

    #[test]
    fn k_strongly_spatial_at_top_b_stays_inconclusive() {
        for depth in 1..=10 {
            let w = explore(&LatticeK, depth, 4).unwrap();
            let v = window_check(
                &LatticeK,
                &w,
                &WindowProperty::StronglySpatialAt(KElem::Top, KElem::B),
            )
            .unwrap();
            assert_eq!(v.status, VerdictStatus::Inconclusive);
            assert!(v.witness.is_none());
            assert!(w.spatial_consistent(), "depth {depth}");
        }
    }

    #[test]
    fn omega_top_covers_and_cover_singleton() {
        let w = explore(&OmegaZeroOrFinite, 1, 3).unwrap();
        let mut got = labels(&w);
        got.sort();
        assert_eq!(got, ["ω", "ω∖{1}", "ω∖{2}", "ω∖{3}"]);
        assert!(w.truncated[w.index_of(&OmegaZeroOrFinite.top()).unwrap()]);
        for depth in 1..=3 {
            for budget in [2, 5, 8] {
                let w = explore(&OmegaZeroOrFinite, depth, budget).unwrap();
                let v =
                    window_check(&OmegaZeroOrFinite, &w, &WindowProperty::CoverSingleton).unwrap();
                assert_eq!(v.status, VerdictStatus::HoldsInWindow);
            }
        }
    }

    #[test]
    fn omega_finite_sets_descend_to_empty() {
        let ll = OmegaZeroOrFinite;
        let s = OmegaSet::finite([0, 1, 2]);
        let (covers, capped) = ll.lower_covers(&s, 8);
        assert!(!capped);
        assert_eq!(
            covers,
            vec![
                OmegaSet::finite([1, 2]),
                OmegaSet::finite([0, 2]),
                OmegaSet::finite([0, 1]),
            ]
        );
        let zero = OmegaSet::finite([0]);
        assert_eq!(ll.lower_covers(&zero, 8).0, vec![OmegaSet::finite([])]);
    }

    #[test]
    fn omega_meets_witness_failure_of_upper_continuity() {
        let ll = OmegaZeroOrFinite;
        let zero = OmegaSet::finite([0]);
        for k in 1..=20 {
            let fk = OmegaSet::finite(1..=k);
            assert_eq!(ll.meet(&zero, &fk), Some(OmegaSet::finite([])));
        }
        // while {0} ∧ (0-containing superset) = {0}
        let top = ll.top();
        assert_eq!(ll.meet(&zero, &top), Some(zero.clone()));
    }

    #[test]
    fn trivial_instance_holds_everywhere() {
        struct One;
        impl LazyLattice for One {
            type Elem = u8;
            fn top(&self) -> u8 {
                0
            }
            fn lower_covers(&self, _e: &u8, _b: usize) -> (Vec<u8>, bool) {
                (vec![], false)
            }
            fn meet(&self, _a: &u8, _b: &u8) -> Option<u8> {
                Some(0)
            }
        }
        let w = explore(&One, 3, 3).unwrap();
        assert_eq!(w.len(), 1);
        assert!(w.closed[0]);
        for p in [
            WindowProperty::CoverSingleton,
            WindowProperty::UniqueJ,
            WindowProperty::LowerSemimodular,
            WindowProperty::StronglySpatialAt(0, 0),
        ] {
            // cover_singleton without set reprs still holds: no edges.
            let v = window_check(&One, &w, &p).unwrap();
            assert_eq!(v.status, VerdictStatus::HoldsInWindow, "{p:?}");
        }
    }

    #[test]
    fn doubled_atom_window_is_a_grid() {
        let w = explore(&ChainDualTimesTwoDoubledAtom, 3, 4).unwrap();
        let mut got = labels(&w);
        got.sort();
        assert_eq!(
            got,
            ["(0,0)", "(0,1)", "(1,0)", "(1,1)", "(2,0)", "(2,1)", "(3,1)"]
        );
        // Nothing in a finite window is fully explored, so the
        // lower-semimodularity search stays open.
        let v = window_check(
            &ChainDualTimesTwoDoubledAtom,
            &w,
            &WindowProperty::LowerSemimodular,
        )
        .unwrap();
        assert_eq!(v.status, VerdictStatus::Inconclusive);
    }

    #[test]
    fn inconsistent_oracle_is_reported() {
        struct Loopy;
        impl LazyLattice for Loopy {
            type Elem = u8;
            fn top(&self) -> u8 {
                0
            }
            fn lower_covers(&self, e: &u8, _b: usize) -> (Vec<u8>, bool) {
                (vec![1 - e], false) // 0 -> 1 -> 0: a cycle
            }
            fn meet(&self, _a: &u8, _b: &u8) -> Option<u8> {
                None
            }
        }
        assert!(matches!(
            explore(&Loopy, 3, 3),
            Err(ExplorerError::OracleInconsistent(_))
        ));
    }

    #[test]
    fn verdicts_serialize_and_parse_specs() {
        let w = explore(&LatticeK, 2, 4).unwrap();
        let v = window_check(&LatticeK, &w, &WindowProperty::UniqueJ).unwrap();
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.contains("inconclusive"));
        assert!(!json.contains("witness"));
        assert_eq!(
            "strongly_spatial_at:top,b".parse::<PropertySpec>().unwrap(),
            PropertySpec::StronglySpatialAt("top".into(), "b".into())
        );
        assert!("nonsense".parse::<PropertySpec>().is_err());
        let (graph, verdict) = explore_named(
            NamedInstance::LatticeK,
            3,
            4,
            Some(&PropertySpec::StronglySpatialAt("top".into(), "b".into())),
        )
        .unwrap();
        assert_eq!(verdict.unwrap().status, VerdictStatus::Inconclusive);
        assert!(graph.nodes.iter().any(|n| n.label == "a3"));
    }

    #[test]
    fn set_repr_difference_sizes() {
        use SetRepr::*;
        let f = |xs: &[u64]| Finite(xs.iter().copied().collect());
        let c = |xs: &[u64]| CofiniteExcluding(xs.iter().copied().collect());
        assert_eq!(SetRepr::difference_size(&f(&[0, 1, 2]), &f(&[0, 2])), Some(1));
        assert_eq!(SetRepr::difference_size(&c(&[]), &c(&[3])), Some(1));
        assert_eq!(SetRepr::difference_size(&c(&[1]), &c(&[1, 2, 5])), Some(2));
        assert_eq!(SetRepr::difference_size(&c(&[]), &f(&[0])), None);
        assert_eq!(SetRepr::difference_size(&f(&[0, 3]), &c(&[3, 4])), Some(1));
    }
}
