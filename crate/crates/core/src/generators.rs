//! Example convex geometries and test corpora: convex subsets of posets,
//! subsemilattices, convex subsemilattices, suborder lattices, filter
//! lattices, and enumerated/random corpora.

use crate::closure::ClosureSystem;
use crate::lattice::{FiniteLattice, RelationMode};
use crate::set::IdSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Subset-filter generators enumerate all subsets of their ground set.
const SUBSET_LIMIT: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("relation is not a partial order (cycle at element {0})")]
    NotAPartialOrder(usize),
    #[error("relation references unknown element {0}")]
    UnknownElement(usize),
    #[error("not a meet semilattice: {0}")]
    InvalidMeetTable(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
}

/// A finite partially ordered set over dense ids.
#[derive(Debug, Clone)]
pub struct FinitePoset {
    names: Vec<String>,
    /// up[a] = { b : a <= b }
    up: Vec<IdSet>,
}

impl FinitePoset {
    /// Builds from any relation whose reflexive-transitive closure is
    /// antisymmetric.
    pub fn build(names: Vec<String>, relation: &[(usize, usize)]) -> Result<Self, GeneratorError> {
        let n = names.len();
        for &(a, b) in relation {
            if a >= n {
                return Err(GeneratorError::UnknownElement(a));
            }
            if b >= n {
                return Err(GeneratorError::UnknownElement(b));
            }
        }
        let mut up: Vec<IdSet> = (0..n).map(|a| IdSet::singleton(n, a)).collect();
        for &(a, b) in relation {
            up[a].insert(b);
        }
        for mid in 0..n {
            for a in 0..n {
                if up[a].contains(mid) {
                    let umid = up[mid].clone();
                    up[a].union_with(&umid);
                }
            }
        }
        for a in 0..n {
            for b in up[a].iter() {
                if b != a && up[b].contains(a) {
                    return Err(GeneratorError::NotAPartialOrder(a));
                }
            }
        }
        Ok(FinitePoset { names, up })
    }

    pub fn chain(n: usize) -> FinitePoset {
        let names = (0..n).map(|i| format!("p{i}")).collect();
        let rel: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::build(names, &rel).expect("chain is a poset")
    }

    pub fn antichain(n: usize) -> FinitePoset {
        let names = (0..n).map(|i| format!("p{i}")).collect();
        Self::build(names, &[]).expect("antichain is a poset")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    /// Strict comparable pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// A finite meet semilattice given by its total meet table.
#[derive(Debug, Clone)]
pub struct MeetSemilattice {
    names: Vec<String>,
    /// Row-major n x n table.
    meet: Vec<usize>,
}

impl MeetSemilattice {
    /// Validates idempotence, commutativity, and associativity.
    pub fn build(names: Vec<String>, meet: Vec<usize>) -> Result<Self, GeneratorError> {
        let n = names.len();
        if meet.len() != n * n {
            return Err(GeneratorError::InvalidMeetTable(format!(
                "table has {} entries, expected {}",
                meet.len(),
                n * n
            )));
        }
        if let Some(&bad) = meet.iter().find(|&&v| v >= n) {
            return Err(GeneratorError::UnknownElement(bad));
        }
        let s = MeetSemilattice { names, meet };
        for a in 0..n {
            if s.meet(a, a) != a {
                return Err(GeneratorError::InvalidMeetTable(format!(
                    "not idempotent at {a}"
                )));
            }
            for b in 0..n {
                if s.meet(a, b) != s.meet(b, a) {
                    return Err(GeneratorError::InvalidMeetTable(format!(
                        "not commutative at ({a},{b})"
                    )));
                }
                for c in 0..n {
                    if s.meet(s.meet(a, b), c) != s.meet(a, s.meet(b, c)) {
                        return Err(GeneratorError::InvalidMeetTable(format!(
                            "not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(s)
    }

    /// Derives the meet table from a poset in which every pair has a
    /// greatest lower bound; `None` when some pair lacks one.
    pub fn from_poset(p: &FinitePoset) -> Option<MeetSemilattice> {
        let n = p.len();
        let mut meet = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n)
                    .filter(|&x| p.leq(x, a) && p.leq(x, b))
                    .collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&m| lower.iter().all(|&x| p.leq(x, m)))?;
                meet[a * n + b] = glb;
            }
        }
        Some(MeetSemilattice {
            names: p.names.to_vec(),
            meet,
        })
    }

    /// The fan: a bottom element below two incomparable points.
    pub fn fan() -> MeetSemilattice {
        let names = ["0", "a", "b"].map(String::from).to_vec();
        let meet = vec![0, 0, 0, 0, 1, 0, 0, 0, 2];
        Self::build(names, meet).expect("fan is a meet semilattice")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    /// The order induced by the meet operation.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    pub fn to_poset(&self) -> FinitePoset {
        let n = self.len();
        let mut rel = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) {
                    rel.push((a, b));
                }
            }
        }
        FinitePoset::build(self.names.clone(), &rel).expect("meet order is a partial order")
    }
}

fn subsets(n: usize) -> impl Iterator<Item = IdSet> {
    assert!(n <= SUBSET_LIMIT, "ground set too large to enumerate subsets");
    (0u64..(1u64 << n)).map(move |mask| IdSet::from_ids(n, (0..n).filter(|&i| mask & (1 << i) != 0)))
}

/// The closure system of convex subsets of a poset; the closure of `A` is
/// its order-convex hull `{ x : a1 <= x <= a2 for some a1, a2 in A }`.
pub fn co_poset(p: &FinitePoset) -> ClosureSystem {
    let n = p.len();
    let family: Vec<IdSet> = subsets(n)
        .filter(|a| {
            (0..n).all(|x| {
                a.contains(x)
                    || !(a.iter().any(|a1| p.leq(a1, x)) && a.iter().any(|a2| p.leq(x, a2)))
            })
        })
        .collect();
    let cs = ClosureSystem::from_family(p.names.to_vec(), &family)
        .expect("subsets of the ground set");
    debug_assert!(cs.completion_report().is_empty(), "convex sets form a Moore family");
    cs
}

/// The closure system of meet-subsemilattices (the empty set is vacuously
/// closed under meets).
pub fn sub_meet(s: &MeetSemilattice) -> ClosureSystem {
    let n = s.len();
    let family: Vec<IdSet> = subsets(n)
        .filter(|a| {
            let ids = a.to_vec();
            ids.iter()
                .all(|&x| ids.iter().all(|&y| a.contains(s.meet(x, y))))
        })
        .collect();
    let cs = ClosureSystem::from_family(s.names.to_vec(), &family)
        .expect("subsets of the ground set");
    debug_assert!(cs.completion_report().is_empty(), "subsemilattices form a Moore family");
    cs
}

/// The closure system of convex subsemilattices: subsets that are convex in
/// the meet-order and closed under meets.
pub fn convex_sub_meet(s: &MeetSemilattice) -> ClosureSystem {
    let p = s.to_poset();
    let n = s.len();
    let family: Vec<IdSet> = subsets(n)
        .filter(|a| {
            let ids = a.to_vec();
            let meet_closed = ids
                .iter()
                .all(|&x| ids.iter().all(|&y| a.contains(s.meet(x, y))));
            let convex = (0..n).all(|x| {
                a.contains(x)
                    || !(ids.iter().any(|&a1| p.leq(a1, x)) && ids.iter().any(|&a2| p.leq(x, a2)))
            });
            meet_closed && convex
        })
        .collect();
    let cs = ClosureSystem::from_family(s.names.to_vec(), &family)
        .expect("subsets of the ground set");
    debug_assert!(cs.completion_report().is_empty());
    cs
}

/// The closure system of suborders of a poset: the ground set is the strict
/// comparable pairs, closed sets are the transitively closed pair sets, and
/// closure is transitive closure within the ambient order.  Reflexive pairs
/// carry no information and are never part of the ground set.
pub fn suborders(p: &FinitePoset) -> ClosureSystem {
    let pairs = p.strict_pairs();
    let g = pairs.len();
    let names: Vec<String> = pairs
        .iter()
        .map(|&(a, b)| format!("{}<{}", p.names[a], p.names[b]))
        .collect();
    let family: Vec<IdSet> = subsets(g)
        .filter(|r| {
            let present: Vec<(usize, usize)> = r.iter().map(|i| pairs[i]).collect();
            present.iter().all(|&(a, b)| {
                present
                    .iter()
                    .filter(|&&(b2, _)| b2 == b)
                    .all(|&(_, c)| r.contains(pair_index(&pairs, a, c)))
            })
        })
        .collect();
    let cs = ClosureSystem::from_family(names, &family).expect("subsets of the pair set");
    debug_assert!(cs.completion_report().is_empty(), "suborders form a Moore family");
    cs
}

fn pair_index(pairs: &[(usize, usize)], a: usize, b: usize) -> usize {
    pairs
        .iter()
        .position(|&p| p == (a, b))
        .expect("transitivity of the ambient order keeps composite pairs in the ground set")
}

/// The filter lattice of a finite lattice, ordered by reverse inclusion,
/// together with the principal-filter map.
#[derive(Debug, Clone)]
pub struct FilterLattice {
    pub lattice: FiniteLattice,
    /// Filters as subsets of the source lattice, indexed by lattice id.
    pub filters: Vec<IdSet>,
    /// principal[x] = id of fil(x) in the filter lattice.
    pub principal: Vec<usize>,
}

impl FilterLattice {
    /// Whether the principal-filter map is an order isomorphism onto the
    /// filter lattice.
    pub fn is_isomorphism(&self, source: &FiniteLattice) -> bool {
        let n = source.len();
        if self.lattice.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &id in &self.principal {
            if seen[id] {
                return false;
            }
            seen[id] = true;
        }
        (0..n).all(|x| {
            (0..n).all(|y| {
                source.leq(x, y) == self.lattice.leq(self.principal[x], self.principal[y])
            })
        })
    }
}

/// Enumerates the filters of `l0` (non-empty up-sets closed under meet) and
/// orders them by reverse inclusion.  In a finite lattice every filter is
/// principal, so the result is isomorphic to the source.
pub fn filter_lattice(l0: &FiniteLattice) -> Result<FilterLattice, GeneratorError> {
    let n = l0.len();
    if n > 16 {
        return Err(GeneratorError::BoundExceeded(format!(
            "filter enumeration limited to 16 elements, got {n}"
        )));
    }
    let mut filters: Vec<IdSet> = subsets(n)
        .filter(|f| {
            if f.is_empty() {
                return false;
            }
            let ids = f.to_vec();
            let up_closed = ids.iter().all(|&x| l0.up_set(x).is_subset(f));
            let meet_closed = ids
                .iter()
                .all(|&x| ids.iter().all(|&y| f.contains(l0.meet(x, y))));
            up_closed && meet_closed
        })
        .collect();
    filters.sort();
    let names: Vec<String> = filters
        .iter()
        .map(|f| format!("fil({})", l0.name(l0.meet_set(f))))
        .collect();
    let mut rel = Vec::new();
    for (i, f) in filters.iter().enumerate() {
        for (j, g) in filters.iter().enumerate() {
            if i != j && g.is_subset(f) {
                rel.push((i, j)); // F <= G iff F contains G
            }
        }
    }
    let lattice = FiniteLattice::build(names, &rel, RelationMode::Order)
        .expect("filters under reverse inclusion form a lattice");
    let principal = (0..n)
        .map(|x| {
            filters
                .iter()
                .position(|f| f == l0.up_set(x))
                .expect("principal filters are filters")
        })
        .collect();
    Ok(FilterLattice {
        lattice,
        filters,
        principal,
    })
}

/// Specification of an enumerated or random corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusSpec {
    /// All posets of each size up to the bound, in natural labeling (the
    /// identity is a linear extension); every isomorphism class appears.
    AllPosets { max_size: usize },
    /// All meet semilattices of each size up to the bound, filtered from
    /// the natural-labeling poset enumeration.
    AllMeetSemilattices { max_size: usize },
    /// All Moore families on a ground set of the given size.
    AllMoore { ground: usize, allow_large: bool },
    /// Seeded random posets with sizes up to the bound.
    RandomPosets { count: usize, max_size: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub enum CorpusItem {
    Poset(FinitePoset),
    Semilattice(MeetSemilattice),
    Moore(ClosureSystem),
}

/// Deterministic enumeration/streaming for a corpus spec: the same spec
/// (and seed) always yields the same sequence.
pub fn corpus(spec: &CorpusSpec) -> Result<Vec<CorpusItem>, GeneratorError> {
    match *spec {
        CorpusSpec::AllPosets { max_size } => {
            if max_size > 6 {
                return Err(GeneratorError::BoundExceeded(format!(
                    "exhaustive poset enumeration limited to size 6, got {max_size}"
                )));
            }
            Ok(all_posets(max_size).into_iter().map(CorpusItem::Poset).collect())
        }
        CorpusSpec::AllMeetSemilattices { max_size } => {
            if max_size > 6 {
                return Err(GeneratorError::BoundExceeded(format!(
                    "exhaustive semilattice enumeration limited to size 6, got {max_size}"
                )));
            }
            Ok(all_posets(max_size)
                .iter()
                .filter_map(MeetSemilattice::from_poset)
                .map(CorpusItem::Semilattice)
                .collect())
        }
        CorpusSpec::AllMoore { ground, allow_large } => {
            let limit = if allow_large { 4 } else { 3 };
            if ground > limit {
                return Err(GeneratorError::BoundExceeded(format!(
                    "Moore enumeration on {ground} elements needs the explicit large flag (limit {limit})"
                )));
            }
            Ok(all_moore(ground).into_iter().map(CorpusItem::Moore).collect())
        }
        CorpusSpec::RandomPosets { count, max_size, seed } => {
            if max_size > 10 {
                return Err(GeneratorError::BoundExceeded(format!(
                    "random posets limited to size 10, got {max_size}"
                )));
            }
            Ok(random_posets(count, max_size, seed)
                .into_iter()
                .map(CorpusItem::Poset)
                .collect())
        }
    }
}

/// All naturally labeled posets of sizes `1..=max_size`: subsets of the
/// strict upper triangle that are transitively closed.
fn all_posets(max_size: usize) -> Vec<FinitePoset> {
    let mut out = Vec::new();
    for n in 1..=max_size {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect();
        let bits = pairs.len();
        for mask in 0u64..(1u64 << bits) {
            let has = |a: usize, b: usize| {
                pairs
                    .iter()
                    .position(|&p| p == (a, b))
                    .map(|i| mask & (1 << i) != 0)
                    .unwrap_or(false)
            };
            let transitive = (0..n).all(|a| {
                (0..n).all(|b| {
                    !has(a, b) || (0..n).all(|c| !has(b, c) || has(a, c))
                })
            });
            if !transitive {
                continue;
            }
            let rel: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask & (1 << i) != 0)
                .map(|(_, &p)| p)
                .collect();
            let names = (0..n).map(|i| format!("p{i}")).collect();
            out.push(FinitePoset::build(names, &rel).expect("transitively closed triangle"));
        }
    }
    out
}

/// All Moore families on an n-element ground set, by exhaustive filtering
/// of every candidate family of subsets.  No isomorphism reduction is
/// applied.
fn all_moore(n: usize) -> Vec<ClosureSystem> {
    let pow = 1usize << n;
    let mut out = Vec::new();
    for fam_mask in 0u64..(1u64 << pow) {
        // The family must contain the ground set.
        if fam_mask & (1 << (pow - 1)) == 0 {
            continue;
        }
        let members: Vec<usize> = (0..pow).filter(|&s| fam_mask & (1 << s) != 0).collect();
        let closed_under_intersection = members
            .iter()
            .all(|&s| members.iter().all(|&t| fam_mask & (1 << (s & t)) != 0));
        if !closed_under_intersection {
            continue;
        }
        let family: Vec<IdSet> = members
            .iter()
            .map(|&s| IdSet::from_ids(n, (0..n).filter(|&i| s & (1 << i) != 0)))
            .collect();
        let names = (0..n).map(|i| format!("x{i}")).collect();
        let cs = ClosureSystem::from_family(names, &family).expect("subsets of the ground");
        debug_assert!(cs.completion_report().is_empty());
        out.push(cs);
    }
    out
}

fn random_posets(count: usize, max_size: usize, seed: u64) -> Vec<FinitePoset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_size);
            let mut rel = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen_bool(0.5) {
                        rel.push((i, j));
                    }
                }
            }
            let names = (0..n).map(|i| format!("p{i}")).collect();
            // Edges point up the natural order, so the closure is acyclic.
            FinitePoset::build(names, &rel).expect("upward edges form a poset")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks;
    use crate::lattice::construct;

    #[test]
    fn convex_subsets_of_named_posets() {
        assert_eq!(co_poset(&FinitePoset::antichain(2)).closed_sets().unwrap().len(), 4);
        for n in 1..=5 {
            assert_eq!(
                co_poset(&FinitePoset::antichain(n)).closed_sets().unwrap().len(),
                1 << n
            );
        }
        let co3 = co_poset(&FinitePoset::chain(3));
        let closed = co3.closed_sets().unwrap();
        assert_eq!(closed.len(), 7); // {p,r} is not convex
        assert!(!closed.iter().any(|s| s.to_vec() == vec![0, 2]));
        // Ex({p,q,r}) = {p,r}
        let ex = co3.extreme_points(&IdSet::full(3)).unwrap();
        assert_eq!(ex.to_vec(), vec![0, 2]);
    }

    #[test]
    fn co_poset_hull_is_a_hull_operator() {
        let p = FinitePoset::chain(4);
        let co = co_poset(&p);
        for mask in 0u32..16 {
            let a = IdSet::from_ids(4, (0..4).filter(|&i| mask & (1 << i) != 0));
            let h = co.close(&a);
            assert_eq!(co.close(&h), h);
            // Extreme points of the hull come from the generators.
            assert!(co.extreme_points(&h).unwrap().is_subset(&a));
        }
    }

    #[test]
    fn subsemilattices_of_named_semilattices() {
        let one = MeetSemilattice::build(vec!["0".into()], vec![0]).unwrap();
        assert_eq!(sub_meet(&one).closed_sets().unwrap().len(), 2);
        let fan = MeetSemilattice::fan();
        let closed = sub_meet(&fan).closed_sets().unwrap();
        assert_eq!(closed.len(), 7); // {a,b} is not meet-closed
        assert!(!closed.iter().any(|s| s.to_vec() == vec![1, 2]));
        // chains are closed under meets everywhere
        let c3 = MeetSemilattice::from_poset(&FinitePoset::chain(3)).unwrap();
        assert_eq!(sub_meet(&c3).closed_sets().unwrap().len(), 8);
    }

    #[test]
    fn convex_subsemilattices() {
        let one = MeetSemilattice::build(vec!["0".into()], vec![0]).unwrap();
        assert_eq!(convex_sub_meet(&one).closed_sets().unwrap().len(), 2);
        // fan: intersection of the convex and the meet-closed families
        let fan = MeetSemilattice::fan();
        let both: Vec<_> = sub_meet(&fan)
            .closed_sets()
            .unwrap()
            .into_iter()
            .filter(|s| co_poset(&fan.to_poset()).closed_sets().unwrap().contains(s))
            .collect();
        assert_eq!(convex_sub_meet(&fan).closed_sets().unwrap(), both);
        assert_eq!(both.len(), 7);
        // chains: meet-closure is free, so this equals the convex family
        let c3 = MeetSemilattice::from_poset(&FinitePoset::chain(3)).unwrap();
        assert_eq!(
            convex_sub_meet(&c3).closed_sets().unwrap(),
            co_poset(&FinitePoset::chain(3)).closed_sets().unwrap()
        );
    }

    #[test]
    fn suborder_systems() {
        let s2 = suborders(&FinitePoset::chain(2));
        assert_eq!(s2.ground_size(), 1);
        assert_eq!(s2.closed_sets().unwrap().len(), 2);
        let s3 = suborders(&FinitePoset::chain(3));
        assert_eq!(s3.ground_size(), 3);
        let closed = s3.closed_sets().unwrap();
        assert_eq!(closed.len(), 7);
        // {(p0<p1), (p1<p2)} without (p0<p2) is not transitively closed
        let pairs = FinitePoset::chain(3).strict_pairs();
        let bad: Vec<usize> = [(0, 1), (1, 2)]
            .iter()
            .map(|&(a, b)| pairs.iter().position(|&p| p == (a, b)).unwrap())
            .collect();
        assert!(!closed.iter().any(|s| s.to_vec() == bad));
        assert_eq!(suborders(&FinitePoset::antichain(3)).closed_sets().unwrap().len(), 1);
    }

    #[test]
    fn generator_outputs_are_convex_geometries() {
        let fan = MeetSemilattice::fan();
        for cs in [
            co_poset(&FinitePoset::chain(3)),
            sub_meet(&fan),
            convex_sub_meet(&fan),
            suborders(&FinitePoset::chain(3)),
        ] {
            assert!(cs.convex_geometry().unwrap().holds());
            let (lat, _) = cs.cld_lattice().unwrap();
            assert!(checks::is_atomistic(&lat) || cs.ground_size() == 0);
        }
    }

    #[test]
    fn filter_lattices_are_isomorphic_to_their_source() {
        for l0 in [
            construct::chain(4),
            construct::n5(),
            construct::boolean(2),
            construct::m3(),
        ] {
            let fl = filter_lattice(&l0).unwrap();
            assert_eq!(fl.lattice.len(), l0.len());
            assert!(fl.is_isomorphism(&l0));
        }
    }

    #[test]
    fn moore_family_counts() {
        assert_eq!(corpus(&CorpusSpec::AllMoore { ground: 2, allow_large: false }).unwrap().len(), 7);
        assert_eq!(corpus(&CorpusSpec::AllMoore { ground: 3, allow_large: false }).unwrap().len(), 61);
        assert!(corpus(&CorpusSpec::AllMoore { ground: 4, allow_large: false }).is_err());
        assert_eq!(corpus(&CorpusSpec::AllMoore { ground: 4, allow_large: true }).unwrap().len(), 2480);
    }

    #[test]
    fn poset_enumeration_counts() {
        // Naturally labeled posets: 1, 2, 7, 40, 357 for sizes 1..=5.
        let counts: Vec<usize> = (1..=5)
            .map(|n| {
                corpus(&CorpusSpec::AllPosets { max_size: n }).unwrap().len()
            })
            .collect();
        assert_eq!(counts[0], 1);
        assert_eq!(counts[1] - counts[0], 2);
        assert_eq!(counts[2] - counts[1], 7);
        assert_eq!(counts[3] - counts[2], 40);
        assert_eq!(counts[4] - counts[3], 357);
    }

    #[test]
    fn random_streams_are_deterministic() {
        let a = corpus(&CorpusSpec::RandomPosets { count: 10, max_size: 6, seed: 1 }).unwrap();
        let b = corpus(&CorpusSpec::RandomPosets { count: 10, max_size: 6, seed: 1 }).unwrap();
        assert_eq!(a.len(), 10);
        for (x, y) in a.iter().zip(&b) {
            let (CorpusItem::Poset(p), CorpusItem::Poset(q)) = (x, y) else {
                panic!("expected posets")
            };
            assert_eq!(p.len(), q.len());
            assert_eq!(p.strict_pairs(), q.strict_pairs());
        }
        let c = corpus(&CorpusSpec::RandomPosets { count: 10, max_size: 6, seed: 2 }).unwrap();
        assert!(c.iter().zip(&a).any(|(x, y)| {
            let (CorpusItem::Poset(p), CorpusItem::Poset(q)) = (x, y) else {
                return true;
            };
            p.len() != q.len() || p.strict_pairs() != q.strict_pairs()
        }));
    }

    #[test]
    fn meet_table_validation() {
        // A non-idempotent table is rejected.
        let err = MeetSemilattice::build(
            ["0", "a", "b"].map(String::from).to_vec(),
            vec![0, 0, 0, 0, 0, 0, 0, 0, 2],
        )
        .unwrap_err();
        assert!(matches!(err, GeneratorError::InvalidMeetTable(_)));
    }
}
