//! Closure systems `(X, gamma)`: construction from Moore families or
//! implication bases, closure computation, the lattice of closed sets,
//! anti-exchange and cover-condition checkers, extreme points, and the
//! standard representation of a lattice on its join irreducibles.

use crate::lattice::{FiniteLattice, RelationMode};
use crate::set::IdSet;
use serde::Serialize;
use thiserror::Error;

/// Implication-kind closure enumeration walks all subsets of the ground
/// set, so it is capped.
const GROUND_LIMIT: usize = 22;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClosureError {
    #[error("set references element {0} outside the ground set")]
    ElementOutOfGround(usize),
    #[error("ground set of {0} elements is too large to enumerate closed sets")]
    GroundTooLarge(usize),
    #[error("cover-singleton precondition failed: cover ({0:?}, {1:?}) differs by more than one element")]
    PreconditionFailed(Vec<usize>, Vec<usize>),
}

/// A premise set together with the single element it forces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Implication {
    pub premise: IdSet,
    pub conclusion: usize,
}

#[derive(Debug, Clone)]
enum ClosureKind {
    /// A Moore family: contains the ground set and is intersection-closed.
    Family {
        closed: Vec<IdSet>,
        /// Sets added by Moore-family completion, reported for transparency.
        added: Vec<IdSet>,
    },
    Implications { base: Vec<Implication> },
}

/// A literal violation of the anti-exchange property: a closed set `A` and
/// distinct `x`, `y` outside it with `x` in `gamma(A + y)` and `y` in
/// `gamma(A + x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AepWitness {
    pub closed: Vec<usize>,
    pub x: usize,
    pub y: usize,
}

/// A cover in the closed-set lattice whose set difference has two or more
/// elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverWitness {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
}

/// Why a closure system fails to be a convex geometry, if it does.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ConvexGeometryVerdict {
    Yes,
    NotZeroClosure { empty_closure: Vec<usize> },
    AepFails(AepWitness),
}

impl ConvexGeometryVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ConvexGeometryVerdict::Yes)
    }
}

/// The bijection between ground elements outside `gamma(empty)` and the
/// completely join irreducible closed sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CjiCorrespondence {
    /// (ground element x, gamma({x}))
    pub pairs: Vec<(usize, IdSet)>,
}

/// A closure system on a finite ground set.
///
/// Immutable after construction; all checks are pure.
#[derive(Debug, Clone)]
pub struct ClosureSystem {
    ground: Vec<String>,
    kind: ClosureKind,
}

impl ClosureSystem {
    /// Builds a family-kind system.  Non-Moore inputs are completed by
    /// adding the ground set and closing under intersection; every added
    /// set is reported via [`ClosureSystem::completion_report`].
    pub fn from_family(ground: Vec<String>, family: &[IdSet]) -> Result<Self, ClosureError> {
        let n = ground.len();
        for s in family {
            if s.capacity() != n {
                if let Some(bad) = s.iter().find(|&e| e >= n) {
                    return Err(ClosureError::ElementOutOfGround(bad));
                }
                return Err(ClosureError::ElementOutOfGround(s.capacity().max(n)));
            }
        }
        let mut closed: Vec<IdSet> = family.to_vec();
        closed.sort();
        closed.dedup();
        let mut added = Vec::new();
        let full = IdSet::full(n);
        if !closed.contains(&full) {
            closed.push(full.clone());
            added.push(full);
        }
        // Close under pairwise intersections to a fixed point.
        loop {
            let mut new_sets = Vec::new();
            for i in 0..closed.len() {
                for j in (i + 1)..closed.len() {
                    let m = closed[i].intersection(&closed[j]);
                    if !closed.contains(&m) && !new_sets.contains(&m) {
                        new_sets.push(m);
                    }
                }
            }
            if new_sets.is_empty() {
                break;
            }
            for s in new_sets {
                added.push(s.clone());
                closed.push(s);
            }
        }
        closed.sort();
        added.sort();
        Ok(ClosureSystem {
            ground,
            kind: ClosureKind::Family { closed, added },
        })
    }

    /// Builds an implication-kind system; closure is the least fixed point
    /// of forward chaining over the base.
    pub fn from_implications(
        ground: Vec<String>,
        base: Vec<Implication>,
    ) -> Result<Self, ClosureError> {
        let n = ground.len();
        for imp in &base {
            if imp.conclusion >= n {
                return Err(ClosureError::ElementOutOfGround(imp.conclusion));
            }
            if let Some(bad) = imp.premise.iter().find(|&e| e >= n) {
                return Err(ClosureError::ElementOutOfGround(bad));
            }
        }
        Ok(ClosureSystem {
            ground,
            kind: ClosureKind::Implications { base },
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground.len()
    }

    pub fn ground_names(&self) -> &[String] {
        &self.ground
    }

    /// Sets that Moore-family completion had to add (empty for implication
    /// systems and for inputs that were already Moore families).
    pub fn completion_report(&self) -> &[IdSet] {
        match &self.kind {
            ClosureKind::Family { added, .. } => added,
            ClosureKind::Implications { .. } => &[],
        }
    }

    /// The stored Moore family, for family-kind systems.
    pub fn family(&self) -> Option<&[IdSet]> {
        match &self.kind {
            ClosureKind::Family { closed, .. } => Some(closed),
            ClosureKind::Implications { .. } => None,
        }
    }

    /// The implication base, for implication-kind systems.
    pub fn implication_base(&self) -> Option<&[Implication]> {
        match &self.kind {
            ClosureKind::Family { .. } => None,
            ClosureKind::Implications { base } => Some(base),
        }
    }

    pub fn check_subset(&self, a: &IdSet) -> Result<(), ClosureError> {
        if let Some(bad) = a.iter().find(|&e| e >= self.ground_size()) {
            return Err(ClosureError::ElementOutOfGround(bad));
        }
        Ok(())
    }

    /// gamma(A): the least closed superset of `A`.
    pub fn close(&self, a: &IdSet) -> IdSet {
        debug_assert_eq!(a.capacity(), self.ground_size());
        match &self.kind {
            ClosureKind::Family { closed, .. } => {
                let mut acc = IdSet::full(self.ground_size());
                for c in closed {
                    if a.is_subset(c) {
                        acc.intersect_with(c);
                    }
                }
                acc
            }
            ClosureKind::Implications { base } => {
                let mut cur = a.clone();
                loop {
                    let mut changed = false;
                    for imp in base {
                        if imp.premise.is_subset(&cur) && !cur.contains(imp.conclusion) {
                            cur.insert(imp.conclusion);
                            changed = true;
                        }
                    }
                    if !changed {
                        return cur;
                    }
                }
            }
        }
    }

    pub fn close_ids(&self, ids: &[usize]) -> IdSet {
        self.close(&IdSet::from_ids(self.ground_size(), ids.iter().copied()))
    }

    /// All closed sets, in canonical order (cardinality, then value).
    pub fn closed_sets(&self) -> Result<Vec<IdSet>, ClosureError> {
        match &self.kind {
            ClosureKind::Family { closed, .. } => Ok(closed.clone()),
            ClosureKind::Implications { .. } => {
                let n = self.ground_size();
                if n > GROUND_LIMIT {
                    return Err(ClosureError::GroundTooLarge(n));
                }
                let mut out = Vec::new();
                for mask in 0u64..(1u64 << n) {
                    let s = IdSet::from_ids(n, (0..n).filter(|&i| mask & (1 << i) != 0));
                    if self.close(&s) == s {
                        out.push(s);
                    }
                }
                out.sort();
                Ok(out)
            }
        }
    }

    /// The lattice of closed sets ordered by inclusion, together with the
    /// subset labeling each lattice element.  Meets are intersections and
    /// joins are closures of unions.
    pub fn cld_lattice(&self) -> Result<(FiniteLattice, Vec<IdSet>), ClosureError> {
        let closed = self.closed_sets()?;
        let names = closed.iter().map(|s| self.set_name(s)).collect();
        let mut rel = Vec::new();
        for (i, a) in closed.iter().enumerate() {
            for (j, b) in closed.iter().enumerate() {
                if i != j && a.is_subset(b) {
                    rel.push((i, j));
                }
            }
        }
        let lat = FiniteLattice::build(names, &rel, RelationMode::Order)
            .expect("a Moore family ordered by inclusion is a lattice");
        Ok((lat, closed))
    }

    fn set_name(&self, s: &IdSet) -> String {
        let mut out = String::from("{");
        for (k, i) in s.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(&self.ground[i]);
        }
        out.push('}');
        out
    }

    /// Searches for an anti-exchange violation, scanning closed sets by
    /// increasing cardinality and pairs `(x, y)` in id order so that the
    /// first witness is deterministic.
    ///
    /// Uses the equivalent form: the AEP holds iff for every closed `A` and
    /// distinct `x`, `y` outside `A`, `gamma(A+x) != gamma(A+y)`.
    pub fn aep_witness(&self) -> Result<Option<AepWitness>, ClosureError> {
        let n = self.ground_size();
        let closed = self.closed_sets()?;
        for a in &closed {
            let mut one_step: Vec<(usize, IdSet)> = Vec::new();
            for x in 0..n {
                if a.contains(x) {
                    continue;
                }
                let mut ax = a.clone();
                ax.insert(x);
                one_step.push((x, self.close(&ax)));
            }
            for i in 0..one_step.len() {
                for j in (i + 1)..one_step.len() {
                    if one_step[i].1 == one_step[j].1 {
                        return Ok(Some(AepWitness {
                            closed: a.to_vec(),
                            x: one_step[i].0,
                            y: one_step[j].0,
                        }));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn satisfies_aep(&self) -> Result<bool, ClosureError> {
        Ok(self.aep_witness()?.is_none())
    }

    /// Searches for a cover `A < B` in the closed-set lattice with
    /// `|B - A| >= 2`.
    pub fn cover_singleton_witness(&self) -> Result<Option<CoverWitness>, ClosureError> {
        let closed = self.closed_sets()?;
        for (i, a) in closed.iter().enumerate() {
            'upper: for (j, b) in closed.iter().enumerate() {
                if i == j || !a.is_subset(b) {
                    continue;
                }
                // b covers a iff nothing closed lies strictly between.
                for (k, c) in closed.iter().enumerate() {
                    if k != i && k != j && a.is_subset(c) && c.is_subset(b) {
                        continue 'upper;
                    }
                }
                if b.difference(a).len() >= 2 {
                    return Ok(Some(CoverWitness {
                        lower: a.to_vec(),
                        upper: b.to_vec(),
                    }));
                }
            }
        }
        Ok(None)
    }

    pub fn satisfies_cover_singleton(&self) -> Result<bool, ClosureError> {
        Ok(self.cover_singleton_witness()?.is_none())
    }

    /// Whether the system is a convex geometry: zero-closure plus the AEP.
    /// The two signals are kept separate in the verdict since some useful
    /// anti-exchange operators have a non-empty closure of the empty set.
    pub fn convex_geometry(&self) -> Result<ConvexGeometryVerdict, ClosureError> {
        let zero = self.close(&IdSet::empty(self.ground_size()));
        if !zero.is_empty() {
            return Ok(ConvexGeometryVerdict::NotZeroClosure {
                empty_closure: zero.to_vec(),
            });
        }
        Ok(match self.aep_witness()? {
            Some(w) => ConvexGeometryVerdict::AepFails(w),
            None => ConvexGeometryVerdict::Yes,
        })
    }

    /// Ex(A) = { x in A : x not in gamma(A - x) }.
    pub fn extreme_points(&self, a: &IdSet) -> Result<IdSet, ClosureError> {
        self.check_subset(a)?;
        let mut ex = IdSet::empty(self.ground_size());
        for x in a.iter() {
            let mut rest = a.clone();
            rest.remove(x);
            if !self.close(&rest).contains(x) {
                ex.insert(x);
            }
        }
        Ok(ex)
    }

    /// The bijection `x -> gamma({x})` between ground elements outside
    /// `gamma(empty)` and the completely join irreducible closed sets.
    /// Requires the cover-singleton condition; each `gamma({x}) - {x}` is
    /// verified to be closed and to be the unique lower cover of
    /// `gamma({x})`.
    pub fn cji_correspondence(&self) -> Result<CjiCorrespondence, ClosureError> {
        if let Some(w) = self.cover_singleton_witness()? {
            return Err(ClosureError::PreconditionFailed(w.lower, w.upper));
        }
        let n = self.ground_size();
        let closed = self.closed_sets()?;
        let zero = self.close(&IdSet::empty(n));
        let mut pairs = Vec::new();
        for x in 0..n {
            if zero.contains(x) {
                continue;
            }
            let gx = self.close(&IdSet::singleton(n, x));
            let mut below = gx.clone();
            below.remove(x);
            assert!(
                closed.contains(&below),
                "gamma({{x}}) minus x must be closed under cover-singleton"
            );
            // Unique lower cover: every closed proper subset of gx is below it.
            for c in &closed {
                if c.is_subset(&gx) && *c != gx {
                    assert!(
                        c.is_subset(&below),
                        "gamma({{x}}) has a lower cover other than gamma({{x}}) minus x"
                    );
                }
            }
            pairs.push((x, gx));
        }
        // Distinct images and exactly the completely join irreducible sets.
        let mut images: Vec<&IdSet> = pairs.iter().map(|(_, s)| s).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), pairs.len(), "correspondence must be injective");
        Ok(CjiCorrespondence { pairs })
    }
}

/// The standard representation of a finite lattice as a closure system on
/// its join irreducibles: closed sets are exactly `{ Ji(a) : a in L }`.
pub fn standard_representation(l: &FiniteLattice) -> ClosureSystem {
    let ji = l.ji();
    let ground: Vec<String> = ji.iter().map(|&p| l.name(p).to_string()).collect();
    let index_of = |p: usize| ji.binary_search(&p).expect("join irreducible id");
    let family: Vec<IdSet> = (0..l.len())
        .map(|a| IdSet::from_ids(ji.len(), l.ji_below(a).iter().map(index_of)))
        .collect();
    let cs = ClosureSystem::from_family(ground, &family).expect("indices are in range");
    debug_assert!(cs.completion_report().is_empty(), "Ji images form a Moore family");
    cs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::construct;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn family_completion_adds_ground_set() {
        let fam = [
            IdSet::empty(2),
            IdSet::singleton(2, 0),
            IdSet::singleton(2, 1),
        ];
        let cs = ClosureSystem::from_family(names(&["a", "b"]), &fam).unwrap();
        assert_eq!(cs.closed_sets().unwrap().len(), 4);
        assert_eq!(cs.completion_report(), &[IdSet::full(2)]);
    }

    #[test]
    fn implication_chaining() {
        // a -> b
        let cs = ClosureSystem::from_implications(
            names(&["a", "b"]),
            vec![Implication {
                premise: IdSet::singleton(2, 0),
                conclusion: 1,
            }],
        )
        .unwrap();
        assert_eq!(cs.close_ids(&[0]).to_vec(), vec![0, 1]);
        let closed = cs.closed_sets().unwrap();
        assert_eq!(closed.len(), 3); // {}, {b}, {a,b}
        let (lat, _) = cs.cld_lattice().unwrap();
        assert_eq!(lat.len(), 3);
        assert_eq!(lat.lower_covers(lat.top()).len(), 1);
    }

    #[test]
    fn out_of_ground_is_reported() {
        let fam = [IdSet::from_ids(3, [2])];
        assert_eq!(
            ClosureSystem::from_family(names(&["a", "b"]), &fam).unwrap_err(),
            ClosureError::ElementOutOfGround(2)
        );
    }

    #[test]
    fn closure_is_extensive_monotone_idempotent() {
        let cs = standard_representation(&construct::n5());
        let n = cs.ground_size();
        for mask in 0u32..(1 << n) {
            let a = IdSet::from_ids(n, (0..n).filter(|&i| mask & (1 << i) != 0));
            let ca = cs.close(&a);
            assert!(a.is_subset(&ca));
            assert_eq!(cs.close(&ca), ca);
            for mask2 in 0u32..(1 << n) {
                let b = IdSet::from_ids(n, (0..n).filter(|&i| mask2 & (1 << i) != 0));
                if a.is_subset(&b) {
                    assert!(ca.is_subset(&cs.close(&b)));
                }
            }
        }
    }

    #[test]
    fn identity_system_on_two_elements_is_boolean() {
        let fam: Vec<IdSet> = (0..4u32)
            .map(|m| IdSet::from_ids(2, (0..2).filter(|&i| m & (1 << i) != 0)))
            .collect();
        let cs = ClosureSystem::from_family(names(&["a", "b"]), &fam).unwrap();
        assert_eq!(cs.close_ids(&[0]).to_vec(), vec![0]);
        assert!(cs.satisfies_aep().unwrap());
        assert!(cs.satisfies_cover_singleton().unwrap());
        let (lat, _) = cs.cld_lattice().unwrap();
        assert_eq!(lat.len(), 4);
        assert_eq!(lat.atoms().len(), 2);
    }

    #[test]
    fn standard_representation_shapes() {
        // N5 -> {0,{a},{b},{a,c},{a,b,c}} on ground {a,b,c}
        let cs = standard_representation(&construct::n5());
        assert_eq!(cs.ground_names(), &["a", "b", "c"]);
        let closed = cs.closed_sets().unwrap();
        let expect: Vec<Vec<usize>> = vec![vec![], vec![0], vec![1], vec![0, 2], vec![0, 1, 2]];
        assert_eq!(closed.iter().map(|s| s.to_vec()).collect::<Vec<_>>(), expect);
        // M3 -> atoms plus bounds
        let cs = standard_representation(&construct::m3());
        let closed = cs.closed_sets().unwrap();
        assert_eq!(closed.len(), 5);
        assert_eq!(closed.last().unwrap().len(), 3);
    }

    #[test]
    fn aep_witnesses_on_standard_representations() {
        let m3 = standard_representation(&construct::m3());
        let w = m3.aep_witness().unwrap().unwrap();
        assert_eq!((w.closed.clone(), w.x, w.y), (vec![0], 1, 2)); // A={a}, x=b, y=c
        let n5 = standard_representation(&construct::n5());
        let w = n5.aep_witness().unwrap().unwrap();
        assert_eq!((w.closed.clone(), w.x, w.y), (vec![1], 0, 2)); // A={b}, x=a, y=c
    }

    #[test]
    fn cover_singleton_on_n5_representation() {
        let n5 = standard_representation(&construct::n5());
        let w = n5.cover_singleton_witness().unwrap().unwrap();
        assert_eq!(w.lower, vec![1]); // {b}
        assert_eq!(w.upper, vec![0, 1, 2]); // {a,b,c}
    }

    #[test]
    fn boolean_representation_is_identity_system() {
        let cs = standard_representation(&construct::boolean(2));
        assert_eq!(cs.ground_size(), 2);
        assert_eq!(cs.closed_sets().unwrap().len(), 4);
        let corr = cs.cji_correspondence().unwrap();
        assert_eq!(corr.pairs.len(), 2);
        for (x, gx) in &corr.pairs {
            assert_eq!(gx.to_vec(), vec![*x]);
        }
    }

    #[test]
    fn cji_requires_cover_singleton() {
        let n5 = standard_representation(&construct::n5());
        assert!(matches!(
            n5.cji_correspondence(),
            Err(ClosureError::PreconditionFailed(_, _))
        ));
    }

    #[test]
    fn extreme_points_identity_and_empty() {
        let cs = standard_representation(&construct::boolean(2));
        let a = IdSet::from_ids(2, [0, 1]);
        assert_eq!(cs.extreme_points(&a).unwrap(), a);
        assert!(cs.extreme_points(&IdSet::empty(2)).unwrap().is_empty());
    }

    #[test]
    fn cld_meets_are_intersections_joins_are_closed_unions() {
        let cs = standard_representation(&construct::n5());
        let (lat, labels) = cs.cld_lattice().unwrap();
        for i in 0..lat.len() {
            for j in 0..lat.len() {
                assert_eq!(labels[lat.meet(i, j)], labels[i].intersection(&labels[j]));
                assert_eq!(labels[lat.join(i, j)], cs.close(&labels[i].union(&labels[j])));
            }
        }
    }
}
