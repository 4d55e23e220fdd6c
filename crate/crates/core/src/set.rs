//! Fixed-width bit vectors over dense element ids `0..n`.
//!
//! Every subset manipulated by the lattice and closure machinery is an
//! `IdSet` with a capacity fixed at creation.  Binary operations require
//! both operands to share the same capacity.

use std::fmt;

const WORD_BITS: usize = 64;

/// A subset of `{0, .., capacity-1}` stored as a packed bit vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IdSet {
    words: Vec<u64>,
    capacity: usize,
}

impl IdSet {
    pub fn empty(capacity: usize) -> Self {
        let nwords = capacity.div_ceil(WORD_BITS);
        IdSet {
            words: vec![0; nwords.max(1)],
            capacity,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::empty(capacity);
        for i in 0..capacity {
            s.insert(i);
        }
        s
    }

    pub fn singleton(capacity: usize, id: usize) -> Self {
        let mut s = Self::empty(capacity);
        s.insert(id);
        s
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(capacity: usize, ids: I) -> Self {
        let mut s = Self::empty(capacity);
        for id in ids {
            s.insert(id);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, id: usize) {
        debug_assert!(id < self.capacity);
        self.words[id / WORD_BITS] |= 1 << (id % WORD_BITS);
    }

    pub fn remove(&mut self, id: usize) {
        debug_assert!(id < self.capacity);
        self.words[id / WORD_BITS] &= !(1 << (id % WORD_BITS));
    }

    pub fn contains(&self, id: usize) -> bool {
        if id >= self.capacity {
            return false;
        }
        self.words[id / WORD_BITS] & (1 << (id % WORD_BITS)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &IdSet) -> IdSet {
        debug_assert_eq!(self.capacity, other.capacity);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        IdSet {
            words,
            capacity: self.capacity,
        }
    }

    pub fn intersection(&self, other: &IdSet) -> IdSet {
        debug_assert_eq!(self.capacity, other.capacity);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        IdSet {
            words,
            capacity: self.capacity,
        }
    }

    pub fn difference(&self, other: &IdSet) -> IdSet {
        debug_assert_eq!(self.capacity, other.capacity);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & !b)
            .collect();
        IdSet {
            words,
            capacity: self.capacity,
        }
    }

    pub fn intersect_with(&mut self, other: &IdSet) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &IdSet) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &IdSet) -> bool {
        debug_assert_eq!(self.capacity, other.capacity);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(i * WORD_BITS + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Value order: sets compare by cardinality first, then as binary numbers.
/// Used wherever closed-set families need a canonical enumeration order.
impl Ord for IdSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for IdSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IdSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, id) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{id}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut a = IdSet::empty(70);
        a.insert(0);
        a.insert(65);
        assert!(a.contains(0) && a.contains(65) && !a.contains(1));
        assert_eq!(a.len(), 2);
        let b = IdSet::from_ids(70, [65, 3]);
        assert_eq!(a.intersection(&b).to_vec(), vec![65]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 3, 65]);
        assert_eq!(a.difference(&b).to_vec(), vec![0]);
        assert!(IdSet::empty(70).is_subset(&a));
        assert!(!a.is_subset(&b));
    }

    #[test]
    fn canonical_order_is_cardinality_then_value() {
        let e = IdSet::empty(4);
        let s0 = IdSet::singleton(4, 0);
        let s3 = IdSet::singleton(4, 3);
        let pair = IdSet::from_ids(4, [0, 1]);
        let mut v = vec![pair.clone(), s3.clone(), e.clone(), s0.clone()];
        v.sort();
        assert_eq!(v, vec![e, s0, s3, pair]);
    }
}
