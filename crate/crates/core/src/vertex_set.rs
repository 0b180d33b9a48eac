//! Bit-vector vertex sets.
//!
//! Vertices are 1-based labels. Label `v` lives in bit `v - 1`, so any set
//! over at most 64 vertices fits in one inline word; larger vertex counts
//! spill to the heap transparently.

use smallvec::SmallVec;
use std::fmt;

type Words = SmallVec<[u64; 1]>;

/// A set of 1-based vertex labels.
///
/// The word vector never carries trailing zero words, so derived equality
/// and hashing agree with set equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Words,
}

#[inline]
fn slot(v: usize) -> (usize, u64) {
    debug_assert!(v >= 1, "vertex labels are 1-based");
    let bit = v - 1;
    (bit / 64, 1u64 << (bit % 64))
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The full range `1..=n`.
    pub fn full(n: usize) -> Self {
        let mut words: Words = SmallVec::new();
        let full_words = n / 64;
        for _ in 0..full_words {
            words.push(u64::MAX);
        }
        let rest = n % 64;
        if rest > 0 {
            words.push((1u64 << rest) - 1);
        }
        Self { words }
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    /// Returns true if `v` was not already present.
    pub fn insert(&mut self, v: usize) -> bool {
        let (w, mask) = slot(v);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & mask == 0;
        self.words[w] |= mask;
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let (w, mask) = slot(v);
        if w >= self.words.len() {
            return false;
        }
        let present = self.words[w] & mask != 0;
        self.words[w] &= !mask;
        self.trim();
        present
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        if v == 0 {
            return false;
        }
        let (w, mask) = slot(v);
        self.words.get(w).is_some_and(|x| x & mask != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn union(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (a, b) in words.iter_mut().zip(short.words.iter()) {
            *a |= b;
        }
        Self { words }
    }

    pub fn union_with(&mut self, other: &Self) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut words: Words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a & b)
            .collect();
        while words.last() == Some(&0) {
            words.pop();
        }
        Self { words }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn difference_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
        self.trim();
    }

    pub fn intersection_len(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().enumerate().all(|(i, a)| {
            let b = other.words.get(i).copied().unwrap_or(0);
            a & !b == 0
        })
    }

    /// Smallest label in the set.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize + 1)
    }

    /// Ascending iteration over labels.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + tz + 1);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl Extend<usize> for VertexSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        for v in iter {
            self.insert(v);
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn spills_past_one_word() {
        let mut s = VertexSet::new();
        s.insert(1);
        s.insert(64);
        s.insert(65);
        s.insert(200);
        assert_eq!(s.to_vec(), vec![1, 64, 65, 200]);
        assert_eq!(s.len(), 4);
        s.remove(200);
        s.remove(65);
        assert_eq!(s, [1, 64].into_iter().collect());
    }

    #[test]
    fn full_range() {
        assert_eq!(VertexSet::full(0), VertexSet::new());
        assert_eq!(VertexSet::full(64).len(), 64);
        assert_eq!(VertexSet::full(70).to_vec(), (1..=70).collect::<Vec<_>>());
    }

    proptest! {
        #[test]
        fn agrees_with_btreeset(a in prop::collection::btree_set(1usize..150, 0..40),
                                b in prop::collection::btree_set(1usize..150, 0..40)) {
            let sa: VertexSet = a.iter().copied().collect();
            let sb: VertexSet = b.iter().copied().collect();
            let union: BTreeSet<_> = a.union(&b).copied().collect();
            let inter: BTreeSet<_> = a.intersection(&b).copied().collect();
            let diff: BTreeSet<_> = a.difference(&b).copied().collect();
            prop_assert_eq!(sa.union(&sb).to_vec(), union.into_iter().collect::<Vec<_>>());
            prop_assert_eq!(sa.intersection(&sb).to_vec(), inter.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.difference(&sb).to_vec(), diff.into_iter().collect::<Vec<_>>());
            prop_assert_eq!(sa.is_disjoint(&sb), inter.is_empty());
            prop_assert_eq!(sa.intersection_len(&sb), inter.len());
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
            prop_assert_eq!(sa.first(), a.iter().next().copied());
            // equality is independent of construction history
            prop_assert_eq!(sa.intersection(&sb), inter.iter().copied().collect::<VertexSet>());
        }
    }
}
