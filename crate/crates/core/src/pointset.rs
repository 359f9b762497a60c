//! Dense bit sets over the points `0..len` of a finite direct power.

use std::cmp::Ordering;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    len: usize,
    words: Vec<u64>,
}

impl PointSet {
    pub fn empty(len: usize) -> Self {
        PointSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_points(len: usize, points: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(len);
        for p in points {
            s.insert(p);
        }
        s
    }

    /// Size of the ambient set.
    pub fn universe_len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, p: usize) -> bool {
        p < self.len && self.words[p / 64] >> (p % 64) & 1 == 1
    }

    /// Returns `true` if the point was not present.
    #[inline]
    pub fn insert(&mut self, p: usize) -> bool {
        assert!(p < self.len, "point {p} outside 0..{}", self.len);
        let w = &mut self.words[p / 64];
        let bit = 1u64 << (p % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn remove(&mut self, p: usize) {
        if p < self.len {
            self.words[p / 64] &= !(1u64 << (p % 64));
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + t)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &PointSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &PointSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn complement(&self) -> PointSet {
        let mut s = PointSet::empty(self.len);
        for i in 0..self.len {
            if !self.contains(i) {
                s.insert(i);
            }
        }
        s
    }

    /// Smallest point not in the set.
    pub fn first_missing(&self) -> Option<usize> {
        (0..self.len).find(|&p| !self.contains(p))
    }

    /// Canonical order used for witnesses and reports: fewer points first,
    /// then lexicographic comparison of the ascending point lists.
    pub fn canonical_cmp(&self, other: &PointSet) -> Ordering {
        self.count()
            .cmp(&other.count())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl std::fmt::Debug for PointSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_operations() {
        let mut s = PointSet::empty(130);
        assert!(s.insert(3));
        assert!(!s.insert(3));
        s.insert(64);
        s.insert(129);
        assert_eq!(s.to_vec(), vec![3, 64, 129]);
        assert_eq!(s.count(), 3);
        let t = PointSet::from_points(130, [3, 129]);
        assert!(t.is_subset(&s));
        assert!(!s.is_subset(&t));
        assert_eq!(s.intersection(&t), t);
        assert_eq!(t.first_missing(), Some(0));
        assert_eq!(PointSet::full(5).first_missing(), None);
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let a = PointSet::from_points(8, [5]);
        let b = PointSet::from_points(8, [0, 7]);
        let c = PointSet::from_points(8, [1, 2]);
        assert_eq!(a.canonical_cmp(&b), Ordering::Less);
        assert_eq!(b.canonical_cmp(&c), Ordering::Less);
    }
}
