//! Integer combinations of symbolic terms, the currency of Grothendieck groups.

use alloc::collections::btree_map::{self, BTreeMap};
use core::fmt;

/// A finite `Z`-linear combination of terms of type `T`.
///
/// Terms with coefficient zero are never stored, so two sums are equal exactly
/// when they agree as elements of the free abelian group on `T`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalSum<T: Ord> {
    terms: BTreeMap<T, i64>,
}

impl<T: Ord> Default for FormalSum<T> {
    fn default() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }
}

impl<T: Ord> FormalSum<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(term: T) -> Self {
        let mut s = Self::new();
        s.add(term, 1);
        s
    }

    pub fn add(&mut self, term: T, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(term) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn add_sum(&mut self, other: FormalSum<T>, scale: i64) {
        for (t, c) in other.terms {
            self.add(t, c * scale);
        }
    }

    pub fn coeff(&self, term: &T) -> i64 {
        self.terms.get(term).copied().unwrap_or(0)
    }

    /// Number of distinct terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, i64)> {
        self.terms.iter().map(|(t, c)| (t, *c))
    }

    pub fn terms(&self) -> impl Iterator<Item = &T> {
        self.terms.keys()
    }

    /// The unique term when the sum is a single term with coefficient one.
    pub fn as_single(&self) -> Option<&T> {
        match self.terms.iter().next() {
            Some((t, 1)) if self.terms.len() == 1 => Some(t),
            _ => None,
        }
    }

    pub fn map_terms<U: Ord>(self, mut f: impl FnMut(T) -> U) -> FormalSum<U> {
        let mut out = FormalSum::new();
        for (t, c) in self.terms {
            out.add(f(t), c);
        }
        out
    }
}

impl<T: Ord> IntoIterator for FormalSum<T> {
    type Item = (T, i64);
    type IntoIter = btree_map::IntoIter<T, i64>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<T: Ord> FromIterator<(T, i64)> for FormalSum<T> {
    fn from_iter<I: IntoIterator<Item = (T, i64)>>(iter: I) -> Self {
        let mut s = FormalSum::new();
        for (t, c) in iter {
            s.add(t, c);
        }
        s
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for FormalSum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merging_and_cancellation() {
        let mut s: FormalSum<u8> = [(1, 2), (2, 1)].into_iter().collect();
        s.add(1, -2);
        assert_eq!(s.len(), 1);
        assert_eq!(s.as_single(), Some(&2));
        s.add(2, 1);
        assert_eq!(s.as_single(), None);
        assert_eq!(s.total(), 2);
        assert_eq!(s.coeff(&7), 0);
    }
}
