//! Membership masks over a fixed carrier `0..len`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

const WORD: usize = 64;

/// A subset of the carrier `0..len`, stored as a bit mask.
///
/// Subsets of the same carrier are totally ordered by their mask read as a
/// binary number (element `i` has weight `2^i`). This order extends
/// inclusion and is the canonical order used for every indexed family in
/// the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    len: usize,
    words: Vec<u64>,
}

impl Subset {
    pub fn empty(len: usize) -> Self {
        Subset {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn singleton(len: usize, i: usize) -> Self {
        let mut s = Self::empty(len);
        s.insert(i);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, items: I) -> Self {
        let mut s = Self::empty(len);
        for i in items {
            s.insert(i);
        }
        s
    }

    /// Builds a subset of a carrier with at most 64 elements from a raw mask.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD, "from_mask needs a carrier of at most 64 elements");
        let mut s = Self::empty(len);
        if len > 0 {
            s.words[0] = mask;
            s.trim();
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Size of the carrier, not of the subset.
    pub fn carrier_len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "element {i} outside carrier of size {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / WORD] &= !(1 << (i % WORD));
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

    fn check_len(&self, other: &Subset) {
        debug_assert_eq!(self.len, other.len, "subsets of different carriers");
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.check_len(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &Subset) -> bool {
        other.is_subset(self)
    }

    pub fn intersects(&self, other: &Subset) -> bool {
        self.check_len(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn intersection_count(&self, other: &Subset) -> usize {
        self.check_len(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Whether `self ∩ other` has an element outside `outside`.
    pub fn meets_outside(&self, other: &Subset, outside: &Subset) -> bool {
        self.check_len(other);
        self.words
            .iter()
            .zip(&other.words)
            .zip(&outside.words)
            .any(|((a, b), c)| a & b & !c != 0)
    }

    pub fn union_with(&mut self, other: &Subset) {
        self.check_len(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Subset) {
        self.check_len(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Subset) {
        self.check_len(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> Subset {
        let mut s = self.clone();
        for w in s.words.iter_mut() {
            *w = !*w;
        }
        s.trim();
        s
    }

    /// Members in increasing index order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Image of the subset under `map`, as a subset of a carrier of size `len`.
    pub fn image(&self, len: usize, map: &[usize]) -> Subset {
        Subset::from_indices(len, self.iter().map(|i| map[i]))
    }

    /// Preimage of the subset under `map` (whose domain is `0..map.len()`).
    pub fn preimage(&self, map: &[usize]) -> Subset {
        Subset::from_indices(
            map.len(),
            map.iter()
                .enumerate()
                .filter(|&(_, &y)| self.contains(y))
                .map(|(x, _)| x),
        )
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * WORD + bit);
            }
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}

/// All `k`-element subsets of `items`, in lexicographic order of positions.
pub(crate) fn combinations(items: &[usize], k: usize) -> Combinations<'_> {
    Combinations {
        items,
        positions: (0..k).collect(),
        done: k > items.len(),
    }
}

pub(crate) struct Combinations<'a> {
    items: &'a [usize],
    positions: Vec<usize>,
    done: bool,
}

impl Iterator for Combinations<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.positions.iter().map(|&p| self.items[p]).collect();
        let k = self.positions.len();
        let n = self.items.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.positions[i] < n - k + i {
                self.positions[i] += 1;
                for j in i + 1..k {
                    self.positions[j] = self.positions[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_extends_inclusion() {
        let a = Subset::from_indices(70, [1, 65]);
        let b = Subset::from_indices(70, [0, 1, 65]);
        let c = Subset::from_indices(70, [2]);
        assert!(a < b);
        assert!(c < a);
        assert!(a.is_subset(&b));
    }

    #[test]
    fn iteration_crosses_words() {
        let s = Subset::from_indices(130, [0, 63, 64, 129]);
        assert_eq!(s.to_vec(), [0, 63, 64, 129]);
        assert_eq!(s.complement().count(), 126);
        assert!(Subset::full(130).is_full());
    }

    #[test]
    fn combinations_enumerate_in_order() {
        let items = [3, 5, 7];
        let pairs: Vec<_> = combinations(&items, 2).collect();
        assert_eq!(pairs, [vec![3, 5], vec![3, 7], vec![5, 7]]);
        assert_eq!(combinations(&items, 0).count(), 1);
        assert_eq!(combinations(&items, 4).count(), 0);
    }

    #[test]
    fn image_and_preimage() {
        let map = [0, 0, 1];
        let s = Subset::from_indices(2, [0]);
        assert_eq!(s.preimage(&map).to_vec(), [0, 1]);
        assert_eq!(Subset::from_indices(3, [2]).image(2, &map).to_vec(), [1]);
    }
}
