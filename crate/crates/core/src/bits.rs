//! Fixed-width bitsets backed by `u64` words.
//!
//! Adjacency rows and solver candidate sets are all `Bits` of the same width,
//! so the hot loops are plain word-wise AND/ANDNOT sweeps.

/// Bitset over a fixed universe `0..len`.
///
/// Invariant: bits at positions >= `len` in the last word are always zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Bits {
    words: Vec<u64>,
    len: usize,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl Bits {
    /// Empty set over a universe of `len` bits.
    pub fn new(len: usize) -> Self {
        Bits {
            words: vec![0; word_count(len)],
            len,
        }
    }

    /// Full set `{0, .., len-1}`.
    pub fn full(len: usize) -> Self {
        let mut b = Bits {
            words: vec![!0u64; word_count(len)],
            len,
        };
        b.mask_tail();
        b
    }

    #[inline]
    fn mask_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    #[inline]
    pub fn test(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest set bit, if any.
    #[inline]
    pub fn first(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn clear_all(&mut self) {
        self.words.fill(0);
    }

    /// In-place intersection.
    #[inline]
    pub fn and_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    /// In-place union.
    #[inline]
    pub fn or_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// In-place difference (`self &= !other`).
    #[inline]
    pub fn and_not_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// `self = a & b` without allocating; all three must share a universe.
    #[inline]
    pub fn assign_and(&mut self, a: &Bits, b: &Bits) {
        debug_assert_eq!(self.len, a.len);
        debug_assert_eq!(self.len, b.len);
        for ((o, x), y) in self.words.iter_mut().zip(&a.words).zip(&b.words) {
            *o = x & y;
        }
    }

    pub fn copy_from(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        self.words.copy_from_slice(&other.words);
    }

    #[inline]
    pub fn intersects(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    #[inline]
    pub fn intersection_count(&self, other: &Bits) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset_of(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Iterator over set bit positions in increasing order.
    pub fn iter_ones(&self) -> Ones<'_> {
        Ones {
            bits: self,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }
}

impl std::fmt::Debug for Bits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter_ones()).finish()
    }
}

impl FromIterator<usize> for Bits {
    /// Collects indices into a set sized to hold the largest one.
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let idx: Vec<usize> = iter.into_iter().collect();
        let len = idx.iter().max().map_or(0, |&m| m + 1);
        let mut b = Bits::new(len);
        for i in idx {
            b.set(i);
        }
        b
    }
}

pub struct Ones<'a> {
    bits: &'a Bits,
    word_idx: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.bits.words.len() {
                return None;
            }
            self.current = self.bits.words[self.word_idx];
        }
        let tz = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_idx * 64 + tz)
    }
}

// =============================================================================
// tests
// =============================================================================

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_test_clear() {
        let mut b = Bits::new(130);
        assert!(b.is_empty());
        for i in [0, 63, 64, 65, 128, 129] {
            b.set(i);
            assert!(b.test(i));
        }
        assert_eq!(b.count(), 6);
        b.clear(64);
        assert!(!b.test(64));
        assert_eq!(b.to_vec(), vec![0, 63, 65, 128, 129]);
    }

    #[test]
    fn full_masks_tail() {
        let b = Bits::full(70);
        assert_eq!(b.count(), 70);
        assert_eq!(b.first(), Some(0));
        let e = Bits::full(0);
        assert_eq!(e.count(), 0);
        assert!(e.is_empty());
    }

    #[test]
    fn word_ops() {
        let a: Bits = [1usize, 5, 9, 70].into_iter().collect();
        let mut a = {
            // widen to a common universe
            let mut w = Bits::new(80);
            for i in a.iter_ones() {
                w.set(i);
            }
            w
        };
        let mut b = Bits::new(80);
        for i in [5, 9, 12] {
            b.set(i);
        }
        let mut i = a.clone();
        i.and_with(&b);
        assert_eq!(i.to_vec(), vec![5, 9]);
        assert!(a.intersects(&b));
        assert_eq!(a.intersection_count(&b), 2);
        a.and_not_with(&b);
        assert_eq!(a.to_vec(), vec![1, 70]);
        assert!(!a.intersects(&b));
        a.or_with(&b);
        assert_eq!(a.count(), 5);
        let mut out = Bits::new(80);
        out.assign_and(&a, &b);
        assert_eq!(out.to_vec(), vec![5, 9, 12]);
        assert!(out.is_subset_of(&a));
    }

    #[test]
    fn iteration_order() {
        let mut b = Bits::new(200);
        let idx = [0, 1, 63, 64, 127, 128, 199];
        for &i in &idx {
            b.set(i);
        }
        let got: Vec<usize> = b.iter_ones().collect();
        assert_eq!(got, idx);
    }
}
