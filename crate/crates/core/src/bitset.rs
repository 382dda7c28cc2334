//! Fixed-capacity bitsets over `u64` limbs, used for adjacency rows and
//! candidate sets.

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSet {
    limbs: Vec<u64>,
    capacity: usize,
}

impl BitSet {
    pub fn new(capacity: usize) -> Self {
        BitSet {
            limbs: vec![0; limbs_for(capacity)],
            capacity,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = BitSet::new(capacity);
        for i in 0..capacity {
            s.insert(i);
        }
        s
    }

    pub fn from_limbs(limbs: &[u64], capacity: usize) -> Self {
        debug_assert_eq!(limbs.len(), limbs_for(capacity));
        BitSet {
            limbs: limbs.to_vec(),
            capacity,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.capacity);
        self.limbs[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.capacity);
        self.limbs[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.capacity && self.limbs[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    /// Lowest member, if any.
    #[inline]
    pub fn first(&self) -> Option<usize> {
        self.limbs
            .iter()
            .enumerate()
            .find(|(_, &l)| l != 0)
            .map(|(i, l)| i * 64 + l.trailing_zeros() as usize)
    }

    #[inline]
    pub fn intersect_with(&mut self, other: &[u64]) {
        for (a, b) in self.limbs.iter_mut().zip(other) {
            *a &= b;
        }
    }

    #[inline]
    pub fn difference_with(&mut self, other: &[u64]) {
        for (a, b) in self.limbs.iter_mut().zip(other) {
            *a &= !b;
        }
    }

    /// `|self ∩ other|` without allocating.
    #[inline]
    pub fn intersection_len(&self, other: &[u64]) -> usize {
        self.limbs
            .iter()
            .zip(other)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `self ∩ other` as a new set.
    #[inline]
    pub fn intersection(&self, other: &[u64]) -> BitSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones {
            limbs: &self.limbs,
            index: 0,
            current: self.limbs.first().copied().unwrap_or(0),
        }
    }
}

pub(crate) fn limbs_for(capacity: usize) -> usize {
    capacity.div_ceil(64)
}

/// Ascending iterator over the members of a bitset.
pub struct Ones<'a> {
    limbs: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + bit);
            }
            self.index += 1;
            if self.index >= self.limbs.len() {
                return None;
            }
            self.current = self.limbs[self.index];
        }
    }
}

impl FromIterator<usize> for BitSet {
    /// Capacity is one past the largest member.
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let items: Vec<usize> = iter.into_iter().collect();
        let cap = items.iter().max().map_or(0, |m| m + 1);
        let mut s = BitSet::new(cap);
        for i in items {
            s.insert(i);
        }
        s
    }
}
