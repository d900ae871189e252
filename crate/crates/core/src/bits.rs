//! Small fixed-width sets over dense indices `0..64`.
//!
//! Every relation in the crate (order matrices, arc matrices, closed sets) is
//! a `Vec<u64>` of rows; these helpers keep the bit twiddling in one place.

/// Largest carrier / vertex count representable by a single `u64` row.
pub const MAX_SIZE: usize = 64;

#[inline]
pub fn bit(i: usize) -> u64 {
    1u64 << i
}

#[inline]
pub fn contains(set: u64, i: usize) -> bool {
    set >> i & 1 == 1
}

#[inline]
pub fn is_subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

#[inline]
pub fn is_proper_subset(a: u64, b: u64) -> bool {
    a != b && is_subset(a, b)
}

/// The set `{0, .., n-1}`.
#[inline]
pub fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterate the members of a set in increasing order.
pub fn iter(set: u64) -> Ones {
    Ones(set)
}

pub fn to_vec(set: u64) -> Vec<usize> {
    iter(set).collect()
}

pub fn from_iter<I: IntoIterator<Item = usize>>(items: I) -> u64 {
    items.into_iter().fold(0, |acc, i| acc | bit(i))
}

#[derive(Debug, Clone)]
pub struct Ones(u64);

impl Iterator for Ones {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Ones {}
