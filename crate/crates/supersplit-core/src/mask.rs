//! Bitmask helpers for odd-generator index sets.

/// Index set over the odd basis: bit k set iff the k-th odd generator is
/// present. Factors of a normal-form monomial appear in increasing index
/// order.
pub type OddMask = u64;

pub fn popcount(mask: OddMask) -> usize {
    mask.count_ones() as usize
}

pub fn bits(mask: OddMask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |k| mask >> k & 1 == 1)
}

/// Number of set bits of `mask` strictly above position `k`.
pub fn bits_above(mask: OddMask, k: usize) -> usize {
    (mask >> (k + 1)).count_ones() as usize
}

/// Number of set bits of `mask` strictly below position `k`.
pub fn bits_below(mask: OddMask, k: usize) -> usize {
    (mask & ((1u64 << k) - 1)).count_ones() as usize
}

/// Wedge of two sorted index sets: `None` when they overlap, otherwise the
/// union together with the sign (−1)^{#inversions} of merging `b` after `a`.
pub fn wedge(a: OddMask, b: OddMask) -> Option<(OddMask, i8)> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0usize;
    for k in bits(b) {
        inversions += bits_above(a, k);
    }
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Some((a | b, sign))
}

/// All masks over `width` bits, ordered by (popcount, numeric value).
/// This is the pivot order for every exterior-coefficient echelon step.
pub fn masks_by_degree(width: usize) -> Vec<OddMask> {
    let mut all: Vec<OddMask> = (0..(1u64 << width)).collect();
    all.sort_by_key(|&m| (popcount(m), m));
    all
}
