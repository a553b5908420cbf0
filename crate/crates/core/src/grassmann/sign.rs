//! Reordering signs for canonical monomials.

/// Sign of `A · B` brought to canonical order, where `A` and `B` are disjoint
/// sorted generator sets given as masks.
///
/// This is the cross-inversion count of a merge step: every time the merge
/// takes a generator from `b`, it jumps over all generators of `a` not yet
/// emitted, i.e. those with a larger rank.
pub fn merge_sign(a: u64, b: u64) -> i8 {
    let mut transpositions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let r = rest.trailing_zeros();
        rest &= rest - 1;
        // ranks of `a` strictly above r
        transpositions += (a >> r >> 1).count_ones();
    }
    if transpositions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign from reversing a monomial and starring each generator, then sorting
/// back to canonical order.
///
/// Reversal inverts every pair of positions; starring restores the relative
/// order inside each complete `y_i y*_i` pair, so those pairs are not inverted.
pub fn conjugation_sign(mask: u64) -> i8 {
    let d = mask.count_ones();
    let complete_pairs = (mask & (mask >> 1) & 0x5555_5555_5555_5555).count_ones();
    let inversions = d * d.saturating_sub(1) / 2 - complete_pairs;
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
