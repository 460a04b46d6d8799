//! Algebraic normal form of Boolean functions.
//!
//! ANF coefficients are indexed like truth tables: the coefficient at index
//! `m` belongs to the monomial containing `x_j` exactly when bit `n - j` of
//! `m` is set.

use crate::function::BooleanFunction;

/// Binary Moebius transform of the truth table. The transform is its own
/// inverse, so applying it to an ANF table gives back the truth table.
pub fn boolean_anf(g: &BooleanFunction) -> Vec<bool> {
    let mut coeffs = g.table().to_vec();
    moebius_in_place(&mut coeffs);
    coeffs
}

/// Re-expands an ANF coefficient table into a truth table.
pub fn anf_to_truth_table(coeffs: &[bool]) -> Vec<bool> {
    let mut table = coeffs.to_vec();
    moebius_in_place(&mut table);
    table
}

fn moebius_in_place(data: &mut [bool]) {
    let mut half = 1;
    while half < data.len() {
        for block in data.chunks_mut(half * 2) {
            let (lo, hi) = block.split_at_mut(half);
            for (l, h) in lo.iter().zip(hi.iter_mut()) {
                *h ^= *l;
            }
        }
        half *= 2;
    }
}

/// Largest number of variables in a monomial with nonzero coefficient;
/// 0 for constants.
pub fn algebraic_degree(g: &BooleanFunction) -> u32 {
    boolean_anf(g)
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .map(|(m, _)| m.count_ones())
        .max()
        .unwrap_or(0)
}
