//! Index conventions.
//!
//! Truth tables are stored lexicographically: `x1` is the most significant
//! bit of the table index, so the table of `f(x1, x2)` lists
//! `f(0,0), f(0,1), f(1,0), f(1,1)`. This is [`enc`].
//!
//! The canonical injection [`iota`] is little-endian,
//! `iota(c0, ..., c_{s-1}) = sum c_j 2^j`. It is only used where digits of a
//! value in `Z_q` are paired with a bit-vector (the weight classes of
//! [`crate::theorems::weight_classes`]).
//!
//! Dot products `u . x` never depend on the bit order as long as both sides
//! use the same one, so the transforms work directly on indices.

/// Table index of `(x1, ..., xn)` with `x1` as the most significant bit.
pub fn enc(bits: &[bool]) -> usize {
    bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize)
}

/// Inverse of [`enc`]: the bit-vector `(x1, ..., xn)` of a table index.
pub fn dec(index: usize, n: u32) -> Vec<bool> {
    (1..=n).map(|j| (index >> (n - j)) & 1 == 1).collect()
}

/// Little-endian canonical injection `V_s -> Z_{2^s}`.
pub fn iota(bits: &[bool]) -> usize {
    bits.iter()
        .enumerate()
        .fold(0usize, |acc, (j, &b)| acc | ((b as usize) << j))
}

/// `iota^{-1}(value)` as a vector `(c0, ..., c_{s-1})` of length `s`.
pub fn iota_inv(value: usize, s: u32) -> Vec<bool> {
    (0..s).map(|j| (value >> j) & 1 == 1).collect()
}

/// Value of variable `x_j` (1-based) at table index `index`.
#[inline]
pub fn variable(index: usize, j: u32, n: u32) -> bool {
    (index >> (n - j)) & 1 == 1
}

/// Parity of `u . x` over `F_2`.
#[inline]
pub fn dot(u: usize, x: usize) -> bool {
    (u & x).count_ones() & 1 == 1
}

/// Renders a table index as the bit string `x1 x2 ... xn`.
pub fn bit_string(index: usize, n: u32) -> String {
    dec(index, n)
        .into_iter()
        .map(|b| if b { '1' } else { '0' })
        .collect()
}
