//! Exact arithmetic in `Z[zeta_q]`, `q = 2^k`.
//!
//! The `2^k`-th cyclotomic polynomial is `x^{q/2} + 1`, so an element is a
//! coefficient vector over the power basis `1, zeta, ..., zeta^{q/2 - 1}`
//! with the reduction rule `zeta^{q/2} = -1`. The representation is
//! canonical: equal elements have equal coefficient vectors. For `k = 1`
//! the basis is just `{1}` and `zeta = -1`.
//!
//! Coefficients are `i64`. The operator impls panic on overflow or on mixed
//! `k`; the `checked_*` methods report both as errors.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicInteger {
    k: u32,
    coeffs: Vec<i64>,
}

/// Length of the power basis for `q = 2^k`.
#[inline]
pub fn basis_len(k: u32) -> usize {
    1usize << (k - 1)
}

impl CyclotomicInteger {
    pub fn zero(k: u32) -> Self {
        assert!(k >= 1, "k must be at least 1");
        CyclotomicInteger {
            k,
            coeffs: vec![0; basis_len(k)],
        }
    }

    pub fn from_integer(k: u32, value: i64) -> Self {
        let mut x = Self::zero(k);
        x.coeffs[0] = value;
        x
    }

    pub fn one(k: u32) -> Self {
        Self::from_integer(k, 1)
    }

    /// Builds from power-basis coefficients; the length must be `q/2`.
    pub fn from_coeffs(k: u32, coeffs: Vec<i64>) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroOrder(0));
        }
        if coeffs.len() != basis_len(k) {
            return Err(Error::DimensionMismatch {
                expected: basis_len(k),
                got: coeffs.len(),
            });
        }
        Ok(CyclotomicInteger { k, coeffs })
    }

    /// `zeta^a` for `0 <= a < q`.
    pub fn root(a: u32, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroOrder(0));
        }
        let q = 1u32 << k;
        if a >= q {
            return Err(Error::WeightOutOfRange { weight: a, q });
        }
        Ok(Self::root_unchecked(a, k))
    }

    pub(crate) fn root_unchecked(a: u32, k: u32) -> Self {
        let h = basis_len(k);
        let mut x = Self::zero(k);
        let a = a as usize % (2 * h);
        if a < h {
            x.coeffs[a] = 1;
        } else {
            x.coeffs[a - h] = -1;
        }
        x
    }

    /// `sum_a counts[a] * zeta^a` for a histogram over exponents `0..q`.
    pub fn from_exponent_counts(k: u32, counts: &[i64]) -> Self {
        let h = basis_len(k);
        debug_assert_eq!(counts.len(), 2 * h);
        CyclotomicInteger {
            k,
            coeffs: (0..h).map(|j| counts[j] - counts[j + h]).collect(),
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        1 << self.k
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as a rational integer, if every non-constant coefficient
    /// vanishes.
    pub fn is_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    /// If the value is `+-zeta^j`, returns the exponent `a` with value
    /// `zeta^a`.
    pub fn as_root(&self) -> Option<u32> {
        let h = self.coeffs.len();
        let mut found = None;
        for (j, &c) in self.coeffs.iter().enumerate() {
            match c {
                0 => {}
                1 | -1 if found.is_none() => {
                    found = Some(if c == 1 { j } else { j + h } as u32);
                }
                _ => return None,
            }
        }
        found
    }

    /// Numeric embedding with `zeta = exp(2 pi i / q)`.
    pub fn to_complex(&self) -> Complex64 {
        let q = self.q() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| Complex64::from_polar(c as f64, 2.0 * std::f64::consts::PI * j as f64 / q))
            .sum()
    }

    fn same_k(&self, other: &Self) -> Result<()> {
        if self.k != other.k {
            return Err(Error::MixedOrder {
                left: self.k,
                right: other.k,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_k(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(CyclotomicInteger { k: self.k, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_k(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(CyclotomicInteger { k: self.k, coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_k(other)?;
        let h = self.coeffs.len();
        let mut out = vec![0i64; h];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let term = a.checked_mul(b).ok_or(Error::Overflow)?;
                let idx = i + j;
                if idx < h {
                    out[idx] = out[idx].checked_add(term).ok_or(Error::Overflow)?;
                } else {
                    out[idx - h] = out[idx - h].checked_sub(term).ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(CyclotomicInteger {
            k: self.k,
            coeffs: out,
        })
    }

    pub fn checked_scale(&self, factor: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_mul(factor).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(CyclotomicInteger { k: self.k, coeffs })
    }

    /// Division by a rational integer that must divide every coefficient.
    pub fn div_exact(&self, divisor: i64) -> Result<Self> {
        if divisor == 0 || self.coeffs.iter().any(|c| c % divisor != 0) {
            return Err(Error::NotDivisible { divisor });
        }
        Ok(CyclotomicInteger {
            k: self.k,
            coeffs: self.coeffs.iter().map(|c| c / divisor).collect(),
        })
    }

    /// Image under `zeta -> zeta^{-1}`: complex conjugation.
    pub fn conjugate(&self) -> Self {
        let h = self.coeffs.len();
        let mut coeffs = vec![0i64; h];
        coeffs[0] = self.coeffs[0];
        // zeta^{-j} = zeta^{q-j} = -zeta^{h-j} for 0 < j < h
        for j in 1..h {
            coeffs[h - j] = -self.coeffs[j];
        }
        CyclotomicInteger { k: self.k, coeffs }
    }

    /// `x * conj(x) = |x|^2`, a real element of the ring.
    pub fn norm_squared(&self) -> Self {
        self.checked_mul(&self.conjugate())
            .expect("overflow in cyclotomic norm")
    }
}

impl fmt::Display for CyclotomicInteger {
    /// Renders as a polynomial in `z`, the primitive root: `1 - z`, `3 + z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let magnitude = c.unsigned_abs();
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            match j {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if magnitude != 1 {
                        write!(f, "{magnitude}*")?;
                    }
                    if j == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{j}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CyclotomicInteger> for &CyclotomicInteger {
            type Output = CyclotomicInteger;
            fn $method(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("cyclotomic {}: {e}", stringify!($method)),
                }
            }
        }
        impl $trait<CyclotomicInteger> for CyclotomicInteger {
            type Output = CyclotomicInteger;
            fn $method(self, rhs: CyclotomicInteger) -> CyclotomicInteger {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CyclotomicInteger> for CyclotomicInteger {
            type Output = CyclotomicInteger;
            fn $method(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn neg(self) -> CyclotomicInteger {
        CyclotomicInteger {
            k: self.k,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn neg(self) -> CyclotomicInteger {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cz(k: u32, c: &[i64]) -> CyclotomicInteger {
        CyclotomicInteger::from_coeffs(k, c.to_vec()).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn roots() {
        assert_eq!(CyclotomicInteger::root(3, 2).unwrap(), cz(2, &[0, -1]));
        assert_eq!(CyclotomicInteger::root(1, 1).unwrap(), cz(1, &[-1]));
        assert_eq!(
            CyclotomicInteger::root(4, 3).unwrap(),
            CyclotomicInteger::from_integer(3, -1)
        );
        assert!(matches!(
            CyclotomicInteger::root(4, 2),
            Err(Error::WeightOutOfRange { .. })
        ));
    }

    #[test]
    fn ring_examples() {
        let a = cz(2, &[1, 1]);
        let b = cz(2, &[1, -1]);
        assert_eq!(&a * &b, CyclotomicInteger::from_integer(2, 2));
        assert_eq!(&a + &CyclotomicInteger::zero(2), a);
        assert!(matches!(
            a.checked_add(&CyclotomicInteger::zero(3)),
            Err(Error::MixedOrder { left: 2, right: 3 })
        ));
        let big = CyclotomicInteger::from_integer(2, i64::MAX);
        assert_eq!(big.checked_add(&big), Err(Error::Overflow));
        assert_eq!(big.checked_mul(&big), Err(Error::Overflow));
    }

    #[test]
    fn conjugates_and_norms() {
        assert_eq!(cz(2, &[0, 1]).conjugate(), cz(2, &[0, -1]));
        assert_eq!(cz(3, &[7, 0, 0, 0]).conjugate(), cz(3, &[7, 0, 0, 0]));
        assert_eq!(cz(2, &[1, -1]).norm_squared().is_integer(), Some(2));
        assert_eq!(cz(2, &[3, 1]).norm_squared().is_integer(), Some(10));
        assert!(CyclotomicInteger::zero(3).norm_squared().is_zero());
        // |1 + zeta_8|^2 = 2 + sqrt 2 is real but not rational
        let x = cz(3, &[1, 1, 0, 0]).norm_squared();
        assert_eq!(x.is_integer(), None);
        assert!(close(x.to_complex(), Complex64::new(2.0 + 2f64.sqrt(), 0.0), 1e-12));
    }

    #[test]
    fn embedding() {
        assert!(close(cz(2, &[1, -1]).to_complex(), Complex64::new(1.0, -1.0), 1e-12));
        assert_eq!(CyclotomicInteger::from_integer(4, 7).is_integer(), Some(7));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(
            CyclotomicInteger::root(1, 3).unwrap().to_complex(),
            Complex64::new(h, h),
            1e-12
        ));
    }

    #[test]
    fn display() {
        assert_eq!(cz(2, &[1, -1]).to_string(), "1 - z");
        assert_eq!(cz(2, &[-1, 1]).to_string(), "-1 + z");
        assert_eq!(cz(2, &[3, 1]).to_string(), "3 + z");
        assert_eq!(cz(3, &[0, 0, -2, 0]).to_string(), "-2*z^2");
        assert_eq!(CyclotomicInteger::zero(3).to_string(), "0");
    }

    #[test]
    fn roots_decode() {
        for k in 1..=4 {
            for a in 0..(1u32 << k) {
                assert_eq!(CyclotomicInteger::root(a, k).unwrap().as_root(), Some(a));
            }
        }
        assert_eq!(cz(2, &[1, 1]).as_root(), None);
        assert_eq!(cz(2, &[2, 0]).as_root(), None);
        assert_eq!(CyclotomicInteger::zero(2).as_root(), None);
    }

    #[test]
    fn exact_division() {
        assert_eq!(cz(2, &[4, -8]).div_exact(4).unwrap(), cz(2, &[1, -2]));
        assert!(matches!(cz(2, &[4, 2]).div_exact(4), Err(Error::NotDivisible { divisor: 4 })));
    }

    fn arb(k: u32) -> impl Strategy<Value = CyclotomicInteger> {
        prop::collection::vec(-1000i64..1000, basis_len(k))
            .prop_map(move |c| CyclotomicInteger::from_coeffs(k, c).unwrap())
    }

    fn arb_triple() -> impl Strategy<Value = (CyclotomicInteger, CyclotomicInteger, CyclotomicInteger)> {
        (1u32..=4).prop_flat_map(|k| (arb(k), arb(k), arb(k)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn ring_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            // against the complex embedding
            let lhs = (&a * &(&b + &c)).to_complex();
            let rhs = a.to_complex() * (b.to_complex() + c.to_complex());
            prop_assert!(close(lhs, rhs, 1e-9 * (1.0 + rhs.norm())));
        }

        #[test]
        fn conjugation_and_norms((a, b, _) in arb_triple()) {
            prop_assert_eq!(a.conjugate().conjugate(), a.clone());
            prop_assert!(close(a.conjugate().to_complex(), a.to_complex().conj(), 1e-9 * (1.0 + a.to_complex().norm())));
            let n = a.norm_squared().to_complex();
            let expected = a.to_complex().norm_sqr();
            prop_assert!(n.im.abs() <= 1e-9 * (1.0 + expected));
            prop_assert!(n.re >= -1e-9);
            prop_assert!((n.re - expected).abs() <= 1e-9 * (1.0 + expected));
            // canonical equality agrees with the embedding
            let numeric_equal = close(a.to_complex(), b.to_complex(), 1e-9);
            prop_assert_eq!(a == b, numeric_equal);
            let shifted = &b + &CyclotomicInteger::zero(b.k());
            prop_assert!(close(shifted.to_complex(), b.to_complex(), 1e-9));
        }

        #[test]
        fn root_identities(k in 1u32..=8, a in 0u32..256) {
            let q = 1u32 << k;
            let a = a % q;
            let r = CyclotomicInteger::root(a, k).unwrap();
            let inv = CyclotomicInteger::root((q - a) % q, k).unwrap();
            prop_assert_eq!(&r * &inv, CyclotomicInteger::one(k));
            prop_assert_eq!(r.conjugate(), inv);
        }
    }
}
