//! Generalized Walsh-Hadamard transform
//! `H_f(u) = sum_x zeta^{f(x)} (-1)^{u.x}`, correlations, and the bent and
//! gbent predicates.
//!
//! The transform is linear over `C` but not over `Z_q`, so the fast path acts
//! on the vector of roots `zeta^{f(x)}`. In the power basis that vector is
//! `q/2` integer planes and the butterflies run on each plane independently.

use std::ops::{Add, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{basis_len, CyclotomicInteger};
use crate::error::{Error, Result};
use crate::function::{BooleanFunction, GeneralizedBooleanFunction, Limits};
use crate::index::dot;

/// In-place unnormalized Walsh-Hadamard butterflies over `log2(len)` rounds.
pub fn fwht_in_place<T>(data: &mut [T])
where
    T: Copy + Add<Output = T> + Sub<Output = T>,
{
    debug_assert!(data.len().is_power_of_two());
    let mut half = 1;
    while half < data.len() {
        for block in data.chunks_mut(half * 2) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        half *= 2;
    }
}

/// The `2^n` generalized Walsh-Hadamard coefficients of a function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    n: u32,
    k: u32,
    // plane j holds coefficient j of every value: planes[j * 2^n + u]
    planes: Vec<i64>,
}

impl Spectrum {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `H_f(u)` for a table index `u`.
    pub fn value(&self, u: usize) -> CyclotomicInteger {
        let size = self.len();
        let coeffs = (0..basis_len(self.k))
            .map(|j| self.planes[j * size + u])
            .collect();
        CyclotomicInteger::from_coeffs(self.k, coeffs).expect("plane count matches k")
    }

    pub fn values(&self) -> impl Iterator<Item = CyclotomicInteger> + '_ {
        (0..self.len()).map(|u| self.value(u))
    }

    pub fn norms_squared(&self) -> Vec<CyclotomicInteger> {
        self.values().map(|v| v.norm_squared()).collect()
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.values().map(|v| v.to_complex()).collect()
    }

    /// `sum_u |H_f(u)|^2`, which equals `2^{2n}` for every function.
    pub fn parseval_sum(&self) -> CyclotomicInteger {
        self.values()
            .map(|v| v.norm_squared())
            .fold(CyclotomicInteger::zero(self.k), |acc, x| &acc + &x)
    }

    pub fn satisfies_parseval(&self) -> bool {
        self.parseval_sum().is_integer() == Some(1i64 << (2 * self.n))
    }

    /// Serializable view.
    pub fn report(&self) -> SpectrumReport {
        let norms = self.norms_squared();
        let gbent_norm = 1i64 << self.n;
        SpectrumReport {
            n: self.n,
            k: self.k,
            values: self
                .values()
                .map(|v| SpectrumValue {
                    coeffs: v.coeffs().to_vec(),
                })
                .collect(),
            gbent: norms.iter().all(|x| x.is_integer() == Some(gbent_norm)),
            norms: norms.iter().map(|x| x.is_integer()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumValue {
    pub coeffs: Vec<i64>,
}

/// JSON shape of a spectrum. `norms[u]` is `|H_f(u)|^2` when that is a
/// rational integer and `null` otherwise (possible for `q >= 8`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub n: u32,
    pub k: u32,
    pub values: Vec<SpectrumValue>,
    pub norms: Vec<Option<i64>>,
    pub gbent: bool,
}

/// Direct double sum, `O(4^n)`. Refuses `n` above the matrix cap.
pub fn gwht_naive(f: &GeneralizedBooleanFunction) -> Result<Spectrum> {
    Limits::default().check_matrix(f.n())?;
    let (n, k) = (f.n(), f.k());
    let size = f.len();
    let q = f.q() as usize;
    let half = q / 2;
    let h = basis_len(k);
    let mut planes = vec![0i64; h * size];
    let mut counts = vec![0i64; q];
    for u in 0..size {
        counts.iter_mut().for_each(|c| *c = 0);
        for x in 0..size {
            let sign_shift = if dot(u, x) { half } else { 0 };
            counts[(f.at(x) as usize + sign_shift) % q] += 1;
        }
        let value = CyclotomicInteger::from_exponent_counts(k, &counts);
        for (j, &c) in value.coeffs().iter().enumerate() {
            planes[j * size + u] = c;
        }
    }
    Ok(Spectrum { n, k, planes })
}

/// Butterfly transform, `O(n 2^n)` per basis plane.
pub fn gwht_fast(f: &GeneralizedBooleanFunction) -> Spectrum {
    let (n, k) = (f.n(), f.k());
    let size = f.len();
    let h = basis_len(k) as u32;
    let mut planes = vec![0i64; h as usize * size];
    for (x, &v) in f.raw().iter().enumerate() {
        let v = v as u32;
        if v < h {
            planes[v as usize * size + x] = 1;
        } else {
            planes[(v - h) as usize * size + x] = -1;
        }
    }
    // |coefficients| <= 2^n, far from i64 overflow for n <= 24
    for plane in planes.chunks_mut(size) {
        fwht_in_place(plane);
    }
    Spectrum { n, k, planes }
}

/// `zeta^{f(x)} = 2^{-n} sum_u H_f(u) (-1)^{u.x}`. Fails if the spectrum
/// does not come from a function.
pub fn gwht_inverse(s: &Spectrum) -> Result<Vec<CyclotomicInteger>> {
    let size = s.len();
    let mut planes = s.planes.clone();
    for plane in planes.chunks_mut(size) {
        fwht_in_place(plane);
    }
    let divisor = size as i64;
    let h = basis_len(s.k);
    (0..size)
        .map(|x| {
            let coeffs = (0..h).map(|j| planes[j * size + x]).collect();
            let value = CyclotomicInteger::from_coeffs(s.k, coeffs)?.div_exact(divisor)?;
            if value.as_root().is_none() {
                return Err(Error::NotRootOfUnity { index: x });
            }
            Ok(value)
        })
        .collect()
}

/// Maps a vector of roots `zeta^{f(x)}` back to the function `f`.
pub fn decode_roots(n: u32, k: u32, roots: &[CyclotomicInteger]) -> Result<GeneralizedBooleanFunction> {
    let table = roots
        .iter()
        .enumerate()
        .map(|(index, r)| r.as_root().ok_or(Error::NotRootOfUnity { index }))
        .collect::<Result<Vec<_>>>()?;
    GeneralizedBooleanFunction::new(n, k, table)
}

/// Recovers `f` from its spectrum.
pub fn function_from_spectrum(s: &Spectrum) -> Result<GeneralizedBooleanFunction> {
    decode_roots(s.n, s.k, &gwht_inverse(s)?)
}

/// Integer Walsh-Hadamard transform `W_g(u) = sum_x (-1)^{g(x) + u.x}`.
pub fn wht(g: &BooleanFunction) -> Vec<i64> {
    let mut data: Vec<i64> = g.table().iter().map(|&b| if b { -1 } else { 1 }).collect();
    fwht_in_place(&mut data);
    data
}

/// `sum_x (-1)^{g(x) + g(x + z)}` for every `z`, via `W_g^2`.
pub fn boolean_autocorrelation(g: &BooleanFunction) -> Vec<i64> {
    let mut data: Vec<i64> = wht(g).iter().map(|w| w * w).collect();
    fwht_in_place(&mut data);
    let n = g.n();
    data.iter().map(|x| x >> n).collect()
}

/// Result of a bentness test; `witness` is the first `u` (table order)
/// where the spectrum is not flat, with the offending value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BentVerdict {
    pub bent: bool,
    pub witness: Option<(usize, i64)>,
}

/// `W_g(u)^2 = 2^n` for all `u`.
pub fn bent_verdict(g: &BooleanFunction) -> BentVerdict {
    let spectrum = wht(g);
    if g.n() % 2 == 1 {
        return BentVerdict {
            bent: false,
            witness: Some((0, spectrum[0])),
        };
    }
    let target = 1i64 << g.n();
    let witness = spectrum
        .iter()
        .enumerate()
        .find(|(_, &w)| w * w != target)
        .map(|(u, &w)| (u, w));
    BentVerdict {
        bent: witness.is_none(),
        witness,
    }
}

pub fn is_bent(g: &BooleanFunction) -> bool {
    bent_verdict(g).bent
}

/// A spectral value that breaks flatness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralWitness {
    pub u: usize,
    pub value: CyclotomicInteger,
    pub norm_squared: CyclotomicInteger,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbentVerdict {
    pub gbent: bool,
    pub witness: Option<SpectralWitness>,
}

/// `|H_f(u)|^2 = 2^n` exactly, for every `u`.
pub fn is_gbent(f: &GeneralizedBooleanFunction) -> GbentVerdict {
    gbent_verdict_of(&gwht_fast(f))
}

pub fn gbent_verdict_of(s: &Spectrum) -> GbentVerdict {
    let target = CyclotomicInteger::from_integer(s.k, 1i64 << s.n);
    let witness = (0..s.len()).find_map(|u| {
        let value = s.value(u);
        let norm = value.norm_squared();
        (norm != target).then_some(SpectralWitness {
            u,
            value,
            norm_squared: norm,
        })
    });
    GbentVerdict {
        gbent: witness.is_none(),
        witness,
    }
}

fn check_compatible(f: &GeneralizedBooleanFunction, g: &GeneralizedBooleanFunction) -> Result<()> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n() as usize,
            got: g.n() as usize,
        });
    }
    if f.k() != g.k() {
        return Err(Error::MixedOrder {
            left: f.k(),
            right: g.k(),
        });
    }
    Ok(())
}

fn check_point(f: &GeneralizedBooleanFunction, z: usize) -> Result<()> {
    if z >= f.len() {
        return Err(Error::DimensionMismatch {
            expected: f.len(),
            got: z,
        });
    }
    Ok(())
}

/// `C_{f,g}(z) = sum_x zeta^{f(x) - g(x + z)}`, by direct summation.
pub fn crosscorrelation(
    f: &GeneralizedBooleanFunction,
    g: &GeneralizedBooleanFunction,
    z: usize,
) -> Result<CyclotomicInteger> {
    check_compatible(f, g)?;
    check_point(f, z)?;
    let q = f.q();
    let mut counts = vec![0i64; q as usize];
    for x in 0..f.len() {
        let e = (f.at(x) + q - g.at(x ^ z)) % q;
        counts[e as usize] += 1;
    }
    Ok(CyclotomicInteger::from_exponent_counts(f.k(), &counts))
}

pub fn autocorrelation(f: &GeneralizedBooleanFunction, z: usize) -> Result<CyclotomicInteger> {
    crosscorrelation(f, f, z)
}

/// `C_{f,g}(z) = 2^{-n} sum_x H_f(x) conj(H_g(x)) (-1)^{z.x}`.
pub fn crosscorrelation_via_spectrum(
    f: &GeneralizedBooleanFunction,
    g: &GeneralizedBooleanFunction,
    z: usize,
) -> Result<CyclotomicInteger> {
    check_compatible(f, g)?;
    check_point(f, z)?;
    let (hf, hg) = (gwht_fast(f), gwht_fast(g));
    let mut acc = CyclotomicInteger::zero(f.k());
    for x in 0..f.len() {
        let term = hf.value(x).checked_mul(&hg.value(x).conjugate())?;
        acc = if dot(z, x) {
            acc.checked_sub(&term)?
        } else {
            acc.checked_add(&term)?
        };
    }
    acc.div_exact(f.len() as i64)
}

/// `sum_u C_{f,g}(u) (-1)^{u.x}` from direct correlations. This equals
/// `H_f(x) conj(H_g(x))` with no normalizing factor.
pub fn correlation_transform(
    f: &GeneralizedBooleanFunction,
    g: &GeneralizedBooleanFunction,
    x: usize,
) -> Result<CyclotomicInteger> {
    check_compatible(f, g)?;
    check_point(f, x)?;
    let mut acc = CyclotomicInteger::zero(f.k());
    for u in 0..f.len() {
        let c = crosscorrelation(f, g, u)?;
        acc = if dot(u, x) {
            acc.checked_sub(&c)?
        } else {
            acc.checked_add(&c)?
        };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expression;
    use proptest::prelude::*;

    fn cz(k: u32, c: &[i64]) -> CyclotomicInteger {
        CyclotomicInteger::from_coeffs(k, c.to_vec()).unwrap()
    }

    fn quadratic_q4() -> GeneralizedBooleanFunction {
        GeneralizedBooleanFunction::new(2, 2, vec![0, 0, 2, 3]).unwrap()
    }

    fn gbent4() -> GeneralizedBooleanFunction {
        parse_expression("x1 + 2*(x1*x2 (+) x3*x4)", 4, 2).unwrap()
    }

    #[test]
    fn quadratic_q4_spectrum() {
        let expected = vec![cz(2, &[1, -1]), cz(2, &[-1, 1]), cz(2, &[3, 1]), cz(2, &[1, -1])];
        for s in [gwht_naive(&quadratic_q4()).unwrap(), gwht_fast(&quadratic_q4())] {
            assert_eq!(s.values().collect::<Vec<_>>(), expected);
        }
    }

    #[test]
    fn zero_function_spectrum() {
        let s = gwht_fast(&GeneralizedBooleanFunction::zero(3, 3).unwrap());
        assert_eq!(s.value(0).is_integer(), Some(8));
        assert!((1..8).all(|u| s.value(u).is_zero()));
    }

    #[test]
    fn one_variable_hand_computation() {
        let f = GeneralizedBooleanFunction::new(1, 1, vec![0, 1]).unwrap();
        let s = gwht_fast(&f);
        assert_eq!(s.value(0).is_integer(), Some(0));
        assert_eq!(s.value(1).is_integer(), Some(2));
    }

    #[test]
    fn gbent4_is_flat() {
        let s = gwht_naive(&gbent4()).unwrap();
        for v in s.values() {
            assert_eq!(v.norm_squared().is_integer(), Some(16));
        }
        assert!(is_gbent(&gbent4()).gbent);
    }

    #[test]
    fn gbent_verdicts() {
        let v = is_gbent(&quadratic_q4());
        assert!(!v.gbent);
        let w = v.witness.unwrap();
        assert_eq!(w.u, 0);
        assert_eq!(w.value, cz(2, &[1, -1]));
        assert_eq!(w.norm_squared.is_integer(), Some(2));
        for n in 1..=4 {
            let zero = GeneralizedBooleanFunction::zero(n, 2).unwrap();
            let v = is_gbent(&zero);
            assert!(!v.gbent);
            assert_eq!(v.witness.unwrap().norm_squared.is_integer(), Some(1 << (2 * n)));
        }
    }

    #[test]
    fn naive_matches_fast_exhaustively_at_n2() {
        for k in 1..=3u32 {
            let q = 1u32 << k;
            for code in 0..q.pow(4) {
                let table = (0..4).map(|i| (code / q.pow(i)) % q).collect();
                let f = GeneralizedBooleanFunction::new(2, k, table).unwrap();
                let fast = gwht_fast(&f);
                assert_eq!(gwht_naive(&f).unwrap(), fast);
                assert!(fast.satisfies_parseval());
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let roots = gwht_inverse(&gwht_fast(&quadratic_q4())).unwrap();
        assert_eq!(decode_roots(2, 2, &roots).unwrap().table(), vec![0, 0, 2, 3]);
        let zero = GeneralizedBooleanFunction::zero(3, 2).unwrap();
        let roots = gwht_inverse(&gwht_fast(&zero)).unwrap();
        assert!(roots.iter().all(|r| *r == CyclotomicInteger::one(2)));
    }

    #[test]
    fn inverse_rejects_corrupted_spectra() {
        let mut s = gwht_fast(&quadratic_q4());
        s.planes[0] += 4;
        assert!(matches!(gwht_inverse(&s), Err(Error::NotRootOfUnity { .. })));
        s.planes[0] -= 3;
        assert!(matches!(gwht_inverse(&s), Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn classical_transform() {
        let g = BooleanFunction::from_bits(2, &[0, 0, 0, 1]).unwrap();
        assert_eq!(wht(&g), vec![2, 2, 2, -2]);
        assert_eq!(wht(&BooleanFunction::zero(3).unwrap()), vec![8, 0, 0, 0, 0, 0, 0, 0]);
        assert!(is_bent(&g));
        let quad = parse_expression("x1x2 (+) x3x4", 4, 1).unwrap().component(0);
        assert!(wht(&quad).iter().all(|w| w.abs() == 4));
        assert!(is_bent(&quad));
        let odd = parse_expression("x1x2 (+) x3", 3, 1).unwrap().component(0);
        assert!(!is_bent(&odd));
    }

    #[test]
    fn boolean_autocorrelation_matches_direct_sum() {
        for code in 0u32..256 {
            let g = BooleanFunction::from_fn(3, |x| code >> x & 1 == 1).unwrap();
            let fast = boolean_autocorrelation(&g);
            for z in 0..8 {
                let direct: i64 = (0..8).map(|x| if g.at(x) ^ g.at(x ^ z) { -1 } else { 1 }).sum();
                assert_eq!(fast[z], direct);
            }
        }
    }

    #[test]
    fn correlation_basics() {
        let f = quadratic_q4();
        assert_eq!(autocorrelation(&f, 0).unwrap().is_integer(), Some(4));
        let zero = GeneralizedBooleanFunction::zero(3, 3).unwrap();
        for z in 0..8 {
            assert_eq!(crosscorrelation(&zero, &zero, z).unwrap().is_integer(), Some(8));
        }
        for z in 0..4 {
            assert_eq!(
                crosscorrelation_via_spectrum(&f, &f, z).unwrap(),
                autocorrelation(&f, z).unwrap()
            );
        }
        let other = GeneralizedBooleanFunction::zero(3, 2).unwrap();
        assert!(crosscorrelation(&f, &other, 0).is_err());
        assert!(crosscorrelation(&f, &GeneralizedBooleanFunction::zero(2, 3).unwrap(), 0).is_err());
        assert!(crosscorrelation(&f, &f, 4).is_err());
    }

    fn arb_pair() -> impl Strategy<Value = (GeneralizedBooleanFunction, GeneralizedBooleanFunction)> {
        (1u32..=4, 1u32..=3).prop_flat_map(|(n, k)| {
            let table = prop::collection::vec(0u32..(1 << k), 1usize << n);
            (table.clone(), table).prop_map(move |(a, b)| {
                (
                    GeneralizedBooleanFunction::new(n, k, a).unwrap(),
                    GeneralizedBooleanFunction::new(n, k, b).unwrap(),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn gbent_iff_autocorrelation_vanishes((f, _) in arb_pair()) {
            let flat = is_gbent(&f).gbent;
            let vanishing = (1..f.len()).all(|z| autocorrelation(&f, z).unwrap().is_zero());
            prop_assert_eq!(flat, vanishing);
        }

        #[test]
        fn correlation_identities((f, g) in arb_pair()) {
            let (hf, hg) = (gwht_fast(&f), gwht_fast(&g));
            for z in 0..f.len() {
                prop_assert_eq!(crosscorrelation_via_spectrum(&f, &g, z).unwrap(), crosscorrelation(&f, &g, z).unwrap());
                let forward = correlation_transform(&f, &g, z).unwrap();
                prop_assert_eq!(forward, &hf.value(z) * &hg.value(z).conjugate());
            }
        }

        #[test]
        fn wht_is_q_two_gwht((f, _) in arb_pair()) {
            let g = f.component(0);
            let s = gwht_fast(&g.to_generalized());
            let w = wht(&g);
            prop_assert_eq!(s.values().map(|v| v.is_integer().unwrap()).collect::<Vec<_>>(), w.clone());
            prop_assert_eq!(w.iter().map(|x| x * x).sum::<i64>(), 1i64 << (2 * g.n()));
        }
    }
}
