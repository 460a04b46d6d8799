use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::CyclotomicInteger;
use crate::error::{Error, Result};
use crate::index::dot;
use crate::transform::{autocorrelation, gwht_fast, Spectrum};

use super::CayleyGraph;

/// Largest `n` for which [`CayleyGraph::butson_check`] multiplies the
/// matrices out; above it the autocorrelation test is used.
pub const DIRECT_PRODUCT_MAX_N: u32 = 8;

/// Largest `n` for the floating-point eigenvalue cross-check.
pub const NUMERIC_EIGEN_MAX_N: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ButsonMethod {
    /// Every entry of `A A*` computed from the matrix.
    DirectProduct,
    /// `(A A*)[a][b] = C_f(a + b)`, checked for `z != 0` only.
    Autocorrelation,
}

/// Whether `A A* = 2^n I`; on failure, the first offending entry in
/// row-major order and its value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ButsonVerdict {
    pub butson: bool,
    pub method: ButsonMethod,
    pub witness: Option<((usize, usize), CyclotomicInteger)>,
}

/// Exact check that every character vector is an eigenvector with the
/// matching transform value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactEigenCheck {
    pub verified: bool,
    /// First `u` whose character vector fails.
    pub failure: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericEigenCheck {
    pub matched: bool,
    /// Largest distance between a transform value and the numeric
    /// eigenvalue it was paired with.
    pub max_error: f64,
    pub tolerance: f64,
}

/// Generic real weight for [`normal_eigenvalues`].
const MIXING: f64 = 0.577_215_664_901_532_9;

/// Eigenvalues of a normal matrix `A`. With `B = (A + A*)/2` and
/// `C = (A - A*)/2i`, which are Hermitian and commute, the eigenvectors of
/// `B + tC` for generic `t` diagonalize `A`, and `v* A v` is the eigenvalue
/// at `v`. A Hermitian solver converges reliably where the general Schur
/// iteration can stall on the repeated eigenvalues these matrices have.
fn normal_eigenvalues(a: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let adjoint = a.adjoint();
    let scale = a.norm().max(1.0);
    if (a * &adjoint - &adjoint * a).norm() > 1e-9 * scale * scale {
        return Err(Error::Internal("adjacency matrix is not normal".into()));
    }
    let b = (a + &adjoint).scale(0.5);
    let c = (a - &adjoint) * Complex64::new(0.0, -0.5);
    let mixed = b + c.scale(MIXING);
    let eigen = SymmetricEigen::try_new(mixed, f64::EPSILON, 1_000_000)
        .ok_or_else(|| Error::Internal("eigenvalue iteration did not converge".into()))?;
    Ok(eigen
        .eigenvectors
        .column_iter()
        .map(|v| (v.adjoint() * a * v)[(0, 0)])
        .collect())
}

impl CayleyGraph {
    /// The eigenvalues of the multiplicative adjacency matrix: eigenvalue
    /// `u` belongs to the character vector `x_u(j) = (-1)^{u.j}` and equals
    /// `H_f(u)`.
    pub fn spectrum_via_wht(&self) -> Spectrum {
        gwht_fast(&self.f)
    }

    /// Verifies `A x_u = H_f(u) x_u` for every `u`, in exact arithmetic.
    pub fn eigen_verify_exact(&self) -> Result<ExactEigenCheck> {
        self.eigen_verify_against(&self.spectrum_via_wht())
    }

    /// Verifies `A x_u = s(u) x_u` for a claimed spectrum `s`.
    pub(crate) fn eigen_verify_against(&self, spectrum: &Spectrum) -> Result<ExactEigenCheck> {
        self.limits.check_matrix(self.f.n())?;
        let size = self.order();
        let k = self.f.k();
        let half = self.q() / 2;
        let matrix = self.additive_matrix()?;
        let failure = (0..size).into_par_iter().find_first(|&u| {
            let eigenvalue = spectrum.value(u);
            let negated = -&eigenvalue;
            (0..size).any(|i| {
                let mut coeffs = vec![0i64; crate::cyclotomic::basis_len(k)];
                for (j, &w) in matrix[i].iter().enumerate() {
                    let sign = if dot(u, j) { -1 } else { 1 };
                    if w < half {
                        coeffs[w as usize] += sign;
                    } else {
                        coeffs[(w - half) as usize] -= sign;
                    }
                }
                let product = CyclotomicInteger::from_coeffs(k, coeffs).expect("length matches k");
                let expected = if dot(u, i) { &negated } else { &eigenvalue };
                product != *expected
            })
        });
        Ok(ExactEigenCheck {
            verified: failure.is_none(),
            failure,
        })
    }

    /// Numeric eigenvalues of the complex adjacency matrix, paired greedily
    /// with the transform values; every pair must lie within `tolerance`.
    /// The numeric side never uses the transform: it diagonalizes the
    /// matrix with a floating-point Hermitian eigensolver.
    pub fn eigen_verify_numeric(&self, tolerance: f64) -> Result<NumericEigenCheck> {
        let n = self.f.n();
        if n > NUMERIC_EIGEN_MAX_N {
            return Err(Error::LimitExceeded {
                what: "n (numeric eigenvalues)",
                value: n as u64,
                limit: NUMERIC_EIGEN_MAX_N as u64,
            });
        }
        self.limits.check_matrix(n)?;
        let size = self.order();
        let roots: Vec<Complex64> = (0..self.q())
            .map(|a| CyclotomicInteger::root_unchecked(a, self.f.k()).to_complex())
            .collect();
        let m = DMatrix::from_fn(size, size, |i, j| roots[self.weight(i, j) as usize]);
        let numeric = normal_eigenvalues(&m)?;
        let expected = self.spectrum_via_wht().to_complex();
        let mut used = vec![false; numeric.len()];
        let mut max_error = 0f64;
        for value in expected {
            let (best, distance) = numeric
                .iter()
                .enumerate()
                .filter(|(i, _)| !used[*i])
                .map(|(i, z)| (i, (z - value).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("as many eigenvalues as vertices");
            used[best] = true;
            max_error = max_error.max(distance);
        }
        Ok(NumericEigenCheck {
            matched: max_error <= tolerance,
            max_error,
            tolerance,
        })
    }

    /// Whether the multiplicative adjacency matrix is `q`-Butson Hadamard,
    /// `A A* = 2^n I`. Multiplies the matrices out for `n` up to
    /// [`DIRECT_PRODUCT_MAX_N`], and otherwise tests the autocorrelations.
    pub fn butson_check(&self) -> ButsonVerdict {
        if self.f.n() <= DIRECT_PRODUCT_MAX_N {
            self.butson_direct()
        } else {
            self.butson_autocorrelation()
        }
    }

    /// `(A A*)[a][b] = sum_c zeta^{f(a + c) - f(b + c)}`, every entry.
    pub fn butson_direct(&self) -> ButsonVerdict {
        let size = self.order();
        let q = self.q();
        let k = self.f.k();
        let diagonal = CyclotomicInteger::from_integer(k, size as i64);
        let witness = (0..size).into_par_iter().find_map_first(|a| {
            let mut counts = vec![0i64; q as usize];
            (0..size).find_map(|b| {
                counts.iter_mut().for_each(|c| *c = 0);
                for c in 0..size {
                    let exponent = (self.weight(a, c) + q - self.weight(b, c)) % q;
                    counts[exponent as usize] += 1;
                }
                let entry = CyclotomicInteger::from_exponent_counts(k, &counts);
                let expected_zero = a != b;
                let ok = if expected_zero { entry.is_zero() } else { entry == diagonal };
                (!ok).then_some(((a, b), entry))
            })
        });
        ButsonVerdict {
            butson: witness.is_none(),
            method: ButsonMethod::DirectProduct,
            witness,
        }
    }

    /// `C_f(z) = 0` for every `z != 0`; the witness entry is `(0, z)`.
    pub fn butson_autocorrelation(&self) -> ButsonVerdict {
        let witness = (1..self.order()).into_par_iter().find_map_first(|z| {
            let c = autocorrelation(&self.f, z).expect("z is a vertex");
            (!c.is_zero()).then_some(((0, z), c))
        });
        ButsonVerdict {
            butson: witness.is_none(),
            method: ButsonMethod::Autocorrelation,
            witness,
        }
    }
}
