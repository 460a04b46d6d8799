//! Positive instances for the audits. These are the standard
//! Maiorana-McFarland constructions, not anything new: with `n = 2m`,
//! `x` the first `m` variables and `y` the last `m`,
//!
//! * `x . pi(y) + g(y)` is bent for every permutation `pi` of `V_m`;
//! * `2^{k-1} (x . pi(y)) + g(y)` is gbent for any `g : V_m -> Z_q`, since
//!   `H(u, v) = 2^m zeta^{g(w)} (-1)^{v . w}` with `w = pi^{-1}(u)`.

use crate::error::{Error, Result};
use crate::function::{BooleanFunction, GeneralizedBooleanFunction};
use crate::transform::{is_bent, is_gbent};

fn check_permutation(m: u32, pi: &[usize]) -> Result<()> {
    let size = 1usize << m;
    if pi.len() != size {
        return Err(Error::DimensionMismatch {
            expected: size,
            got: pi.len(),
        });
    }
    let mut seen = vec![false; size];
    for &p in pi {
        if p >= size || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Precondition("pi is not a permutation of V_m".into()));
        }
    }
    Ok(())
}

/// `x . pi(y) + g(y)` on `2m` variables; `pi` is a table over `V_m` indices.
pub fn maiorana_mcfarland(m: u32, pi: &[usize], g: &BooleanFunction) -> Result<BooleanFunction> {
    check_permutation(m, pi)?;
    if g.n() != m {
        return Err(Error::DimensionMismatch {
            expected: m as usize,
            got: g.n() as usize,
        });
    }
    let low = (1usize << m) - 1;
    BooleanFunction::from_fn(2 * m, |idx| {
        let (x, y) = (idx >> m, idx & low);
        ((x & pi[y]).count_ones() % 2 == 1) ^ g.at(y)
    })
}

/// `2^{k-1} (x . pi(y)) + g(y)` on `2m` variables, with `g` on `m`.
pub fn generalized_maiorana_mcfarland(
    m: u32,
    pi: &[usize],
    g: &GeneralizedBooleanFunction,
) -> Result<GeneralizedBooleanFunction> {
    check_permutation(m, pi)?;
    if g.n() != m {
        return Err(Error::DimensionMismatch {
            expected: m as usize,
            got: g.n() as usize,
        });
    }
    let k = g.k();
    let q = g.q();
    let half = q / 2;
    let low = (1usize << m) - 1;
    GeneralizedBooleanFunction::from_fn(2 * m, k, |idx| {
        let (x, y) = (idx >> m, idx & low);
        let sign = (x & pi[y]).count_ones() % 2;
        (sign * half + g.at(y)) % q
    })
}

/// `f = a_0 + 2 a_1` with `a_0 = h + a_1`, so that `a_1` and `a_0 + a_1 = h`
/// are the two bent functions.
pub fn construct_gbent_q4(a1: &BooleanFunction, h: &BooleanFunction) -> Result<GeneralizedBooleanFunction> {
    if !is_bent(a1) {
        return Err(Error::Precondition("a1 is not bent".into()));
    }
    if !is_bent(h) {
        return Err(Error::Precondition("h is not bent".into()));
    }
    let a0 = h.xor(a1)?;
    let f = GeneralizedBooleanFunction::from_components(&[a0, a1.clone()])?;
    if !is_gbent(&f).gbent {
        return Err(Error::Internal("a0 + 2 a1 with a1, a0 + a1 bent is not gbent".into()));
    }
    Ok(f)
}

/// Identity, complement, `y + 1` and `5y + 3` (mod `2^m`).
fn permutations(m: u32) -> Vec<Vec<usize>> {
    let size = 1usize << m;
    let mut out: Vec<Vec<usize>> = vec![
        (0..size).collect(),
        (0..size).map(|y| y ^ (size - 1)).collect(),
        (0..size).map(|y| (y + 1) % size).collect(),
        (0..size).map(|y| (y * 5 + 3) % size).collect(),
    ];
    out.dedup();
    out
}

/// A deterministic list of gbent functions on `n` (even) variables with
/// `q = 2^k`, every member verified. Empty for odd `n`.
pub fn gbent_fixtures(n: u32, k: u32) -> Result<Vec<GeneralizedBooleanFunction>> {
    if n % 2 == 1 || n == 0 {
        return Ok(Vec::new());
    }
    let m = n / 2;
    let q = 1u32 << k;
    let mut out = Vec::new();
    let offsets: Vec<GeneralizedBooleanFunction> = vec![
        GeneralizedBooleanFunction::zero(m, k)?,
        GeneralizedBooleanFunction::from_fn(m, k, |y| y as u32 % q)?,
        GeneralizedBooleanFunction::from_fn(m, k, |y| (y.count_ones() * 3 + 1) % q)?,
        GeneralizedBooleanFunction::from_fn(m, k, |y| ((y * y + 2 * y) as u32) % q)?,
    ];
    for pi in permutations(m) {
        for g in &offsets {
            out.push(generalized_maiorana_mcfarland(m, &pi, g)?);
        }
    }
    if k == 2 {
        let ids: Vec<usize> = (0..1usize << m).collect();
        let zero = BooleanFunction::zero(m)?;
        let a1 = maiorana_mcfarland(m, &ids, &zero)?;
        let first = BooleanFunction::from_fn(m, |y| y & 1 == 1)?;
        for pi in permutations(m) {
            let h = maiorana_mcfarland(m, &pi, &first)?;
            out.push(construct_gbent_q4(&a1, &h)?);
        }
    }
    if k >= 2 {
        // Lift a q/2 fixture: 2 f is gbent in Z_q when f is in Z_{q/2}.
        for f in gbent_fixtures(n, k - 1)?.into_iter().take(4) {
            out.push(GeneralizedBooleanFunction::from_fn(n, k, |x| 2 * f.at(x))?);
        }
    }
    out.sort_by(|a, b| a.table().cmp(&b.table()));
    out.dedup();
    for f in &out {
        if !is_gbent(f).gbent {
            return Err(Error::Internal(format!("fixture {:?} is not gbent", f.table())));
        }
    }
    Ok(out)
}
