//! Generalized Boolean functions `f: V_n -> Z_q`, `q = 2^k`, and their
//! Boolean components.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index;

/// Values are stored as `u8`, so `k` can never exceed 8.
pub const HARD_MAX_K: u32 = 8;

/// Size caps applied when constructing functions and materializing graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_n: u32,
    pub max_k: u32,
    /// Largest `n` for which `2^n x 2^n` matrices are built.
    pub matrix_max_n: u32,
    /// Largest `n` for which full graph exports are produced.
    pub export_max_n: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: 24,
            max_k: 8,
            matrix_max_n: 12,
            export_max_n: 8,
        }
    }
}

impl Limits {
    pub(crate) fn check(&self, n: u32, k: u32) -> Result<()> {
        if n == 0 {
            return Err(Error::ZeroVariables(n));
        }
        if k == 0 {
            return Err(Error::ZeroOrder(k));
        }
        if n > self.max_n {
            return Err(Error::LimitExceeded {
                what: "n",
                value: n as u64,
                limit: self.max_n as u64,
            });
        }
        let max_k = self.max_k.min(HARD_MAX_K);
        if k > max_k {
            return Err(Error::LimitExceeded {
                what: "k",
                value: k as u64,
                limit: max_k as u64,
            });
        }
        Ok(())
    }

    pub(crate) fn check_matrix(&self, n: u32) -> Result<()> {
        if n > self.matrix_max_n {
            return Err(Error::LimitExceeded {
                what: "n (matrix)",
                value: n as u64,
                limit: self.matrix_max_n as u64,
            });
        }
        Ok(())
    }

    pub(crate) fn check_export(&self, n: u32) -> Result<()> {
        if n > self.export_max_n {
            return Err(Error::LimitExceeded {
                what: "n (export)",
                value: n as u64,
                limit: self.export_max_n as u64,
            });
        }
        Ok(())
    }
}

/// A generalized Boolean function `f: V_n -> Z_{2^k}` given by its truth
/// table in [`index::enc`] order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralizedBooleanFunction {
    n: u32,
    k: u32,
    table: Vec<u8>,
}

impl GeneralizedBooleanFunction {
    /// Builds a function from its truth table under the default [`Limits`].
    pub fn new(n: u32, k: u32, table: Vec<u32>) -> Result<Self> {
        Self::with_limits(n, k, table, &Limits::default())
    }

    pub fn with_limits(n: u32, k: u32, table: Vec<u32>, limits: &Limits) -> Result<Self> {
        limits.check(n, k)?;
        let expected = 1usize << n;
        if table.len() != expected {
            return Err(Error::TableLength {
                n,
                expected,
                got: table.len(),
            });
        }
        let q = 1u32 << k;
        let mut bytes = Vec::with_capacity(expected);
        for (index, &value) in table.iter().enumerate() {
            if value >= q {
                return Err(Error::ValueOutOfRange { index, value, q });
            }
            bytes.push(value as u8);
        }
        Ok(GeneralizedBooleanFunction {
            n,
            k,
            table: bytes,
        })
    }

    /// Builds a function by evaluating `f` at every table index.
    /// Values are reduced mod `q`.
    pub fn from_fn(n: u32, k: u32, f: impl Fn(usize) -> u32) -> Result<Self> {
        Limits::default().check(n, k)?;
        let mask = (1u32 << k) - 1;
        let table = (0..1usize << n).map(|x| (f(x) & mask) as u8).collect();
        Ok(GeneralizedBooleanFunction { n, k, table })
    }

    pub fn zero(n: u32, k: u32) -> Result<Self> {
        Self::from_fn(n, k, |_| 0)
    }

    pub fn constant(n: u32, k: u32, value: u32) -> Result<Self> {
        Self::from_fn(n, k, |_| value)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        1 << self.k
    }

    /// Number of points, `2^n`.
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Value at a table index.
    #[inline]
    pub fn at(&self, index: usize) -> u32 {
        self.table[index] as u32
    }

    pub fn table(&self) -> Vec<u32> {
        self.table.iter().map(|&v| v as u32).collect()
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.table
    }

    /// `f(x)` for a bit-vector `x = (x1, ..., xn)`.
    pub fn evaluate(&self, x: &[bool]) -> Result<u32> {
        if x.len() != self.n as usize {
            return Err(Error::DimensionMismatch {
                expected: self.n as usize,
                got: x.len(),
            });
        }
        Ok(self.at(index::enc(x)))
    }

    /// Digit decomposition `f = a0 + 2 a1 + ... + 2^{k-1} a_{k-1}`.
    pub fn components(&self) -> Vec<BooleanFunction> {
        (0..self.k).map(|i| self.component(i)).collect()
    }

    /// The Boolean component `a_i`, bit `i` of every value.
    pub fn component(&self, i: u32) -> BooleanFunction {
        BooleanFunction {
            n: self.n,
            table: self.table.iter().map(|&v| (v >> i) & 1 == 1).collect(),
        }
    }

    /// Recombines `f = sum 2^i a_i`.
    pub fn from_components(parts: &[BooleanFunction]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Precondition("at least one component is required".into()))?;
        let n = first.n;
        for part in parts {
            if part.n != n {
                return Err(Error::DimensionMismatch {
                    expected: n as usize,
                    got: part.n as usize,
                });
            }
        }
        let k = parts.len() as u32;
        Limits::default().check(n, k)?;
        let table = (0..1usize << n)
            .map(|x| {
                parts
                    .iter()
                    .enumerate()
                    .fold(0u8, |acc, (i, p)| acc | ((p.table[x] as u8) << i))
            })
            .collect();
        Ok(GeneralizedBooleanFunction { n, k, table })
    }

    /// `q - 1 - f`, equivalently every component complemented.
    pub fn complement(&self) -> Self {
        let top = (self.q() - 1) as u8;
        GeneralizedBooleanFunction {
            n: self.n,
            k: self.k,
            table: self.table.iter().map(|&v| top - v).collect(),
        }
    }
}

/// A Boolean function `V_n -> F_2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BooleanFunction {
    n: u32,
    table: Vec<bool>,
}

impl BooleanFunction {
    pub fn new(n: u32, table: Vec<bool>) -> Result<Self> {
        Limits::default().check(n, 1)?;
        let expected = 1usize << n;
        if table.len() != expected {
            return Err(Error::TableLength {
                n,
                expected,
                got: table.len(),
            });
        }
        Ok(BooleanFunction { n, table })
    }

    /// Builds from 0/1 values; anything else is rejected.
    pub fn from_bits(n: u32, bits: &[u8]) -> Result<Self> {
        let table = bits
            .iter()
            .enumerate()
            .map(|(index, &b)| match b {
                0 => Ok(false),
                1 => Ok(true),
                v => Err(Error::ValueOutOfRange {
                    index,
                    value: v as u32,
                    q: 2,
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, table)
    }

    pub fn from_fn(n: u32, f: impl Fn(usize) -> bool) -> Result<Self> {
        Limits::default().check(n, 1)?;
        Ok(BooleanFunction {
            n,
            table: (0..1usize << n).map(f).collect(),
        })
    }

    pub fn zero(n: u32) -> Result<Self> {
        Self::from_fn(n, |_| false)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn at(&self, index: usize) -> bool {
        self.table[index]
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn bits(&self) -> Vec<u8> {
        self.table.iter().map(|&b| b as u8).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.table.iter().all(|&b| b == self.table[0])
    }

    /// `wt(g) = |{x : g(x) = 1}|`.
    pub fn hamming_weight(&self) -> usize {
        self.table.iter().filter(|&&b| b).count()
    }

    /// `d(g, h) = wt(g xor h)`.
    pub fn hamming_distance(&self, other: &BooleanFunction) -> Result<usize> {
        self.same_n(other)?;
        Ok(self
            .table
            .iter()
            .zip(&other.table)
            .filter(|(a, b)| a != b)
            .count())
    }

    pub fn xor(&self, other: &BooleanFunction) -> Result<BooleanFunction> {
        self.same_n(other)?;
        Ok(BooleanFunction {
            n: self.n,
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    pub fn not(&self) -> BooleanFunction {
        BooleanFunction {
            n: self.n,
            table: self.table.iter().map(|b| !b).collect(),
        }
    }

    /// The same table read as a function into `Z_2`.
    pub fn to_generalized(&self) -> GeneralizedBooleanFunction {
        GeneralizedBooleanFunction {
            n: self.n,
            k: 1,
            table: self.bits(),
        }
    }

    fn same_n(&self, other: &BooleanFunction) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n as usize,
                got: other.n as usize,
            });
        }
        Ok(())
    }
}
