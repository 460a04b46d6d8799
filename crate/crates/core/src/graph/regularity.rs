use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::weights::WeightSet;

use super::CayleyGraph;

/// Parameters `(v; r_0, ..., r_{q-1})` of a weighted regular graph, with
/// `r_j` counting non-loop edges of weight `j` at a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedRegularity {
    pub v: usize,
    pub r: Vec<usize>,
    pub loop_weight: u32,
}

impl WeightedRegularity {
    pub fn q(&self) -> u32 {
        self.r.len() as u32
    }

    /// `r_X = sum_{j in X} r_j`.
    pub fn r_sum(&self, x: &WeightSet) -> usize {
        x.iter().map(|j| self.r[j as usize]).sum()
    }

    /// Parameters of the complement graph: `r'_{q-1-j} = r_j`.
    pub fn complement(&self) -> WeightedRegularity {
        let mut r = self.r.clone();
        r.reverse();
        WeightedRegularity {
            v: self.v,
            r,
            loop_weight: self.q() - 1 - self.loop_weight,
        }
    }

    /// True when `other` is related to `self` by `other.r[q-1-j] = self.r[j]`.
    pub fn is_reversal_of(&self, other: &WeightedRegularity) -> bool {
        let q = self.r.len();
        self.v == other.v
            && other.r.len() == q
            && (0..q).all(|j| other.r[q - 1 - j] == self.r[j])
    }
}

/// A vertex whose weight profile differs from vertex 0, or an asymmetric
/// weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum RegularityViolation {
    Profile {
        vertex: usize,
        weight: u32,
        expected: usize,
        got: usize,
    },
    Asymmetric {
        a: usize,
        b: usize,
    },
    LoopWeight {
        vertex: usize,
        expected: u32,
        got: u32,
    },
}

/// Checks that the weighted graph on `v` vertices with weights `weight(a, b)`
/// in `Z_q` is weighted regular, returning its parameters. Works on any
/// weight table, Cayley or not.
pub fn check_weighted_regular(
    v: usize,
    q: u32,
    weight: impl Fn(usize, usize) -> u32,
) -> Result<WeightedRegularity, RegularityViolation> {
    let profile = |a: usize| {
        let mut r = vec![0usize; q as usize];
        for b in (0..v).filter(|&b| b != a) {
            r[weight(a, b) as usize] += 1;
        }
        r
    };
    let reference = profile(0);
    let loop_weight = weight(0, 0);
    for a in 0..v {
        for b in a + 1..v {
            if weight(a, b) != weight(b, a) {
                return Err(RegularityViolation::Asymmetric { a, b });
            }
        }
        if weight(a, a) != loop_weight {
            return Err(RegularityViolation::LoopWeight {
                vertex: a,
                expected: loop_weight,
                got: weight(a, a),
            });
        }
        let r = profile(a);
        if let Some(j) = (0..q as usize).find(|&j| r[j] != reference[j]) {
            return Err(RegularityViolation::Profile {
                vertex: a,
                weight: j as u32,
                expected: reference[j],
                got: r[j],
            });
        }
    }
    Ok(WeightedRegularity {
        v,
        r: reference,
        loop_weight,
    })
}

impl CayleyGraph {
    /// `r_j = #{t != 0 : f(t) = j}`, read off the truth table.
    pub fn weighted_regularity(&self) -> WeightedRegularity {
        let mut r = vec![0usize; self.q() as usize];
        for t in 1..self.order() {
            r[self.f.at(t) as usize] += 1;
        }
        WeightedRegularity {
            v: self.order(),
            r,
            loop_weight: self.loop_weight(),
        }
    }

    /// Recomputes the profile at every vertex from the pair weights and
    /// compares it with [`weighted_regularity`](Self::weighted_regularity).
    /// Quadratic in `2^n`, so it is held to the matrix cap.
    pub fn verify_weighted_regularity(&self) -> Result<bool> {
        self.limits.check_matrix(self.f.n())?;
        Ok(
            match check_weighted_regular(self.order(), self.q(), |a, b| self.weight(a, b)) {
                Ok(wr) => wr == self.weighted_regularity(),
                Err(_) => false,
            },
        )
    }

    /// `s(a) = sum_b f(a + b)`, the total additive weight at `a` (loop
    /// included).
    pub fn strength_at(&self, a: usize) -> Result<u64> {
        self.check_vertex(a)?;
        Ok((0..self.order()).map(|b| self.weight(a, b) as u64).sum())
    }

    /// The common strength `sum_t f(t)` of every vertex.
    pub fn strength(&self) -> u64 {
        self.f.raw().iter().map(|&x| x as u64).sum()
    }
}
