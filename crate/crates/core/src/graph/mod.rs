//! The edge-weighted Cayley graph of a generalized Boolean function.
//!
//! Vertices are the `2^n` points of `V_n`; the edge `{a, b}` carries the
//! additive weight `f(a + b)` and the multiplicative weight `zeta^{f(a + b)}`.
//! Every vertex also has a loop of weight `f(0)`. The graph is never stored:
//! it is a view over the truth table, and matrices are only built on request
//! under [`Limits::matrix_max_n`](crate::Limits).
//!
//! Because weights depend on `a + b` only, every pair statistic is a
//! function of the difference `z = a + b`, and the checkers scan the
//! `2^n - 1` nonzero differences instead of all vertex pairs.

mod classical;
mod export;
mod local;
mod matrix;
mod regularity;
mod spectral;
mod srg;

pub use classical::{classical_srg_check, ClassicalSrg, ClassicalSrgOutcome, ClassicalSrgParams};
pub use export::{
    ExportEdge, ExportFormat, ExportNode, ExportVariant, GraphExport, EXPORT_SCHEMA_VERSION,
};
pub use local::{LocalSrgOutcome, LocalSrgParams, LocalSrgReport, LocalSrgWitness};
pub use matrix::{dyadic_check_matrix, AdjacencyMatrix};
pub use regularity::{check_weighted_regular, RegularityViolation, WeightedRegularity};
pub use spectral::{
    ButsonMethod, ButsonVerdict, ExactEigenCheck, NumericEigenCheck, DIRECT_PRODUCT_MAX_N,
    NUMERIC_EIGEN_MAX_N,
};
pub use srg::{
    ComplementCase, ComplementTransport, SrgClass, SrgOutcome, SrgReport, SrgWitness,
};

use serde::{Deserialize, Serialize};

use crate::function::{GeneralizedBooleanFunction, Limits};

/// Additive (`Z_q`) or multiplicative (`zeta^w`) edge weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightMode {
    Additive,
    Multiplicative,
}

/// Which common neighbors `c` of a pair `(a, b)` are counted.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NeighborConvention {
    /// Every `c` in `V_n`, including `a` and `b` themselves.
    #[default]
    AllVertices,
    /// Only `c` outside `{a, b}`.
    ExcludeEndpoints,
}

impl NeighborConvention {
    pub const ALL: [NeighborConvention; 2] =
        [NeighborConvention::AllVertices, NeighborConvention::ExcludeEndpoints];

    pub fn name(&self) -> &'static str {
        match self {
            NeighborConvention::AllVertices => "all-vertices",
            NeighborConvention::ExcludeEndpoints => "exclude-endpoints",
        }
    }
}

impl std::str::FromStr for NeighborConvention {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all-vertices" | "all" => Ok(NeighborConvention::AllVertices),
            "exclude-endpoints" | "exclude" => Ok(NeighborConvention::ExcludeEndpoints),
            _ => Err(crate::Error::Precondition(format!("unknown convention {s:?}"))),
        }
    }
}

/// Cayley graph view of a function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGraph {
    f: GeneralizedBooleanFunction,
    limits: Limits,
}

impl CayleyGraph {
    pub fn new(f: GeneralizedBooleanFunction) -> Self {
        CayleyGraph {
            f,
            limits: Limits::default(),
        }
    }

    pub fn with_limits(f: GeneralizedBooleanFunction, limits: Limits) -> Self {
        CayleyGraph { f, limits }
    }

    pub fn function(&self) -> &GeneralizedBooleanFunction {
        &self.f
    }

    /// Number of vertices, `2^n`.
    pub fn order(&self) -> usize {
        self.f.len()
    }

    pub fn q(&self) -> u32 {
        self.f.q()
    }

    /// Additive weight `f(a + b)`.
    #[inline]
    pub fn weight(&self, a: usize, b: usize) -> u32 {
        self.f.at(a ^ b)
    }

    pub fn loop_weight(&self) -> u32 {
        self.f.at(0)
    }

    /// The graph with weights `q - 1 - f(a + b)`, which is the Cayley graph
    /// of the complemented function.
    pub fn complement(&self) -> CayleyGraph {
        CayleyGraph {
            f: self.f.complement(),
            limits: self.limits,
        }
    }

    pub(crate) fn check_vertex(&self, v: usize) -> crate::Result<()> {
        if v >= self.order() {
            return Err(crate::Error::DimensionMismatch {
                expected: self.order(),
                got: v,
            });
        }
        Ok(())
    }
}
