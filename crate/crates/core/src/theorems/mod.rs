//! Executable forms of the bentness / strong-regularity correspondences,
//! with fixture constructions and an audit harness that checks them over
//! whole families of functions.

mod audit;
mod construct;

pub use audit::{
    audit, search_gbent, AuditConfig, AuditException, AuditReport, AuditScope, AuditTallies, Claim,
    FunctionVerdict, SearchResult, Tally, AUDIT_SCHEMA_VERSION, DEFAULT_BUDGET,
};
pub use construct::{
    construct_gbent_q4, gbent_fixtures, generalized_maiorana_mcfarland, maiorana_mcfarland,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::{BooleanFunction, GeneralizedBooleanFunction};
use crate::graph::{CayleyGraph, NeighborConvention, SrgReport};
use crate::transform::{boolean_autocorrelation, is_bent};
use crate::weights::WeightSet;

/// `f_c = c_0 a_0 + ... + c_{k-2} a_{k-2} + a_{k-1}` over `F_2`, where bit
/// `j` of `c` is `c_j`.
pub fn f_c(f: &GeneralizedBooleanFunction, c: usize) -> Result<BooleanFunction> {
    let k = f.k();
    if k < 2 {
        return Err(Error::Precondition("f_c needs k >= 2".into()));
    }
    if c >> (k - 1) != 0 {
        return Err(Error::Precondition(format!(
            "c = {c} is not a vector of length {}",
            k - 1
        )));
    }
    let mask = c as u32 | 1 << (k - 1);
    BooleanFunction::from_fn(f.n(), |x| (f.at(x) & mask).count_ones() % 2 == 1)
}

/// The weight classes `X_c^0`, `X_c^1` of `Z_q` for a mask `c` in `V_{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightClassPair {
    pub c: usize,
    pub x0: WeightSet,
    pub x1: WeightSet,
}

/// Builds `X_c^i = { iota(t) + iota(d) : t <= (c, 1), wt(t) = i mod 2,
/// d <= c-bar }` by enumerating the subsets `t` and `d`, and again by the
/// parity rule `v in X_c^1 <=> popcount(v & (c, 1))` odd. The two must
/// agree.
pub fn weight_classes(c: usize, k: u32) -> Result<WeightClassPair> {
    if k < 2 || k > 8 {
        return Err(Error::Precondition(format!("weight classes need 2 <= k <= 8, got {k}")));
    }
    if c >> (k - 1) != 0 {
        return Err(Error::Precondition(format!(
            "c = {c} is not a vector of length {}",
            k - 1
        )));
    }
    let q = 1u32 << k;
    let top = 1usize << (k - 1);
    let with_one = c | top;
    let free = !c & (top - 1);
    let mut by_subsets = [Vec::new(), Vec::new()];
    let mut t = with_one;
    loop {
        let parity = t.count_ones() as usize % 2;
        let mut d = free;
        loop {
            by_subsets[parity].push((t + d) as u32);
            if d == 0 {
                break;
            }
            d = (d - 1) & free;
        }
        if t == 0 {
            break;
        }
        t = (t - 1) & with_one;
    }
    let x0 = WeightSet::new(q, by_subsets[0].iter().copied())?;
    let x1 = WeightSet::new(q, by_subsets[1].iter().copied())?;
    let rule = WeightSet::new(q, (0..q).filter(|&v| (v as usize & with_one).count_ones() % 2 == 1))?;
    if x1 != rule || x0 != rule.complement() || !x0.is_disjoint(&x1) {
        return Err(Error::Internal(format!(
            "weight class constructions disagree for c = {c}, k = {k}"
        )));
    }
    Ok(WeightClassPair { c, x0, x1 })
}

/// A count that should be the same for every pair of distinct vertices;
/// `witness` holds two differences `z` (pairs `(0, z)`) with their counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstancyCheck {
    pub constant: bool,
    pub value: Option<u64>,
    pub witness: Option<((usize, u64), (usize, u64))>,
}

impl ConstancyCheck {
    fn of(counts: &[u64]) -> ConstancyCheck {
        let Some(&first) = counts.get(1) else {
            return ConstancyCheck {
                constant: true,
                value: None,
                witness: None,
            };
        };
        match (2..counts.len()).find(|&z| counts[z] != first) {
            None => ConstancyCheck {
                constant: true,
                value: Some(first),
                witness: None,
            },
            Some(z) => ConstancyCheck {
                constant: false,
                value: None,
                witness: Some(((1, first), (z, counts[z]))),
            },
        }
    }
}

/// The two neighborhood conditions for `q = 4`: `|N_{2,3}(a, b)|` and
/// `|N_{1,2}(a, b)|` do not depend on the pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gb4Report {
    pub convention: NeighborConvention,
    pub cond_i: ConstancyCheck,
    pub cond_ii: ConstancyCheck,
}

impl Gb4Report {
    pub fn passes(&self) -> bool {
        self.cond_i.constant && self.cond_ii.constant
    }
}

fn require_q4_even(f: &GeneralizedBooleanFunction) -> Result<()> {
    if f.k() != 2 {
        return Err(Error::Precondition(format!("needs k = 2 (q = 4), got k = {}", f.k())));
    }
    if f.n() % 2 == 1 {
        return Err(Error::Precondition(format!(
            "needs an even number of variables, got n = {}",
            f.n()
        )));
    }
    Ok(())
}

pub fn gb4_check(f: &GeneralizedBooleanFunction, convention: NeighborConvention) -> Result<Gb4Report> {
    require_q4_even(f)?;
    let g = CayleyGraph::new(f.clone());
    let y23 = WeightSet::new(4, [2, 3])?;
    let y12 = WeightSet::new(4, [1, 2])?;
    Ok(Gb4Report {
        convention,
        cond_i: ConstancyCheck::of(&g.pair_counts(&y23, convention)),
        cond_ii: ConstancyCheck::of(&g.pair_counts(&y12, convention)),
    })
}

/// `a_1` and `a_0 + a_1` are both bent.
pub fn decomposition_criterion_q4(f: &GeneralizedBooleanFunction) -> Result<bool> {
    if f.k() != 2 {
        return Err(Error::Precondition(format!("needs k = 2 (q = 4), got k = {}", f.k())));
    }
    let a0 = f.component(0);
    let a1 = f.component(1);
    Ok(is_bent(&a1) && is_bent(&a0.xor(&a1)?))
}

/// True when `g` is not bent but `sum_x (-1)^{g(x) + g(x + z)}` takes one
/// value for all `z != 0`.
pub fn constant_autocorrelation_not_bent(g: &BooleanFunction) -> bool {
    if is_bent(g) {
        return false;
    }
    let ac = boolean_autocorrelation(g);
    ac.iter().skip(2).all(|&v| v == ac[1])
}

/// The structural description of a function that meets both conditions
/// without being gbent: `a_1` or `a_0 + a_1` has constant off-zero
/// autocorrelation without being bent.
pub fn is_degenerate_gb4_satisfier(f: &GeneralizedBooleanFunction) -> bool {
    let a0 = f.component(0);
    let a1 = f.component(1);
    let sum = a0.xor(&a1).expect("same n");
    constant_autocorrelation_not_bent(&a1) || constant_autocorrelation_not_bent(&sum)
}

/// One mask `c` of the necessary condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NecessaryEntry {
    pub c: usize,
    pub x1: WeightSet,
    pub f_c_bent: bool,
    /// `|N_{X_c^1}(u, v)|` is the same for all pairs of distinct vertices.
    pub displayed: ConstancyCheck,
    /// The graph is `(X_c^0; X_c^1)`-strongly regular with `e = d`.
    pub srg_reading: bool,
    pub srg: SrgReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NecessaryReport {
    pub convention: NeighborConvention,
    pub entries: Vec<NecessaryEntry>,
}

impl NecessaryReport {
    pub fn displayed_holds(&self) -> bool {
        self.entries.iter().all(|e| e.displayed.constant)
    }

    pub fn srg_reading_holds(&self) -> bool {
        self.entries.iter().all(|e| e.srg_reading)
    }

    pub fn all_f_c_bent(&self) -> bool {
        self.entries.iter().all(|e| e.f_c_bent)
    }

    /// Both readings hold for every `c`.
    pub fn passes(&self) -> bool {
        self.displayed_holds() && self.srg_reading_holds()
    }
}

/// For every `c` in `V_{k-1}`: whether `f_c` is bent, whether the
/// `X_c^1`-neighbor counts are constant over all pairs, and whether the
/// graph is `(X_c^0; X_c^1)`-strongly regular with `e = d`.
pub fn necessary_condition_check(
    f: &GeneralizedBooleanFunction,
    convention: NeighborConvention,
) -> Result<NecessaryReport> {
    if f.k() < 2 {
        return Err(Error::Precondition("needs k >= 2".into()));
    }
    if f.n() % 2 == 1 {
        return Err(Error::Precondition(format!(
            "needs an even number of variables, got n = {}",
            f.n()
        )));
    }
    let g = CayleyGraph::new(f.clone());
    let entries = (0..1usize << (f.k() - 1))
        .map(|c| {
            let classes = weight_classes(c, f.k())?;
            let counts = g.pair_counts(&classes.x1, convention);
            let srg = g.srg_from_counts(&classes.x0, &classes.x1, &classes.x1, convention, &counts);
            Ok(NecessaryEntry {
                c,
                x1: classes.x1,
                f_c_bent: is_bent(&f_c(f, c)?),
                displayed: ConstancyCheck::of(&counts),
                srg_reading: srg.certified_equal(),
                srg,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NecessaryReport { convention, entries })
}

/// What went wrong with a candidate bent set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum BentSetFailure {
    Empty,
    MixedDimensions,
    OddDimension,
    NotBent { index: usize },
    SumNotBent { first: usize, second: usize },
}

/// Strong regularity of `f = a_0 + 2 a_1` for one ordered pair from the set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryPair {
    pub a0: usize,
    pub a1: usize,
    /// One `(X; X-bar)` report for each of the six `X` with `|X| = 2`.
    pub reports: Vec<SrgReport>,
}

impl CorollaryPair {
    pub fn holds(&self) -> bool {
        self.reports.iter().all(SrgReport::is_certified)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BentSetReport {
    pub convention: NeighborConvention,
    pub failure: Option<BentSetFailure>,
    pub pairs: Vec<CorollaryPair>,
}

impl BentSetReport {
    pub fn is_bent_set(&self) -> bool {
        self.failure.is_none()
    }

    pub fn holds(&self) -> bool {
        self.is_bent_set() && self.pairs.iter().all(CorollaryPair::holds)
    }
}

/// Checks that `parts` is a bent set, then that `a_0 + 2 a_1` is
/// `(X; X-bar)`-strongly regular for every ordered pair `(a_0, a_1)` of its
/// members and every `X` of size 2.
pub fn bent_set_corollary_check(
    parts: &[BooleanFunction],
    convention: NeighborConvention,
) -> BentSetReport {
    let failure = bent_set_failure(parts);
    let pairs = if failure.is_some() {
        Vec::new()
    } else {
        let halves = WeightSet::subsets_of_size(4, 2);
        let mut pairs = Vec::new();
        for (i, a0) in parts.iter().enumerate() {
            for (j, a1) in parts.iter().enumerate() {
                let f = GeneralizedBooleanFunction::from_components(&[a0.clone(), a1.clone()])
                    .expect("same n");
                let g = CayleyGraph::new(f);
                let reports = halves
                    .iter()
                    .map(|x| g.srg_check(x, &x.complement(), convention).expect("q = 4"))
                    .collect();
                pairs.push(CorollaryPair { a0: i, a1: j, reports });
            }
        }
        pairs
    };
    BentSetReport {
        convention,
        failure,
        pairs,
    }
}

fn bent_set_failure(parts: &[BooleanFunction]) -> Option<BentSetFailure> {
    let first = parts.first()?;
    if parts.iter().any(|p| p.n() != first.n()) {
        return Some(BentSetFailure::MixedDimensions);
    }
    if first.n() % 2 == 1 {
        return Some(BentSetFailure::OddDimension);
    }
    if let Some(index) = parts.iter().position(|p| !is_bent(p)) {
        return Some(BentSetFailure::NotBent { index });
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if !is_bent(&parts[i].xor(&parts[j]).expect("same n")) {
                return Some(BentSetFailure::SumNotBent { first: i, second: j });
            }
        }
    }
    None
}
