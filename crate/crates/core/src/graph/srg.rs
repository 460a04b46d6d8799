use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::transform::fwht_in_place;
use crate::weights::WeightSet;

use super::{CayleyGraph, NeighborConvention, WeightedRegularity};

/// Which class of a check a pair belongs to: the first weight set (`X` or
/// `X_1`) or the second (`X-bar` or `X_2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SrgClass {
    First,
    Second,
}

/// Two pairs in the same class with different common-neighbor counts. The
/// pairs are `(0, z)`; any translate `(t, t + z)` gives the same counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SrgWitness {
    pub class: SrgClass,
    pub first: (usize, usize),
    pub first_count: u64,
    pub second: (usize, usize),
    pub second_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum SrgOutcome {
    /// Constant counts on each class; `None` when a class has no pairs.
    Certified { e: Option<u64>, d: Option<u64> },
    Refuted(SrgWitness),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SrgReport {
    pub x: WeightSet,
    pub x2: WeightSet,
    pub y: WeightSet,
    pub convention: NeighborConvention,
    /// `x2` is the complement of `x` and `|x| = q/2`.
    pub bisection: bool,
    /// The `Y`-weighted edge relation is empty or complete.
    pub degenerate: bool,
    pub outcome: SrgOutcome,
}

impl SrgReport {
    pub fn is_certified(&self) -> bool {
        matches!(self.outcome, SrgOutcome::Certified { .. })
    }

    /// `(e, d)` of a certified report.
    pub fn parameters(&self) -> Option<(Option<u64>, Option<u64>)> {
        match self.outcome {
            SrgOutcome::Certified { e, d } => Some((e, d)),
            SrgOutcome::Refuted(_) => None,
        }
    }

    /// Certified with `e = d`, treating an empty class as agreeing.
    pub fn certified_equal(&self) -> bool {
        match self.outcome {
            SrgOutcome::Certified { e, d } => match (e, d) {
                (Some(e), Some(d)) => e == d,
                _ => true,
            },
            SrgOutcome::Refuted(_) => false,
        }
    }

    pub fn witness(&self) -> Option<&SrgWitness> {
        match &self.outcome {
            SrgOutcome::Refuted(w) => Some(w),
            SrgOutcome::Certified { .. } => None,
        }
    }

    /// `r_X (r_X - e_X - 1) = d_X (v - r_X - 1)` for a certified `(X; X)`
    /// report under the exclude-endpoints convention. An empty class
    /// contributes nothing to either side, so its missing parameter is read
    /// as 0.
    pub fn counting_identity_check(&self, wr: &WeightedRegularity) -> Result<bool> {
        let (e, d) = self.parameters().ok_or_else(|| {
            Error::Precondition("the counting identity needs a certified report".into())
        })?;
        if self.y != self.x || self.x2 != self.x.complement() {
            return Err(Error::Precondition(
                "the counting identity covers (X;X) reports with X2 = complement of X".into(),
            ));
        }
        if self.convention != NeighborConvention::ExcludeEndpoints {
            return Err(Error::Precondition(
                "the counting identity counts proper neighbors (exclude-endpoints)".into(),
            ));
        }
        let v = wr.v as i128;
        let r = wr.r_sum(&self.x) as i128;
        let e = e.unwrap_or(0) as i128;
        let d = d.unwrap_or(0) as i128;
        Ok(r * (r - e - 1) == d * (v - r - 1))
    }
}

/// How the complement graph's parameters relate to the original's.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplementCase {
    /// `q - 1 - X = X`.
    Same,
    /// `q - 1 - X = X-bar`.
    Swapped,
}

/// Result of carrying a certified `(X; Y)` report over to the complement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplementTransport {
    pub case: ComplementCase,
    pub original: (Option<u64>, Option<u64>),
    /// The complement checked against `(q - 1 - X; Y)`.
    pub complement: SrgReport,
    /// The complement is certified and, class by class, its parameters are
    /// the original ones: the class `q - 1 - X` carries `e_X`.
    pub consistent: bool,
    /// The complement's `(e, d)` for the class `q - 1 - X` equal `(e_X, d_X)`
    /// when `Same` and `(d_X, e_X)` when `Swapped`.
    pub literal_reading_holds: bool,
}

/// `sum_t ind(t) ind(t + z)` for every `z`, via the Walsh transform. Every
/// partial sum is bounded by `2^{2n}`, so `i64` is ample for `n <= 24`.
pub(crate) fn indicator_autocorrelation(indicator: &[i64]) -> Vec<i64> {
    let n = indicator.len().trailing_zeros();
    let mut spectrum = indicator.to_vec();
    fwht_in_place(&mut spectrum);
    for s in spectrum.iter_mut() {
        *s *= *s;
    }
    fwht_in_place(&mut spectrum);
    for s in spectrum.iter_mut() {
        *s >>= n;
    }
    spectrum
}

impl CayleyGraph {
    /// `N_Y(0, z)` for every `z` at once.
    ///
    /// With `1_Y` the indicator of `f(t) in Y`, the all-vertices count is the
    /// autocorrelation `sum_t 1_Y(t) 1_Y(t + z)`, computed as an inverse
    /// transform of the squared Walsh spectrum of `1_Y`. The
    /// exclude-endpoints count drops `t = 0` and `t = z`. Entry `0` is kept
    /// for completeness; it is not a pair count.
    pub fn pair_counts(&self, y: &WeightSet, convention: NeighborConvention) -> Vec<u64> {
        let indicator: Vec<i64> = self
            .f
            .raw()
            .iter()
            .map(|&w| i64::from(y.contains(w as u32)))
            .collect();
        let zero_in = indicator[0];
        indicator_autocorrelation(&indicator)
            .iter()
            .zip(&indicator)
            .enumerate()
            .map(|(z, (&all, &at_z))| {
                let count = match convention {
                    NeighborConvention::AllVertices => all,
                    NeighborConvention::ExcludeEndpoints if z == 0 => all - zero_in,
                    NeighborConvention::ExcludeEndpoints => all - 2 * zero_in * at_z,
                };
                count as u64
            })
            .collect()
    }

    /// `|N_Y(a, b)|` by direct enumeration of the vertices `c`.
    pub fn neighbor_count(
        &self,
        a: usize,
        b: usize,
        y: &WeightSet,
        convention: NeighborConvention,
    ) -> Result<u64> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(Error::SameVertex(a));
        }
        Ok((0..self.order())
            .filter(|&c| convention == NeighborConvention::AllVertices || (c != a && c != b))
            .filter(|&c| y.contains(self.weight(a, c)) && y.contains(self.weight(b, c)))
            .count() as u64)
    }

    /// `(X; Y)`-strong regularity with `X-bar` as the second class.
    pub fn srg_check(
        &self,
        x: &WeightSet,
        y: &WeightSet,
        convention: NeighborConvention,
    ) -> Result<SrgReport> {
        self.srg_check_generalized(x, &x.complement(), y, convention)
    }

    /// `(X_1, X_2; Y)`-strong regularity: counts must be constant over
    /// pairs with weight in `X_1`, and separately over pairs with weight in
    /// `X_2`. Pairs in neither class are unconstrained.
    pub fn srg_check_generalized(
        &self,
        x1: &WeightSet,
        x2: &WeightSet,
        y: &WeightSet,
        convention: NeighborConvention,
    ) -> Result<SrgReport> {
        for set in [x1, x2, y] {
            if set.q() != self.q() {
                return Err(Error::Precondition(format!(
                    "weight set over Z_{} used with q = {}",
                    set.q(),
                    self.q()
                )));
            }
        }
        if let Some(w) = x1.first_common(x2) {
            return Err(Error::OverlappingClasses(w));
        }
        let counts = self.pair_counts(y, convention);
        Ok(self.srg_from_counts(x1, x2, y, convention, &counts))
    }

    /// The class scan of [`srg_check_generalized`](Self::srg_check_generalized)
    /// over precomputed [`pair_counts`](Self::pair_counts), so that several
    /// `X` can share one transform. The caller guarantees disjoint classes.
    pub fn srg_from_counts(
        &self,
        x1: &WeightSet,
        x2: &WeightSet,
        y: &WeightSet,
        convention: NeighborConvention,
        counts: &[u64],
    ) -> SrgReport {
        let y_edges = (1..self.order())
            .filter(|&t| y.contains(self.f.at(t)))
            .count();
        let degenerate = y_edges == 0 || y_edges == self.order() - 1;

        let mut first: [Option<(usize, u64)>; 2] = [None, None];
        let mut outcome = None;
        for z in 1..self.order() {
            let w = self.f.at(z);
            let class = if x1.contains(w) {
                0
            } else if x2.contains(w) {
                1
            } else {
                continue;
            };
            match first[class] {
                None => first[class] = Some((z, counts[z])),
                Some((z0, c0)) if c0 != counts[z] => {
                    outcome = Some(SrgOutcome::Refuted(SrgWitness {
                        class: if class == 0 { SrgClass::First } else { SrgClass::Second },
                        first: (0, z0),
                        first_count: c0,
                        second: (0, z),
                        second_count: counts[z],
                    }));
                    break;
                }
                Some(_) => {}
            }
        }
        let outcome = outcome.unwrap_or(SrgOutcome::Certified {
            e: first[0].map(|(_, c)| c),
            d: first[1].map(|(_, c)| c),
        });
        SrgReport {
            x: *x1,
            x2: *x2,
            y: *y,
            convention,
            bisection: x1.is_half() && *x2 == x1.complement(),
            degenerate,
            outcome,
        }
    }

    /// Every `(X; Y)` report over the half-size sets `X` (in lexicographic
    /// order), computed in parallel.
    pub fn srg_check_all_bisections(
        &self,
        y: &WeightSet,
        convention: NeighborConvention,
    ) -> Vec<SrgReport> {
        WeightSet::subsets_of_size(self.q(), self.q() as usize / 2)
            .par_iter()
            .map(|x| self.srg_check(x, y, convention).expect("sets share q"))
            .collect()
    }

    /// Carries a certified `(X; Y)` report with `q - 1 - X` in `{X, X-bar}`
    /// and `q - 1 - Y = Y` over to the complement graph. Returns `None` when
    /// these hypotheses do not hold.
    pub fn complement_transport(&self, report: &SrgReport) -> Option<ComplementTransport> {
        let (e, d) = report.parameters()?;
        if !report.bisection || report.y.reflect() != report.y {
            return None;
        }
        let reflected = report.x.reflect();
        let case = if reflected == report.x {
            ComplementCase::Same
        } else if reflected == report.x2 {
            ComplementCase::Swapped
        } else {
            return None;
        };
        let complement = self
            .complement()
            .srg_check(&reflected, &report.y, report.convention)
            .expect("sets share q");
        let transported = complement.parameters();
        let consistent = transported == Some((e, d));
        let literal_reading_holds = match case {
            ComplementCase::Same => transported == Some((e, d)),
            ComplementCase::Swapped => transported == Some((d, e)),
        };
        Some(ComplementTransport {
            case,
            original: (e, d),
            complement,
            consistent,
            literal_reading_holds,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::GeneralizedBooleanFunction;
    use crate::parse::parse_expression;
    use proptest::prelude::*;

    fn set(q: u32, w: &[u32]) -> WeightSet {
        WeightSet::new(q, w.iter().copied()).unwrap()
    }

    fn gbent4() -> CayleyGraph {
        CayleyGraph::new(parse_expression("x1 + 2*(x1*x2 (+) x3*x4)", 4, 2).unwrap())
    }

    fn quadratic_q4() -> CayleyGraph {
        CayleyGraph::new(GeneralizedBooleanFunction::new(2, 2, vec![0, 0, 2, 3]).unwrap())
    }

    #[test]
    fn neighbor_count_examples() {
        let g = quadratic_q4();
        let y = set(4, &[2, 3]);
        assert_eq!(g.neighbor_count(0, 1, &y, NeighborConvention::AllVertices).unwrap(), 2);
        assert_eq!(g.neighbor_count(0, 1, &WeightSet::full(4), NeighborConvention::AllVertices).unwrap(), 4);
        assert_eq!(g.neighbor_count(0, 1, &WeightSet::full(4), NeighborConvention::ExcludeEndpoints).unwrap(), 2);
        assert_eq!(g.neighbor_count(2, 3, &WeightSet::empty(4), NeighborConvention::AllVertices).unwrap(), 0);
        assert!(matches!(g.neighbor_count(1, 1, &y, NeighborConvention::AllVertices), Err(Error::SameVertex(1))));
    }

    #[test]
    fn fast_counts_match_enumeration() {
        let g = gbent4();
        for y in WeightSet::all_subsets(4) {
            for convention in NeighborConvention::ALL {
                let fast = g.pair_counts(&y, convention);
                for z in 1..16 {
                    assert_eq!(fast[z], g.neighbor_count(0, z, &y, convention).unwrap());
                }
            }
        }
    }

    #[test]
    fn gbent4_certified() {
        let r = gbent4()
            .srg_check(&set(4, &[0, 1]), &set(4, &[2, 3]), NeighborConvention::AllVertices)
            .unwrap();
        assert!(r.bisection && !r.degenerate);
        assert!(r.certified_equal());
        let brute = gbent4().neighbor_count(0, 1, &set(4, &[2, 3]), NeighborConvention::AllVertices).unwrap();
        assert_eq!(r.parameters(), Some((Some(brute), Some(brute))));
    }

    #[test]
    fn quadratic_q4_is_certified_per_class() {
        // The single X-pair z = 01 sees 2 common {2,3}-neighbors and both
        // X-bar pairs see none, so the per-class counts are constant even
        // though the function is not gbent.
        let r = quadratic_q4()
            .srg_check(&set(4, &[0, 1]), &set(4, &[2, 3]), NeighborConvention::AllVertices)
            .unwrap();
        assert_eq!(r.parameters(), Some((Some(2), Some(0))));
        assert!(!r.certified_equal());
    }

    #[test]
    fn refuted_witness_reproduces() {
        let g = CayleyGraph::new(GeneralizedBooleanFunction::new(3, 2, vec![0, 0, 0, 0, 0, 0, 2, 2]).unwrap());
        let y = set(4, &[2, 3]);
        let r = g.srg_check(&set(4, &[0, 1]), &y, NeighborConvention::AllVertices).unwrap();
        let w = r.witness().expect("refuted");
        assert_eq!(w.class, SrgClass::First);
        let c1 = g.neighbor_count(w.first.0, w.first.1, &y, NeighborConvention::AllVertices).unwrap();
        let c2 = g.neighbor_count(w.second.0, w.second.1, &y, NeighborConvention::AllVertices).unwrap();
        assert_eq!((c1, c2), (w.first_count, w.second_count));
        assert_ne!(c1, c2);
    }

    #[test]
    fn classical_instance() {
        let f = parse_expression("x1*x2 (+) x3*x4", 4, 1).unwrap();
        let g = CayleyGraph::new(f);
        let one = set(2, &[1]);
        let r = g.srg_check(&one, &one, NeighborConvention::ExcludeEndpoints).unwrap();
        assert_eq!(r.parameters(), Some((Some(2), Some(2))));
        let wr = g.weighted_regularity();
        assert_eq!(wr.r_sum(&one), 6);
        assert!(r.counting_identity_check(&wr).unwrap());
        let all = g.srg_check(&one, &one, NeighborConvention::AllVertices).unwrap();
        assert!(all.counting_identity_check(&wr).is_err());
    }

    #[test]
    fn generalized_variant() {
        let g = gbent4();
        let y = set(4, &[2, 3]);
        let x = set(4, &[0, 1]);
        let a = g.srg_check(&x, &y, NeighborConvention::AllVertices).unwrap();
        let b = g
            .srg_check_generalized(&x, &x.complement(), &y, NeighborConvention::AllVertices)
            .unwrap();
        assert_eq!(a, b);
        let r = g
            .srg_check_generalized(&set(4, &[1]), &set(4, &[2]), &y, NeighborConvention::AllVertices)
            .unwrap();
        assert!(!r.bisection);
        let counts = g.pair_counts(&y, NeighborConvention::AllVertices);
        let class = |w| (1..16).filter(|&z| g.function().at(z) == w).map(|z| counts[z]).collect::<Vec<_>>();
        let constant = |v: Vec<u64>| v.windows(2).all(|p| p[0] == p[1]);
        assert_eq!(r.is_certified(), constant(class(1)) && constant(class(2)));
        let vacuous = g
            .srg_check_generalized(&set(4, &[1]), &WeightSet::empty(4), &y, NeighborConvention::AllVertices)
            .unwrap();
        assert!(matches!(vacuous.outcome, SrgOutcome::Certified { d: None, .. }));
        assert!(matches!(
            g.srg_check_generalized(&x, &set(4, &[1, 2]), &y, NeighborConvention::AllVertices),
            Err(Error::OverlappingClasses(1))
        ));
    }

    #[test]
    fn degenerate_flag() {
        let g = CayleyGraph::new(GeneralizedBooleanFunction::zero(3, 2).unwrap());
        let r = g.srg_check(&set(4, &[0, 1]), &set(4, &[2, 3]), NeighborConvention::AllVertices).unwrap();
        assert!(r.degenerate && r.is_certified());
    }

    #[test]
    fn empty_class_identity() {
        let g = CayleyGraph::new(GeneralizedBooleanFunction::zero(2, 2).unwrap());
        let x = set(4, &[2, 3]);
        let r = g.srg_check(&x, &x, NeighborConvention::ExcludeEndpoints).unwrap();
        assert_eq!(r.parameters(), Some((None, Some(0))));
        assert!(r.counting_identity_check(&g.weighted_regularity()).unwrap());
    }

    #[test]
    fn complement_transport_gbent4() {
        let g = gbent4();
        for x in WeightSet::subsets_of_size(4, 2) {
            let y = x.complement();
            let report = g.srg_check(&x, &y, NeighborConvention::AllVertices).unwrap();
            match g.complement_transport(&report) {
                Some(t) => {
                    assert!(t.consistent);
                    assert!(t.literal_reading_holds);
                }
                None => assert!(
                    !report.is_certified()
                        || (x.reflect() != x && x.reflect() != x.complement())
                        || y.reflect() != y
                ),
            }
        }
    }

    proptest! {
        #[test]
        fn translation_invariance(table in prop::collection::vec(0u32..8, 16), a in 0usize..16, b in 0usize..16, t in 0usize..16, mask in 0u32..256) {
            prop_assume!(a != b);
            let g = CayleyGraph::new(GeneralizedBooleanFunction::new(4, 3, table).unwrap());
            let y = WeightSet::new(8, (0..8).filter(|w| mask >> w & 1 == 1)).unwrap();
            for convention in NeighborConvention::ALL {
                let direct = g.neighbor_count(a, b, &y, convention).unwrap();
                prop_assert_eq!(direct, g.neighbor_count(a ^ t, b ^ t, &y, convention).unwrap());
                prop_assert_eq!(direct, g.pair_counts(&y, convention)[a ^ b]);
            }
        }
    }
}
