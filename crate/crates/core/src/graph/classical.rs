use serde::Serialize;

use crate::function::BooleanFunction;
use crate::transform::fwht_in_place;

use super::srg::indicator_autocorrelation;

/// Parameters of a strongly regular graph: `lambda` common neighbors for
/// adjacent pairs, `mu` for nonadjacent ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassicalSrgParams {
    pub v: usize,
    pub r: usize,
    pub lambda: u64,
    pub mu: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum ClassicalSrgOutcome {
    Certified(ClassicalSrgParams),
    /// No edges at all, or the complete graph.
    Degenerate { empty: bool },
    /// Pairs `(0, first.0)` and `(0, second.0)` are both adjacent (or both
    /// nonadjacent) but have different numbers of common neighbors.
    Refuted {
        adjacent: bool,
        first: (usize, u64),
        second: (usize, u64),
    },
}

/// Strong regularity of the loopless Cayley graph `G_g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalSrg {
    /// `g(0) = 1`; the loop is ignored.
    pub loop_ignored: bool,
    /// Number of connected components, `2^{n - rank}` where `rank` is the
    /// rank of the support of `g` minus the origin.
    pub components: usize,
    pub outcome: ClassicalSrgOutcome,
    /// Distinct eigenvalues of the loopless adjacency matrix, descending.
    pub eigenvalues: Vec<i64>,
    /// For a connected certified graph: there are exactly three distinct
    /// eigenvalues `r > t1 > t2` and `lambda = r + t1 t2 + t1 + t2`,
    /// `mu = r + t1 t2`.
    pub three_eigenvalue_criterion: Option<bool>,
    /// For a certified graph: `r (r - lambda - 1) = mu (v - r - 1)`.
    pub counting_identity: Option<bool>,
}

impl ClassicalSrg {
    pub fn is_certified(&self) -> bool {
        matches!(self.outcome, ClassicalSrgOutcome::Certified(_))
    }

    pub fn params(&self) -> Option<ClassicalSrgParams> {
        match self.outcome {
            ClassicalSrgOutcome::Certified(p) => Some(p),
            _ => None,
        }
    }
}

fn rank_and_basis(vectors: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut basis: Vec<usize> = Vec::new();
    for v in vectors {
        let reduced = basis.iter().fold(v, |acc, &b| acc.min(acc ^ b));
        if reduced != 0 {
            basis.push(reduced);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

/// Checks whether the Cayley graph of a Boolean function is strongly
/// regular. The graph is taken without loops, so counts never include the
/// endpoints. Every pair of distinct vertices is covered, including pairs in
/// different components; the component count is reported alongside, and the
/// eigenvalue criterion (which presumes a connected graph) is only applied
/// when there is a single component.
pub fn classical_srg_check(g: &BooleanFunction) -> ClassicalSrg {
    let size = g.table().len();
    let indicator: Vec<i64> = (0..size).map(|t| i64::from(t != 0 && g.at(t))).collect();
    let basis = rank_and_basis((1..size).filter(|&t| indicator[t] == 1));
    let components = size >> basis.len();
    let r = indicator.iter().sum::<i64>() as usize;

    let mut eigen = indicator.clone();
    fwht_in_place(&mut eigen);
    let mut eigenvalues = eigen.clone();
    eigenvalues.sort_unstable_by(|a, b| b.cmp(a));
    eigenvalues.dedup();

    let outcome = if r == 0 || r == size - 1 {
        ClassicalSrgOutcome::Degenerate { empty: r == 0 }
    } else {
        let counts = indicator_autocorrelation(&indicator);
        let mut first: [Option<(usize, u64)>; 2] = [None, None];
        let mut refuted = None;
        for z in 1..size {
            let class = indicator[z] as usize;
            let count = counts[z] as u64;
            match first[class] {
                None => first[class] = Some((z, count)),
                Some((z0, c0)) if c0 != count => {
                    refuted = Some(ClassicalSrgOutcome::Refuted {
                        adjacent: class == 1,
                        first: (z0, c0),
                        second: (z, count),
                    });
                    break;
                }
                Some(_) => {}
            }
        }
        refuted.unwrap_or_else(|| {
            ClassicalSrgOutcome::Certified(ClassicalSrgParams {
                v: size,
                r,
                lambda: first[1].map_or(0, |(_, c)| c),
                mu: first[0].map_or(0, |(_, c)| c),
            })
        })
    };

    let (three_eigenvalue_criterion, counting_identity) = match outcome {
        ClassicalSrgOutcome::Certified(p) => {
            let (r, lambda, mu) = (p.r as i64, p.lambda as i64, p.mu as i64);
            let three = (components == 1).then(|| match eigenvalues[..] {
                [top, t1, t2] => {
                    top == r && lambda == r + t1 * t2 + t1 + t2 && mu == r + t1 * t2
                }
                _ => false,
            });
            let identity = r * (r - lambda - 1) == mu * (p.v as i64 - r - 1);
            (three, Some(identity))
        }
        _ => (None, None),
    };

    ClassicalSrg {
        loop_ignored: g.at(0),
        components,
        outcome,
        eigenvalues,
        three_eigenvalue_criterion,
        counting_identity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::is_bent;

    fn brute_common(g: &BooleanFunction, a: usize, b: usize) -> u64 {
        let adj = |x: usize, y: usize| x != y && g.at(x ^ y);
        (0..g.table().len()).filter(|&c| adj(a, c) && adj(b, c)).count() as u64
    }

    #[test]
    fn quadratic_bent() {
        let g = BooleanFunction::from_fn(4, |x| (x >> 3 & x >> 2 & 1) ^ (x >> 1 & x & 1) == 1).unwrap();
        let report = classical_srg_check(&g);
        let p = report.params().unwrap();
        assert_eq!((p.v, p.r, p.lambda, p.mu), (16, 6, 2, 2));
        assert_eq!(report.components, 1);
        assert_eq!(report.three_eigenvalue_criterion, Some(true));
        assert_eq!(report.counting_identity, Some(true));
        assert_eq!(report.eigenvalues, vec![6, 2, -2]);
        for z in 1..16 {
            let expected = if g.at(z) { p.lambda } else { p.mu };
            assert_eq!(brute_common(&g, 0, z), expected);
        }
    }

    #[test]
    fn empty_graph() {
        let report = classical_srg_check(&BooleanFunction::zero(3).unwrap());
        assert_eq!(report.outcome, ClassicalSrgOutcome::Degenerate { empty: true });
    }

    #[test]
    fn loop_is_ignored() {
        let g = BooleanFunction::from_fn(4, |x| x == 0 || (x >> 3 & x >> 2 & 1) ^ (x >> 1 & x & 1) == 1).unwrap();
        let report = classical_srg_check(&g);
        assert!(report.loop_ignored);
        assert_eq!(report.params().unwrap().r, 6);
    }

    #[test]
    fn disconnected() {
        // A single nonzero support point: a perfect matching, 8 components,
        // with lambda = mu = 0 although the function is not bent.
        let g = BooleanFunction::from_fn(4, |x| x == 0b1100).unwrap();
        let report = classical_srg_check(&g);
        assert_eq!(report.components, 8);
        let p = report.params().unwrap();
        assert_eq!((p.v, p.r, p.lambda, p.mu), (16, 1, 0, 0));
        assert_eq!(report.three_eigenvalue_criterion, None);
        assert!(!is_bent(&g));
        // Two disjoint 4-cycles.
        let h = BooleanFunction::from_fn(3, |x| x == 0b100 || x == 0b010).unwrap();
        let report = classical_srg_check(&h);
        assert_eq!(report.components, 2);
        assert!(matches!(report.outcome, ClassicalSrgOutcome::Refuted { adjacent: false, .. }));
    }

    #[test]
    fn complete_graph() {
        let g = BooleanFunction::from_fn(3, |x| x != 0).unwrap();
        assert_eq!(classical_srg_check(&g).outcome, ClassicalSrgOutcome::Degenerate { empty: false });
    }

    #[test]
    fn refuted_has_reproducible_witness() {
        let g = BooleanFunction::from_fn(3, |x| [0b001, 0b010, 0b100, 0b011].contains(&x)).unwrap();
        let report = classical_srg_check(&g);
        match report.outcome {
            ClassicalSrgOutcome::Refuted { adjacent, first, second } => {
                assert_eq!(g.at(first.0), adjacent);
                assert_eq!(g.at(second.0), adjacent);
                assert_eq!(brute_common(&g, 0, first.0), first.1);
                assert_eq!(brute_common(&g, 0, second.0), second.1);
                assert_ne!(first.1, second.1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bent_iff_srg_with_equal_parameters_n2() {
        for mask in (0u32..16).filter(|m| m & 1 == 0) {
            let g = BooleanFunction::from_fn(2, |x| mask >> x & 1 == 1).unwrap();
            let report = classical_srg_check(&g);
            if matches!(report.outcome, ClassicalSrgOutcome::Degenerate { .. }) {
                continue;
            }
            let equal = report.params().is_some_and(|p| p.lambda == p.mu);
            assert_eq!(equal, is_bent(&g), "mask {mask}");
        }
    }
}
