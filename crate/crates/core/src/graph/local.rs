use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use super::srg::indicator_autocorrelation;
use super::CayleyGraph;

/// Parameters of an edge-weighted local strongly regular graph over the
/// weight set `w`. Keys are weight tuples; `lambda[(a1, a2, a3)]` is the
/// number of common neighbors `c` with `w(u1, c) = a1`, `w(u2, c) = a2` of a
/// pair joined by an edge of weight `a3`, and `mu[(a1, a2)]` the same for
/// nonadjacent pairs. Tuples that never occur are absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalSrgParams {
    pub v: usize,
    pub w: Vec<u32>,
    pub k: BTreeMap<u32, usize>,
    #[serde(serialize_with = "serialize_entries")]
    pub lambda: BTreeMap<(u32, u32, u32), u64>,
    #[serde(serialize_with = "serialize_entries")]
    pub mu: BTreeMap<(u32, u32), u64>,
}

/// Tuple keys are not valid JSON object keys, so the tables are written as
/// `[[key..., count], ...]` lists.
fn serialize_entries<K: Serialize, S: Serializer>(
    map: &BTreeMap<K, u64>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    serializer.collect_seq(map.iter())
}

/// Two pairs `(0, first.0)` and `(0, second.0)` of the same kind (edge weight
/// `a3`, or nonadjacent when `a3` is `None`) whose `(a1, a2)` counts differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalSrgWitness {
    pub a1: u32,
    pub a2: u32,
    pub a3: Option<u32>,
    pub first: (usize, u64),
    pub second: (usize, u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum LocalSrgOutcome {
    Certified(LocalSrgParams),
    Refuted(LocalSrgWitness),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalSrgReport {
    /// Whether the modified graph is connected, which the definition
    /// presumes. The outcome is computed either way.
    pub connected: bool,
    pub outcome: LocalSrgOutcome,
}

impl CayleyGraph {
    /// Checks local strong regularity on the modified graph: `u ~ v` with
    /// weight `f(u + v)` whenever `u != v` and `f(u + v) != 0`. The weight
    /// set is the set of nonzero values of `f` at nonzero points.
    ///
    /// For a pair at difference `z`, the count for `(a1, a2)` is the number
    /// of `s` outside `{0, z}` with `f(s) = a1` and `f(s + z) = a2`. Each
    /// such table is a cross-correlation of two indicators, computed with
    /// the Walsh transform from the correlation of their sum and of each
    /// indicator alone.
    pub fn local_srg_check(&self) -> LocalSrgReport {
        let size = self.order();
        let mut k: BTreeMap<u32, usize> = BTreeMap::new();
        for t in 1..size {
            let a = self.f.at(t);
            if a != 0 {
                *k.entry(a).or_default() += 1;
            }
        }
        let w: Vec<u32> = k.keys().copied().collect();
        let support: Vec<usize> = (1..size).filter(|&t| self.f.at(t) != 0).collect();
        let rank = {
            let mut basis: Vec<usize> = Vec::new();
            for &v in &support {
                let reduced = basis.iter().fold(v, |acc, &b| acc.min(acc ^ b));
                if reduced != 0 {
                    basis.push(reduced);
                    basis.sort_unstable_by(|a, b| b.cmp(a));
                }
            }
            basis.len()
        };
        let connected = rank == self.f.n() as usize;

        let indicator = |a: u32| -> Vec<i64> {
            (0..size)
                .map(|t| i64::from(t != 0 && self.f.at(t) == a))
                .collect()
        };
        let singles: BTreeMap<u32, Vec<i64>> = w
            .iter()
            .map(|&a| (a, indicator_autocorrelation(&indicator(a))))
            .collect();
        // counts[(a1, a2)][z] = #{s not in {0, z} : f(s) = a1, f(s + z) = a2}
        let mut counts: BTreeMap<(u32, u32), Vec<i64>> = BTreeMap::new();
        for (i, &a1) in w.iter().enumerate() {
            counts.insert((a1, a1), singles[&a1].clone());
            for &a2 in &w[i + 1..] {
                let sum: Vec<i64> = indicator(a1)
                    .iter()
                    .zip(indicator(a2))
                    .map(|(x, y)| x + y)
                    .collect();
                let joint = indicator_autocorrelation(&sum);
                // corr(x + y) = corr(x) + corr(y) + cross(x, y) + cross(y, x),
                // and cross(y, x)(z) = cross(x, y)(z) since z = -z.
                let cross: Vec<i64> = (0..size)
                    .map(|z| (joint[z] - singles[&a1][z] - singles[&a2][z]) / 2)
                    .collect();
                counts.insert((a1, a2), cross.clone());
                counts.insert((a2, a1), cross);
            }
        }

        let mut lambda: BTreeMap<(u32, u32, u32), (usize, u64)> = BTreeMap::new();
        let mut mu: BTreeMap<(u32, u32), (usize, u64)> = BTreeMap::new();
        for z in 1..size {
            let a3 = self.f.at(z);
            for (&(a1, a2), table) in &counts {
                let count = table[z] as u64;
                let (first, class) = if a3 == 0 {
                    (*mu.entry((a1, a2)).or_insert((z, count)), None)
                } else {
                    (*lambda.entry((a1, a2, a3)).or_insert((z, count)), Some(a3))
                };
                if first.1 != count {
                    let witness = LocalSrgWitness {
                        a1,
                        a2,
                        a3: class,
                        first,
                        second: (z, count),
                    };
                    return LocalSrgReport {
                        connected,
                        outcome: LocalSrgOutcome::Refuted(witness),
                    };
                }
            }
        }
        LocalSrgReport {
            connected,
            outcome: LocalSrgOutcome::Certified(LocalSrgParams {
                v: size,
                w,
                k,
                lambda: lambda.into_iter().map(|(key, (_, c))| (key, c)).collect(),
                mu: mu.into_iter().map(|(key, (_, c))| (key, c)).collect(),
            }),
        }
    }
}
