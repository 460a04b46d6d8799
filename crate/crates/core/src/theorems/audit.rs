use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::GeneralizedBooleanFunction;
use crate::graph::{CayleyGraph, NeighborConvention};
use crate::transform::{gbent_verdict_of, gwht_fast};
use crate::weights::WeightSet;

use super::{
    decomposition_criterion_q4, gb4_check, gbent_fixtures, is_degenerate_gb4_satisfier,
    necessary_condition_check,
};

/// Version of the audit report layout.
pub const AUDIT_SCHEMA_VERSION: u32 = 1;

/// Default cap on the number of functions an audit may visit.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum AuditScope {
    /// Every table, in lexicographic order.
    Exhaustive,
    /// `count` tables drawn uniformly with a seeded ChaCha8 generator.
    Random { count: u64, seed: u64 },
    /// Only the constructed gbent fixtures.
    Fixtures,
}

#[derive(Debug, Clone)]
pub struct AuditConfig {
    pub n: u32,
    pub k: u32,
    pub scope: AuditScope,
    pub conventions: Vec<NeighborConvention>,
    /// Maximum number of functions (`q^{2^n}` for exhaustive scopes).
    pub budget: u128,
    /// Append the constructed gbent fixtures to a random scope.
    pub include_fixtures: bool,
    /// Run the complement and counting-identity checks over every
    /// bisection. On by default for `k <= 2`.
    pub spot_checks: bool,
    /// Keep one verdict line per function in the report.
    pub keep_verdicts: bool,
    /// Exceptions listed per claim and convention; the tallies count all.
    pub max_logged_per_claim: usize,
}

impl AuditConfig {
    pub fn new(n: u32, k: u32, scope: AuditScope) -> Self {
        AuditConfig {
            n,
            k,
            scope,
            conventions: NeighborConvention::ALL.to_vec(),
            budget: DEFAULT_BUDGET,
            include_fixtures: false,
            spot_checks: k <= 2,
            keep_verdicts: false,
            max_logged_per_claim: 50,
        }
    }
}

/// The statements an audit tests on each function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// gbent iff the adjacency matrix is Butson Hadamard.
    GbentIffButson,
    /// For `q = 4`, `n` even: gbent iff `a_1` and `a_0 + a_1` are bent.
    GbentIffDecomposition,
    /// For `q = 4`, `n` even: gbent implies both neighborhood conditions.
    GbentImpliesGb4,
    /// The converse; non-gbent satisfiers must be degenerate.
    Gb4ImpliesGbent,
    /// gbent implies `f_c` bent for every `c` (`n` even).
    GbentImpliesFcBent,
    /// gbent implies constant `X_c^1`-neighbor counts for every `c`.
    GbentImpliesNecessaryDisplayed,
    /// gbent implies `(X_c^0; X_c^1)`-strong regularity with `e = d`.
    GbentImpliesNecessarySrg,
    /// The complement's regularity profile is the reversal.
    ComplementReversal,
    /// A certified `(X; Y)` instance carries over to the complement, class
    /// by class.
    ComplementTransport,
    /// The same, with `e` and `d` exchanged when `q - 1 - X = X-bar`.
    ComplementSwapReading,
    /// `r_X (r_X - e_X - 1) = d_X (v - r_X - 1)` for certified `(X; X)`.
    CountingIdentity,
}

impl Claim {
    pub fn name(&self) -> &'static str {
        match self {
            Claim::GbentIffButson => "gbent <=> butson",
            Claim::GbentIffDecomposition => "gbent <=> decomposition",
            Claim::GbentImpliesGb4 => "gbent => gb4",
            Claim::Gb4ImpliesGbent => "gb4 => gbent",
            Claim::GbentImpliesFcBent => "gbent => f_c bent",
            Claim::GbentImpliesNecessaryDisplayed => "gbent => N_{X_c^1} constant",
            Claim::GbentImpliesNecessarySrg => "gbent => (X_c^0;X_c^1) srg, e=d",
            Claim::ComplementReversal => "complement reverses r",
            Claim::ComplementTransport => "complement transport",
            Claim::ComplementSwapReading => "complement swap reading",
            Claim::CountingIdentity => "counting identity",
        }
    }

    /// Whether a failure of this claim under `convention` breaks an
    /// invariant. Failures under the exclude-endpoints convention of the
    /// neighborhood claims and of the swap reading are findings, not
    /// violations.
    fn forbidden(&self, convention: Option<NeighborConvention>, degenerate: bool) -> bool {
        let primary = convention != Some(NeighborConvention::ExcludeEndpoints);
        match self {
            Claim::GbentIffButson
            | Claim::GbentIffDecomposition
            | Claim::GbentImpliesFcBent
            | Claim::ComplementReversal
            | Claim::ComplementTransport
            | Claim::CountingIdentity => true,
            Claim::GbentImpliesGb4
            | Claim::GbentImpliesNecessaryDisplayed
            | Claim::GbentImpliesNecessarySrg => primary,
            Claim::Gb4ImpliesGbent => primary && !degenerate,
            Claim::ComplementSwapReading => false,
        }
    }
}

/// Counts for one claim under one convention. `applicable` is the number
/// of functions (or, for the complement and counting checks, instances)
/// the claim was tested on; `holds + exceptions = applicable`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub claim: Claim,
    pub convention: Option<NeighborConvention>,
    pub applicable: u64,
    pub holds: u64,
    pub exceptions: u64,
    pub forbidden: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditException {
    pub claim: Claim,
    pub convention: Option<NeighborConvention>,
    /// The function, in table order; reproduces the exception.
    pub table: Vec<u32>,
    pub forbidden: bool,
    /// The report that shows the failure.
    pub witness: serde_json::Value,
}

/// Verdicts for one function. Fields that do not apply to `(n, k)` are
/// `None`; per-convention entries follow the configured order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctionVerdict {
    pub table: Vec<u32>,
    pub gbent: bool,
    pub butson: bool,
    pub decomposition: Option<bool>,
    pub gb4: Option<Vec<bool>>,
    pub f_c_bent: Option<bool>,
    pub necessary: Option<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditTallies {
    pub functions: u64,
    pub gbent: u64,
    pub butson: u64,
    pub claims: Vec<Tally>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub schema_version: u32,
    pub n: u32,
    pub k: u32,
    pub scope: AuditScope,
    pub fixtures_included: u64,
    pub conventions: Vec<NeighborConvention>,
    pub tallies: AuditTallies,
    pub exceptions: Vec<AuditException>,
    /// Exceptions counted but not listed because of the logging cap.
    pub exceptions_omitted: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Vec<FunctionVerdict>>,
}

struct Observation {
    claim: Claim,
    convention: Option<NeighborConvention>,
    holds: bool,
    forbidden: bool,
    witness: Option<serde_json::Value>,
}

impl Observation {
    fn new(claim: Claim, convention: Option<NeighborConvention>, holds: bool) -> Self {
        Observation {
            claim,
            convention,
            holds,
            forbidden: !holds && claim.forbidden(convention, false),
            witness: None,
        }
    }

    fn with_witness(mut self, witness: impl FnOnce() -> serde_json::Value) -> Self {
        if !self.holds {
            self.witness = Some(witness());
        }
        self
    }
}

fn json<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("plain data")
}

/// Runs every applicable check on the functions in scope. The report does
/// not depend on thread scheduling: functions are processed in scope order
/// and exceptions are sorted by table.
pub fn audit(config: &AuditConfig) -> Result<AuditReport> {
    crate::function::Limits::default().check(config.n, config.k)?;
    let functions = scope_functions(config)?;
    let fixtures_included = match config.scope {
        AuditScope::Fixtures => functions.len() as u64,
        AuditScope::Random { count, .. } => functions.len() as u64 - count,
        AuditScope::Exhaustive => 0,
    };
    let results: Vec<(FunctionVerdict, Vec<Observation>)> = functions
        .par_iter()
        .map(|f| examine(f, config))
        .collect();

    let mut tallies: BTreeMap<(Claim, Option<NeighborConvention>), Tally> = BTreeMap::new();
    let mut exceptions = Vec::new();
    let mut gbent = 0;
    let mut butson = 0;
    let mut verdicts = Vec::new();
    for (verdict, observations) in results {
        gbent += u64::from(verdict.gbent);
        butson += u64::from(verdict.butson);
        for obs in observations {
            let tally = tallies.entry((obs.claim, obs.convention)).or_insert(Tally {
                claim: obs.claim,
                convention: obs.convention,
                applicable: 0,
                holds: 0,
                exceptions: 0,
                forbidden: 0,
            });
            tally.applicable += 1;
            if obs.holds {
                tally.holds += 1;
            } else {
                tally.exceptions += 1;
                tally.forbidden += u64::from(obs.forbidden);
                exceptions.push(AuditException {
                    claim: obs.claim,
                    convention: obs.convention,
                    table: verdict.table.clone(),
                    forbidden: obs.forbidden,
                    witness: obs.witness.unwrap_or(serde_json::Value::Null),
                });
            }
        }
        if config.keep_verdicts {
            verdicts.push(verdict);
        }
    }

    exceptions.sort_by(|a, b| {
        (&a.table, a.claim, a.convention).cmp(&(&b.table, b.claim, b.convention))
    });
    let mut logged: BTreeMap<(Claim, Option<NeighborConvention>), usize> = BTreeMap::new();
    let total = exceptions.len();
    exceptions.retain(|e| {
        let seen = logged.entry((e.claim, e.convention)).or_default();
        *seen += 1;
        *seen <= config.max_logged_per_claim
    });

    Ok(AuditReport {
        schema_version: AUDIT_SCHEMA_VERSION,
        n: config.n,
        k: config.k,
        scope: config.scope.clone(),
        fixtures_included,
        conventions: config.conventions.clone(),
        tallies: AuditTallies {
            functions: functions.len() as u64,
            gbent,
            butson,
            claims: tallies.into_values().collect(),
        },
        exceptions_omitted: (total - exceptions.len()) as u64,
        exceptions,
        verdicts: config.keep_verdicts.then_some(verdicts),
    })
}

/// The gbent functions among those in scope, in scope order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub visited: u64,
    pub found: Vec<GeneralizedBooleanFunction>,
}

/// Visits the same functions an audit with this scope would and keeps the
/// gbent ones.
pub fn search_gbent(n: u32, k: u32, scope: AuditScope, budget: u128) -> Result<SearchResult> {
    crate::function::Limits::default().check(n, k)?;
    let mut config = AuditConfig::new(n, k, scope);
    config.budget = budget;
    let functions = scope_functions(&config)?;
    let visited = functions.len() as u64;
    let found = functions
        .into_par_iter()
        .filter(|f| gbent_verdict_of(&gwht_fast(f)).gbent)
        .collect();
    Ok(SearchResult { visited, found })
}

fn scope_functions(config: &AuditConfig) -> Result<Vec<GeneralizedBooleanFunction>> {
    let (n, k) = (config.n, config.k);
    let q = 1u32 << k;
    let size = 1usize << n;
    let mut functions = match config.scope {
        AuditScope::Exhaustive => {
            let total = (q as u128).checked_pow(size as u32).unwrap_or(u128::MAX);
            if total > config.budget {
                return Err(Error::BudgetExceeded {
                    size: total,
                    budget: config.budget,
                });
            }
            (0..total as u64)
                .map(|code| {
                    GeneralizedBooleanFunction::from_fn(n, k, |x| {
                        let shift = k as usize * (size - 1 - x);
                        (code >> shift) as u32 & (q - 1)
                    })
                })
                .collect::<Result<Vec<_>>>()?
        }
        AuditScope::Random { count, seed } => {
            if count as u128 > config.budget {
                return Err(Error::BudgetExceeded {
                    size: count as u128,
                    budget: config.budget,
                });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    let table = (0..size).map(|_| rng.random_range(0..q)).collect();
                    GeneralizedBooleanFunction::new(n, k, table)
                })
                .collect::<Result<Vec<_>>>()?
        }
        AuditScope::Fixtures => gbent_fixtures(n, k)?,
    };
    if config.include_fixtures && matches!(config.scope, AuditScope::Random { .. }) {
        functions.extend(gbent_fixtures(n, k)?);
    }
    Ok(functions)
}

fn examine(f: &GeneralizedBooleanFunction, config: &AuditConfig) -> (FunctionVerdict, Vec<Observation>) {
    let n_even = f.n() % 2 == 0;
    let q4 = f.k() == 2 && n_even;
    let graph = CayleyGraph::new(f.clone());
    let gbent_verdict = gbent_verdict_of(&gwht_fast(f));
    let gbent = gbent_verdict.gbent;
    let butson_verdict = graph.butson_check();
    let butson = butson_verdict.butson;
    let mut obs = vec![Observation::new(Claim::GbentIffButson, None, gbent == butson)
        .with_witness(|| serde_json::json!({ "gbent": gbent_verdict, "butson": butson_verdict }))];

    let decomposition = q4.then(|| decomposition_criterion_q4(f).expect("k = 2"));
    if let Some(d) = decomposition {
        obs.push(Observation::new(Claim::GbentIffDecomposition, None, d == gbent).with_witness(|| {
            serde_json::json!({ "gbent": gbent, "decomposition": d })
        }));
    }

    let gb4 = q4.then(|| {
        config
            .conventions
            .iter()
            .map(|&conv| {
                let report = gb4_check(f, conv).expect("k = 2, n even");
                let passes = report.passes();
                if gbent {
                    obs.push(
                        Observation::new(Claim::GbentImpliesGb4, Some(conv), passes)
                            .with_witness(|| json(&report)),
                    );
                }
                if passes {
                    let degenerate = !gbent && is_degenerate_gb4_satisfier(f);
                    let mut o = Observation::new(Claim::Gb4ImpliesGbent, Some(conv), gbent);
                    o.forbidden = !gbent && Claim::Gb4ImpliesGbent.forbidden(Some(conv), degenerate);
                    obs.push(o.with_witness(|| serde_json::json!({ "degenerate": degenerate, "gb4": report })));
                }
                passes
            })
            .collect()
    });

    let necessary_applies = f.k() >= 2 && n_even;
    let mut f_c_bent = None;
    let necessary = necessary_applies.then(|| {
        config
            .conventions
            .iter()
            .map(|&conv| {
                let report = necessary_condition_check(f, conv).expect("k >= 2, n even");
                f_c_bent = Some(report.all_f_c_bent());
                if gbent {
                    let failing: Vec<_> = report
                        .entries
                        .iter()
                        .filter(|e| !e.displayed.constant || !e.srg_reading)
                        .collect();
                    obs.push(
                        Observation::new(Claim::GbentImpliesNecessaryDisplayed, Some(conv), report.displayed_holds())
                            .with_witness(|| json(&failing)),
                    );
                    obs.push(
                        Observation::new(Claim::GbentImpliesNecessarySrg, Some(conv), report.srg_reading_holds())
                            .with_witness(|| json(&failing)),
                    );
                }
                report.passes()
            })
            .collect()
    });
    if gbent {
        if let Some(all) = f_c_bent {
            let report = necessary_condition_check(f, NeighborConvention::AllVertices).expect("checked");
            obs.push(Observation::new(Claim::GbentImpliesFcBent, None, all).with_witness(|| {
                let bad: Vec<usize> = report.entries.iter().filter(|e| !e.f_c_bent).map(|e| e.c).collect();
                serde_json::json!({ "c_not_bent": bad })
            }));
        }
    }

    if config.spot_checks {
        spot_checks(&graph, config, &mut obs);
    }

    let verdict = FunctionVerdict {
        table: f.table(),
        gbent,
        butson,
        decomposition,
        gb4,
        f_c_bent,
        necessary,
    };
    (verdict, obs)
}

/// Complement reversal and transport over every bisection `X` and every
/// `Y = q - 1 - Y`, and the counting identity over every `(X; X)`
/// certificate under exclude-endpoints.
fn spot_checks(graph: &CayleyGraph, config: &AuditConfig, obs: &mut Vec<Observation>) {
    let q = graph.q();
    let wr = graph.weighted_regularity();
    let reversed = graph.complement().weighted_regularity().is_reversal_of(&wr);
    obs.push(Observation::new(Claim::ComplementReversal, None, reversed).with_witness(|| json(&wr)));

    let bisections = WeightSet::subsets_of_size(q, q as usize / 2);
    let symmetric: Vec<WeightSet> = WeightSet::all_subsets(q)
        .into_iter()
        .filter(|y| y.reflect() == *y)
        .collect();
    for &conv in &config.conventions {
        for x in &bisections {
            for y in &symmetric {
                let report = graph.srg_check(x, y, conv).expect("sets share q");
                if let Some(t) = graph.complement_transport(&report) {
                    obs.push(
                        Observation::new(Claim::ComplementTransport, Some(conv), t.consistent)
                            .with_witness(|| json(&t)),
                    );
                    obs.push(
                        Observation::new(Claim::ComplementSwapReading, Some(conv), t.literal_reading_holds)
                            .with_witness(|| json(&t)),
                    );
                }
            }
        }
    }
    if config.conventions.contains(&NeighborConvention::ExcludeEndpoints) {
        for x in &bisections {
            let report = graph
                .srg_check(x, x, NeighborConvention::ExcludeEndpoints)
                .expect("sets share q");
            if report.is_certified() {
                let holds = report.counting_identity_check(&wr).expect("(X; X) report");
                obs.push(
                    Observation::new(Claim::CountingIdentity, Some(NeighborConvention::ExcludeEndpoints), holds)
                        .with_witness(|| json(&report)),
                );
            }
        }
    }
}

impl AuditReport {
    /// Some exception breaks an invariant.
    pub fn has_forbidden(&self) -> bool {
        self.tallies.claims.iter().any(|t| t.forbidden > 0)
    }

    pub fn tally(&self, claim: Claim, convention: Option<NeighborConvention>) -> Option<&Tally> {
        self.tallies
            .claims
            .iter()
            .find(|t| t.claim == claim && t.convention == convention)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("plain data");
        text.push('\n');
        text
    }

    /// A plain-text table of the tallies.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let scope = match &self.scope {
            AuditScope::Exhaustive => "exhaustive".to_string(),
            AuditScope::Random { count, seed } => format!("random {count} (seed {seed})"),
            AuditScope::Fixtures => "fixtures".to_string(),
        };
        writeln!(out, "audit n={} k={} scope: {scope}", self.n, self.k).unwrap();
        writeln!(
            out,
            "functions {}  gbent {}  butson {}  fixtures {}",
            self.tallies.functions, self.tallies.gbent, self.tallies.butson, self.fixtures_included
        )
        .unwrap();
        writeln!(
            out,
            "{:<36} {:<18} {:>10} {:>10} {:>10} {:>10}",
            "claim", "convention", "applicable", "holds", "exceptions", "forbidden"
        )
        .unwrap();
        for t in &self.tallies.claims {
            writeln!(
                out,
                "{:<36} {:<18} {:>10} {:>10} {:>10} {:>10}",
                t.claim.name(),
                t.convention.map_or("-", |c| c.name()),
                t.applicable,
                t.holds,
                t.exceptions,
                t.forbidden
            )
            .unwrap();
        }
        let verdict = if self.has_forbidden() {
            "INVARIANT VIOLATED"
        } else {
            "no forbidden exceptions"
        };
        writeln!(out, "{verdict}").unwrap();
        out
    }
}
