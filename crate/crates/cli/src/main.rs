use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gbent::anf::algebraic_degree;
use gbent::gbf::{read_gbf, write_gbf};
use gbent::graph::{
    classical_srg_check, ButsonVerdict, CayleyGraph, ClassicalSrg, ExportFormat, ExportVariant,
    NeighborConvention, WeightedRegularity,
};
use gbent::parse::parse_expression;
use gbent::theorems::{
    audit, bent_set_corollary_check, decomposition_criterion_q4, gb4_check,
    necessary_condition_check, search_gbent, AuditConfig, AuditScope, DEFAULT_BUDGET,
};
use gbent::transform::{bent_verdict, gwht_fast, gbent_verdict_of, GbentVerdict};
use gbent::weights::WeightSet;
use gbent::{Error, GeneralizedBooleanFunction};

/// Version of every JSON document the tool prints.
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "gbent", version, about = "Generalized bent functions and their Cayley graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectrum, bentness, regularity and Butson verdicts for one function.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// A single verdict, as JSON.
    Check {
        #[arg(value_enum)]
        which: CheckKind,
        #[command(flatten)]
        input: Input,
        /// First weight class, e.g. `0,1`.
        #[arg(long)]
        x: Option<String>,
        /// Second weight class; defaults to the complement of `--x`.
        #[arg(long)]
        x2: Option<String>,
        /// Neighbor weights, e.g. `2,3`.
        #[arg(long)]
        y: Option<String>,
        #[arg(long, default_value = "all-vertices")]
        convention: NeighborConvention,
    },
    /// Tests every theorem over a family of functions.
    Audit {
        #[arg(short, long)]
        n: u32,
        #[arg(short, long)]
        k: u32,
        #[command(flatten)]
        scope: ScopeArgs,
        /// Seed for `--random`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Add the constructed gbent functions to a random sample.
        #[arg(long)]
        with_fixtures: bool,
        /// Repeatable; both conventions when omitted.
        #[arg(long)]
        convention: Vec<NeighborConvention>,
        /// Run the complement and counting-identity checks (default for k <= 2).
        #[arg(long)]
        spot_checks: Option<bool>,
        /// Include one verdict per function in the JSON.
        #[arg(long)]
        verdicts: bool,
        #[arg(long, env = "GBENT_BUDGET", default_value_t = DEFAULT_BUDGET as u64)]
        budget: u64,
        /// Write the JSON report here.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Writes the Cayley graph as DOT, GraphML or JSON.
    Export {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "dot")]
        format: ExportFormat,
        #[arg(long, default_value = "full")]
        variant: ExportVariant,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Prints every gbent function found, as `.gbf` records.
    Search {
        #[arg(short, long)]
        n: u32,
        #[arg(short, long)]
        k: u32,
        #[command(flatten)]
        scope: ScopeArgs,
        /// Seed for `--random`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "GBENT_BUDGET", default_value_t = DEFAULT_BUDGET as u64)]
        budget: u64,
    },
    /// Checks the bent-set corollary for functions given one per `-e`.
    BentSet {
        #[arg(short, long, required = true)]
        expr: Vec<String>,
        #[arg(short, long)]
        n: u32,
        #[arg(long, default_value = "all-vertices")]
        convention: NeighborConvention,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputSource {
    /// A `.gbf` file.
    #[arg(short, long)]
    file: Option<PathBuf>,
    /// An expression such as `x1*x2 + 2*x1`.
    #[arg(short, long)]
    expr: Option<String>,
    /// A truth table such as `0,0,2,3`.
    #[arg(short, long)]
    table: Option<String>,
}

#[derive(Args)]
struct Input {
    #[command(flatten)]
    source: InputSource,
    #[arg(short, long)]
    n: Option<u32>,
    #[arg(short, long, default_value_t = 1)]
    k: u32,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ScopeArgs {
    /// Every function.
    #[arg(long)]
    exhaustive: bool,
    /// This many uniformly random functions.
    #[arg(long)]
    random: Option<u64>,
    /// The constructed gbent functions.
    #[arg(long)]
    construct: bool,
}

impl ScopeArgs {
    fn scope(&self, seed: u64) -> AuditScope {
        match self.random {
            Some(count) => AuditScope::Random { count, seed },
            None if self.construct => AuditScope::Fixtures,
            None => AuditScope::Exhaustive,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Gbent,
    Bent,
    Butson,
    Srg,
    Gb4,
    Necessary,
    LocalSrg,
    CountingIdentity,
}

impl CheckKind {
    fn name(self) -> &'static str {
        match self {
            CheckKind::Gbent => "gbent",
            CheckKind::Bent => "bent",
            CheckKind::Butson => "butson",
            CheckKind::Srg => "srg",
            CheckKind::Gb4 => "gb4",
            CheckKind::Necessary => "necessary",
            CheckKind::LocalSrg => "local-srg",
            CheckKind::CountingIdentity => "counting-identity",
        }
    }
}

/// Failures that are not verdicts.
enum Failure {
    /// Bad input or a refused request: exit 2.
    Usage(String),
    /// An audit found an invariant violation: exit 1.
    Violation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load(input: &Input) -> Result<GeneralizedBooleanFunction, Failure> {
    let src = &input.source;
    if let Some(path) = &src.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        return Ok(read_gbf(&text)?);
    }
    if let Some(expr) = &src.expr {
        let n = input
            .n
            .ok_or_else(|| Failure::Usage("an expression needs -n".into()))?;
        return Ok(parse_expression(expr, n, input.k)?);
    }
    let text = src.table.as_deref().unwrap_or_default();
    let table = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u32>()
                .map_err(|_| Failure::Usage(format!("not a table value: {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if !table.len().is_power_of_two() {
        return Err(Failure::Usage(format!("table length {} is not a power of two", table.len())));
    }
    let n = table.len().trailing_zeros();
    if input.n.is_some_and(|given| given != n) {
        return Err(Failure::Usage(format!("-n {} does not match a table of length {}", input.n.unwrap(), table.len())));
    }
    Ok(GeneralizedBooleanFunction::new(n, input.k, table)?)
}

fn weights(text: Option<&str>, flag: &str, q: u32) -> Result<WeightSet, Failure> {
    let text = text.ok_or_else(|| Failure::Usage(format!("this check needs --{flag}")))?;
    Ok(WeightSet::parse(text, q)?)
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    n: u32,
    k: u32,
    result: T,
}

fn value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("plain data")
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("plain data");
    text.push('\n');
    text
}

#[derive(Serialize)]
struct ComponentReport {
    index: u32,
    degree: u32,
    bent: bool,
}

#[derive(Serialize)]
struct SpectrumEntry {
    u: usize,
    exact: String,
    coeffs: Vec<i64>,
    complex: [f64; 2],
    norm_squared: Option<i64>,
}

#[derive(Serialize)]
struct Analysis {
    table: Vec<u32>,
    components: Vec<ComponentReport>,
    spectrum: Vec<SpectrumEntry>,
    gbent: GbentVerdict,
    regularity: WeightedRegularity,
    strength: u64,
    butson: ButsonVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    classical_srg: Option<ClassicalSrg>,
}

fn analyze(f: &GeneralizedBooleanFunction) -> Analysis {
    let spectrum = gwht_fast(f);
    let complex = spectrum.to_complex();
    let graph = CayleyGraph::new(f.clone());
    Analysis {
        table: f.table(),
        components: f
            .components()
            .iter()
            .enumerate()
            .map(|(i, c)| ComponentReport {
                index: i as u32,
                degree: algebraic_degree(c),
                bent: bent_verdict(c).bent,
            })
            .collect(),
        spectrum: spectrum
            .values()
            .enumerate()
            .map(|(u, v)| SpectrumEntry {
                u,
                exact: v.to_string(),
                coeffs: v.coeffs().to_vec(),
                complex: [complex[u].re, complex[u].im],
                norm_squared: v.norm_squared().is_integer(),
            })
            .collect(),
        gbent: gbent_verdict_of(&spectrum),
        regularity: graph.weighted_regularity(),
        strength: graph.strength(),
        butson: graph.butson_check(),
        classical_srg: (f.k() == 1).then(|| classical_srg_check(&f.component(0))),
    }
}

fn analysis_text(f: &GeneralizedBooleanFunction, a: &Analysis) -> String {
    let mut out = String::new();
    writeln!(out, "n={} k={} q={}", f.n(), f.k(), f.q()).unwrap();
    writeln!(out, "table: {}", write_gbf(f).lines().nth(1).unwrap_or_default()).unwrap();
    for c in &a.components {
        writeln!(out, "a{}: degree {}, bent {}", c.index, c.degree, c.bent).unwrap();
    }
    writeln!(out, "spectrum (z = exp(2 pi i / q)):").unwrap();
    for s in &a.spectrum {
        writeln!(
            out,
            "  H({}) = {:<16} ~ {:+.6} {:+.6}i",
            s.u, s.exact, s.complex[0], s.complex[1]
        )
        .unwrap();
    }
    match &a.gbent.witness {
        None => writeln!(out, "gbent: true").unwrap(),
        Some(w) => writeln!(out, "gbent: false (|H({})|^2 = {})", w.u, w.norm_squared).unwrap(),
    }
    let r: Vec<String> = a.regularity.r.iter().map(|x| x.to_string()).collect();
    writeln!(
        out,
        "weighted regular: v={} r=({}) loop weight {}",
        a.regularity.v,
        r.join(", "),
        a.regularity.loop_weight
    )
    .unwrap();
    writeln!(out, "strength: {}", a.strength).unwrap();
    match &a.butson.witness {
        None => writeln!(out, "butson: true").unwrap(),
        Some(((i, j), v)) => writeln!(out, "butson: false (entry ({i}, {j}) of A A* is {v})").unwrap(),
    }
    if let Some(c) = &a.classical_srg {
        match c.params() {
            Some(p) => writeln!(out, "classical srg: ({}, {}, {}, {})", p.v, p.r, p.lambda, p.mu).unwrap(),
            None => writeln!(out, "classical srg: no").unwrap(),
        }
    }
    out
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct CountingIdentityResult {
    srg: gbent::graph::SrgReport,
    regularity: WeightedRegularity,
    identity_holds: Option<bool>,
}

fn check(
    which: CheckKind,
    f: &GeneralizedBooleanFunction,
    x: Option<&str>,
    x2: Option<&str>,
    y: Option<&str>,
    convention: NeighborConvention,
) -> Result<String, Failure> {
    let graph = CayleyGraph::new(f.clone());
    let q = f.q();
    let wrap = |result: serde_json::Value| Envelope {
        schema_version: SCHEMA_VERSION,
        command: which.name(),
        n: f.n(),
        k: f.k(),
        result,
    };
    let result = match which {
        CheckKind::Gbent => value(&gbent::transform::is_gbent(f)),
        CheckKind::Bent => {
            if f.k() != 1 {
                return Err(Failure::Usage("bent needs a Boolean function (k = 1)".into()));
            }
            value(&bent_verdict(&f.component(0)))
        }
        CheckKind::Butson => value(&graph.butson_check()),
        CheckKind::Srg => {
            let x = weights(x, "x", q)?;
            let y = weights(y, "y", q)?;
            match x2 {
                Some(text) => value(&graph.srg_check_generalized(&x, &WeightSet::parse(text, q)?, &y, convention)?),
                None => value(&graph.srg_check(&x, &y, convention)?),
            }
        }
        CheckKind::Gb4 => {
            let report = gb4_check(f, convention)?;
            let passes = report.passes();
            let decomposition = decomposition_criterion_q4(f)?;
            serde_json::json!({ "passes": passes, "decomposition": decomposition, "report": report })
        }
        CheckKind::Necessary => {
            let report = necessary_condition_check(f, convention)?;
            serde_json::json!({
                "displayed": report.displayed_holds(),
                "srg_reading": report.srg_reading_holds(),
                "f_c_bent": report.all_f_c_bent(),
                "report": report,
            })
        }
        CheckKind::LocalSrg => value(&graph.local_srg_check()),
        CheckKind::CountingIdentity => {
            let x = weights(x, "x", q)?;
            let srg = graph.srg_check(&x, &x, NeighborConvention::ExcludeEndpoints)?;
            let regularity = graph.weighted_regularity();
            let identity_holds = if srg.is_certified() {
                Some(srg.counting_identity_check(&regularity)?)
            } else {
                None
            };
            value(&CountingIdentityResult {
                srg,
                regularity,
                identity_holds,
            })
        }
    };
    Ok(to_json(&wrap(result)))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { input, format } => {
            let f = load(&input)?;
            let a = analyze(&f);
            match format {
                OutputFormat::Text => print!("{}", analysis_text(&f, &a)),
                OutputFormat::Json => print!(
                    "{}",
                    to_json(&Envelope {
                        schema_version: SCHEMA_VERSION,
                        command: "analyze",
                        n: f.n(),
                        k: f.k(),
                        result: a,
                    })
                ),
            }
            Ok(())
        }
        Command::Check {
            which,
            input,
            x,
            x2,
            y,
            convention,
        } => {
            let f = load(&input)?;
            print!("{}", check(which, &f, x.as_deref(), x2.as_deref(), y.as_deref(), convention)?);
            Ok(())
        }
        Command::Audit {
            n,
            k,
            scope,
            seed,
            with_fixtures,
            convention,
            spot_checks,
            verdicts,
            budget,
            output,
            format,
        } => {
            let mut config = AuditConfig::new(n, k, scope.scope(seed));
            if !convention.is_empty() {
                config.conventions = convention;
            }
            config.include_fixtures = with_fixtures;
            config.spot_checks = spot_checks.unwrap_or(config.spot_checks);
            config.keep_verdicts = verdicts;
            config.budget = budget as u128;
            let report = audit(&config)?;
            let json = report.to_json();
            if let Some(path) = &output {
                write_output(Some(path), &json)?;
            }
            match format {
                OutputFormat::Json if output.is_none() => print!("{json}"),
                _ => print!("{}", report.summary()),
            }
            if report.has_forbidden() {
                Err(Failure::Violation)
            } else {
                Ok(())
            }
        }
        Command::Export {
            input,
            format,
            variant,
            output,
        } => {
            let f = load(&input)?;
            let text = CayleyGraph::new(f).export(format, variant)?;
            write_output(output.as_ref(), &text)
        }
        Command::Search {
            n,
            k,
            scope,
            seed,
            budget,
        } => {
            let result = search_gbent(n, k, scope.scope(seed), budget as u128)?;
            for f in &result.found {
                print!("{}", write_gbf(f));
            }
            println!("# {} gbent of {} visited (n={n} k={k})", result.found.len(), result.visited);
            Ok(())
        }
        Command::BentSet { expr, n, convention } => {
            let parts = expr
                .iter()
                .map(|e| Ok(parse_expression(e, n, 1)?.component(0)))
                .collect::<Result<Vec<_>, Failure>>()?;
            let report = bent_set_corollary_check(&parts, convention);
            let holds = report.holds();
            print!(
                "{}",
                to_json(&Envelope {
                    schema_version: SCHEMA_VERSION,
                    command: "bent-set",
                    n,
                    k: 2,
                    result: serde_json::json!({ "holds": holds, "report": report }),
                })
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
