//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, with timings.
//! Run with `cargo test -p gbent --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gbent::cyclotomic::CyclotomicInteger;
use gbent::graph::{classical_srg_check, CayleyGraph, NeighborConvention};
use gbent::parse::parse_expression;
use gbent::theorems::{
    audit, gb4_check, is_degenerate_gb4_satisfier, necessary_condition_check, AuditConfig,
    AuditReport, AuditScope, Claim,
};
use gbent::transform::{
    correlation_transform, crosscorrelation, crosscorrelation_via_spectrum,
    function_from_spectrum, gwht_fast, gwht_inverse, gwht_naive, is_gbent, Spectrum,
};
use gbent::GeneralizedBooleanFunction;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const ALL: NeighborConvention = NeighborConvention::AllVertices;
const EXCLUDE: NeighborConvention = NeighborConvention::ExcludeEndpoints;

fn cz(k: u32, coeffs: &[i64]) -> CyclotomicInteger {
    CyclotomicInteger::from_coeffs(k, coeffs.to_vec()).unwrap()
}

fn random_function(rng: &mut ChaCha8Rng, n: u32, k: u32) -> GeneralizedBooleanFunction {
    let q = 1u32 << k;
    let table = (0..1usize << n).map(|_| rng.random_range(0..q)).collect();
    GeneralizedBooleanFunction::new(n, k, table).unwrap()
}

fn every_function(n: u32, k: u32) -> impl Iterator<Item = GeneralizedBooleanFunction> {
    let q = 1u64 << k;
    let size = 1usize << n;
    (0..q.pow(size as u32)).map(move |code| {
        GeneralizedBooleanFunction::from_fn(n, k, |x| ((code >> (k as usize * x)) % q) as u32).unwrap()
    })
}

/// `H_f(u)` straight from the definition: bucket `(-1)^{u.x}` by `f(x)`.
fn spectrum_oracle(f: &GeneralizedBooleanFunction, u: usize) -> CyclotomicInteger {
    let mut counts = vec![0i64; f.q() as usize];
    for x in 0..f.len() {
        counts[f.at(x) as usize] += if (u & x).count_ones() % 2 == 0 { 1 } else { -1 };
    }
    CyclotomicInteger::from_exponent_counts(f.k(), &counts)
}

fn parseval_exact(s: &Spectrum) -> bool {
    s.parseval_sum() == CyclotomicInteger::from_integer(s.k(), 1i64 << (2 * s.n()))
}

fn tally_exceptions(report: &AuditReport, claim: Claim, convention: Option<NeighborConvention>) -> Result<(u64, u64), String> {
    let t = report
        .tally(claim, convention)
        .ok_or_else(|| format!("no tally for {}", claim.name()))?;
    Ok((t.applicable, t.exceptions))
}

fn criterion_1() -> Check {
    let f = parse_expression("x1*x2 + 2*x1", 2, 2).map_err(|e| e.to_string())?;
    ensure!(f.table() == vec![0, 0, 2, 3], "truth table {:?}", f.table());
    let one = cz(2, &[1, 0]);
    let (m1, mi) = (cz(2, &[-1, 0]), cz(2, &[0, -1]));
    let expected = [
        [&one, &one, &m1, &mi],
        [&one, &one, &mi, &m1],
        [&m1, &mi, &one, &one],
        [&mi, &m1, &one, &one],
    ];
    let matrix = CayleyGraph::new(f.clone()).multiplicative_matrix().map_err(|e| e.to_string())?;
    for (a, row) in expected.iter().enumerate() {
        for (b, &entry) in row.iter().enumerate() {
            ensure!(matrix[a][b] == *entry, "A[{a}][{b}] = {}", matrix[a][b]);
        }
    }
    let eigen = [cz(2, &[1, -1]), cz(2, &[-1, 1]), cz(2, &[3, 1]), cz(2, &[1, -1])];
    let spectrum = gwht_fast(&f);
    for (u, value) in eigen.iter().enumerate() {
        ensure!(spectrum.value(u) == *value, "H({u}) = {}", spectrum.value(u));
        ensure!(spectrum_oracle(&f, u) == *value, "oracle H({u})");
    }
    let check = CayleyGraph::new(f).eigen_verify_exact().map_err(|e| e.to_string())?;
    ensure!(check.verified, "character vectors are not eigenvectors");
    Ok(())
}

fn criterion_2() -> Check {
    let f = parse_expression("x1 + 2*(x1*x2 (+) x3*x4)", 4, 2).map_err(|e| e.to_string())?;
    ensure!(is_gbent(&f).gbent, "not gbent");
    ensure!((0..16).all(|u| spectrum_oracle(&f, u).norm_squared() == cz(2, &[16, 0])), "oracle norms");
    ensure!(CayleyGraph::new(f.clone()).butson_check().butson, "not Butson");
    let gb4 = gb4_check(&f, ALL).map_err(|e| e.to_string())?;
    ensure!(gb4.passes(), "gb4 conditions: {gb4:?}");
    let nec = necessary_condition_check(&f, ALL).map_err(|e| e.to_string())?;
    ensure!(nec.entries.len() == 2 && nec.passes() && nec.all_f_c_bent(), "necessary condition: {nec:?}");
    Ok(())
}

fn criterion_3() -> Check {
    let mut config = AuditConfig::new(2, 2, AuditScope::Exhaustive);
    config.max_logged_per_claim = usize::MAX;
    let report = audit(&config).map_err(|e| e.to_string())?;
    ensure!(report.tallies.functions == 256, "{} functions", report.tallies.functions);
    for (claim, conv) in [
        (Claim::GbentIffButson, None),
        (Claim::GbentIffDecomposition, None),
        (Claim::GbentImpliesGb4, Some(ALL)),
    ] {
        let (applicable, exceptions) = tally_exceptions(&report, claim, conv)?;
        ensure!(applicable > 0 && exceptions == 0, "{}: {exceptions} exceptions", claim.name());
    }
    // Independent count of the equivalences.
    let mut gbent = 0;
    for f in every_function(2, 2) {
        let g = is_gbent(&f).gbent;
        let butson = CayleyGraph::new(f.clone()).butson_direct().butson;
        let a0 = f.component(0);
        let a1 = f.component(1);
        let decomposition = gbent::transform::is_bent(&a1) && gbent::transform::is_bent(&a0.xor(&a1).unwrap());
        ensure!(g == butson && g == decomposition, "disagreement on {:?}", f.table());
        gbent += u64::from(g);
    }
    ensure!(report.tallies.gbent == gbent, "gbent count {} vs {gbent}", report.tallies.gbent);
    let (_, converse) = tally_exceptions(&report, Claim::Gb4ImpliesGbent, Some(ALL))?;
    let logged: Vec<_> = report
        .exceptions
        .iter()
        .filter(|e| e.claim == Claim::Gb4ImpliesGbent && e.convention == Some(ALL))
        .collect();
    ensure!(logged.len() as u64 == converse, "{} of {converse} converse exceptions logged", logged.len());
    for e in logged {
        let f = GeneralizedBooleanFunction::new(2, 2, e.table.clone()).unwrap();
        ensure!(!is_gbent(&f).gbent && gb4_check(&f, ALL).unwrap().passes(), "{:?} is not an exception", e.table);
        ensure!(is_degenerate_gb4_satisfier(&f) && !e.forbidden, "{:?} is not degenerate", e.table);
    }
    ensure!(!report.has_forbidden(), "forbidden exceptions:\n{}", report.summary());
    println!("    gbent {gbent} of 256; converse exceptions (all degenerate): {converse}");
    Ok(())
}

/// Every gbent function at `n = 2`, `q = 2^k` satisfies the necessary
/// condition and has every `f_c` bent. `q^4` tables are visited: 4096 for
/// `k = 3`, and `k = 4` adds a 65536-function run with eight masks `c`.
fn criterion_4() -> Check {
    for (k, total) in [(3u32, 4096u64), (4, 65536)] {
        let report = audit(&AuditConfig::new(2, k, AuditScope::Exhaustive)).map_err(|e| e.to_string())?;
        ensure!(report.tallies.functions == total, "{} functions for k={k}", report.tallies.functions);
        let gbent = report.tallies.gbent;
        ensure!(gbent > 0, "no gbent functions found for k={k}");
        for (claim, conv) in [
            (Claim::GbentImpliesFcBent, None),
            (Claim::GbentImpliesNecessaryDisplayed, Some(ALL)),
            (Claim::GbentImpliesNecessarySrg, Some(ALL)),
        ] {
            let (applicable, exceptions) = tally_exceptions(&report, claim, conv)?;
            ensure!(
                applicable == gbent && exceptions == 0,
                "{} (k={k}): {applicable} checked, {exceptions} exceptions",
                claim.name()
            );
        }
        ensure!(!report.has_forbidden(), "forbidden exceptions:\n{}", report.summary());
        println!("    k={k}: gbent {gbent} of {total}, each with every f_c bent and the condition for all c");
    }
    Ok(())
}

fn criterion_5() -> Check {
    for k in [2, 3] {
        for f in every_function(2, k) {
            let fast = gwht_fast(&f);
            ensure!(fast == gwht_naive(&f).unwrap(), "fast != naive on {:?}", f.table());
            ensure!((0..4).all(|u| fast.value(u) == spectrum_oracle(&f, u)), "oracle on {:?}", f.table());
            ensure!(parseval_exact(&fast), "Parseval on {:?}", f.table());
            ensure!(function_from_spectrum(&fast).unwrap() == f, "round trip on {:?}", f.table());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=8 {
        for k in 1..=3 {
            for _ in 0..100 {
                let f = random_function(&mut rng, n, k);
                let fast = gwht_fast(&f);
                ensure!(fast == gwht_naive(&f).unwrap(), "fast != naive on {:?}", f.table());
                ensure!(parseval_exact(&fast), "Parseval on {:?}", f.table());
                let back = gwht_inverse(&fast).unwrap();
                let roots: Vec<_> = (0..f.len()).map(|x| CyclotomicInteger::root(f.at(x), k).unwrap()).collect();
                ensure!(back == roots, "inverse on {:?}", f.table());
            }
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..50 {
        let n = 1 + i % 6;
        let k = rng.random_range(1..=3);
        let g = CayleyGraph::new(random_function(&mut rng, n, k));
        ensure!(g.eigen_verify_exact().unwrap().verified, "exact eigenvectors fail on {:?}", g.function().table());
    }
    let mut worst = 0f64;
    for n in 1..=8 {
        for k in 1..=3 {
            let g = CayleyGraph::new(random_function(&mut rng, n, k));
            let check = g.eigen_verify_numeric(1e-9).unwrap();
            worst = worst.max(check.max_error);
            ensure!(check.matched, "numeric mismatch {} at n={n} k={k}", check.max_error);
        }
    }
    println!("    largest numeric deviation {worst:.2e}");
    Ok(())
}

fn criterion_7() -> Check {
    let report = audit(&AuditConfig::new(2, 2, AuditScope::Exhaustive)).map_err(|e| e.to_string())?;
    let (applicable, exceptions) = tally_exceptions(&report, Claim::CountingIdentity, Some(EXCLUDE))?;
    ensure!(applicable > 0 && exceptions == 0, "{exceptions} of {applicable} certificates fail");
    // Recompute every (X; X) certificate independently of the audit.
    let mut seen = 0;
    for f in every_function(2, 2) {
        let g = CayleyGraph::new(f.clone());
        let v = g.order() as i128;
        for x in gbent::weights::WeightSet::subsets_of_size(4, 2) {
            let report = g.srg_check(&x, &x, EXCLUDE).unwrap();
            if let Some((e, d)) = report.parameters() {
                let r = (1..4).filter(|&t| x.contains(f.at(t))).count() as i128;
                let (e, d) = (e.unwrap_or(0) as i128, d.unwrap_or(0) as i128);
                ensure!(r * (r - e - 1) == d * (v - r - 1), "identity fails on {:?}, X = {x}", f.table());
                seen += 1;
            }
        }
    }
    ensure!(seen == applicable, "audit saw {applicable} certificates, recount {seen}");
    let bent = parse_expression("x1*x2 (+) x3*x4", 4, 1).unwrap().component(0);
    let p = classical_srg_check(&bent).params().ok_or("classical graph not certified")?;
    ensure!((p.v, p.r, p.lambda, p.mu) == (16, 6, 2, 2), "parameters {p:?}");
    let (v, r, lambda, mu) = (p.v as u64, p.r as u64, p.lambda, p.mu);
    ensure!(r * (r - lambda - 1) == 18 && mu * (v - r - 1) == 18, "6*3 != 2*9");
    println!("    {applicable} (X;X) certificates, all satisfy the identity");
    Ok(())
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let n = rng.random_range(1..=6);
        let k = rng.random_range(1..=3);
        let f = random_function(&mut rng, n, k);
        let q = f.q() as usize;
        let count = |h: &GeneralizedBooleanFunction, j: usize| (1..h.len()).filter(|&t| h.at(t) as usize == j).count();
        let comp = f.complement();
        ensure!(
            (0..q).all(|j| count(&comp, q - 1 - j) == count(&f, j)),
            "reversal fails on {:?}",
            f.table()
        );
        let g = CayleyGraph::new(f);
        ensure!(g.complement().weighted_regularity().is_reversal_of(&g.weighted_regularity()), "library reversal");
    }
    let report = audit(&AuditConfig::new(2, 2, AuditScope::Exhaustive)).map_err(|e| e.to_string())?;
    for conv in [ALL, EXCLUDE] {
        let (applicable, exceptions) = tally_exceptions(&report, Claim::ComplementTransport, Some(conv))?;
        ensure!(applicable > 0 && exceptions == 0, "transport under {}: {exceptions} of {applicable}", conv.name());
        println!("    {} certified instances transported under {}", applicable, conv.name());
    }
    Ok(())
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..100 {
        let n = 1 + i % 6;
        let k = rng.random_range(1..=3);
        let f = random_function(&mut rng, n, k);
        let g = random_function(&mut rng, n, k);
        let (hf, hg) = (gwht_fast(&f), gwht_fast(&g));
        for z in 0..f.len() {
            let direct = crosscorrelation(&f, &g, z).unwrap();
            ensure!(direct == crosscorrelation_via_spectrum(&f, &g, z).unwrap(), "C(f,g)({z}) differs");
            let forward = correlation_transform(&f, &g, z).unwrap();
            let product = hf.value(z).checked_mul(&hg.value(z).conjugate()).unwrap();
            ensure!(forward == product, "forward identity at {z}");
        }
    }
    Ok(())
}

fn criterion_10() -> Check {
    let f = GeneralizedBooleanFunction::from_fn(20, 2, |x| ((x * 2_654_435_761) >> 7) as u32 & 3).unwrap();
    let start = Instant::now();
    let s = gwht_fast(&f);
    let transform = start.elapsed();
    ensure!(transform < Duration::from_secs(5), "gwht_fast n=20 took {transform:?}");
    ensure!(parseval_exact(&s), "Parseval at n=20");
    let mut config = AuditConfig::new(4, 2, AuditScope::Random { count: 100_000, seed: 42 });
    config.include_fixtures = true;
    let start = Instant::now();
    let report = audit(&config).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(120), "audit took {elapsed:?}");
    ensure!(!report.has_forbidden(), "forbidden exceptions:\n{}", report.summary());
    ensure!(report.tallies.gbent >= report.fixtures_included, "fixtures not gbent");
    println!("    gwht n=20: {transform:.2?}; audit 10^5 + {} fixtures: {elapsed:.2?}", report.fixtures_included);
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check, Duration); 10] = [
        ("quadratic golden values", criterion_1, Duration::from_secs(1)),
        ("n=4 quaternary function is gbent, Butson, GB4, necessary", criterion_2, Duration::from_secs(1)),
        ("exhaustive audit n=2 k=2", criterion_3, Duration::from_secs(5)),
        ("exhaustive audit n=2 k=3", criterion_4, Duration::from_secs(60)),
        ("transform correctness", criterion_5, Duration::MAX),
        ("eigenvalues are the transform", criterion_6, Duration::MAX),
        ("counting identity", criterion_7, Duration::MAX),
        ("complement reversal and transport", criterion_8, Duration::MAX),
        ("crosscorrelation identities", criterion_9, Duration::MAX),
        ("performance", criterion_10, Duration::MAX),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > *limit {
            outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
        }
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({elapsed:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({elapsed:.2?}): {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
