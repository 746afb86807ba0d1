//! Acceptance criteria 1-13, one PASS/FAIL line each.

use std::time::{Duration, Instant};

use sp6flags::census::{run_census, CensusConfig, FiberKey, Level, Mode};
use sp6flags::checks::{
    suite_canary, suite_canonicalize, suite_composition, suite_covariance, suite_f2poly, suite_freudenthal,
    suite_invariance, suite_phi, suite_quaternion, suite_stabilizer, suite_witness, SuiteOutcome,
};

const SEED: u64 = 20_240_601;

struct Line {
    id: u32,
    title: &'static str,
    ok: bool,
    detail: String,
}

fn from_suite(id: u32, title: &'static str, out: SuiteOutcome, limit: Option<Duration>) -> Line {
    let in_time = limit.is_none_or(|l| out.elapsed <= l);
    let detail = format!(
        "{} checks in {:.2?}{}{}",
        out.checked,
        out.elapsed,
        limit.map(|l| format!(" (limit {l:?})")).unwrap_or_default(),
        if out.failures.is_empty() { String::new() } else { format!("; failures: {:?}", out.failures) }
    );
    Line { id, title, ok: out.passed() && in_time, detail }
}

fn x_census() -> Line {
    let start = Instant::now();
    let rep = run_census(&CensusConfig { workers: 8, ..CensusConfig::new(3, Level::X) }).expect("census runs");
    let elapsed = start.elapsed();
    let get = |i| rep.fiber_counts.get(&FiberKey { i, j: None }).copied();
    let ok = get(1) == Some(1_516_320)
        && get(2) == Some(1_632_960)
        && rep.total() == 3_149_280
        && rep.is_match
        && elapsed <= Duration::from_secs(120);
    Line {
        id: 12,
        title: "F3 census, X level",
        ok,
        detail: format!(
            "{} in {elapsed:.2?}",
            rep.fiber_counts.iter().map(|(k, n)| format!("{k}: {n}")).collect::<Vec<_>>().join(", ")
        ),
    }
}

fn v_census() -> Line {
    let start = Instant::now();
    let rep = run_census(&CensusConfig { workers: 8, ..CensusConfig::new(3, Level::V) }).expect("census runs");
    let elapsed = start.elapsed();
    let fibers_ok = rep.fiber_counts.len() == 4 && rep.fiber_counts.values().all(|&n| n == 382_112_640);
    let brute =
        run_census(&CensusConfig { mode: Mode::Brute, seed: SEED, workers: 8, ..CensusConfig::new(3, Level::V) })
            .expect("census runs");
    let ok = fibers_ok
        && rep.total() == 1_528_450_560
        && rep.is_match
        && brute.is_match
        && brute.brute_mismatches == 0
        && elapsed <= Duration::from_secs(600);
    let detail = format!(
        "total {} in {elapsed:.2?}; brute sample of {} x agrees: {}",
        rep.total(),
        brute.scanned,
        brute.is_match
    );
    Line { id: 13, title: "F3 census, V level", ok, detail }
}

fn main() {
    let s = |n| Some(Duration::from_secs(n));
    let lines = vec![
        from_suite(1, "phi^2 is scalar", suite_phi(SEED, 1000), s(30)),
        from_suite(2, "covariance of phi", suite_covariance(SEED, 300), s(30)),
        from_suite(3, "Sp6 invariance and characters", suite_invariance(SEED, 500), s(60)),
        from_suite(4, "block identity canary", suite_canary(SEED, 0), None),
        from_suite(5, "f2 normal-form polynomial", suite_f2poly(SEED, 500), None),
        from_suite(6, "composition algebras", suite_composition(SEED, 1000), s(60)),
        from_suite(7, "canonicalization", suite_canonicalize(SEED, 500), None),
        from_suite(8, "witness matrices", suite_witness(SEED, 0), None),
        from_suite(9, "stabilizer dimensions", suite_stabilizer(SEED, 100), None),
        from_suite(10, "quaternion triangle", suite_quaternion(SEED, 50), s(120)),
        from_suite(11, "Freudenthal algebras", suite_freudenthal(SEED, 500), None),
        x_census(),
        v_census(),
    ];
    for l in &lines {
        println!("{} criterion {:>2} {}: {}", if l.ok { "PASS" } else { "FAIL" }, l.id, l.title, l.detail);
    }
    let failed: Vec<u32> = lines.iter().filter(|l| !l.ok).map(|l| l.id).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria passed", lines.len());
}
