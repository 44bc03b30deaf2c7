//! Acceptance criteria, one PASS/FAIL line each.
//!
//! A criterion that fails only because of a documented misprint in a printed
//! closed form still prints FAIL, but does not fail the test run; the unit
//! tests next to each record show that the corrected form balances.

use std::process::Command;
use std::time::{Duration, Instant};

use eulersum_core::combinatorics::{
    bell_y, bell_y_explicit, factorial, stirling_first, stirling_via_harmonics, BigInteger, ExactRational,
};
use eulersum_core::identities::{
    lookup, plan_one, registry, residual_scaling, run_plan, Family, Params, Status, VerifyOptions,
};
use eulersum_core::oracle::EvalConfig;
use eulersum_core::report::ReportDocument;

const KNOWN_MISPRINTS: [&str; 3] = ["golden-4.L1sq-n2", "eq-3.3", "eq-3.21"];

const N: u64 = 1_000_000;

const KERNEL_IDS: [&str; 12] = [
    "eq-2.1", "eq-2.2", "eq-2.10", "eq-2.11", "eq-2.12", "eq-2.13", "eq-2.21", "eq-2.27", "eq-2.28",
    "eq-2.29", "eq-2.30", "eq-1.2",
];

struct Line {
    passed: bool,
    explained: bool,
}

fn criterion(num: u32, name: &str, limit: Duration, check: impl FnOnce() -> Vec<String>) -> Line {
    let start = Instant::now();
    let offenders = check();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let passed = offenders.is_empty() && in_time;
    let explained = in_time && offenders.iter().all(|o| KNOWN_MISPRINTS.contains(&id_of(o)));
    let mut detail = String::new();
    if !in_time {
        detail.push_str(&format!("; over the {}s limit", limit.as_secs()));
    }
    if !offenders.is_empty() {
        let shown: Vec<&str> = offenders.iter().take(6).map(String::as_str).collect();
        let more = offenders.len().saturating_sub(shown.len());
        detail.push_str(&format!("; {} offending: {}", offenders.len(), shown.join(" | ")));
        if more > 0 {
            detail.push_str(&format!(" (+{more} more)"));
        }
        if explained {
            detail.push_str("; known misprints only");
        }
    }
    println!(
        "criterion {num} {name}: {} ({:.2}s){detail}",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    Line { passed, explained }
}

fn id_of(offender: &str) -> &str {
    offender.split_whitespace().next().unwrap_or(offender)
}

fn opts() -> VerifyOptions {
    VerifyOptions { config: EvalConfig::new(N), tol: None }
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Run the default grids of `ids` and report points whose residual is not
/// below `bound(family)`.
fn residuals_below<S: AsRef<str>>(ids: &[S], bound: impl Fn(Family) -> f64) -> Vec<String> {
    let mut plan = Vec::new();
    for id in ids.iter().map(AsRef::as_ref) {
        plan.extend(plan_one(id, &Params::new()).unwrap_or_else(|e| panic!("{id}: {e}")));
    }
    run_plan(&plan, &opts(), jobs())
        .into_iter()
        .filter_map(|r| {
            let limit = bound(lookup(&r.id).unwrap().family);
            match r.residual {
                Some(res) if res < limit => None,
                Some(res) => Some(format!("{} [{}] residual {res:.2e}", r.id, r.params)),
                None => Some(format!("{} [{}] {}", r.id, r.params, r.message.unwrap_or_default())),
            }
        })
        .collect()
}

fn ids_matching(prefix: &str, lo: u32, hi: u32) -> Vec<String> {
    (lo..=hi)
        .map(|i| format!("{prefix}{i}"))
        .filter(|id| lookup(id).is_ok())
        .collect()
}

fn exact_combinatorics() -> Vec<String> {
    let mut bad = Vec::new();
    for n in 1..=30u64 {
        for k in 1..=5u32 {
            let exact = ExactRational::from_integer(stirling_first(n, k as u64));
            match stirling_via_harmonics(n, k) {
                Ok(v) if v == exact => {}
                other => bad.push(format!("stirling n={n} k={k}: {other:?} vs {exact}")),
            }
        }
    }
    for n in 0..=60u64 {
        for k in 1..=4u32 {
            match bell_y_explicit(k, n) {
                Ok(v) if v == bell_y(k, n) => {}
                other => bad.push(format!("bell_Y n={n} k={k}: {other:?}")),
            }
        }
    }
    for n in 1..=20u64 {
        let row: BigInteger = (0..=n).map(|k| stirling_first(n, k)).sum();
        if row != factorial(n) {
            bad.push(format!("row sum n={n}"));
        }
    }
    bad
}

fn scaling() -> Vec<String> {
    let mut bad = Vec::new();
    for id in KERNEL_IDS {
        for (_, p) in plan_one(id, &Params::new()).unwrap() {
            let r = residual_scaling(id, &p, &[10_000, 100_000, N]).unwrap();
            let ok = r.windows(2).all(|w| w[1] < w[0] || w[1] <= 1e-12);
            if !ok {
                bad.push(format!("{id} [{p}] residuals {:.2e} {:.2e} {:.2e}", r[0], r[1], r[2]));
            }
        }
    }
    bad
}

fn full_suite() -> Vec<String> {
    let out = Command::new(env!("CARGO_BIN_EXE_eulersum"))
        .args(["verify", "--all", "--format", "json"])
        .env_remove("EULERSUM_DEFAULT_N")
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout);
    let doc = match ReportDocument::from_json(&text) {
        Ok(d) => d,
        Err(e) => return vec![format!("report does not re-parse: {e}")],
    };
    let mut bad: Vec<String> = doc
        .results
        .iter()
        .filter(|r| !r.pass && r.status != Status::Unconfirmed)
        .map(|r| format!("{} [{}] {}", r.id, r.params, r.status.as_str()))
        .collect();
    // Exit status and summary must agree with the results; a failing record
    // already makes the criterion fail, so exit 1 is not reported twice.
    let expected_exit = if bad.is_empty() { 0 } else { 1 };
    if doc.summary.failed != bad.len() {
        bad.push(format!("summary.failed = {} disagrees with results", doc.summary.failed));
    }
    if out.status.code() != Some(expected_exit) {
        bad.push(format!("exit status {:?}, expected {expected_exit}", out.status.code()));
    }
    bad
}

fn main() {
    let secs = Duration::from_secs;
    let alternating = ["eq-2.31", "eq-2.32", "eq-2.33", "eq-2.34", "eq-2.38", "eq-2.39"];
    let golden: Vec<String> = registry()
        .iter()
        .filter(|r| r.id.starts_with("golden-"))
        .map(|r| r.id.to_string())
        .collect();
    let mut structural: Vec<String> = ["eq-2.35", "eq-2.40", "eq-2.41", "eq-2.42", "eq-2.43", "eq-2.44"]
        .map(String::from)
        .to_vec();
    structural.extend(ids_matching("eq-3.", 1, 21));

    let lines = [
        criterion(1, "exact combinatorics", secs(5), exact_combinatorics),
        criterion(2, "log-moment quadrature (eq-2.14)", secs(10), || {
            residuals_below(&["eq-2.14"], |_| 1e-9)
        }),
        criterion(3, "kernel identities at N=1e6", secs(120), || residuals_below(&KERNEL_IDS, |_| 1e-6)),
        criterion(4, "alternating identities", secs(60), || residuals_below(&alternating, |_| 1e-7)),
        criterion(5, "printed closed forms", secs(120), || residuals_below(&golden, |_| 1e-7)),
        criterion(6, "structural relations", secs(300), || {
            residuals_below(&structural, |f| if f == Family::Cubic { 1e-5 } else { 1e-6 })
        }),
        criterion(7, "residual scaling over N = 1e4, 1e5, 1e6", secs(300), scaling),
        criterion(8, "verify --all --format json", secs(900), full_suite),
    ];

    let passed = lines.iter().filter(|l| l.passed).count();
    let unexplained = lines.iter().filter(|l| !l.passed && !l.explained).count();
    println!("acceptance: {passed}/{} criteria pass, {unexplained} unexplained failures", lines.len());
    if unexplained > 0 {
        std::process::exit(1);
    }
}
