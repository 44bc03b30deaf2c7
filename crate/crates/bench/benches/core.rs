use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use eulersum_core::combinatorics::{bell_y, stirling_first, stirling_via_harmonics};
use eulersum_core::identities::{verify, Params, VerifyOptions};
use eulersum_core::oracle::integrals::log_moment;
use eulersum_core::oracle::{evaluate_uncached, parse_sum_spec, EvalConfig};

fn combinatorics(c: &mut Criterion) {
    c.bench_function("stirling_first(30, 5)", |b| b.iter(|| stirling_first(black_box(30), black_box(5))));
    c.bench_function("stirling_via_harmonics(30, 5)", |b| {
        b.iter(|| stirling_via_harmonics(black_box(30), black_box(5)))
    });
    c.bench_function("bell_y(4, 60)", |b| b.iter(|| bell_y(black_box(4), black_box(60))));
}

fn sums(c: &mut Criterion) {
    let cfg = EvalConfig::new(100_000);
    let mut g = c.benchmark_group("evaluate N=1e5");
    for spec in ["S[1;0;p=2]", "S[1^2,2;0;p=3]", "Sbar[0;1^2;p=2]", "K[m=2,k=5,r=1,type=zeta]", "ST[p=3,k=2]"] {
        let desc = parse_sum_spec(spec).unwrap();
        g.bench_function(spec, |b| b.iter(|| evaluate_uncached(black_box(&desc), &cfg).unwrap()));
    }
    g.finish();
}

fn quadrature(c: &mut Criterion) {
    c.bench_function("log_moment(5, 3)", |b| b.iter(|| log_moment(black_box(5), black_box(3)).unwrap()));
}

fn identities(c: &mut Criterion) {
    // Cached sums make repeats cheap; this measures the closed-form side and
    // the bookkeeping around it.
    let opts = VerifyOptions { config: EvalConfig::new(100_000), tol: None };
    let p: Params = "k=5".parse().unwrap();
    c.bench_function("verify eq-2.12 k=5 (cached)", |b| b.iter(|| verify("eq-2.12", black_box(&p), &opts).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = combinatorics, sums, quadrature, identities
}
criterion_main!(benches);
