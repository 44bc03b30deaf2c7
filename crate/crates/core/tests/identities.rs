use eulersum_core::combinatorics::{bell_y, rational, to_f64};
use eulersum_core::identities::{
    lookup, plan_all, registry, residual_scaling, run_plan, verify, verify_all, Params, Status, VerifyOptions,
};
use eulersum_core::oracle::EvalConfig;

fn cfg() -> EvalConfig {
    EvalConfig::new(200_000)
}

fn residual(id: &str, p: &Params, cfg: &EvalConfig) -> f64 {
    let rec = lookup(id).unwrap();
    rec.lhs(p, cfg).unwrap().value - rec.rhs(p, cfg).unwrap().value
}

#[test]
fn eq_2_35_symmetric_in_first_two_arguments() {
    let rec = lookup("eq-2.35").unwrap();
    let mut checked = 0;
    for p in rec.grid.iter().filter(|p| p.int("l1") != p.int("l2") || p.rat("x") != p.rat("y")) {
        let swapped = p
            .clone()
            .with("l1", p.rat("l2"))
            .with("l2", p.rat("l1"))
            .with("x", p.rat("y"))
            .with("y", p.rat("x"));
        let (a, b) = (residual("eq-2.35", p, &cfg()), residual("eq-2.35", &swapped, &cfg()));
        assert!((a - b).abs() < 1e-12, "[{p}]: {a:e} vs {b:e}");
        checked += 1;
    }
    assert!(checked > 10);
}

#[test]
fn eq_2_10_at_r_zero_is_eq_2_1() {
    let (general, special) = (lookup("eq-2.10").unwrap(), lookup("eq-2.1").unwrap());
    for m in 1..=3 {
        for k in [1, 2, 3, 5, 10] {
            let p = Params::new().with_int("m", m).with_int("k", k);
            // r = 0 is outside eq-2.10's stated domain, so the unchecked side is used.
            assert!(general.check(&p.clone().with_int("r", 0)).is_err());
            let a = general.lhs(&p.clone().with_int("r", 0), &cfg()).unwrap();
            let b = special.lhs(&p, &cfg()).unwrap();
            assert!((a.value - b.value).abs() < 1e-12, "m={m} k={k}");
        }
    }
}

#[test]
fn eq_2_27_and_eq_2_21_differ_by_partial_fractions() {
    // k·A(0,k) − A(0,1) = (k−1)·A(1,k) for A(r,k) = Σ w_p/((n+r)(n+k)).
    let two_21 = lookup("eq-2.21").unwrap();
    let two_27 = lookup("eq-2.27").unwrap();
    for p in 2..=4 {
        let at = |k: i64| Params::new().with_int("p", p).with_int("k", k);
        for k in [2i64, 3, 5, 10] {
            let left = two_21.rhs(&at(k), &cfg()).unwrap().value * k as f64 - two_21.rhs(&at(1), &cfg()).unwrap().value;
            let right = two_27.rhs(&at(k).with_int("r", 1), &cfg()).unwrap().value;
            assert!((left - right).abs() < 1e-12, "p={p} k={k}: {left} vs {right}");
            // Closed forms agree exactly: both reduce to Y_p(k−1)/p, with Y_p(0) = 0.
            let exact = to_f64(&(bell_y(p as u32, k as u64 - 1) / rational(p, 1)));
            assert!((right - exact).abs() < 1e-12 * exact.abs());
        }
        assert_eq!(bell_y(p as u32, 0), rational(0, 1));
    }
}

#[test]
fn residual_scaling_shrinks() {
    let p: Params = "m=2,k=5".parse().unwrap();
    let r = residual_scaling("eq-2.1", &p, &[10_000, 100_000]).unwrap();
    assert_eq!(r.len(), 2);
    assert!(r.iter().all(|v| *v < 1e-8));
    assert!(residual_scaling("eq-2.1", &p, &[10_000]).is_err());
    assert!(residual_scaling("eq-2.10", &"m=1,k=2,r=3".parse().unwrap(), &[10_000, 20_000]).is_err());
}

#[test]
fn parallel_runs_keep_order() {
    let opts = VerifyOptions { config: EvalConfig::new(20_000), tol: None };
    let plan = plan_all(Some("eq-2.2*"), &Params::new());
    let serial = run_plan(&plan, &opts, 1);
    let parallel = run_plan(&plan, &opts, 4);
    assert_eq!(serial, parallel);
    assert!(serial.iter().all(|r| r.id.starts_with("eq-2.2")));
}

#[test]
fn whole_registry_at_low_truncation() {
    // Nothing errors, and everything outside the quoted or misprinted
    // records passes even at N = 5·10^4.
    let opts = VerifyOptions { config: EvalConfig::new(50_000), tol: None };
    let results = verify_all(&opts, None, 2);
    assert!(results.len() >= 45);
    for r in &results {
        assert_ne!(r.status, Status::Error, "{} [{}]: {:?}", r.id, r.params, r.message);
        let known = ["golden-4.L1sq-n2", "eq-3.3", "eq-3.21"].contains(&r.id.as_str());
        if !known {
            assert_eq!(r.status, Status::Pass, "{} [{}] residual {:?}", r.id, r.params, r.residual);
        }
    }
    let ids: Vec<&str> = registry().iter().map(|r| r.id).collect();
    assert!(ids.iter().all(|id| results.iter().any(|r| r.id == *id)), "a record has no valid grid point");
}

#[test]
fn tolerance_override_and_pass_rule() {
    let p: Params = "k=5".parse().unwrap();
    let tight = VerifyOptions { config: cfg(), tol: Some(1e-30) };
    let r = verify("eq-2.12", &p, &tight).unwrap();
    // The bound never drops below five times the combined error estimate.
    let (l, rh) = (r.lhs.unwrap(), r.rhs.unwrap());
    assert_eq!(r.pass, r.residual.unwrap() <= 5.0 * (l.err + rh.err));
    assert_eq!(r.tol, 1e-30);
}
