use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::Signed;

use super::descriptor::{Factor, SumDescriptor};
use crate::combinatorics::to_f64;
use crate::error::{Error, Result};
use crate::numerics::{
    alternating_sum_with_tail, sum_with_tail, Compensated, RealWithError, TailModel,
};

pub const DEFAULT_N: u64 = 1_000_000;
pub const ENV_DEFAULT_N: &str = "EULERSUM_DEFAULT_N";

/// Truncation settings shared by every evaluation in a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EvalConfig {
    /// Terms used for `n^-2` series; other families are scaled from it.
    pub n: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self { n: DEFAULT_N }
    }
}

impl EvalConfig {
    pub fn new(n: u64) -> Self {
        Self { n: n.max(1000) }
    }

    /// Default config, honouring `EULERSUM_DEFAULT_N` when it parses.
    pub fn from_env() -> Self {
        std::env::var(ENV_DEFAULT_N)
            .ok()
            .and_then(|v| v.trim().replace('_', "").parse::<f64>().ok())
            .filter(|v| v.is_finite() && *v >= 1.0)
            .map(|v| Self::new(v as u64))
            .unwrap_or_default()
    }

    /// Number of terms to sum directly for `desc`.
    pub fn terms_for(&self, desc: &SumDescriptor) -> u64 {
        let n = if desc.effective_alternating() {
            // 2·10^4 pairs at the default N.
            self.n / 25
        } else if desc.outer.decay() >= 3 {
            self.n / 10
        } else {
            self.n
        };
        n.max(2000)
    }
}

enum State {
    Power { m: i32, alt: bool, acc: Compensated },
    Bell { k: usize, y: Vec<Compensated> },
    Stirling { w: Vec<Compensated> },
    Nested { m: i32, h: Compensated, acc: Compensated },
    Polylog { l: i32, x: f64, xp: f64, acc: Compensated },
    NestedPolylog { m: i32, z: f64, zp: f64, inner: Compensated, acc: Compensated },
}

impl State {
    fn new(f: &Factor) -> Self {
        match f {
            Factor::Zeta(m) => State::Power { m: *m as i32, alt: false, acc: Compensated::new() },
            Factor::Alt(m) => State::Power { m: *m as i32, alt: true, acc: Compensated::new() },
            Factor::Bell(k) => {
                let k = *k as usize;
                let mut y = vec![Compensated::new(); k + 1];
                y[0] = Compensated::with_value(1.0);
                State::Bell { k, y }
            }
            Factor::StirlingWeight(p) => {
                // w_j(0) = S(1, j)/0! = [j = 1]; index 0 unused.
                let mut w = vec![Compensated::new(); *p as usize + 1];
                w[1] = Compensated::with_value(1.0);
                State::Stirling { w }
            }
            Factor::NestedHarmonic(m) => State::Nested {
                m: *m as i32,
                h: Compensated::new(),
                acc: Compensated::new(),
            },
            Factor::PartialPolylog(l, x) => State::Polylog {
                l: *l as i32,
                x: to_f64(x),
                xp: 1.0,
                acc: Compensated::new(),
            },
            Factor::NestedPolylog(m, z) => State::NestedPolylog {
                m: *m as i32,
                z: to_f64(z),
                zp: 1.0,
                inner: Compensated::new(),
                acc: Compensated::new(),
            },
        }
    }

    /// Advance from `n − 1` to `n` and return the factor at `n`.
    #[inline]
    fn step(&mut self, n: u64, inv: f64) -> f64 {
        match self {
            State::Power { m, alt, acc } => {
                let t = inv.powi(*m);
                acc.add(if *alt && n % 2 == 0 { -t } else { t });
                acc.value()
            }
            State::Bell { k, y } => {
                // Y_j(n) = Y_j(n−1) + j·Y_{j−1}(n)/n, lower orders first.
                for j in 1..=*k {
                    let lower = y[j - 1].value();
                    y[j].add(j as f64 * lower * inv);
                }
                y[*k].value()
            }
            State::Stirling { w } => {
                // w_j(n) = w_j(n−1) + w_{j−1}(n−1)/n, higher orders first.
                for j in (2..w.len()).rev() {
                    let lower = w[j - 1].value();
                    w[j].add(lower * inv);
                }
                w[w.len() - 1].value()
            }
            State::Nested { m, h, acc } => {
                h.add(inv);
                acc.add(h.value() * inv.powi(*m));
                acc.value()
            }
            State::Polylog { l, x, xp, acc } => {
                *xp *= *x;
                acc.add(*xp * inv.powi(*l));
                acc.value()
            }
            State::NestedPolylog { m, z, zp, inner, acc } => {
                *zp *= *z;
                inner.add(*zp * inv);
                acc.add(inner.value() * inv.powi(*m));
                acc.value()
            }
        }
    }
}

/// Floating-point summands of a descriptor, `n = 1, 2, …`, each factor
/// maintained incrementally in O(1) per index.
pub struct TermGenerator {
    desc_outer: super::descriptor::Outer,
    states: Vec<(State, i32)>,
    alternating: bool,
    ratio: f64,
    ratio_pow: f64,
    n: u64,
}

impl TermGenerator {
    pub fn new(desc: &SumDescriptor) -> Self {
        Self {
            desc_outer: desc.outer,
            states: desc.factors.iter().map(|(f, e)| (State::new(f), *e as i32)).collect(),
            alternating: desc.alternating,
            ratio: desc.ratio.as_ref().map(to_f64).unwrap_or(1.0),
            ratio_pow: 1.0,
            n: 0,
        }
    }

    /// Index of the next term.
    pub fn index(&self) -> u64 {
        self.n + 1
    }

    pub fn next_term(&mut self) -> f64 {
        self.n += 1;
        let n = self.n;
        let nf = n as f64;
        let inv = 1.0 / nf;
        let mut t = self.desc_outer.weight(nf);
        for (s, e) in &mut self.states {
            t *= s.step(n, inv).powi(*e);
        }
        self.ratio_pow *= self.ratio;
        t *= self.ratio_pow;
        if self.alternating && n % 2 == 0 {
            -t
        } else {
            t
        }
    }
}

impl Iterator for TermGenerator {
    type Item = f64;
    fn next(&mut self) -> Option<f64> {
        Some(self.next_term())
    }
}

fn check_convergence(desc: &SumDescriptor) -> Result<()> {
    desc.validate()?;
    if desc.is_geometric() {
        return Ok(());
    }
    let q = desc.outer.decay();
    if q >= 2 || (q == 1 && desc.effective_alternating()) {
        Ok(())
    } else {
        Err(Error::Divergent(format!("divergent sum: {desc}")))
    }
}

const GEOMETRIC_MAX_TERMS: u64 = 10_000_000;

fn evaluate_geometric(desc: &SumDescriptor) -> Result<RealWithError> {
    let w = desc.ratio.as_ref().map(|w| to_f64(&w.abs())).unwrap_or(0.0);
    let mut gen = TermGenerator::new(desc);
    let mut acc = Compensated::new();
    let mut abs_acc = 0.0;
    let mut wp = 1.0;
    let mut n = 0u64;
    let last = loop {
        let t = gen.next_term();
        n += 1;
        if !t.is_finite() {
            return Err(Error::NonFiniteTerm { index: n as usize - 1 });
        }
        acc.add(t);
        abs_acc += t.abs();
        wp *= w;
        // Factors grow at most polylogarithmically, so once w^n is far
        // below the running sum the remainder is negligible.
        if n >= 8 && wp < 1e-18 && t.abs() <= 1e-18 * acc.value().abs().max(1e-300) {
            break t.abs();
        }
        if n >= GEOMETRIC_MAX_TERMS {
            return Err(Error::NoConvergence(format!("geometric sum {desc} not settled")));
        }
    };
    let tail = 4.0 * last / (1.0 - w);
    Ok(RealWithError::new(acc.value(), tail + 16.0 * f64::EPSILON * abs_acc))
}

/// Evaluate a descriptor with `config`, without the cache.
pub fn evaluate_uncached(desc: &SumDescriptor, config: &EvalConfig) -> Result<RealWithError> {
    check_convergence(desc)?;
    if desc.is_geometric() {
        return evaluate_geometric(desc);
    }
    let alt = desc.effective_alternating();
    let oscillating = desc.factors.iter().any(|(f, _)| f.oscillates());
    let n = config.terms_for(desc);
    let power = desc.outer.decay();
    let log_degree = desc.log_degree();
    let mut gen = TermGenerator::new(desc);
    let term = move |_| gen.next_term();
    if alt && !oscillating {
        alternating_sum_with_tail(term, 1, n, TailModel::PowerLog { power, log_degree })
    } else {
        // Oscillating factors break the strict sign pattern of an
        // alternating series; pairing still smooths the summand, whose
        // pair sums decay one power faster.
        let power = power + u32::from(alt);
        sum_with_tail(term, 1, n, TailModel::PowerLog { power, log_degree })
    }
}

type CacheKey = (SumDescriptor, u64);

fn cache() -> &'static Mutex<HashMap<CacheKey, RealWithError>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, RealWithError>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Evaluate `desc`; results are cached per descriptor and truncation.
pub fn evaluate(desc: &SumDescriptor, config: &EvalConfig) -> Result<RealWithError> {
    let key = (desc.clone(), config.n);
    if let Some(v) = cache().lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(*v);
    }
    let v = evaluate_uncached(desc, config)?;
    Ok(*cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .entry(key)
        .or_insert(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::rational;
    use crate::constants::{alt_zeta, ln2, polylog, zeta};

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    #[test]
    fn s_2_0_6() {
        let d = SumDescriptor::power(6).with(Factor::Zeta(2), 1);
        let v = evaluate(&d, &cfg()).unwrap();
        assert!((v.value - 1.021_897_096_614_780_3).abs() < 1e-12, "{v}");
    }

    #[test]
    fn harmonic_kernel_is_zeta2() {
        let d = SumDescriptor::kernel(0, 1).with(Factor::Zeta(1), 1);
        let v = evaluate(&d, &cfg()).unwrap();
        let z2 = zeta(2).unwrap().value;
        assert!((v.value - z2).abs() < 1e-10, "{v}");
        assert!((v.value - z2).abs() <= 5.0 * v.err + 1e-14, "{v}");
    }

    #[test]
    fn alt_linear_sum_closed_form() {
        let d = SumDescriptor::power(3).with(Factor::Alt(1), 1).alternating();
        let v = evaluate(&d, &cfg()).unwrap();
        let l = ln2().value;
        let want = 1.5 * zeta(4).unwrap().value + 0.5 * zeta(2).unwrap().value * l * l
            - l.powi(4) / 12.0
            - 2.0 * polylog(4, &rational(1, 2)).unwrap().value;
        assert!((v.value - want).abs() < 1e-11, "{v} vs {want}");
    }

    #[test]
    fn conditionally_convergent() {
        // Σ (−1)^{n−1} H_n / n = ζ(2)/2 − ln²2/2
        let d = SumDescriptor::power(1).with(Factor::Zeta(1), 1).alternating();
        let v = evaluate(&d, &cfg()).unwrap();
        let l = ln2().value;
        let want = 0.5 * zeta(2).unwrap().value - 0.5 * l * l;
        assert!((v.value - want).abs() < 1e-11, "{v} vs {want}");
    }

    #[test]
    fn oscillating_factor_non_alternating() {
        // L_n(1) flips around ln 2 every step; the result must not depend on N.
        let d = SumDescriptor::power(2).with(Factor::Alt(1), 1);
        let a = evaluate(&d, &EvalConfig::new(200_000)).unwrap();
        let b = evaluate(&d, &EvalConfig::new(1_000_000)).unwrap();
        assert!((a.value - b.value).abs() < 1e-10, "{a} vs {b}");
    }

    #[test]
    fn geometric() {
        // Σ ζ_n(1, 1/2)·(1/2)^n/n ... simplest: Σ (1/2)^n/n^4 = Li_4(1/2)
        let d = SumDescriptor::power(4).ratio(rational(1, 2));
        let v = evaluate(&d, &cfg()).unwrap();
        let want = polylog(4, &rational(1, 2)).unwrap().value;
        assert!((v.value - want).abs() < 1e-15, "{v}");
        // ratio −1 folds into the sign: Σ (−1)^n/n² = −ζ̄(2)
        let d = SumDescriptor::power(2).ratio(rational(-1, 1));
        let v = evaluate(&d, &cfg()).unwrap();
        assert!((v.value + alt_zeta(2).unwrap().value).abs() < 1e-12, "{v}");
    }

    #[test]
    fn divergent() {
        let d = SumDescriptor::power(1).with(Factor::Zeta(1), 1);
        assert!(matches!(evaluate(&d, &cfg()), Err(Error::Divergent(_))));
        let d = SumDescriptor::shift(1, 0);
        assert!(matches!(evaluate(&d, &cfg()), Err(Error::Divergent(_))));
    }

    #[test]
    fn generator_matches_exact_terms() {
        let descs = vec![
            SumDescriptor::power(2)
                .with(Factor::Zeta(1), 2)
                .with(Factor::Alt(2), 1)
                .alternating(),
            SumDescriptor::kernel(1, 3).with(Factor::Bell(3), 1),
            SumDescriptor::shift(2, 1).with(Factor::StirlingWeight(3), 1),
            SumDescriptor::power(3).with(Factor::NestedHarmonic(2), 1),
            SumDescriptor::power(2)
                .with(Factor::PartialPolylog(2, rational(-1, 2)), 1)
                .with(Factor::NestedPolylog(2, rational(1, 3)), 1)
                .ratio(rational(-1, 1)),
        ];
        for d in descs {
            let mut gen = TermGenerator::new(&d);
            for n in 1..=120u64 {
                let t = gen.next_term();
                let e = to_f64(&d.term_exact(n));
                assert!((t - e).abs() <= 1e-12 * e.abs(), "{d} at n={n}: {t} vs {e}");
            }
        }
    }
}
