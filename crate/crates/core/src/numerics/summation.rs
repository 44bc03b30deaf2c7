//! Compensated summation and truncated series with fitted tails.
//!
//! Every infinite series is summed in consecutive pairs `(n, n + 1)`. For
//! alternating series this turns a conditionally convergent sum into an
//! absolutely convergent one; for series whose terms carry an oscillating
//! factor such as `L_n(1)` it removes the oscillation from the tail. The sum
//! of the pairs beyond the cut-off is estimated by fitting the last stretch
//! of pair values to `Σ c_{a,i} ln^i(n) / n^(q+a)` and integrating the fit in
//! closed form.

use nalgebra::{DMatrix, DVector};

use super::RealWithError;
use crate::error::{Error, Result};

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_value(v: f64) -> Self {
        Self { sum: v, comp: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Sum of a finite slice with compensated accumulation.
pub fn compensated_sum(terms: &[f64]) -> Result<f64> {
    let mut acc = Compensated::new();
    for (index, &t) in terms.iter().enumerate() {
        if !t.is_finite() {
            return Err(Error::NonFiniteTerm { index });
        }
        acc.add(t);
    }
    Ok(acc.value())
}

/// Asymptotic shape of the terms of a series, used to estimate its tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum TailModel {
    /// No tail correction; the series is assumed to have converged at `N`.
    None,
    /// `|term(n)| ~ P(ln n) / n^power` with `deg P = log_degree`.
    PowerLog { power: u32, log_degree: u32 },
}

/// Most asymptotic orders `n^-q, n^-(q+1), ...` in the tail fit.
const MAX_FIT_ORDERS: usize = 4;
/// Budget for fit parameters (orders × log powers). Past it the columns
/// become too collinear, and the fit loses more than the dropped orders add.
const FIT_PARAMS: usize = 12;
/// The fit window spans pair indices `[M / FIT_WINDOW, M)`.
const FIT_WINDOW: f64 = 32.0;

fn fit_orders(log_degree: u32) -> usize {
    (FIT_PARAMS / (log_degree as usize + 1)).clamp(2, MAX_FIT_ORDERS)
}

/// Sum `term(n)` for `n = start..=end` and add an estimate of the rest.
///
/// `term` is called exactly once per index, in increasing order, so it may
/// carry incremental state. If the number of terms is odd, `end` is moved up
/// by one so the terms pair up.
pub fn sum_with_tail<F>(term: F, start: u64, end: u64, tail: TailModel) -> Result<RealWithError>
where
    F: FnMut(u64) -> f64,
{
    sum_series(term, start, end, tail, false)
}

/// Sum an alternating series `term(n)` (sign included by the caller).
///
/// Uses a generic tail model (`1/n` with one power of `ln n`); see
/// [`alternating_sum_with_tail`] to pass the actual decay.
pub fn alternating_sum<F>(term: F, start: u64, end: u64) -> Result<RealWithError>
where
    F: FnMut(u64) -> f64,
{
    alternating_sum_with_tail(
        term,
        start,
        end,
        TailModel::PowerLog {
            power: 1,
            log_degree: 1,
        },
    )
}

/// Alternating series with a known decay model for `|term(n)|`.
pub fn alternating_sum_with_tail<F>(
    term: F,
    start: u64,
    end: u64,
    tail: TailModel,
) -> Result<RealWithError>
where
    F: FnMut(u64) -> f64,
{
    sum_series(term, start, end, tail, true)
}

/// Window of trailing terms checked for sign alternation.
const SIGN_WINDOW: u64 = 64;

fn sum_series<F>(
    mut term: F,
    start: u64,
    end: u64,
    tail: TailModel,
    alternating: bool,
) -> Result<RealWithError>
where
    F: FnMut(u64) -> f64,
{
    if end < start {
        return Err(Error::EmptyRange { start, end });
    }
    let count = end - start + 1;
    let pairs = count.div_ceil(2);
    let end = start + 2 * pairs - 1;

    let samples = match tail {
        TailModel::PowerLog { log_degree, .. } => sample_pairs(pairs, log_degree),
        TailModel::None => Vec::new(),
    };
    let mut sample_values = Vec::with_capacity(samples.len());
    let mut next_sample = 0usize;

    // Partial sums at a quarter, half and all of the pairs, for the
    // convergence check when there is no tail model.
    let quarter = pairs / 4;
    let half = pairs / 2;
    let mut at_quarter = 0.0;
    let mut at_half = 0.0;

    let mut acc = Compensated::new();
    let mut abs_acc = 0.0f64;
    let mut prev_sign = 0.0f64;
    let sign_check_from = end.saturating_sub(SIGN_WINDOW).max(start);

    for j in 0..pairs {
        let n = start + 2 * j;
        let a = term(n);
        let b = term(n + 1);
        if !a.is_finite() {
            return Err(Error::NonFiniteTerm { index: (n - start) as usize });
        }
        if !b.is_finite() {
            return Err(Error::NonFiniteTerm { index: (n + 1 - start) as usize });
        }
        if alternating && n + 1 >= sign_check_from {
            for (idx, t) in [(n, a), (n + 1, b)] {
                if idx < sign_check_from || t == 0.0 {
                    continue;
                }
                let s = t.signum();
                if prev_sign != 0.0 && s == prev_sign {
                    return Err(Error::NotAlternating(idx));
                }
                prev_sign = s;
            }
        }
        let g = a + b;
        acc.add(a);
        acc.add(b);
        abs_acc += a.abs() + b.abs();
        if next_sample < samples.len() && samples[next_sample] == j {
            sample_values.push(g);
            next_sample += 1;
        }
        if j + 1 == quarter {
            at_quarter = acc.value();
        }
        if j + 1 == half {
            at_half = acc.value();
        }
    }
    let partial = acc.value();
    let rounding = 16.0 * f64::EPSILON * abs_acc;

    match tail {
        TailModel::None => {
            let d_late = (partial - at_half).abs();
            let d_early = (at_half - at_quarter).abs();
            if pairs >= 8 && d_late > 1e-12 * partial.abs().max(1.0) && d_late >= 0.9 * d_early {
                return Err(Error::NoConvergence(format!(
                    "partial sums still moving by {d_late:.3e} between n = {} and n = {end}",
                    start + 2 * half
                )));
            }
            Ok(RealWithError::new(partial, d_late + rounding))
        }
        TailModel::PowerLog { power, log_degree } => {
            let lead = power + u32::from(alternating);
            if lead < 2 {
                return Err(Error::Divergent(format!(
                    "tail decays like n^-{lead}; the series does not converge"
                )));
            }
            let fit = TailFit {
                start,
                pairs,
                lead,
                log_degree,
            };
            let (tail_value, tail_err) = fit.estimate(&samples, &sample_values);
            Ok(RealWithError::new(partial + tail_value, tail_err + rounding))
        }
    }
}

/// Pair indices used for the tail fit: log-uniform over the last window.
fn sample_pairs(pairs: u64, log_degree: u32) -> Vec<u64> {
    let params = fit_orders(log_degree) * (log_degree as usize + 1);
    let want = 3 * params + 4;
    let hi = pairs.saturating_sub(1) as f64;
    let lo = (pairs as f64 / FIT_WINDOW).floor();
    let mut out: Vec<u64> = (0..want)
        .map(|i| {
            let t = i as f64 / (want - 1) as f64;
            (lo.max(0.0) * (hi.max(1.0) / lo.max(1.0)).powf(t)).round() as u64
        })
        .map(|j| j.min(pairs.saturating_sub(1)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

struct TailFit {
    start: u64,
    pairs: u64,
    lead: u32,
    log_degree: u32,
}

impl TailFit {
    fn center(&self, j: u64) -> f64 {
        self.start as f64 + 2.0 * j as f64 + 0.5
    }

    /// Returns `(tail, err)`, where the error compares fits of two orders.
    fn estimate(&self, samples: &[u64], values: &[f64]) -> (f64, f64) {
        if values.iter().all(|&v| v == 0.0) {
            return (0.0, 0.0);
        }
        let orders = fit_orders(self.log_degree);
        let full = self.fit_and_integrate(samples, values, orders);
        let reduced = self.fit_and_integrate(samples, values, orders - 1);
        match (full, reduced) {
            (Some(a), Some(b)) => (a, (a - b).abs() + 1e-3 * (a - b).abs().max(a.abs() * 1e-12)),
            (Some(a), None) => (a, a.abs()),
            _ => {
                // Too few samples for a fit: fall back to the leading power
                // integrated from the last pair value.
                let x = self.center(self.pairs - 1);
                let g = *values.last().unwrap_or(&0.0);
                let tail = 0.5 * g * x / (self.lead as f64 - 1.0);
                (tail, tail.abs())
            }
        }
    }

    fn fit_and_integrate(&self, samples: &[u64], values: &[f64], orders: usize) -> Option<f64> {
        let logs = self.log_degree as usize + 1;
        let params = orders * logs;
        if samples.len() < params + 2 {
            return None;
        }
        let x0 = self.center(self.pairs - 1);
        let q = self.lead as f64;
        let rows = samples.len();
        let mut design = DMatrix::<f64>::zeros(rows, params);
        let mut rhs = DVector::<f64>::zeros(rows);
        for (r, (&j, &g)) in samples.iter().zip(values).enumerate() {
            let x = self.center(j);
            let u = (x / x0).ln();
            let v = x0 / x;
            // Weight rows so the fit minimises relative error.
            let w = (x / x0).powf(q);
            for a in 0..orders {
                for i in 0..logs {
                    design[(r, a * logs + i)] = w * u.powi(i as i32) * v.powf(q + a as f64);
                }
            }
            rhs[r] = w * g;
        }
        // Column equilibration.
        let mut scales = vec![1.0; params];
        for (c, s) in scales.iter_mut().enumerate() {
            let norm = design.column(c).norm();
            if norm > 0.0 {
                *s = norm;
                design.column_mut(c).scale_mut(1.0 / norm);
            }
        }
        let svd = design.svd(true, true);
        let coef = svd.solve(&rhs, 1e-13).ok()?;

        // Tail = Σ_{pairs >= M} g ≈ ½ ∫_X^∞ g + g'(X) / 12, X = x_M − 1.
        let x_lo = self.center(self.pairs) - 1.0;
        let u0 = (x_lo / x0).ln();
        let mut integral = 0.0;
        let mut slope = 0.0;
        for a in 0..orders {
            let s = q + a as f64;
            for i in 0..logs {
                let c = coef[a * logs + i] / scales[a * logs + i];
                integral += c * x0 * upper_incomplete(i as u32, s - 1.0, u0);
                let vs = (x0 / x_lo).powf(s);
                let du = if i == 0 {
                    0.0
                } else {
                    i as f64 * u0.powi(i as i32 - 1)
                };
                slope += c * (du - s * u0.powi(i as i32)) * vs / x_lo;
            }
        }
        let tail = 0.5 * integral + slope / 12.0;
        tail.is_finite().then_some(tail)
    }
}

/// `∫_{u0}^∞ u^i e^{-λu} du` for integer `i ≥ 0`, `λ > 0`.
fn upper_incomplete(i: u32, lambda: f64, u0: f64) -> f64 {
    let mut total = 0.0;
    let mut falling = 1.0; // i! / (i - r)!
    for r in 0..=i {
        if r > 0 {
            falling *= (i - r + 1) as f64;
        }
        total += falling * u0.powi((i - r) as i32) / lambda.powi(r as i32 + 1);
    }
    (-lambda * u0).exp() * total
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    const ZETA3: f64 = 1.202_056_903_159_594_3;

    #[test]
    fn empty_sum_is_zero() {
        assert_eq!(compensated_sum(&[]).unwrap(), 0.0);
    }

    #[test]
    fn survives_cancellation() {
        let s = compensated_sum(&[1.0, -1.0, 1e-16]).unwrap();
        assert_eq!(s, 1e-16);
        let s = compensated_sum(&[1e16, 1.0, -1e16]).unwrap();
        assert_eq!(s, 1.0);
    }

    #[test]
    fn rejects_non_finite() {
        assert_eq!(
            compensated_sum(&[1.0, f64::NAN]),
            Err(Error::NonFiniteTerm { index: 1 })
        );
    }

    #[test]
    fn upper_incomplete_matches_gamma() {
        // ∫_0^∞ u^3 e^{-2u} du = 3!/2^4
        assert!((upper_incomplete(3, 2.0, 0.0) - 6.0 / 16.0).abs() < 1e-15);
        // i = 0: e^{-λ u0}/λ
        assert!((upper_incomplete(0, 1.5, 0.3) - (-0.45f64).exp() / 1.5).abs() < 1e-15);
    }

    #[test]
    fn zeta2_with_tail() {
        let r = sum_with_tail(
            |n| 1.0 / (n as f64 * n as f64),
            1,
            100_000,
            TailModel::PowerLog {
                power: 2,
                log_degree: 0,
            },
        )
        .unwrap();
        let z2 = PI * PI / 6.0;
        assert!((r.value - z2).abs() < 1e-12, "{r}");
        assert!(r.err < 1e-10);
        assert!((r.value - z2).abs() <= 5.0 * r.err.max(1e-15));
    }

    #[test]
    fn zero_terms() {
        let r = sum_with_tail(
            |_| 0.0,
            1,
            1000,
            TailModel::PowerLog {
                power: 2,
                log_degree: 1,
            },
        )
        .unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.err, 0.0);
        let r = alternating_sum(|_| 0.0, 1, 1000).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn harmonic_kernel_gives_zeta2() {
        let mut h = Compensated::new();
        let r = sum_with_tail(
            |n| {
                let x = n as f64;
                h.add(1.0 / x);
                h.value() / (x * (x + 1.0))
            },
            1,
            1_000_000,
            TailModel::PowerLog {
                power: 2,
                log_degree: 1,
            },
        )
        .unwrap();
        assert!((r.value - PI * PI / 6.0).abs() < 1e-10, "{r}");
    }

    #[test]
    fn mercator_series() {
        let r = alternating_sum(
            |n| if n % 2 == 1 { 1.0 / n as f64 } else { -1.0 / n as f64 },
            1,
            100_000,
        )
        .unwrap();
        assert!((r.value - LN_2).abs() < 1e-12, "{r}");
    }

    #[test]
    fn euler_sum_h_over_n2() {
        let mut h = Compensated::new();
        let r = sum_with_tail(
            |n| {
                let x = n as f64;
                h.add(1.0 / x);
                h.value() / (x * x)
            },
            1,
            1_000_000,
            TailModel::PowerLog {
                power: 2,
                log_degree: 1,
            },
        )
        .unwrap();
        assert!((r.value - 2.0 * ZETA3).abs() < 1e-11, "{r}");
    }

    #[test]
    fn detects_non_alternation() {
        let r = alternating_sum(|n| 1.0 / n as f64, 1, 1000);
        assert!(matches!(r, Err(Error::NotAlternating(_))));
    }

    #[test]
    fn detects_divergence_without_tail() {
        let r = sum_with_tail(|n| 1.0 / n as f64, 1, 10_000, TailModel::None);
        assert!(matches!(r, Err(Error::NoConvergence(_))));
    }

    #[test]
    fn empty_range() {
        let r = sum_with_tail(|_| 1.0, 5, 4, TailModel::None);
        assert_eq!(r, Err(Error::EmptyRange { start: 5, end: 4 }));
    }
}
