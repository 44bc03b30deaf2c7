//! Zeta values, alternating zeta values, polylogarithms and friends.
//!
//! Values are computed once per key and cached; repeated calls return
//! bit-identical results.

use std::collections::HashMap;
use std::f64::consts::LN_2;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Signed, Zero};

use crate::combinatorics::{bernoulli, factorial, to_f64, ExactRational};
use crate::error::{Error, Result};
use crate::numerics::{Compensated, RealWithError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConstantKey {
    Zeta(u32),
    AltZeta(u32),
    Polylog(u32, ExactRational),
    Ln2,
    EulerGamma,
}

fn cache() -> &'static Mutex<HashMap<ConstantKey, RealWithError>> {
    static CACHE: OnceLock<Mutex<HashMap<ConstantKey, RealWithError>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(key: ConstantKey, compute: impl FnOnce() -> RealWithError) -> RealWithError {
    if let Some(v) = cache().lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return *v;
    }
    let value = compute();
    // First insertion wins, so every caller observes the same bits.
    *cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .entry(key)
        .or_insert(value)
}

const ZETA_TERMS: u64 = 10_000;

/// Riemann zeta at an integer `s ≥ 2`.
pub fn zeta(s: u32) -> Result<RealWithError> {
    if s < 2 {
        return Err(Error::DivergentZeta(s as i64));
    }
    Ok(cached(ConstantKey::Zeta(s), || zeta_uncached(s)))
}

/// Direct sum to `10^4` plus Euler–Maclaurin through the `n^{-s-5}` term.
fn zeta_uncached(s: u32) -> RealWithError {
    let sf = s as f64;
    let mut acc = Compensated::new();
    for n in (1..=ZETA_TERMS).rev() {
        acc.add((n as f64).powf(-sf));
    }
    let big_n = ZETA_TERMS as f64;
    let mut tail = big_n.powf(1.0 - sf) / (sf - 1.0) - 0.5 * big_n.powf(-sf);
    // Σ_j B_{2j}/(2j)! · s(s+1)…(s+2j−2) · N^{−s−2j+1}
    let mut rising = sf;
    let mut last = 0.0;
    for j in 1..=3u32 {
        if j > 1 {
            rising *= (sf + (2 * j - 3) as f64) * (sf + (2 * j - 2) as f64);
        }
        let b = to_f64(&bernoulli(2 * j)) / to_f64(&ExactRational::from_integer(factorial(2 * j as u64)));
        last = b * rising * big_n.powf(-sf - (2 * j) as f64 + 1.0);
        tail += last;
    }
    let value = acc.value() + tail;
    RealWithError::new(value, last.abs() + 2.0 * f64::EPSILON * value)
}

/// Alternating zeta `ζ̄(s) = Σ (−1)^{n−1}/n^s`, `s ≥ 1`.
pub fn alt_zeta(s: u32) -> Result<RealWithError> {
    if s == 0 {
        return Err(Error::InvalidArgument("alternating zeta needs s ≥ 1".into()));
    }
    Ok(cached(ConstantKey::AltZeta(s), || {
        if s == 1 {
            RealWithError::exact(LN_2)
        } else {
            let z = zeta(s).expect("s ≥ 2");
            z.scale(1.0 - 2f64.powi(1 - s as i32))
        }
    }))
}

pub fn ln2() -> RealWithError {
    cached(ConstantKey::Ln2, || RealWithError::exact(LN_2))
}

/// Euler's constant from `H_N − ln N − 1/(2N) + 1/(12N²) − 1/(120N⁴)`.
pub fn euler_gamma() -> RealWithError {
    cached(ConstantKey::EulerGamma, || gamma_estimate(1_000_000))
}

pub(crate) fn gamma_estimate(n: u64) -> RealWithError {
    let mut h = Compensated::new();
    for j in (1..=n).rev() {
        h.add(1.0 / j as f64);
    }
    let x = n as f64;
    let x2 = x * x;
    let value = h.value() - x.ln() - 0.5 / x + 1.0 / (12.0 * x2) - 1.0 / (120.0 * x2 * x2);
    RealWithError::new(value, 1.0 / (252.0 * x2 * x2 * x2) + 8.0 * f64::EPSILON)
}

/// `Li_p(x)` for integer `p ≥ 1` and rational `x ∈ [−1, 1]`, `(p, x) ≠ (1, 1)`.
pub fn polylog(p: u32, x: &ExactRational) -> Result<RealWithError> {
    if p == 0 {
        return Err(Error::InvalidArgument("polylog order must be ≥ 1".into()));
    }
    if x.abs() > ExactRational::one() {
        return Err(Error::InvalidArgument("polylog argument must lie in [−1, 1]".into()));
    }
    if x.is_one() {
        if p == 1 {
            return Err(Error::Divergent("Li_1(1)".into()));
        }
        return zeta(p);
    }
    if *x == -ExactRational::one() {
        return Ok(-alt_zeta(p)?);
    }
    if x.is_zero() {
        return Ok(RealWithError::ZERO);
    }
    Ok(cached(ConstantKey::Polylog(p, x.clone()), || {
        let xf = to_f64(x);
        if p == 1 {
            return RealWithError::exact(-(-xf).ln_1p());
        }
        let mut acc = Compensated::new();
        let mut xp = 1.0;
        let mut n = 1u64;
        loop {
            xp *= xf;
            let t = xp / (n as f64).powi(p as i32);
            acc.add(t);
            if t.abs() < 1e-17 * acc.value().abs().max(1e-300) || n > 10_000_000 {
                break;
            }
            n += 1;
        }
        let value = acc.value();
        RealWithError::new(value, 4.0 * f64::EPSILON * value.abs() + 1e-17)
    }))
}

/// Floating-point `Li_s(x)` for real `x ∈ [−1, 1]`, `s ≥ 1`, used inside
/// integrands. `one_minus_x` must equal `1 − x`; it is passed separately so
/// nodes near `x = 1` keep their accuracy.
pub fn polylog_real(s: u32, x: f64, one_minus_x: f64) -> f64 {
    if s == 1 {
        return -one_minus_x.ln();
    }
    if x == 1.0 || one_minus_x == 0.0 {
        return zeta_f64(s);
    }
    if x.abs() <= 0.5 {
        let mut acc = Compensated::new();
        let mut xp = 1.0;
        for n in 1..200u64 {
            xp *= x;
            let t = xp / (n as f64).powi(s as i32);
            acc.add(t);
            if t.abs() < 1e-18 {
                break;
            }
        }
        return acc.value();
    }
    if x < 0.0 {
        // Li_s(−y) = 2^{1−s} Li_s(y²) − Li_s(y)
        let y = -x;
        let y2 = y * y;
        let a = polylog_real(s, y2, (1.0 - y) * (1.0 + y));
        let b = polylog_real(s, y, 1.0 - y);
        return 2f64.powi(1 - s as i32) * a - b;
    }
    // Expansion around x = 1 in μ = ln x.
    let mu = (-one_minus_x).ln_1p();
    let mut acc = Compensated::new();
    let mut power = 1.0; // μ^k / k!
    let mut harmonic = 0.0;
    for j in 1..s {
        harmonic += 1.0 / j as f64;
    }
    for k in 0..60u32 {
        if k > 0 {
            power *= mu / k as f64;
        }
        let t = if k + 1 == s {
            power * (harmonic - (-mu).ln())
        } else {
            power * zeta_any(s as i64 - k as i64)
        };
        acc.add(t);
        // ζ vanishes at negative even integers; only stop on a nonzero term.
        if k > s && t != 0.0 && t.abs() < 1e-19 {
            break;
        }
    }
    acc.value()
}

fn zeta_f64(s: u32) -> f64 {
    zeta(s).map(|r| r.value).unwrap_or(f64::NAN)
}

/// ζ at any integer other than 1 (negative arguments via Bernoulli numbers).
fn zeta_any(s: i64) -> f64 {
    match s {
        s if s >= 2 => zeta_f64(s as u32),
        0 => -0.5,
        s => {
            let n = (-s) as u32;
            -to_f64(&bernoulli(n + 1)) / (n + 1) as f64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::rational;
    use crate::numerics::alternating_sum;
    use std::f64::consts::PI;

    #[test]
    fn zeta_values() {
        assert!((zeta(2).unwrap().value - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta(3).unwrap().value - 1.2020569031595943).abs() < 1e-15);
        assert!((zeta(8).unwrap().value - 1.0040773561979443).abs() < 1e-15);
        assert!((zeta(4).unwrap().value - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!(zeta(2).unwrap().err <= 1e-13);
        assert_eq!(zeta(1), Err(Error::DivergentZeta(1)));
    }

    #[test]
    fn alt_zeta_values() {
        assert!((alt_zeta(1).unwrap().value - std::f64::consts::LN_2).abs() < 1e-16);
        assert!((alt_zeta(2).unwrap().value - 0.8224670334241132).abs() < 1e-15);
        assert!((alt_zeta(4).unwrap().value - 0.9470328294972459).abs() < 1e-15);
        assert!(alt_zeta(0).is_err());
    }

    #[test]
    fn alt_zeta_against_direct_series() {
        for s in 2..=6u32 {
            let direct = alternating_sum(
                |n| {
                    let t = (n as f64).powi(-(s as i32));
                    if n % 2 == 1 { t } else { -t }
                },
                1,
                40_000,
            )
            .unwrap();
            assert!((direct.value - alt_zeta(s).unwrap().value).abs() < 1e-12, "s={s}");
        }
    }

    #[test]
    fn polylog_values() {
        let half = rational(1, 2);
        assert!((polylog(4, &half).unwrap().value - 0.5174790616738994).abs() < 1e-15);
        assert!((polylog(1, &half).unwrap().value - LN_2).abs() < 1e-16);
        assert!((polylog(2, &rational(-1, 1)).unwrap().value + 0.8224670334241132).abs() < 1e-15);
        assert!(polylog(1, &rational(1, 1)).is_err());
        // Li_2(1/2) = π²/12 − ln²2/2
        let li2 = PI * PI / 12.0 - LN_2 * LN_2 / 2.0;
        assert!((polylog(2, &half).unwrap().value - li2).abs() < 1e-15);
    }

    #[test]
    fn polylog_boundary_consistency() {
        for p in 2..=8 {
            let a = polylog(p, &rational(1, 1)).unwrap();
            assert!((a.value - zeta(p).unwrap().value).abs() <= a.err + 1e-16);
        }
        for p in 1..=8 {
            let a = polylog(p, &rational(-1, 1)).unwrap();
            assert!((a.value + alt_zeta(p).unwrap().value).abs() <= a.err + 1e-16);
        }
    }

    #[test]
    fn alt_zeta_relation() {
        for s in 2..=16u32 {
            let lhs = alt_zeta(s).unwrap().value;
            let rhs = (1.0 - 2f64.powi(1 - s as i32)) * zeta(s).unwrap().value;
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn gamma_value_and_consistency() {
        let g = euler_gamma();
        assert!((g.value - 0.5772156649015329).abs() < 1e-12);
        assert!((gamma_estimate(100_000).value - g.value).abs() < 1e-12);
        // H_{10^4} − ln 10^4 − γ ≈ 1/(2·10^4) − 1/(12·10^8)
        let n = 10_000u64;
        let h: f64 = (1..=n).rev().map(|j| 1.0 / j as f64).sum();
        let lhs = h - (n as f64).ln() - g.value;
        let rhs = 1.0 / (2.0 * n as f64) - 1.0 / (12.0 * (n as f64).powi(2));
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn cache_is_bit_stable() {
        let a = zeta(5).unwrap();
        let b = zeta(5).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        let h = rational(1, 3);
        assert_eq!(
            polylog(3, &h).unwrap().value.to_bits(),
            polylog(3, &h).unwrap().value.to_bits()
        );
    }

    #[test]
    fn real_polylog_matches_series() {
        for s in 1..=5u32 {
            for &x in &[-0.9, -0.6, -0.3, 0.0, 0.2, 0.5, 0.55, 0.7, 0.9] {
                let got = polylog_real(s, x, 1.0 - x);
                let mut acc = Compensated::new();
                let mut xp = 1.0f64;
                for n in 1..=2_000 {
                    xp *= x;
                    acc.add(xp / (n as f64).powi(s as i32));
                }
                assert!((got - acc.value()).abs() < 1e-14, "s={s} x={x}: {got} vs {}", acc.value());
            }
        }
    }

    #[test]
    fn real_polylog_at_unit_arguments() {
        for s in 2..=6u32 {
            assert!((polylog_real(s, 1.0, 0.0) - zeta(s).unwrap().value).abs() < 1e-15);
            assert!((polylog_real(s, -1.0, 2.0) + alt_zeta(s).unwrap().value).abs() < 1e-14);
            // Li_s(1 − δ) ≈ ζ(s) − δ ζ(s − 1) for s ≥ 3
            if s >= 3 {
                let d = 1e-7;
                let approx = zeta(s).unwrap().value - d * zeta(s - 1).unwrap().value;
                assert!((polylog_real(s, 1.0 - d, d) - approx).abs() < 1e-12);
            }
        }
    }
}
