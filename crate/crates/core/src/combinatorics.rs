//! Exact harmonic numbers, Bell polynomials and Stirling numbers.
//!
//! Conventions: empty sums vanish (`ζ_0(m) = L_0(m) = 0`), `Y_0(n) = 1`,
//! `Y_k(0) = 0` for `k ≥ 1`, and `S(n, k)` is the unsigned Stirling number of
//! the first kind with `S(n, 0) = 0` for `n ≥ 1` and `S(n, k) = 0` for `k > n`.

use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numerics::{Compensated, RealWithError};

pub type ExactRational = BigRational;
pub type BigInteger = BigInt;

pub fn rational(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(x: &ExactRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn check_order(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument("harmonic order must be ≥ 1".into()));
    }
    Ok(())
}

fn lcm_upto(n: u64) -> BigUint {
    let mut l = BigUint::one();
    for j in 2..=n {
        l = l.lcm(&BigUint::from(j));
    }
    l
}

/// Σ_{j≤n} sign(j)·j^{-m} over a common denominator `lcm(1..n)^m`.
fn signed_power_sum(n: u64, m: u32, alternating: bool) -> ExactRational {
    if n == 0 {
        return ExactRational::zero();
    }
    let l = lcm_upto(n);
    let mut pos = BigUint::zero();
    let mut neg = BigUint::zero();
    for j in 1..=n {
        let q = (&l / BigUint::from(j)).pow(m);
        if alternating && j % 2 == 0 {
            neg += q;
        } else {
            pos += q;
        }
    }
    let num = BigInt::from(pos) - BigInt::from(neg);
    BigRational::new(num, BigInt::from(l.pow(m)))
}

/// Generalized harmonic number `ζ_n(m) = Σ_{j≤n} 1/j^m`.
pub fn harmonic(n: u64, m: u32) -> Result<ExactRational> {
    check_order(m)?;
    Ok(signed_power_sum(n, m, false))
}

/// Alternating harmonic number `L_n(m) = Σ_{j≤n} (−1)^{j−1}/j^m`.
pub fn alt_harmonic(n: u64, m: u32) -> Result<ExactRational> {
    check_order(m)?;
    Ok(signed_power_sum(n, m, true))
}

/// Partial polylogarithm `ζ_n(l, x) = Σ_{k≤n} x^k / k^l`.
pub fn partial_polylog(n: u64, l: u32, x: &ExactRational) -> ExactRational {
    let mut total = ExactRational::zero();
    let mut xp = ExactRational::one();
    for k in 1..=n {
        xp *= x;
        total += &xp / ExactRational::from_integer(BigInt::from(k).pow(l));
    }
    total
}

fn bell_table() -> &'static Mutex<Vec<Vec<ExactRational>>> {
    static TABLE: OnceLock<Mutex<Vec<Vec<ExactRational>>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(Vec::new()))
}

/// Complete exponential Bell polynomial `Y_k(n)` evaluated at
/// `(ζ_n(1), 1!ζ_n(2), 2!ζ_n(3), …)`, via `Y_k(n) = k Σ_{m≤n} Y_{k−1}(m)/m`.
pub fn bell_y(k: u32, n: u64) -> ExactRational {
    let k = k as usize;
    let n = n as usize;
    let mut table = bell_table().lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= k {
        table.push(Vec::new());
    }
    for row in 0..=k {
        let have = table[row].len();
        if have > n {
            continue;
        }
        for idx in have..=n {
            let value = if row == 0 {
                ExactRational::one()
            } else if idx == 0 {
                ExactRational::zero()
            } else {
                let prev = table[row][idx - 1].clone();
                let lower = table[row - 1][idx].clone();
                prev + lower * rational(row as i64, idx as i64)
            };
            table[row].push(value);
        }
    }
    table[k][n].clone()
}

/// `Y_k(n)` for `k ∈ 1..=4` from the polynomial formulas in `H_n`, `ζ_n(2..4)`.
pub fn bell_y_explicit(k: u32, n: u64) -> Result<ExactRational> {
    if !(1..=4).contains(&k) {
        return Err(Error::NoExplicitFormula(k));
    }
    let h = harmonic(n, 1)?;
    let z2 = harmonic(n, 2)?;
    let r = |a: i64| ExactRational::from_integer(BigInt::from(a));
    Ok(match k {
        1 => h,
        2 => &h * &h + z2,
        3 => {
            let z3 = harmonic(n, 3)?;
            &h * &h * &h + r(3) * &h * &z2 + r(2) * z3
        }
        _ => {
            let z3 = harmonic(n, 3)?;
            let z4 = harmonic(n, 4)?;
            let h2 = &h * &h;
            &h2 * &h2 + r(8) * &h * z3 + r(6) * &h2 * &z2 + r(3) * &z2 * &z2 + r(6) * z4
        }
    })
}

fn stirling_table() -> &'static Mutex<Vec<Vec<BigInt>>> {
    static TABLE: OnceLock<Mutex<Vec<Vec<BigInt>>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![vec![BigInt::one()]]))
}

/// Unsigned Stirling number of the first kind `S(n, k)`.
pub fn stirling_first(n: u64, k: u64) -> BigInteger {
    if k > n {
        return BigInt::zero();
    }
    let n = n as usize;
    let mut rows = stirling_table().lock().unwrap_or_else(|e| e.into_inner());
    while rows.len() <= n {
        let m = rows.len() - 1;
        let prev = &rows[m];
        let mut next = vec![BigInt::zero(); m + 2];
        for (j, slot) in next.iter_mut().enumerate().skip(1) {
            let left = &prev[j - 1];
            let here = prev.get(j).cloned().unwrap_or_default();
            *slot = left + here * BigInt::from(m);
        }
        rows.push(next);
    }
    rows[n][k as usize].clone()
}

pub fn factorial(n: u64) -> BigInteger {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// `S(n, k)` for `k ∈ 1..=5` from its expression in `H_{n−1}`, `ζ_{n−1}(j)`.
pub fn stirling_via_harmonics(n: u64, k: u32) -> Result<ExactRational> {
    if !(1..=5).contains(&k) {
        return Err(Error::NoClosedForm(k));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("stirling_via_harmonics needs n ≥ 1".into()));
    }
    let m = n - 1;
    let fact = ExactRational::from_integer(factorial(m));
    let h = harmonic(m, 1)?;
    let z2 = harmonic(m, 2)?;
    let r = |a: i64| ExactRational::from_integer(BigInt::from(a));
    let bracket = match k {
        1 => r(1),
        2 => h,
        3 => (&h * &h - z2) / r(2),
        4 => {
            let z3 = harmonic(m, 3)?;
            (&h * &h * &h - r(3) * &h * &z2 + r(2) * z3) / r(6)
        }
        _ => {
            let z3 = harmonic(m, 3)?;
            let z4 = harmonic(m, 4)?;
            let h2 = &h * &h;
            (&h2 * &h2 - r(6) * z4 - r(6) * &h2 * &z2 + r(3) * &z2 * &z2 + r(8) * &h * z3) / r(24)
        }
    };
    Ok(fact * bracket)
}

/// Residual of the truncated Stirling generating function
/// `(−1)^p p! Σ_{n=p}^{N} S(n,p) x^n/n! − ln^p(1−x)`.
pub fn genfun_check(p: u32, x: &ExactRational, terms: u64) -> Result<RealWithError> {
    if p == 0 {
        return Err(Error::InvalidArgument("genfun_check needs p ≥ 1".into()));
    }
    if x.abs() >= ExactRational::one() {
        return Err(Error::InvalidArgument("genfun_check needs |x| < 1".into()));
    }
    let mut series = ExactRational::zero();
    let mut last = ExactRational::zero();
    for n in p as u64..=terms {
        let t = ExactRational::from_integer(stirling_first(n, p as u64))
            / ExactRational::from_integer(factorial(n))
            * x.pow(n as i32);
        series += &t;
        last = t;
    }
    let sign = if p % 2 == 0 { 1 } else { -1 };
    let scaled = series * ExactRational::from_integer(factorial(p as u64) * BigInt::from(sign));
    let xf = to_f64(x);
    let target = (-xf).ln_1p().powi(p as i32);
    let value = to_f64(&scaled) - target;
    // The terms decay at least geometrically with ratio |x|·(1 + p/n).
    let ratio = xf.abs() * (1.0 + p as f64 / terms.max(1) as f64);
    let tail = if ratio < 1.0 {
        to_f64(&last).abs() * to_f64(&ExactRational::from_integer(factorial(p as u64)))
            * ratio
            / (1.0 - ratio)
    } else {
        f64::INFINITY
    };
    Ok(RealWithError::new(value, tail + 4.0 * f64::EPSILON * target.abs().max(1.0)))
}

/// Iterated sum `Σ_{k1≤n} 1/k1 Σ_{k2≤k1} 1/k2 ⋯ Σ_{km≤k(m−1)} 1/km`.
pub fn iterated_harmonic(n: u64, m: u32) -> ExactRational {
    // level[j] holds the depth-d sum with outer index j.
    let mut level: Vec<ExactRational> = vec![ExactRational::one(); n as usize + 1];
    level[0] = ExactRational::zero();
    if m == 0 {
        return ExactRational::one();
    }
    for _ in 0..m {
        let mut next = vec![ExactRational::zero(); n as usize + 1];
        let mut running = ExactRational::zero();
        for j in 1..=n as usize {
            running += &level[j] / ExactRational::from_integer(BigInt::from(j));
            next[j] = running.clone();
        }
        level = next;
    }
    level[n as usize].clone()
}

fn bernoulli_table() -> &'static Mutex<Vec<ExactRational>> {
    static TABLE: OnceLock<Mutex<Vec<ExactRational>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![ExactRational::one()]))
}

/// Bernoulli number `B_n` with `B_1 = −1/2`.
pub fn bernoulli(n: u32) -> ExactRational {
    let mut table = bernoulli_table().lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= n as usize {
        let m = table.len();
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = ExactRational::zero();
        let mut binom = BigInt::one();
        for (j, b) in table.iter().enumerate() {
            acc += b * ExactRational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        table.push(-acc / ExactRational::from_integer(BigInt::from(m + 1)));
    }
    table[n as usize].clone()
}

/// Floating-point `Σ_{k≤n} H_k / k^m`, the inner factor of nested Euler sums.
pub fn nested_inner(n: u64, m: u32) -> f64 {
    let mut h = Compensated::new();
    let mut acc = Compensated::new();
    for k in 1..=n {
        let x = k as f64;
        h.add(1.0 / x);
        acc.add(h.value() / x.powi(m as i32));
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic(4, 1).unwrap(), rational(25, 12));
        assert_eq!(harmonic(0, 3).unwrap(), rational(0, 1));
        assert_eq!(harmonic(3, 2).unwrap(), rational(49, 36));
        assert!(harmonic(3, 0).is_err());
    }

    #[test]
    fn alt_harmonic_examples() {
        assert_eq!(alt_harmonic(2, 1).unwrap(), rational(1, 2));
        assert_eq!(alt_harmonic(3, 1).unwrap(), rational(5, 6));
        assert_eq!(alt_harmonic(4, 2).unwrap(), rational(115, 144));
        assert_eq!(alt_harmonic(0, 2).unwrap(), rational(0, 1));
        assert!(alt_harmonic(3, 0).is_err());
    }

    #[test]
    fn partial_polylog_examples() {
        assert_eq!(partial_polylog(2, 1, &rational(1, 2)), rational(5, 8));
        for n in 0..12 {
            for l in 1..4 {
                assert_eq!(partial_polylog(n, l, &rational(1, 1)), harmonic(n, l).unwrap());
                assert_eq!(partial_polylog(n, l, &rational(-1, 1)), -alt_harmonic(n, l).unwrap());
            }
        }
    }

    #[test]
    fn bell_examples() {
        assert_eq!(bell_y(1, 4), rational(25, 12));
        assert_eq!(bell_y(2, 2), rational(7, 2));
        assert_eq!(bell_y(3, 2), rational(45, 4));
        assert_eq!(bell_y(0, 7), rational(1, 1));
        assert_eq!(bell_y(3, 0), rational(0, 1));
        assert_eq!(bell_y_explicit(2, 3).unwrap(), rational(85, 18));
        assert_eq!(bell_y_explicit(4, 1).unwrap(), rational(24, 1));
        assert_eq!(bell_y_explicit(3, 2).unwrap(), rational(45, 4));
        assert_eq!(bell_y_explicit(5, 2), Err(Error::NoExplicitFormula(5)));
        assert_eq!(bell_y_explicit(0, 2), Err(Error::NoExplicitFormula(0)));
    }

    #[test]
    fn bell_matches_product_expansion() {
        // 1 + Σ Y_k(n) t^k/k! = Π_{j≤n} 1/(1 − t/j): compare coefficients.
        for n in 0..8u64 {
            let kmax = 6usize;
            let mut coeffs = vec![ExactRational::zero(); kmax + 1];
            coeffs[0] = ExactRational::one();
            for j in 1..=n {
                // multiply by Σ_i (t/j)^i
                let mut next = vec![ExactRational::zero(); kmax + 1];
                for (a, ca) in coeffs.iter().enumerate() {
                    let mut pw = ExactRational::one();
                    for b in 0..=(kmax - a) {
                        next[a + b] += ca * &pw;
                        pw /= ExactRational::from_integer(BigInt::from(j));
                    }
                }
                coeffs = next;
            }
            for (k, c) in coeffs.iter().enumerate() {
                let expect = c * ExactRational::from_integer(factorial(k as u64));
                assert_eq!(bell_y(k as u32, n), expect, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling_first(4, 2), BigInt::from(11));
        assert_eq!(stirling_first(5, 3), BigInt::from(35));
        assert_eq!(stirling_first(6, 3), BigInt::from(225));
        assert_eq!(stirling_first(5, 0), BigInt::zero());
        assert_eq!(stirling_first(3, 7), BigInt::zero());
        for n in 1..12 {
            assert_eq!(stirling_first(n, 1), factorial(n - 1));
            assert_eq!(stirling_first(n, n), BigInt::one());
        }
        assert_eq!(stirling_via_harmonics(4, 4).unwrap(), rational(1, 1));
        assert_eq!(stirling_via_harmonics(5, 5).unwrap(), rational(1, 1));
        assert_eq!(stirling_via_harmonics(6, 3).unwrap(), rational(225, 1));
        assert_eq!(stirling_via_harmonics(6, 6), Err(Error::NoClosedForm(6)));
    }

    #[test]
    fn stirling_30_2_is_big() {
        let s = stirling_first(30, 2);
        assert!(s > BigInt::from(10u32).pow(30));
        // S(n,2) = (n−1)! H_{n−1}
        let via = stirling_via_harmonics(30, 2).unwrap();
        assert!(via.is_integer());
        assert_eq!(via.to_integer(), s);
    }

    #[test]
    fn genfun_examples() {
        let half = rational(1, 2);
        assert!(genfun_check(1, &half, 60).unwrap().value.abs() < 1e-15);
        assert!(genfun_check(3, &half, 80).unwrap().value.abs() < 1e-12);
        assert_eq!(genfun_check(2, &rational(0, 1), 5).unwrap().value, 0.0);
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), rational(1, 1));
        assert_eq!(bernoulli(1), rational(-1, 2));
        assert_eq!(bernoulli(2), rational(1, 6));
        assert_eq!(bernoulli(3), rational(0, 1));
        assert_eq!(bernoulli(4), rational(-1, 30));
        assert_eq!(bernoulli(12), rational(-691, 2730));
    }

    #[test]
    fn iterated_sum_is_bell_over_factorial() {
        for n in 0..10 {
            for m in 0..5u32 {
                let lhs = iterated_harmonic(n, m)
                    * ExactRational::from_integer(factorial(m as u64));
                let rhs = if n == 0 && m > 0 { ExactRational::zero() } else { bell_y(m, n) };
                assert_eq!(lhs, rhs, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn nested_inner_examples() {
        assert_eq!(nested_inner(1, 2), 1.0);
        assert!((nested_inner(2, 1) - 1.75).abs() < 1e-15);
        // Σ_{k>n} H_k/k² ≈ (ln n + γ + 1)/n ≈ 1.08e-3 at n = 10^4.
        let two_zeta3 = 2.0 * 1.202_056_903_159_594_3;
        let gap = two_zeta3 - nested_inner(10_000, 2);
        let predicted = ((1e4f64).ln() + 0.5772156649015329 + 1.0) / 1e4;
        assert!(gap > 0.0 && gap < 1.1e-3);
        assert!((gap - predicted).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn harmonic_step(n in 1u64..200, m in 1u32..6) {
            let d = harmonic(n, m).unwrap() - harmonic(n - 1, m).unwrap();
            prop_assert_eq!(d, ExactRational::new(BigInt::one(), BigInt::from(n).pow(m)));
        }

        #[test]
        fn alt_harmonic_step(n in 1u64..200, m in 1u32..6) {
            let d = alt_harmonic(n, m).unwrap() - alt_harmonic(n - 1, m).unwrap();
            let sign = if n % 2 == 1 { 1 } else { -1 };
            prop_assert_eq!(d, ExactRational::new(BigInt::from(sign), BigInt::from(n).pow(m)));
        }
    }
}
