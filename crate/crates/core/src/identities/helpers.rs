//! Shorthand used by the registry: descriptor builders, constants and the
//! finite harmonic sums that appear on closed-form sides.

use num_bigint::BigInt;

use crate::combinatorics::{bell_y, factorial, to_f64, ExactRational};
use crate::constants;
use crate::error::Result;
use crate::numerics::{Compensated, RealWithError};
use crate::oracle::{evaluate, EvalConfig, Factor, SumDescriptor};

pub(crate) type R = RealWithError;

/// Evaluation context handed to every side of an identity.
#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub config: EvalConfig,
}

impl Ctx {
    pub fn new(config: EvalConfig) -> Self {
        Self { config }
    }

    pub fn sum(&self, d: SumDescriptor) -> Result<R> {
        evaluate(&d, &self.config)
    }
}

pub(crate) fn pw(p: u32) -> SumDescriptor {
    SumDescriptor::power(p)
}

/// `Σ f_n / (n(n+k))` style kernels.
pub(crate) fn kern(r: u32, k: u32) -> SumDescriptor {
    SumDescriptor::kernel(r, k)
}

/// `Σ f_n / (n^power (n+k))`
pub(crate) fn shift(k: u32, power: u32) -> SumDescriptor {
    SumDescriptor::shift(k, power)
}

pub(crate) trait DescExt: Sized {
    fn f(self, factor: Factor, e: u32) -> Self;
    fn h(self, e: u32) -> Self {
        self.f(Factor::Zeta(1), e)
    }
    /// `ζ_n(m)`
    fn z(self, m: u32) -> Self {
        self.f(Factor::Zeta(m), 1)
    }
    /// `L_n(m)`
    fn l(self, m: u32) -> Self {
        self.f(Factor::Alt(m), 1)
    }
    fn y(self, k: u32) -> Self {
        if k == 0 {
            self
        } else {
            self.f(Factor::Bell(k), 1)
        }
    }
    /// `S(n+1, p)/n!`
    fn w(self, p: u32) -> Self {
        self.f(Factor::StirlingWeight(p), 1)
    }
    /// `Σ_{k≤n} H_k/k^m`
    fn nh(self, m: u32) -> Self {
        self.f(Factor::NestedHarmonic(m), 1)
    }
    fn pp(self, l: u32, x: &ExactRational) -> Self {
        self.f(Factor::PartialPolylog(l, x.clone()), 1)
    }
    fn np(self, m: u32, z: &ExactRational) -> Self {
        self.f(Factor::NestedPolylog(m, z.clone()), 1)
    }
    fn alt(self) -> Self;
    fn geo(self, w: &ExactRational) -> Self;
}

impl DescExt for SumDescriptor {
    fn f(self, factor: Factor, e: u32) -> Self {
        self.with(factor, e)
    }
    fn alt(self) -> Self {
        self.alternating()
    }
    /// `w^n`; a ratio of exactly 1 is dropped.
    fn geo(self, w: &ExactRational) -> Self {
        if *w == ExactRational::from_integer(BigInt::from(1)) {
            self
        } else {
            self.ratio(w.clone())
        }
    }
}

pub(crate) fn c(v: f64) -> R {
    R::exact(v)
}

pub(crate) fn zeta(s: u32) -> Result<R> {
    constants::zeta(s)
}

/// `ζ̄(s)`, with `ζ̄(1) = ln 2`.
pub(crate) fn zbar(s: u32) -> Result<R> {
    constants::alt_zeta(s)
}

pub(crate) fn ln2() -> R {
    constants::ln2()
}

pub(crate) fn li(p: u32, x: &ExactRational) -> Result<R> {
    constants::polylog(p, x)
}

/// `(−1)^e`
pub(crate) fn sgn(e: i64) -> f64 {
    if e.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `Σ_{i=lo}^{hi} f(i)`, zero when `hi < lo`.
pub(crate) fn fin(lo: i64, hi: i64, f: impl Fn(i64) -> f64) -> f64 {
    let mut acc = Compensated::new();
    for i in lo..=hi {
        acc.add(f(i));
    }
    acc.value()
}

/// `Σ_{i=lo}^{hi} f(i)` over uncertain terms; zero when `hi < lo`.
pub(crate) fn fin_r(lo: i64, hi: i64, f: impl Fn(i64) -> Result<R>) -> Result<R> {
    let mut out = Vec::new();
    for i in lo..=hi {
        out.push(f(i)?);
    }
    Ok(out.into_iter().sum())
}

pub(crate) fn ipow(i: i64, m: u32) -> f64 {
    (i as f64).powi(m as i32)
}

/// `ζ_k(j)`, zero for `k ≤ 0`.
pub(crate) fn zk(k: i64, j: u32) -> f64 {
    fin(1, k, |i| 1.0 / ipow(i, j))
}

/// `L_k(j)`, zero for `k ≤ 0`.
pub(crate) fn lk(k: i64, j: u32) -> f64 {
    fin(1, k, |i| sgn(i - 1) / ipow(i, j))
}

pub(crate) fn hk(k: i64) -> f64 {
    zk(k, 1)
}

/// `Y_k(n)`, with `Y_k(0) = [k = 0]`.
pub(crate) fn yk(k: u32, n: i64) -> f64 {
    to_f64(&bell_y(k, n.max(0) as u64))
}

pub(crate) fn fact(n: u32) -> f64 {
    to_f64(&ExactRational::from_integer(factorial(n as u64)))
}
