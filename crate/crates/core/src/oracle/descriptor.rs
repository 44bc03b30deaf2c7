use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{
    bell_y, factorial, harmonic, alt_harmonic, partial_polylog, rational, stirling_first,
    ExactRational,
};
use crate::error::{Error, Result};

/// One harmonic-type factor of the summand, evaluated at the summation index `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Factor {
    /// `ζ_n(m)`
    Zeta(u32),
    /// `L_n(m)`
    Alt(u32),
    /// `Y_k(n)`
    Bell(u32),
    /// `S(n+1, p) / n!`
    StirlingWeight(u32),
    /// `Σ_{k≤n} H_k / k^m`
    NestedHarmonic(u32),
    /// `ζ_n(l, x) = Σ_{k≤n} x^k / k^l`
    PartialPolylog(u32, ExactRational),
    /// `Σ_{k≤n} ζ_k(1, z) / k^m`
    NestedPolylog(u32, ExactRational),
}

impl Factor {
    /// Degree of the `ln n` polynomial the factor contributes to the
    /// asymptotic expansion of the terms (leading or sub-leading).
    pub(crate) fn log_degree(&self) -> u32 {
        let one = ExactRational::one();
        match self {
            Factor::Zeta(1) => 1,
            Factor::Zeta(_) | Factor::Alt(_) => 0,
            Factor::Bell(k) => *k,
            Factor::StirlingWeight(p) => p.saturating_sub(1),
            Factor::NestedHarmonic(1) => 2,
            // Σ H_k/k^m approaches its limit like ln n / n^{m−1}.
            Factor::NestedHarmonic(_) => 1,
            Factor::PartialPolylog(1, x) if *x == one => 1,
            Factor::PartialPolylog(..) => 0,
            Factor::NestedPolylog(1, z) if *z == one => 2,
            Factor::NestedPolylog(1, _) => 1,
            Factor::NestedPolylog(_, z) if *z == one => 1,
            Factor::NestedPolylog(..) => 0,
        }
    }

    /// True when the factor has a `(−1)^n` component that does not decay
    /// geometrically.
    pub(crate) fn oscillates(&self) -> bool {
        let minus_one = -ExactRational::one();
        match self {
            Factor::Alt(_) => true,
            Factor::PartialPolylog(_, x) | Factor::NestedPolylog(_, x) => *x == minus_one,
            _ => false,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        match self {
            Factor::Zeta(0)
            | Factor::Alt(0)
            | Factor::NestedHarmonic(0)
            | Factor::PartialPolylog(0, _)
            | Factor::NestedPolylog(0, _) => bad(format!("factor {self} needs order ≥ 1")),
            Factor::StirlingWeight(0) => bad("Stirling weight needs p ≥ 1".into()),
            Factor::PartialPolylog(_, x) | Factor::NestedPolylog(_, x) if x.abs() > ExactRational::one() => {
                bad(format!("factor {self} needs |x| ≤ 1"))
            }
            _ => Ok(()),
        }
    }

    /// Exact value at index `n`.
    pub fn exact(&self, n: u64) -> ExactRational {
        match self {
            Factor::Zeta(m) => harmonic(n, *m).unwrap_or_default(),
            Factor::Alt(m) => alt_harmonic(n, *m).unwrap_or_default(),
            Factor::Bell(k) => bell_y(*k, n),
            Factor::StirlingWeight(p) => ExactRational::new(
                stirling_first(n + 1, *p as u64),
                factorial(n),
            ),
            Factor::NestedHarmonic(m) => (1..=n)
                .map(|k| {
                    harmonic(k, 1).unwrap_or_default()
                        / ExactRational::from_integer(BigInt::from(k).pow(*m))
                })
                .sum(),
            Factor::PartialPolylog(l, x) => partial_polylog(n, *l, x),
            Factor::NestedPolylog(m, z) => (1..=n)
                .map(|k| partial_polylog(k, 1, z) / ExactRational::from_integer(BigInt::from(k).pow(*m)))
                .sum(),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Zeta(1) => write!(f, "H_n"),
            Factor::Zeta(m) => write!(f, "ζ_n({m})"),
            Factor::Alt(m) => write!(f, "L_n({m})"),
            Factor::Bell(k) => write!(f, "Y_{k}(n)"),
            Factor::StirlingWeight(p) => write!(f, "S(n+1,{p})/n!"),
            Factor::NestedHarmonic(m) => write!(f, "(Σ_{{k≤n}} H_k/k^{m})"),
            Factor::PartialPolylog(l, x) => write!(f, "ζ_n({l},{x})"),
            Factor::NestedPolylog(m, z) => write!(f, "(Σ_{{k≤n}} ζ_k(1,{z})/k^{m})"),
        }
    }
}

/// The rational part of the summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outer {
    /// `1 / n^p`
    Power(u32),
    /// `1 / ((n + r)(n + k))`, `0 ≤ r < k`
    Kernel { r: u32, k: u32 },
    /// `1 / (n^power (n + k))`
    Shift { k: u32, power: u32 },
}

impl Outer {
    /// Exponent `q` of the decay `n^{-q}`.
    pub fn decay(&self) -> u32 {
        match *self {
            Outer::Power(p) => p,
            Outer::Kernel { .. } => 2,
            Outer::Shift { power, .. } => power + 1,
        }
    }

    #[inline]
    pub(crate) fn weight(&self, n: f64) -> f64 {
        match *self {
            Outer::Power(p) => n.powi(-(p as i32)),
            Outer::Kernel { r, k } => 1.0 / ((n + r as f64) * (n + k as f64)),
            Outer::Shift { k, power } => n.powi(-(power as i32)) / (n + k as f64),
        }
    }

    fn exact(&self, n: u64) -> ExactRational {
        let n = BigInt::from(n);
        let den = match *self {
            Outer::Power(p) => n.pow(p),
            Outer::Kernel { r, k } => (&n + r) * (&n + k),
            Outer::Shift { k, power } => n.pow(power) * (&n + k),
        };
        ExactRational::new(BigInt::one(), den)
    }
}

/// Symbolic description of `Σ_{n≥1} sign(n) w^n Π factors / outer(n)`.
///
/// `sign(n) = (−1)^{n−1}` when `alternating` is set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SumDescriptor {
    pub factors: Vec<(Factor, u32)>,
    pub outer: Outer,
    pub alternating: bool,
    pub ratio: Option<ExactRational>,
}

impl SumDescriptor {
    pub fn new(outer: Outer) -> Self {
        Self {
            factors: Vec::new(),
            outer,
            alternating: false,
            ratio: None,
        }
    }

    /// `Σ Π factors / n^p`
    pub fn power(p: u32) -> Self {
        Self::new(Outer::Power(p))
    }

    pub fn kernel(r: u32, k: u32) -> Self {
        Self::new(Outer::Kernel { r, k })
    }

    pub fn shift(k: u32, power: u32) -> Self {
        Self::new(Outer::Shift { k, power })
    }

    /// Multiply the summand by `factor^exponent`.
    pub fn with(mut self, factor: Factor, exponent: u32) -> Self {
        if exponent == 0 {
            return self;
        }
        if let Some(slot) = self.factors.iter_mut().find(|(f, _)| *f == factor) {
            slot.1 += exponent;
        } else {
            self.factors.push((factor, exponent));
        }
        self
    }

    pub fn alternating(mut self) -> Self {
        self.alternating = !self.alternating;
        self
    }

    /// Multiply the summand by `w^n`.
    pub fn ratio(mut self, w: ExactRational) -> Self {
        self.ratio = Some(match self.ratio.take() {
            Some(old) => old * w,
            None => w,
        });
        self
    }

    pub fn validate(&self) -> Result<()> {
        if let Outer::Kernel { r, k } = self.outer {
            if r >= k {
                return Err(Error::InvalidArgument(format!(
                    "kernel 1/((n+r)(n+k)) requires r < k, got r = {r}, k = {k}"
                )));
            }
        }
        for (f, _) in &self.factors {
            f.validate()?;
        }
        if let Some(w) = &self.ratio {
            if w.abs() > ExactRational::one() {
                return Err(Error::Divergent(format!("ratio {w} has |w| > 1")));
            }
        }
        Ok(())
    }

    pub fn log_degree(&self) -> u32 {
        self.factors.iter().map(|(f, e)| f.log_degree() * e).sum()
    }

    /// `|w| < 1`: the sum converges geometrically.
    pub fn is_geometric(&self) -> bool {
        self.ratio
            .as_ref()
            .is_some_and(|w| w.abs() < ExactRational::one())
    }

    /// Effective alternation after folding a ratio of −1 into the sign.
    pub(crate) fn effective_alternating(&self) -> bool {
        let flip = self.ratio.as_ref().is_some_and(|w| *w == -ExactRational::one());
        self.alternating != flip
    }

    /// Exact `n`-th term, for spot checks of the floating-point generator.
    pub fn term_exact(&self, n: u64) -> ExactRational {
        let mut t = self.outer.exact(n);
        for (f, e) in &self.factors {
            let v = f.exact(n);
            for _ in 0..*e {
                t *= &v;
            }
        }
        if let Some(w) = &self.ratio {
            let mut wp = ExactRational::one();
            for _ in 0..n {
                wp *= w;
            }
            t *= wp;
        }
        if self.alternating && n % 2 == 0 {
            t = -t;
        }
        t
    }
}

impl fmt::Display for SumDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Σ ")?;
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|(fac, e)| if *e == 1 { fac.to_string() } else { format!("{fac}^{e}") })
            .collect();
        if let Some(w) = &self.ratio {
            parts.push(format!("({w})^n"));
        }
        if self.alternating {
            parts.push("(−1)^(n−1)".into());
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join("·"))?;
        match self.outer {
            Outer::Power(p) => write!(f, "/n^{p}"),
            Outer::Kernel { r: 0, k } => write!(f, "/(n(n+{k}))"),
            Outer::Kernel { r, k } => write!(f, "/((n+{r})(n+{k}))"),
            Outer::Shift { k, power: 0 } => write!(f, "/(n+{k})"),
            Outer::Shift { k, power } => write!(f, "/(n^{power}(n+{k}))"),
        }
    }
}

/// `1 / (k^p (n + k))` split into powers of `1/n`:
/// `Σ_{i<p} (−1)^{i−1} n^{-i} k^{-(p+1−i)} + (−1)^{p−1} n^{-(p−1)} / (k(n+k))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFractionTerm {
    pub coefficient: ExactRational,
    /// Power of `1/k`; `None` marks the kernel term `1/(k(n+k))`.
    pub power: Option<u32>,
}

pub fn kernel_partial_fraction(k: u64, p: u32, n: u64) -> Vec<PartialFractionTerm> {
    assert!(k >= 1 && p >= 1 && n >= 1, "kernel_partial_fraction needs positive arguments");
    let inv_n = rational(1, n as i64);
    let mut out = Vec::with_capacity(p as usize);
    let mut n_pow = ExactRational::one();
    for i in 1..p {
        n_pow *= &inv_n;
        let c = if i % 2 == 1 { n_pow.clone() } else { -n_pow.clone() };
        out.push(PartialFractionTerm {
            coefficient: c,
            power: Some(p + 1 - i),
        });
    }
    let mut last = ExactRational::one();
    for _ in 1..p {
        last *= &inv_n;
    }
    if p % 2 == 0 {
        last = -last;
    }
    out.push(PartialFractionTerm {
        coefficient: last,
        power: None,
    });
    out
}

/// Sum a partial-fraction expansion back up at the given `k`, `n`.
pub fn partial_fraction_value(terms: &[PartialFractionTerm], k: u64, n: u64) -> ExactRational {
    let kk = BigInt::from(k);
    terms
        .iter()
        .map(|t| match t.power {
            Some(j) => &t.coefficient / ExactRational::from_integer(kk.pow(j)),
            None => &t.coefficient / ExactRational::from_integer(&kk * BigInt::from(n + k)),
        })
        .fold(ExactRational::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_fraction_examples() {
        let t = kernel_partial_fraction(2, 1, 3);
        assert_eq!(t.len(), 1);
        assert_eq!(partial_fraction_value(&t, 2, 3), rational(1, 10));
        let t = kernel_partial_fraction(1, 2, 1);
        assert_eq!(partial_fraction_value(&t, 1, 1), rational(1, 2));
        let t = kernel_partial_fraction(3, 3, 2);
        assert_eq!(partial_fraction_value(&t, 3, 2), rational(1, 135));
    }

    #[test]
    fn partial_fraction_exhaustive() {
        for k in 1..=10u64 {
            for p in 1..=10u32 {
                for n in 1..=10u64 {
                    let t = kernel_partial_fraction(k, p, n);
                    let want = ExactRational::new(
                        BigInt::one(),
                        BigInt::from(k).pow(p) * BigInt::from(n + k),
                    );
                    assert_eq!(partial_fraction_value(&t, k, n), want, "k={k} p={p} n={n}");
                }
            }
        }
    }

    #[test]
    fn kernel_needs_r_below_k() {
        assert!(SumDescriptor::kernel(3, 2).validate().is_err());
        assert!(SumDescriptor::kernel(0, 1).validate().is_ok());
    }

    #[test]
    fn display() {
        let d = SumDescriptor::power(3).with(Factor::Zeta(1), 2).alternating();
        assert_eq!(d.to_string(), "Σ H_n^2·(−1)^(n−1)/n^3");
    }
}
