use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// A floating-point value together with an absolute error estimate.
///
/// Addition and subtraction add the bounds; multiplication and division use
/// first-order propagation plus a rounding term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealWithError {
    pub value: f64,
    pub err: f64,
}

impl RealWithError {
    pub const ZERO: RealWithError = RealWithError { value: 0.0, err: 0.0 };
    pub const ONE: RealWithError = RealWithError { value: 1.0, err: 0.0 };

    pub fn new(value: f64, err: f64) -> Self {
        Self {
            value,
            err: err.abs(),
        }
    }

    /// A value known to full double precision (err is one rounding unit).
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            err: value.abs() * f64::EPSILON,
        }
    }

    pub fn abs_diff(self, other: RealWithError) -> f64 {
        (self.value - other.value).abs()
    }

    pub fn powi(self, k: u32) -> Self {
        let mut acc = RealWithError::ONE;
        for _ in 0..k {
            acc = acc * self;
        }
        acc
    }

    /// Scale by an exactly known factor.
    pub fn scale(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            err: self.err * factor.abs() + (self.value * factor).abs() * f64::EPSILON,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite() && self.err.is_finite()
    }
}

impl Default for RealWithError {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<f64> for RealWithError {
    fn from(value: f64) -> Self {
        Self::exact(value)
    }
}

impl fmt::Display for RealWithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.16e} ± {:.2e}", self.value, self.err)
    }
}

fn rounding(v: f64) -> f64 {
    v.abs() * f64::EPSILON
}

impl Add for RealWithError {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let value = self.value + rhs.value;
        Self {
            value,
            err: self.err + rhs.err + rounding(value),
        }
    }
}

impl Sub for RealWithError {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let value = self.value - rhs.value;
        Self {
            value,
            err: self.err + rhs.err + rounding(value),
        }
    }
}

impl Mul for RealWithError {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let value = self.value * rhs.value;
        Self {
            value,
            err: self.value.abs() * rhs.err + rhs.value.abs() * self.err + self.err * rhs.err
                + rounding(value),
        }
    }
}

impl Div for RealWithError {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let value = self.value / rhs.value;
        let rel = self.err / self.value.abs().max(f64::MIN_POSITIVE)
            + rhs.err / rhs.value.abs().max(f64::MIN_POSITIVE);
        let err = if self.value == 0.0 {
            self.err / rhs.value.abs()
        } else {
            value.abs() * rel
        };
        Self {
            value,
            err: err + rounding(value),
        }
    }
}

impl Neg for RealWithError {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: -self.value,
            err: self.err,
        }
    }
}

impl Add<f64> for RealWithError {
    type Output = Self;
    fn add(self, rhs: f64) -> Self {
        self + RealWithError::exact(rhs)
    }
}

impl Sub<f64> for RealWithError {
    type Output = Self;
    fn sub(self, rhs: f64) -> Self {
        self - RealWithError::exact(rhs)
    }
}

impl Mul<f64> for RealWithError {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<RealWithError> for f64 {
    type Output = RealWithError;
    fn mul(self, rhs: RealWithError) -> RealWithError {
        rhs.scale(self)
    }
}

impl Div<f64> for RealWithError {
    type Output = Self;
    fn div(self, rhs: f64) -> Self {
        self.scale(1.0 / rhs)
    }
}

impl AddAssign for RealWithError {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for RealWithError {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl Sum for RealWithError {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        // Values are accumulated with compensation; bounds simply add.
        let mut acc = super::Compensated::new();
        let mut err = 0.0;
        for x in iter {
            acc.add(x.value);
            err += x.err;
        }
        let value = acc.value();
        RealWithError {
            value,
            err: err + rounding(value),
        }
    }
}
