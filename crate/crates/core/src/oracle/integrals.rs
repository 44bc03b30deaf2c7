//! Integral representations behind the kernel sums, by tanh-sinh quadrature.
//!
//! Integrands are written in terms of `x` and `d = 1 − x` (exact distance to
//! the upper endpoint), so logarithmic singularities at `x = 1` keep full
//! relative accuracy.

use crate::constants::polylog_real;
use crate::error::Result;
use crate::numerics::{quad_tanh_sinh_endpoint, RealWithError};

pub const QUAD_TOL: f64 = 1e-13;

fn on_unit<F>(f: F) -> Result<RealWithError>
where
    F: Fn(f64, f64) -> f64,
{
    quad_tanh_sinh_endpoint(|x, _, d| f(x, d), 0.0, 1.0, QUAD_TOL)
}

/// `x^{r−1} − x^{k−1}` for `0 ≤ r < k`, accurate near `x = 1`.
fn power_gap(x: f64, d: f64, r: u32, k: u32) -> f64 {
    let ln_x = (-d).ln_1p();
    // x^{r−1} (1 − x^{k−r})
    x.powi(r as i32 - 1) * -((k - r) as f64 * ln_x).exp_m1()
}

/// `∫₀¹ (x^{r−1} − x^{k−1}) Li_m(x)/(1 − x) dx`
pub fn zeta_kernel_integral(m: u32, r: u32, k: u32) -> Result<RealWithError> {
    on_unit(|x, d| power_gap(x, d, r, k) * polylog_real(m, x, d) / d)
}

/// `∫₀¹ (x^{k−1} − x^{r−1}) Li_m(−x)/(1 − x) dx`
pub fn alt_kernel_integral(m: u32, r: u32, k: u32) -> Result<RealWithError> {
    on_unit(|x, d| -power_gap(x, d, r, k) * polylog_real(m, -x, 1.0 + x) / d)
}

/// `∫₀^x t^{n−1} Li_q(t) dt` for `x ∈ [−1, 1]`; `n = 0` is allowed since
/// `Li_q(t)/t` is regular at the origin.
pub fn polylog_moment(n: u32, q: u32, x: f64) -> Result<RealWithError> {
    quad_tanh_sinh_endpoint(
        |t, _, db| {
            // Above zero the limits are not swapped and `db = x − t`.
            let one_minus_t = if x > 0.0 { (1.0 - x) + db } else { 1.0 - t };
            t.powi(n as i32 - 1) * polylog_real(q, t, one_minus_t)
        },
        0.0,
        x,
        QUAD_TOL,
    )
}

/// `∫₀¹ t^{n−1} ln^k(1 − t) dt`
pub fn log_moment(n: u32, k: u32) -> Result<RealWithError> {
    on_unit(|t, d| t.powi(n as i32 - 1) * d.ln().powi(k as i32))
}

/// `∫₀^x t^{n−1} ln^k(1 − t) dt` for `x ∈ [−1, 1)`.
pub fn log_moment_to(n: u32, k: u32, x: f64) -> Result<RealWithError> {
    quad_tanh_sinh_endpoint(
        |t, _, _| t.powi(n as i32 - 1) * (-t).ln_1p().powi(k as i32),
        0.0,
        x,
        QUAD_TOL,
    )
}

/// `∫₀¹ ln^{p−1}(1 − x)/(1 − x) · (x^{r−1} − x^{k−1}) dx`
pub fn stirling_kernel_integral(p: u32, r: u32, k: u32) -> Result<RealWithError> {
    on_unit(|x, d| d.ln().powi(p as i32 - 1) / d * power_gap(x, d, r, k))
}

/// `∫₀¹ ln^{p−1}(1 − x)/x dx`
pub fn log_over_x_integral(p: u32) -> Result<RealWithError> {
    on_unit(|x, d| d.ln().powi(p as i32 - 1) / x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::zeta;

    #[test]
    fn log_moments() {
        let v = log_moment(2, 2).unwrap();
        assert!((v.value - 1.75).abs() < 1e-12, "{v}");
        let v = log_over_x_integral(3).unwrap();
        assert!((v.value - 2.0 * zeta(3).unwrap().value).abs() < 1e-11, "{v}");
    }

    #[test]
    fn zeta_kernel_at_k1_r0() {
        // ∫ (1/x − 1) Li_1(x)/(1−x) = ∫ −ln(1−x)/x = ζ(2)
        let v = zeta_kernel_integral(1, 0, 1).unwrap();
        assert!((v.value - zeta(2).unwrap().value).abs() < 1e-12, "{v}");
    }

    #[test]
    fn polylog_moment_at_half() {
        // ∫₀^{1/2} −ln(1−t) dt = [(1−t)ln(1−t) + t]₀^{1/2}
        let v = polylog_moment(1, 1, 0.5).unwrap();
        let want = 0.5 - 0.5 * std::f64::consts::LN_2;
        assert!((v.value - want).abs() < 1e-14, "{v}");
        // ∫₀¹ Li_2(t)/t = ζ(3), ∫₀¹ −ln(1−t) = 1
        let v = polylog_moment(0, 2, 1.0).unwrap();
        assert!((v.value - zeta(3).unwrap().value).abs() < 1e-12, "{v}");
        let v = polylog_moment(1, 1, 1.0).unwrap();
        assert!((v.value - 1.0).abs() < 1e-12, "{v}");
    }
}
