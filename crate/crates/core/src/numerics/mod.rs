//! Precision-aware summation and quadrature primitives.

mod quadrature;
mod real;
mod summation;

pub use quadrature::{quad_tanh_sinh, quad_tanh_sinh_endpoint, MAX_LEVEL};
pub use real::RealWithError;
pub use summation::{
    alternating_sum, alternating_sum_with_tail, compensated_sum, sum_with_tail, Compensated,
    TailModel,
};
