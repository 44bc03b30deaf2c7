//! Direct numerical evaluation of Euler-type sums and the integrals behind them.

mod descriptor;
mod evaluate;
pub mod integrals;
mod parse;

pub use crate::combinatorics::nested_inner;
pub use descriptor::{
    kernel_partial_fraction, partial_fraction_value, Factor, Outer, PartialFractionTerm,
    SumDescriptor,
};
pub use evaluate::{
    evaluate, evaluate_uncached, EvalConfig, TermGenerator, DEFAULT_N, ENV_DEFAULT_N,
};
pub use parse::parse_sum_spec;

use crate::identities::{self, Params, VerificationResult, VerifyOptions};

/// Integral representations that can be checked against their sum or
/// closed-form side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntegralId {
    Eq2_5,
    Eq2_6,
    Eq2_9,
    Eq2_14,
    Eq2_24,
    Eq2_26,
}

impl IntegralId {
    pub fn id(self) -> &'static str {
        match self {
            IntegralId::Eq2_5 => "eq-2.5",
            IntegralId::Eq2_6 => "eq-2.6",
            IntegralId::Eq2_9 => "eq-2.9",
            IntegralId::Eq2_14 => "eq-2.14",
            IntegralId::Eq2_24 => "eq-2.24",
            IntegralId::Eq2_26 => "eq-2.26",
        }
    }
}

/// Evaluate the integral by quadrature and the other side by summation or
/// closed form, with default truncation and tolerance.
pub fn integral_identity_check(id: IntegralId, params: &Params) -> crate::Result<VerificationResult> {
    identities::verify(id.id(), params, &VerifyOptions::default())
}
