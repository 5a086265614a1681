//! Normal forms: the fiber polynomial `P = x^m (x^ℓ y + p(x))^n`, its dual
//! field `Y`, the covering map, pulled-back Riccati shapes, Riccati
//! trajectories and the special values of `P`.

mod builders;
mod params;
mod riccati;
mod shape;
mod special;

pub use builders::{build_h, build_p, build_p_poly, build_y};
pub use params::SaitoSuzukiParams;
pub use riccati::{
    riccati_detect, riccati_parametrize, translate_field, translate_point, QuadratureDescriptor, RiccatiParams,
    TrajectoryParam,
};
pub use shape::{extract_pullback_shape, read_pullback_shape, Gate, PulledBackRiccati};
pub use special::{special_values, SpecialValueReport};

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NormalFormError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("gate failure: {0}")]
    GateFailure(Gate),
    #[error("not of Riccati form: {0}")]
    NotRiccati(String),
    #[error("the x-component is not a monomial lambda*x^N")]
    NotMonomial,
    #[error("the base point lies on the invariant line x = 0")]
    BaseOnInvariantLine,
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Gate::NDoesNotDivideK => "n does not divide k",
            Gate::NDoesNotDivideNMinusOne => "n does not divide N - 1",
            Gate::ANotInPowers => "a is not a polynomial in z^n",
            Gate::AVanishesAtZero => "a(0) = 0",
            Gate::CZero => "c = 0",
            Gate::NGreaterThanOne => "N > 1",
            Gate::Lambda1NotRational => "lambda_1 is not rational",
            Gate::SbarNotInPowers => "sbar is not a polynomial in z^n",
        };
        f.write_str(s)
    }
}
