//! Rational vector fields and one-forms on C², the covering map `H` and the
//! one-form of times.

mod covering;
mod field;
mod times;

pub use covering::{cyclotomic, deck_invariant, CoveringMapH};
pub use field::{
    differential, differential_rat, dlog, hamiltonian_field, reduce_codim1, Coords, OneForm2, VectorField2,
};
pub use times::{times_chain, times_form, TimesChain, TimesFormData};

use crate::algebra::BiPoly;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FoliationError {
    #[error("objects live in different coordinate charts")]
    CoordinateMismatch,
    #[error("the one-form vanishes identically")]
    ZeroForm,
    #[error("a polynomial was required")]
    NotPolynomial,
    #[error("not invariant under the deck group of H")]
    NotDeckInvariant,
    #[error("the expression is undefined on the whole chart (division by zero function)")]
    SingularLocus,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("not P-complete: eta(X) vanishes identically, X is tangent to the fibers")]
    NotPCompleteDegenerate,
    #[error("not P-complete: eta(X) has the extra factor {residual}")]
    NotPComplete { residual: BiPoly },
    #[error("the exponent beta = {beta} differs from N = {big_n}")]
    BetaNotN { beta: u32, big_n: u32 },
    #[error("pulled-back field has the wrong shape: {0}")]
    Shape(String),
}
