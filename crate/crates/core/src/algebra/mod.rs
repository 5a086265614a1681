//! Exact arithmetic over the Gaussian rationals Q(i).
//!
//! Everything here is immutable-by-value and pure; results are always reduced
//! to a canonical form so that `==` is mathematical equality.

mod bipoly;
pub mod gaussian;
mod gcd;
mod laurent;
mod partial_fraction;
mod ratfunc;
pub mod resultant;
pub mod roots;
mod unipoly;

pub use bipoly::{BiPoly, Monomial};
pub use gaussian::GaussianRational;
pub use gcd::{coprime, poly_gcd, squarefree_decomposition};
pub use laurent::LaurentUniPoly;
pub use partial_fraction::{pf_at_zero, PartialFractionAtZero};
pub use ratfunc::{compose_uni, substitute, substitute_poly, RatFunc};
pub use resultant::{resultant, Eliminate};
pub use unipoly::UniPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("polynomial division has a nonzero remainder")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("a denominator became the zero function")]
    DivisionByZeroFunction,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Joins `(coefficient, monomial)` pairs into parser-compatible text.
pub(crate) fn format_terms(terms: &[(GaussianRational, String)]) -> String {
    use num_traits::One;
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (c, mono)) in terms.iter().enumerate() {
        let c_text = c.to_string();
        let negative = c_text.starts_with('-');
        let mag = if negative { -c } else { c.clone() };
        let body = if mono.is_empty() {
            mag.to_string()
        } else if mag.is_one() {
            mono.clone()
        } else {
            format!("{mag}*{mono}")
        };
        match (idx, negative) {
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (0, false) => out.push_str(&body),
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
        }
    }
    out
}
