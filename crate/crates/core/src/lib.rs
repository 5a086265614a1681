//! Symbolic-numeric toolkit for polynomial vector fields on C² whose
//! foliations carry a first integral of type C*.
//!
//! The crate is layered bottom-up:
//!
//! - [`algebra`]: exact Gaussian-rational polynomials, gcds, resultants.
//! - [`foliation`]: vector fields, one-forms, the covering map `H` and the
//!   one-form of times.
//! - [`normal_forms`]: the fiber polynomial `x^m (x^ℓ y + p(x))^n`, its dual
//!   field, Riccati recognition and trajectory parametrization.
//! - [`first_integral`]: the closed form `Γ` and the single-valued first
//!   integral `G^{nq}`, checked by exact contraction.
//! - [`tracer`]: complex-time trajectory integration and conservation checks.
//! - [`expr`]: parsing and printing of the text syntax used by the CLI.

pub mod algebra;
pub mod expr;
pub mod first_integral;
pub mod foliation;
pub mod normal_forms;
pub mod tracer;

pub use algebra::{BiPoly, GaussianRational, LaurentUniPoly, RatFunc, UniPoly};
pub use first_integral::{FirstIntegralForm, GammaClosedForm, Verdict};
pub use foliation::{Coords, CoveringMapH, OneForm2, TimesFormData, VectorField2};
pub use normal_forms::{PulledBackRiccati, RiccatiParams, SaitoSuzukiParams};
