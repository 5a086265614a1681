//! The pulled-back shape `u^k (a(v) u∂u + c v^N ∂v)` and its arithmetic gates.

use num_traits::{One, Zero};

use super::NormalFormError;
use crate::algebra::{BiPoly, GaussianRational, RatFunc, UniPoly};
use crate::foliation::{Coords, VectorField2};

/// Conditions a pulled-back field must satisfy for the first-integral
/// construction to descend to `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    NDoesNotDivideK,
    NDoesNotDivideNMinusOne,
    ANotInPowers,
    AVanishesAtZero,
    CZero,
    NGreaterThanOne,
    Lambda1NotRational,
    SbarNotInPowers,
}

impl Gate {
    /// The order in which the first-integral construction checks the gates.
    pub const ORDER: [Gate; 8] = [
        Gate::CZero,
        Gate::AVanishesAtZero,
        Gate::NDoesNotDivideK,
        Gate::NDoesNotDivideNMinusOne,
        Gate::ANotInPowers,
        Gate::NGreaterThanOne,
        Gate::Lambda1NotRational,
        Gate::SbarNotInPowers,
    ];

    /// Stable identifier for machine-readable reports.
    pub fn code(self) -> &'static str {
        match self {
            Gate::CZero => "c_nonzero",
            Gate::AVanishesAtZero => "a0_nonzero",
            Gate::NDoesNotDivideK => "n_divides_k",
            Gate::NDoesNotDivideNMinusOne => "n_divides_N_minus_1",
            Gate::ANotInPowers => "a_in_z_pow_n",
            Gate::NGreaterThanOne => "N_equals_1",
            Gate::Lambda1NotRational => "lambda1_rational",
            Gate::SbarNotInPowers => "sbar_in_z_pow_n",
        }
    }
}

/// `u^k·(a(v)·u∂u + c·v^N·∂v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PulledBackRiccati {
    pub k: i64,
    pub a: UniPoly,
    pub c: GaussianRational,
    pub big_n: u32,
}

impl PulledBackRiccati {
    pub fn new(k: i64, a: UniPoly, c: GaussianRational, big_n: u32) -> Self {
        Self { k, a, c, big_n }
    }

    /// The field in the `(u, v)` chart.
    pub fn to_field(&self) -> VectorField2 {
        let uk = RatFunc::laurent_monomial(GaussianRational::one(), self.k, 0);
        let a_u = BiPoly::from_unipoly(&self.a, true).mul_monomial(crate::algebra::Monomial::new(1, 0));
        let cv = BiPoly::term(self.c.clone(), 0, self.big_n);
        VectorField2::new(
            &uk * &RatFunc::from_poly(a_u),
            &uk * &RatFunc::from_poly(cv),
            Coords::UV,
        )
    }

    /// Checks `c ≠ 0`, `a(0) ≠ 0`, `n | k`, `n | (N−1)` for `N > 1` and
    /// `a ∈ C[z^n]`, in that order.
    pub fn validate(&self, n: u32) -> Result<(), NormalFormError> {
        let fail = |g| Err(NormalFormError::GateFailure(g));
        if self.c.is_zero() {
            return fail(Gate::CZero);
        }
        if self.big_n == 0 {
            return Err(NormalFormError::ShapeMismatch("N must be positive".into()));
        }
        if self.a.coeff(0).is_zero() {
            return fail(Gate::AVanishesAtZero);
        }
        let n = n as i64;
        if self.k.rem_euclid(n) != 0 {
            return fail(Gate::NDoesNotDivideK);
        }
        if self.big_n > 1 && (self.big_n as i64 - 1) % n != 0 {
            return fail(Gate::NDoesNotDivideNMinusOne);
        }
        if !self.a.is_in_powers_of(n as usize) {
            return fail(Gate::ANotInPowers);
        }
        Ok(())
    }
}

/// Reads `(k, a, c, N)` off a field in the `(u, v)` chart without applying
/// the gates.
pub fn read_pullback_shape(w: &VectorField2) -> Result<PulledBackRiccati, NormalFormError> {
    let mismatch = |s: &str| Err(NormalFormError::ShapeMismatch(s.into()));
    if w.coords != Coords::UV {
        return mismatch("field must be in the (u, v) chart");
    }
    // denominators must be pure powers of u
    let u_power = |f: &RatFunc| -> Option<i64> {
        let d = f.den();
        match d.num_terms() {
            1 => {
                let (mono, _) = d.terms().next().unwrap();
                (mono.j == 0).then_some(mono.i as i64)
            }
            _ => None,
        }
    };
    let Some(dv) = u_power(&w.comp_y) else {
        return mismatch("the d/dv component has a denominator other than a power of u");
    };
    let num_v = w.comp_y.num();
    if num_v.num_terms() != 1 {
        return mismatch("the d/dv component is not a monomial c*u^k*v^N");
    }
    let (mono_v, c) = num_v.terms().next().map(|(m, c)| (*m, c.clone())).unwrap();
    let k = mono_v.i as i64 - dv;
    let big_n = mono_v.j;

    let a = if w.comp_x.is_zero() {
        UniPoly::zero()
    } else {
        let Some(du) = u_power(&w.comp_x) else {
            return mismatch("the d/du component has a denominator other than a power of u");
        };
        let num_u = w.comp_x.num();
        let first_i = num_u.terms().next().unwrap().0.i;
        if num_u.terms().any(|(m, _)| m.i != first_i) {
            return mismatch("the d/du component is not u^(k+1) times a function of v");
        }
        if first_i as i64 - du != k + 1 {
            return mismatch("the u-exponents of the two components are inconsistent");
        }
        let mut coeffs = vec![GaussianRational::zero(); num_u.degree_y().unwrap() as usize + 1];
        for (m, cf) in num_u.terms() {
            coeffs[m.j as usize] = cf.clone();
        }
        UniPoly::new(coeffs)
    };
    Ok(PulledBackRiccati { k, a, c, big_n })
}

/// Factors `W = u^k·(a(v)·u∂u + c·v^N·∂v)` and applies every gate.
pub fn extract_pullback_shape(w: &VectorField2, n: u32) -> Result<PulledBackRiccati, NormalFormError> {
    let shape = read_pullback_shape(w)?;
    shape.validate(n)?;
    Ok(shape)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(t: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_int_terms(t)
    }

    fn uv(a: BiPoly, b: BiPoly) -> VectorField2 {
        VectorField2::from_polys(a, b, Coords::UV)
    }

    #[test]
    fn catalog_shape() {
        let w = uv(bp(&[(1, 1, 0), (1, 1, 1)]), bp(&[(2, 0, 1)]));
        let s = extract_pullback_shape(&w, 1).unwrap();
        assert_eq!(s, PulledBackRiccati::new(0, UniPoly::from_ints(&[1, 1]), 2.into(), 1));
        assert_eq!(s.to_field(), w);
    }

    #[test]
    fn a_vanishing_at_zero() {
        // u^2 (v u d/du + v^3 d/dv)
        let w = uv(bp(&[(1, 3, 1)]), bp(&[(1, 2, 3)]));
        let s = read_pullback_shape(&w).unwrap();
        assert_eq!((s.k, s.big_n), (2, 3));
        assert_eq!(
            extract_pullback_shape(&w, 1),
            Err(NormalFormError::GateFailure(Gate::AVanishesAtZero))
        );
    }

    #[test]
    fn radial_n2_accepted() {
        let w = uv(BiPoly::x(), BiPoly::y());
        let s = extract_pullback_shape(&w, 2).unwrap();
        assert_eq!(s, PulledBackRiccati::new(0, UniPoly::one(), 1.into(), 1));
    }

    #[test]
    fn gates() {
        let g = |k, a: &[i64], n_big, n| PulledBackRiccati::new(k, UniPoly::from_ints(a), 1.into(), n_big).validate(n);
        assert_eq!(
            g(1, &[1], 1, 2),
            Err(NormalFormError::GateFailure(Gate::NDoesNotDivideK))
        );
        assert_eq!(
            g(0, &[1], 2, 2),
            Err(NormalFormError::GateFailure(Gate::NDoesNotDivideNMinusOne))
        );
        assert_eq!(
            g(0, &[1, 1], 1, 2),
            Err(NormalFormError::GateFailure(Gate::ANotInPowers))
        );
        assert!(g(-2, &[1, 0, 1], 3, 2).is_ok());
    }

    #[test]
    fn negative_k_round_trip() {
        let s = PulledBackRiccati::new(
            -2,
            UniPoly::from_ints(&[3, 0, 1]),
            GaussianRational::from_ratio(1, 2),
            1,
        );
        assert_eq!(extract_pullback_shape(&s.to_field(), 2).unwrap(), s);
    }

    #[test]
    fn mismatches() {
        // d/du component depends on u in a mixed way
        let w = uv(bp(&[(1, 1, 0), (1, 2, 1)]), bp(&[(1, 0, 1)]));
        assert!(matches!(
            read_pullback_shape(&w),
            Err(NormalFormError::ShapeMismatch(_))
        ));
        // d/dv component not a monomial
        let w = uv(BiPoly::x(), bp(&[(1, 0, 1), (1, 0, 2)]));
        assert!(matches!(
            read_pullback_shape(&w),
            Err(NormalFormError::ShapeMismatch(_))
        ));
    }
}
