//! Riccati fields `a(x)∂x + (b(x)y + c(x))∂y` and their trajectories.

use num_complex::Complex64;
use num_traits::Zero;

use super::NormalFormError;
use crate::algebra::{BiPoly, GaussianRational, LaurentUniPoly, RatFunc, UniPoly};
use crate::foliation::{Coords, VectorField2};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiccatiParams {
    pub a: UniPoly,
    pub b: UniPoly,
    pub c: UniPoly,
    /// `Some((λ, N))` when `a = λx^N`.
    pub monomial: Option<(GaussianRational, u32)>,
}

impl RiccatiParams {
    pub fn new(a: UniPoly, b: UniPoly, c: UniPoly) -> Self {
        let monomial = match a.degree() {
            Some(d) if a.terms().count() == 1 => Some((a.leading_coeff(), d as u32)),
            _ => None,
        };
        Self { a, b, c, monomial }
    }

    pub fn to_field(&self) -> VectorField2 {
        let comp_x = BiPoly::from_unipoly(&self.a, false);
        let comp_y = &(&BiPoly::from_unipoly(&self.b, false) * &BiPoly::y()) + &BiPoly::from_unipoly(&self.c, false);
        VectorField2::from_polys(comp_x, comp_y, Coords::XY)
    }
}

/// Recognizes `a(x)∂x + (b(x)y + c(x))∂y`.
pub fn riccati_detect(field: &VectorField2) -> Result<RiccatiParams, NormalFormError> {
    if field.coords != Coords::XY {
        return Err(NormalFormError::NotRiccati("field must be in the (x, y) chart".into()));
    }
    let Some((px, py)) = field.polys() else {
        return Err(NormalFormError::NotRiccati("components must be polynomial".into()));
    };
    let Some(a) = px.as_unipoly_x() else {
        return Err(NormalFormError::NotRiccati("the d/dx component depends on y".into()));
    };
    if py.degree_y().unwrap_or(0) > 1 {
        return Err(NormalFormError::NotRiccati(
            "the d/dy component has degree > 1 in y".into(),
        ));
    }
    let dense = py.to_y_dense();
    let c = dense.first().cloned().unwrap_or_else(UniPoly::zero);
    let b = dense.get(1).cloned().unwrap_or_else(UniPoly::zero);
    Ok(RiccatiParams::new(a, b, c))
}

/// The integral `∫_0^t coeff(s)·(s/x₀)^power·exp(exponent(s) − exponent(x₀)) dt`
/// with `s = t + x₀`, left unevaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadratureDescriptor {
    pub x0: GaussianRational,
    pub coeff: LaurentUniPoly,
    pub power: GaussianRational,
    pub exponent: LaurentUniPoly,
}

impl QuadratureDescriptor {
    pub fn is_trivial(&self) -> bool {
        self.coeff.is_zero()
    }

    /// The integrand at time `t`, on the principal branch of `(s/x₀)^power`.
    pub fn integrand(&self, t: Complex64) -> Complex64 {
        if self.coeff.is_zero() {
            return Complex64::zero();
        }
        let x0 = self.x0.to_complex();
        let s = t + x0;
        let lp = (s / x0).ln() * self.power.to_complex();
        let le = self.exponent.eval_complex(s) - self.exponent.eval_complex(x0);
        self.coeff.eval_complex(s) * (lp + le).exp()
    }
}

/// Closed-form trajectory of `X/a` for `a = λx^N`: with `s = t + x₀`,
/// `x(t) = s` and `y(t) = (y₀ + I(t))·E(t)`, where
/// `E(t) = (s/x₀)^μ·exp(L(s) − L(x₀))` and `I` is the quadrature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrajectoryParam {
    pub base: (GaussianRational, GaussianRational),
    /// `b̄(s) = b(s)/(λs^N)`
    pub bbar: LaurentUniPoly,
    /// `c̄(s) = c(s)/(λs^N)`
    pub cbar: LaurentUniPoly,
    /// Residue of `b̄` at `s = 0`.
    pub mu: GaussianRational,
    /// `L`, the antiderivative of `b̄ − μ/s`.
    pub laurent_exp: LaurentUniPoly,
    pub quadrature: QuadratureDescriptor,
}

impl TrajectoryParam {
    /// Residuals of `y' = b̄y + c̄` after replacing `I'` by its integrand:
    /// `E'/E − b̄`, `integrand coefficient − c̄`, `power + μ` and
    /// `exponent + L`. All vanish for a valid parametrization.
    pub fn ode_residual(&self) -> (LaurentUniPoly, LaurentUniPoly, GaussianRational, LaurentUniPoly) {
        let log_deriv = &LaurentUniPoly::monomial(self.mu.clone(), -1) + &self.laurent_exp.derivative();
        (
            &log_deriv - &self.bbar,
            &self.quadrature.coeff - &self.cbar,
            &self.quadrature.power + &self.mu,
            &self.quadrature.exponent + &self.laurent_exp,
        )
    }

    pub fn verify(&self) -> bool {
        let (r1, r2, r3, r4) = self.ode_residual();
        r1.is_zero() && r2.is_zero() && r3.is_zero() && r4.is_zero()
    }

    pub fn x_at(&self, t: Complex64) -> Complex64 {
        t + self.base.0.to_complex()
    }

    /// `E(t)` on the principal branch.
    pub fn e_factor(&self, t: Complex64) -> Complex64 {
        let x0 = self.base.0.to_complex();
        let s = t + x0;
        let lp = (s / x0).ln() * self.mu.to_complex();
        let le = self.laurent_exp.eval_complex(s) - self.laurent_exp.eval_complex(x0);
        (lp + le).exp()
    }

    /// `y(t)` given the value of the quadrature `I(t)`.
    pub fn y_at(&self, t: Complex64, integral: Complex64) -> Complex64 {
        (self.base.1.to_complex() + integral) * self.e_factor(t)
    }
}

/// Builds the trajectory of `X/a` through `(x₀, y₀)`.
pub fn riccati_parametrize(
    r: &RiccatiParams,
    x0: &GaussianRational,
    y0: &GaussianRational,
) -> Result<TrajectoryParam, NormalFormError> {
    let (lambda, big_n) = r.monomial.clone().ok_or(NormalFormError::NotMonomial)?;
    if x0.is_zero() {
        return Err(NormalFormError::BaseOnInvariantLine);
    }
    let inv = lambda.inv().expect("monomial coefficient is nonzero");
    let bbar = LaurentUniPoly::from_unipoly(&r.b.scale(&inv), -(big_n as i64));
    let cbar = LaurentUniPoly::from_unipoly(&r.c.scale(&inv), -(big_n as i64));
    let (mu, laurent_exp) = bbar.integrate();
    let quadrature = QuadratureDescriptor {
        x0: x0.clone(),
        coeff: cbar.clone(),
        power: -&mu,
        exponent: -&laurent_exp,
    };
    let out = TrajectoryParam {
        base: (x0.clone(), y0.clone()),
        bbar,
        cbar,
        mu,
        laurent_exp,
        quadrature,
    };
    debug_assert!(out.verify());
    Ok(out)
}

pub fn translate_point(
    alpha: &GaussianRational,
    point: &(GaussianRational, GaussianRational),
) -> (GaussianRational, GaussianRational) {
    (&point.0 + alpha, point.1.clone())
}

/// Transports a field along `(x, y) ↦ (x + α, y)`, i.e. substitutes
/// `x ← x − α` in its coefficients.
pub fn translate_field(alpha: &GaussianRational, field: &VectorField2) -> VectorField2 {
    let shifted = RatFunc::from_poly(&BiPoly::x() - &BiPoly::constant(alpha.clone()));
    let sub = |f: &RatFunc| {
        f.substitute(&shifted, &RatFunc::y())
            .expect("a translation never zeroes a denominator")
    };
    VectorField2::new(sub(&field.comp_x), sub(&field.comp_y), field.coords)
}

impl RiccatiParams {
    /// `X/a` in the form `∂x + (b̄y + c̄)∂y`, for checks against the
    /// parametrization.
    pub fn normalized_rhs(&self) -> Option<(RatFunc, RatFunc)> {
        let a = RatFunc::from_poly(BiPoly::from_unipoly(&self.a, false));
        if a.is_zero() {
            return None;
        }
        let b = RatFunc::from_poly(BiPoly::from_unipoly(&self.b, false));
        let c = RatFunc::from_poly(BiPoly::from_unipoly(&self.c, false));
        Some((b.checked_div(&a).ok()?, c.checked_div(&a).ok()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(t: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_int_terms(t)
    }

    fn gr(v: i64) -> GaussianRational {
        GaussianRational::from_int(v)
    }

    #[test]
    fn detect_examples() {
        let r = riccati_detect(&VectorField2::from_polys(bp(&[(1, 2, 0)]), BiPoly::y(), Coords::XY)).unwrap();
        assert_eq!(r.a, UniPoly::from_ints(&[0, 0, 1]));
        assert_eq!(r.b, UniPoly::one());
        assert!(r.c.is_zero());
        assert_eq!(r.monomial, Some((gr(1), 2)));

        let r = riccati_detect(&VectorField2::from_polys(
            BiPoly::x(),
            bp(&[(1, 1, 1), (3, 0, 0)]),
            Coords::XY,
        ))
        .unwrap();
        assert_eq!(
            (r.a.clone(), r.b.clone(), r.c.clone()),
            (UniPoly::var(), UniPoly::var(), UniPoly::constant(gr(3)))
        );

        let catalog = VectorField2::from_polys(bp(&[(1, 1, 0), (1, 2, 1)]), bp(&[(1, 0, 1), (-1, 1, 2)]), Coords::XY);
        assert!(matches!(riccati_detect(&catalog), Err(NormalFormError::NotRiccati(_))));
    }

    #[test]
    fn parametrize_examples() {
        let one = gr(1);
        // a = x^2, b = 1: y = exp(-1/(t+1) + 1)
        let r = RiccatiParams::new(UniPoly::from_ints(&[0, 0, 1]), UniPoly::one(), UniPoly::zero());
        let t = riccati_parametrize(&r, &one, &one).unwrap();
        assert!(t.mu.is_zero());
        assert_eq!(t.laurent_exp, LaurentUniPoly::monomial(gr(-1), -1));
        assert!(t.quadrature.is_trivial());
        let tt = Complex64::new(0.3, 0.2);
        let expect = (-1.0 / (tt + 1.0) + 1.0).exp();
        assert!((t.y_at(tt, Complex64::zero()) - expect).norm() < 1e-14);

        // a = x, b = x: y = e^t
        let r = RiccatiParams::new(UniPoly::var(), UniPoly::var(), UniPoly::zero());
        let t = riccati_parametrize(&r, &one, &one).unwrap();
        assert!(t.mu.is_zero());
        assert_eq!(t.laurent_exp, LaurentUniPoly::monomial(gr(1), 1));

        // a = x, b = 1: y = y0 (t + 1)
        let r = RiccatiParams::new(UniPoly::var(), UniPoly::one(), UniPoly::zero());
        let t = riccati_parametrize(&r, &one, &gr(3)).unwrap();
        assert_eq!(t.mu, one);
        assert!((t.y_at(tt, Complex64::zero()) - (tt + 1.0) * 3.0).norm() < 1e-14);
    }

    #[test]
    fn parametrize_errors() {
        let r = RiccatiParams::new(UniPoly::var(), UniPoly::one(), UniPoly::zero());
        assert_eq!(
            riccati_parametrize(&r, &gr(0), &gr(1)),
            Err(NormalFormError::BaseOnInvariantLine)
        );
        let r = RiccatiParams::new(UniPoly::from_ints(&[1, 1]), UniPoly::one(), UniPoly::zero());
        assert_eq!(
            riccati_parametrize(&r, &gr(1), &gr(1)),
            Err(NormalFormError::NotMonomial)
        );
    }

    #[test]
    fn formal_check_catches_tampering() {
        let r = RiccatiParams::new(
            UniPoly::from_ints(&[0, 0, 2]),
            UniPoly::from_ints(&[1, 3, 0, 1]),
            UniPoly::from_ints(&[5]),
        );
        let mut t = riccati_parametrize(&r, &gr(2), &gr(1)).unwrap();
        assert!(t.verify());
        t.laurent_exp = &t.laurent_exp + &LaurentUniPoly::monomial(gr(1), 2);
        assert!(!t.verify());
    }

    #[test]
    fn translations() {
        let p = (gr(1), gr(5));
        assert_eq!(translate_point(&gr(2), &p), (gr(3), gr(5)));
        assert_eq!(translate_point(&gr(0), &p), p);
        let f = VectorField2::from_polys(BiPoly::one(), BiPoly::x(), Coords::XY);
        let g = translate_field(&gr(1), &f);
        assert_eq!(
            g,
            VectorField2::from_polys(BiPoly::one(), bp(&[(1, 1, 0), (-1, 0, 0)]), Coords::XY)
        );
        assert_eq!(translate_field(&gr(-1), &g), f);
    }
}
