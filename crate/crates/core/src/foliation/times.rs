//! The one-form of times `τ` with `τ(X) = 1` and its pullback `ϱ = H^*τ`.

use num_traits::One;

use super::{reduce_codim1, Coords, CoveringMapH, FoliationError, OneForm2, VectorField2};
use crate::algebra::{BiPoly, GaussianRational, RatFunc};
use crate::normal_forms::{read_pullback_shape, PulledBackRiccati, SaitoSuzukiParams};

/// `η`, `η(X) = unit·x^α·w^β` with `w = x^ℓ y + p(x)`, and `τ = η/η(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimesFormData {
    pub eta: OneForm2,
    pub eta_of_x: BiPoly,
    pub alpha: u32,
    pub beta: u32,
    pub unit_const: GaussianRational,
    pub tau: OneForm2,
}

/// Computes the one-form of times of `X` relative to the fibration of `P`.
///
/// `η` is `dP` with its codimension-one zeros and poles removed, which for
/// the normal form is `m·w dx + n·x dw` (also for `m < 0`). Then
/// `τ = η/η(X) = (x·w/η(X))·dP/P`.
pub fn times_form(field: &VectorField2, params: &SaitoSuzukiParams) -> Result<TimesFormData, FoliationError> {
    if field.coords != Coords::XY {
        return Err(FoliationError::CoordinateMismatch);
    }
    if !field.is_polynomial() {
        return Err(FoliationError::NotPolynomial);
    }
    let w = params.fiber_factor();
    let x = BiPoly::x();
    let m = GaussianRational::from_int(params.m);
    let n = GaussianRational::from_int(params.n as i64);
    let raw = OneForm2::new(
        (&w.scale(&m) + &(&x * &w.dx()).scale(&n)).into(),
        (&x * &w.dy()).scale(&n).into(),
        Coords::XY,
    );
    let eta = reduce_codim1(&raw)?;
    let contraction = eta.contract(field)?;
    let eta_of_x = contraction.as_poly().ok_or(FoliationError::NotPolynomial)?;
    if eta_of_x.is_zero() {
        return Err(FoliationError::NotPCompleteDegenerate);
    }
    let mut rest = eta_of_x.clone();
    let mut alpha = 0;
    while let Ok(q) = rest.div_exact(&x) {
        rest = q;
        alpha += 1;
    }
    let mut beta = 0;
    while let Ok(q) = rest.div_exact(&w) {
        rest = q;
        beta += 1;
    }
    let Some(unit_const) = rest.as_constant() else {
        return Err(FoliationError::NotPComplete { residual: rest });
    };
    let inv = RatFunc::new(BiPoly::one(), eta_of_x.clone()).expect("eta(X) is nonzero");
    let tau = eta.scale_by(&inv);
    Ok(TimesFormData {
        eta,
        eta_of_x,
        alpha,
        beta,
        unit_const,
        tau,
    })
}

/// Every identity relating `τ`, `ϱ = H^*τ` and the pulled-back field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimesChain {
    pub rho: OneForm2,
    pub pulled_back: VectorField2,
    pub shape: PulledBackRiccati,
    /// `ϱ = (1/unit)·u^{m(β−1)−n(α−1)}·v^{−(β−1)}·d(v^n)/v^n`
    pub matches_unit_form: bool,
    /// `ϱ = dv/(c·u^k·v^N)`
    pub matches_reduced_form: bool,
    /// `ϱ(H^*X) = 1`
    pub contraction_is_one: bool,
    /// `k = n(α−1) − m(N−1)`
    pub k_identity: bool,
}

impl TimesChain {
    pub fn all_hold(&self) -> bool {
        self.matches_unit_form && self.matches_reduced_form && self.contraction_is_one && self.k_identity
    }
}

/// Pulls `τ` back along `H` and checks it against the two closed forms and
/// the shape `u^k (a(v) u∂u + c v^N ∂v)` of `H^*X`.
pub fn times_chain(
    field: &VectorField2,
    params: &SaitoSuzukiParams,
    data: &TimesFormData,
) -> Result<TimesChain, FoliationError> {
    let h = CoveringMapH::new(params)?;
    let rho = h.pullback_form(&data.tau)?;
    let pulled_back = h.pullback_field(field)?;
    let shape = read_pullback_shape(&pulled_back).map_err(|e| FoliationError::Shape(e.to_string()))?;
    if data.beta != shape.big_n {
        return Err(FoliationError::BetaNotN {
            beta: data.beta,
            big_n: shape.big_n,
        });
    }
    let (m, n) = (params.m, params.n as i64);
    let (alpha, beta) = (data.alpha as i64, data.beta as i64);
    let unit_inv = data.unit_const.inv().expect("unit is nonzero");

    let eq_unit = OneForm2::new(
        RatFunc::zero(),
        RatFunc::laurent_monomial(
            &unit_inv * &GaussianRational::from_int(n),
            m * (beta - 1) - n * (alpha - 1),
            -beta,
        ),
        Coords::UV,
    );
    let c_inv = shape.c.inv().expect("c is nonzero");
    let eq_reduced = OneForm2::new(
        RatFunc::zero(),
        RatFunc::laurent_monomial(c_inv, -shape.k, -(shape.big_n as i64)),
        Coords::UV,
    );
    let contraction_is_one = rho.contract(&pulled_back)?.is_one();
    let k_identity = shape.k == n * (alpha - 1) - m * (shape.big_n as i64 - 1);
    Ok(TimesChain {
        matches_unit_form: rho == eq_unit,
        matches_reduced_form: rho == eq_reduced,
        contraction_is_one,
        k_identity,
        rho,
        pulled_back,
        shape,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::UniPoly;
    use crate::foliation::dlog;
    use crate::normal_forms::{build_p, build_y};

    fn bp(t: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_int_terms(t)
    }

    fn catalog() -> (VectorField2, SaitoSuzukiParams) {
        (
            VectorField2::from_polys(bp(&[(1, 1, 0), (1, 2, 1)]), bp(&[(1, 0, 1), (-1, 1, 2)]), Coords::XY),
            SaitoSuzukiParams::monomial(1, 1).unwrap(),
        )
    }

    #[test]
    fn catalog_times_form() {
        let (x, params) = catalog();
        let t = times_form(&x, &params).unwrap();
        assert_eq!((t.alpha, t.beta), (1, 1));
        assert_eq!(t.unit_const, GaussianRational::from_int(2));
        assert_eq!(t.eta_of_x, bp(&[(2, 1, 1)]));
        // (1/2)·d(xy)/(xy)
        let p = RatFunc::from_poly(bp(&[(1, 1, 1)]));
        let expected = dlog(&p, Coords::XY)
            .unwrap()
            .scale_by(&RatFunc::constant(GaussianRational::from_ratio(1, 2)));
        assert_eq!(t.tau, expected);
        assert!(t.tau.contract(&x).unwrap().is_one());
    }

    #[test]
    fn catalog_chain() {
        let (x, params) = catalog();
        let t = times_form(&x, &params).unwrap();
        let chain = times_chain(&x, &params, &t).unwrap();
        assert!(chain.all_hold(), "{chain:?}");
        assert_eq!(chain.shape.k, 0);
        assert_eq!(chain.shape.c, GaussianRational::from_int(2));
        let half_dv_over_v = OneForm2::new(
            RatFunc::zero(),
            RatFunc::laurent_monomial(GaussianRational::from_ratio(1, 2), 0, -1),
            Coords::UV,
        );
        assert_eq!(chain.rho, half_dv_over_v);
    }

    #[test]
    fn tangent_field_is_degenerate() {
        for params in [
            SaitoSuzukiParams::monomial(1, 1).unwrap(),
            SaitoSuzukiParams::new(1, 1, 1, UniPoly::from_ints(&[1])).unwrap(),
            SaitoSuzukiParams::monomial(-1, 2).unwrap(),
        ] {
            let y = build_y(&params).unwrap();
            assert_eq!(times_form(&y, &params), Err(FoliationError::NotPCompleteDegenerate));
        }
    }

    #[test]
    fn extra_factor_is_not_p_complete() {
        // y d/dx + x d/dy: eta(X) = x^2 + y^2
        let (_, params) = catalog();
        let x = VectorField2::from_polys(BiPoly::y(), BiPoly::x(), Coords::XY);
        match times_form(&x, &params) {
            Err(FoliationError::NotPComplete { residual }) => assert_eq!(residual, bp(&[(1, 2, 0), (1, 0, 2)])),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tau_matches_dlog_formula() {
        // tau = x w / eta(X) · dP/P for a nontrivial fiber
        let params = SaitoSuzukiParams::monomial(2, 3).unwrap();
        let w = params.fiber_factor();
        // radial field: eta(X) = 5xy
        let x = VectorField2::from_polys(BiPoly::x(), BiPoly::y(), Coords::XY);
        let t = times_form(&x, &params).unwrap();
        let p = build_p(&params).unwrap();
        let xw = RatFunc::from_poly(&BiPoly::x() * &w);
        let factor = xw.checked_div(&RatFunc::from_poly(t.eta_of_x.clone())).unwrap();
        assert_eq!(t.tau, dlog(&p, Coords::XY).unwrap().scale_by(&factor));
    }
}
