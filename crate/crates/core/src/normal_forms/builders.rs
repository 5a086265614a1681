use num_traits::One;

use super::{NormalFormError, SaitoSuzukiParams};
use crate::algebra::{BiPoly, GaussianRational, RatFunc};
use crate::foliation::{Coords, CoveringMapH, VectorField2};

/// `P = x^m (x^ℓ y + p(x))^n`; a rational function with denominator
/// `x^{−m}` when `m < 0`.
pub fn build_p(params: &SaitoSuzukiParams) -> Result<RatFunc, NormalFormError> {
    let params = SaitoSuzukiParams::new(params.m, params.n, params.l, params.p.clone())?;
    let w = params.fiber_factor().pow(params.n);
    let xm = BiPoly::term(GaussianRational::one(), params.m.unsigned_abs() as u32, 0);
    if params.m > 0 {
        Ok(RatFunc::from_poly(&xm * &w))
    } else {
        RatFunc::new(w, xm).map_err(|e| NormalFormError::InvalidParams(e.to_string()))
    }
}

/// `P` as a polynomial; requires `m ≥ 1`.
pub fn build_p_poly(params: &SaitoSuzukiParams) -> Result<BiPoly, NormalFormError> {
    params.require_covering()?;
    Ok(build_p(params)?.as_poly().expect("m >= 1 gives a polynomial"))
}

/// `Y = n x^{ℓ+1} ∂x − ((m+nℓ) x^ℓ y + m p(x) + n x p'(x)) ∂y`, tangent to
/// the fibers of `P`.
pub fn build_y(params: &SaitoSuzukiParams) -> Result<VectorField2, NormalFormError> {
    let params = SaitoSuzukiParams::new(params.m, params.n, params.l, params.p.clone())?;
    let (m, n, l) = (params.m, params.n as i64, params.l);
    let gr = GaussianRational::from_int;
    let comp_x = BiPoly::term(gr(n), l + 1, 0);
    let p = BiPoly::from_unipoly(&params.p, false);
    let xp = &BiPoly::x() * &BiPoly::from_unipoly(&params.p.derivative(), false);
    let inner = &(&BiPoly::term(gr(m + n * l as i64), l, 1) + &p.scale(&gr(m))) + &xp.scale(&gr(n));
    Ok(VectorField2::from_polys(comp_x, -&inner, Coords::XY))
}

/// The covering map `(u, v) ↦ (u^n, u^{−(m+nℓ)}(v − u^m p(u^n)))`.
pub fn build_h(params: &SaitoSuzukiParams) -> Result<CoveringMapH, NormalFormError> {
    params.require_covering()?;
    CoveringMapH::new(params).map_err(|e| NormalFormError::InvalidParams(e.to_string()))
}
