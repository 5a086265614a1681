//! The covering map `H(u, v) = (u^n, u^{-(m+nℓ)}·(v − u^m p(u^n)))` and the
//! transport of fields and forms along it.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{Coords, FoliationError, OneForm2, VectorField2};
use crate::algebra::{substitute_poly, BiPoly, GaussianRational, RatFunc, UniPoly};
use crate::normal_forms::SaitoSuzukiParams;

/// `H` together with its Jacobian, precomputed as exact rational functions
/// of `(u, v)`. Finite regular covering of `{x ≠ 0}` by `{u ≠ 0}` with deck
/// group `(u, v) ↦ (ζu, ζ^m v)`, `ζ^n = 1`.
#[derive(Clone, Debug)]
pub struct CoveringMapH {
    params: SaitoSuzukiParams,
    x_of: RatFunc,
    y_of: RatFunc,
    dx_du: RatFunc,
    dy_du: RatFunc,
    dy_dv: RatFunc,
}

impl CoveringMapH {
    pub fn new(params: &SaitoSuzukiParams) -> Result<Self, FoliationError> {
        params
            .require_covering()
            .map_err(|e| FoliationError::InvalidParams(e.to_string()))?;
        let n = params.n;
        let m = params.m as u32;
        let e = m + n * params.l;
        // u^m p(u^n)
        let p_of_un = BiPoly::from_terms(params.p.terms().map(|(k, c)| (c.clone(), m + n * k as u32, 0)));
        let x_of = RatFunc::from_poly(BiPoly::term(GaussianRational::one(), n, 0));
        let y_of =
            RatFunc::new(&BiPoly::y() - &p_of_un, BiPoly::term(GaussianRational::one(), e, 0)).expect("u^e is nonzero");
        let dx_du = x_of.dx();
        let dy_du = y_of.dx();
        let dy_dv = y_of.dy();
        Ok(Self {
            params: params.clone(),
            x_of,
            y_of,
            dx_du,
            dy_du,
            dy_dv,
        })
    }

    pub fn params(&self) -> &SaitoSuzukiParams {
        &self.params
    }

    /// `x ∘ H = u^n`
    pub fn x_component(&self) -> &RatFunc {
        &self.x_of
    }

    /// `y ∘ H`
    pub fn y_component(&self) -> &RatFunc {
        &self.y_of
    }

    /// Jacobian `[[∂x/∂u, ∂x/∂v], [∂y/∂u, ∂y/∂v]]`.
    pub fn jacobian(&self) -> [[RatFunc; 2]; 2] {
        [
            [self.dx_du.clone(), RatFunc::zero()],
            [self.dy_du.clone(), self.dy_dv.clone()],
        ]
    }

    /// `f ∘ H` for a function of `(x, y)`.
    pub fn compose(&self, f: &RatFunc) -> Result<RatFunc, FoliationError> {
        f.substitute(&self.x_of, &self.y_of)
            .map_err(|_| FoliationError::SingularLocus)
    }

    /// The field `W` on `{u ≠ 0}` with `DH·W = X ∘ H`, obtained from the
    /// lower-triangular inverse of `DH`.
    pub fn pullback_field(&self, field: &VectorField2) -> Result<VectorField2, FoliationError> {
        if field.coords != Coords::XY {
            return Err(FoliationError::CoordinateMismatch);
        }
        let a = self.compose(&field.comp_x)?;
        let b = self.compose(&field.comp_y)?;
        let w_u = a.checked_div(&self.dx_du).map_err(|_| FoliationError::SingularLocus)?;
        let w_v = (&b - &(&self.dy_du * &w_u))
            .checked_div(&self.dy_dv)
            .map_err(|_| FoliationError::SingularLocus)?;
        Ok(VectorField2::new(w_u, w_v, Coords::UV))
    }

    /// `H_* Z`, defined when `Z` commutes with the deck group.
    pub fn pushforward_field(&self, field: &VectorField2) -> Result<VectorField2, FoliationError> {
        if field.coords != Coords::UV {
            return Err(FoliationError::CoordinateMismatch);
        }
        let x1 = &self.dx_du * &field.comp_x;
        let x2 = &(&self.dy_du * &field.comp_x) + &(&self.dy_dv * &field.comp_y);
        if !self.deck_invariant(&x1) || !self.deck_invariant(&x2) {
            return Err(FoliationError::NotDeckInvariant);
        }
        Ok(VectorField2::new(self.descend(&x1)?, self.descend(&x2)?, Coords::XY))
    }

    /// `H^* ω`.
    pub fn pullback_form(&self, form: &OneForm2) -> Result<OneForm2, FoliationError> {
        if form.coords != Coords::XY {
            return Err(FoliationError::CoordinateMismatch);
        }
        let a = self.compose(&form.coef_dx)?;
        let b = self.compose(&form.coef_dy)?;
        let du = &(&a * &self.dx_du) + &(&b * &self.dy_du);
        let dv = &b * &self.dy_dv;
        Ok(OneForm2::new(du, dv, Coords::UV))
    }

    /// Whether `f(ζu, ζ^m v) = f(u, v)` for a primitive `n`-th root `ζ`.
    ///
    /// The cross-multiplied difference `N(ζ·)D − N·D(ζ·)` is expanded with
    /// coefficients in `Q(i)[ζ]` and reduced modulo the cyclotomic polynomial
    /// `Φ_n`, so the test is exact without algebraic-number arithmetic.
    pub fn deck_invariant(&self, f: &RatFunc) -> bool {
        deck_invariant(f, self.params.n, self.params.m)
    }

    /// Rewrites a deck-invariant function of `(u, v)` in terms of `(x, y)`.
    ///
    /// Uses the invariant generators `x = u^n` and `w = v·u^{-m} = x^ℓ y + p(x)`.
    pub fn descend(&self, f: &RatFunc) -> Result<RatFunc, FoliationError> {
        let n = self.params.n;
        let m = self.params.m as u32;
        // v = u^m w
        let v_sub = RatFunc::from_poly(BiPoly::term(GaussianRational::one(), m, 1));
        let in_uw = f
            .substitute(&RatFunc::x(), &v_sub)
            .map_err(|_| FoliationError::SingularLocus)?;
        let residues: Vec<u32> = in_uw
            .num()
            .terms()
            .chain(in_uw.den().terms())
            .map(|(mono, _)| mono.i % n)
            .collect();
        let j = residues.first().copied().unwrap_or(0);
        if residues.iter().any(|&r| r != j) {
            return Err(FoliationError::NotDeckInvariant);
        }
        let lift = (n - j) % n;
        let to_xw =
            |p: &BiPoly| BiPoly::from_terms(p.terms().map(|(mono, c)| (c.clone(), (mono.i + lift) / n, mono.j)));
        let w = self.params.fiber_factor();
        let num = substitute_poly(&to_xw(in_uw.num()), &BiPoly::x(), &w);
        let den = substitute_poly(&to_xw(in_uw.den()), &BiPoly::x(), &w);
        RatFunc::new(num, den).map_err(|_| FoliationError::SingularLocus)
    }

    /// The Jacobian entry `∂y/∂u` written out by hand:
    /// `(nℓ u^m p(u^n) − n u^{n+m} p'(u^n) − (m+nℓ) v) / u^{m+nℓ+1}`.
    pub fn dy_du_closed_form(&self) -> RatFunc {
        let SaitoSuzukiParams { m, n, l, p } = &self.params;
        let (m, n, l) = (*m as u32, *n, *l);
        let lift =
            |q: &UniPoly, shift: u32| BiPoly::from_terms(q.terms().map(|(k, c)| (c.clone(), shift + n * k as u32, 0)));
        let nl = GaussianRational::from_int((n * l) as i64);
        let num = &(&lift(p, m).scale(&nl)
            - &lift(&p.derivative(), n + m).scale(&GaussianRational::from_int(n as i64)))
            - &BiPoly::y().scale(&GaussianRational::from_int((m + n * l) as i64));
        RatFunc::new(num, BiPoly::term(GaussianRational::one(), m + n * l + 1, 0)).unwrap()
    }
}

/// Cyclotomic polynomial `Φ_n` over Q.
pub fn cyclotomic(n: u32) -> UniPoly {
    let mut f = UniPoly::monomial(GaussianRational::one(), n as usize);
    f = &f - &UniPoly::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            f = f.div_exact(&cyclotomic(d)).expect("Φ_d divides z^n - 1");
        }
    }
    f
}

/// Exact test of invariance under `(u, v) ↦ (ζu, ζ^m v)`, `ζ` a primitive
/// `n`-th root of unity.
pub fn deck_invariant(f: &RatFunc, n: u32, m: i64) -> bool {
    if n == 1 {
        return true;
    }
    let nn = n as i64;
    let weight = |i: u32, j: u32| ((i as i64 + m * j as i64).rem_euclid(nn)) as usize;
    let mut acc: HashMap<(u32, u32), Vec<GaussianRational>> = HashMap::new();
    let mut accumulate = |a: &BiPoly, b: &BiPoly, sign: i64| {
        for (ma, ca) in a.terms() {
            let e = weight(ma.i, ma.j);
            for (mb, cb) in b.terms() {
                let slot = acc
                    .entry((ma.i + mb.i, ma.j + mb.j))
                    .or_insert_with(|| vec![GaussianRational::zero(); n as usize]);
                let t = ca * cb;
                if sign > 0 {
                    slot[e] += &t;
                } else {
                    slot[e] -= &t;
                }
            }
        }
    };
    // N(ζ·)·D − N·D(ζ·): the ζ-weight always comes from the first factor
    accumulate(f.num(), f.den(), 1);
    accumulate(f.den(), f.num(), -1);
    let phi = cyclotomic(n);
    acc.into_values()
        .all(|coeffs| UniPoly::new(coeffs).div_rem(&phi).1.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: i64, n: u32, l: u32, p: &[i64]) -> SaitoSuzukiParams {
        SaitoSuzukiParams::new(m, n, l, UniPoly::from_ints(p)).unwrap()
    }

    fn bp(t: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_int_terms(t)
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), UniPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(2), UniPoly::from_ints(&[1, 1]));
        assert_eq!(cyclotomic(4), UniPoly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), UniPoly::from_ints(&[1, -1, 1]));
    }

    #[test]
    fn components() {
        let h = CoveringMapH::new(&params(1, 2, 0, &[])).unwrap();
        assert_eq!(h.x_component(), &RatFunc::from_poly(bp(&[(1, 2, 0)])));
        assert_eq!(h.y_component(), &RatFunc::new(BiPoly::y(), BiPoly::x()).unwrap());
        assert!(CoveringMapH::new(&params(-1, 2, 0, &[])).is_err());
    }

    #[test]
    fn jacobian_matches_closed_form() {
        for p in [
            params(1, 1, 0, &[]),
            params(1, 2, 0, &[]),
            params(1, 1, 1, &[1]),
            params(2, 3, 2, &[1, -2]),
            params(3, 2, 3, &[5, 0, 7]),
        ] {
            let h = CoveringMapH::new(&p).unwrap();
            assert_eq!(h.jacobian()[1][0], h.dy_du_closed_form(), "params {p:?}");
        }
    }

    #[test]
    fn pullback_catalog_field() {
        let h = CoveringMapH::new(&params(1, 1, 0, &[])).unwrap();
        let x = VectorField2::from_polys(bp(&[(1, 1, 0), (1, 2, 1)]), bp(&[(1, 0, 1), (-1, 1, 2)]), Coords::XY);
        let w = h.pullback_field(&x).unwrap();
        assert_eq!(w.comp_x.as_poly().unwrap(), bp(&[(1, 1, 0), (1, 1, 1)]));
        assert_eq!(w.comp_y.as_poly().unwrap(), bp(&[(2, 0, 1)]));
        assert_eq!(h.pushforward_field(&w).unwrap(), x);
    }

    #[test]
    fn pushforward_radial() {
        // u d/du under H = (u, v/u) scales x and shrinks y = v/u
        let h = CoveringMapH::new(&params(1, 1, 0, &[])).unwrap();
        let z = VectorField2::from_polys(BiPoly::x(), BiPoly::zero(), Coords::UV);
        let x = h.pushforward_field(&z).unwrap();
        assert_eq!(x, VectorField2::from_polys(BiPoly::x(), -&BiPoly::y(), Coords::XY));
    }

    #[test]
    fn pushforward_rejects_odd_a() {
        let h = CoveringMapH::new(&params(1, 2, 0, &[])).unwrap();
        let z = VectorField2::from_polys(bp(&[(1, 1, 1)]), BiPoly::zero(), Coords::UV);
        assert_eq!(h.pushforward_field(&z), Err(FoliationError::NotDeckInvariant));
    }

    #[test]
    fn deck_round_trip_n2() {
        let h = CoveringMapH::new(&params(1, 2, 0, &[])).unwrap();
        // (1 + v^2) u d/du + v d/dv
        let z = VectorField2::from_polys(bp(&[(1, 1, 0), (1, 1, 2)]), BiPoly::y(), Coords::UV);
        let x = h.pushforward_field(&z).unwrap();
        assert!(x.is_polynomial());
        assert_eq!(h.pullback_field(&x).unwrap(), z);
    }

    #[test]
    fn pullback_forms() {
        let h = CoveringMapH::new(&params(1, 2, 0, &[])).unwrap();
        let dx = OneForm2::new(RatFunc::one(), RatFunc::zero(), Coords::XY);
        let pulled = h.pullback_form(&dx).unwrap();
        assert_eq!(pulled.coef_dx, RatFunc::from_poly(bp(&[(2, 1, 0)])));
        assert!(pulled.coef_dy.is_zero());
    }

    #[test]
    fn deck_invariance_checks() {
        // n = 2, m = 1: u^2 and v/u invariant, u and v not
        assert!(deck_invariant(&RatFunc::from_poly(bp(&[(1, 2, 0)])), 2, 1));
        assert!(deck_invariant(&RatFunc::new(BiPoly::y(), BiPoly::x()).unwrap(), 2, 1));
        assert!(!deck_invariant(&RatFunc::x(), 2, 1));
        assert!(!deck_invariant(&RatFunc::y(), 2, 1));
        // n = 4 splits over Q(i); still exact
        assert!(deck_invariant(&RatFunc::from_poly(bp(&[(1, 4, 0), (3, 1, 3)])), 4, 1));
        assert!(!deck_invariant(&RatFunc::from_poly(bp(&[(1, 2, 0)])), 4, 1));
    }
}
