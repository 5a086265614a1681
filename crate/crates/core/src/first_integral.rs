//! The closed form `Γ`, the first integral `F = u/Γ(v)` upstairs and its
//! single-valued descent `G^{nq} = x^q̂ · e^{−n q̂ σ(P)} · P^{−p̂}`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{
    compose_uni, pf_at_zero, AlgebraError, BiPoly, GaussianRational, LaurentUniPoly, PartialFractionAtZero, RatFunc,
    UniPoly,
};
use crate::foliation::{dlog, Coords, CoveringMapH, FoliationError, OneForm2, VectorField2};
use crate::normal_forms::{
    build_p, extract_pullback_shape, Gate, NormalFormError, PulledBackRiccati, SaitoSuzukiParams,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FirstIntegralError {
    #[error("lambda_1 = {0} is not a real rational number")]
    IrrationalLambda1(Box<GaussianRational>),
    #[error("gate failure: {0}")]
    GateFailure(Gate),
    #[error("invalid first-integral data: {0}")]
    InvalidForm(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Foliation(#[from] FoliationError),
    #[error(transparent)]
    NormalForm(NormalFormError),
}

impl From<NormalFormError> for FirstIntegralError {
    fn from(e: NormalFormError) -> Self {
        match e {
            NormalFormError::GateFailure(g) => FirstIntegralError::GateFailure(g),
            other => FirstIntegralError::NormalForm(other),
        }
    }
}

/// `Γ(z) = e^{s̄(z)} · z^{λ₁} · e^{λ₂/z + … + λ_N/z^{N−1}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaClosedForm {
    /// Antiderivative of `s` with zero constant term.
    pub sbar: UniPoly,
    /// `λ₁ = p̂/q̂` in lowest terms, `q̂ > 0`.
    pub lambda1: (BigInt, BigInt),
    /// `λ₂, …, λ_N`.
    pub lambdas: Vec<GaussianRational>,
}

impl GammaClosedForm {
    pub fn lambda1_value(&self) -> GaussianRational {
        GaussianRational::from_rational(BigRational::new(self.lambda1.0.clone(), self.lambda1.1.clone()))
    }

    /// `λ₂/z + … + λ_N/z^{N−1}`.
    pub fn principal_part(&self) -> LaurentUniPoly {
        LaurentUniPoly::from_terms(
            self.lambdas
                .iter()
                .enumerate()
                .map(|(idx, l)| (-(idx as i64 + 1), l.clone())),
        )
    }

    /// `Γ'/Γ` as a Laurent polynomial.
    pub fn log_derivative(&self) -> LaurentUniPoly {
        let poly = LaurentUniPoly::from_unipoly(&self.sbar.derivative(), 0);
        let log = LaurentUniPoly::monomial(self.lambda1_value(), -1);
        &(&poly + &log) + &self.principal_part().derivative()
    }

    /// `Γ(z)` on the principal branch of `z^{λ₁}`.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let l1 = self.lambda1.0.to_f64().unwrap_or(f64::NAN) / self.lambda1.1.to_f64().unwrap_or(f64::NAN);
        (self.sbar.eval_complex(z) + z.ln() * l1 + self.principal_part().eval_complex(z)).exp()
    }
}

/// `λ₁ = A₁`, `λ_i = A_i/(1 − i)`, `s̄ = ∫s`.
pub fn gamma_from_pf(pf: &PartialFractionAtZero) -> Result<GammaClosedForm, FirstIntegralError> {
    let a1 = if pf.order() >= 1 {
        pf.a(1).clone()
    } else {
        GaussianRational::zero()
    };
    if !a1.is_real() {
        return Err(FirstIntegralError::IrrationalLambda1(Box::new(a1)));
    }
    let lambda1 = (a1.re.numer().clone(), a1.re.denom().clone());
    let lambdas = (2..=pf.order())
        .map(|i| pf.a(i) / &GaussianRational::from_int(1 - i as i64))
        .collect();
    let gamma = GammaClosedForm {
        sbar: pf.s.antiderivative(),
        lambda1,
        lambdas,
    };
    if gamma.log_derivative() != pf.to_laurent() {
        return Err(FirstIntegralError::InvalidForm(
            "Gamma'/Gamma does not match the expansion".into(),
        ));
    }
    Ok(gamma)
}

/// `F(u, v) = u/Γ(v)`, a first integral of `a(v)u∂u + c v^N ∂v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstIntegralUv {
    pub expansion: PartialFractionAtZero,
    pub gamma: GammaClosedForm,
    /// `N > 1`: formally valid, but no proper trajectory exists there.
    pub non_proper: bool,
}

impl FirstIntegralUv {
    /// `dF/F = du/u − (Γ'/Γ)(v) dv`.
    pub fn log_differential(&self) -> OneForm2 {
        let du = RatFunc::laurent_monomial(GaussianRational::one(), -1, 0);
        let dv = self
            .gamma
            .log_derivative()
            .terms()
            .map(|(k, c)| RatFunc::laurent_monomial(c.clone(), 0, k))
            .fold(RatFunc::zero(), |acc, t| &acc + &t);
        OneForm2::new(du, -&dv, Coords::UV)
    }

    pub fn eval_complex(&self, u: Complex64, v: Complex64) -> Complex64 {
        u / self.gamma.eval_complex(v)
    }
}

pub fn first_integral_uv(pb: &PulledBackRiccati) -> Result<FirstIntegralUv, FirstIntegralError> {
    let expansion = pf_at_zero(&pb.a, &pb.c, pb.big_n as usize)?;
    let gamma = gamma_from_pf(&expansion)?;
    Ok(FirstIntegralUv {
        expansion,
        gamma,
        non_proper: pb.big_n > 1,
    })
}

/// `G^{nq} = x^q̂ · e^{−n q̂ σ(P)} · P^{−p̂}` with `s̄(z) = σ(z^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstIntegralForm {
    pub q: BigInt,
    pub p: BigInt,
    pub n: u32,
    pub sigma: UniPoly,
    pub fiber: BiPoly,
}

impl FirstIntegralForm {
    /// Requires `q̂ > 0`, `gcd(p̂, q̂) = 1`, `n ≥ 1` and a nonzero fiber
    /// polynomial.
    pub fn new(q: BigInt, p: BigInt, n: u32, sigma: UniPoly, fiber: BiPoly) -> Result<Self, FirstIntegralError> {
        let bad = |s: &str| Err(FirstIntegralError::InvalidForm(s.into()));
        if !q.is_positive() {
            return bad("q must be positive");
        }
        if !p.gcd(&q).is_one() {
            return bad("p and q must be coprime");
        }
        if n == 0 {
            return bad("n must be positive");
        }
        if fiber.is_zero() {
            return bad("the fiber polynomial must be nonzero");
        }
        Ok(Self { q, p, n, sigma, fiber })
    }

    /// `s̄(z) = σ(z^n)`.
    pub fn sbar(&self) -> UniPoly {
        let mut coeffs = vec![GaussianRational::zero(); self.sigma.degree().map_or(0, |d| d * self.n as usize + 1)];
        for (k, c) in self.sigma.terms() {
            coeffs[k * self.n as usize] = c.clone();
        }
        UniPoly::new(coeffs)
    }

    /// `q̂ dx/x − n q̂ σ'(P) dP − p̂ dP/P`.
    pub fn log_differential(&self) -> Result<OneForm2, FirstIntegralError> {
        let q = GaussianRational::from_rational(BigRational::from_integer(self.q.clone()));
        let p = GaussianRational::from_rational(BigRational::from_integer(self.p.clone()));
        let n = GaussianRational::from_int(self.n as i64);
        let x_part = dlog(&RatFunc::x(), Coords::XY)?.scale_by(&RatFunc::constant(q.clone()));
        let fiber = RatFunc::from_poly(self.fiber.clone());
        let p_part = dlog(&fiber, Coords::XY)?.scale_by(&RatFunc::constant(-&p));
        let ds = RatFunc::from_poly(compose_uni(&self.sigma.derivative(), &self.fiber));
        let coef = &ds * &RatFunc::constant(-&(&n * &q));
        let s_part = OneForm2::new(&coef * &fiber.dx(), &coef * &fiber.dy(), Coords::XY);
        Ok(x_part.add(&p_part)?.add(&s_part)?)
    }

    /// `G^{nq}` at a point, or `None` where it has a pole or is undefined.
    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Option<Complex64> {
        let q = self.q.to_i32()?;
        let p = self.p.to_i32()?;
        let pv = self.fiber.eval_complex(x, y);
        if (q < 0 && x == Complex64::zero()) || (p > 0 && pv == Complex64::zero()) {
            return None;
        }
        let s = self.sigma.eval_complex(pv) * -(self.n as f64 * q as f64);
        let out = x.powi(q) * s.exp() * pv.powi(-p);
        out.is_finite().then_some(out)
    }

    /// `G^{nq} ∘ H` as `u^{n q̂} · e^{−n q̂ s̄(v)} · v^{−n p̂}`: the factors
    /// `(u^{nq̂} v^{−np̂}, s̄)`.
    pub fn upstairs(&self) -> (RatFunc, UniPoly) {
        let nq = self.q.to_i64().unwrap() * self.n as i64;
        let np = self.p.to_i64().unwrap() * self.n as i64;
        (RatFunc::laurent_monomial(GaussianRational::one(), nq, -np), self.sbar())
    }
}

/// Builds `G^{nq}` for `X = u^k H_*(a(v)u∂u + c v^N ∂v)` after checking
/// `N = 1`, `λ₁ ∈ Q` and `s̄ ∈ C[z^n]`.
pub fn first_integral_xy(
    params: &SaitoSuzukiParams,
    pb: &PulledBackRiccati,
) -> Result<FirstIntegralForm, FirstIntegralError> {
    params.require_covering()?;
    pb.validate(params.n)?;
    if pb.big_n > 1 {
        return Err(FirstIntegralError::GateFailure(Gate::NGreaterThanOne));
    }
    let uv = first_integral_uv(pb).map_err(|e| match e {
        FirstIntegralError::IrrationalLambda1(_) => FirstIntegralError::GateFailure(Gate::Lambda1NotRational),
        other => other,
    })?;
    let n = params.n as usize;
    if !uv.gamma.sbar.is_in_powers_of(n) {
        return Err(FirstIntegralError::GateFailure(Gate::SbarNotInPowers));
    }
    let fiber = build_p(params)?.as_poly().expect("m >= 1 gives a polynomial");
    let (p, q) = uv.gamma.lambda1;
    FirstIntegralForm::new(q, p, params.n, uv.gamma.sbar.deflate(n), fiber)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    ExactZero,
    Nonzero(RatFunc),
    Undefined,
}

/// `X(log G^{nq})` as an exact rational function.
pub fn verify_first_integral(g: &FirstIntegralForm, field: &VectorField2) -> Verdict {
    if field.coords != Coords::XY || field.is_zero() {
        return Verdict::Undefined;
    }
    let Ok(form) = g.log_differential() else {
        return Verdict::Undefined;
    };
    match form.contract(field) {
        Ok(r) if r.is_zero() => Verdict::ExactZero,
        Ok(r) => Verdict::Nonzero(r),
        Err(_) => Verdict::Undefined,
    }
}

/// `P` of the normal form viewed as a first integral, with `dP/P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalIntegral {
    pub p: RatFunc,
    pub log_differential: OneForm2,
}

impl NormalIntegral {
    pub fn verify(&self, field: &VectorField2) -> Verdict {
        if field.coords != Coords::XY || field.is_zero() {
            return Verdict::Undefined;
        }
        match self.log_differential.contract(field) {
            Ok(r) if r.is_zero() => Verdict::ExactZero,
            Ok(r) => Verdict::Nonzero(r),
            Err(_) => Verdict::Undefined,
        }
    }
}

/// `P` is a first integral of `Y`; packages it with `dP/P`.
pub fn normal_form_integral(params: &SaitoSuzukiParams) -> Result<NormalIntegral, FirstIntegralError> {
    let p = build_p(params)?;
    let log_differential = dlog(&p, Coords::XY)?;
    Ok(NormalIntegral { p, log_differential })
}

/// Every object of one run from a pulled-back shape to a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineRun {
    pub field: VectorField2,
    pub pulled_back: VectorField2,
    pub shape: PulledBackRiccati,
    pub integral: FirstIntegralForm,
    pub verdict: Verdict,
}

/// Pushes `pb` down to `X`, pulls it back, re-extracts the shape, builds
/// `G^{nq}` and verifies it against `X`.
pub fn run_pipeline(params: &SaitoSuzukiParams, pb: &PulledBackRiccati) -> Result<PipelineRun, FirstIntegralError> {
    let h = CoveringMapH::new(params)?;
    let field = h.pushforward_field(&pb.to_field())?;
    let pulled_back = h.pullback_field(&field)?;
    let shape = extract_pullback_shape(&pulled_back, params.n)?;
    let integral = first_integral_xy(params, &shape)?;
    let verdict = verify_first_integral(&integral, &field);
    Ok(PipelineRun {
        field,
        pulled_back,
        shape,
        integral,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliation::deck_invariant;
    use crate::normal_forms::build_y;

    fn bp(t: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_int_terms(t)
    }

    fn gr(v: i64) -> GaussianRational {
        GaussianRational::from_int(v)
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn catalog_field() -> VectorField2 {
        VectorField2::from_polys(bp(&[(1, 1, 0), (1, 2, 1)]), bp(&[(1, 0, 1), (-1, 1, 2)]), Coords::XY)
    }

    #[test]
    fn gamma_examples() {
        let pf = pf_at_zero(&UniPoly::from_ints(&[3, 2, 1]), &gr(1), 2).unwrap();
        let g = gamma_from_pf(&pf).unwrap();
        assert_eq!(g.sbar, UniPoly::var());
        assert_eq!(g.lambda1, (big(2), big(1)));
        assert_eq!(g.lambdas, vec![gr(-3)]);

        let pf = pf_at_zero(&UniPoly::from_ints(&[1, 1]), &gr(2), 1).unwrap();
        let g = gamma_from_pf(&pf).unwrap();
        assert_eq!(g.sbar, UniPoly::monomial(GaussianRational::from_ratio(1, 2), 1));
        assert_eq!(g.lambda1, (big(1), big(2)));

        let pf = pf_at_zero(&UniPoly::one(), &gr(1), 1).unwrap();
        let g = gamma_from_pf(&pf).unwrap();
        assert!(g.sbar.is_zero());
        let z = Complex64::new(0.7, -0.4);
        assert!((g.eval_complex(z) - z).norm() < 1e-14);
    }

    #[test]
    fn complex_lambda1_rejected() {
        let a = UniPoly::new(vec![GaussianRational::from_parts(1, 1, 1, 1)]);
        let pf = pf_at_zero(&a, &gr(1), 1).unwrap();
        assert!(matches!(
            gamma_from_pf(&pf),
            Err(FirstIntegralError::IrrationalLambda1(_))
        ));
    }

    #[test]
    fn uv_integral_annihilated() {
        for pb in [
            PulledBackRiccati::new(0, UniPoly::from_ints(&[1, 1]), gr(2), 1),
            PulledBackRiccati::new(0, UniPoly::one(), gr(1), 1),
            PulledBackRiccati::new(0, UniPoly::from_ints(&[3, 2, 1]), gr(1), 2),
        ] {
            let f = first_integral_uv(&pb).unwrap();
            assert_eq!(f.non_proper, pb.big_n > 1);
            assert!(f.log_differential().contract(&pb.to_field()).unwrap().is_zero());
        }
    }

    #[test]
    fn catalog_g_squared() {
        let params = SaitoSuzukiParams::monomial(1, 1).unwrap();
        let pb = PulledBackRiccati::new(0, UniPoly::from_ints(&[1, 1]), gr(2), 1);
        let g = first_integral_xy(&params, &pb).unwrap();
        assert_eq!((g.q.clone(), g.p.clone(), g.n), (big(2), big(1), 1));
        assert_eq!(g.sigma, UniPoly::monomial(GaussianRational::from_ratio(1, 2), 1));
        assert_eq!(g.fiber, bp(&[(1, 1, 1)]));
        assert_eq!(verify_first_integral(&g, &catalog_field()), Verdict::ExactZero);
        // G^2 = x / (y e^{xy})
        let (x, y) = (Complex64::new(1.3, 0.2), Complex64::new(-0.4, 0.9));
        let expect = x / (y * (x * y).exp());
        assert!((g.eval_complex(x, y).unwrap() - expect).norm() < 1e-13);
    }

    #[test]
    fn second_catalog_pair() {
        let params = SaitoSuzukiParams::monomial(1, 1).unwrap();
        let pb = PulledBackRiccati::new(0, UniPoly::one(), gr(2), 1);
        let run = run_pipeline(&params, &pb).unwrap();
        // G^2 = x/y for X = x d/dx + y d/dy
        assert_eq!(run.integral.sigma, UniPoly::zero());
        assert_eq!((run.integral.q.clone(), run.integral.p.clone()), (big(2), big(1)));
        assert_eq!(
            run.field,
            VectorField2::from_polys(BiPoly::x(), BiPoly::y(), Coords::XY)
        );
        assert_eq!(run.verdict, Verdict::ExactZero);
    }

    #[test]
    fn nonzero_residual() {
        let g = FirstIntegralForm::new(big(1), big(1), 1, UniPoly::zero(), BiPoly::y()).unwrap();
        let saddle = VectorField2::from_polys(BiPoly::x(), -&BiPoly::y(), Coords::XY);
        assert_eq!(
            verify_first_integral(&g, &saddle),
            Verdict::Nonzero(RatFunc::constant(gr(2)))
        );
        assert!(FirstIntegralForm::new(big(0), big(-1), 1, UniPoly::zero(), bp(&[(1, 1, 1)])).is_err());
        assert!(FirstIntegralForm::new(big(2), big(4), 1, UniPoly::zero(), bp(&[(1, 1, 1)])).is_err());
    }

    #[test]
    fn gates() {
        let params = SaitoSuzukiParams::monomial(1, 2).unwrap();
        let odd_a = PulledBackRiccati::new(0, UniPoly::from_ints(&[1, 1]), gr(1), 1);
        assert_eq!(
            first_integral_xy(&params, &odd_a),
            Err(FirstIntegralError::GateFailure(Gate::ANotInPowers))
        );
        let p11 = SaitoSuzukiParams::monomial(1, 1).unwrap();
        let n2 = PulledBackRiccati::new(0, UniPoly::from_ints(&[3, 2, 1]), gr(1), 2);
        assert_eq!(
            first_integral_xy(&p11, &n2),
            Err(FirstIntegralError::GateFailure(Gate::NGreaterThanOne))
        );
        let complex = PulledBackRiccati::new(
            0,
            UniPoly::new(vec![GaussianRational::from_parts(1, 1, 1, 1)]),
            gr(1),
            1,
        );
        assert_eq!(
            first_integral_xy(&p11, &complex),
            Err(FirstIntegralError::GateFailure(Gate::Lambda1NotRational))
        );
    }

    #[test]
    fn upstairs_is_deck_invariant() {
        let params = SaitoSuzukiParams::new(1, 2, 1, UniPoly::from_ints(&[1])).unwrap();
        let pb = PulledBackRiccati::new(2, UniPoly::from_ints(&[1, 0, 3]), GaussianRational::from_ratio(1, 3), 1);
        let g = first_integral_xy(&params, &pb).unwrap();
        let (monomial, sbar) = g.upstairs();
        assert!(deck_invariant(&monomial, params.n, params.m));
        let sbar_v = RatFunc::from_poly(BiPoly::from_unipoly(&sbar, true));
        assert!(deck_invariant(&sbar_v, params.n, params.m));
    }

    #[test]
    fn normal_form_integral_examples() {
        for (m, n, l, p) in [(1, 1, 0, vec![]), (-1, 2, 0, vec![]), (1, 1, 1, vec![1])] {
            let params = SaitoSuzukiParams::new(m, n, l, UniPoly::from_ints(&p)).unwrap();
            let ni = normal_form_integral(&params).unwrap();
            assert_eq!(ni.verify(&build_y(&params).unwrap()), Verdict::ExactZero);
        }
    }
}
