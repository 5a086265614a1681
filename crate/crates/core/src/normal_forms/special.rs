//! Critical values of `P` and fiber components invariant under `X`.

use num_traits::{One, Zero};

use crate::algebra::roots::split_rational_roots;
use crate::algebra::{poly_gcd, resultant, squarefree_decomposition, BiPoly, Eliminate, GaussianRational, UniPoly};
use crate::foliation::{differential, reduce_codim1, Coords, VectorField2};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialValueReport {
    /// Q(i)-rational critical values, without repetition.
    pub critical_values: Vec<GaussianRational>,
    /// Monic squarefree polynomial in the value `t` whose roots include
    /// every critical value not found above; `1` when there are none.
    pub residual_values: UniPoly,
    /// Factors of `gcd(P_x, P_y)` on which `P` could not be shown constant.
    pub unresolved_critical_curves: Vec<BiPoly>,
    /// `x`-eliminant of isolated critical points whose values could not be
    /// expressed through a polynomial in `t`; `1` when there are none.
    pub unresolved_x_eliminant: UniPoly,
    /// Fiber components `f` with `f | η(X)`, each with the value of `P` on it.
    pub invariant_fiber_components: Vec<(BiPoly, GaussianRational)>,
    /// Factors of `η(X)` on which `P` is not constant: curves of tangency
    /// between `X` and the fibers.
    pub tangency_curves: Vec<BiPoly>,
    /// `η(X) ≡ 0`: `X` is tangent to every fiber.
    pub tangent_to_fibers: bool,
}

impl SpecialValueReport {
    /// Critical values together with the values of invariant fibers.
    pub fn special_values(&self) -> Vec<GaussianRational> {
        let mut out = self.critical_values.clone();
        for (_, t) in &self.invariant_fiber_components {
            push_unique(&mut out, t.clone());
        }
        out
    }
}

fn push_unique(v: &mut Vec<GaussianRational>, t: GaussianRational) {
    if !v.contains(&t) {
        v.push(t);
    }
}

fn trim(mut p: Vec<UniPoly>) -> Vec<UniPoly> {
    while p.last().is_some_and(UniPoly::is_zero) {
        p.pop();
    }
    p
}

/// The constant `t` with `h | P − t`, if there is one.
///
/// The pseudo-remainder of `P` by `h` in `Q(i)(x)[y]` equals `lc(h)^e·t`
/// exactly when `P ≡ t` modulo `h`.
pub(crate) fn constant_on(p: &BiPoly, h: &BiPoly) -> Option<GaussianRational> {
    if h.is_constant() {
        return None;
    }
    let (p, h) = if h.degree_y().unwrap_or(0) == 0 {
        (p.swap_vars(), h.swap_vars())
    } else {
        (p.clone(), h.clone())
    };
    let b = h.to_y_dense();
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = trim(p.to_y_dense());
    let mut steps = 0u32;
    while r.len() > db {
        let lr = r[r.len() - 1].clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[j + shift] = &r[j + shift] - &(&lr * bc);
        }
        r = trim(r);
        steps += 1;
    }
    if r.len() > 1 {
        return None;
    }
    let r0 = r.into_iter().next().unwrap_or_else(UniPoly::zero);
    if r0.is_zero() {
        return Some(GaussianRational::zero());
    }
    let q = r0.div_exact(&lb.pow(steps))?;
    q.is_constant().then(|| q.coeff(0))
}

/// `x`, `y` and the squarefree factors of the rest, in graded-lex order of
/// their leading monomials.
fn split_factors(f: &BiPoly) -> Vec<BiPoly> {
    let mono = f.monomial_content();
    let mut out = Vec::new();
    if mono.i > 0 {
        out.push(BiPoly::x());
    }
    if mono.j > 0 {
        out.push(BiPoly::y());
    }
    let rest = f.div_monomial(mono);
    out.extend(squarefree_decomposition(&rest).into_iter().map(|(g, _)| g));
    out.sort_by_key(|g| g.leading_term().map(|(m, _)| m));
    out
}

/// Newton interpolation through `(t_j, v_j)`.
fn interpolate(points: &[(GaussianRational, GaussianRational)]) -> UniPoly {
    let n = points.len();
    let mut coef: Vec<GaussianRational> = points.iter().map(|(_, v)| v.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = &points[i].0 - &points[i - j].0;
            coef[i] = &num / &den;
        }
    }
    let mut out = UniPoly::zero();
    for i in (0..n).rev() {
        let lin = UniPoly::new(vec![-&points[i].0, GaussianRational::one()]);
        out = &(&out * &lin) + &UniPoly::constant(coef[i].clone());
    }
    out
}

/// `T(t) = Res_x(r(x), Res_y(A(x, y), P(x, y) − t))`, by interpolation in `t`.
fn value_polynomial(r: &UniPoly, a: &BiPoly, p: &BiPoly) -> UniPoly {
    let da = a.degree_y().unwrap_or(0) as usize;
    let bound = r.degree().unwrap_or(0) * da;
    let r_bi = BiPoly::from_unipoly(r, false);
    let points: Vec<_> = (0..=bound as i64)
        .map(|j| {
            let t = GaussianRational::from_int(j);
            let shifted = p - &BiPoly::constant(t.clone());
            let inner = resultant(a, &shifted, Eliminate::Y);
            let val = if inner.is_zero() {
                GaussianRational::zero()
            } else {
                resultant(&r_bi, &BiPoly::from_unipoly(&inner, false), Eliminate::X).coeff(0)
            };
            (t, val)
        })
        .collect();
    interpolate(&points)
}

/// Critical values of `P` and, when `X` is given, the fiber components that
/// `X` leaves invariant.
pub fn special_values(p: &BiPoly, field: Option<&VectorField2>) -> SpecialValueReport {
    let mut report = SpecialValueReport {
        critical_values: Vec::new(),
        residual_values: UniPoly::one(),
        unresolved_critical_curves: Vec::new(),
        unresolved_x_eliminant: UniPoly::one(),
        invariant_fiber_components: Vec::new(),
        tangency_curves: Vec::new(),
        tangent_to_fibers: false,
    };
    if p.is_constant() {
        return report;
    }
    let (px, py) = (p.dx(), p.dy());
    let g = poly_gcd(&px, &py);

    // curves of critical points
    if !g.is_constant() {
        for h in split_factors(&g) {
            match constant_on(p, &h) {
                Some(t) => push_unique(&mut report.critical_values, t),
                None => report.unresolved_critical_curves.push(h),
            }
        }
    }

    // isolated critical points
    let a = px.div_exact(&g).expect("gcd divides");
    let b = py.div_exact(&g).expect("gcd divides");
    let mut residual = UniPoly::one();
    if !a.is_zero() && !b.is_zero() && !a.is_constant() && !b.is_constant() {
        let elim = resultant(&a, &b, Eliminate::Y);
        let (roots, rest) = split_rational_roots(&elim);
        for (x0, _) in roots {
            let gy = a.eval_x(&x0).gcd(&b.eval_x(&x0));
            let (yroots, yrest) = split_rational_roots(&gy);
            for (y0, _) in yroots {
                push_unique(&mut report.critical_values, p.eval(&x0, &y0));
            }
            if !yrest.is_constant() {
                // values P(x0, y) over the remaining roots y
                let in_ty = &BiPoly::from_unipoly(&p.eval_x(&x0), true) - &BiPoly::x();
                let t_poly = resultant(&in_ty, &BiPoly::from_unipoly(&yrest, true), Eliminate::Y);
                residual = &residual * &t_poly;
            }
        }
        if !rest.is_constant() {
            let candidates: Vec<UniPoly> = [&a, &b]
                .into_iter()
                .filter(|f| f.degree_y().unwrap_or(0) > 0)
                .map(|f| value_polynomial(&rest, f, p))
                .filter(|t| !t.is_zero())
                .collect();
            match candidates.into_iter().reduce(|s, t| s.gcd(&t)) {
                Some(t) => residual = &residual * &t,
                None => report.unresolved_x_eliminant = rest.monic(),
            }
        }
    }
    if !residual.is_constant() {
        let sq = residual.squarefree_part().monic();
        // values that turn out Q(i)-rational after all
        let (vals, rest) = split_rational_roots(&sq);
        for (t, _) in vals {
            push_unique(&mut report.critical_values, t);
        }
        report.residual_values = rest.monic();
    }

    if let Some(x) = field {
        invariant_components(p, x, &mut report);
    }
    report
}

fn invariant_components(p: &BiPoly, field: &VectorField2, report: &mut SpecialValueReport) {
    let Ok(eta) = reduce_codim1(&differential(p, Coords::XY)) else {
        return;
    };
    let Some(ex) = eta.contract(field).ok().and_then(|c| c.as_poly()) else {
        return;
    };
    if ex.is_zero() {
        report.tangent_to_fibers = true;
        return;
    }
    if ex.is_constant() {
        return;
    }
    for f in split_factors(&ex) {
        match constant_on(p, &f) {
            Some(t) => report.invariant_fiber_components.push((f, t)),
            None => report.tangency_curves.push(f),
        }
    }
}
