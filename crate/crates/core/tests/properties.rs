use holofol::algebra::{pf_at_zero, poly_gcd, resultant, squarefree_decomposition, Eliminate};
use holofol::expr::{parse_field, parse_poly, print_poly};
use holofol::first_integral::{first_integral_xy, gamma_from_pf, verify_first_integral};
use holofol::foliation::{deck_invariant, differential, differential_rat, dlog};
use holofol::normal_forms::{
    build_h, build_p, build_y, extract_pullback_shape, riccati_parametrize, translate_field, translate_point,
};
use holofol::tracer::{integrate_ray, CompiledField, ComplexPoint, TracerConfig};
use holofol::{
    BiPoly, Coords, GaussianRational, OneForm2, PulledBackRiccati, RatFunc, RiccatiParams, SaitoSuzukiParams, UniPoly,
    VectorField2, Verdict,
};
use num_complex::Complex64;
use num_integer::Integer;
use proptest::prelude::*;

fn gr() -> impl Strategy<Value = GaussianRational> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3).prop_map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d))
}

fn nonzero_gr() -> impl Strategy<Value = GaussianRational> {
    gr().prop_filter("nonzero", |g| *g != GaussianRational::from_int(0))
}

fn real_nonzero() -> impl Strategy<Value = GaussianRational> {
    (prop_oneof![-5i64..=-1, 1i64..=5], 1i64..=3).prop_map(|(a, b)| GaussianRational::from_ratio(a, b))
}

fn bipoly(max_terms: usize, max_deg: u32) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((gr(), 0..=max_deg, 0..=max_deg), 0..=max_terms).prop_map(BiPoly::from_terms)
}

fn nonzero_bipoly(max_terms: usize, max_deg: u32) -> impl Strategy<Value = BiPoly> {
    bipoly(max_terms, max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn unipoly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(gr(), 0..=max_deg + 1).prop_map(UniPoly::new)
}

fn params(m_lo: i64, m_hi: i64, n_max: u32, l_max: u32) -> impl Strategy<Value = SaitoSuzukiParams> {
    (
        m_lo..=m_hi,
        1..=n_max,
        0..=l_max,
        prop::collection::vec(gr(), 3),
        nonzero_gr(),
    )
        .prop_filter_map("coprime m, n", |(m, n, l, rest, p0)| {
            if m == 0 || m.unsigned_abs().gcd(&(n as u64)) != 1 {
                return None;
            }
            let p = if l == 0 {
                UniPoly::zero()
            } else {
                let mut coeffs = vec![p0];
                coeffs.extend(rest.into_iter().take(l as usize - 1));
                UniPoly::new(coeffs)
            };
            SaitoSuzukiParams::new(m, n, l, p).ok()
        })
}

/// `a ∈ C[z^n]` with `a(0) = a0`.
fn spread(a0: GaussianRational, higher: Vec<GaussianRational>, n: u32) -> UniPoly {
    let mut coeffs = vec![GaussianRational::from_int(0); higher.len() * n as usize + 1];
    coeffs[0] = a0;
    for (j, c) in higher.into_iter().enumerate() {
        coeffs[(j + 1) * n as usize] = c;
    }
    UniPoly::new(coeffs)
}

/// Covering-ready params with a deck-invariant shape.
fn invariant_instance(integrable: bool) -> impl Strategy<Value = (SaitoSuzukiParams, PulledBackRiccati)> {
    let a0 = if integrable {
        real_nonzero().boxed()
    } else {
        nonzero_gr().boxed()
    };
    let c = if integrable {
        real_nonzero().boxed()
    } else {
        nonzero_gr().boxed()
    };
    (
        params(1, 3, 3, 2),
        -1i64..=1,
        a0,
        prop::collection::vec(gr(), 0..=2),
        c,
        0u32..=1,
    )
        .prop_map(move |(params, j, a0, higher, c, big)| {
            let n = params.n;
            let big_n = if integrable { 1 } else { 1 + n * big };
            let pb = PulledBackRiccati::new(n as i64 * j, spread(a0, higher, n), c, big_n);
            (params, pb)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(f in bipoly(4, 3), g in bipoly(4, 3), h in bipoly(4, 3)) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&(&f - &g) + &g, f.clone());
    }

    #[test]
    fn exact_division_inverts_multiplication(f in bipoly(4, 3), g in nonzero_bipoly(3, 2)) {
        prop_assert_eq!((&f * &g).div_exact(&g).unwrap(), f);
    }

    #[test]
    fn leibniz_rule(f in bipoly(4, 3), g in bipoly(4, 3)) {
        let fg = &f * &g;
        prop_assert_eq!(fg.dx(), &(&f.dx() * &g) + &(&f * &g.dx()));
        prop_assert_eq!(fg.dy(), &(&f.dy() * &g) + &(&f * &g.dy()));
    }

    #[test]
    fn gcd_contains_common_factor(f in nonzero_bipoly(3, 2), g in nonzero_bipoly(3, 2), h in nonzero_bipoly(3, 2)) {
        let d = poly_gcd(&(&f * &h), &(&g * &h));
        prop_assert!(d.div_exact(&h).is_ok() || h.is_constant());
        prop_assert!((&f * &h).div_exact(&d).is_ok());
        prop_assert!((&g * &h).div_exact(&d).is_ok());
    }

    #[test]
    fn resultant_detects_common_factor(f in nonzero_bipoly(3, 2), g in nonzero_bipoly(3, 2), h in nonzero_bipoly(3, 2)) {
        prop_assume!(h.degree_y().unwrap_or(0) > 0);
        prop_assert!(resultant(&(&f * &h), &(&g * &h), Eliminate::Y).is_zero());
    }

    #[test]
    fn resultant_is_antisymmetric_up_to_sign(f in nonzero_bipoly(3, 2), g in nonzero_bipoly(3, 2)) {
        let r1 = resultant(&f, &g, Eliminate::Y);
        let r2 = resultant(&g, &f, Eliminate::Y);
        prop_assert!(r1 == r2 || r1 == -&r2);
    }

    #[test]
    fn squarefree_decomposition_recomposes(f in nonzero_bipoly(3, 2), g in nonzero_bipoly(2, 2)) {
        let p = &f * &g.pow(2);
        let product = squarefree_decomposition(&p)
            .into_iter()
            .fold(BiPoly::one(), |acc, (h, e)| &acc * &h.pow(e));
        if p.is_constant() {
            prop_assert!(product.is_one());
        } else {
            prop_assert_eq!(product.monic(), p.monic());
        }
    }

    #[test]
    fn parse_inverts_print(f in bipoly(6, 4)) {
        for coords in [Coords::XY, Coords::UV] {
            let text = print_poly(&f, coords);
            let (back, _) = parse_poly(&text, Some(coords)).unwrap();
            prop_assert_eq!(back, f.clone());
        }
    }

    #[test]
    fn field_text_round_trips(a in bipoly(3, 2), b in bipoly(3, 2)) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let field = VectorField2::from_polys(a, b, Coords::XY);
        prop_assert_eq!(parse_field(&field.to_string(), None).unwrap(), field);
    }

    #[test]
    fn normal_form_field_is_tangent(params in params(-5, 5, 5, 3)) {
        let p = build_p(&params).unwrap();
        let y = build_y(&params).unwrap();
        prop_assert!(differential_rat(&p, Coords::XY).contract(&y).unwrap().is_zero());
        prop_assert!(dlog(&p, Coords::XY).unwrap().contract(&y).unwrap().is_zero());
    }

    #[test]
    fn covering_map_trivializes_the_fibration(params in params(1, 5, 5, 3)) {
        let h = build_h(&params).unwrap();
        let composed = h.compose(&build_p(&params).unwrap()).unwrap();
        prop_assert_eq!(composed, RatFunc::laurent_monomial(GaussianRational::from_int(1), 0, params.n as i64));
    }

    #[test]
    fn pullback_is_natural(params in params(1, 3, 3, 2), f in bipoly(3, 2), a in bipoly(3, 2), b in bipoly(3, 2)) {
        let h = build_h(&params).unwrap();
        let fr = RatFunc::from_poly(f.clone());
        let lhs = h.pullback_form(&differential(&f, Coords::XY)).unwrap();
        prop_assert_eq!(lhs.clone(), differential_rat(&h.compose(&fr).unwrap(), Coords::UV));
        let x = VectorField2::from_polys(a, b, Coords::XY);
        let down = differential(&f, Coords::XY).contract(&x).unwrap();
        let up = lhs.contract(&h.pullback_field(&x).unwrap()).unwrap();
        prop_assert_eq!(up, h.compose(&down).unwrap());
    }

    #[test]
    fn pushforward_then_pullback((params, pb) in invariant_instance(false)) {
        let h = build_h(&params).unwrap();
        let w = pb.to_field();
        let x = h.pushforward_field(&w).unwrap();
        let back = h.pullback_field(&x).unwrap();
        prop_assert_eq!(&back, &w);
        prop_assert_eq!(extract_pullback_shape(&back, params.n).unwrap(), pb);
    }

    #[test]
    fn first_integral_is_exact_and_deck_invariant((params, pb) in invariant_instance(true)) {
        let h = build_h(&params).unwrap();
        let x = h.pushforward_field(&pb.to_field()).unwrap();
        let g = first_integral_xy(&params, &pb).unwrap();
        prop_assert_eq!(verify_first_integral(&g, &x), Verdict::ExactZero);
        let (monomial, sbar) = g.upstairs();
        prop_assert!(deck_invariant(&monomial, params.n, params.m));
        prop_assert!(deck_invariant(&RatFunc::from_poly(BiPoly::from_unipoly(&sbar, true)), params.n, params.m));
    }

    #[test]
    fn partial_fractions_recompose(a in unipoly(5), c in nonzero_gr(), big_n in 1usize..=4) {
        let pf = pf_at_zero(&a, &c, big_n).unwrap();
        prop_assert_eq!(pf.recompose(&c), a);
    }

    #[test]
    fn gamma_matches_expansion(a0 in real_nonzero(), rest in prop::collection::vec(gr(), 0..=4), c in real_nonzero(), big_n in 1usize..=3) {
        let mut coeffs = vec![GaussianRational::from_int(0); big_n - 1];
        coeffs.push(a0);
        coeffs.extend(rest);
        let a = UniPoly::new(coeffs);
        let pf = pf_at_zero(&a, &c, big_n).unwrap();
        let gamma = gamma_from_pf(&pf).unwrap();
        prop_assert_eq!(gamma.log_derivative(), pf.to_laurent());
    }

    #[test]
    fn translation_is_invertible(alpha in gr(), a in bipoly(3, 2), b in bipoly(3, 2), x0 in gr(), y0 in gr()) {
        let x = VectorField2::from_polys(a, b, Coords::XY);
        let there = translate_field(&alpha, &x);
        prop_assert_eq!(translate_field(&-&alpha, &there), x.clone());
        let moved = translate_point(&alpha, &(x0.clone(), y0.clone()));
        prop_assert_eq!(translate_point(&-&alpha, &moved), (x0.clone(), y0.clone()));
        // The translated field at the translated point equals the field at the point.
        let at = |f: &VectorField2, p: &(GaussianRational, GaussianRational)| {
            (f.comp_x.eval(&p.0, &p.1).unwrap(), f.comp_y.eval(&p.0, &p.1).unwrap())
        };
        prop_assert_eq!(at(&there, &moved), at(&x, &(x0, y0)));
    }

    #[test]
    fn riccati_parametrization_solves_the_equation(
        lambda in nonzero_gr(), big_n in 0u32..=3, b in unipoly(3), c in unipoly(3), x0 in nonzero_gr(), y0 in gr()
    ) {
        let r = RiccatiParams::new(UniPoly::monomial(lambda, big_n as usize), b, c);
        let tp = riccati_parametrize(&r, &x0, &y0).unwrap();
        prop_assert!(tp.verify());
    }

    #[test]
    fn tracer_retraces_its_path(x0 in 0.3f64..1.0, y0 in 0.3f64..1.0, phase in 0.0f64..std::f64::consts::TAU) {
        let field = CompiledField::new(&parse_field("x*(1+x*y) d/dx + y*(1-x*y) d/dy", None).unwrap());
        let dir = Complex64::from_polar(1.0, phase);
        let cfg = TracerConfig::with_tol(1e-11);
        let start = ComplexPoint::from_re(x0, y0);
        let fwd = integrate_ray(&field, start, dir, 0.5, &cfg, None).unwrap();
        let back = integrate_ray(&field, fwd.endpoint(), -dir, 0.5, &cfg, None).unwrap();
        prop_assert!(back.endpoint().dist(&start) < 1e-7);
    }
}

#[test]
fn one_forms_pull_back_linearly() {
    let params = SaitoSuzukiParams::new(2, 3, 1, UniPoly::from_ints(&[1])).unwrap();
    let h = build_h(&params).unwrap();
    let w1 = OneForm2::new(RatFunc::y(), RatFunc::x(), Coords::XY);
    let w2 = OneForm2::new(
        RatFunc::one(),
        RatFunc::from_poly(BiPoly::term(GaussianRational::from_int(2), 0, 2)),
        Coords::XY,
    );
    let sum = h.pullback_form(&w1.add(&w2).unwrap()).unwrap();
    let parts = h
        .pullback_form(&w1)
        .unwrap()
        .add(&h.pullback_form(&w2).unwrap())
        .unwrap();
    assert_eq!(sum, parts);
}
