//! Bivariate gcd over Q(i) by the primitive polynomial remainder sequence.
//!
//! Polynomials are viewed in `Q(i)[x][y]`; contents are univariate gcds in
//! `x`, primitive parts are reduced with exact univariate division.

use super::{BiPoly, UniPoly};

type YDense = Vec<UniPoly>;

fn trim(mut p: YDense) -> YDense {
    while p.last().is_some_and(UniPoly::is_zero) {
        p.pop();
    }
    p
}

fn content(p: &YDense) -> UniPoly {
    p.iter().fold(UniPoly::zero(), |g, c| g.gcd(c))
}

fn primitive_part(p: &YDense) -> YDense {
    let c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    p.iter()
        .map(|a| a.div_exact(&c).expect("content divides every coefficient"))
        .collect()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1)·a mod b` in `Q(i)[x][y]`.
fn pseudo_rem(a: &YDense, b: &YDense) -> YDense {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (j, bc) in b.iter().enumerate() {
            let t = &lr * bc;
            r[j + shift] = &r[j + shift] - &t;
        }
        r = trim(r);
    }
    r
}

/// Greatest common divisor normalized to leading coefficient 1 under
/// graded-lex order; `gcd(0, 0) = 0`.
pub fn poly_gcd(f: &BiPoly, g: &BiPoly) -> BiPoly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return BiPoly::one();
    }
    // pull out common monomials first; cheap and keeps the PRS small
    let mf = f.monomial_content();
    let mg = g.monomial_content();
    let common = super::Monomial::new(mf.i.min(mg.i), mf.j.min(mg.j));
    let f = f.div_monomial(mf);
    let g = g.div_monomial(mg);

    let a = f.to_y_dense();
    let b = g.to_y_dense();
    let cont = content(&a).gcd(&content(&b));
    let mut a = primitive_part(&a);
    let mut b = primitive_part(&b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let prim = loop {
        if b.len() <= 1 {
            // b is a nonzero primitive constant in y, hence a unit
            break vec![UniPoly::one()];
        }
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            break b;
        }
        a = b;
        b = primitive_part(&r);
    };
    let out = &BiPoly::from_y_dense(&prim) * &BiPoly::from_unipoly(&cont, false);
    out.mul_monomial(common).monic()
}

/// Square-free decomposition by repeated gcds with the partial derivatives.
///
/// Returns `(factor, multiplicity)` pairs whose product (with multiplicities)
/// equals `f` up to a constant. Factors are monic and pairwise coprime.
pub fn squarefree_decomposition(f: &BiPoly) -> Vec<(BiPoly, u32)> {
    let mut out = Vec::new();
    if f.is_zero() || f.is_constant() {
        return out;
    }
    let mut rest = f.monic();
    let mut mult = 1;
    loop {
        if rest.is_constant() {
            break;
        }
        let g = poly_gcd(&poly_gcd(&rest, &rest.dx()), &rest.dy());
        // squarefree part of what remains
        let sqf = rest.div_exact(&g).expect("gcd divides").monic();
        // factors of sqf that also occur in g appear with higher multiplicity
        let next_sqf = poly_gcd(&sqf, &g);
        let exact = sqf.div_exact(&next_sqf).expect("gcd divides").monic();
        if !exact.is_constant() {
            out.push((exact, mult));
        }
        rest = g;
        mult += 1;
        if mult > 10_000 {
            break;
        }
    }
    out
}

/// Whether two polynomials share no factor of positive degree.
pub fn coprime(f: &BiPoly, g: &BiPoly) -> bool {
    let d = poly_gcd(f, g);
    !d.is_zero() && d.is_constant()
}
