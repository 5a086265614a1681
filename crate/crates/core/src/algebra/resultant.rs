//! Sylvester resultants of bivariate polynomials.
//!
//! Sign convention: determinant of the Sylvester matrix with the `deg g` rows
//! of `f` first, coefficients ordered from the highest power. This gives
//! `Res(f, g) = lc(f)^deg g · lc(g)^deg f · Π (α_i − β_j)` over the roots of
//! `f` and `g`, so `Res_y(y − x, y + x) = 2x`.

use super::{BiPoly, UniPoly};

/// Which variable the resultant eliminates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eliminate {
    X,
    Y,
}

/// Determinant over `Q(i)[t]` by Bareiss fraction-free elimination.
pub fn determinant(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut sign_flip = false;
    let mut prev = UniPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = UniPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -&det
    } else {
        det
    }
}

/// Sylvester matrix of two polynomials given by ascending coefficient lists.
pub fn sylvester_matrix(f: &[UniPoly], g: &[UniPoly]) -> Vec<Vec<UniPoly>> {
    let df = f.len().saturating_sub(1);
    let dg = g.len().saturating_sub(1);
    let n = df + dg;
    let mut m = vec![vec![UniPoly::zero(); n]; n];
    for r in 0..dg {
        for (k, c) in f.iter().rev().enumerate() {
            m[r][r + k] = c.clone();
        }
    }
    for r in 0..df {
        for (k, c) in g.iter().rev().enumerate() {
            m[dg + r][r + k] = c.clone();
        }
    }
    m
}

/// `Res(f, g)` with respect to the eliminated variable, as a polynomial in
/// the remaining one. Both inputs must be nonzero.
pub fn resultant(f: &BiPoly, g: &BiPoly, eliminate: Eliminate) -> UniPoly {
    assert!(!f.is_zero() && !g.is_zero(), "resultant of the zero polynomial");
    let (f, g) = match eliminate {
        Eliminate::Y => (f.clone(), g.clone()),
        Eliminate::X => (f.swap_vars(), g.swap_vars()),
    };
    determinant(sylvester_matrix(&f.to_y_dense(), &g.to_y_dense()))
}
