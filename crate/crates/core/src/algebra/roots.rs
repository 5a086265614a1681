//! Gaussian-rational roots of univariate polynomials.
//!
//! Candidates come from floating-point root finding (Aberth–Ehrlich) and
//! continued-fraction reconstruction; every reported root is verified
//! exactly. Roots that are missed (irrational, or of very large height)
//! stay in the returned residual, so no information is lost.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{GaussianRational, UniPoly};

const MAX_DENOMINATOR: i64 = 1 << 40;

/// Distinct Q(i)-rational roots with multiplicities, and the cofactor
/// polynomial carrying all other roots.
pub fn split_rational_roots(p: &UniPoly) -> (Vec<(GaussianRational, u32)>, UniPoly) {
    if p.is_zero() {
        return (Vec::new(), UniPoly::zero());
    }
    let mut residual = p.clone();
    let mut found = Vec::new();
    for r in rational_roots(p) {
        let lin = UniPoly::new(vec![-&r, GaussianRational::one()]);
        let mut mult = 0;
        while let Some(q) = residual.div_exact(&lin) {
            residual = q;
            mult += 1;
        }
        found.push((r, mult));
    }
    (found, residual)
}

/// Distinct Q(i)-rational roots, sorted by (real, imaginary) part.
pub fn rational_roots(p: &UniPoly) -> Vec<GaussianRational> {
    let mut roots = Vec::new();
    if p.is_constant() {
        return roots;
    }
    let mut f = p.squarefree_part();
    if f.low_degree() > 0 {
        roots.push(GaussianRational::zero());
        f = UniPoly::new(f.coeffs()[1..].to_vec());
    }
    // linear factors are solved exactly; loop until Aberth stops finding any
    loop {
        match f.degree() {
            None | Some(0) => break,
            Some(1) => {
                roots.push(-&(&f.coeff(0) / &f.coeff(1)));
                break;
            }
            _ => {}
        }
        let approx = aberth(&f);
        let mut progress = false;
        for z in approx {
            if let Some(r) = reconstruct(&f, z) {
                let lin = UniPoly::new(vec![-&r, GaussianRational::one()]);
                if let Some(q) = f.div_exact(&lin) {
                    f = q;
                    roots.push(r);
                    progress = true;
                }
            }
        }
        if !progress {
            break;
        }
    }
    roots.sort_by(|a, b| a.re.cmp(&b.re).then(a.im.cmp(&b.im)));
    roots.dedup();
    roots
}

fn reconstruct(f: &UniPoly, z: Complex64) -> Option<GaussianRational> {
    let re_cands = convergent_candidates(z.re);
    let im_cands = convergent_candidates(z.im);
    for re in &re_cands {
        for im in &im_cands {
            let cand = GaussianRational::new(re.clone(), im.clone());
            if f.eval(&cand).is_zero() {
                return Some(cand);
            }
        }
    }
    None
}

/// A few continued-fraction convergents of `v`, simplest first, stopping once
/// they agree with `v` to near machine precision.
fn convergent_candidates(v: f64) -> Vec<BigRational> {
    if !v.is_finite() {
        return Vec::new();
    }
    let mut out = Vec::new();
    if v.abs() < 1e-9 {
        out.push(BigRational::zero());
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut x = v;
    for _ in 0..40 {
        let a = x.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        if k1 > BigInt::from(MAX_DENOMINATOR) {
            break;
        }
        let cand = BigRational::new(h1.clone(), k1.clone());
        let approx = super::gaussian::rat_to_f64(&cand);
        let close = (approx - v).abs() <= 1e-7 * (1.0 + v.abs());
        if close {
            out.push(cand);
            if out.len() >= 3 {
                break;
            }
        }
        let frac = x - a;
        if frac.abs() < 1e-14 {
            break;
        }
        x = 1.0 / frac;
    }
    out
}

/// Simultaneous approximation of all roots of a squarefree polynomial.
fn aberth(f: &UniPoly) -> Vec<Complex64> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    let lc = f.leading_coeff().to_complex();
    let coeffs: Vec<Complex64> = f.coeffs().iter().map(|c| c.to_complex() / lc).collect();
    let df: Vec<Complex64> = coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect();
    let horner = |cs: &[Complex64], z: Complex64| cs.iter().rev().fold(Complex64::zero(), |acc, c| acc * z + c);
    // Cauchy bound for the initial circle
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut zs: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let z = zs[i];
            let pz = horner(&coeffs, z);
            let dpz = horner(&df, z);
            if pz.norm() == 0.0 {
                continue;
            }
            let ratio = pz / dpz;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z - zs[j])).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                zs[i] = z - step;
                max_step = max_step.max(step.norm() / (1.0 + z.norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    zs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_roots(rs: &[GaussianRational]) -> UniPoly {
        rs.iter().fold(UniPoly::one(), |acc, r| {
            &acc * &UniPoly::new(vec![-r, GaussianRational::one()])
        })
    }

    #[test]
    fn finds_gaussian_roots() {
        let rs = vec![
            GaussianRational::from_parts(1, 2, 0, 1),
            GaussianRational::from_parts(-3, 1, 2, 3),
            GaussianRational::from_parts(0, 1, -1, 1),
        ];
        let mut found = rational_roots(&from_roots(&rs));
        let mut want = rs.clone();
        want.sort_by(|a, b| a.re.cmp(&b.re).then(a.im.cmp(&b.im)));
        found.sort_by(|a, b| a.re.cmp(&b.re).then(a.im.cmp(&b.im)));
        assert_eq!(found, want);
    }

    #[test]
    fn irrational_part_stays_in_residual() {
        // (z - 1)^2 (z^2 - 2)
        let f = &from_roots(&[GaussianRational::from_int(1), GaussianRational::from_int(1)])
            * &UniPoly::from_ints(&[-2, 0, 1]);
        let (found, residual) = split_rational_roots(&f);
        assert_eq!(found, vec![(GaussianRational::from_int(1), 2)]);
        assert_eq!(residual, UniPoly::from_ints(&[-2, 0, 1]));
    }

    #[test]
    fn root_at_zero_and_high_multiplicity() {
        let f = UniPoly::from_ints(&[0, 0, 0, 0, 0, 0, 0, 0, 4]);
        let (found, residual) = split_rational_roots(&f);
        assert_eq!(found, vec![(GaussianRational::zero(), 8)]);
        assert_eq!(residual, UniPoly::from_ints(&[4]));
    }
}
