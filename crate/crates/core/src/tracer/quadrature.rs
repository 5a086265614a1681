//! Adaptive Gauss–Legendre quadrature of complex-valued integrands.

use std::sync::OnceLock;

use num_complex::Complex64;

use super::TraceError;
use crate::normal_forms::TrajectoryParam;

const ORDER: usize = 10;
const MAX_DEPTH: u32 = 40;

/// Nodes and weights on `[-1, 1]`, by Newton iteration on `P_n`.
fn gauss_legendre() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = ORDER;
        (0..n)
            .map(|i| {
                let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
                let mut dp = 0.0;
                for _ in 0..100 {
                    let (mut p0, mut p1) = (1.0, x);
                    for k in 2..=n {
                        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                        p0 = p1;
                        p1 = p2;
                    }
                    dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                    let dx = p1 / dp;
                    x -= dx;
                    if dx.abs() < 1e-16 {
                        break;
                    }
                }
                (x, 2.0 / ((1.0 - x * x) * dp * dp))
            })
            .collect()
    })
}

fn rule<F>(f: &F, a: f64, b: f64) -> Option<Complex64>
where
    F: Fn(f64) -> Option<Complex64>,
{
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = Complex64::new(0.0, 0.0);
    for &(x, w) in gauss_legendre() {
        acc += f(mid + half * x)? * (w * half);
    }
    Some(acc)
}

fn adapt<F>(f: &F, a: f64, b: f64, whole: Complex64, tol: f64, depth: u32) -> Option<Complex64>
where
    F: Fn(f64) -> Option<Complex64>,
{
    let mid = 0.5 * (a + b);
    let left = rule(f, a, mid)?;
    let right = rule(f, mid, b)?;
    let sum = left + right;
    if (sum - whole).norm() <= tol * sum.norm().max(1.0) {
        return Some(sum);
    }
    if depth >= MAX_DEPTH {
        return None;
    }
    Some(adapt(f, a, mid, left, tol, depth + 1)? + adapt(f, mid, b, right, tol, depth + 1)?)
}

/// `∫_a^b f(s) ds`; `None` when `f` is undefined somewhere on the way or
/// the subdivision does not settle (a singularity on the segment).
pub fn integrate_segment<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Option<Complex64>
where
    F: Fn(f64) -> Option<Complex64>,
{
    if a == b {
        return Some(Complex64::new(0.0, 0.0));
    }
    let whole = rule(&f, a, b)?;
    adapt(&f, a, b, whole, rel_tol, 0)
}

/// `(x(t), y(t))` from a Riccati trajectory descriptor, with the remaining
/// integral evaluated along the straight segment from `0` to `t`.
pub fn evaluate_trajectory(param: &TrajectoryParam, t: Complex64) -> Result<(Complex64, Complex64), TraceError> {
    let integral = if param.quadrature.is_trivial() {
        Complex64::new(0.0, 0.0)
    } else {
        let f = |s: f64| {
            let v = param.quadrature.integrand(t * s) * t;
            v.is_finite().then_some(v)
        };
        integrate_segment(f, 0.0, 1.0, 1e-13).ok_or(TraceError::PathThroughSingularity { index: 0 })?
    };
    Ok((param.x_at(t), param.y_at(t, integral)))
}
