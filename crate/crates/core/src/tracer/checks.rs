use num_complex::Complex64;

use super::quadrature::integrate_segment;
use super::{CompiledRatFunc, ComplexPoint, TraceError, TraceResult, DRIFT_FLOOR};
use crate::algebra::{BiPoly, RatFunc};
use crate::first_integral::FirstIntegralForm;
use crate::foliation::{Coords, TimesFormData};

/// Maximum relative change of `G^{nq}` over the samples of a trace.
pub fn conservation_check(tr: &TraceResult, g: &FirstIntegralForm) -> Result<f64, TraceError> {
    if tr.samples.len() < 2 {
        return Err(TraceError::TooFewSamples);
    }
    let values = tr
        .samples
        .iter()
        .enumerate()
        .map(|(index, s)| {
            g.eval_complex(s.z.x, s.z.y)
                .ok_or(TraceError::UndefinedOnTrace { index })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let g0 = values[0];
    let denom = g0.norm().max(DRIFT_FLOOR);
    Ok(values.iter().map(|v| (v - g0).norm() / denom).fold(0.0, f64::max))
}

/// Cubic Hermite interpolation between two samples, as a function of
/// `θ ∈ [0, 1]`: `(z(θ), dz/dθ)`.
fn hermite(z0: Complex64, m0: Complex64, z1: Complex64, m1: Complex64, h: f64, th: f64) -> (Complex64, Complex64) {
    let t2 = th * th;
    let t3 = t2 * th;
    let z = z0 * (2.0 * t3 - 3.0 * t2 + 1.0)
        + m0 * (h * (t3 - 2.0 * t2 + th))
        + z1 * (-2.0 * t3 + 3.0 * t2)
        + m1 * (h * (t3 - t2));
    let dz = z0 * (6.0 * t2 - 6.0 * th)
        + m0 * (h * (3.0 * t2 - 4.0 * th + 1.0))
        + z1 * (-6.0 * t2 + 6.0 * th)
        + m1 * (h * (3.0 * t2 - 2.0 * th));
    (z, dz)
}

/// `∫ τ` along the traced path. The path between samples is the cubic
/// Hermite interpolant through the stored points and velocities; each
/// piece is integrated by adaptive Gauss–Legendre quadrature.
pub fn elapsed_time_via_tau(tf: &TimesFormData, tr: &TraceResult) -> Result<Complex64, TraceError> {
    if tf.tau.coords != Coords::XY {
        return Err(TraceError::WrongChart);
    }
    let a = CompiledRatFunc::new(&tf.tau.coef_dx);
    let b = CompiledRatFunc::new(&tf.tau.coef_dy);
    let guard = 1e-12;
    let dir = tr.direction;
    let mut total = Complex64::new(0.0, 0.0);
    for (index, pair) in tr.samples.windows(2).enumerate() {
        let (p, q) = (&pair[0], &pair[1]);
        let h = ((q.t - p.t) / dir).re;
        let (mx0, my0) = (p.velocity.0 * dir, p.velocity.1 * dir);
        let (mx1, my1) = (q.velocity.0 * dir, q.velocity.1 * dir);
        let integrand = |th: f64| {
            let (x, dx) = hermite(p.z.x, mx0, q.z.x, mx1, h, th);
            let (y, dy) = hermite(p.z.y, my0, q.z.y, my1, h, th);
            let z = ComplexPoint::new(x, y);
            let v = a.eval(z, guard)? * dx + b.eval(z, guard)? * dy;
            v.is_finite().then_some(v)
        };
        total += integrate_segment(integrand, 0.0, 1.0, 1e-12).ok_or(TraceError::PathThroughSingularity { index })?;
    }
    Ok(total)
}

/// Heuristic proximity and growth statistics of a trace.
#[derive(Clone, Debug, PartialEq)]
pub struct EscapeProfile {
    pub min_abs_x: f64,
    /// Minimum of `|w|/|∇w|` over the samples, for the supplied curve `w = 0`.
    pub min_curve_distance: Option<f64>,
    pub final_curve_distance: Option<f64>,
    /// Slope of `log|z|` against `log s` over the later part of the trace.
    pub growth_exponent: Option<f64>,
    /// The distance to the curve has dropped by a factor of ten and is
    /// smallest at the end of the trace.
    pub approaching_curve: bool,
}

pub fn escape_profile(tr: &TraceResult, curve: Option<&BiPoly>) -> EscapeProfile {
    let min_abs_x = tr.samples.iter().map(|s| s.z.x.norm()).fold(f64::INFINITY, f64::min);
    let distances: Option<Vec<f64>> = curve.map(|w| {
        let f = CompiledRatFunc::new(&RatFunc::from_poly(w.clone()));
        let fx = CompiledRatFunc::new(&RatFunc::from_poly(w.dx()));
        let fy = CompiledRatFunc::new(&RatFunc::from_poly(w.dy()));
        tr.samples
            .iter()
            .map(|s| {
                let v = f.eval(s.z, 0.0).unwrap_or_default().norm();
                let g = fx
                    .eval(s.z, 0.0)
                    .unwrap_or_default()
                    .norm()
                    .hypot(fy.eval(s.z, 0.0).unwrap_or_default().norm());
                v / g.max(1e-300)
            })
            .collect()
    });
    let (min_curve_distance, final_curve_distance, approaching_curve) = match &distances {
        Some(d) if !d.is_empty() => {
            let min = d.iter().copied().fold(f64::INFINITY, f64::min);
            let last = *d.last().unwrap();
            (Some(min), Some(last), last < 0.1 * d[0] && last <= min * (1.0 + 1e-9))
        }
        _ => (None, None, false),
    };
    EscapeProfile {
        min_abs_x,
        min_curve_distance,
        final_curve_distance,
        growth_exponent: growth_exponent(tr),
        approaching_curve,
    }
}

fn growth_exponent(tr: &TraceResult) -> Option<f64> {
    let pts: Vec<(f64, f64)> = tr
        .samples
        .iter()
        .map(|s| (s.t.norm(), s.z.norm()))
        .filter(|(s, r)| *s > 0.0 && *r > 0.0)
        .collect();
    let s_end = pts.last()?.0;
    let mut tail: Vec<_> = pts.iter().filter(|(s, _)| *s >= 0.1 * s_end).copied().collect();
    if tail.len() < 2 {
        tail = pts[pts.len().saturating_sub(2)..].to_vec();
    }
    if tail.len() < 2 {
        return None;
    }
    let logs: Vec<(f64, f64)> = tail.iter().map(|(s, r)| (s.ln(), r.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
