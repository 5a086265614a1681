//! Dormand–Prince 5(4) along a ray in complex time.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    CompiledField, ComplexPoint, Sample, TraceError, TraceResult, TraceStats, TraceStatus, TracerConfig, DRIFT_FLOOR,
};
use crate::first_integral::FirstIntegralForm;

type State = [Complex64; 2];

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// Fifth-order weights (first-same-as-last: equal to the last row of `A`).
const B: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
/// Fifth minus fourth order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

fn rhs(field: &CompiledField, dir: Complex64, y: &State) -> Result<State, TraceError> {
    let (a, b) = field.eval(ComplexPoint::new(y[0], y[1]))?;
    Ok([a * dir, b * dir])
}

/// One step of size `h`; returns the fifth-order solution, the error
/// estimate and the derivative at the new point.
fn dp_step(
    field: &CompiledField,
    dir: Complex64,
    y: &State,
    k1: &State,
    h: f64,
) -> Result<(State, State, State), TraceError> {
    let mut k = [[Complex64::default(); 2]; 7];
    k[0] = *k1;
    for s in 1..7 {
        let mut ys = *y;
        for (j, kj) in k.iter().enumerate().take(s) {
            let a = A[s][j];
            if a != 0.0 {
                ys[0] += kj[0] * (h * a);
                ys[1] += kj[1] * (h * a);
            }
        }
        k[s] = rhs(field, dir, &ys)?;
    }
    let mut y5 = *y;
    let mut err = [Complex64::default(); 2];
    for s in 0..7 {
        for c in 0..2 {
            y5[c] += k[s][c] * (h * B[s]);
            err[c] += k[s][c] * (h * E[s]);
        }
    }
    Ok((y5, err, k[6]))
}

fn error_norm(err: &State, y0: &State, y1: &State, tol: f64) -> f64 {
    let mut acc = 0.0;
    for c in 0..2 {
        let sc = tol * (1.0 + y0[c].norm().max(y1[c].norm()));
        acc += (err[c].norm() / sc).powi(2);
    }
    (acc / 2.0).sqrt()
}

fn initial_step(y: &State, f: &State, t_end: f64) -> f64 {
    let d0 = y[0].norm().hypot(y[1].norm());
    let d1 = f[0].norm().hypot(f[1].norm());
    let h = if d0 > 1e-5 && d1 > 1e-5 { 0.01 * d0 / d1 } else { 1e-6 };
    h.min(t_end)
}

fn record(
    samples: &mut Vec<Sample>,
    s: f64,
    dir: Complex64,
    y: &State,
    f: &State,
    conserved: Option<&FirstIntegralForm>,
) {
    let g = conserved.and_then(|g| g.eval_complex(y[0], y[1]));
    samples.push(Sample {
        t: dir * s,
        z: ComplexPoint::new(y[0], y[1]),
        velocity: (f[0] / dir, f[1] / dir),
        g,
    });
}

fn drift(samples: &[Sample]) -> Option<f64> {
    let g0 = samples.first()?.g?;
    let denom = g0.norm().max(DRIFT_FLOOR);
    let mut worst = 0.0f64;
    for s in samples {
        worst = worst.max((s.g? - g0).norm() / denom);
    }
    Some(worst)
}

fn check_inputs(z0: ComplexPoint, direction: Complex64, t_end: f64) -> Result<(), TraceError> {
    if !z0.is_finite() {
        return Err(TraceError::InvalidInput("initial point is not finite".into()));
    }
    let deviation = (direction.norm() - 1.0).abs();
    if deviation.is_nan() || deviation >= 1e-12 {
        return Err(TraceError::InvalidInput("direction must have modulus 1".into()));
    }
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(TraceError::InvalidInput("T must be finite and nonnegative".into()));
    }
    Ok(())
}

/// Integrates `dz/dt = X(z)` for `t = s·direction`, `s ∈ [0, T]`, with
/// adaptive Dormand–Prince 5(4) steps; one sample per accepted step.
pub fn integrate_ray(
    field: &CompiledField,
    z0: ComplexPoint,
    direction: Complex64,
    t_end: f64,
    cfg: &TracerConfig,
    conserved: Option<&FirstIntegralForm>,
) -> Result<TraceResult, TraceError> {
    cfg.validate()?;
    check_inputs(z0, direction, t_end)?;
    let field = field.clone().with_pole_guard(cfg.pole_guard);
    let mut y: State = [z0.x, z0.y];
    let mut f = rhs(&field, direction, &y)?;
    let mut samples = Vec::new();
    record(&mut samples, 0.0, direction, &y, &f, conserved);
    let mut stats = TraceStats::default();
    let finish = |samples: Vec<Sample>, status, mut stats: TraceStats| {
        stats.max_drift = drift(&samples);
        Ok(TraceResult {
            direction,
            samples,
            status,
            stats,
        })
    };
    if t_end == 0.0 {
        return finish(samples, TraceStatus::Completed, stats);
    }
    let h_min = 1e-15 * t_end;
    let mut s = 0.0;
    let mut h = initial_step(&y, &f, t_end);
    let mut near_pole = false;
    while s < t_end {
        if stats.steps + stats.rejected >= cfg.max_steps {
            return finish(samples, TraceStatus::StepLimit, stats);
        }
        let last = s + h >= t_end * (1.0 - 1e-14);
        if last {
            h = t_end - s;
        }
        if h < h_min {
            let status = if near_pole {
                TraceStatus::Singular
            } else {
                TraceStatus::StepUnderflow
            };
            return finish(samples, status, stats);
        }
        match dp_step(&field, direction, &y, &f, h) {
            Err(_) => {
                near_pole = true;
                stats.rejected += 1;
                h *= 0.25;
            }
            Ok((y_new, err, f_new)) => {
                let e = error_norm(&err, &y, &y_new, cfg.tol);
                let finite = y_new[0].is_finite() && y_new[1].is_finite();
                if finite && e <= 1.0 {
                    s = if last { t_end } else { s + h };
                    y = y_new;
                    f = f_new;
                    stats.steps += 1;
                    near_pole = false;
                    record(&mut samples, s, direction, &y, &f, conserved);
                    if y[0].norm().hypot(y[1].norm()) > cfg.escape_radius {
                        return finish(samples, TraceStatus::Escaped, stats);
                    }
                } else {
                    stats.rejected += 1;
                }
                let factor = if finite && e > 0.0 {
                    0.9 * e.powf(-0.2)
                } else if finite {
                    5.0
                } else {
                    0.2
                };
                h *= factor.clamp(0.2, 5.0);
            }
        }
    }
    finish(samples, TraceStatus::Completed, stats)
}

/// Fixed-step Dormand–Prince (fifth-order solution) with `steps` equal
/// steps; returns the endpoint. Used for convergence-order checks.
pub fn integrate_fixed(
    field: &CompiledField,
    z0: ComplexPoint,
    direction: Complex64,
    t_end: f64,
    steps: usize,
) -> Result<ComplexPoint, TraceError> {
    check_inputs(z0, direction, t_end)?;
    if steps == 0 {
        return Err(TraceError::InvalidInput("at least one step is required".into()));
    }
    let h = t_end / steps as f64;
    let mut y: State = [z0.x, z0.y];
    let mut f = rhs(field, direction, &y)?;
    for _ in 0..steps {
        let (y_new, _, f_new) = dp_step(field, direction, &y, &f, h)?;
        y = y_new;
        f = f_new;
    }
    Ok(ComplexPoint::new(y[0], y[1]))
}

/// Independent traces from several base points, in parallel. The output
/// order matches the input order.
pub fn trace_many(
    field: &CompiledField,
    bases: &[ComplexPoint],
    direction: Complex64,
    t_end: f64,
    cfg: &TracerConfig,
    conserved: Option<&FirstIntegralForm>,
) -> Vec<Result<TraceResult, TraceError>> {
    bases
        .par_iter()
        .map(|z0| integrate_ray(field, *z0, direction, t_end, cfg, conserved))
        .collect()
}

/// Reproducible base points with `|x₀|, |y₀| ∈ [r_min, r_max]` and uniform
/// phases.
pub fn sample_base_points(seed: u64, count: usize, r_min: f64, r_max: f64) -> Vec<ComplexPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let r = rng.gen_range(r_min..=r_max);
        let phi = rng.gen_range(0.0..std::f64::consts::TAU);
        Complex64::from_polar(r, phi)
    };
    (0..count)
        .map(|_| {
            let x = draw(&mut rng);
            let y = draw(&mut rng);
            ComplexPoint::new(x, y)
        })
        .collect()
}
