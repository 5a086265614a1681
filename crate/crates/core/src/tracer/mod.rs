//! Complex-time trajectory integration in double precision.
//!
//! Exact coefficients are converted to `Complex64` once per field; the
//! stepper never touches exact arithmetic. Time runs along rays
//! `t = s·direction`, `s ∈ [0, T]`.

mod checks;
mod compiled;
mod output;
mod quadrature;
mod rk;

pub use checks::{conservation_check, elapsed_time_via_tau, escape_profile, EscapeProfile};
pub use compiled::{eval_field, CompiledField, CompiledRatFunc};
pub use output::{write_csv, CSV_HEADER};
pub use quadrature::{evaluate_trajectory, integrate_segment};
pub use rk::{integrate_fixed, integrate_ray, sample_base_points, trace_many};

use num_complex::Complex64;

/// A point of C².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexPoint {
    pub x: Complex64,
    pub y: Complex64,
}

impl ComplexPoint {
    pub fn new(x: Complex64, y: Complex64) -> Self {
        Self { x, y }
    }

    pub fn from_re(x: f64, y: f64) -> Self {
        Self::new(Complex64::new(x, 0.0), Complex64::new(y, 0.0))
    }

    pub fn norm(&self) -> f64 {
        self.x.norm().hypot(self.y.norm())
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist(&self, other: &ComplexPoint) -> f64 {
        (self.x - other.x).norm().hypot((self.y - other.y).norm())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TracerConfig {
    /// Local error tolerance, within `[1e-14, 1e-3]`.
    pub tol: f64,
    pub escape_radius: f64,
    /// Relative size below which a denominator counts as vanishing.
    pub pole_guard: f64,
    pub max_steps: usize,
}

impl Default for TracerConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            escape_radius: 1e8,
            pole_guard: 1e-12,
            max_steps: 1_000_000,
        }
    }
}

impl TracerConfig {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), TraceError> {
        if !(1e-14..=1e-3).contains(&self.tol) {
            return Err(TraceError::InvalidTolerance(self.tol));
        }
        let positive = |v: f64| v > 0.0;
        if !positive(self.escape_radius) || !positive(self.pole_guard) {
            return Err(TraceError::InvalidConfig(
                "escape radius and pole guard must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceStatus {
    Completed,
    Escaped,
    Singular,
    StepUnderflow,
    StepLimit,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub t: Complex64,
    pub z: ComplexPoint,
    /// `X(z)`, kept for dense interpolation between samples.
    pub velocity: (Complex64, Complex64),
    /// The conserved quantity, when one was supplied and is defined at `z`.
    pub g: Option<Complex64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TraceStats {
    pub steps: usize,
    pub rejected: usize,
    /// `max_i |G(z_i) − G(z_0)| / max(|G(z_0)|, floor)`, when `G` was supplied.
    pub max_drift: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceResult {
    pub direction: Complex64,
    pub samples: Vec<Sample>,
    pub status: TraceStatus,
    pub stats: TraceStats,
}

impl TraceResult {
    pub fn endpoint(&self) -> ComplexPoint {
        self.samples.last().expect("a trace has at least one sample").z
    }

    pub fn final_time(&self) -> Complex64 {
        self.samples.last().expect("a trace has at least one sample").t
    }
}

/// Floor in the relative drift denominator.
pub const DRIFT_FLOOR: f64 = 1e-300;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum TraceError {
    #[error("tolerance {0} outside [1e-14, 1e-3]")]
    InvalidTolerance(f64),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("near a pole of the field at ({x}, {y})")]
    NearPole { x: Complex64, y: Complex64 },
    #[error("the first integral is undefined at sample {index}")]
    UndefinedOnTrace { index: usize },
    #[error("the path passes through a singularity of the form near sample {index}")]
    PathThroughSingularity { index: usize },
    #[error("at least two samples are required")]
    TooFewSamples,
    #[error("the field must be in the (x, y) chart")]
    WrongChart,
}
