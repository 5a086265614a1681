use num_complex::Complex64;

use super::{ComplexPoint, TraceError};
use crate::algebra::{BiPoly, RatFunc};
use crate::foliation::VectorField2;

#[derive(Clone, Debug, PartialEq)]
struct CompiledPoly {
    terms: Vec<(usize, usize, Complex64)>,
    deg_x: usize,
    deg_y: usize,
}

impl CompiledPoly {
    fn new(p: &BiPoly) -> Self {
        let terms: Vec<_> = p
            .terms()
            .map(|(m, c)| (m.i as usize, m.j as usize, c.to_complex()))
            .collect();
        let deg_x = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let deg_y = terms.iter().map(|t| t.1).max().unwrap_or(0);
        Self { terms, deg_x, deg_y }
    }

    /// Value and sum of term magnitudes.
    fn eval(&self, xp: &[Complex64], yp: &[Complex64]) -> (Complex64, f64) {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        for &(i, j, c) in &self.terms {
            let t = c * xp[i] * yp[j];
            acc += t;
            scale += t.norm();
        }
        (acc, scale)
    }
}

fn powers(z: Complex64, n: usize) -> Vec<Complex64> {
    let mut v = Vec::with_capacity(n + 1);
    v.push(Complex64::new(1.0, 0.0));
    for k in 1..=n {
        v.push(v[k - 1] * z);
    }
    v
}

/// A rational function with floating coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct CompiledRatFunc {
    num: CompiledPoly,
    den: CompiledPoly,
}

impl CompiledRatFunc {
    pub fn new(f: &RatFunc) -> Self {
        Self {
            num: CompiledPoly::new(f.num()),
            den: CompiledPoly::new(f.den()),
        }
    }

    fn max_degrees(&self) -> (usize, usize) {
        (self.num.deg_x.max(self.den.deg_x), self.num.deg_y.max(self.den.deg_y))
    }

    fn eval_with(&self, xp: &[Complex64], yp: &[Complex64], guard: f64) -> Option<Complex64> {
        let (n, _) = self.num.eval(xp, yp);
        let (d, scale) = self.den.eval(xp, yp);
        if d.norm() < guard * scale.max(1.0) {
            return None;
        }
        Some(n / d)
    }

    /// `None` when the denominator is below `guard` relative to its scale.
    pub fn eval(&self, z: ComplexPoint, guard: f64) -> Option<Complex64> {
        let (dx, dy) = self.max_degrees();
        self.eval_with(&powers(z.x, dx), &powers(z.y, dy), guard)
    }
}

/// A vector field with floating coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct CompiledField {
    comp_x: CompiledRatFunc,
    comp_y: CompiledRatFunc,
    deg_x: usize,
    deg_y: usize,
    pub pole_guard: f64,
}

impl CompiledField {
    pub fn new(field: &VectorField2) -> Self {
        let comp_x = CompiledRatFunc::new(&field.comp_x);
        let comp_y = CompiledRatFunc::new(&field.comp_y);
        let (ax, ay) = comp_x.max_degrees();
        let (bx, by) = comp_y.max_degrees();
        Self {
            comp_x,
            comp_y,
            deg_x: ax.max(bx),
            deg_y: ay.max(by),
            pole_guard: 1e-12,
        }
    }

    pub fn with_pole_guard(mut self, guard: f64) -> Self {
        self.pole_guard = guard;
        self
    }

    pub fn eval(&self, z: ComplexPoint) -> Result<(Complex64, Complex64), TraceError> {
        let xp = powers(z.x, self.deg_x);
        let yp = powers(z.y, self.deg_y);
        let pole = || TraceError::NearPole { x: z.x, y: z.y };
        let a = self.comp_x.eval_with(&xp, &yp, self.pole_guard).ok_or_else(pole)?;
        let b = self.comp_y.eval_with(&xp, &yp, self.pole_guard).ok_or_else(pole)?;
        if !(a.is_finite() && b.is_finite()) {
            return Err(pole());
        }
        Ok((a, b))
    }
}

/// Evaluates `X` at `z` in double precision.
pub fn eval_field(field: &VectorField2, z: ComplexPoint) -> Result<(Complex64, Complex64), TraceError> {
    CompiledField::new(field).eval(z)
}
