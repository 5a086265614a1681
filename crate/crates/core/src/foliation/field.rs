use std::fmt;

use super::FoliationError;
use crate::algebra::{poly_gcd, BiPoly, RatFunc};

/// Which coordinate chart an object lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coords {
    /// The base plane `(x, y)`.
    XY,
    /// The covering plane `(u, v)`.
    UV,
}

impl Coords {
    pub fn names(self) -> (&'static str, &'static str) {
        match self {
            Coords::XY => ("x", "y"),
            Coords::UV => ("u", "v"),
        }
    }
}

/// A rational vector field `comp_x ∂/∂x + comp_y ∂/∂y` (or `∂/∂u`, `∂/∂v`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField2 {
    pub comp_x: RatFunc,
    pub comp_y: RatFunc,
    pub coords: Coords,
}

impl VectorField2 {
    pub fn new(comp_x: RatFunc, comp_y: RatFunc, coords: Coords) -> Self {
        Self { comp_x, comp_y, coords }
    }

    pub fn from_polys(px: BiPoly, py: BiPoly, coords: Coords) -> Self {
        Self::new(px.into(), py.into(), coords)
    }

    pub fn is_zero(&self) -> bool {
        self.comp_x.is_zero() && self.comp_y.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.comp_x.is_polynomial() && self.comp_y.is_polynomial()
    }

    /// Polynomial components, when both are polynomial.
    pub fn polys(&self) -> Option<(BiPoly, BiPoly)> {
        Some((self.comp_x.as_poly()?, self.comp_y.as_poly()?))
    }

    /// Polynomial with coprime components, i.e. only isolated zeros.
    pub fn has_isolated_zeros(&self) -> bool {
        match self.polys() {
            Some((a, b)) => {
                let g = poly_gcd(&a, &b);
                !g.is_zero() && g.is_constant()
            }
            None => false,
        }
    }

    /// The derivation `X(f) = comp_x ∂f/∂x + comp_y ∂f/∂y`.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        &(&self.comp_x * &f.dx()) + &(&self.comp_y * &f.dy())
    }

    pub fn scale_by(&self, f: &RatFunc) -> Self {
        Self::new(&self.comp_x * f, &self.comp_y * f, self.coords)
    }

    /// Formats as `<a> d/dx + <b> d/dy`.
    pub fn display(&self) -> String {
        let (vx, vy) = self.coords.names();
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (comp, var) in [(&self.comp_x, vx), (&self.comp_y, vy)] {
            if comp.is_zero() {
                continue;
            }
            parts.push(format_component(comp, &format!("d/d{var}"), self.coords));
        }
        join_components(parts)
    }
}

impl fmt::Display for VectorField2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// A rational one-form `coef_dx dx + coef_dy dy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm2 {
    pub coef_dx: RatFunc,
    pub coef_dy: RatFunc,
    pub coords: Coords,
}

impl OneForm2 {
    pub fn new(coef_dx: RatFunc, coef_dy: RatFunc, coords: Coords) -> Self {
        Self {
            coef_dx,
            coef_dy,
            coords,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coef_dx.is_zero() && self.coef_dy.is_zero()
    }

    pub fn scale_by(&self, f: &RatFunc) -> Self {
        Self::new(&self.coef_dx * f, &self.coef_dy * f, self.coords)
    }

    pub fn add(&self, other: &OneForm2) -> Result<Self, FoliationError> {
        if self.coords != other.coords {
            return Err(FoliationError::CoordinateMismatch);
        }
        Ok(Self::new(
            &self.coef_dx + &other.coef_dx,
            &self.coef_dy + &other.coef_dy,
            self.coords,
        ))
    }

    /// `ω(X)`, reduced.
    pub fn contract(&self, field: &VectorField2) -> Result<RatFunc, FoliationError> {
        if self.coords != field.coords {
            return Err(FoliationError::CoordinateMismatch);
        }
        Ok(&(&self.coef_dx * &field.comp_x) + &(&self.coef_dy * &field.comp_y))
    }

    pub fn display(&self) -> String {
        let (vx, vy) = self.coords.names();
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (comp, var) in [(&self.coef_dx, vx), (&self.coef_dy, vy)] {
            if comp.is_zero() {
                continue;
            }
            parts.push(format_component(comp, &format!("d{var}"), self.coords));
        }
        join_components(parts)
    }
}

impl fmt::Display for OneForm2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// Returns `(negated, text)` so that joining can use ` - ` for negative parts.
fn format_component(c: &RatFunc, basis: &str, coords: Coords) -> (bool, String) {
    let (vx, vy) = coords.names();
    let mut comp = c.clone();
    let mut negated = false;
    if c.num().leading_coeff().to_string().starts_with('-') {
        comp = -c;
        negated = true;
    }
    let text = comp.display_with(vx, vy);
    let body = if comp.as_constant().is_some_and(|v| num_traits::One::is_one(&v)) {
        basis.to_string()
    } else if comp.is_polynomial() && comp.num().num_terms() == 1 {
        format!("{text} {basis}")
    } else {
        // sums inside the parentheses are written without spaces
        format!("({}) {basis}", text.replace(" + ", "+").replace(" - ", "-"))
    };
    (negated, body)
}

fn join_components(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (neg, body)) in parts.into_iter().enumerate() {
        match (idx, neg) {
            (0, true) => out.push_str(&format!("-{body}")),
            (0, false) => out.push_str(&body),
            (_, true) => out.push_str(&format!(" - {body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
        }
    }
    out
}

/// `dP = P_x dx + P_y dy`.
pub fn differential(p: &BiPoly, coords: Coords) -> OneForm2 {
    OneForm2::new(p.dx().into(), p.dy().into(), coords)
}

pub fn differential_rat(f: &RatFunc, coords: Coords) -> OneForm2 {
    OneForm2::new(f.dx(), f.dy(), coords)
}

/// `df / f`.
pub fn dlog(f: &RatFunc, coords: Coords) -> Result<OneForm2, FoliationError> {
    let inv = f.inv().map_err(|_| FoliationError::ZeroForm)?;
    Ok(differential_rat(f, coords).scale_by(&inv))
}

/// Divides both (polynomial) coefficients by their monic gcd.
///
/// Constants are not normalized away: `d(x²) = 2x dx` reduces to `2 dx`.
pub fn reduce_codim1(form: &OneForm2) -> Result<OneForm2, FoliationError> {
    if form.is_zero() {
        return Err(FoliationError::ZeroForm);
    }
    let (Some(a), Some(b)) = (form.coef_dx.as_poly(), form.coef_dy.as_poly()) else {
        return Err(FoliationError::NotPolynomial);
    };
    let g = poly_gcd(&a, &b);
    let a = a.div_exact(&g).expect("gcd divides");
    let b = b.div_exact(&g).expect("gcd divides");
    Ok(OneForm2::new(a.into(), b.into(), form.coords))
}

/// The Hamiltonian field `P_y ∂x − P_x ∂y`, tangent to every fiber of `P`.
pub fn hamiltonian_field(p: &BiPoly, coords: Coords) -> VectorField2 {
    VectorField2::from_polys(p.dy(), -&p.dx(), coords)
}
