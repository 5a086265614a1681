//! Reduced rational functions in two variables.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{poly_gcd, AlgebraError, BiPoly, GaussianRational, UniPoly};

/// `num / den` with `gcd(num, den) = 1` and `den` monic under graded-lex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: BiPoly,
    den: BiPoly,
}

impl RatFunc {
    /// Reduces `num / den`; fails when `den` is the zero polynomial.
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZeroFunction);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            }
        };
        let lc_inv = den.leading_coeff().inv().unwrap();
        Ok(Self {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        })
    }

    pub fn from_poly(p: BiPoly) -> Self {
        Self {
            num: p,
            den: BiPoly::one(),
        }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(BiPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(BiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(BiPoly::one())
    }

    pub fn x() -> Self {
        Self::from_poly(BiPoly::x())
    }

    pub fn y() -> Self {
        Self::from_poly(BiPoly::y())
    }

    /// `c·x^i·y^j` with possibly negative exponents.
    pub fn laurent_monomial(c: GaussianRational, i: i64, j: i64) -> Self {
        let (ni, di) = if i >= 0 { (i as u32, 0) } else { (0, (-i) as u32) };
        let (nj, dj) = if j >= 0 { (j as u32, 0) } else { (0, (-j) as u32) };
        Self::new(BiPoly::term(c, ni, nj), BiPoly::term(GaussianRational::one(), di, dj))
            .expect("monomial denominator is nonzero")
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this function equals, if any.
    pub fn as_poly(&self) -> Option<BiPoly> {
        self.den.is_one().then(|| self.num.clone())
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        self.as_poly().and_then(|p| p.as_constant())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self {
            num: self.num.scale(c),
            den: if c.is_zero() { BiPoly::one() } else { self.den.clone() },
        }
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZeroFunction);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn powi(&self, e: i64) -> Result<Self, AlgebraError> {
        if e >= 0 {
            // num and den stay coprime under powers
            Ok(Self {
                num: self.num.pow(e as u32),
                den: self.den.pow(e as u32),
            })
        } else {
            self.inv()?.powi(-e)
        }
    }

    pub fn dx(&self) -> Self {
        let n = &(&self.num.dx() * &self.den) - &(&self.num * &self.den.dx());
        Self::new(n, self.den.pow(2)).unwrap()
    }

    pub fn dy(&self) -> Self {
        let n = &(&self.num.dy() * &self.den) - &(&self.num * &self.den.dy());
        Self::new(n, self.den.pow(2)).unwrap()
    }

    /// Substitutes `x ← sx`, `y ← sy`.
    pub fn substitute(&self, sx: &RatFunc, sy: &RatFunc) -> Result<Self, AlgebraError> {
        let n = substitute(&self.num, sx, sy)?;
        let d = substitute(&self.den, sx, sy)?;
        n.checked_div(&d)
    }

    pub fn eval(&self, x: &GaussianRational, y: &GaussianRational) -> Result<GaussianRational, AlgebraError> {
        let d = self.den.eval(x, y);
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZeroFunction);
        }
        Ok(&self.num.eval(x, y) / &d)
    }

    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.num.eval_complex(x, y) / self.den.eval_complex(x, y)
    }

    pub fn swap_vars(&self) -> Self {
        Self::new(self.num.swap_vars(), self.den.swap_vars()).unwrap()
    }

    pub fn display_with(&self, vx: &str, vy: &str) -> String {
        let n = self.num.display_with(vx, vy);
        if self.den.is_one() {
            return n;
        }
        let d = self.den.display_with(vx, vy);
        let wrap = |s: String, p: &BiPoly| {
            if p.num_terms() > 1 || s.starts_with('-') {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(n, &self.num), wrap(d, &self.den))
    }
}

/// `f(sx, sy)` for a polynomial `f`, computed over a common denominator.
pub fn substitute(f: &BiPoly, sx: &RatFunc, sy: &RatFunc) -> Result<RatFunc, AlgebraError> {
    if f.is_zero() {
        return Ok(RatFunc::zero());
    }
    let dx = f.degree_x().unwrap_or(0) as usize;
    let dy = f.degree_y().unwrap_or(0) as usize;
    let powers = |base: &BiPoly, k: usize| {
        let mut v = vec![BiPoly::one()];
        for i in 1..=k {
            let next = &v[i - 1] * base;
            v.push(next);
        }
        v
    };
    let ax = powers(&sx.num, dx);
    let bx = powers(&sx.den, dx);
    let ay = powers(&sy.num, dy);
    let by = powers(&sy.den, dy);
    let mut num = BiPoly::zero();
    for (m, c) in f.terms() {
        let (i, j) = (m.i as usize, m.j as usize);
        let t = &(&ax[i] * &bx[dx - i]) * &(&ay[j] * &by[dy - j]);
        num = &num + &t.scale(c);
    }
    RatFunc::new(num, &bx[dx] * &by[dy])
}

/// Polynomial substitution `f(px, py)`.
pub fn substitute_poly(f: &BiPoly, px: &BiPoly, py: &BiPoly) -> BiPoly {
    substitute(f, &RatFunc::from_poly(px.clone()), &RatFunc::from_poly(py.clone()))
        .expect("polynomial substitution has denominator 1")
        .as_poly()
        .expect("polynomial substitution stays polynomial")
}

/// `p(q)` for a univariate `p` and bivariate `q`.
pub fn compose_uni(p: &UniPoly, q: &BiPoly) -> BiPoly {
    p.coeffs()
        .iter()
        .rev()
        .fold(BiPoly::zero(), |acc, c| &(&acc * q) + &BiPoly::constant(c.clone()))
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl From<BiPoly> for RatFunc {
    fn from(p: BiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den).unwrap()
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x", "y"))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self.display_with("x", "y"))
    }
}
