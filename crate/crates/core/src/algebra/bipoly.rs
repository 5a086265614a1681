//! Sparse bivariate polynomials over Q(i).
//!
//! Variables are positional: slot 0 is `x` (or `u`), slot 1 is `y` (or `v`).
//! Terms are kept in a `BTreeMap` under graded-lexicographic order with the
//! first variable dominating, so the last entry is always the leading term.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{AlgebraError, GaussianRational, UniPoly};

/// Exponent pair `x^i y^j` ordered graded-lexicographically (x > y).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
}

impl Monomial {
    pub fn new(i: u32, j: u32) -> Self {
        Self { i, j }
    }

    pub fn degree(&self) -> u32 {
        self.i + self.j
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.i <= other.i && self.j <= other.j
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then(self.i.cmp(&other.i))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(GaussianRational::from_int(c))
    }

    /// `c·x^i·y^j`
    pub fn term(c: GaussianRational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(i, j), c);
        }
        Self { terms }
    }

    pub fn x() -> Self {
        Self::term(GaussianRational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::term(GaussianRational::one(), 0, 1)
    }

    /// Builds from `(coefficient, i, j)` triples, merging repeats.
    pub fn from_terms<I>(items: I) -> Self
    where
        I: IntoIterator<Item = (GaussianRational, u32, u32)>,
    {
        let mut out = Self::zero();
        for (c, i, j) in items {
            out.add_term(Monomial::new(i, j), &c);
        }
        out
    }

    /// Integer-coefficient shorthand: `[(c, i, j), ...]`.
    pub fn from_int_terms(items: &[(i64, u32, u32)]) -> Self {
        Self::from_terms(items.iter().map(|&(c, i, j)| (GaussianRational::from_int(c), i, j)))
    }

    /// Embeds a univariate polynomial into slot 0 (`in_y = false`) or slot 1.
    pub fn from_unipoly(p: &UniPoly, in_y: bool) -> Self {
        Self::from_terms(p.terms().map(|(k, c)| {
            let k = k as u32;
            if in_y {
                (c.clone(), 0, k)
            } else {
                (c.clone(), k, 0)
            }
        }))
    }

    fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(GaussianRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0, 0).is_one()
    }

    /// Constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        self.is_constant().then(|| self.coeff(0, 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> GaussianRational {
        self.terms
            .get(&Monomial::new(i, j))
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn leading_term(&self) -> Option<(Monomial, GaussianRational)> {
        self.terms.last_key_value().map(|(m, c)| (*m, c.clone()))
    }

    pub fn leading_coeff(&self) -> GaussianRational {
        self.leading_term()
            .map(|(_, c)| c)
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.j).max()
    }

    /// Largest `x^a y^b` dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let a = self.terms.keys().map(|m| m.i).min().unwrap_or(0);
        let b = self.terms.keys().map(|m| m.j).min().unwrap_or(0);
        Monomial::new(a, b)
    }

    /// Divide by a monomial that divides every term.
    pub fn div_monomial(&self, m: Monomial) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| {
                    debug_assert!(m.divides(t));
                    (Monomial::new(t.i - m.i, t.j - m.j), c.clone())
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (Monomial::new(t.i + m.i, t.j + m.j), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff().inv() {
            Some(inv) => self.scale(&inv),
            None => Self::zero(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn dx(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.i > 0)
                .map(|(m, c)| (c * &GaussianRational::from_int(m.i as i64), m.i - 1, m.j)),
        )
    }

    pub fn dy(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.j > 0)
                .map(|(m, c)| (c * &GaussianRational::from_int(m.j as i64), m.i, m.j - 1)),
        )
    }

    /// Exchanges the two variable slots.
    pub fn swap_vars(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (c.clone(), m.j, m.i)))
    }

    pub fn eval(&self, x: &GaussianRational, y: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            acc += &(&(c * &x.pow(m.i)) * &y.pow(m.j));
        }
        acc
    }

    /// Substitutes a value for `x`, leaving a polynomial in `y`.
    pub fn eval_x(&self, x: &GaussianRational) -> UniPoly {
        let mut out = vec![GaussianRational::zero(); self.degree_y().map_or(0, |d| d as usize + 1)];
        for (m, c) in &self.terms {
            out[m.j as usize] += &(c * &x.pow(m.i));
        }
        UniPoly::new(out)
    }

    /// Substitutes a value for `y`, leaving a polynomial in `x`.
    pub fn eval_y(&self, y: &GaussianRational) -> UniPoly {
        self.swap_vars().eval_x(y)
    }

    /// The polynomial as `Σ_j c_j(x) y^j`, indexed by `j`.
    pub fn to_y_dense(&self) -> Vec<UniPoly> {
        let dy = self.degree_y().map_or(0, |d| d as usize + 1);
        let mut rows: Vec<Vec<GaussianRational>> = vec![Vec::new(); dy];
        for (m, c) in &self.terms {
            let row = &mut rows[m.j as usize];
            if row.len() <= m.i as usize {
                row.resize(m.i as usize + 1, GaussianRational::zero());
            }
            row[m.i as usize] = c.clone();
        }
        rows.into_iter().map(UniPoly::new).collect()
    }

    pub fn from_y_dense(rows: &[UniPoly]) -> Self {
        Self::from_terms(rows.iter().enumerate().flat_map(|(j, p)| {
            p.terms()
                .map(move |(i, c)| (c.clone(), i as u32, j as u32))
                .collect::<Vec<_>>()
        }))
    }

    /// `Some(p)` when the polynomial involves only `x`.
    pub fn as_unipoly_x(&self) -> Option<UniPoly> {
        (self.degree_y().unwrap_or(0) == 0).then(|| self.eval_y(&GaussianRational::zero()))
    }

    /// `Some(p)` when the polynomial involves only `y`.
    pub fn as_unipoly_y(&self) -> Option<UniPoly> {
        (self.degree_x().unwrap_or(0) == 0).then(|| self.eval_x(&GaussianRational::zero()))
    }

    /// Multivariate division by a single divisor under graded-lex order.
    ///
    /// Returns `(q, r)` with `self = q·d + r` and no term of `r` divisible by
    /// the leading monomial of `d`. For a single divisor the remainder is the
    /// unique normal form modulo the principal ideal `(d)`.
    pub fn div_rem(&self, d: &BiPoly) -> (BiPoly, BiPoly) {
        let (lm, lc) = d.leading_term().expect("division by zero polynomial");
        let lc_inv = lc.inv().unwrap();
        let mut p = self.clone();
        let mut q = BiPoly::zero();
        let mut r = BiPoly::zero();
        while let Some((m, c)) = p.leading_term() {
            if lm.divides(&m) {
                let shift = Monomial::new(m.i - lm.i, m.j - lm.j);
                let factor = &c * &lc_inv;
                q.add_term(shift, &factor);
                p = &p - &d.mul_monomial(shift).scale(&factor);
            } else {
                r.add_term(m, &c);
                p.terms.remove(&m);
            }
        }
        (q, r)
    }

    /// Exact division.
    pub fn div_exact(&self, d: &BiPoly) -> Result<BiPoly, AlgebraError> {
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (q, r) = self.div_rem(d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::NotDivisible)
        }
    }

    pub fn divides(&self, f: &BiPoly) -> bool {
        !self.is_zero() && f.div_rem(self).1.is_zero()
    }

    /// Floating-point evaluation.
    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| c.to_complex() * x.powu(m.i) * y.powu(m.j))
            .sum()
    }

    /// Formats with the given variable names, leading term first.
    pub fn display_with(&self, vx: &str, vy: &str) -> String {
        let terms: Vec<(GaussianRational, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mut parts = Vec::new();
                for (v, e) in [(vx, m.i), (vy, m.j)] {
                    match e {
                        0 => {}
                        1 => parts.push(v.to_string()),
                        _ => parts.push(format!("{v}^{e}")),
                    }
                }
                (c.clone(), parts.join("*"))
            })
            .collect();
        super::format_terms(&terms)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x", "y"))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({})", self.display_with("x", "y"))
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut acc: BTreeMap<Monomial, GaussianRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = Monomial::new(ma.i + mb.i, ma.j + mb.j);
                *acc.entry(m).or_insert_with(GaussianRational::zero) += &(ca * cb);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        BiPoly { terms: acc }
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&GaussianRational::from_int(-1))
    }
}

macro_rules! forward_owned_bipoly {
    ($tr:ident, $m:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned_bipoly!(Add, add);
forward_owned_bipoly!(Sub, sub);
forward_owned_bipoly!(Mul, mul);
