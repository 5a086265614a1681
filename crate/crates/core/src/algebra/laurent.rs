use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use super::{GaussianRational, UniPoly};

/// Finite Laurent series `Σ c_k z^k`, `k ∈ Z`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentUniPoly {
    terms: BTreeMap<i64, GaussianRational>,
}

impl LaurentUniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: GaussianRational, k: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(k, &c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, GaussianRational)>>(items: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in items {
            out.add_term(k, &c);
        }
        out
    }

    /// `p(z)·z^shift`
    pub fn from_unipoly(p: &UniPoly, shift: i64) -> Self {
        Self::from_terms(p.terms().map(|(k, c)| (k as i64 + shift, c.clone())))
    }

    fn add_term(&mut self, k: i64, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(GaussianRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i64) -> GaussianRational {
        self.terms.get(&k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, a)| (*k, a * c)))
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(k, c)| (k - 1, c * &GaussianRational::from_int(*k))),
        )
    }

    /// Splits `∫ self` into the residue (coefficient of `z^{-1}`, which
    /// integrates to a logarithm) and a Laurent antiderivative of the rest
    /// with zero constant term.
    pub fn integrate(&self) -> (GaussianRational, LaurentUniPoly) {
        let residue = self.coeff(-1);
        let anti = Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| **k != -1)
                .map(|(k, c)| (k + 1, c / &GaussianRational::from_int(k + 1))),
        );
        (residue, anti)
    }

    pub fn eval(&self, z: &GaussianRational) -> Option<GaussianRational> {
        let mut acc = GaussianRational::zero();
        for (k, c) in &self.terms {
            acc += &(c * &z.powi(*k)?);
        }
        Some(acc)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.terms.iter().map(|(k, c)| c.to_complex() * z.powi(*k as i32)).sum()
    }

    pub fn display_with(&self, var: &str) -> String {
        let terms: Vec<(GaussianRational, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(k, c)| {
                let mono = match k {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{k}"),
                };
                (c.clone(), mono)
            })
            .collect();
        super::format_terms(&terms)
    }
}

impl fmt::Display for LaurentUniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("z"))
    }
}

impl fmt::Debug for LaurentUniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({})", self.display_with("z"))
    }
}

impl<'a> Add<&'a LaurentUniPoly> for &'a LaurentUniPoly {
    type Output = LaurentUniPoly;
    fn add(self, rhs: &LaurentUniPoly) -> LaurentUniPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c);
        }
        out
    }
}

impl<'a> Sub<&'a LaurentUniPoly> for &'a LaurentUniPoly {
    type Output = LaurentUniPoly;
    fn sub(self, rhs: &LaurentUniPoly) -> LaurentUniPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LaurentUniPoly> for &'a LaurentUniPoly {
    type Output = LaurentUniPoly;
    fn mul(self, rhs: &LaurentUniPoly) -> LaurentUniPoly {
        let mut out = LaurentUniPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a + b, &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &LaurentUniPoly {
    type Output = LaurentUniPoly;
    fn neg(self) -> LaurentUniPoly {
        self.scale(&GaussianRational::from_int(-1))
    }
}
