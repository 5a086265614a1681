use num_traits::Zero;

use super::{AlgebraError, GaussianRational, LaurentUniPoly, UniPoly};

/// `a(z)/(c·z^N) = s(z) + A_1/z + ... + A_N/z^N`.
///
/// Some `A_i` may vanish; consumers skip zero terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractionAtZero {
    pub s: UniPoly,
    /// `a_coeffs[i - 1] = A_i`
    pub a_coeffs: Vec<GaussianRational>,
}

impl PartialFractionAtZero {
    pub fn order(&self) -> usize {
        self.a_coeffs.len()
    }

    /// `A_i` for `1 ≤ i ≤ N`.
    pub fn a(&self, i: usize) -> &GaussianRational {
        &self.a_coeffs[i - 1]
    }

    /// The expansion as a single Laurent polynomial.
    pub fn to_laurent(&self) -> LaurentUniPoly {
        let mut out = LaurentUniPoly::from_unipoly(&self.s, 0);
        for (idx, a) in self.a_coeffs.iter().enumerate() {
            out = &out + &LaurentUniPoly::monomial(a.clone(), -(idx as i64 + 1));
        }
        out
    }

    /// `c·z^N·s(z) + c·Σ A_i z^{N-i}`, which must equal the original `a(z)`.
    pub fn recompose(&self, c: &GaussianRational) -> UniPoly {
        let n = self.order();
        let mut out = self.s.shift(n).scale(c);
        for (idx, a) in self.a_coeffs.iter().enumerate() {
            out = &out + &UniPoly::monomial(a * c, n - (idx + 1));
        }
        out
    }
}

/// Expands `a(z)/(c·z^N)` into polynomial part and principal part at `z = 0`.
pub fn pf_at_zero(a: &UniPoly, c: &GaussianRational, n: usize) -> Result<PartialFractionAtZero, AlgebraError> {
    if c.is_zero() {
        return Err(AlgebraError::InvalidInput("c must be nonzero".into()));
    }
    if n < 1 {
        return Err(AlgebraError::InvalidInput("N must be at least 1".into()));
    }
    let c_inv = c.inv().unwrap();
    let scaled = a.scale(&c_inv);
    let s = UniPoly::new(scaled.coeffs().iter().skip(n).cloned().collect());
    let a_coeffs = (1..=n).map(|i| scaled.coeff(n - i)).collect();
    Ok(PartialFractionAtZero { s, a_coeffs })
}
