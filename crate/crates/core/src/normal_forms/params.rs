use num_integer::Integer;
use num_traits::Zero;

use super::NormalFormError;
use crate::algebra::{BiPoly, UniPoly};

/// The data `(m, n, ℓ, p)` of the fiber polynomial `x^m (x^ℓ y + p(x))^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaitoSuzukiParams {
    pub m: i64,
    pub n: u32,
    pub l: u32,
    pub p: UniPoly,
}

impl SaitoSuzukiParams {
    /// Validates `m ≠ 0`, `n ≥ 1`, `gcd(|m|, n) = 1`, `deg p < ℓ`,
    /// `p(0) ≠ 0` when `ℓ > 0`, and `p ≡ 0` when `ℓ = 0`.
    pub fn new(m: i64, n: u32, l: u32, p: UniPoly) -> Result<Self, NormalFormError> {
        let bad = |msg: &str| Err(NormalFormError::InvalidParams(msg.to_string()));
        if m == 0 {
            return bad("m must be nonzero");
        }
        if n == 0 {
            return bad("n must be positive");
        }
        if m.unsigned_abs().gcd(&(n as u64)) != 1 {
            return bad("gcd(|m|, n) must be 1");
        }
        if l == 0 {
            if !p.is_zero() {
                return bad("p must vanish when l = 0");
            }
        } else {
            if p.degree().is_some_and(|d| d >= l as usize) {
                return bad("deg p must be < l");
            }
            if p.coeff(0).is_zero() {
                return bad("p(0) must be nonzero when l > 0");
            }
        }
        Ok(Self { m, n, l, p })
    }

    /// Parameters with `p ≡ 0` and `ℓ = 0`, i.e. `P = x^m y^n`.
    pub fn monomial(m: i64, n: u32) -> Result<Self, NormalFormError> {
        Self::new(m, n, 0, UniPoly::zero())
    }

    /// Whether the covering map and the pulled-back pipeline apply (`m ≥ 1`).
    pub fn covering_ready(&self) -> bool {
        self.m >= 1
    }

    pub fn require_covering(&self) -> Result<(), NormalFormError> {
        if self.covering_ready() {
            Ok(())
        } else {
            Err(NormalFormError::InvalidParams(
                "the covering map requires m >= 1".into(),
            ))
        }
    }

    /// `w(x, y) = x^ℓ y + p(x)`.
    pub fn fiber_factor(&self) -> BiPoly {
        &BiPoly::term(1.into(), self.l, 1) + &BiPoly::from_unipoly(&self.p, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SaitoSuzukiParams::monomial(1, 1).is_ok());
        assert!(SaitoSuzukiParams::monomial(-1, 2).is_ok());
        assert!(SaitoSuzukiParams::monomial(2, 4).is_err());
        assert!(SaitoSuzukiParams::monomial(0, 1).is_err());
        assert!(SaitoSuzukiParams::new(1, 1, 1, UniPoly::from_ints(&[1])).is_ok());
        // p(0) = 0
        assert!(SaitoSuzukiParams::new(1, 1, 2, UniPoly::from_ints(&[0, 1])).is_err());
        // deg p >= l
        assert!(SaitoSuzukiParams::new(1, 1, 1, UniPoly::from_ints(&[1, 1])).is_err());
        // p nonzero with l = 0
        assert!(SaitoSuzukiParams::new(1, 1, 0, UniPoly::from_ints(&[1])).is_err());
    }

    #[test]
    fn fiber_factor() {
        let p = SaitoSuzukiParams::new(1, 1, 1, UniPoly::from_ints(&[1])).unwrap();
        assert_eq!(p.fiber_factor(), BiPoly::from_int_terms(&[(1, 1, 1), (1, 0, 0)]));
    }
}
