#![allow(dead_code)]

use holofol::{GaussianRational, PulledBackRiccati, SaitoSuzukiParams, UniPoly};
use num_integer::Integer;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20_240_117;

/// `HOLOFOL_SEED` if set, else a fixed default.
pub fn seed() -> u64 {
    std::env::var("HOLOFOL_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn nonzero_int(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

/// `a/b` with `|a| ≤ bound`, `1 ≤ b ≤ 3`.
pub fn rational(rng: &mut ChaCha8Rng, bound: i64) -> GaussianRational {
    GaussianRational::from_ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=3))
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng, bound: i64) -> GaussianRational {
    GaussianRational::from_ratio(nonzero_int(rng, bound), rng.gen_range(1..=3))
}

pub fn gaussian(rng: &mut ChaCha8Rng, bound: i64) -> GaussianRational {
    GaussianRational::from_parts(
        rng.gen_range(-bound..=bound),
        rng.gen_range(1..=3),
        rng.gen_range(-bound..=bound),
        rng.gen_range(1..=3),
    )
}

pub fn nonzero_gaussian(rng: &mut ChaCha8Rng, bound: i64) -> GaussianRational {
    loop {
        let g = gaussian(rng, bound);
        if g != GaussianRational::from_int(0) {
            return g;
        }
    }
}

/// Valid normal-form data with `m ∈ m_range \ {0}`, `n ≤ n_max`, `ℓ ≤ l_max`.
pub fn params(rng: &mut ChaCha8Rng, m_lo: i64, m_hi: i64, n_max: u32, l_max: u32) -> SaitoSuzukiParams {
    loop {
        let m = rng.gen_range(m_lo..=m_hi);
        let n = rng.gen_range(1..=n_max);
        if m == 0 || (m.unsigned_abs()).gcd(&(n as u64)) != 1 {
            continue;
        }
        let l = rng.gen_range(0..=l_max);
        let p = if l == 0 {
            UniPoly::zero()
        } else {
            let deg = rng.gen_range(0..l as usize);
            let mut coeffs: Vec<_> = (0..=deg).map(|_| gaussian(rng, 3)).collect();
            coeffs[0] = nonzero_gaussian(rng, 3);
            UniPoly::new(coeffs)
        };
        return SaitoSuzukiParams::new(m, n, l, p).expect("generated params are valid");
    }
}

/// `a(z) = a₀ + a₁ z^n + …` with `a₀ ≠ 0`.
pub fn invariant_a(rng: &mut ChaCha8Rng, n: u32, a0: GaussianRational, terms: usize) -> UniPoly {
    let mut coeffs = vec![GaussianRational::from_int(0); terms * n as usize + 1];
    coeffs[0] = a0;
    for j in 1..=terms {
        coeffs[j * n as usize] = gaussian(rng, 2);
    }
    UniPoly::new(coeffs)
}

/// A deck-invariant pulled-back shape: `n | k`, `a ∈ C[z^n]`, `N ≡ 1 mod n`.
pub fn invariant_shape(rng: &mut ChaCha8Rng, n: u32) -> PulledBackRiccati {
    let k = n as i64 * rng.gen_range(-1..=1);
    let a0 = nonzero_gaussian(rng, 3);
    let terms = rng.gen_range(0..=2);
    let a = invariant_a(rng, n, a0, terms);
    let big_n = 1 + n * rng.gen_range(0..=1);
    PulledBackRiccati::new(k, a, nonzero_gaussian(rng, 3), big_n)
}

/// A shape passing every first-integral gate: `N = 1` and `a(0)/c ∈ Q`.
pub fn integrable_shape(rng: &mut ChaCha8Rng, n: u32) -> PulledBackRiccati {
    let k = n as i64 * rng.gen_range(-1..=1);
    let a0 = nonzero_rational(rng, 4);
    let terms = rng.gen_range(0..=2);
    let a = invariant_a(rng, n, a0, terms);
    PulledBackRiccati::new(k, a, nonzero_rational(rng, 3), 1)
}
