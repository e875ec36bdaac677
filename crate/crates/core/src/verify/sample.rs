//! Seeded random rational test data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::polyalg::RationalMatrix;
use crate::scalar::GaussRat;

/// A generator seeded from the global seed and a case label, so that every
/// case draws the same data regardless of scheduling.
pub fn rng_for(seed: u64, label: &str) -> ChaCha8Rng {
    // FNV-1a: stable across platforms and toolchains
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

pub fn small_rational(rng: &mut impl Rng) -> GaussRat {
    let num = rng.gen_range(-4i64..=4);
    let den = rng.gen_range(1i64..=3);
    GaussRat::from_ratio(num, den)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, small_rational(rng));
        }
    }
    m
}

pub fn random_invertible(rng: &mut impl Rng, n: usize) -> RationalMatrix {
    loop {
        let m = random_matrix(rng, n, n);
        if m.det().map(|d| !d.is_zero()).unwrap_or(false) {
            return m;
        }
    }
}

pub fn random_symmetric(rng: &mut impl Rng, n: usize) -> RationalMatrix {
    let m = random_matrix(rng, n, n);
    m.add(&m.transpose())
}

/// Upper unitriangular with random entries above the diagonal.
pub fn random_unitriangular(rng: &mut impl Rng, n: usize) -> RationalMatrix {
    let mut m = RationalMatrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            m.set(i, j, small_rational(rng));
        }
    }
    m
}

/// Diagonal with nonzero random entries.
pub fn random_torus(rng: &mut impl Rng, n: usize) -> Vec<GaussRat> {
    (0..n)
        .map(|_| loop {
            let x = small_rational(rng);
            if !x.is_zero() {
                break x;
            }
        })
        .collect()
}

/// `(1 − S)(1 + S)⁻¹` for a random rational antisymmetric `S`.
pub fn cayley_orthogonal(rng: &mut impl Rng, n: usize) -> RationalMatrix {
    let mut s = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = small_rational(rng);
            s.set(i, j, x.clone());
            s.set(j, i, -x);
        }
    }
    let one = RationalMatrix::identity(n);
    let inv = one.add(&s).inverse().expect("1 + S is invertible for antisymmetric S");
    &one.sub(&s) * &inv
}

/// A random rational point with `len` coordinates.
pub fn random_point(rng: &mut impl Rng, len: usize) -> Vec<GaussRat> {
    (0..len).map(|_| small_rational(rng)).collect()
}
