//! Helpers shared by the integration tests. Oracles here are written from the
//! defining formulas and do not call into the library's own versions.

#![allow(dead_code)]

use std::str::FromStr;

use doubling_zeta::constructions::WeightData;
use doubling_zeta::gaussian::SchwartzPolyGaussian;
use doubling_zeta::polyalg::{Block, MatrixPolynomial, Monomial, Shape};
use doubling_zeta::verify::sample::{random_invertible, random_symmetric, small_rational};
use doubling_zeta::weil::{Generator, SymplecticWord};
use doubling_zeta::ExactScalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// All dominant `t` with `t_n ≥ k` and `Σ(t_j − k) ≤ deg`.
fn tails(n: usize, budget: i64, cap: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for a in 0..=cap.min(budget) {
        for mut rest in tails(n - 1, budget - a, a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// `n ∈ 1..=max_n`, `k ∈ n+1..=n+max_dk`, `Σ(t_j − k) ≤ deg`.
pub fn grid(max_n: usize, max_dk: usize, deg: i64) -> Vec<WeightData> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for k in n + 1..=n + max_dk {
            for a in tails(n, deg, deg) {
                let t = a.iter().map(|x| x + k as i64).collect();
                out.push(WeightData::new(n, k, t).unwrap());
            }
        }
    }
    out
}

pub fn factorial(n: i64) -> BigInt {
    assert!(n >= 0);
    (1..=n).fold(BigInt::one(), |acc, j| acc * j)
}

/// Weyl dimension formula for `GL(n)`: `∏_{i<j} (t_i − t_j + j − i)/(j − i)`.
pub fn weyl_dim_gl(t: &[i64]) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            acc *= BigRational::new((t[i] - t[j] + (j - i) as i64).into(), ((j - i) as i64).into());
        }
    }
    acc
}

pub fn q(n: i64, d: i64) -> ExactScalar {
    ExactScalar::from_ratio(n, d)
}

/// A decimal string such as `-1.25`, `0 + 3.5i` or `2 - 0.5i`, as exact
/// rational real and imaginary parts.
pub fn parse_complex(s: &str) -> (BigRational, BigRational) {
    let s = s.trim();
    if let Some(body) = s.strip_suffix('i') {
        let (re, sign, im) = if let Some(p) = body.rfind(" + ") {
            (&body[..p], 1, &body[p + 3..])
        } else {
            let p = body.rfind(" - ").expect("complex decimal");
            (&body[..p], -1, &body[p + 3..])
        };
        let im = parse_decimal(im);
        (parse_decimal(re), if sign < 0 { -im } else { im })
    } else {
        (parse_decimal(s), BigRational::zero())
    }
}

pub fn parse_decimal(s: &str) -> BigRational {
    let (neg, s) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits = BigInt::from_str(&format!("{int}{frac}")).expect("decimal digits");
    let v = BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32));
    if neg {
        -v
    } else {
        v
    }
}

/// `|a − b| ≤ tol · |b|` componentwise on the modulus, exactly.
pub fn close(a: &(BigRational, BigRational), b: &(BigRational, BigRational), tol: &BigRational) -> bool {
    let dr = &a.0 - &b.0;
    let di = &a.1 - &b.1;
    let err = &dr * &dr + &di * &di;
    let size = &b.0 * &b.0 + &b.1 * &b.1;
    if size.is_zero() {
        return err.is_zero();
    }
    err <= tol * tol * size
}

pub fn rel_tol(exp10: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(exp10))
}

pub fn is_positive(x: &BigRational) -> bool {
    x.is_positive()
}

pub fn random_poly(rng: &mut ChaCha8Rng, shape: Shape, max_deg: u32) -> MatrixPolynomial {
    let nv = shape.nvars();
    let terms = (0..rng.gen_range(1..=4)).map(|_| {
        let deg = rng.gen_range(0..=max_deg);
        let pairs = (0..deg).map(|_| (rng.gen_range(0..nv), 1)).collect();
        (Monomial::from_pairs(pairs), ExactScalar::from_gauss(small_rational(rng)))
    });
    MatrixPolynomial::from_terms(shape, terms)
}

pub fn random_phi(rng: &mut ChaCha8Rng, m: usize, k: usize) -> SchwartzPolyGaussian {
    SchwartzPolyGaussian::new(random_poly(rng, Shape::single(m, k), 2))
}

/// `p(a, b)` with `b = s ᵗa⁻¹`, so that `b ᵗa = s` is symmetric.
pub fn random_parabolic(rng: &mut ChaCha8Rng, m: usize) -> SymplecticWord {
    let a = random_invertible(rng, m);
    let s = random_symmetric(rng, m);
    let b = &s * &a.transpose().inverse().unwrap();
    SymplecticWord::parabolic(a, b).unwrap()
}

pub fn random_word(rng: &mut ChaCha8Rng, m: usize) -> SymplecticWord {
    let mut w = SymplecticWord::identity(m);
    for _ in 0..rng.gen_range(1..=3) {
        let g = match rng.gen_range(0..5) {
            0 => random_parabolic(rng, m),
            1 => SymplecticWord::levi(random_invertible(rng, m)).unwrap(),
            2 => SymplecticWord::fourier(m),
            3 => SymplecticWord::fourier_inverse(m),
            _ => SymplecticWord::single(m, Generator::PartialFourier(rng.gen_range(1..=m))).unwrap(),
        };
        w = w.then(&g).unwrap();
    }
    w
}

/// Two-block function `φ₁(x₁) φ₂(x₂)`.
pub fn split(phi1: &SchwartzPolyGaussian, phi2: &SchwartzPolyGaussian) -> SchwartzPolyGaussian {
    SchwartzPolyGaussian::new(&phi1.poly().embed(Block::X1) * &phi2.poly().embed(Block::X2))
}
