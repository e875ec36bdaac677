//! Polynomial × Gaussian functions `P(x)·exp(−π Tr(A x ᵗx))` on `M_{m,2k}(ℝ)`,
//! with exact integration and Fourier transforms on subsets of rows.
//!
//! `A` is complex symmetric with positive definite real part; the columns of
//! `x` are then independent Gaussian vectors with covariance `(2πA)⁻¹`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyalg::{LinearForm, MatrixPolynomial, Monomial, RationalMatrix, Shape};
use crate::scalar::{ExactScalar, GaussRat};

/// `(2π)^(-p)`.
fn two_pi_inv_pow(p: u32) -> ExactScalar {
    let two = BigRational::from_integer(BigInt::from(2).pow(p));
    ExactScalar::monomial(GaussRat::from_rational(two.recip()), 0, -2 * p as i32)
}

/// `(2m−1)!!`
fn double_factorial_odd(m: u32) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, j| acc * BigInt::from(2 * j - 1))
}

/// `√c` in the scalar ring, when `c = 2^a r²` with `r` rational.
fn sqrt_rational(c: &BigRational) -> Option<ExactScalar> {
    if !c.is_positive() {
        return None;
    }
    let split = |v: &BigInt| {
        let mut v = v.clone();
        let mut e = 0i32;
        while v.is_even() {
            v /= 2;
            e += 1;
        }
        (v, e)
    };
    let (num, en) = split(c.numer());
    let (den, ed) = split(c.denom());
    let (rn, rd) = (num.sqrt(), den.sqrt());
    if &rn * &rn != num || &rd * &rd != den {
        return None;
    }
    let r = GaussRat::from_rational(BigRational::new(rn, rd));
    Some(ExactScalar::monomial(r, en - ed, 0))
}

/// `∫ ∏ x_v^{e_v} exp(−cπ Σ x_v²) dx` over `ℝ^{exps.len()}`.
pub fn monomial_moment(exps: &[u32], c: &BigRational) -> Result<ExactScalar> {
    if !c.is_positive() {
        return Err(Error::UnsupportedScale(format!("scale {c} is not positive")));
    }
    if exps.iter().any(|e| e % 2 == 1) {
        return Ok(ExactScalar::zero());
    }
    let n = exps.len() as i64;
    // c^{-n/2}
    let base = if n % 2 == 0 {
        ExactScalar::from_rational(c.recip().pow((n / 2) as i32))
    } else {
        let s = sqrt_rational(c).ok_or_else(|| {
            Error::UnsupportedScale(format!("√{c} is outside the scalar ring"))
        })?;
        s.pow(-n)?
    };
    let mut coeff = BigRational::one();
    let mut p = 0u32;
    for &e in exps {
        let m = e / 2;
        coeff *= BigRational::new(double_factorial_odd(m), (BigInt::from(2) * c.numer()).pow(m))
            * BigRational::from_integer(c.denom().pow(m));
        p += m;
    }
    // ∏ (2m−1)!!/(2c)^m · π^{-m}
    let pis = ExactScalar::monomial(GaussRat::from_rational(coeff), 0, -2 * p as i32);
    Ok(&base * &pis)
}

/// `∫ P(x) exp(−cπ Tr x ᵗx) dx` over all variables of `P`'s shape.
pub fn gaussian_moment(p: &MatrixPolynomial, c: &BigRational) -> Result<ExactScalar> {
    let nv = p.shape().nvars();
    let mut acc = ExactScalar::zero();
    let mut exps = vec![0u32; nv];
    for (m, coeff) in p.terms() {
        exps.iter_mut().for_each(|e| *e = 0);
        for (v, e) in m.pairs() {
            exps[v] = e;
        }
        acc += &(coeff * &monomial_moment(&exps, c)?);
    }
    Ok(acc)
}

/// `φ(x) = P(x)·exp(−π Tr(A x ᵗx))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchwartzPolyGaussian {
    poly: MatrixPolynomial,
    a: RationalMatrix,
}

impl SchwartzPolyGaussian {
    /// `φ_P = P·exp(−π Tr x ᵗx)`.
    pub fn new(poly: MatrixPolynomial) -> Self {
        let m = poly.shape().rows();
        SchwartzPolyGaussian {
            poly,
            a: RationalMatrix::identity(m),
        }
    }

    pub fn gaussian(shape: Shape) -> Self {
        Self::new(MatrixPolynomial::one(shape))
    }

    pub fn with_scale(poly: MatrixPolynomial, c: GaussRat) -> Self {
        let m = poly.shape().rows();
        SchwartzPolyGaussian {
            poly,
            a: RationalMatrix::scalar(m, c),
        }
    }

    pub fn with_matrix(poly: MatrixPolynomial, a: RationalMatrix) -> Result<Self> {
        let m = poly.shape().rows();
        if a.rows() != m || a.cols() != m || !a.is_symmetric() {
            return Err(Error::Shape(format!(
                "Gaussian matrix must be symmetric {m}x{m}, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        Ok(SchwartzPolyGaussian { poly, a })
    }

    pub fn poly(&self) -> &MatrixPolynomial {
        &self.poly
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn shape(&self) -> Shape {
        self.poly.shape()
    }

    /// `c` when `A = c·1`.
    pub fn scale(&self) -> Option<GaussRat> {
        let c = self.a.get(0, 0).clone();
        (self.a == RationalMatrix::scalar(self.a.rows(), c.clone())).then_some(c)
    }

    pub fn is_standard(&self) -> bool {
        self.a.is_identity()
    }

    pub fn map_poly(&self, f: impl FnOnce(&MatrixPolynomial) -> MatrixPolynomial) -> Self {
        SchwartzPolyGaussian {
            poly: f(&self.poly),
            a: self.a.clone(),
        }
    }

    pub fn scale_by(&self, c: &ExactScalar) -> Self {
        self.map_poly(|p| p.scale(c))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.a != o.a {
            return Err(Error::Shape("sum of functions with different Gaussians".into()));
        }
        Ok(self.map_poly(|p| p + &o.poly))
    }

    /// Pointwise product.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.shape() != o.shape() {
            return Err(Error::Shape("product of functions on different spaces".into()));
        }
        Ok(SchwartzPolyGaussian {
            poly: &self.poly * &o.poly,
            a: self.a.add(&o.a),
        })
    }

    pub fn value_at_zero(&self) -> ExactScalar {
        self.poly.constant_term()
    }

    /// `∫ φ(x) dx` by Isserlis' theorem column by column.
    pub fn integrate(&self) -> Result<ExactScalar> {
        let s = self.shape();
        let m = s.rows();
        let cols = s.cols();
        let ainv = self.a.inverse()?;
        let det = self.a.det()?.pow(-(s.k as i64))?;
        let mut memo: HashMap<Vec<u32>, GaussRat> = HashMap::new();
        let mut acc = ExactScalar::zero();
        for (mono, coeff) in self.poly.terms() {
            let deg = mono.degree();
            if deg % 2 == 1 {
                continue;
            }
            let mut cols_exps = vec![vec![0u32; m]; cols];
            for (v, e) in mono.pairs() {
                cols_exps[v % cols][v / cols] = e;
            }
            let mut val = GaussRat::one();
            for ce in cols_exps {
                val = &val * &isserlis(&ce, &ainv, &mut memo);
                if val.is_zero() {
                    break;
                }
            }
            if !val.is_zero() {
                acc += &(&coeff.scale_gauss(&val) * &two_pi_inv_pow(deg / 2));
            }
        }
        Ok(acc.scale_gauss(&det))
    }

    /// Restriction of a two-block function to `x₁ = x₂`.
    pub fn restrict_diagonal(&self) -> Result<Self> {
        let s = self.shape();
        if s.blocks != 2 {
            return Err(Error::Shape("diagonal restriction needs two blocks".into()));
        }
        let n = s.n;
        let a = &self.a;
        let mut d = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &(&(a.get(i, j) + a.get(i, n + j)) + a.get(n + i, j)) + a.get(n + i, n + j);
                d.set(i, j, v);
            }
        }
        Ok(SchwartzPolyGaussian {
            poly: self.poly.restrict_diagonal(),
            a: d,
        })
    }

    /// `∫ φ(y) e^{±2πi Tr(x_S ᵗy_S)} dy_S` over the rows in `rows`.
    pub fn fourier_rows(&self, rows: &[usize], sign: i32) -> Result<Self> {
        let s = self.shape();
        let m = s.rows();
        let cols = s.cols();
        if rows.iter().any(|&r| r >= m) {
            return Err(Error::Shape("Fourier rows outside the matrix".into()));
        }
        let mut srows: Vec<usize> = rows.to_vec();
        srows.sort_unstable();
        srows.dedup();
        if srows.is_empty() {
            return Ok(self.clone());
        }
        let trows: Vec<usize> = (0..m).filter(|r| !srows.contains(r)).collect();
        let a_ss = self.a.select(&srows, &srows);
        let a_st = self.a.select(&srows, &trows);
        let a_tt = self.a.select(&trows, &trows);
        let inv = a_ss.inverse()?;
        let i = GaussRat::i();
        let new_ss = inv.clone();
        let new_st = (&inv * &a_st).scale(&i);
        let new_tt = a_tt.sub(&(&a_st.transpose() * &(&inv * &a_st)));
        // the + transform; the − transform is it composed with x_S ↦ −x_S
        let mut a_plus = RationalMatrix::zeros(m, m);
        for (p, &r) in srows.iter().enumerate() {
            for (q, &c) in srows.iter().enumerate() {
                a_plus.set(r, c, new_ss.get(p, q).clone());
            }
            for (q, &c) in trows.iter().enumerate() {
                a_plus.set(r, c, new_st.get(p, q).clone());
                a_plus.set(c, r, new_st.get(p, q).clone());
            }
        }
        for (p, &r) in trows.iter().enumerate() {
            for (q, &c) in trows.iter().enumerate() {
                a_plus.set(r, c, new_tt.get(p, q).clone());
            }
        }
        let mut a2 = a_plus.clone();
        if sign < 0 {
            for &r in &srows {
                for &c in &trows {
                    a2.set(r, c, -a_plus.get(r, c));
                    a2.set(c, r, -a_plus.get(c, r));
                }
            }
        }
        // y_v ↦ D_v = (1/2πi)∂_v + i(A'X)_v, acting on 1
        let in_s = |v: usize| srows.contains(&(v / cols));
        let ax: Vec<LinearForm> = (0..s.nvars())
            .map(|v| {
                let (r, c) = (v / cols, v % cols);
                (0..m)
                    .filter(|&q| !a_plus.get(r, q).is_zero())
                    .map(|q| (s.at(q, c), &i * a_plus.get(r, q)))
                    .collect()
            })
            .collect();
        let d_coeff = ExactScalar::monomial(GaussRat::new(BigRational::zero(), BigRational::new((-1).into(), 2.into())), 0, -2);
        let mut memo: HashMap<Monomial, MatrixPolynomial> = HashMap::new();
        memo.insert(Monomial::one(), MatrixPolynomial::one(s));
        let mut out = MatrixPolynomial::zero(s);
        for (mono, coeff) in self.poly.terms() {
            let (ms, mt) = mono.split(in_s);
            let d = apply_d(&ms, s, &ax, &d_coeff, &mut memo);
            out = &out + &d.mul_monomial(&mt, coeff);
        }
        if sign < 0 {
            let neg: Vec<LinearForm> = (0..s.nvars())
                .map(|v| {
                    let c = if in_s(v) { -GaussRat::one() } else { GaussRat::one() };
                    vec![(v, c)]
                })
                .collect();
            out = out.substitute(s, &neg);
        }
        let factor = a_ss.det()?.pow(-(s.k as i64))?;
        Ok(SchwartzPolyGaussian {
            poly: out.scale_gauss(&factor),
            a: a2,
        })
    }
}

/// `D^{m}(1)` with `D_v = d_coeff·∂_v + ax[v]`, memoised by monomial.
fn apply_d(
    m: &Monomial,
    s: Shape,
    ax: &[LinearForm],
    d_coeff: &ExactScalar,
    memo: &mut HashMap<Monomial, MatrixPolynomial>,
) -> MatrixPolynomial {
    if let Some(p) = memo.get(m) {
        return p.clone();
    }
    let (v, _) = m.pairs().last().expect("non-constant monomial");
    let rest = m.reduce(v).expect("variable present");
    let inner = apply_d(&rest, s, ax, d_coeff, memo);
    let out = &inner.derivative(v).scale(d_coeff) + &(&MatrixPolynomial::linear(s, &ax[v]) * &inner);
    memo.insert(m.clone(), out.clone());
    out
}

/// Sum over perfect matchings of `∏ (A⁻¹)_{ab}` for one column's exponents.
fn isserlis(e: &[u32], ainv: &RationalMatrix, memo: &mut HashMap<Vec<u32>, GaussRat>) -> GaussRat {
    let Some(a) = e.iter().position(|&x| x > 0) else {
        return GaussRat::one();
    };
    if e.iter().sum::<u32>() % 2 == 1 {
        return GaussRat::zero();
    }
    if let Some(v) = memo.get(e) {
        return v.clone();
    }
    let mut rest = e.to_vec();
    rest[a] -= 1;
    let mut acc = GaussRat::zero();
    for b in 0..e.len() {
        if rest[b] == 0 || ainv.get(a, b).is_zero() {
            continue;
        }
        let mult = GaussRat::from_int(rest[b] as i64);
        let mut r2 = rest.clone();
        r2[b] -= 1;
        acc += &(&(&mult * ainv.get(a, b)) * &isserlis(&r2, ainv, memo));
    }
    memo.insert(e.to_vec(), acc.clone());
    acc
}

/// Fourier transform of a standard function (`A = 1`) on all rows.
pub fn fourier_gaussian(phi: &SchwartzPolyGaussian, sign: i32) -> Result<SchwartzPolyGaussian> {
    if !phi.is_standard() {
        return Err(Error::UnsupportedScale("Fourier transform needs A = 1".into()));
    }
    let rows: Vec<usize> = (0..phi.shape().rows()).collect();
    phi.fourier_rows(&rows, sign)
}
