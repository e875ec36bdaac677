//! Exact scalars.
//!
//! [`GaussRat`] is an element of ℚ(i). [`ExactScalar`] is a finite sum
//! `Σ c · 2^(a/2) · π^(b/2)` with `c ∈ ℚ(i)`. Since `2^(2/2) = 2` is rational,
//! the canonical form keeps the exponent of 2 in `{0, 1}` (counted in halves)
//! and folds whole powers of two into the coefficient. Powers of `√π` are
//! linearly independent over the algebraic numbers, so term-map equality is
//! value equality.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p/q` with the sign on the numerator.
pub fn render_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// A Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        GaussRat::new(rat(n, d), BigRational::zero())
    }

    pub fn from_rational(q: BigRational) -> Self {
        GaussRat::new(q, BigRational::zero())
    }

    pub fn i() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::one())
    }

    /// `i^e` for any integer `e`.
    pub fn i_pow(e: i64) -> Self {
        match e.rem_euclid(4) {
            0 => GaussRat::one(),
            1 => GaussRat::i(),
            2 => GaussRat::from_int(-1),
            _ => -GaussRat::i(),
        }
    }

    pub fn zero() -> Self {
        GaussRat::default()
    }

    pub fn one() -> Self {
        GaussRat::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Singular("division by zero in ℚ(i)".into()));
        }
        let n = self.norm_sqr();
        Ok(GaussRat::new(&self.re / &n, -&self.im / &n))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = GaussRat::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        GaussRat::new(&self.re * q, &self.im * q)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Least common multiple of the two denominators.
    pub fn denom_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{} {} {}·i",
            render_rational(&self.re),
            sign,
            render_rational(&self.im.abs())
        )
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &o.re, &self.im + &o.im)
    }
}
impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &o.re, &self.im - &o.im)
    }
}
impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat::new(&self.re * &o.re, BigRational::zero());
        }
        GaussRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}
impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, o: GaussRat) -> GaussRat {
        &self + &o
    }
}
impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, o: GaussRat) -> GaussRat {
        &self - &o
    }
}
impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: GaussRat) -> GaussRat {
        &self * &o
    }
}
impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}
impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}
impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, o: &GaussRat) {
        self.re += &o.re;
        self.im += &o.im;
    }
}
impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, o: &GaussRat) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

/// A non-negative or negative multiple of 1/2, stored as a count of halves.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub fn int(n: i64) -> Self {
        HalfInt(2 * n)
    }
    pub fn halves(h: i64) -> Self {
        HalfInt(h)
    }
    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// One term `coeff · 2^(e2/2) · π^(epi/2)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub e2: i32,
    pub epi: i32,
    pub coeff: GaussRat,
}

/// Element of ℚ(i)[√2, 1/√2, √π, 1/√π] in canonical form.
///
/// Terms are sorted by `(e2, epi)`, have nonzero coefficients and `e2 ∈ {0, 1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ExactScalar {
    terms: Vec<Term>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_gauss(GaussRat::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_gauss(GaussRat::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_gauss(GaussRat::from_ratio(n, d))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::from_gauss(GaussRat::from_rational(q))
    }

    pub fn from_gauss(c: GaussRat) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn i() -> Self {
        Self::from_gauss(GaussRat::i())
    }

    pub fn i_pow(e: i64) -> Self {
        Self::from_gauss(GaussRat::i_pow(e))
    }

    /// `c · 2^(e2/2) · π^(epi/2)`, canonicalised.
    pub fn monomial(c: GaussRat, e2: i32, epi: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let whole = e2.div_euclid(2);
        let rest = e2.rem_euclid(2);
        let c = if whole == 0 {
            c
        } else {
            let p = BigRational::from_integer(BigInt::from(2)).pow(whole);
            c.scale(&p)
        };
        ExactScalar {
            terms: vec![Term {
                e2: rest,
                epi,
                coeff: c,
            }],
        }
    }

    /// `2^(halves/2)`.
    pub fn sqrt2_pow(halves: i32) -> Self {
        Self::monomial(GaussRat::one(), halves, 0)
    }

    /// `π^(halves/2)`.
    pub fn pi_pow(halves: i32) -> Self {
        Self::monomial(GaussRat::one(), 0, halves)
    }

    pub fn pi() -> Self {
        Self::pi_pow(2)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].e2 == 0 && self.terms[0].epi == 0 && self.terms[0].coeff.is_one()
    }

    /// Returns the ℚ(i) value if the scalar has no √2 or π content.
    pub fn as_gauss(&self) -> Option<GaussRat> {
        match self.terms.as_slice() {
            [] => Some(GaussRat::zero()),
            [t] if t.e2 == 0 && t.epi == 0 => Some(t.coeff.clone()),
            _ => None,
        }
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|t| t.coeff.is_real())
    }

    pub fn conj(&self) -> Self {
        ExactScalar {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    e2: t.e2,
                    epi: t.epi,
                    coeff: t.coeff.conj(),
                })
                .collect(),
        }
    }

    pub fn scale_gauss(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ExactScalar {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    e2: t.e2,
                    epi: t.epi,
                    coeff: &t.coeff * c,
                })
                .collect(),
        }
    }

    fn from_unsorted(mut raw: Vec<Term>) -> Self {
        raw.sort_by_key(|t| (t.e2, t.epi));
        let mut out: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match out.last_mut() {
                Some(last) if last.e2 == t.e2 && last.epi == t.epi => last.coeff += &t.coeff,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        ExactScalar { terms: out }
    }

    /// Multiplicative inverse; defined for single-term scalars only.
    pub fn inv(&self) -> Result<Self> {
        match self.terms.as_slice() {
            [t] => {
                // (c 2^{e/2} π^{p/2})^{-1} = c^{-1} 2^{-e/2} π^{-p/2}
                Ok(Self::monomial(t.coeff.inv()?, -t.e2, -t.epi))
            }
            [] => Err(Error::Singular("inverse of zero".into())),
            _ => Err(Error::Domain(
                "inverse of a multi-term scalar is outside the supported ring operations".into(),
            )),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn try_div(&self, o: &ExactScalar) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    /// Canonical text rendering: `(p/q + r/s·i)·2^(a/2)·pi^(b/2)` terms joined by ` + `.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|t| format!("({})·2^({}/2)·pi^({}/2)", t.coeff, t.e2, t.epi))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for t in &self.terms {
            let m = 2f64.powf(t.e2 as f64 / 2.0) * std::f64::consts::PI.powf(t.epi as f64 / 2.0);
            let (a, b) = t.coeff.to_f64_pair();
            re += a * m;
            im += b * m;
        }
        (re, im)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: &ExactScalar) -> ExactScalar {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let mut raw = self.terms.clone();
        raw.extend(o.terms.iter().cloned());
        ExactScalar::from_unsorted(raw)
    }
}
impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: &ExactScalar) -> ExactScalar {
        self + &(-o)
    }
}
impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: &ExactScalar) -> ExactScalar {
        if self.is_zero() || o.is_zero() {
            return ExactScalar::zero();
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let mut raw = Vec::with_capacity(self.terms.len() * o.terms.len());
        for a in &self.terms {
            for b in &o.terms {
                let mut c = &a.coeff * &b.coeff;
                let mut e2 = a.e2 + b.e2;
                if e2 == 2 {
                    c = c.scale(&two);
                    e2 = 0;
                }
                raw.push(Term {
                    e2,
                    epi: a.epi + b.epi,
                    coeff: c,
                });
            }
        }
        if raw.len() == 1 {
            let t = raw.pop().unwrap();
            if t.coeff.is_zero() {
                return ExactScalar::zero();
            }
            return ExactScalar { terms: vec![t] };
        }
        ExactScalar::from_unsorted(raw)
    }
}
impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    e2: t.e2,
                    epi: t.epi,
                    coeff: -&t.coeff,
                })
                .collect(),
        }
    }
}
impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}
impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: ExactScalar) -> ExactScalar {
        &self + &o
    }
}
impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: ExactScalar) -> ExactScalar {
        &self - &o
    }
}
impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: ExactScalar) -> ExactScalar {
        &self * &o
    }
}
impl Div for ExactScalar {
    type Output = ExactScalar;
    /// Panics when the divisor has more than one term; use [`ExactScalar::try_div`] otherwise.
    fn div(self, o: ExactScalar) -> ExactScalar {
        self.try_div(&o).expect("division by a non-monomial scalar")
    }
}
impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, o: &ExactScalar) {
        *self = &*self + o;
    }
}
impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, o: &ExactScalar) {
        *self = &*self - o;
    }
}
impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, o: &ExactScalar) {
        *self = &*self * o;
    }
}
impl From<GaussRat> for ExactScalar {
    fn from(c: GaussRat) -> Self {
        ExactScalar::from_gauss(c)
    }
}
impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

/// `{"terms": [{"re": "p/q", "im": "r/s", "e2": h, "epi": h}, …]}`, exponents in halves.
impl serde::Serialize for ExactScalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(serde::Serialize)]
        struct T {
            re: String,
            im: String,
            e2: i32,
            epi: i32,
        }
        let terms: Vec<T> = self
            .terms
            .iter()
            .map(|t| T {
                re: render_rational(&t.coeff.re),
                im: render_rational(&t.coeff.im),
                e2: t.e2,
                epi: t.epi,
            })
            .collect();
        let mut st = ser.serialize_struct("ExactScalar", 1)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// `Γ(a)` for `a ∈ ½ℤ` away from the poles `0, −1, −2, …`.
pub fn gamma_exact(a: HalfInt) -> Result<ExactScalar> {
    if a.0 <= 0 {
        if a.is_integer() {
            return Err(Error::Domain(format!("Γ({a}) is a pole")));
        }
        // Γ(a) = Γ(a + 1) / a
        return gamma_exact(HalfInt(a.0 + 2))?.try_div(&ExactScalar::from_ratio(a.0, 2));
    }
    if a.is_integer() {
        let mut f = BigInt::one();
        for j in 1..(a.0 / 2) {
            f *= j;
        }
        Ok(ExactScalar::from_rational(BigRational::from_integer(f)))
    } else {
        // Γ(m + 1/2) = (2m-1)!! / 2^m · √π
        let m = (a.0 - 1) / 2;
        let mut num = BigInt::one();
        for j in 0..m {
            num *= 2 * j + 1;
        }
        let q = BigRational::new(num, BigInt::from(2).pow(m as u32));
        Ok(&ExactScalar::from_rational(q) * &ExactScalar::pi_pow(1))
    }
}

/// `Γ(n)` for a positive integer `n`.
pub fn gamma_int(n: i64) -> Result<ExactScalar> {
    gamma_exact(HalfInt::int(n))
}
