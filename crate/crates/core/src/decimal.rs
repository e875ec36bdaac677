//! Decimal rendering of exact scalars.
//!
//! Values are evaluated in fixed point `v · 10^(-scale)` on big integers with
//! guard digits, then rounded half-away-from-zero to the requested number of
//! significant digits.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::scalar::{ExactScalar, GaussRat};

const GUARD: u32 = 24;

/// A real number rounded to a fixed number of significant digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundedDecimal {
    /// Significant digits, as an integer; zero for the value zero.
    pub mantissa: BigInt,
    /// The value is `mantissa · 10^exponent`.
    pub exponent: i64,
}

impl RoundedDecimal {
    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        format!("{}e{}", self.mantissa, self.exponent)
            .parse()
            .unwrap_or(f64::NAN)
    }
}

impl fmt::Display for RoundedDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mantissa.is_zero() {
            return f.write_str("0");
        }
        let neg = self.mantissa.is_negative();
        let digits = self.mantissa.abs().to_string();
        let len = digits.len() as i64;
        // position of the decimal point relative to the digit string
        let point = len + self.exponent;
        let body = if self.exponent >= 0 {
            format!("{}{}", digits, "0".repeat(self.exponent as usize))
        } else if point > 0 {
            let (a, b) = digits.split_at(point as usize);
            format!("{a}.{b}")
        } else {
            format!("0.{}{}", "0".repeat((-point) as usize), digits)
        };
        let body = if body.contains('.') {
            body.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            body
        };
        if neg {
            write!(f, "-{body}")
        } else {
            f.write_str(&body)
        }
    }
}

/// A complex decimal approximation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDecimal {
    pub re: RoundedDecimal,
    pub im: RoundedDecimal,
}

impl fmt::Display for ComplexDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.im.mantissa.is_negative() {
            let abs = RoundedDecimal {
                mantissa: -self.im.mantissa.clone(),
                exponent: self.im.exponent,
            };
            write!(f, "{} - {}i", self.re, abs)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

fn pow10(e: u32) -> BigInt {
    BigInt::from(10u32).pow(e)
}

/// arctan(1/x) · 10^scale by the Taylor series.
fn arctan_inv(x: u32, one: &BigInt) -> BigInt {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut term = one / BigInt::from(x);
    let mut sum = term.clone();
    let mut k = 1u64;
    while !term.is_zero() {
        term = &term / &x2;
        let t = &term / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= &t;
        } else {
            sum += &t;
        }
        k += 1;
    }
    sum
}

/// π · 10^scale (Machin's formula).
fn pi_fixed(scale: u32) -> BigInt {
    let extra = 10;
    let one = pow10(scale + extra);
    let v = BigInt::from(16) * arctan_inv(5, &one) - BigInt::from(4) * arctan_inv(239, &one);
    v / pow10(extra)
}

fn sqrt_fixed(v: &BigInt, scale: u32) -> BigInt {
    // sqrt(v·10^-s)·10^s = sqrt(v·10^s)
    (v * pow10(scale)).sqrt()
}

struct Constants {
    one: BigInt,
    sqrt2: BigInt,
    sqrt_pi: BigInt,
}

impl Constants {
    fn new(scale: u32) -> Self {
        let one = pow10(scale);
        let sqrt2 = sqrt_fixed(&(BigInt::from(2) * &one), scale);
        let sqrt_pi = sqrt_fixed(&pi_fixed(scale), scale);
        Constants {
            one,
            sqrt2,
            sqrt_pi,
        }
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b / &self.one
    }

    fn div(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * &self.one / b
    }

    fn power(&self, base: &BigInt, e: i32) -> BigInt {
        let mut acc = self.one.clone();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, base);
        }
        if e < 0 {
            self.div(&self.one, &acc)
        } else {
            acc
        }
    }
}

fn round_to_sig(v: &BigInt, scale: u32, precision: u32) -> RoundedDecimal {
    if v.is_zero() {
        return RoundedDecimal {
            mantissa: BigInt::zero(),
            exponent: 0,
        };
    }
    let neg = v.sign() == Sign::Minus;
    let a = v.abs();
    let ndigits = a.to_string().len() as i64;
    let drop = ndigits - precision as i64;
    let (mut m, e) = if drop > 0 {
        let d = pow10(drop as u32);
        let (q, r) = a.div_rem(&d);
        let q = if BigInt::from(2) * r >= d { q + 1 } else { q };
        (q, drop - scale as i64)
    } else {
        (a, -(scale as i64))
    };
    // strip trailing zeros from the mantissa
    let mut e = e;
    let ten = BigInt::from(10);
    while !m.is_zero() && (&m % &ten).is_zero() {
        m /= &ten;
        e += 1;
    }
    RoundedDecimal {
        mantissa: if neg { -m } else { m },
        exponent: e,
    }
}

fn rational_fixed(c: &num_rational::BigRational, one: &BigInt) -> BigInt {
    c.numer() * one / c.denom()
}

/// Approximates `s` to `precision` significant digits in each component.
pub fn to_decimal(s: &ExactScalar, precision: u32) -> ComplexDecimal {
    let precision = precision.max(1);
    // a component is exactly zero iff all its coefficients vanish, since the
    // basis 2^(a/2)·π^(b/2) is linearly independent over ℚ
    let re_zero = s.terms().iter().all(|t| t.coeff.re.is_zero());
    let im_zero = s.terms().iter().all(|t| t.coeff.im.is_zero());
    let spread: u32 = s
        .terms()
        .iter()
        .map(|t| (t.epi.unsigned_abs() + t.e2.unsigned_abs()) / 2 + 1)
        .sum::<u32>()
        + coefficient_spread(s);
    let mut scale = precision + GUARD + spread;
    loop {
        let (re, im) = evaluate_fixed(s, scale);
        let enough = |v: &BigInt, zero: bool| zero || v.abs().to_string().len() as u32 >= precision + GUARD / 2;
        if enough(&re, re_zero) && enough(&im, im_zero) {
            let zero = BigInt::zero();
            return ComplexDecimal {
                re: round_to_sig(if re_zero { &zero } else { &re }, scale, precision),
                im: round_to_sig(if im_zero { &zero } else { &im }, scale, precision),
            };
        }
        scale *= 2;
    }
}

fn evaluate_fixed(s: &ExactScalar, scale: u32) -> (BigInt, BigInt) {
    let k = Constants::new(scale);
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    for t in s.terms() {
        let m2 = k.power(&k.sqrt2, t.e2);
        let mpi = k.power(&k.sqrt_pi, t.epi);
        let m = k.mul(&m2, &mpi);
        re += k.mul(&rational_fixed(&t.coeff.re, &k.one), &m);
        im += k.mul(&rational_fixed(&t.coeff.im, &k.one), &m);
    }
    (re, im)
}

fn coefficient_spread(s: &ExactScalar) -> u32 {
    s.terms()
        .iter()
        .map(|t| {
            let d = |q: &num_rational::BigRational| q.denom().to_string().len() as u32;
            d(&t.coeff.re).max(d(&t.coeff.im))
        })
        .max()
        .unwrap_or(0)
}

/// Decimal of a Gaussian rational (exact input, rounded output).
pub fn gauss_to_decimal(c: &GaussRat, precision: u32) -> ComplexDecimal {
    to_decimal(&ExactScalar::from_gauss(c.clone()), precision)
}
