//! Closed-form constants, the zeta integral and the archimedean Euler factors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::constructions::{build_i, build_q, build_qtilde, WeightData};
use crate::error::{Error, Result};
use crate::gaussian::{gaussian_moment, SchwartzPolyGaussian};
use crate::scalar::{gamma_exact, gamma_int, ExactScalar, HalfInt};
use crate::weil::pairing;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Weyl dimension of the `GL(n)` representation with highest weight `t`.
pub fn dim_gl(t: &[i64]) -> Result<BigInt> {
    if t.windows(2).any(|p| p[0] < p[1]) {
        return Err(Error::InvalidWeight("t is not dominant".into()));
    }
    let n = t.len();
    let mut q = BigRational::one();
    for i in 0..n {
        for j in i + 1..n {
            let gap = (j - i) as i64;
            q *= BigRational::new((t[i] - t[j] + gap).into(), gap.into());
        }
    }
    Ok(q.to_integer())
}

/// Weyl dimension of the `SO(2k)` representation with highest weight `a`.
pub fn dim_so(k: usize, a: &[i64]) -> Result<BigInt> {
    if a.len() != k {
        return Err(Error::Shape(format!("weight of length {} for SO({})", a.len(), 2 * k)));
    }
    let mut q = BigRational::one();
    for i in 1..=k {
        for j in i + 1..=k {
            let (ii, jj, kk) = (i as i64, j as i64, k as i64);
            let num = (a[i - 1] - a[j - 1] - ii + jj) * (a[i - 1] + a[j - 1] + 2 * kk - ii - jj);
            let den = (jj - ii) * (2 * kk - ii - jj);
            q *= BigRational::new(num.into(), den.into());
        }
    }
    if !q.is_integer() {
        return Err(Error::Internal(format!("non-integral dimension {q}")));
    }
    Ok(q.to_integer())
}

/// `dim λ(t, k) = dim(SO(2k), (t₁−k, …, tₙ−k, 0, …, 0))`.
pub fn dim_lambda(w: &WeightData) -> Result<BigInt> {
    let mut a: Vec<i64> = w.t.iter().map(|t| t - w.k as i64).collect();
    a.resize(w.k, 0);
    dim_so(w.k, &a)
}

fn product_t(w: &WeightData) -> BigRational {
    let mut q = BigRational::one();
    for i in 1..=w.n {
        for j in i + 1..=w.n {
            let (ti, tj) = (w.t[i - 1], w.t[j - 1]);
            let (ii, jj) = (i as i64, j as i64);
            q *= rat((ti - tj - ii + jj) * (ti + tj - ii - jj));
        }
    }
    q
}

/// `∏_j (t_j − j) Γ(t_j − j + k − n) / Γ(t_j − j − k + n + 1)`.
fn gamma_ratio_product(w: &WeightData) -> Result<ExactScalar> {
    let (n, k) = (w.n as i64, w.k as i64);
    let mut acc = ExactScalar::one();
    for (j0, &t) in w.t.iter().enumerate() {
        let j = j0 as i64 + 1;
        let num = gamma_int(t - j + k - n)?;
        let den = gamma_int(t - j - k + n + 1)?;
        acc = &(&acc * &num.try_div(&den)?) * &ExactScalar::from_int(t - j);
    }
    Ok(acc)
}

/// First closed form: the Weyl product restricted to rows `i ≤ n`.
pub fn dim_lambda_product(w: &WeightData) -> Result<ExactScalar> {
    let (n, k) = (w.n, w.k);
    let mut den = BigRational::one();
    for i in 1..=n {
        for j in i + 1..=k {
            let (ii, jj, kk) = (i as i64, j as i64, k as i64);
            den *= rat((jj - ii) * (2 * kk - ii - jj));
        }
    }
    let front = ExactScalar::from_rational(product_t(w) / den);
    Ok(&front * &gamma_ratio_product(w)?)
}

/// Second closed form, through `Γ_{2n}(k)`.
pub fn dim_lambda_gamma(w: &WeightData) -> Result<ExactScalar> {
    let (n, k) = (w.n as i32, w.k as i32);
    let den = &(&ExactScalar::sqrt2_pow(2 * (2 * n * k - n * (n + 2))) * &ExactScalar::pi_pow(-2 * n * n))
        * &siegel_gamma(2 * w.n, HalfInt::int(w.k as i64))?;
    let front = ExactScalar::from_rational(product_t(w)).try_div(&den)?;
    Ok(&front * &gamma_ratio_product(w)?)
}

/// `Γ_m(s) = π^{m(m−1)/4} ∏_{j=1}^m Γ(s − (j−1)/2)`.
pub fn siegel_gamma(m: usize, s: HalfInt) -> Result<ExactScalar> {
    let mut acc = ExactScalar::pi_pow((m * (m - 1) / 2) as i32);
    for j in 0..m as i64 {
        acc = &acc * &gamma_exact(HalfInt(s.0 - j))?;
    }
    Ok(acc)
}

/// Formal degree of the holomorphic discrete series `𝒟_t`.
pub fn formal_degree(w: &WeightData) -> Result<ExactScalar> {
    let n = w.n as i32;
    let mut c = &ExactScalar::sqrt2_pow(-2 * n * n) * &ExactScalar::pi_pow(-(n * n + n));
    for j in 1..=w.n as i64 {
        c = c.try_div(&gamma_int(j)?)?;
    }
    let mut q = product_t(w);
    for (j0, &t) in w.t.iter().enumerate() {
        q *= rat(t - j0 as i64 - 1);
    }
    Ok(&c * &ExactScalar::from_rational(q))
}

/// The zeta integral with the factors it is assembled from.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaResult {
    pub value: ExactScalar,
    pub components: ZetaComponents,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZetaComponents {
    pub dim_gl: ExactScalar,
    pub dim_lambda: ExactScalar,
    pub formal_degree: ExactScalar,
    pub siegel_gamma: ExactScalar,
    /// `∏ Γ(t_j − j + k − n)`.
    pub gamma_product: ExactScalar,
    /// `i^{−Σt+nk} 2^{−2Σt−nk+2n²+2n} π^{−Σt+nk+(3n²+n)/2}`.
    pub prefactor: ExactScalar,
}

/// `Z_∞ = prefactor · ∏Γ(t_j − j + k − n) / (Γ_{2n}(k) · dim(GL(n), t))`.
pub fn zeta_closed_form(w: &WeightData) -> Result<ZetaResult> {
    let (n, k) = (w.n as i64, w.k as i64);
    let st = w.sum_t();
    let prefactor = &(&ExactScalar::i_pow(-st + n * k)
        * &ExactScalar::sqrt2_pow(2 * (-2 * st - n * k + 2 * n * n + 2 * n) as i32))
        * &ExactScalar::pi_pow((2 * (-st + n * k) + 3 * n * n + n) as i32);
    let mut gamma_product = ExactScalar::one();
    for (j0, &t) in w.t.iter().enumerate() {
        gamma_product = &gamma_product * &gamma_int(t - (j0 as i64 + 1) + k - n)?;
    }
    let sg = siegel_gamma(2 * w.n, HalfInt::int(k))?;
    let dg = ExactScalar::from_rational(BigRational::from_integer(dim_gl(&w.t)?));
    let value = (&prefactor * &gamma_product).try_div(&(&sg * &dg))?;
    Ok(ZetaResult {
        value,
        components: ZetaComponents {
            dim_gl: dg,
            dim_lambda: ExactScalar::from_rational(BigRational::from_integer(dim_lambda(w)?)),
            formal_degree: formal_degree(w)?,
            siegel_gamma: sg,
            gamma_product,
            prefactor,
        },
    })
}

/// `⟨φ_Q, φ_Q̃⟩` computed through the Weil representation.
pub fn pairing_q_qtilde(w: &WeightData) -> Result<ExactScalar> {
    let q = SchwartzPolyGaussian::new(build_q(w)?);
    let qt = SchwartzPolyGaussian::new(build_qtilde(w)?);
    pairing(&q, &qt)
}

/// `∫ 𝓘(x, x) e^{−2π Tr xᵗx} dx`.
pub fn i_moment(w: &WeightData) -> Result<ExactScalar> {
    gaussian_moment(&build_i(w)?.restrict_diagonal(), &rat(2))
}

/// `2^{−Σt} π^{−Σt+nk} ∏Γ(t_j−j−k+n+1) / ∏Γ(n−j+1)`.
pub fn i_moment_closed_form(w: &WeightData) -> Result<ExactScalar> {
    let (n, k) = (w.n as i64, w.k as i64);
    let st = w.sum_t();
    let mut acc = &ExactScalar::sqrt2_pow(-2 * st as i32) * &ExactScalar::pi_pow((2 * (-st + n * k)) as i32);
    for (j0, &t) in w.t.iter().enumerate() {
        let j = j0 as i64 + 1;
        acc = (&acc * &gamma_int(t - j - k + n + 1)?).try_div(&gamma_int(n - j + 1)?)?;
    }
    Ok(acc)
}

/// `i^{nk} 2^{−Σt+nk} dim λ · d(𝒟_t)^{−1} · ⟨φ_Q, φ_Q̃⟩`, with the pairing
/// supplied by the caller.
pub fn wfd_assembly_with(w: &WeightData, pairing_value: &ExactScalar) -> Result<ExactScalar> {
    let nk = (w.n * w.k) as i64;
    let c = &ExactScalar::i_pow(nk) * &ExactScalar::sqrt2_pow(2 * (nk - w.sum_t()) as i32);
    let dl = ExactScalar::from_rational(BigRational::from_integer(dim_lambda(w)?));
    (&(&c * &dl) * pairing_value).try_div(&formal_degree(w)?)
}

/// The zeta integral assembled from the Weil-representation pairing.
pub fn wfd_assembly(w: &WeightData) -> Result<ExactScalar> {
    wfd_assembly_with(w, &pairing_q_qtilde(w)?)
}

/// Which modified Euler factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

/// `Γ_ℂ(s) = 2 (2π)^{−s} Γ(s)`.
pub fn gamma_c(s: i64) -> Result<ExactScalar> {
    let two_pi = &ExactScalar::from_int(2) * &ExactScalar::pi();
    Ok(&(&ExactScalar::from_int(2) * &two_pi.pow(-s)?) * &gamma_int(s)?)
}

/// `L(s, sgn^ε) = π^{−(s+ε)/2} Γ((s+ε)/2)`, `None` at a pole.
fn l_real(s: i64, eps: i64) -> Option<ExactScalar> {
    let h = s + eps;
    let g = gamma_exact(HalfInt(h)).ok()?;
    Some(&ExactScalar::pi_pow(-h as i32) * &g)
}

/// `γ(s, sgn^ε)^{−1} = i^{ε} L(s, sgn^ε) / L(1−s, sgn^ε)` for the additive
/// character `x ↦ e^{2πix}`, with `ε = k mod 2`.
pub fn gamma_factor_inverse(s: i64, k: usize) -> Result<ExactScalar> {
    let eps = (k % 2) as i64;
    let Some(num) = l_real(s, eps) else {
        return Err(Error::Domain(format!("L(s, sgn^{eps}) has a pole at s = {s}")));
    };
    match l_real(1 - s, eps) {
        Some(den) => Ok(&ExactScalar::i_pow(eps) * &num.try_div(&den)?),
        None => Ok(ExactScalar::zero()),
    }
}

/// `E^−_∞ = ∏_j e^{−(s+t_j−j)πi/2} Γ_ℂ(s+t_j−j)`; `E^+_∞` also carries `γ(s, sgn^k)^{−1}`.
pub fn euler_factor(w: &WeightData, s: i64, side: Side) -> Result<ExactScalar> {
    let mut acc = ExactScalar::one();
    for (j0, &t) in w.t.iter().enumerate() {
        let a = s + t - (j0 as i64 + 1);
        if a <= 0 {
            return Err(Error::Domain(format!("Γ_ℂ({a}) is a pole")));
        }
        acc = &(&acc * &ExactScalar::i_pow(-a)) * &gamma_c(a)?;
    }
    if side == Side::Plus {
        acc = &acc * &gamma_factor_inverse(s, w.k)?;
    }
    Ok(acc)
}
