use crate::error::{Error, Result};
use crate::gaussian::SchwartzPolyGaussian;
use crate::polyalg::{solve_linear_exact, RationalMatrix};
use crate::scalar::{ExactScalar, GaussRat};

use super::word::{Primitive, SymplecticWord};

fn check_rows(word: &SymplecticWord, phi: &SchwartzPolyGaussian) -> Result<()> {
    if word.m() != phi.shape().rows() {
        return Err(Error::Shape(format!(
            "word on Sp({}) acting on functions of {} rows",
            2 * word.m(),
            phi.shape().rows()
        )));
    }
    Ok(())
}

fn act_primitive(p: &Primitive, phi: &SchwartzPolyGaussian) -> Result<SchwartzPolyGaussian> {
    let k = phi.shape().k as i64;
    match p {
        // det(a)^k · e^{πi Tr(b ᵗa x ᵗx)} · φ(ᵗa x)
        Primitive::Parabolic { a, b } => {
            let at = a.transpose();
            let new_a = (&(a * phi.matrix()) * &at).sub(&(b * &at).scale(&GaussRat::i()));
            let poly = phi.poly().left_transpose(a)?.scale_gauss(&a.det()?.pow(k)?);
            SchwartzPolyGaussian::with_matrix(poly, new_a)
        }
        Primitive::FourierRows(rows) => {
            let c = GaussRat::i_pow(k * rows.len() as i64);
            Ok(phi.fourier_rows(rows, 1)?.map_poly(|q| q.scale_gauss(&c)))
        }
    }
}

/// `ω(g, γ) φ`: the word acts generator by generator, rightmost first, and
/// `γ ∈ O(2k)` acts by `φ(x) ↦ φ(x γ)`.
pub fn act_group(
    word: &SymplecticWord,
    gamma: Option<&RationalMatrix>,
    phi: &SchwartzPolyGaussian,
) -> Result<SchwartzPolyGaussian> {
    check_rows(word, phi)?;
    let mut cur = match gamma {
        Some(g) => act_orthogonal(g, phi)?,
        None => phi.clone(),
    };
    for p in word.flatten()?.iter().rev() {
        cur = act_primitive(p, &cur)?;
    }
    Ok(cur)
}

/// `φ(x) ↦ φ(x γ)` for `γ ∈ O(2k)`.
pub fn act_orthogonal(gamma: &RationalMatrix, phi: &SchwartzPolyGaussian) -> Result<SchwartzPolyGaussian> {
    if !(gamma * &gamma.transpose()).is_identity() || !gamma.is_real() {
        return Err(Error::Domain("γ is not a rational orthogonal matrix".into()));
    }
    let poly = phi.poly().right(gamma)?;
    SchwartzPolyGaussian::with_matrix(poly, phi.matrix().clone())
}

/// `ε(g) = sgn det(u) · sgn det((D₁ ᵗD₁)⁻¹ D₁ ; −C′)` for `g = (a b; c d)`,
/// where `u c = (0; C′)` and `D₁` is the top block of `u d`.
pub fn epsilon_sign(g: &RationalMatrix) -> Result<i32> {
    if !super::is_symplectic(g) || !g.is_real() {
        return Err(Error::Domain("ε needs a rational symplectic matrix".into()));
    }
    let m = g.rows() / 2;
    let c = g.submatrix(m, 2 * m, 0, m);
    let d = g.submatrix(m, 2 * m, m, 2 * m);
    // left kernel of c
    let ct: Vec<Vec<GaussRat>> = (0..m).map(|i| c.transpose().row(i).to_vec()).collect();
    let kernel = solve_linear_exact(&ct, &vec![GaussRat::zero(); m], m)?.nullspace;
    let mut rows = kernel.clone();
    for e in 0..m {
        if rows.len() == m {
            break;
        }
        let mut v = vec![GaussRat::zero(); m];
        v[e] = GaussRat::one();
        let mut trial = rows.clone();
        trial.push(v);
        if RationalMatrix::from_rows(trial.clone())?.rank() == trial.len() {
            rows = trial;
        }
    }
    let u = RationalMatrix::from_rows(rows)?;
    let top = kernel.len();
    let uc = &u * &c;
    let ud = &u * &d;
    let d1 = ud.submatrix(0, top, 0, m);
    let cprime = uc.submatrix(top, m, 0, m);
    let mut stacked = RationalMatrix::zeros(m, m);
    if top > 0 {
        let x = &(&d1 * &d1.transpose()).inverse()? * &d1;
        stacked.paste(0, 0, &x);
    }
    if top < m {
        stacked.paste(top, 0, &cprime.neg());
    }
    let s = &u.det()? * &stacked.det()?;
    let sign = s.re.cmp(&num_rational::BigRational::from_integer(0.into()));
    Ok(match sign {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => return Err(Error::Internal("ε of a singular block".into())),
    })
}

/// `⟨φ₁, φ₂⟩ = ∫ φ₁(x) · (ω(J⁻¹) φ₂)(x) dx`.
pub fn pairing(phi1: &SchwartzPolyGaussian, phi2: &SchwartzPolyGaussian) -> Result<ExactScalar> {
    if phi1.shape() != phi2.shape() {
        return Err(Error::Shape("pairing of functions on different spaces".into()));
    }
    let jinv = SymplecticWord::fourier_inverse(phi2.shape().rows());
    let t = act_group(&jinv, None, phi2)?;
    phi1.mul(&t)?.integrate()
}

/// `MC(g, φ) = ∫ [ω(ι(1, J⁻¹)) ω(ι(g, 1)) φ](x; x) dx` for a two-block `φ`.
pub fn matrix_coefficient(g: &SymplecticWord, phi: &SchwartzPolyGaussian) -> Result<ExactScalar> {
    let s = phi.shape();
    if s.blocks != 2 {
        return Err(Error::Shape("matrix coefficients need a two-block function".into()));
    }
    let n = s.n;
    let left = SymplecticWord::embedded(g.clone(), SymplecticWord::identity(n))?;
    let right = SymplecticWord::embedded(SymplecticWord::identity(n), SymplecticWord::fourier_inverse(n))?;
    let t = act_group(&right.then(&left)?, None, phi)?;
    t.restrict_diagonal()?.integrate()
}

/// `(ω(h) φ)(0)`.
pub fn section_value(phi: &SchwartzPolyGaussian, h: &SymplecticWord) -> Result<ExactScalar> {
    Ok(act_group(h, None, phi)?.value_at_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{MatrixPolynomial, Shape, VarId};
    use crate::weil::Generator;

    fn r(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_ints(rows)
    }

    #[test]
    fn pairing_of_gaussian_n1_k2() {
        let g = SchwartzPolyGaussian::gaussian(Shape::single(1, 2));
        assert_eq!(pairing(&g, &g).unwrap(), ExactScalar::from(GaussRat::from_ratio(-1, 4)));
    }

    #[test]
    fn fourier_on_gaussian_is_scalar() {
        // ω(J) φ₀ = i^{mk} φ₀ for m = 1, k = 2
        let g = SchwartzPolyGaussian::gaussian(Shape::single(1, 2));
        let t = act_group(&SymplecticWord::fourier(1), None, &g).unwrap();
        assert_eq!(t, g.scale_by(&ExactScalar::from_int(-1)));
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon_sign(&r(&[&[0, -1], &[1, 0]])).unwrap(), -1);
        assert!(epsilon_sign(&r(&[&[2, 0], &[0, 1]])).is_err());
        let p = SymplecticWord::levi(r(&[&[-1, 0], &[0, 3]])).unwrap().matrix().unwrap();
        assert_eq!(epsilon_sign(&p).unwrap(), -1);
        assert_eq!(epsilon_sign(&RationalMatrix::identity(4)).unwrap(), 1);
    }

    #[test]
    fn parabolic_then_inverse_is_identity() {
        let shape = Shape::single(2, 2);
        let x = MatrixPolynomial::var(shape, VarId { block: crate::polyalg::Block::X1, row: 0, col: 1 });
        let phi = SchwartzPolyGaussian::new(&x * &x);
        let a = r(&[&[2, 1], &[1, 1]]);
        let b = &r(&[&[1, 2], &[2, 0]]) * &a.transpose().inverse().unwrap();
        let w = SymplecticWord::parabolic(a, b).unwrap().then(&SymplecticWord::single(2, Generator::PartialFourier(1)).unwrap()).unwrap();
        let there = act_group(&w, None, &phi).unwrap();
        let back = act_group(&w.inverse().unwrap(), None, &there).unwrap();
        assert_eq!(back, phi);
    }

    /// `det(C i + D)^{−k}` for `h = (A B; C D)`.
    fn canonical_section(h: &RationalMatrix, k: i64) -> GaussRat {
        let m = h.rows() / 2;
        let c = h.submatrix(m, 2 * m, 0, m);
        let d = h.submatrix(m, 2 * m, m, 2 * m);
        c.scale(&GaussRat::i()).add(&d).det().unwrap().pow(-k).unwrap()
    }

    #[test]
    fn section_of_gaussian_is_canonical() {
        let a = r(&[&[1, 1], &[0, 2]]);
        let b = &r(&[&[0, 1], &[1, 3]]) * &a.transpose().inverse().unwrap();
        let p = SymplecticWord::parabolic(a, b).unwrap();
        let words = [
            SymplecticWord::fourier(2),
            SymplecticWord::sh_inverse(1),
            p.then(&SymplecticWord::fourier(2)).unwrap().then(&p).unwrap(),
            SymplecticWord::single(2, Generator::PartialFourier(1)).unwrap().then(&p.mvw()).unwrap(),
        ];
        for k in [1usize, 2, 3] {
            let g = SchwartzPolyGaussian::gaussian(Shape::double(1, k));
            for w in &words {
                let v = section_value(&g, w).unwrap();
                let expect = canonical_section(&w.matrix().unwrap(), k as i64);
                assert_eq!(v, ExactScalar::from(expect), "k={k} {w}");
            }
        }
    }
}
