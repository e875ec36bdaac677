use std::collections::HashMap;

use crate::constructions::{frak_q, WeightData};
use crate::error::{Error, Result};
use crate::gaussian::SchwartzPolyGaussian;
use crate::polyalg::{MatrixPolynomial, Monomial, RationalMatrix, Shape};
use crate::scalar::{ExactScalar, GaussRat};

/// `(XᵗX)_{ij}` as polynomials.
fn gram_all(s: Shape) -> Vec<Vec<MatrixPolynomial>> {
    let m = s.rows();
    let x = |r: usize, c: usize| MatrixPolynomial::var_index(s, s.at(r, c));
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = MatrixPolynomial::zero(s);
                    for c in 0..s.cols() {
                        acc = &acc + &(&x(i, c) * &x(j, c));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `Tr(M XᵗX)`.
#[allow(clippy::needless_range_loop)]
fn trace_form(s: Shape, m: &RationalMatrix, xx: &[Vec<MatrixPolynomial>]) -> MatrixPolynomial {
    let mut acc = MatrixPolynomial::zero(s);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m.get(i, j).is_zero() {
                acc = &acc + &xx[j][i].scale_gauss(m.get(i, j));
            }
        }
    }
    acc
}

/// `Σ_v (N X)_v ∂_v P`.
fn euler(p: &MatrixPolynomial, nmat: &RationalMatrix) -> MatrixPolynomial {
    let s = p.shape();
    let mut acc = MatrixPolynomial::zero(s);
    for i in 0..s.rows() {
        for c in 0..s.cols() {
            let dp = p.derivative(s.at(i, c));
            if dp.is_zero() {
                continue;
            }
            for q in 0..s.rows() {
                let coef = nmat.get(i, q);
                if !coef.is_zero() {
                    let xv = MatrixPolynomial::var_index(s, s.at(q, c));
                    acc = &acc + &(&xv * &dp).scale_gauss(coef);
                }
            }
        }
    }
    acc
}

fn trace(m: &RationalMatrix) -> GaussRat {
    let mut t = GaussRat::zero();
    for i in 0..m.rows() {
        t += m.get(i, i);
    }
    t
}

/// `dω(Y) φ_P` for `Y = (α β; γ −ᵗα)` in the complexified Lie algebra.
///
/// On `f = P·e^{−π Tr XᵗX}` the pieces act by `k trα + Σ(ᵗαX)_v∂_v`,
/// `πi Tr(βXᵗX)` and `(i/4π) Σ γ_ij Δ_ij`.
pub fn act_lie(y: &RationalMatrix, phi: &SchwartzPolyGaussian) -> Result<SchwartzPolyGaussian> {
    if !phi.is_standard() {
        return Err(Error::Domain("Lie action is implemented on standard Gaussians only".into()));
    }
    let s = phi.shape();
    let m = s.rows();
    if y.rows() != 2 * m || y.cols() != 2 * m {
        return Err(Error::Shape(format!("Lie element must be {0}x{0}", 2 * m)));
    }
    let alpha = y.submatrix(0, m, 0, m);
    let beta = y.submatrix(0, m, m, 2 * m);
    let gamma = y.submatrix(m, 2 * m, 0, m);
    let delta = y.submatrix(m, 2 * m, m, 2 * m);
    if delta != alpha.transpose().neg() || !beta.is_symmetric() || !gamma.is_symmetric() {
        return Err(Error::Domain("element is not in the symplectic Lie algebra".into()));
    }
    let p = phi.poly();
    let k = GaussRat::from_int(s.k as i64);
    let i = GaussRat::i();
    let pi = ExactScalar::pi();
    let xx = gram_all(s);

    let constant = &(&k * &trace(&alpha)) - &(&(&i * &k) * &trace(&gamma));
    let mut out = p.scale_gauss(&constant);
    out = &out + &euler(p, &alpha.transpose());
    out = &out - &euler(p, &gamma).scale_gauss(&i);
    let quad = &trace_form(s, &alpha, &xx).scale_gauss(&GaussRat::from_int(-2))
        + &trace_form(s, &beta.add(&gamma), &xx).scale_gauss(&i);
    out = &out + &(&quad.scale(&pi) * p);
    let mut lap = MatrixPolynomial::zero(s);
    for a in 0..m {
        for b in 0..m {
            if !gamma.get(a, b).is_zero() {
                lap = &lap + &p.delta_ij(a, b)?.scale_gauss(gamma.get(a, b));
            }
        }
    }
    let c = ExactScalar::pi_pow(-2).scale_gauss(&GaussRat::from_ratio(1, 4)).scale_gauss(&i);
    out = &out + &lap.scale(&c);
    Ok(SchwartzPolyGaussian::new(out))
}

/// `𝔠 (0 σ; 0 0) 𝔠⁻¹ = ½(−iσ σ; σ iσ)`.
pub fn raising_element(sigma: &RationalMatrix) -> RationalMatrix {
    let half = GaussRat::from_ratio(1, 2);
    let i = GaussRat::i();
    let s = sigma.scale(&half);
    RationalMatrix::from_blocks(&s.scale(&-i.clone()), &s, &s, &s.scale(&i))
}

/// `𝔠 (0 0; σ 0) 𝔠⁻¹ = ½(iσ σ; σ −iσ)`.
pub fn lowering_element(sigma: &RationalMatrix) -> RationalMatrix {
    let half = GaussRat::from_ratio(1, 2);
    let i = GaussRat::i();
    let s = sigma.scale(&half);
    RationalMatrix::from_blocks(&s.scale(&i), &s, &s, &s.scale(&-i))
}

/// `dω(μ̂⁺_σ) φ` for symmetric `σ`.
pub fn act_lie_raising(sigma: &RationalMatrix, phi: &SchwartzPolyGaussian) -> Result<SchwartzPolyGaussian> {
    if !sigma.is_symmetric() {
        return Err(Error::Domain("σ must be symmetric".into()));
    }
    act_lie(&raising_element(sigma), phi)
}

/// The operator `𝒪_ij = dω(μ̂⁺_{H,i,n+j}) / 4πi` on two-block polynomials.
fn op_ij(p: &MatrixPolynomial, n: usize, i: usize, j: usize) -> Result<MatrixPolynomial> {
    let mut sigma = RationalMatrix::zeros(2 * n, 2 * n);
    sigma.set(i, n + j, GaussRat::one());
    sigma.set(n + j, i, GaussRat::one());
    let r = act_lie_raising(&sigma, &SchwartzPolyGaussian::new(p.clone()))?;
    let c = ExactScalar::pi_pow(-2)
        .scale_gauss(&(&GaussRat::i() * &GaussRat::from_ratio(-1, 4)));
    Ok(r.poly().scale(&c))
}

/// `P₀ = 𝔔(𝒪)·1` on `M_{2n,2k}`.
pub fn build_p0(w: &WeightData) -> Result<MatrixPolynomial> {
    let n = w.n;
    let target = w.double();
    // 𝔔 on a generic n×n matrix, variable (i, j) ↦ index i·2n + j
    let gshape = Shape::single(n, n);
    let generic: Vec<Vec<MatrixPolynomial>> = (0..n)
        .map(|i| (0..n).map(|j| MatrixPolynomial::var_index(gshape, gshape.at(i, j))).collect())
        .collect();
    let q = frak_q(w, &generic)?;
    let mut memo: HashMap<Monomial, MatrixPolynomial> = HashMap::new();
    memo.insert(Monomial::one(), MatrixPolynomial::one(target));
    let mut out = MatrixPolynomial::zero(target);
    for (mono, c) in q.terms() {
        out = &out + &apply_ops(mono, n, gshape, &mut memo)?.scale(c);
    }
    Ok(out)
}

fn apply_ops(
    mono: &Monomial,
    n: usize,
    gshape: Shape,
    memo: &mut HashMap<Monomial, MatrixPolynomial>,
) -> Result<MatrixPolynomial> {
    if let Some(p) = memo.get(mono) {
        return Ok(p.clone());
    }
    let (v, _) = mono.pairs().next().expect("non-constant monomial");
    let rest = mono.reduce(v).expect("variable divides monomial");
    let inner = apply_ops(&rest, n, gshape, memo)?;
    let id = gshape.var_id(v);
    let out = op_ij(&inner, n, id.row, id.col)?;
    memo.insert(mono.clone(), out.clone());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{Block, VarId};
    use crate::weil::{act_group, SymplecticWord};

    fn sym(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_ints(rows)
    }

    fn bracket(
        y1: &RationalMatrix,
        y2: &RationalMatrix,
        phi: &SchwartzPolyGaussian,
    ) -> MatrixPolynomial {
        let a = act_lie(y1, &act_lie(y2, phi).unwrap()).unwrap();
        let b = act_lie(y2, &act_lie(y1, phi).unwrap()).unwrap();
        a.poly() - b.poly()
    }

    #[test]
    fn lowering_kills_gaussian() {
        let g = SchwartzPolyGaussian::gaussian(Shape::single(2, 3));
        for s in [sym(&[&[1, 0], &[0, 0]]), sym(&[&[0, 1], &[1, 0]]), sym(&[&[2, -1], &[-1, 3]])] {
            assert!(act_lie(&lowering_element(&s), &g).unwrap().poly().is_zero());
        }
    }

    #[test]
    fn raising_operators_commute() {
        let s = Shape::single(2, 2);
        let x = MatrixPolynomial::var(s, VarId { block: Block::X1, row: 1, col: 2 });
        let phi = SchwartzPolyGaussian::new(&x + &MatrixPolynomial::one(s));
        let y1 = raising_element(&sym(&[&[1, 0], &[0, 0]]));
        let y2 = raising_element(&sym(&[&[0, 1], &[1, 1]]));
        assert!(bracket(&y1, &y2, &phi).is_zero());
    }

    #[test]
    fn representation_respects_brackets() {
        let s = Shape::single(2, 1);
        let x = MatrixPolynomial::var(s, VarId { block: Block::X1, row: 0, col: 1 });
        let phi = SchwartzPolyGaussian::new(&x * &x);
        let upper = RationalMatrix::from_blocks(
            &RationalMatrix::zeros(2, 2),
            &sym(&[&[1, 0], &[0, 0]]),
            &RationalMatrix::zeros(2, 2),
            &RationalMatrix::zeros(2, 2),
        );
        let lower = upper.transpose();
        let comm = (&upper * &lower).sub(&(&lower * &upper));
        let lhs = bracket(&upper, &lower, &phi);
        assert_eq!(lhs, act_lie(&comm, &phi).unwrap().poly().clone());
    }

    #[test]
    fn lower_nilpotent_matches_group_action() {
        // dω(0 0; γ 0) = ω(J) ∘ [−πi Tr(γ XᵗX)] ∘ ω(J)⁻¹
        let s = Shape::single(1, 2);
        let x = MatrixPolynomial::var(s, VarId { block: Block::X1, row: 0, col: 0 });
        let phi = SchwartzPolyGaussian::new(&x * &x);
        let j = SymplecticWord::fourier(1);
        let t = act_group(&j.inverse().unwrap(), None, &phi).unwrap();
        let gram = gram_all(s)[0][0].scale(&ExactScalar::pi()).scale_gauss(&-GaussRat::i());
        let t = t.map_poly(|p| &gram * p);
        let expect = act_group(&j, None, &t).unwrap();
        let y = RationalMatrix::from_blocks(
            &RationalMatrix::zeros(1, 1),
            &RationalMatrix::zeros(1, 1),
            &sym(&[&[1]]),
            &RationalMatrix::zeros(1, 1),
        );
        assert_eq!(act_lie(&y, &phi).unwrap(), expect);
    }

    #[test]
    fn p0_degree_one_is_inner_product() {
        let w = WeightData::new(1, 2, vec![3]).unwrap();
        let p0 = build_p0(&w).unwrap();
        let s = w.double();
        let mut expect = MatrixPolynomial::zero(s);
        for c in 0..4 {
            let a = MatrixPolynomial::var(s, VarId { block: Block::X1, row: 0, col: c });
            let b = MatrixPolynomial::var(s, VarId { block: Block::X2, row: 0, col: c });
            expect = &expect + &(&a * &b);
        }
        assert_eq!(p0, expect);
    }
}
