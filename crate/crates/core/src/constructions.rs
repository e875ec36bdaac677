//! The named polynomials attached to a weight `(n, k, t)` and the harmonic
//! projection of `𝔔(x₁ ᵗx₂)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::polyalg::{
    leading_minor, solve_linear_exact, Block, ComplexCoordinate, MatrixPolynomial, Monomial,
    RationalMatrix, Shape, VarId,
};
use crate::scalar::{ExactScalar, GaussRat};

/// Default cap on the number of unknowns in the projection solve.
pub const DEFAULT_BUDGET: usize = 4000;

/// Genus `n`, weight `k` and `t₁ ≥ … ≥ tₙ ≥ k ≥ n+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightData {
    pub n: usize,
    pub k: usize,
    pub t: Vec<i64>,
}

impl WeightData {
    pub fn new(n: usize, k: usize, t: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidWeight("n ≥ 1 violated".into()));
        }
        if t.len() != n {
            return Err(Error::InvalidWeight(format!(
                "t has {} entries but n = {n}",
                t.len()
            )));
        }
        for j in 1..n {
            if t[j - 1] < t[j] {
                return Err(Error::InvalidWeight(format!("t_{j} ≥ t_{} violated", j + 1)));
            }
        }
        if t[n - 1] < k as i64 {
            return Err(Error::InvalidWeight("t_n ≥ k violated".into()));
        }
        if k < n + 1 {
            return Err(Error::InvalidWeight("k ≥ n+1 violated".into()));
        }
        Ok(WeightData { n, k, t })
    }

    pub fn sum_t(&self) -> i64 {
        self.t.iter().sum()
    }

    /// `Σ t_j − nk`, the degree of `Q_{k,t}`.
    pub fn degree(&self) -> u32 {
        (self.sum_t() - (self.n * self.k) as i64) as u32
    }

    /// Exponents of `det₁, …, detₙ` in `𝔔_{k,t}`.
    pub fn minor_exponents(&self) -> Vec<u32> {
        let n = self.n;
        (0..n)
            .map(|j| {
                if j + 1 < n {
                    (self.t[j] - self.t[j + 1]) as u32
                } else {
                    (self.t[n - 1] - self.k as i64) as u32
                }
            })
            .collect()
    }

    pub fn single(&self) -> Shape {
        Shape::single(self.n, self.k)
    }

    pub fn double(&self) -> Shape {
        Shape::double(self.n, self.k)
    }
}

impl fmt::Display for WeightData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.t.iter().map(|x| x.to_string()).collect();
        write!(f, "n={},k={},t=({})", self.n, self.k, t.join(","))
    }
}

/// `∏_{j<n} det_j(M)^{t_j−t_{j+1}} · det(M)^{t_n−k}`.
pub fn frak_q(w: &WeightData, m: &[Vec<MatrixPolynomial>]) -> Result<MatrixPolynomial> {
    let shape = m
        .first()
        .and_then(|r| r.first())
        .map(MatrixPolynomial::shape)
        .ok_or_else(|| Error::Shape("empty matrix".into()))?;
    if m.len() != w.n {
        return Err(Error::Shape(format!("{}-square matrix for n = {}", m.len(), w.n)));
    }
    let mut acc = MatrixPolynomial::one(shape);
    for (j, e) in w.minor_exponents().into_iter().enumerate() {
        if e > 0 {
            acc = &acc * &leading_minor(m, j + 1)?.pow(e);
        }
    }
    Ok(acc)
}

fn first_columns(c: &[Vec<MatrixPolynomial>], n: usize) -> Vec<Vec<MatrixPolynomial>> {
    c.iter().map(|row| row[..n].to_vec()).collect()
}

/// `Q_{k,t}(x) = 𝔔(z(x)_{i,j ≤ n})`.
pub fn build_q(w: &WeightData) -> Result<MatrixPolynomial> {
    let c = ComplexCoordinate::new(w.single(), Block::X1);
    frak_q(w, &first_columns(&c.z, w.n))
}

/// `Q̃_{k,t}(x) = 𝔔(z̄(x)_{i,j ≤ n})`.
pub fn build_qtilde(w: &WeightData) -> Result<MatrixPolynomial> {
    let c = ComplexCoordinate::new(w.single(), Block::X1);
    frak_q(w, &first_columns(&c.zbar, w.n))
}

/// `𝓘_{k,t}(x₁,x₂) = 𝔔((ᵗz(x₁) z̄(x₂))_{i,j ≤ n})`.
pub fn build_i(w: &WeightData) -> Result<MatrixPolynomial> {
    let s = w.double();
    let z1 = ComplexCoordinate::new(s, Block::X1).z;
    let z2 = ComplexCoordinate::new(s, Block::X2).zbar;
    let m: Vec<Vec<MatrixPolynomial>> = (0..w.n)
        .map(|i| {
            (0..w.n)
                .map(|j| {
                    (0..w.n).fold(MatrixPolynomial::zero(s), |acc, l| {
                        &acc + &(&z1[l][i] * &z2[l][j])
                    })
                })
                .collect()
        })
        .collect();
    frak_q(w, &m)
}

/// `P^hol(X) = Q(x₁) Q̃(x₂)`.
pub fn build_p_hol(w: &WeightData) -> Result<MatrixPolynomial> {
    Ok(&build_q(w)?.embed(Block::X1) * &build_qtilde(w)?.embed(Block::X2))
}

/// The `n × n` matrix of bilinear forms `(a ᵗb)_{ij}` between two blocks.
pub fn gram(s: Shape, a: Block, b: Block) -> Vec<Vec<MatrixPolynomial>> {
    (0..s.n)
        .map(|i| {
            (0..s.n)
                .map(|j| {
                    (0..s.cols()).fold(MatrixPolynomial::zero(s), |acc, r| {
                        let x = MatrixPolynomial::var(s, VarId { block: a, row: i, col: r });
                        let y = MatrixPolynomial::var(s, VarId { block: b, row: j, col: r });
                        &acc + &(&x * &y)
                    })
                })
                .collect()
        })
        .collect()
}

/// `P'(X) = 𝔔(x₁ ᵗx₂)`.
pub fn build_p_prime(w: &WeightData) -> Result<MatrixPolynomial> {
    frak_q(w, &gram(w.double(), Block::X1, Block::X2))
}

/// The point `x₁ = ½(E, −iE)`, `x₂ = ½(E, iE)` with `E = (1ₙ 0)`, stacked
/// as a `2n × 2k` matrix: there `z(x₁) = E`, `z̄(x₁) = 0`, `z(x₂) = 0`,
/// `z̄(x₂) = E`.
pub fn evaluation_point(w: &WeightData) -> RationalMatrix {
    let (n, k) = (w.n, w.k);
    let half = GaussRat::from_ratio(1, 2);
    let ihalf = &GaussRat::i() * &half;
    let mut x = RationalMatrix::zeros(2 * n, 2 * k);
    for j in 0..n {
        x.set(j, j, half.clone());
        x.set(j, k + j, -ihalf.clone());
        x.set(n + j, j, half.clone());
        x.set(n + j, k + j, ihalf.clone());
    }
    x
}

/// Result of splitting `P' = C·H + R`.
#[derive(Clone, Debug)]
pub struct HarmonicProjection {
    /// The pluri-harmonic component, normalised to `H(ev) = 1`.
    pub h: MatrixPolynomial,
    /// The ideal component `R = Σ g·S_g`.
    pub remainder: MatrixPolynomial,
    /// Certificate for `R`: each generator `(x_b ᵗx_b)_{ij}` with its multiplier `S_g`.
    pub multipliers: Vec<(Block, usize, usize, MatrixPolynomial)>,
    /// `C = P'(ev)`.
    pub c: ExactScalar,
    /// Number of unknowns in the linear solve.
    pub unknowns: usize,
    /// Whether the solve was restricted to the torus-weight space.
    pub weight_restricted: bool,
}

/// All monomials of degree `d` in the given variables.
fn monomials_of_degree(vars: &[usize], d: u32) -> Vec<Monomial> {
    fn go(vars: &[usize], d: u32, cur: &mut Vec<(usize, u32)>, out: &mut Vec<Monomial>) {
        if d == 0 {
            out.push(Monomial::from_pairs(cur.clone()));
            return;
        }
        let Some((&v, rest)) = vars.split_first() else {
            return;
        };
        for e in (0..=d).rev() {
            if e > 0 {
                cur.push((v, e));
            }
            go(rest, d - e, cur, out);
            if e > 0 {
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(vars, d, &mut Vec::new(), &mut out);
    out
}

fn row_vars(s: Shape, b: Block, row: usize) -> Vec<usize> {
    (0..s.cols())
        .map(|c| s.index(VarId { block: b, row, col: c }))
        .collect()
}

fn block_vars(s: Shape, b: Block) -> Vec<usize> {
    (0..s.n).flat_map(|r| row_vars(s, b, r)).collect()
}

fn products(parts: Vec<Vec<Monomial>>) -> Vec<Monomial> {
    parts.into_iter().fold(vec![Monomial::one()], |acc, p| {
        acc.iter()
            .flat_map(|a| p.iter().map(move |b| a.mul(b)))
            .collect()
    })
}

/// Monomials in block `b` with the given degree in each row.
fn monomials_with_row_degrees(s: Shape, b: Block, degs: &[i64]) -> Vec<Monomial> {
    if degs.iter().any(|&d| d < 0) {
        return Vec::new();
    }
    products(
        degs.iter()
            .enumerate()
            .map(|(r, &d)| monomials_of_degree(&row_vars(s, b, r), d as u32))
            .collect(),
    )
}

/// Splits `P' = C·H + R` with `H` pluri-harmonic in each block, `R` in the
/// ideal generated by the entries of `x₁ᵗx₁` and `x₂ᵗx₂`, and `H(ev) = 1`.
pub fn harmonic_projection(w: &WeightData, budget: usize) -> Result<HarmonicProjection> {
    let s = w.double();
    let p = build_p_prime(w)?;
    let d = w.degree();
    let ev = evaluation_point(w);
    if d < 2 {
        // nothing of bidegree (d, d) lies in the ideal
        let c = p.evaluate_matrix(&ev)?;
        let h = p.scale(&c.inv()?);
        return Ok(HarmonicProjection {
            h,
            remainder: MatrixPolynomial::zero(s),
            multipliers: Vec::new(),
            c,
            unknowns: 0,
            weight_restricted: false,
        });
    }
    let g11 = gram(s, Block::X1, Block::X1);
    let g22 = gram(s, Block::X2, Block::X2);
    let gens: Vec<(Block, usize, usize, &MatrixPolynomial)> = (0..w.n)
        .flat_map(|i| (i..w.n).map(move |j| (i, j)))
        .flat_map(|(i, j)| [(Block::X1, i, j, &g11[i][j]), (Block::X2, i, j, &g22[i][j])])
        .collect();

    let full = |b: Block, own: u32| {
        let (own_vars, other_vars) = match b {
            Block::X1 => (block_vars(s, Block::X1), block_vars(s, Block::X2)),
            Block::X2 => (block_vars(s, Block::X2), block_vars(s, Block::X1)),
        };
        products(vec![
            monomials_of_degree(&own_vars, own),
            monomials_of_degree(&other_vars, d),
        ])
    };
    let weights: Vec<i64> = w.t.iter().map(|t| t - w.k as i64).collect();
    let restricted = |b: Block, i: usize, j: usize| {
        let mut own = weights.clone();
        own[i] -= 1;
        own[j] -= 1;
        let other = match b {
            Block::X1 => Block::X2,
            Block::X2 => Block::X1,
        };
        products(vec![
            monomials_with_row_degrees(s, b, &own),
            monomials_with_row_degrees(s, other, &weights),
        ])
    };

    let full_count: usize = gens.len() * monomials_of_degree(&block_vars(s, Block::X1), d - 2).len()
        * monomials_of_degree(&block_vars(s, Block::X2), d).len();
    let weight_restricted = full_count > budget;
    let mut basis: Vec<MatrixPolynomial> = Vec::new();
    let mut origin: Vec<(usize, Monomial)> = Vec::new();
    for (gi, &(b, i, j, g)) in gens.iter().enumerate() {
        let ms = if weight_restricted {
            restricted(b, i, j)
        } else {
            full(b, d - 2)
        };
        for m in ms {
            basis.push(g.mul_monomial(&m, &ExactScalar::one()));
            origin.push((gi, m));
        }
    }
    if basis.len() > budget {
        return Err(Error::Budget {
            needed: basis.len(),
            budget,
        });
    }

    // equations: Δ^{(b)}_{ij}(P' − Σ c_u basis_u) = 0, coefficientwise
    let mut eq_index: std::collections::BTreeMap<(usize, usize, usize, Monomial), usize> =
        Default::default();
    let mut rows: Vec<Vec<(usize, GaussRat)>> = Vec::new();
    let mut rhs: Vec<GaussRat> = Vec::new();
    let mut row_of = |key: (usize, usize, usize, Monomial),
                      rows: &mut Vec<Vec<(usize, GaussRat)>>,
                      rhs: &mut Vec<GaussRat>| {
        *eq_index.entry(key).or_insert_with(|| {
            rows.push(Vec::new());
            rhs.push(GaussRat::zero());
            rows.len() - 1
        })
    };
    let gauss = |c: &ExactScalar| {
        c.as_gauss()
            .ok_or_else(|| Error::Internal("non-rational coefficient in projection".into()))
    };
    for b in [Block::X1, Block::X2] {
        for i in 0..w.n {
            for j in i..w.n {
                for (m, c) in p.delta_block(b, i, j)?.terms() {
                    let r = row_of((b.index(), i, j, m.clone()), &mut rows, &mut rhs);
                    rhs[r] += &gauss(c)?;
                }
                for (u, q) in basis.iter().enumerate() {
                    for (m, c) in q.delta_block(b, i, j)?.terms() {
                        let r = row_of((b.index(), i, j, m.clone()), &mut rows, &mut rhs);
                        rows[r].push((u, gauss(c)?));
                    }
                }
            }
        }
    }
    let dense: Vec<Vec<GaussRat>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![GaussRat::zero(); basis.len()];
            for (u, c) in r {
                v[*u] += c;
            }
            v
        })
        .collect();
    let sol = match solve_linear_exact(&dense, &rhs, basis.len()) {
        Ok(s) => s,
        Err(Error::Inconsistent { row }) => {
            return Err(Error::Internal(format!(
                "harmonic projection for {w} has no solution (equation {row})"
            )))
        }
        Err(e) => return Err(e),
    };
    let mut remainder = MatrixPolynomial::zero(s);
    let mut multipliers: Vec<(Block, usize, usize, MatrixPolynomial)> = gens
        .iter()
        .map(|&(b, i, j, _)| (b, i, j, MatrixPolynomial::zero(s)))
        .collect();
    for ((q, c), (gi, m)) in basis.iter().zip(&sol.particular).zip(&origin) {
        if !c.is_zero() {
            remainder = &remainder + &q.scale_gauss(c);
            multipliers[*gi].3.add_term(m.clone(), ExactScalar::from(c.clone()));
        }
    }
    let raw = &p - &remainder;
    let c = raw.evaluate_matrix(&ev)?;
    if c.is_zero() {
        return Err(Error::Internal(format!("harmonic component of {w} vanishes at ev")));
    }
    Ok(HarmonicProjection {
        h: raw.scale(&c.inv()?),
        remainder,
        multipliers,
        c,
        unknowns: basis.len(),
        weight_restricted,
    })
}
