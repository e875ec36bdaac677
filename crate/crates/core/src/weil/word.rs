use std::fmt;

use crate::error::{Error, Result};
use crate::polyalg::RationalMatrix;
use crate::scalar::GaussRat;

/// A generator of `Sp(2m, ℚ)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    /// `(a b; 0 ᵗa⁻¹)` with `b ᵗa` symmetric.
    Parabolic { a: RationalMatrix, b: RationalMatrix },
    /// `(0 1; −1 0)`.
    Fourier,
    /// The element acting as `(0 1; −1 0)` on the last `j` coordinates.
    PartialFourier(usize),
    /// The element acting as `(0 1; −1 0)` on the listed coordinates.
    FourierRows(Vec<usize>),
    /// `ι(g₁, g₂)` in `Sp(4n)` for words on `Sp(2n)`.
    Embedded(Box<SymplecticWord>, Box<SymplecticWord>),
    /// `S_H⁻¹ = (1 0 0 0; 0 1 0 0; 0 −1 1 0; −1 0 0 1)` in `Sp(4n)`.
    SHinv,
    /// Conjugation by the block swap `(0 1; 1 0)`.
    Mvw(Box<SymplecticWord>),
}

impl Generator {
    pub fn name(&self) -> &'static str {
        match self {
            Generator::Parabolic { .. } => "Parabolic",
            Generator::Fourier => "Fourier",
            Generator::PartialFourier(_) => "PartialFourier",
            Generator::FourierRows(_) => "FourierRows",
            Generator::Embedded(..) => "Embedded",
            Generator::SHinv => "SHinv",
            Generator::Mvw(_) => "MVW",
        }
    }
}

/// The two generators every word reduces to.
#[derive(Clone, Debug, PartialEq)]
pub enum Primitive {
    Parabolic { a: RationalMatrix, b: RationalMatrix },
    FourierRows(Vec<usize>),
}

/// A product `g₁ g₂ ⋯ g_r` of generators of `Sp(2m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticWord {
    m: usize,
    gens: Vec<Generator>,
}

fn sub_index_error(index: usize, g: &Generator, reason: impl Into<String>) -> Error {
    Error::UnsupportedWord {
        index,
        generator: g.name().into(),
        reason: reason.into(),
    }
}

/// `(0 1; −1 0)` restricted to the coordinates in `rows`, identity elsewhere.
pub fn fourier_rows_matrix(m: usize, rows: &[usize]) -> RationalMatrix {
    let mut g = RationalMatrix::zeros(2 * m, 2 * m);
    for r in 0..m {
        if rows.contains(&r) {
            g.set(r, m + r, GaussRat::one());
            g.set(m + r, r, -GaussRat::one());
        } else {
            g.set(r, r, GaussRat::one());
            g.set(m + r, m + r, GaussRat::one());
        }
    }
    g
}

/// The standard alternating form `(0 1; −1 0)`.
pub fn j_matrix(m: usize) -> RationalMatrix {
    fourier_rows_matrix(m, &(0..m).collect::<Vec<_>>())
}

/// The block swap `(0 1; 1 0)`.
pub fn theta_matrix(m: usize) -> RationalMatrix {
    let z = RationalMatrix::zeros(m, m);
    let one = RationalMatrix::identity(m);
    RationalMatrix::from_blocks(&z, &one, &one, &z)
}

pub fn is_symplectic(g: &RationalMatrix) -> bool {
    if !g.is_square() || g.rows() % 2 == 1 {
        return false;
    }
    let j = j_matrix(g.rows() / 2);
    &(&g.transpose() * &j) * g == j
}

/// `ι(g₁, g₂)` on matrices.
pub fn embed_matrices(g1: &RationalMatrix, g2: &RationalMatrix) -> RationalMatrix {
    let n = g1.rows() / 2;
    let mut h = RationalMatrix::zeros(4 * n, 4 * n);
    for (g, off) in [(g1, 0), (g2, n)] {
        for i in 0..2 * n {
            for j in 0..2 * n {
                let (bi, ri) = (i / n, i % n);
                let (bj, rj) = (j / n, j % n);
                h.set(bi * 2 * n + off + ri, bj * 2 * n + off + rj, g.get(i, j).clone());
            }
        }
    }
    h
}

fn parabolic_matrix(a: &RationalMatrix, b: &RationalMatrix) -> Result<RationalMatrix> {
    let m = a.rows();
    Ok(RationalMatrix::from_blocks(
        a,
        b,
        &RationalMatrix::zeros(m, m),
        &a.transpose().inverse()?,
    ))
}

fn diag_sign(m: usize, rows: &[usize]) -> RationalMatrix {
    let d: Vec<GaussRat> = (0..m)
        .map(|r| if rows.contains(&r) { -GaussRat::one() } else { GaussRat::one() })
        .collect();
    RationalMatrix::diagonal(&d)
}

impl Primitive {
    fn matrix(&self, m: usize) -> Result<RationalMatrix> {
        match self {
            Primitive::Parabolic { a, b } => parabolic_matrix(a, b),
            Primitive::FourierRows(rows) => Ok(fourier_rows_matrix(m, rows)),
        }
    }

    fn inverse(&self, m: usize) -> Result<Vec<Primitive>> {
        Ok(match self {
            Primitive::Parabolic { a, b } => {
                let ai = a.inverse()?;
                let bi = (&(&ai * b) * &a.transpose()).neg();
                vec![Primitive::Parabolic { a: ai, b: bi }]
            }
            Primitive::FourierRows(rows) => vec![
                Primitive::Parabolic {
                    a: diag_sign(m, rows),
                    b: RationalMatrix::zeros(m, m),
                },
                Primitive::FourierRows(rows.clone()),
            ],
        })
    }

    /// `θ p θ` as primitives.
    fn mvw(&self, m: usize) -> Result<Vec<Primitive>> {
        Ok(match self {
            // (a b; 0 ᵗa⁻¹)^θ = (ᵗa⁻¹ 0; b a) = L(b ᵗa)·p(ᵗa⁻¹, 0)
            Primitive::Parabolic { a, b } => {
                let mut out = lower_unipotent(&(b * &a.transpose()));
                out.push(Primitive::Parabolic {
                    a: a.transpose().inverse()?,
                    b: RationalMatrix::zeros(m, m),
                });
                out
            }
            Primitive::FourierRows(_) => self.inverse(m)?,
        })
    }
}

/// `(1 0; c 1) = J·p(1, −c)·J⁻¹`, `J⁻¹ = p(−1, 0)·J`.
fn lower_unipotent(c: &RationalMatrix) -> Vec<Primitive> {
    let m = c.rows();
    let all: Vec<usize> = (0..m).collect();
    vec![
        Primitive::FourierRows(all.clone()),
        Primitive::Parabolic {
            a: RationalMatrix::identity(m),
            b: c.neg(),
        },
        Primitive::Parabolic {
            a: RationalMatrix::scalar(m, -GaussRat::one()),
            b: RationalMatrix::zeros(m, m),
        },
        Primitive::FourierRows(all),
    ]
}

impl SymplecticWord {
    /// The identity of `Sp(2m)`.
    pub fn identity(m: usize) -> Self {
        SymplecticWord { m, gens: Vec::new() }
    }

    pub fn new(m: usize, gens: Vec<Generator>) -> Result<Self> {
        let w = SymplecticWord { m, gens };
        w.flatten()?;
        Ok(w)
    }

    pub fn single(m: usize, g: Generator) -> Result<Self> {
        Self::new(m, vec![g])
    }

    pub fn parabolic(a: RationalMatrix, b: RationalMatrix) -> Result<Self> {
        let m = a.rows();
        Self::single(m, Generator::Parabolic { a, b })
    }

    /// `p(a, 0)`.
    pub fn levi(a: RationalMatrix) -> Result<Self> {
        let m = a.rows();
        Self::parabolic(a, RationalMatrix::zeros(m, m))
    }

    pub fn fourier(m: usize) -> Self {
        SymplecticWord {
            m,
            gens: vec![Generator::Fourier],
        }
    }

    /// `(0 −1; 1 0) = p(−1, 0)·J`.
    pub fn fourier_inverse(m: usize) -> Self {
        SymplecticWord {
            m,
            gens: vec![
                Generator::Parabolic {
                    a: RationalMatrix::scalar(m, -GaussRat::one()),
                    b: RationalMatrix::zeros(m, m),
                },
                Generator::Fourier,
            ],
        }
    }

    pub fn embedded(g1: SymplecticWord, g2: SymplecticWord) -> Result<Self> {
        if g1.m != g2.m {
            return Err(Error::Shape("embedding words of different sizes".into()));
        }
        Ok(SymplecticWord {
            m: 2 * g1.m,
            gens: vec![Generator::Embedded(Box::new(g1), Box::new(g2))],
        })
    }

    /// `S_H⁻¹` in `Sp(4n)`.
    pub fn sh_inverse(n: usize) -> Self {
        SymplecticWord {
            m: 2 * n,
            gens: vec![Generator::SHinv],
        }
    }

    /// `g^θ`.
    pub fn mvw(&self) -> Self {
        SymplecticWord {
            m: self.m,
            gens: vec![Generator::Mvw(Box::new(self.clone()))],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn is_identity_word(&self) -> bool {
        self.gens.is_empty()
    }

    /// `self · o`.
    pub fn then(&self, o: &SymplecticWord) -> Result<Self> {
        if self.m != o.m {
            return Err(Error::Shape("product of words of different sizes".into()));
        }
        let mut gens = self.gens.clone();
        gens.extend(o.gens.iter().cloned());
        Ok(SymplecticWord { m: self.m, gens })
    }

    /// The inverse word.
    pub fn inverse(&self) -> Result<Self> {
        let mut out = Vec::new();
        for p in self.flatten()?.iter().rev() {
            out.extend(p.inverse(self.m)?);
        }
        Ok(Self::from_primitives(self.m, out))
    }

    fn from_primitives(m: usize, ps: Vec<Primitive>) -> Self {
        SymplecticWord {
            m,
            gens: ps
                .into_iter()
                .map(|p| match p {
                    Primitive::Parabolic { a, b } => Generator::Parabolic { a, b },
                    Primitive::FourierRows(r) => Generator::FourierRows(r),
                })
                .collect(),
        }
    }

    /// Rewrites the word in parabolic and coordinate-Fourier generators,
    /// validating every generator on the way.
    pub fn flatten(&self) -> Result<Vec<Primitive>> {
        let m = self.m;
        let mut out = Vec::new();
        for (idx, g) in self.gens.iter().enumerate() {
            match g {
                Generator::Parabolic { a, b } => {
                    if a.rows() != m || a.cols() != m || b.rows() != m || b.cols() != m {
                        return Err(sub_index_error(idx, g, format!("blocks must be {m}x{m}")));
                    }
                    if !a.is_real() || !b.is_real() {
                        return Err(sub_index_error(idx, g, "entries must be rational"));
                    }
                    if a.det()?.is_zero() {
                        return Err(sub_index_error(idx, g, "a is singular"));
                    }
                    if !(b * &a.transpose()).is_symmetric() {
                        return Err(sub_index_error(idx, g, "b·ᵗa is not symmetric"));
                    }
                    out.push(Primitive::Parabolic { a: a.clone(), b: b.clone() });
                }
                Generator::Fourier => out.push(Primitive::FourierRows((0..m).collect())),
                Generator::PartialFourier(j) => {
                    if *j > m {
                        return Err(sub_index_error(idx, g, format!("j = {j} exceeds m = {m}")));
                    }
                    out.push(Primitive::FourierRows((m - j..m).collect()));
                }
                Generator::FourierRows(rows) => {
                    if rows.iter().any(|&r| r >= m) {
                        return Err(sub_index_error(idx, g, "row outside the matrix"));
                    }
                    let mut r = rows.clone();
                    r.sort_unstable();
                    r.dedup();
                    out.push(Primitive::FourierRows(r));
                }
                Generator::Embedded(g1, g2) => {
                    if g1.m * 2 != m || g2.m * 2 != m {
                        return Err(sub_index_error(idx, g, "embedded words must act on Sp(m)"));
                    }
                    let n = g1.m;
                    for (w, off) in [(g1, 0usize), (g2, n)] {
                        for p in w.flatten()? {
                            out.push(lift(p, n, off));
                        }
                    }
                }
                Generator::SHinv => {
                    if m % 2 == 1 {
                        return Err(sub_index_error(idx, g, "S_H⁻¹ needs an even number of rows"));
                    }
                    let n = m / 2;
                    let swap = {
                        let z = RationalMatrix::zeros(n, n);
                        let one = RationalMatrix::identity(n);
                        RationalMatrix::from_blocks(&z, &one, &one, &z)
                    };
                    out.extend(lower_unipotent(&swap.neg()));
                }
                Generator::Mvw(w) => {
                    if w.m != m {
                        return Err(sub_index_error(idx, g, "inner word has another size"));
                    }
                    for p in w.flatten()? {
                        out.extend(p.mvw(m)?);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The matrix of the word, multiplied out.
    pub fn matrix(&self) -> Result<RationalMatrix> {
        let mut acc = RationalMatrix::identity(2 * self.m);
        for p in self.flatten()? {
            acc = &acc * &p.matrix(self.m)?;
        }
        Ok(acc)
    }

    /// The matrix computed generator by generator from the defining formulas,
    /// without going through [`flatten`](Self::flatten).
    pub fn direct_matrix(&self) -> Result<RationalMatrix> {
        let m = self.m;
        let mut acc = RationalMatrix::identity(2 * m);
        for g in &self.gens {
            let gm = match g {
                Generator::Parabolic { a, b } => parabolic_matrix(a, b)?,
                Generator::Fourier => j_matrix(m),
                Generator::PartialFourier(j) => {
                    fourier_rows_matrix(m, &(m - j..m).collect::<Vec<_>>())
                }
                Generator::FourierRows(r) => fourier_rows_matrix(m, r),
                Generator::Embedded(g1, g2) => {
                    embed_matrices(&g1.direct_matrix()?, &g2.direct_matrix()?)
                }
                Generator::SHinv => {
                    let n = m / 2;
                    let one = RationalMatrix::identity(n);
                    let z = RationalMatrix::zeros(n, n);
                    let swap = RationalMatrix::from_blocks(&z, &one, &one, &z);
                    RationalMatrix::from_blocks(
                        &RationalMatrix::identity(m),
                        &RationalMatrix::zeros(m, m),
                        &swap.neg(),
                        &RationalMatrix::identity(m),
                    )
                }
                Generator::Mvw(w) => {
                    let t = theta_matrix(m);
                    &(&t * &w.direct_matrix()?) * &t
                }
            };
            acc = &acc * &gm;
        }
        Ok(acc)
    }

    /// A word for a rational symplectic matrix: `g = w_S·n(a c⁻¹)·p(−ᵗc⁻¹, 0)·J·n(c⁻¹ d)`
    /// after moving to a cell where the lower-left block is invertible.
    pub fn from_matrix(g: &RationalMatrix) -> Result<Self> {
        if !is_symplectic(g) || !g.is_real() {
            return Err(Error::Domain("matrix is not rational symplectic".into()));
        }
        let m = g.rows() / 2;
        for mask in 0u32..(1 << m) {
            let rows: Vec<usize> = (0..m).filter(|r| mask & (1 << r) != 0).collect();
            let w = Self::single(m, Generator::FourierRows(rows.clone()))?;
            let h = &w.inverse()?.matrix()? * g;
            let c = h.submatrix(m, 2 * m, 0, m);
            let Ok(ci) = c.inverse() else { continue };
            let a = h.submatrix(0, m, 0, m);
            let d = h.submatrix(m, 2 * m, m, 2 * m);
            let one = RationalMatrix::identity(m);
            let mut gens = Vec::new();
            if !rows.is_empty() {
                gens.push(Generator::FourierRows(rows));
            }
            gens.push(Generator::Parabolic { a: one.clone(), b: &a * &ci });
            gens.push(Generator::Parabolic {
                a: ci.transpose().neg(),
                b: RationalMatrix::zeros(m, m),
            });
            gens.push(Generator::Fourier);
            gens.push(Generator::Parabolic { a: one, b: &ci * &d });
            return Self::new(m, gens);
        }
        Err(Error::Internal("no Bruhat cell with invertible lower-left block".into()))
    }
}

fn lift(p: Primitive, n: usize, off: usize) -> Primitive {
    match p {
        Primitive::Parabolic { a, b } => {
            let mut a2 = RationalMatrix::identity(2 * n);
            let mut b2 = RationalMatrix::zeros(2 * n, 2 * n);
            a2.paste(off, off, &a);
            b2.paste(off, off, &b);
            Primitive::Parabolic { a: a2, b: b2 }
        }
        Primitive::FourierRows(rows) => Primitive::FourierRows(rows.into_iter().map(|r| r + off).collect()),
    }
}

impl fmt::Display for SymplecticWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .gens
            .iter()
            .map(|g| match g {
                Generator::Parabolic { a, b } => format!("P({a}, {b})"),
                Generator::Fourier => "J".into(),
                Generator::PartialFourier(j) => format!("J_{j}"),
                Generator::FourierRows(r) => format!("J{r:?}"),
                Generator::Embedded(a, b) => format!("ι({a}, {b})"),
                Generator::SHinv => "S_H⁻¹".into(),
                Generator::Mvw(w) => format!("({w})^θ"),
            })
            .collect();
        f.write_str(&parts.join("·"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym2() -> RationalMatrix {
        RationalMatrix::from_ints(&[&[1, 2], &[2, -1]])
    }

    #[test]
    fn flatten_matches_direct_matrices() {
        let a = RationalMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        let b = &sym2() * &a.transpose().inverse().unwrap();
        let p = SymplecticWord::parabolic(a, b).unwrap();
        let j = SymplecticWord::fourier(2);
        let w = p.then(&j).unwrap().then(&SymplecticWord::single(2, Generator::PartialFourier(1)).unwrap()).unwrap();
        for word in [w.clone(), w.mvw(), SymplecticWord::sh_inverse(1), SymplecticWord::embedded(
            SymplecticWord::fourier(1), SymplecticWord::fourier_inverse(1)).unwrap().mvw()] {
            let mat = word.matrix().unwrap();
            assert!(is_symplectic(&mat));
            assert_eq!(mat, word.direct_matrix().unwrap(), "{word}");
        }
    }

    #[test]
    fn inverse_multiplies_to_identity() {
        let a = RationalMatrix::from_ints(&[&[1, 3], &[0, 2]]);
        let b = &sym2() * &a.transpose().inverse().unwrap();
        let w = SymplecticWord::parabolic(a, b).unwrap().then(&SymplecticWord::fourier(2)).unwrap();
        let prod = &w.matrix().unwrap() * &w.inverse().unwrap().matrix().unwrap();
        assert!(prod.is_identity());
    }

    #[test]
    fn rejects_non_symplectic_parabolic() {
        let a = RationalMatrix::from_ints(&[&[1, 1], &[0, 1]]);
        let b = RationalMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        let e = SymplecticWord::parabolic(a, b).unwrap_err();
        assert!(matches!(e, Error::UnsupportedWord { index: 0, .. }));
    }

    #[test]
    fn words_from_matrices() {
        let g = SymplecticWord::sh_inverse(1).direct_matrix().unwrap();
        let w = SymplecticWord::from_matrix(&g).unwrap();
        assert_eq!(w.matrix().unwrap(), g);
        let k = RationalMatrix::from_rows(vec![
            vec![GaussRat::from_ratio(3, 5), GaussRat::from_ratio(4, 5)],
            vec![GaussRat::from_ratio(-4, 5), GaussRat::from_ratio(3, 5)],
        ])
        .unwrap();
        assert_eq!(SymplecticWord::from_matrix(&k).unwrap().matrix().unwrap(), k);
        let id = RationalMatrix::identity(4);
        assert!(SymplecticWord::from_matrix(&id).unwrap().matrix().unwrap().is_identity());
    }
}
