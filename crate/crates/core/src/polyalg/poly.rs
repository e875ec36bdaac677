use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::polyalg::matrix::RationalMatrix;
use crate::scalar::{ExactScalar, GaussRat};

/// Which of the two stacked n×2k blocks a variable lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    X1,
    X2,
}

impl Block {
    pub fn index(self) -> usize {
        match self {
            Block::X1 => 0,
            Block::X2 => 1,
        }
    }
}

/// A real matrix coordinate; `row` and `col` are zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarId {
    pub block: Block,
    pub row: usize,
    pub col: usize,
}

/// Variable layout: `blocks` stacked blocks of `n` rows and `2k` columns.
///
/// The flat index of `(block, row, col)` is `(block·n + row)·2k + col`, so a
/// two-block shape is also the single matrix `X ∈ M_{2n,2k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    pub n: usize,
    pub k: usize,
    pub blocks: usize,
}

impl Shape {
    pub fn single(n: usize, k: usize) -> Self {
        Shape { n, k, blocks: 1 }
    }

    pub fn double(n: usize, k: usize) -> Self {
        Shape { n, k, blocks: 2 }
    }

    pub fn rows(&self) -> usize {
        self.blocks * self.n
    }

    pub fn cols(&self) -> usize {
        2 * self.k
    }

    pub fn nvars(&self) -> usize {
        self.rows() * self.cols()
    }

    /// Flat index of the entry at a global row.
    pub fn at(&self, row: usize, col: usize) -> usize {
        row * self.cols() + col
    }

    pub fn index(&self, v: VarId) -> usize {
        self.at(v.block.index() * self.n + v.row, v.col)
    }

    pub fn var_id(&self, idx: usize) -> VarId {
        let (row, col) = (idx / self.cols(), idx % self.cols());
        VarId {
            block: if row < self.n { Block::X1 } else { Block::X2 },
            row: row % self.n,
            col,
        }
    }

    /// The same block geometry viewed as one block of `rows()` rows.
    pub fn flattened(&self) -> Shape {
        Shape::single(self.rows(), self.k)
    }
}

/// Sparse exponent vector: `(variable, exponent)` pairs sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: usize) -> Self {
        Monomial(vec![(v as u32, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(usize, u32)>) -> Self {
        pairs.sort_unstable();
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 == v as u32 => last.1 += e,
                _ => out.push((v as u32, e)),
            }
        }
        Monomial(out)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(v, e)| (v as usize, e))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn exponent(&self, v: usize) -> u32 {
        self.0
            .binary_search_by_key(&(v as u32), |p| p.0)
            .map_or(0, |i| self.0[i].1)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Lowers the exponent of `v` by one; `None` if `v` is absent.
    pub fn reduce(&self, v: usize) -> Option<Monomial> {
        let i = self.0.binary_search_by_key(&(v as u32), |p| p.0).ok()?;
        let mut out = self.0.clone();
        if out[i].1 == 1 {
            out.remove(i);
        } else {
            out[i].1 -= 1;
        }
        Some(Monomial(out))
    }

    /// Splits into the part in variables satisfying `pred` and the rest.
    pub fn split(&self, pred: impl Fn(usize) -> bool) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().partition(|p| pred(p.0 as usize));
        (Monomial(a), Monomial(b))
    }

    /// Degree in the variables satisfying `pred`.
    pub fn degree_in(&self, pred: impl Fn(usize) -> bool) -> u32 {
        self.0
            .iter()
            .filter(|p| pred(p.0 as usize))
            .map(|p| p.1)
            .sum()
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.pairs().all(|(v, e)| o.exponent(v) >= e)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        Monomial::from_pairs(
            o.pairs()
                .map(|(v, e)| (v, e - self.exponent(v)))
                .collect(),
        )
    }
}

/// A linear form `Σ c_w x_w`.
pub type LinearForm = Vec<(usize, GaussRat)>;

/// Sparse polynomial with exact coefficients in the entries of one or two
/// real n×2k matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPolynomial {
    shape: Shape,
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl MatrixPolynomial {
    pub fn zero(shape: Shape) -> Self {
        MatrixPolynomial {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(shape: Shape, c: ExactScalar) -> Self {
        let mut p = Self::zero(shape);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one(shape: Shape) -> Self {
        Self::constant(shape, ExactScalar::one())
    }

    pub fn var(shape: Shape, v: VarId) -> Self {
        Self::var_index(shape, shape.index(v))
    }

    pub fn var_index(shape: Shape, v: usize) -> Self {
        assert!(v < shape.nvars(), "variable {v} outside shape");
        let mut p = Self::zero(shape);
        p.add_term(Monomial::var(v), ExactScalar::one());
        p
    }

    pub fn linear(shape: Shape, form: &LinearForm) -> Self {
        let mut p = Self::zero(shape);
        for (v, c) in form {
            p.add_term(Monomial::var(*v), ExactScalar::from_gauss(c.clone()));
        }
        p
    }

    pub fn from_terms(shape: Shape, terms: impl IntoIterator<Item = (Monomial, ExactScalar)>) -> Self {
        let mut p = Self::zero(shape);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.pairs().all(|(v, _)| v < self.shape.nvars()));
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn constant_term(&self) -> ExactScalar {
        self.coefficient(&Monomial::one())
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn block_degree(&self, block: Block) -> u32 {
        let s = self.shape;
        self.terms
            .keys()
            .map(|m| m.degree_in(|v| s.var_id(v).block == block))
            .max()
            .unwrap_or(0)
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        self.filter(|m| m.degree() == d)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        MatrixPolynomial {
            shape: self.shape,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.shape);
        }
        MatrixPolynomial {
            shape: self.shape,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn scale_gauss(&self, c: &GaussRat) -> Self {
        self.scale(&ExactScalar::from_gauss(c.clone()))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &ExactScalar) -> Self {
        let mut p = Self::zero(self.shape);
        for (a, x) in &self.terms {
            p.add_term(a.mul(m), x * c);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.shape);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut p = Self::zero(self.shape);
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                p.add_term(m.reduce(v).expect("present"), c * &ExactScalar::from_int(e as i64));
            }
        }
        p
    }

    /// `Σ_r ∂²/∂x_{ir}∂x_{jr}` on the given block.
    pub fn delta_block(&self, block: Block, i: usize, j: usize) -> Result<Self> {
        let s = self.shape;
        if block.index() >= s.blocks || i >= s.n || j >= s.n {
            return Err(Error::Shape(format!("Δ_({},{}) outside {} rows", i + 1, j + 1, s.n)));
        }
        let mut out = Self::zero(s);
        for r in 0..s.cols() {
            let a = s.index(VarId { block, row: i, col: r });
            let b = s.index(VarId { block, row: j, col: r });
            out = &out + &self.derivative(a).derivative(b);
        }
        Ok(out)
    }

    /// `Σ_r ∂²/∂x_{ir}∂x_{jr}` with `i, j` global rows of the flattened matrix.
    pub fn delta_ij(&self, i: usize, j: usize) -> Result<Self> {
        let s = self.shape;
        if i >= s.rows() || j >= s.rows() {
            return Err(Error::Shape(format!("Δ_({},{}) outside {} rows", i + 1, j + 1, s.rows())));
        }
        let mut out = Self::zero(s);
        for r in 0..s.cols() {
            out = &out + &self.derivative(s.at(i, r)).derivative(s.at(j, r));
        }
        Ok(out)
    }

    /// True when every `Δ_ij` on every block annihilates the polynomial.
    pub fn is_pluriharmonic(&self) -> Result<bool> {
        for b in [Block::X1, Block::X2].into_iter().take(self.shape.blocks) {
            for i in 0..self.shape.n {
                for j in i..self.shape.n {
                    if !self.delta_block(b, i, j)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Evaluates at a point given by one ℚ(i) value per variable.
    pub fn evaluate(&self, point: &[GaussRat]) -> Result<ExactScalar> {
        if point.len() != self.shape.nvars() {
            return Err(Error::Shape(format!(
                "point of length {} for {} variables",
                point.len(),
                self.shape.nvars()
            )));
        }
        let mut acc = ExactScalar::zero();
        for (m, c) in &self.terms {
            let mut v = GaussRat::one();
            for (x, e) in m.pairs() {
                v = &v * &point[x].pow(e as i64)?;
            }
            acc += &c.scale_gauss(&v);
        }
        Ok(acc)
    }

    /// Evaluates at a `rows() × 2k` matrix.
    pub fn evaluate_matrix(&self, x: &RationalMatrix) -> Result<ExactScalar> {
        let s = self.shape;
        if x.rows() != s.rows() || x.cols() != s.cols() {
            return Err(Error::Shape("evaluation matrix".into()));
        }
        let pt: Vec<GaussRat> = (0..s.nvars())
            .map(|v| x.get(v / s.cols(), v % s.cols()).clone())
            .collect();
        self.evaluate(&pt)
    }

    /// Replaces each variable `x_v` by the linear form `images[v]` in `target`.
    pub fn substitute(&self, target: Shape, images: &[LinearForm]) -> Self {
        assert_eq!(images.len(), self.shape.nvars());
        if target == self.shape {
            return self.substitute_by_groups(images);
        }
        let mut cache: HashMap<(usize, u32), MatrixPolynomial> = HashMap::new();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut prod = Self::constant(target, c.clone());
            for (v, e) in m.pairs() {
                let f = cache
                    .entry((v, e))
                    .or_insert_with(|| Self::linear(target, &images[v]).pow(e));
                prod = &prod * f;
            }
            out = &out + &prod;
        }
        out
    }

    /// Substitutes one closed group of variables at a time. A group is a
    /// connected component of "`w` occurs in the image of `v`", so images of
    /// a group never reintroduce variables of a later group. Each group
    /// monomial is expanded once and reused across all terms containing it.
    fn substitute_by_groups(&self, images: &[LinearForm]) -> Self {
        let nv = images.len();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], mut v: usize) -> usize {
            while p[v] != v {
                p[v] = p[p[v]];
                v = p[v];
            }
            v
        }
        for (v, form) in images.iter().enumerate() {
            for (w, _) in form {
                let (a, b) = (find(&mut parent, v), find(&mut parent, *w));
                parent[a] = b;
            }
        }
        let root: Vec<usize> = (0..nv).map(|v| find(&mut parent, v)).collect();
        let fixed = |v: usize| images[v].len() == 1 && images[v][0].0 == v && images[v][0].1.is_one();
        let mut roots: Vec<usize> = (0..nv).filter(|&v| !fixed(v)).map(|v| root[v]).collect();
        roots.sort_unstable();
        roots.dedup();

        let mut cur = self.clone();
        for g in roots {
            let mut cache: HashMap<Monomial, Vec<(Monomial, GaussRat)>> = HashMap::new();
            let mut next = Self::zero(self.shape);
            for (m, c) in &cur.terms {
                let (mg, rest) = m.split(|v| root[v] == g);
                if mg.is_one() {
                    next.add_term(m.clone(), c.clone());
                    continue;
                }
                let img = cache.entry(mg).or_insert_with_key(|mg| {
                    let mut prod = Self::one(self.shape);
                    for (v, e) in mg.pairs() {
                        prod = &prod * &Self::linear(self.shape, &images[v]).pow(e);
                    }
                    prod.gauss_coefficients().expect("linear images have ℚ(i) coefficients")
                });
                for (mi, ci) in img.iter() {
                    next.add_term(mi.mul(&rest), c.scale_gauss(ci));
                }
            }
            cur = next;
        }
        cur
    }

    /// `P(ᵗa x)` where `a` acts on all `rows()` rows.
    pub fn left_transpose(&self, a: &RationalMatrix) -> Result<Self> {
        self.left(&a.transpose())
    }

    /// `P(a x)` where `a` acts on all `rows()` rows.
    pub fn left(&self, a: &RationalMatrix) -> Result<Self> {
        let s = self.shape;
        let m = s.rows();
        if a.rows() != m || a.cols() != m {
            return Err(Error::Shape(format!("{}x{} acting on {m} rows", a.rows(), a.cols())));
        }
        let images: Vec<LinearForm> = (0..s.nvars())
            .map(|v| {
                let (r, c) = (v / s.cols(), v % s.cols());
                (0..m)
                    .filter(|&q| !a.get(r, q).is_zero())
                    .map(|q| (s.at(q, c), a.get(r, q).clone()))
                    .collect()
            })
            .collect();
        Ok(self.substitute(s, &images))
    }

    /// `P(x γ)` for a `2k × 2k` matrix `γ`, applied to every block.
    pub fn right(&self, g: &RationalMatrix) -> Result<Self> {
        let s = self.shape;
        let k2 = s.cols();
        if g.rows() != k2 || g.cols() != k2 {
            return Err(Error::Shape(format!("{}x{} acting on {k2} columns", g.rows(), g.cols())));
        }
        let images: Vec<LinearForm> = (0..s.nvars())
            .map(|v| {
                let (r, c) = (v / k2, v % k2);
                (0..k2)
                    .filter(|&q| !g.get(q, c).is_zero())
                    .map(|q| (s.at(r, q), g.get(q, c).clone()))
                    .collect()
            })
            .collect();
        Ok(self.substitute(s, &images))
    }

    /// `P(ᵗa x)` on one block, other block untouched.
    pub fn left_transpose_block(&self, block: Block, a: &RationalMatrix) -> Result<Self> {
        let full = self.block_matrix(block, a)?;
        self.left_transpose(&full)
    }

    fn block_matrix(&self, block: Block, a: &RationalMatrix) -> Result<RationalMatrix> {
        let s = self.shape;
        if a.rows() != s.n || a.cols() != s.n || block.index() >= s.blocks {
            return Err(Error::Shape("block action".into()));
        }
        let mut full = RationalMatrix::identity(s.rows());
        full.paste(block.index() * s.n, block.index() * s.n, a);
        Ok(full)
    }

    /// Relabels the variables into another shape, `map[v]` being the new index.
    pub fn relabel(&self, target: Shape, map: impl Fn(usize) -> usize) -> Self {
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            out.add_term(
                Monomial::from_pairs(m.pairs().map(|(v, e)| (map(v), e)).collect()),
                c.clone(),
            );
        }
        out
    }

    /// Places a single-block polynomial on `block` of a two-block shape.
    pub fn embed(&self, block: Block) -> Self {
        let s = self.shape;
        assert_eq!(s.blocks, 1);
        let off = block.index() * s.n * s.cols();
        self.relabel(Shape::double(s.n, s.k), |v| v + off)
    }

    /// Restricts a two-block polynomial to the diagonal `x₁ = x₂`.
    pub fn restrict_diagonal(&self) -> Self {
        let s = self.shape;
        assert_eq!(s.blocks, 2);
        let half = s.n * s.cols();
        self.relabel(Shape::single(s.n, s.k), |v| v % half)
    }

    /// Reinterprets the variables under a shape with the same count.
    pub fn reshape(&self, target: Shape) -> Self {
        assert_eq!(target.nvars(), self.shape.nvars());
        self.relabel(target, |v| v)
    }

    pub fn map_coefficients(&self, f: impl Fn(&ExactScalar) -> ExactScalar) -> Self {
        let mut out = Self::zero(self.shape);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// The coefficients as Gaussian rationals, if they all are.
    pub fn gauss_coefficients(&self) -> Option<Vec<(Monomial, GaussRat)>> {
        self.terms
            .iter()
            .map(|(m, c)| c.as_gauss().map(|g| (m.clone(), g)))
            .collect()
    }

    fn check_shape(&self, o: &Self) {
        assert_eq!(self.shape, o.shape, "polynomial shapes differ");
    }
}

impl Add for &MatrixPolynomial {
    type Output = MatrixPolynomial;
    fn add(self, o: &MatrixPolynomial) -> MatrixPolynomial {
        self.check_shape(o);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MatrixPolynomial {
    type Output = MatrixPolynomial;
    fn sub(self, o: &MatrixPolynomial) -> MatrixPolynomial {
        self.check_shape(o);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MatrixPolynomial {
    type Output = MatrixPolynomial;
    fn mul(self, o: &MatrixPolynomial) -> MatrixPolynomial {
        self.check_shape(o);
        let mut out = MatrixPolynomial::zero(self.shape);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl Neg for &MatrixPolynomial {
    type Output = MatrixPolynomial;
    fn neg(self) -> MatrixPolynomial {
        self.map_coefficients(|c| -c)
    }
}

impl fmt::Display for MatrixPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let s = self.shape;
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "[{c}]")?;
            for (v, e) in m.pairs() {
                let id = s.var_id(v);
                write!(f, "*x{}_{}_{}", id.block.index() + 1, id.row + 1, id.col + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// The coordinates `z = u + iv` and `z̄ = u − iv` of one block, as n×k
/// matrices of linear polynomials.
#[derive(Clone, Debug)]
pub struct ComplexCoordinate {
    pub z: Vec<Vec<MatrixPolynomial>>,
    pub zbar: Vec<Vec<MatrixPolynomial>>,
}

impl ComplexCoordinate {
    pub fn new(shape: Shape, block: Block) -> Self {
        let i = GaussRat::i();
        let k = shape.k;
        let make = |sign: i64| {
            (0..shape.n)
                .map(|r| {
                    (0..k)
                        .map(|c| {
                            let u = shape.index(VarId { block, row: r, col: c });
                            let v = shape.index(VarId { block, row: r, col: k + c });
                            MatrixPolynomial::linear(
                                shape,
                                &vec![(u, GaussRat::one()), (v, &i * &GaussRat::from_int(sign))],
                            )
                        })
                        .collect()
                })
                .collect()
        };
        ComplexCoordinate {
            z: make(1),
            zbar: make(-1),
        }
    }
}

/// Determinant of the upper-left `j × j` block of a square matrix of polynomials.
pub fn leading_minor(m: &[Vec<MatrixPolynomial>], j: usize) -> Result<MatrixPolynomial> {
    let first = m
        .first()
        .and_then(|r| r.first())
        .ok_or_else(|| Error::Shape("empty polynomial matrix".into()))?;
    if j > m.len() || m.iter().any(|r| r.len() != m.len()) {
        return Err(Error::Shape(format!("minor of size {j} of a {}-square matrix", m.len())));
    }
    let cols: Vec<usize> = (0..j).collect();
    Ok(minor_expand(m, 0, &cols, first.shape()))
}

/// Laplace expansion along row `row` over the remaining columns.
fn minor_expand(m: &[Vec<MatrixPolynomial>], row: usize, cols: &[usize], shape: Shape) -> MatrixPolynomial {
    if cols.is_empty() {
        return MatrixPolynomial::one(shape);
    }
    let mut acc = MatrixPolynomial::zero(shape);
    for (pos, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = &m[row][c] * &minor_expand(m, row + 1, &rest, shape);
        acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(s: Shape, r: usize, c: usize) -> MatrixPolynomial {
        MatrixPolynomial::var(s, VarId { block: Block::X1, row: r, col: c })
    }

    #[test]
    fn laplacian_of_square() {
        let s = Shape::single(1, 1);
        let p = x(s, 0, 0).pow(2);
        assert_eq!(p.delta_ij(0, 0).unwrap(), MatrixPolynomial::constant(s, ExactScalar::from_int(2)));
        assert!(MatrixPolynomial::constant(s, ExactScalar::from_int(5)).delta_ij(0, 0).unwrap().is_zero());
    }

    #[test]
    fn holomorphic_square_is_harmonic() {
        let s = Shape::single(1, 1);
        let z = &ComplexCoordinate::new(s, Block::X1).z[0][0];
        assert!(z.pow(2).delta_ij(0, 0).unwrap().is_zero());
    }

    #[test]
    fn column_swap_relabels() {
        let s = Shape::single(1, 1);
        let swap = RationalMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(x(s, 0, 0).right(&swap).unwrap(), x(s, 0, 1));
    }

    #[test]
    fn generic_two_by_two_minor() {
        let s = Shape::single(2, 1);
        let m = vec![vec![x(s, 0, 0), x(s, 0, 1)], vec![x(s, 1, 0), x(s, 1, 1)]];
        let d = leading_minor(&m, 2).unwrap();
        let expect = &(&x(s, 0, 0) * &x(s, 1, 1)) - &(&x(s, 0, 1) * &x(s, 1, 0));
        assert_eq!(d, expect);
        assert_eq!(leading_minor(&m, 1).unwrap(), x(s, 0, 0));
        assert_eq!(leading_minor(&m, 0).unwrap(), MatrixPolynomial::one(s));
    }

    #[test]
    fn determinant_of_z_block_scales_by_det() {
        let s = Shape::single(2, 2);
        let zc = ComplexCoordinate::new(s, Block::X1);
        let det = leading_minor(&zc.z, 2).unwrap();
        let a = RationalMatrix::from_ints(&[&[2, 3], &[-1, 5]]);
        let lhs = det.left_transpose(&a).unwrap();
        let rhs = det.scale_gauss(&a.det().unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn diagonal_restriction_merges_blocks() {
        let s = Shape::double(1, 1);
        let p = &MatrixPolynomial::var(s, VarId { block: Block::X1, row: 0, col: 0 })
            * &MatrixPolynomial::var(s, VarId { block: Block::X2, row: 0, col: 0 });
        let d = p.restrict_diagonal();
        assert_eq!(d, x(Shape::single(1, 1), 0, 0).pow(2));
    }
}
