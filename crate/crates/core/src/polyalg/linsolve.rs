//! Exact linear solving over ℚ(i).
//!
//! Rows are scaled to Gaussian integers and reduced by fraction-free
//! elimination: `rowᵢ ← p·rowᵢ − f·row_pivot`, after which the rational
//! content of the row is divided out. Rows are kept sparse and bucketed by
//! leading column, so only rows meeting the pivot column are touched.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::GaussRat;

/// Solution set of `A v = b`.
#[derive(Clone, Debug)]
pub struct Solution {
    pub rank: usize,
    /// A particular solution, free variables set to zero.
    pub particular: Vec<GaussRat>,
    /// A basis of the kernel of `A`.
    pub nullspace: Vec<Vec<GaussRat>>,
}

#[derive(Clone, Debug, PartialEq)]
struct GInt(BigInt, BigInt);

impl GInt {
    fn is_zero(&self) -> bool {
        self.0.is_zero() && self.1.is_zero()
    }

    fn mul(&self, o: &GInt) -> GInt {
        GInt(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }

    fn sub(&self, o: &GInt) -> GInt {
        GInt(&self.0 - &o.0, &self.1 - &o.1)
    }

    fn to_gauss(&self) -> GaussRat {
        GaussRat::new(
            BigRational::from_integer(self.0.clone()),
            BigRational::from_integer(self.1.clone()),
        )
    }
}

/// Sparse row sorted by column; column `cols` holds the right-hand side.
type Row = Vec<(usize, GInt)>;

fn to_integer_row(row: &[GaussRat], rhs: &GaussRat) -> Row {
    let mut l = rhs.denom_lcm();
    for x in row {
        l = l.lcm(&x.denom_lcm());
    }
    let q = BigRational::from_integer(l);
    row.iter()
        .chain(std::iter::once(rhs))
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| {
            let y = x.scale(&q);
            (j, GInt(y.re.to_integer(), y.im.to_integer()))
        })
        .collect()
}

fn remove_content(row: &mut Row) {
    let mut g = BigInt::zero();
    for (_, x) in row.iter() {
        g = g.gcd(&x.0).gcd(&x.1);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, x) in row.iter_mut() {
        x.0 /= &g;
        x.1 /= &g;
    }
}

/// `p·row − f·pivot` with the leading column cancelled.
fn eliminate(row: &Row, pivot: &Row) -> Row {
    let p = &pivot[0].1;
    let f = &row[0].1;
    let (mut i, mut j) = (1, 1);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, row[i - 1].1.mul(p))
        } else if cj < ci {
            j += 1;
            (cj, GInt(BigInt::zero(), BigInt::zero()).sub(&pivot[j - 1].1.mul(f)))
        } else {
            i += 1;
            j += 1;
            (ci, row[i - 1].1.mul(p).sub(&pivot[j - 1].1.mul(f)))
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    remove_content(&mut out);
    out
}

/// Solves `a · v = b`, where `a` has `cols` columns.
pub fn solve_linear_exact(a: &[Vec<GaussRat>], b: &[GaussRat], cols: usize) -> Result<Solution> {
    if a.len() != b.len() || a.iter().any(|r| r.len() != cols) {
        return Err(Error::Shape("linear system dimensions".into()));
    }
    // bucket rows by leading column, remembering their original index
    let mut buckets: BTreeMap<usize, Vec<(usize, Row)>> = BTreeMap::new();
    for (idx, (r, x)) in a.iter().zip(b).enumerate() {
        let mut row = to_integer_row(r, x);
        remove_content(&mut row);
        if let Some(&(c, _)) = row.first() {
            buckets.entry(c).or_default().push((idx, row));
        }
    }
    let mut echelon: Vec<(usize, Row)> = Vec::new();
    while let Some((c, mut group)) = buckets.pop_first() {
        if c == cols {
            return Err(Error::Inconsistent { row: group[0].0 });
        }
        let best = (0..group.len())
            .min_by_key(|&g| group[g].1.len())
            .expect("non-empty bucket");
        let (_, pivot) = group.swap_remove(best);
        for (idx, row) in group {
            let reduced = eliminate(&row, &pivot);
            if let Some(&(nc, _)) = reduced.first() {
                buckets.entry(nc).or_default().push((idx, reduced));
            }
        }
        echelon.push((c, pivot));
    }
    let solve_back = |x: &mut Vec<GaussRat>, with_rhs: bool| -> Result<()> {
        for (pc, row) in echelon.iter().rev() {
            let mut acc = GaussRat::zero();
            let mut lead = GaussRat::zero();
            for (j, v) in row {
                if j == pc {
                    lead = v.to_gauss();
                } else if *j == cols {
                    if with_rhs {
                        acc += &v.to_gauss();
                    }
                } else if !x[*j].is_zero() {
                    acc -= &(&v.to_gauss() * &x[*j]);
                }
            }
            x[*pc] = &acc * &lead.inv()?;
        }
        Ok(())
    };
    let mut x = vec![GaussRat::zero(); cols];
    solve_back(&mut x, true)?;
    let pivot_cols: Vec<usize> = echelon.iter().map(|e| e.0).collect();
    let mut nullspace = Vec::new();
    for f in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![GaussRat::zero(); cols];
        v[f] = GaussRat::one();
        solve_back(&mut v, false)?;
        nullspace.push(v);
    }
    Ok(Solution {
        rank: echelon.len(),
        particular: x,
        nullspace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    #[test]
    fn identity_system() {
        let a = vec![vec![g(1), g(0)], vec![g(0), g(1)]];
        let s = solve_linear_exact(&a, &[g(3), g(-5)], 2).unwrap();
        assert_eq!(s.particular, vec![g(3), g(-5)]);
        assert!(s.nullspace.is_empty());
    }

    #[test]
    fn two_by_two() {
        let a = vec![vec![g(1), g(1)], vec![g(1), g(-1)]];
        let s = solve_linear_exact(&a, &[g(2), g(0)], 2).unwrap();
        assert_eq!(s.particular, vec![g(1), g(1)]);
    }

    #[test]
    fn inconsistent_reports_row() {
        let a = vec![vec![g(1), g(1)], vec![g(2), g(2)]];
        match solve_linear_exact(&a, &[g(1), g(3)], 2) {
            Err(Error::Inconsistent { row }) => assert_eq!(row, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rank_deficient_with_gaussian_entries() {
        let i = GaussRat::i();
        let a = vec![
            vec![g(1), i.clone(), g(0)],
            vec![i.clone(), g(-1), g(0)],
            vec![g(0), g(0), GaussRat::from_ratio(1, 3)],
        ];
        let b = [g(2), &i * &g(2), g(1)];
        let s = solve_linear_exact(&a, &b, 3).unwrap();
        assert_eq!(s.rank, 2);
        assert_eq!(s.nullspace.len(), 1);
        for (row, rhs) in a.iter().zip(&b) {
            let mut lhs = GaussRat::zero();
            let mut k = GaussRat::zero();
            for (x, (p, n)) in row.iter().zip(s.particular.iter().zip(&s.nullspace[0])) {
                lhs += &(x * p);
                k += &(x * n);
            }
            assert_eq!(&lhs, rhs);
            assert!(k.is_zero());
        }
    }
}
