//! Ring laws and homomorphism properties of the exact scalars, polynomials and
//! linear solver.

use doubling_zeta::decimal::to_decimal;
use doubling_zeta::polyalg::{solve_linear_exact, MatrixPolynomial, Monomial, RationalMatrix, Shape};
use doubling_zeta::{ExactScalar, GaussRat};
use proptest::prelude::*;

fn gauss() -> impl Strategy<Value = GaussRat> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4)
        .prop_map(|(a, b, c, d)| &GaussRat::from_ratio(a, b) + &(&GaussRat::i() * &GaussRat::from_ratio(c, d)))
}

fn scalar() -> impl Strategy<Value = ExactScalar> {
    prop::collection::vec((gauss(), -4i32..=4, -4i32..=4), 0..4).prop_map(|ts| {
        ts.into_iter()
            .map(|(c, e2, epi)| ExactScalar::monomial(c, e2, epi))
            .fold(ExactScalar::zero(), |acc, t| &acc + &t)
    })
}

const SHAPE: Shape = Shape { n: 1, k: 2, blocks: 1 };

fn poly() -> impl Strategy<Value = MatrixPolynomial> {
    poly_with_exponents(2)
}

/// Lower degree, for properties whose cost grows quickly with it.
fn small_poly() -> impl Strategy<Value = MatrixPolynomial> {
    poly_with_exponents(1)
}

fn poly_with_exponents(max: u32) -> impl Strategy<Value = MatrixPolynomial> {
    let term = (prop::collection::vec(0u32..=max, 4), -3i64..=3);
    prop::collection::vec(term, 0..5).prop_map(|ts| {
        MatrixPolynomial::from_terms(
            SHAPE,
            ts.into_iter().map(|(e, c)| {
                let m = Monomial::from_pairs(e.into_iter().enumerate().collect());
                (m, ExactScalar::from_int(c))
            }),
        )
    })
}

fn matrix(n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(gauss(), n * n).prop_map(move |xs| {
        let mut m = RationalMatrix::zeros(n, n);
        for (i, x) in xs.into_iter().enumerate() {
            m.set(i / n, i % n, x);
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_ring_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &ExactScalar::one(), a.clone());
    }

    #[test]
    fn monomials_invert(c in gauss(), e2 in -5i32..=5, epi in -5i32..=5) {
        prop_assume!(!c.is_zero());
        let x = ExactScalar::monomial(c, e2, epi);
        prop_assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn decimal_tracks_floating_point(a in scalar()) {
        let (re, im) = a.to_f64_pair();
        let d = to_decimal(&a, 20);
        let scale = re.abs().max(im.abs()).max(1.0);
        prop_assert!((d.re.to_f64() - re).abs() <= 1e-12 * scale);
        prop_assert!((d.im.to_f64() - im).abs() <= 1e-12 * scale);
    }

    #[test]
    fn polynomial_ring_laws(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn derivative_is_a_derivation(p in poly(), q in poly(), v in 0usize..4) {
        let lhs = (&p * &q).derivative(v);
        let rhs = &(&p.derivative(v) * &q) + &(&p * &q.derivative(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly(), q in poly(), pt in prop::collection::vec(gauss(), 4)) {
        let lhs = (&p * &q).evaluate(&pt).unwrap();
        let rhs = &p.evaluate(&pt).unwrap() * &q.evaluate(&pt).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = (&p + &q).evaluate(&pt).unwrap();
        let rhs = &p.evaluate(&pt).unwrap() + &q.evaluate(&pt).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_homomorphism(p in small_poly(), q in small_poly(), g in matrix(4)) {
        let lhs = (&p * &q).right(&g).unwrap();
        let rhs = &p.right(&g).unwrap() * &q.right(&g).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn right_action_composes(p in small_poly(), g in matrix(4), h in matrix(4)) {
        // P(x g)(x h) = P(x h g)
        let lhs = p.right(&g).unwrap().right(&h).unwrap();
        prop_assert_eq!(lhs, p.right(&(&h * &g)).unwrap());
    }

    #[test]
    fn row_action_matches_evaluation(p in poly(), a in matrix(2), pt in prop::collection::vec(gauss(), 4)) {
        // SHAPE read as 2 rows × 2 columns: (P(a x))(x₀) = P(a x₀)
        let p = p.reshape(Shape::single(2, 1));
        let x0 = RationalMatrix::from_rows(vec![pt[..2].to_vec(), pt[2..].to_vec()]).unwrap();
        let lhs = p.left(&a).unwrap().evaluate_matrix(&x0).unwrap();
        prop_assert_eq!(lhs, p.evaluate_matrix(&(&a * &x0)).unwrap());
    }

    #[test]
    fn solver_satisfies_system(a in prop::collection::vec(gauss(), 12), x in prop::collection::vec(gauss(), 4)) {
        let rows: Vec<Vec<GaussRat>> = a.chunks(4).map(|r| r.to_vec()).collect();
        let b: Vec<GaussRat> = rows
            .iter()
            .map(|r| r.iter().zip(&x).fold(GaussRat::zero(), |acc, (u, v)| &acc + &(u * v)))
            .collect();
        let sol = solve_linear_exact(&rows, &b, 4).unwrap();
        let m = RationalMatrix::from_rows(rows.clone()).unwrap();
        prop_assert_eq!(sol.rank, m.rank());
        prop_assert_eq!(sol.nullspace.len(), 4 - sol.rank);
        let apply = |v: &[GaussRat]| -> Vec<GaussRat> {
            rows.iter()
                .map(|r| r.iter().zip(v).fold(GaussRat::zero(), |acc, (u, w)| &acc + &(u * w)))
                .collect()
        };
        prop_assert_eq!(apply(&sol.particular), b);
        for k in &sol.nullspace {
            prop_assert!(apply(k).iter().all(GaussRat::is_zero));
        }
    }
}

#[test]
fn inconsistent_system_is_rejected() {
    let a = vec![vec![GaussRat::one()], vec![GaussRat::one()]];
    let b = vec![GaussRat::zero(), GaussRat::one()];
    assert!(solve_linear_exact(&a, &b, 1).is_err());
}
