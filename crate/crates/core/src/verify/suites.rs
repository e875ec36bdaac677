use num_bigint::BigInt;
use num_rational::BigRational;

use crate::constants::{
    dim_gl, dim_lambda, i_moment, i_moment_closed_form, pairing_q_qtilde, wfd_assembly,
    zeta_closed_form,
};
use crate::constructions::{
    build_i, build_p_hol, build_p_prime, build_q, build_qtilde, evaluation_point, gram,
    harmonic_projection, HarmonicProjection,
};
use crate::error::{Error, Result};
use crate::gaussian::SchwartzPolyGaussian;
use crate::polyalg::{Block, MatrixPolynomial, RationalMatrix};
use crate::scalar::{ExactScalar, GaussRat};
use crate::weil::{act_group, matrix_coefficient, pairing, SymplecticWord};

use super::sample::{random_invertible, random_torus, random_unitriangular, rng_for};
use super::{cayley_orthogonal, gauss, Ctx, Suite};

pub(crate) fn run(ctx: &mut Ctx) {
    match ctx.suite {
        Suite::Pluriharmonic => pluriharmonic(ctx),
        Suite::Iinv => iinv(ctx),
        Suite::Igamma => {
            let w = ctx.w;
            ctx.scalar("", i_moment(w), i_moment_closed_form(w));
        }
        Suite::Wi => wi(ctx),
        Suite::P0 => p0(ctx),
        Suite::Zw1 => zw1(ctx),
        Suite::Cr => cr(ctx),
        Suite::SdK => sdk(ctx),
        Suite::WfdMain => {
            let w = ctx.w;
            ctx.scalar("", zeta_closed_form(w).map(|z| z.value), wfd_assembly(w));
        }
    }
}

fn int(n: &BigInt) -> ExactScalar {
    ExactScalar::from_rational(BigRational::from_integer(n.clone()))
}

fn pluriharmonic(ctx: &mut Ctx) {
    let w = ctx.w;
    for (name, p) in [("Q", build_q(w)), ("Qtilde", build_qtilde(w))] {
        let p = match p {
            Ok(p) => p,
            Err(e) => return ctx.error(name, e),
        };
        for i in 0..w.n {
            for j in i..w.n {
                ctx.vanishes(&format!("{name}/delta{}{}", i + 1, j + 1), p.delta_ij(i, j));
            }
        }
    }
}

fn iinv(ctx: &mut Ctx) {
    let w = ctx.w.clone();
    let n = w.n;
    for (name, p) in [("Q", build_q(&w)), ("Qtilde", build_qtilde(&w))] {
        let p = match p {
            Ok(p) => p,
            Err(e) => return ctx.error(name, e),
        };
        let label = format!("{name}/unipotent");
        let mut rng = rng_for(ctx.opts.seed, &ctx.id(&label));
        let u = random_unitriangular(&mut rng, n);
        ctx.poly(&label, p.left_transpose(&u), Ok(p.clone()));

        let label = format!("{name}/torus");
        let mut rng = rng_for(ctx.opts.seed, &ctx.id(&label));
        let a = random_torus(&mut rng, n);
        let mut chi = GaussRat::one();
        for (aj, tj) in a.iter().zip(&w.t) {
            chi = &chi * &aj.pow(tj - w.k as i64).expect("nonzero torus entry");
        }
        let lhs = p.left_transpose(&RationalMatrix::diagonal(&a));
        ctx.poly(&label, lhs, Ok(p.scale_gauss(&chi)));
    }
    let i_poly = match build_i(&w) {
        Ok(p) => p,
        Err(e) => return ctx.error("I", e),
    };
    for sample in 0..5 {
        let label = format!("I/sample{sample}");
        let mut rng = rng_for(ctx.opts.seed, &ctx.id(&label));
        let a = random_invertible(&mut rng, n);
        let lhs = a
            .transpose()
            .inverse()
            .and_then(|ait| i_poly.left(&a.direct_sum(&ait)));
        ctx.poly(&label, lhs, Ok(i_poly.clone()));
    }
}

fn wi(ctx: &mut Ctx) {
    let w = ctx.w;
    let sign = GaussRat::i_pow(-w.sum_t());
    let rhs = (|| -> Result<ExactScalar> {
        let d = int(&dim_gl(&w.t)?);
        (&i_moment(w)? * &gauss(sign.clone())).try_div(&d)
    })();
    ctx.scalar("", pairing_q_qtilde(w), rhs);
    // ω(J⁻¹) acts on φ_Q̃ by (−i)^{Σt}
    let qt = build_qtilde(w);
    let lhs = qt.clone().and_then(|q| {
        let t = act_group(
            &SymplecticWord::fourier_inverse(w.n),
            None,
            &SchwartzPolyGaussian::new(q),
        )?;
        if !t.is_standard() {
            return Err(Error::Internal("ω(J⁻¹)φ left the standard Gaussian".into()));
        }
        Ok(t.poly().clone())
    });
    ctx.poly("jinv-scalar", lhs, qt.map(|q| q.scale_gauss(&sign)));
}

fn p0(ctx: &mut Ctx) {
    let w = ctx.w;
    let d2 = 2 * w.degree();
    let p0 = match crate::weil::build_p0(w) {
        Ok(p) => p,
        Err(e) => return ctx.error("", e),
    };
    ctx.poly("leading", Ok(p0.homogeneous_part(d2)), build_p_prime(w));
    ctx.vanishes("remainder", Ok(p0.filter(|m| m.degree() > d2)));
    ctx.scalar(
        "degree",
        Ok(ExactScalar::from_int(p0.degree() as i64)),
        Ok(ExactScalar::from_int(d2 as i64)),
    );
}

fn projection(ctx: &mut Ctx) -> Option<HarmonicProjection> {
    match harmonic_projection(ctx.w, ctx.opts.budget) {
        Ok(h) => Some(h),
        Err(e) => {
            ctx.error("projection", e);
            None
        }
    }
}

fn cr(ctx: &mut Ctx) {
    let w = ctx.w.clone();
    let Some(hp) = projection(ctx) else { return };
    let s = w.double();
    for b in [Block::X1, Block::X2] {
        for i in 0..w.n {
            for j in i..w.n {
                let label = format!("harmonic-x{}-{}{}", b.index() + 1, i + 1, j + 1);
                ctx.vanishes(&label, hp.h.delta_block(b, i, j));
            }
        }
    }
    let mut ideal = MatrixPolynomial::zero(s);
    for (b, i, j, m) in &hp.multipliers {
        ideal = &ideal + &(&gram(s, *b, *b)[*i][*j] * m);
    }
    let lhs = build_p_prime(&w).map(|p| &p - &hp.h.scale(&hp.c));
    ctx.poly("ideal", lhs, Ok(ideal));
    ctx.scalar("ev", hp.h.evaluate_matrix(&evaluation_point(&w)), Ok(ExactScalar::one()));
    for sample in 0..3 {
        let label = format!("o2k/sample{sample}");
        let mut rng = rng_for(ctx.opts.seed, &ctx.id(&label));
        let g = cayley_orthogonal(&mut rng, 2 * w.k);
        ctx.poly(&label, hp.h.right(&g), Ok(hp.h.clone()));
    }
}

fn zw1(ctx: &mut Ctx) {
    let w = ctx.w.clone();
    let Some(hp) = projection(ctx) else { return };
    let n = w.n;
    let mut rng = rng_for(ctx.opts.seed, &ctx.id("levi"));
    let words = [
        ("identity", Ok(SymplecticWord::identity(n))),
        ("fourier", Ok(SymplecticWord::fourier(n))),
        ("levi", SymplecticWord::levi(random_invertible(&mut rng, n))),
    ];
    let phol = match build_p_hol(&w) {
        Ok(p) => SchwartzPolyGaussian::new(p),
        Err(e) => return ctx.error("", e),
    };
    let h = SchwartzPolyGaussian::new(hp.h.clone());
    let dl = dim_lambda(&w).map(|d| int(&d));
    for (name, g) in words {
        let g = match g {
            Ok(g) => g,
            Err(e) => {
                ctx.error(name, e);
                continue;
            }
        };
        let mc_hol = matrix_coefficient(&g, &phol);
        let rhs = match (&mc_hol, &dl) {
            (Ok(m), Ok(d)) => Ok(m * d),
            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
        };
        ctx.scalar(name, matrix_coefficient(&g, &h), rhs);
        let split = (|| -> Result<ExactScalar> {
            let q = SchwartzPolyGaussian::new(build_q(&w)?);
            let qt = SchwartzPolyGaussian::new(build_qtilde(&w)?);
            pairing(&act_group(&g, None, &q)?, &qt)
        })();
        ctx.scalar(&format!("{name}/split"), mc_hol, split);
    }
}

/// Rational unitary matrices `u = a + bi` used as elements `(a b; −b a)` of `K`.
fn unitary_samples(n: usize) -> Vec<(String, RationalMatrix)> {
    let i = GaussRat::i();
    let rot = &GaussRat::from_ratio(3, 5) + &(&i * &GaussRat::from_ratio(4, 5));
    let mut out = vec![
        ("i".to_string(), RationalMatrix::scalar(n, i.clone())),
        ("minus1".to_string(), RationalMatrix::scalar(n, -GaussRat::one())),
        ("rotation".to_string(), RationalMatrix::scalar(n, rot.clone())),
    ];
    if n >= 2 {
        let mut d = vec![GaussRat::one(); n];
        d[0] = i.clone();
        out.push(("diag-i".into(), RationalMatrix::diagonal(&d)));
        let mut perm = RationalMatrix::zeros(n, n);
        for r in 0..n {
            perm.set(r, (r + 1) % n, GaussRat::one());
        }
        out.push(("cycle".into(), perm.clone()));
        out.push(("rotation-cycle".into(), perm.scale(&rot)));
    }
    out
}

fn k_element(u: &RationalMatrix) -> Result<SymplecticWord> {
    let n = u.rows();
    let mut a = RationalMatrix::zeros(n, n);
    let mut b = RationalMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            let z = u.get(r, c);
            a.set(r, c, GaussRat::from_rational(z.re.clone()));
            b.set(r, c, GaussRat::from_rational(z.im.clone()));
        }
    }
    SymplecticWord::from_matrix(&RationalMatrix::from_blocks(&a, &b, &b.neg(), &a))
}

fn sdk(ctx: &mut Ctx) {
    let w = ctx.w.clone();
    let k = w.k as i64;
    for (pname, p) in [("Q", build_q(&w)), ("Qtilde", build_qtilde(&w))] {
        let p = match p {
            Ok(p) => p,
            Err(e) => return ctx.error(pname, e),
        };
        for (uname, u) in unitary_samples(w.n) {
            let label = format!("{pname}/{uname}");
            let lhs = k_element(&u).and_then(|g| {
                let t = act_group(&g, None, &SchwartzPolyGaussian::new(p.clone()))?;
                if !t.is_standard() {
                    return Err(Error::Internal("K-element changed the Gaussian".into()));
                }
                Ok(t.poly().clone())
            });
            let rhs = u
                .det()
                .and_then(|d| d.pow(k))
                .and_then(|c| Ok(p.left_transpose(&u)?.scale_gauss(&c)));
            ctx.poly(&label, lhs, rhs);
        }
    }
}
