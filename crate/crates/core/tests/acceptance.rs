//! The eleven acceptance criteria, one line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the report.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use doubling_zeta::constants::{
    dim_lambda, dim_lambda_gamma, dim_lambda_product, dim_so, formal_degree, i_moment,
    pairing_q_qtilde, siegel_gamma, wfd_assembly, zeta_closed_form,
};
use doubling_zeta::constructions::{
    build_i, build_p_hol, build_p_prime, build_q, build_qtilde, evaluation_point, gram,
    harmonic_projection, WeightData, DEFAULT_BUDGET,
};
use doubling_zeta::gaussian::SchwartzPolyGaussian;
use doubling_zeta::polyalg::{Block, MatrixPolynomial, RationalMatrix};
use doubling_zeta::verify::sample::{
    cayley_orthogonal, random_invertible, random_torus, random_unitriangular, rng_for,
};
use doubling_zeta::weil::{act_group, build_p0, matrix_coefficient, pairing, section_value, SymplecticWord};
use doubling_zeta::{ExactScalar, GaussRat, HalfInt};
use num_rational::BigRational;

use common::{
    close, factorial, grid, parse_complex, q, random_phi, random_word, rel_tol, split, weyl_dim_gl,
};

const SEED: u64 = 20240601;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eq<T: PartialEq + std::fmt::Display>(what: &str, lhs: T, rhs: T) -> Result<(), String> {
    ensure(lhs == rhs, || format!("{what}: {lhs} ≠ {rhs}"))
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn main_grid() -> Vec<WeightData> {
    grid(2, 2, 4)
}

/// `2^{−Σt} π^{−Σt+nk} ∏(t_j−j−k+n)! / ∏(n−j)!` built from factorials.
fn igamma_oracle(w: &WeightData) -> ExactScalar {
    let (n, k) = (w.n as i64, w.k as i64);
    let st = w.sum_t();
    let mut c = BigRational::from_integer(1.into());
    for (j0, &t) in w.t.iter().enumerate() {
        let j = j0 as i64 + 1;
        c *= BigRational::new(factorial(t - j - k + n), factorial(n - j));
    }
    ExactScalar::monomial(GaussRat::from_rational(c), -2 * st as i32, 2 * (nk(w) - st) as i32)
}

fn nk(w: &WeightData) -> i64 {
    (w.n * w.k) as i64
}

fn c1_igamma() -> Outcome {
    let g = main_grid();
    for w in &g {
        eq(&format!("{w}"), ok(i_moment(w))?, igamma_oracle(w))?;
    }
    let spot = ok(i_moment(&WeightData::new(1, 2, vec![3]).unwrap()))?;
    eq("spot (1,2,(3))", spot, &q(1, 8) * &ExactScalar::pi_pow(-2))?;
    Ok(format!("{} weights", g.len()))
}

fn c2_pluriharmonic() -> Outcome {
    let g = main_grid();
    for w in &g {
        for p in [ok(build_q(w))?, ok(build_qtilde(w))?] {
            for i in 0..w.n {
                for j in 0..w.n {
                    ensure(ok(p.delta_ij(i, j))?.is_zero(), || format!("{w}: Δ_{i}{j} ≠ 0"))?;
                }
            }
        }
    }
    Ok(format!("{} weights", g.len()))
}

fn c3_invariance() -> Outcome {
    let g = main_grid();
    let mut samples = 0;
    for w in &g {
        let n = w.n;
        let mut rng = rng_for(SEED, &format!("acceptance-3/{w}"));
        for p in [ok(build_q(w))?, ok(build_qtilde(w))?] {
            let u = random_unitriangular(&mut rng, n);
            eq(&format!("{w} unipotent"), ok(p.left_transpose(&u))?, p.clone())?;
            let a = random_torus(&mut rng, n);
            let mut chi = GaussRat::one();
            for (aj, tj) in a.iter().zip(&w.t) {
                chi = &chi * &ok(aj.pow(tj - w.k as i64))?;
            }
            let lhs = ok(p.left_transpose(&RationalMatrix::diagonal(&a)))?;
            eq(&format!("{w} torus"), lhs, p.scale_gauss(&chi))?;
        }
        let i_poly = ok(build_i(w))?;
        for _ in 0..5 {
            let a = random_invertible(&mut rng, n);
            let m = a.direct_sum(&ok(a.transpose().inverse())?);
            eq(&format!("{w} 𝓘"), ok(i_poly.left(&m))?, i_poly.clone())?;
            samples += 1;
        }
    }
    Ok(format!("{} weights, {samples} (a, ᵗa⁻¹) samples", g.len()))
}

fn c4_wi() -> Outcome {
    let g = main_grid();
    for w in &g {
        let d = ExactScalar::from_rational(weyl_dim_gl(&w.t));
        let rhs = ok((&ExactScalar::i_pow(-w.sum_t()) * &ok(i_moment(w))?).try_div(&d))?;
        eq(&format!("{w}"), ok(pairing_q_qtilde(w))?, rhs)?;
    }
    let spot = ok(pairing_q_qtilde(&WeightData::new(1, 2, vec![2]).unwrap()))?;
    eq("spot (1,2,(2))", spot, q(-1, 4))?;
    Ok(format!("{} weights", g.len()))
}

fn c5_p0() -> Outcome {
    let g = grid(2, 2, 3);
    for w in &g {
        let p0 = ok(build_p0(w))?;
        let d2 = 2 * w.degree();
        eq(&format!("{w} leading"), p0.homogeneous_part(d2), ok(build_p_prime(w))?)?;
        eq(&format!("{w} degree"), p0.degree(), d2)?;
    }
    Ok(format!("{} weights", g.len()))
}

fn cr_grid() -> Vec<WeightData> {
    grid(1, 2, 2)
}

fn c6_projection() -> Outcome {
    let g = cr_grid();
    for w in &g {
        let hp = ok(harmonic_projection(w, DEFAULT_BUDGET))?;
        for b in [Block::X1, Block::X2] {
            for i in 0..w.n {
                for j in 0..w.n {
                    ensure(ok(hp.h.delta_block(b, i, j))?.is_zero(), || format!("{w}: not harmonic"))?;
                }
            }
        }
        let s = w.double();
        let mut ideal = MatrixPolynomial::zero(s);
        for (b, i, j, m) in &hp.multipliers {
            ideal = &ideal + &(&gram(s, *b, *b)[*i][*j] * m);
        }
        eq(&format!("{w} ideal"), &ok(build_p_prime(w))? - &hp.h.scale(&hp.c), ideal)?;
        eq(&format!("{w} ev"), ok(hp.h.evaluate_matrix(&evaluation_point(w)))?, ExactScalar::one())?;
        let mut rng = rng_for(SEED, &format!("acceptance-6/{w}"));
        for _ in 0..3 {
            let o = cayley_orthogonal(&mut rng, 2 * w.k);
            eq(&format!("{w} O(2k)"), ok(hp.h.right(&o))?, hp.h.clone())?;
        }
    }
    Ok(format!("{} weights", g.len()))
}

fn c7_zw1() -> Outcome {
    let g = cr_grid();
    for w in &g {
        let hp = ok(harmonic_projection(w, DEFAULT_BUDGET))?;
        let h = SchwartzPolyGaussian::new(hp.h);
        let phol = SchwartzPolyGaussian::new(ok(build_p_hol(w))?);
        let dl = ExactScalar::from_rational(BigRational::from_integer(ok(dim_lambda(w))?));
        let mut rng = rng_for(SEED, &format!("acceptance-7/{w}"));
        let levi = ok(SymplecticWord::levi(random_invertible(&mut rng, w.n)))?;
        for word in [SymplecticWord::identity(w.n), SymplecticWord::fourier(w.n), levi] {
            let lhs = ok(matrix_coefficient(&word, &h))?;
            let rhs = &dl * &ok(matrix_coefficient(&word, &phol))?;
            eq(&format!("{w} at {word}"), lhs, rhs)?;
        }
    }
    Ok(format!("{} weights × 3 words", g.len()))
}

fn c8_main() -> Outcome {
    let g = main_grid();
    for w in &g {
        eq(&format!("{w}"), ok(zeta_closed_form(w))?.value, ok(wfd_assembly(w))?)?;
    }
    let w = WeightData::new(1, 2, vec![2]).unwrap();
    let half_pi = &q(1, 2) * &ExactScalar::pi();
    eq("closed form (1,2,(2))", ok(zeta_closed_form(&w))?.value, half_pi.clone())?;
    eq("assembly (1,2,(2))", ok(wfd_assembly(&w))?, half_pi)?;
    Ok(format!("{} weights", g.len()))
}

fn c9_constants() -> Outcome {
    let g = main_grid();
    for w in &g {
        let d = ExactScalar::from_rational(BigRational::from_integer(ok(dim_lambda(w))?));
        eq(&format!("{w} product display"), ok(dim_lambda_product(w))?, d.clone())?;
        eq(&format!("{w} gamma display"), ok(dim_lambda_gamma(w))?, d)?;
    }
    eq("Γ₂(2)", ok(siegel_gamma(2, HalfInt::int(2)))?, &q(1, 2) * &ExactScalar::pi())?;
    let w = WeightData::new(1, 2, vec![2]).unwrap();
    eq("d(1,2,(2))", ok(formal_degree(&w))?, ok(ExactScalar::pi().inv())?.scale_gauss(&GaussRat::from_ratio(1, 2)))?;
    eq("dim_so(2,(1,0))", ok(dim_so(2, &[1, 0]))?, 4.into())?;
    Ok(format!("{} weights", g.len()))
}

fn c10_weil() -> Outcome {
    let mut pairs = 0;
    for s in 0..12u64 {
        let (m, k) = (1 + (s % 2) as usize, 1 + (s % 3) as usize);
        let mut rng = rng_for(SEED ^ s, "acceptance-10/group");
        let (g1, g2) = (random_word(&mut rng, m), random_word(&mut rng, m));
        let phi = random_phi(&mut rng, m, k);
        let prod = &ok(g1.matrix())? * &ok(g2.matrix())?;
        let g12 = ok(SymplecticWord::from_matrix(&prod))?;
        let lhs = ok(act_group(&g1, None, &ok(act_group(&g2, None, &phi))?))?;
        ensure(lhs == ok(act_group(&g12, None, &phi))?, || format!("group law fails for {g1} · {g2}"))?;
        pairs += 1;
    }
    let mut words = 0;
    for s in 0..6u64 {
        let (m, k) = (1 + (s % 2) as usize, 2);
        let mut rng = rng_for(SEED ^ s, "acceptance-10/pairing");
        let g = random_word(&mut rng, m);
        let (p1, p2) = (random_phi(&mut rng, m, k), random_phi(&mut rng, m, k));
        let lhs = ok(pairing(&ok(act_group(&g, None, &p1))?, &ok(act_group(&g.mvw(), None, &p2))?))?;
        eq(&format!("pairing invariance at {g}"), lhs, ok(pairing(&p1, &p2))?)?;
        words += 1;
    }
    for (m, k) in [(1, 2), (2, 3)] {
        let mut rng = rng_for(SEED, "acceptance-10/inversion");
        let phi = random_phi(&mut rng, m, k);
        let t = ok(act_group(&SymplecticWord::fourier(m), None, &phi))?;
        let back = ok(act_group(&SymplecticWord::fourier_inverse(m), None, &t))?;
        ensure(back == phi, || format!("Fourier inversion fails for m={m}, k={k}"))?;
    }
    for (n, k) in [(1, 2), (2, 3)] {
        let mut rng = rng_for(SEED, "acceptance-10/resmc");
        let (p1, p2) = (random_phi(&mut rng, n, k), random_phi(&mut rng, n, k));
        let lhs = ok(section_value(&split(&p1, &p2), &SymplecticWord::sh_inverse(n)))?;
        eq("resmc", lhs, &ExactScalar::i_pow((n * k) as i64) * &ok(pairing(&p1, &p2))?)?;
        let g = SchwartzPolyGaussian::gaussian(doubling_zeta::polyalg::Shape::double(n, k));
        let v = ok(section_value(&g, &SymplecticWord::fourier(2 * n)))?;
        eq("section at Fourier", v, ExactScalar::from_int(if n * k % 2 == 0 { 1 } else { -1 }))?;
    }
    Ok(format!("{pairs} word pairs, {words} invariance words"))
}

fn zeta_bin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_zeta"))
        .args(args)
        .env_remove("ZETA_BUDGET_MONOMIALS")
        .output()
        .expect("run zeta")
}

/// Values from an independent 40-digit evaluation of the defining formulas.
const REFERENCE: &[(&str, &str)] = &[
    ("zeta --n 1 --k 2 --t 2", "1.570796326794896619231321691639751442099"),
    ("zeta --n 1 --k 3 --t 4", "0 - 0.125i"),
    ("zeta --n 1 --k 2 --t 5", "0 + 0.01899772193293833214572739935182393229457i"),
    ("zeta --n 2 --k 3 --t 3,3", "1.291928195012492507311513127795891466759"),
    ("zeta --n 2 --k 3 --t 5,3", "-0.03272492347489367956731920190916148837705"),
    ("zeta --n 2 --k 4 --t 6,5", "0 + 0.001953125i"),
    ("zeta --n 1 --k 5 --t 9", "0.01559034135198608119754776961019436118512"),
    ("euler- --n 1 --t 2 --s 1", "-0.05066059182116888572193973160486381945218"),
    ("euler- --n 2 --t 4,3 --s 2", "0.00007904279374012024974879654546075756539722"),
    ("euler- --n 1 --t 5 --s -2", "-0.05066059182116888572193973160486381945218"),
    ("euler+ --n 1 --k 3 --t 3 --s 1", "-0.005132991127342167594576391633559347070914"),
    ("euler+ --n 2 --k 4 --t 4,4 --s 2", "0 + 0.000001911938538004329953093646379899704208416i"),
    ("euler+ --n 1 --k 2 --t 4 --s -1", "1"),
    ("euler+ --n 1 --k 3 --t 3 --s 0", "0 - 0.1591549430918953357688837633725143620345i"),
];

fn c11_cli() -> Outcome {
    let out = zeta_bin(&["verify", "all", "--no-timing"]);
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.code() == Some(0), || {
        format!("verify all exited {:?}: {}", out.status.code(), text.lines().last().unwrap_or(""))
    })?;
    let summary = text.lines().last().unwrap_or("").to_string();

    let argv = ["verify", "igamma", "--json", "--no-timing"];
    let a = zeta_bin(&argv).stdout;
    ensure(a == zeta_bin(&argv).stdout, || "JSON output differs between runs".into())?;
    for (file, cmd) in common_goldens() {
        let golden = std::fs::read_to_string(format!("{}/tests/golden/{file}", env!("CARGO_MANIFEST_DIR")))
            .map_err(|e| format!("{file}: {e}"))?;
        let args: Vec<&str> = cmd.split_whitespace().collect();
        let got = String::from_utf8(zeta_bin(&args).stdout).unwrap();
        ensure(got == golden, || format!("{file} differs from `zeta {cmd}`"))?;
    }

    let tol = rel_tol(25);
    for (cmd, reference) in REFERENCE {
        let mut args = vec!["eval"];
        args.extend(cmd.split_whitespace());
        args.push("--json");
        let doc: serde_json::Value = serde_json::from_slice(&zeta_bin(&args).stdout).map_err(|e| format!("{cmd}: {e}"))?;
        let got = parse_complex(doc["value"]["decimal"].as_str().ok_or("no decimal")?);
        ensure(close(&got, &parse_complex(reference), &tol), || {
            format!("{cmd}: {} vs {reference}", doc["value"]["decimal"])
        })?;
    }
    Ok(format!("{summary}; {} decimals within 1e-25", REFERENCE.len()))
}

fn common_goldens() -> [(&'static str, &'static str); 3] {
    [
        ("eval_zeta_n1_k2_t2.json", "eval zeta --n 1 --k 2 --t 2 --json"),
        ("eval_euler_minus_n1_t2_s1.json", "eval euler- --n 1 --t 2 --s 1 --json"),
        ("verify_igamma_n1_k2_tmax4.json", "verify igamma --n 1 --k 2 --tmax 4 --json --no-timing"),
    ]
}

#[test]
fn acceptance() {
    type Check = fn() -> Outcome;
    let criteria: [(&str, f64, Check); 11] = [
        ("Gaussian moment of 𝓘 in closed form", 5.0, c1_igamma),
        ("pluri-harmonicity of Q and Q̃", 5.0, c2_pluriharmonic),
        ("torus, unipotent and 𝓘 invariance", 5.0, c3_invariance),
        ("pairing of φ_Q with φ_Q̃", 10.0, c4_wi),
        ("leading term of P⁰", 30.0, c5_p0),
        ("harmonic projection", 60.0, c6_projection),
        ("matrix coefficients of P^{hol,inv}", 60.0, c7_zw1),
        ("closed form vs assembly", 30.0, c8_main),
        ("constant cross-checks", 1.0, c9_constants),
        ("Weil engine properties", 30.0, c10_weil),
        ("command line", f64::INFINITY, c11_cli),
    ];
    let mut failed = Vec::new();
    for (i, (name, expected, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let slow = if secs > expected { " (slower than expected)" } else { "" };
        match res {
            Ok(detail) => println!("criterion {:>2} pass  {name}: {detail} [{secs:.2}s]{slow}", i + 1),
            Err(e) => {
                println!("criterion {:>2} FAIL  {name}: {e} [{secs:.2}s]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
