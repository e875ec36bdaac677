//! The Weil representation on polynomial × Gaussian functions: generator
//! words, the invariant pairing, matrix coefficients and Siegel–Weil sections.
//!
//! cargo run --example weil_action

use doubling_zeta::constructions::{build_q, build_qtilde, WeightData};
use doubling_zeta::gaussian::SchwartzPolyGaussian;
use doubling_zeta::polyalg::{Block, RationalMatrix, Shape};
use doubling_zeta::weil::{act_group, epsilon_sign, matrix_coefficient, pairing, section_value, SymplecticWord};

fn main() -> doubling_zeta::Result<()> {
    let w = WeightData::new(1, 2, vec![3])?;
    let q = SchwartzPolyGaussian::new(build_q(&w)?);
    let qt = SchwartzPolyGaussian::new(build_qtilde(&w)?);

    let j = SymplecticWord::fourier(1);
    let jq = act_group(&j, None, &q)?;
    println!("φ_Q      = {}", q.poly());
    println!("ω(J) φ_Q = {}", jq.poly());

    // a word mixing a Levi element, a unipotent and the Fourier transform
    let a = RationalMatrix::from_ints(&[&[2]]);
    let b = RationalMatrix::from_ints(&[&[3]]);
    let g = SymplecticWord::parabolic(a, b)?.then(&j)?;
    println!("g = {g}, matrix {}", g.matrix()?);
    println!("ε(g) = {}", epsilon_sign(&g.matrix()?)?);

    let lhs = pairing(&act_group(&g, None, &q)?, &act_group(&g.mvw(), None, &qt)?)?;
    println!("⟨φ_Q, φ_Q̃⟩             = {}", pairing(&q, &qt)?);
    println!("⟨ω(g)φ_Q, ω(g^θ)φ_Q̃⟩   = {lhs}");

    let split = SchwartzPolyGaussian::new(&q.poly().embed(Block::X1) * &qt.poly().embed(Block::X2));
    println!("MC(g, φ_Q ⊗ φ_Q̃)       = {}", matrix_coefficient(&g, &split)?);
    println!("f(S_H⁻¹)               = {}", section_value(&split, &SymplecticWord::sh_inverse(1))?);

    let gauss = SchwartzPolyGaussian::gaussian(Shape::double(1, 2));
    println!("f_gauss(J)             = {}", section_value(&gauss, &SymplecticWord::fourier(2))?);
    Ok(())
}
