//! The highest-weight polynomials Q, Q̃ and the invariant 𝓘 for one weight.
//!
//! cargo run --example polynomials -- 2 3 5,3

use doubling_zeta::constructions::{build_i, build_q, build_qtilde, WeightData};

fn weight_from_args() -> doubling_zeta::Result<WeightData> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.len() != 3 {
        return WeightData::new(2, 3, vec![4, 3]);
    }
    let n = args[0].parse().expect("n");
    let k = args[1].parse().expect("k");
    let t = args[2].split(',').map(|x| x.parse().expect("t")).collect();
    WeightData::new(n, k, t)
}

fn main() -> doubling_zeta::Result<()> {
    let w = weight_from_args()?;
    println!("weight {w}, minor exponents {:?}", w.minor_exponents());

    let q = build_q(&w)?;
    let qt = build_qtilde(&w)?;
    println!("Q  ({} terms, degree {}) = {q}", q.len(), q.degree());
    println!("Q̃  ({} terms, degree {}) = {qt}", qt.len(), qt.degree());
    println!("Q pluri-harmonic: {}", q.is_pluriharmonic()?);
    println!("Q̃ pluri-harmonic: {}", qt.is_pluriharmonic()?);

    let i = build_i(&w)?;
    println!("𝓘 has {} terms of degree {}", i.len(), i.degree());
    Ok(())
}
