//! The raising operators of the Lie algebra and the polynomial P⁰ they produce
//! from the Gaussian.
//!
//! cargo run --example raising_operators

use doubling_zeta::constructions::{build_p_prime, WeightData};
use doubling_zeta::gaussian::SchwartzPolyGaussian;
use doubling_zeta::polyalg::{RationalMatrix, Shape};
use doubling_zeta::weil::{act_lie_raising, build_p0};

fn main() -> doubling_zeta::Result<()> {
    let sigma = RationalMatrix::from_ints(&[&[0, 1], &[1, 0]]);
    let gauss = SchwartzPolyGaussian::gaussian(Shape::double(1, 2));
    let raised = act_lie_raising(&sigma, &gauss)?;
    println!("dω(μ⁺_σ) Gaussian = ({}) · Gaussian", raised.poly());

    for (n, k, t) in [(1, 2, vec![3]), (1, 2, vec![4]), (2, 3, vec![4, 3])] {
        let w = WeightData::new(n, k, t)?;
        let p0 = build_p0(&w)?;
        let lead = p0.homogeneous_part(2 * w.degree());
        println!(
            "{w}: P⁰ has {} terms, degree {}, leading part equals 𝔔(x₁ ᵗx₂): {}",
            p0.len(),
            p0.degree(),
            lead == build_p_prime(&w)?
        );
    }
    Ok(())
}
