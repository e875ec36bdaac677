//! The archimedean zeta integral: closed form, its assembly from the Weil
//! pairing, and the modified Euler factors.
//!
//! cargo run --example zeta_integral

use doubling_zeta::constants::{euler_factor, wfd_assembly, zeta_closed_form, Side};
use doubling_zeta::constructions::WeightData;
use doubling_zeta::decimal::to_decimal;

fn main() -> doubling_zeta::Result<()> {
    for (n, k, t) in [(1, 2, vec![2]), (1, 3, vec![4]), (2, 3, vec![3, 3]), (2, 4, vec![6, 5])] {
        let w = WeightData::new(n, k, t)?;
        let z = zeta_closed_form(&w)?;
        println!("{w}");
        println!("  Z        = {}  ≈ {}", z.value, to_decimal(&z.value, 30));
        println!("  assembly = {}", wfd_assembly(&w)?);
        let c = &z.components;
        println!(
            "  dim GL = {}, dim λ = {}, d = {}, Γ_2n(k) = {}",
            c.dim_gl, c.dim_lambda, c.formal_degree, c.siegel_gamma
        );
        for s in 1..=2 {
            println!(
                "  s = {s}: E⁻ = {}  E⁺ = {}",
                euler_factor(&w, s, Side::Minus)?,
                euler_factor(&w, s, Side::Plus)?
            );
        }
    }
    Ok(())
}
