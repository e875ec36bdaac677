//! Exact Gaussian integrals of 𝓘(x, x) against their closed form.
//!
//! cargo run --example gaussian_moments

use doubling_zeta::constants::{i_moment, i_moment_closed_form};
use doubling_zeta::constructions::WeightData;
use doubling_zeta::decimal::to_decimal;

fn main() -> doubling_zeta::Result<()> {
    for (n, k, t) in [(1, 2, vec![2]), (1, 2, vec![3]), (1, 3, vec![5]), (2, 3, vec![4, 3]), (2, 4, vec![6, 5])] {
        let w = WeightData::new(n, k, t)?;
        let integral = i_moment(&w)?;
        let closed = i_moment_closed_form(&w)?;
        println!(
            "{w:<18} ∫𝓘 e^(-2π|x|²) = {integral}  ≈ {}  closed form agrees: {}",
            to_decimal(&integral, 20),
            integral == closed
        );
    }
    Ok(())
}
