//! Exact scalars in ℚ(i)[√2, √π] and their decimal expansions.
//!
//! cargo run --example exact_scalars

use doubling_zeta::decimal::to_decimal;
use doubling_zeta::scalar::{gamma_exact, HalfInt};
use doubling_zeta::{ExactScalar, GaussRat};

fn main() -> doubling_zeta::Result<()> {
    let half_pi = &ExactScalar::from_ratio(1, 2) * &ExactScalar::pi();
    println!("π/2        = {half_pi}");
    println!("           ≈ {}", to_decimal(&half_pi, 40));

    // Γ at half-integers stays exact: Γ(5/2) = (3/4)√π
    for h in [5, 1, -3] {
        let g = gamma_exact(HalfInt::halves(h))?;
        println!("{:<10} = {g}", format!("Γ({})", HalfInt::halves(h)));
    }

    let z = ExactScalar::monomial(&GaussRat::from_ratio(1, 3) + &GaussRat::i(), 1, -1);
    let w = &z * &z.inv()?;
    println!("z          = {z}");
    println!("z · z⁻¹    = {w}");
    println!("(√2)^(-3)  = {}", ExactScalar::sqrt2_pow(-3));
    Ok(())
}
