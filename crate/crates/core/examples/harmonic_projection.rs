//! Projection of P' onto pluri-harmonic polynomials in both blocks, with the
//! certificate that the difference lies in the ideal of the Gram entries.
//!
//! cargo run --example harmonic_projection

use doubling_zeta::constants::dim_lambda;
use doubling_zeta::constructions::{evaluation_point, harmonic_projection, WeightData, DEFAULT_BUDGET};

fn main() -> doubling_zeta::Result<()> {
    for (k, t) in [(2, 2), (2, 3), (2, 4), (3, 4), (3, 5)] {
        let w = WeightData::new(1, k, vec![t])?;
        let hp = harmonic_projection(&w, DEFAULT_BUDGET)?;
        println!(
            "{w}: {} unknowns{}, C = {}, H(ev) = {}, {} ideal multipliers, dim λ = {}",
            hp.unknowns,
            if hp.weight_restricted { " (weight space)" } else { "" },
            hp.c,
            hp.h.evaluate_matrix(&evaluation_point(&w))?,
            hp.multipliers.len(),
            dim_lambda(&w)?
        );
    }
    Ok(())
}
