//! Back shifts of measures and the analytic functional built from `ξ`
//! that is not a total-variation bound of any absolutely continuous part.

use nclab::decomposition::{back_shift, is_analytic};
use nclab::measures::NcFunctional;
use nclab::{PositiveNCMeasure, Word};

fn main() -> nclab::Result<()> {
    let xi = PositiveNCMeasure::dirac_xi(8);

    // γ = (ξ^{(2)})*: vanishes on every L^α and on L^{α*} unless α = 2 1^k
    let gamma = back_shift(&xi, 2)?.star();
    println!("gamma analytic: {}", is_analytic(&gamma, 1e-12)?);
    println!("gamma(I) = {}", gamma.unit());
    for w in ["2", "21", "211", "12", "1"] {
        let w = Word::parse(w)?;
        println!("gamma(L^{w}) = {}   gamma(L^{w}*) = {}", gamma.fwd(&w)?, gamma.bwd(&w)?);
    }

    let along_one = back_shift(&xi, 1)?;
    println!("xi^(1) - xi on the truncated table: {:.2e}", along_one.max_diff(&xi.truncate(7).to_complex())?);

    let m = PositiveNCMeasure::lebesgue(2, 8);
    let mk = back_shift(&m, 1)?;
    for w in ["", "1", "2", "11"] {
        let w = Word::parse(w)?;
        println!("m^(1)(L^{w}) = {}", mk.fwd(&w)?);
    }
    Ok(())
}
