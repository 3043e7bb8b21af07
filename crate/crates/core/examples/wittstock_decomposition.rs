//! Jordan-Wittstock decompositions `μ = (μ1 - μ2) + i(μ3 - μ4)` and the
//! GNS formula that reproduces `μ` from the four parts.

use nclab::decomposition::{lebesgue_parts_on_example, shift_wittstock, total_variation, wittstock_from_vectors, PartTag};
use nclab::fock::FockVector;
use nclab::gns::{gns_formula, RANK_TOL};
use nclab::measures::NcFunctional;
use nclab::{PositiveNCMeasure, Word};

fn main() -> nclab::Result<()> {
    let f = FockVector::random(2, 2, 1);
    let g = FockVector::random(2, 2, 2);
    let q = wittstock_from_vectors(&f, &g, 2, 6)?;
    println!("vector pair: residual {:.2e}, min eigs {:?}", q.reconstruction_residual()?, q.min_eigs()?);

    let tv = total_variation(&q)?;
    println!("total variation mass {:.4}", tv.unit().re);

    let [a, b, c, d] = q.parts();
    let formula = gns_formula([a, b, c, d], 3, RANK_TOL)?;
    println!("GNS formula error on interior pairs {:.2e}", formula.max_error(q.target(), 4)?);

    let xi = PositiveNCMeasure::dirac_xi(8);
    let s = shift_wittstock(&xi, 2)?;
    println!("shift quad of xi along letter 2: residual {:.2e}, tags {:?}", s.reconstruction_residual()?, s.tags());

    let m = PositiveNCMeasure::lebesgue(2, 8);
    // compressions of m by polynomials are absolutely continuous
    let q = shift_wittstock(&m, 1)?.with_tags([PartTag::AbsolutelyContinuous; 4]);
    let parts = lebesgue_parts_on_example(&q)?;
    println!("shift quad of m: ac part at L_1 = {}, singular mass {}", parts.ac.fwd(&Word::letter(1))?, parts.singular.unit());
    Ok(())
}
