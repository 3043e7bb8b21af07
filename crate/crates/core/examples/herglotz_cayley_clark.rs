//! Herglotz series, the Cayley transform to the Schur class, and the Clark
//! measure back.

use nclab::linalg::c;
use nclab::transforms::{cayley, clark_measure, herglotz_series, inverse_cayley};
use nclab::{FreeSeries, PositiveNCMeasure, Word};

fn main() -> nclab::Result<()> {
    let cap = 6;
    let xi = PositiveNCMeasure::dirac_xi(2 * cap);
    let h = herglotz_series(&xi, cap)?;
    println!("H_xi: constant {}, coeff(11) {}", h.constant_term(), h.coeff(&Word::parse("11")?));

    let b = cayley(&h)?;
    println!("b_xi nonzero terms: {:?}", b.nonzero_terms(1e-12));
    println!("inverse Cayley error {:.2e}", inverse_cayley(&b)?.max_abs_diff(&h)?);

    let back = clark_measure(&b, 3)?;
    println!("Clark(b_xi) vs xi: {:.2e}", back.to_complex().max_diff(&xi.truncate(6).to_complex())?);

    let zero = FreeSeries::zero(2, cap);
    let m = clark_measure(&zero, 3)?;
    println!("Clark(0) vs m: {:.2e}", m.to_complex().max_diff(&PositiveNCMeasure::lebesgue(2, 6).to_complex())?);

    let s = 1.0 / 2f64.sqrt();
    let rotated = FreeSeries::from_terms(2, cap, [(Word::letter(1), c(s, 0.0)), (Word::letter(2), c(s, 0.0))])?;
    let mu = clark_measure(&rotated, 2)?;
    println!("Clark((z1+z2)/√2): mu(L_1) = {}, mu(L_1 L_2) = {}", mu.moment(&Word::parse("1")?)?, mu.moment(&Word::parse("12")?)?);
    Ok(())
}
