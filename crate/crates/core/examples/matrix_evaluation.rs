//! Evaluating free power series at strict row contractions, with a tail
//! bound for the truncation.

use nclab::linalg::{hermitian_part, max_abs_diff, min_eigenvalue, spectral_norm, CMatrix};
use nclab::transforms::{cayley, herglotz_series, random_strict_point, series_eval};
use nclab::PositiveNCMeasure;

fn main() -> nclab::Result<()> {
    let cap = 14;
    let xi = PositiveNCMeasure::dirac_xi(cap);
    let h = herglotz_series(&xi, cap)?;
    let b = cayley(&h)?;

    for r in [0.2, 0.4, 0.6] {
        let z = random_strict_point(2, 3, r, 7)?;
        let v = series_eval(&h, &z, 1e-2)?;
        // H_ξ(Z) = (I + Z_1)(I - Z_1)^{-1}
        let id = CMatrix::identity(3, 3);
        let exact = (&id + &z.z[0]) * (&id - &z.z[0]).try_inverse().expect("strict point");
        println!(
            "r={r}: |H(Z) - closed form| {:.2e}, tail bound {:.2e}, within tol {}",
            max_abs_diff(&v.value, &exact),
            v.tail_bound,
            v.within_tolerance
        );
        println!("       min eig Re H(Z) {:.4}, ‖b(Z)‖ {:.4}", min_eigenvalue(&hermitian_part(&v.value)), spectral_norm(&series_eval(&b, &z, 1e-2)?.value));
    }
    Ok(())
}
