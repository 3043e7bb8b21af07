//! Numerical type diagnostics: Cuntz defect, wandering vectors, an
//! absolutely continuous fit, and polynomial Cauchy transforms.

use nclab::classify::{ac_fit, polynomial_cauchy_check, type_report};
use nclab::fock::FockVector;
use nclab::linalg::c;
use nclab::measures::vector_state;
use nclab::{PositiveNCMeasure, Word};

fn main() -> nclab::Result<()> {
    let depth = 4;
    let xi = PositiveNCMeasure::dirac_xi(2 * depth);
    let m = PositiveNCMeasure::lebesgue(2, 2 * depth);
    let f = FockVector::affine(c(1.0, 0.0), 1, c(0.5, 0.0));
    let ac = vector_state(&f, 2, 2 * depth)?;

    for (name, mu) in [("xi", &xi), ("m", &m), ("|1 + z1/2|^2 m", &ac)] {
        let r = type_report(mu, depth, 1e-9)?;
        println!("{name}: Cuntz defect {:.2e}, ac fit residual {:.2e}", r.cuntz_defect, r.ac_fit_residual);
        for w in &r.wandering_witnesses {
            println!("  class({}) wandering correlation {:.3e}", w.word, w.correlation);
        }
    }

    let fit = ac_fit(&ac, depth)?;
    println!("ac fit of the vector state: residual {:.2e} after {} iterations", fit.residual, fit.iterations);

    for beta in ["1", "12", "2"] {
        let check = polynomial_cauchy_check(&xi, &Word::parse(beta)?, depth)?;
        println!("Cauchy transform of xi against L^{beta}: {} nonzero terms, max degree {:?}, finite {}", check.nonzero, check.max_degree, check.finite_cutoff);
    }
    Ok(())
}
