//! Co-embeddings between GNS spaces for `μ <= λ`, the Toeplitz derivative
//! and positivity transfer.

use nclab::fock::FockVector;
use nclab::gns::{co_embedding, positivity_transfer_check, toeplitz_defect, GnsReport, RANK_TOL};
use nclab::linalg::c;
use nclab::measures::vector_state;
use nclab::{PositiveNCMeasure, Word};

fn main() -> nclab::Result<()> {
    let depth = 3;
    let xi = PositiveNCMeasure::dirac_xi(2 * depth);
    let f = FockVector::affine(c(1.0, 0.0), 2, c(0.5, 0.0));
    let lambda = xi.add(&vector_state(&f, 2, 2 * depth)?)?;

    let (gmu, glambda, e) = co_embedding(&xi, &lambda, depth, RANK_TOL)?;
    let report = GnsReport::for_pair(&glambda, &e);
    println!("ranks: mu {}, lambda {}", gmu.rank(), glambda.rank());
    println!("‖E‖ = {:.6}", e.norm());
    println!("Toeplitz defect of E*E: {:.2e}", toeplitz_defect(&e.derivative(), &glambda));
    println!("report: {}", serde_json::to_string(&report).unwrap());

    let p = FockVector::from_terms([(Word::empty(), c(1.0, 0.0)), (Word::parse("12")?, c(-0.7, 0.2))]);
    let eig = positivity_transfer_check(&xi, &lambda, &p, depth, RANK_TOL)?;
    println!("positivity transfer for p = 1 - 0.7 z1z2: min eig {eig:.3e}");

    match co_embedding(&lambda, &xi, depth, RANK_TOL) {
        Err(err) => println!("reversed order rejected: {err}"),
        Ok(_) => println!("reversed order unexpectedly accepted"),
    }
    Ok(())
}
