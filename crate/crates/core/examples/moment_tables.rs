//! Moment tables of the standard examples and the positivity test on their
//! Gram matrices.

use nclab::linalg::{c, CMatrix};
use nclab::measures::{gram, is_positive, leq, vector_state, NcFunctional, PSD_TOL};
use nclab::{fock::FockVector, PositiveNCMeasure, Word};

fn main() -> nclab::Result<()> {
    let depth = 3;
    let m = PositiveNCMeasure::lebesgue(2, 2 * depth);
    let xi = PositiveNCMeasure::dirac_xi(2 * depth);

    for w in ["", "1", "11", "12", "2"] {
        let w = Word::parse(w)?;
        println!("m({w}) = {}   xi({w}) = {}", m.moment(&w)?, xi.moment(&w)?);
    }

    for (name, mu) in [("m", &m), ("xi", &xi)] {
        let p = is_positive(mu, depth, PSD_TOL)?;
        println!("{name}: Gram size {}, min eig {:.3e}, positive {}", gram(mu, depth)?.nrows(), p.min_eig, p.positive);
    }

    // evaluation at a commuting pair of nilpotent matrices
    let mut z1 = CMatrix::zeros(2, 2);
    z1[(0, 1)] = c(0.5, 0.0);
    let z2 = CMatrix::identity(2, 2) * c(0.0, 0.3);
    let point = PositiveNCMeasure::moments_from_point(&[z1, z2], &[c(1.0, 0.0), c(0.0, 0.0)], 2 * depth)?;
    println!("point evaluation: mu(L_2 L_2) = {}", point.moment(&Word::parse("22")?)?);

    let h = FockVector::from_terms([(Word::empty(), c(1.0, 0.0)), (Word::parse("2")?, c(0.5, 0.0))]);
    let v = vector_state(&h, 2, 2 * depth)?;
    println!("vector state of 1 + z2/2: total mass {}", v.unit());
    // |1 + z2/2|^2 >= 1/4 on the circle, so m <= 4v but not m <= v
    println!("m <= 4v: {}, m <= v: {}", leq(&m, &v.scale(4.0), depth, PSD_TOL)?.positive, leq(&m, &v, depth, PSD_TOL)?.positive);
    Ok(())
}
