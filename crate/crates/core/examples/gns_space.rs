//! The GNS row isometry of a positive functional.

use nclab::classify::cuntz_defect;
use nclab::gns::{build_gns, RANK_TOL};
use nclab::{PositiveNCMeasure, Word};

fn main() -> nclab::Result<()> {
    let depth = 4;
    for (name, mu) in [("m", PositiveNCMeasure::lebesgue(2, 2 * depth)), ("xi", PositiveNCMeasure::dirac_xi(2 * depth))] {
        let g = build_gns(&mu, depth, RANK_TOL)?;
        let ranks: Vec<usize> = (0..=depth).map(|n| g.level(n).rank()).collect();
        println!("{name}: ranks by level {ranks:?}");
        println!("  moment reproduction error {:.2e}", g.moment_reproduction_error(&mu)?);
        println!("  isometry defect {:.2e}", g.isometry_defect());
        println!("  Cuntz defect {:.2e}", cuntz_defect(&g)?);
    }

    let xi = PositiveNCMeasure::dirac_xi(2 * depth);
    let g = build_gns(&xi, depth, RANK_TOL)?;
    let one = g.class(&Word::empty())?;
    let moved = g.apply_word(&Word::parse("11")?, &one);
    println!("xi: |class(11) - L_1 L_1 class(∅)| = {:.2e}", (g.class(&Word::parse("11")?)? - moved).norm());
    Ok(())
}
