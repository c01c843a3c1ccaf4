//! Every catalog model with its homology and expected verdicts.

use fiberknot::catalog::standard_catalog;
use fiberknot::decide::decide;
use fiberknot::simplicial::Ring;

fn main() -> fiberknot::Result<()> {
    for entry in standard_catalog()? {
        let m = &entry.model;
        let h1 = m.homology(1, Ring::Z)?.summary();
        let lf = m.locally_finite_h1(Ring::Z)?.summary();
        println!(
            "{}: {} tetrahedra, H1 = {h1}, H1(M, dM) = {lf}",
            entry.family,
            m.complex().count(3)
        );
        for (sel, k) in &entry.knots {
            let got = decide(m, k)?.outcome;
            let want = entry.family.expected_outcome(*sel)?;
            println!("  {sel}: {got} (expected {want})");
        }
    }
    Ok(())
}
