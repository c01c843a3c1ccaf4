//! Homology of a lens space with a ball removed, with generators.

use fiberknot::catalog::{generate_with, Family};
use fiberknot::cli::describe_group;
use fiberknot::homology::homology_group;
use fiberknot::simplicial::Ring;

fn main() -> fiberknot::Result<()> {
    let entry = generate_with(Family::LensPunctured { p: 4, q: 1 }, &[])?;
    let m = &entry.model;
    for ring in [Ring::Z, Ring::Z2] {
        for k in 0..=3 {
            println!(
                "H{k}({ring}): {}",
                describe_group(&m.homology(k, ring)?.summary(), ring)
            );
        }
    }
    let h1 = m.homology(1, Ring::Z)?;
    println!(
        "generator of H1 has {} edges",
        h1.generator(0).representative().len()
    );

    let rel = homology_group(m.complex(), Some(m.boundary()), 3, Ring::Z)?;
    println!("H3(M, dM) = {}", rel.summary());
    Ok(())
}
