//! Barycentric subdivision of a tetrahedron and of a chain on it.

use fiberknot::simplicial::{barycentric_subdivide, Chain, Ring, Simplex, SimplicialComplex};

fn main() -> fiberknot::Result<()> {
    let tet = SimplicialComplex::from_tetrahedra(&[[0, 1, 2, 3]])?;
    let sd = barycentric_subdivide(&tet);
    let counts: Vec<usize> = (0..=3).map(|k| sd.complex().count(k)).collect();
    println!("simplices by dimension: {counts:?}");
    println!(
        "euler characteristic: {}",
        sd.complex().euler_characteristic()
    );

    let edge = Chain::from_terms(1, Ring::Z, [(Simplex::new([0, 1])?, 1.into())])?;
    let fine = sd.subdivide_chain(&edge)?;
    println!("edge [0 1] becomes {} edges", fine.len());
    println!("boundary preserved: {}", fine.boundary().len() == 2);
    Ok(())
}
