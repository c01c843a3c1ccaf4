//! Exterior of the core of a solid torus: meridian and longitude.

use fiberknot::catalog::{generate_with, Family, KnotSelector};
use fiberknot::knot::build_exterior;
use fiberknot::simplicial::Ring;

fn main() -> fiberknot::Result<()> {
    let entry = generate_with(Family::SolidTorus, &[KnotSelector::Core])?;
    let k = entry.knot(KnotSelector::Core).expect("requested knot");
    let ext = build_exterior(&entry.model, k)?;
    println!("subdivisions: {}", ext.subdivision_count());
    println!("exterior tetrahedra: {}", ext.exterior().complex().count(3));
    println!(
        "H1(exterior) = {}",
        ext.exterior().homology(1, Ring::Z)?.summary()
    );
    println!("meridian: {} edges", ext.meridian().len());
    println!("longitude: {} edges", ext.longitude0().len());
    println!(
        "meridian . longitude = {}",
        ext.torus_intersection(ext.meridian(), ext.longitude0())?
    );
    Ok(())
}
