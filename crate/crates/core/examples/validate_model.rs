//! Validation: a good model, a pinched one and a non-orientable one.

use fiberknot::catalog::solid_klein_bottle;
use fiberknot::manifold::{validate, CompactModel3};
use fiberknot::simplicial::SimplicialComplex;

fn main() -> fiberknot::Result<()> {
    let two = SimplicialComplex::from_tetrahedra(&[[0, 1, 2, 3], [1, 2, 3, 4]])?;
    let m = CompactModel3::new(two)?;
    println!(
        "two tetrahedra: orientation {:?}, {} boundary triangles",
        m.orientation(),
        m.boundary().count(2)
    );

    let pinched = SimplicialComplex::from_tetrahedra(&[[0, 1, 2, 3], [0, 4, 5, 6]])?;
    let report = validate(&pinched);
    println!(
        "pinched: valid {}, bad vertex links {:?}",
        report.is_valid(),
        report.vertex_link_failures
    );

    let klein = solid_klein_bottle();
    let report = validate(&klein);
    println!("solid Klein bottle: orientable {}", report.is_orientable);
    if let Err(e) = CompactModel3::new(klein) {
        println!("rejected: {e}");
    }
    Ok(())
}
