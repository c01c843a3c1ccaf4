//! Offsets of preferred longitudes for a few catalog knots.

use fiberknot::catalog::{generate_with, Family, KnotSelector};
use fiberknot::knot::{build_exterior, preferred_offsets, solve_offsets};
use num_bigint::BigInt;

fn main() -> fiberknot::Result<()> {
    let cases = [
        (Family::SolidTorus, KnotSelector::Core),
        (Family::SolidTorus, KnotSelector::CorePower(2)),
        (Family::Ball, KnotSelector::Contractible),
    ];
    for (family, sel) in cases {
        let entry = generate_with(family, &[sel])?;
        let ext = build_exterior(&entry.model, entry.knot(sel).expect("requested knot"))?;
        println!("{family} {sel}: {}", preferred_offsets(&ext)?);
    }

    // lambda + k*mu = 0 in Z + Z/4 with lambda = (0, 3) and mu = (0, 1)
    let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let set = solve_offsets(1, &big(&[4]), &big(&[0, 3]), &big(&[0, 1]))?;
    println!("by hand: {set}");
    Ok(())
}
