//! Deciding realizability, with and without the exterior checks.

use fiberknot::catalog::{generate_with, Family, KnotSelector};
use fiberknot::decide::{decide, decide_checked};

fn main() -> fiberknot::Result<()> {
    let entry = generate_with(Family::SolidTorus, &Family::SolidTorus.default_knots())?;
    for (sel, k) in &entry.knots {
        let v = decide(&entry.model, k)?;
        println!("{sel}: {} (class mod 2 {:?})", v.outcome, v.evidence.kappa2);
    }

    let k = entry.knot(KnotSelector::Core).expect("default knot");
    let (v, report) = decide_checked(&entry.model, k)?;
    println!("core, checked: {}", v.outcome);
    if let Some(r) = report {
        for c in r.checks {
            println!("  {}: {}", c.name, c.detail);
        }
    }

    let reversed = decide(&entry.model, &k.reversed())?;
    println!("reversed core: {}", reversed.outcome);
    Ok(())
}
