//! Twists, cables and the extension criterion on bit vectors.

use fiberknot::framing::{
    cable_class, construct_extension_bits, extension_exists_bits, twist, SigmaClass,
};
use fiberknot::linalg::BitVector;

fn main() -> fiberknot::Result<()> {
    for c in [SigmaClass::ZERO, SigmaClass::ONE] {
        for n in -1..=2 {
            println!("twist({c}, {n}) = {}", twist(c, n));
        }
        println!("cable({c}) = {}", cable_class(c));
    }
    let kappa = BitVector::from_bools(&[false, true, true]);
    println!(
        "extension to 1 exists: {}",
        extension_exists_bits(&kappa, SigmaClass::ONE)?
    );
    println!("functional: {}", construct_extension_bits(&kappa)?);
    let zero = BitVector::zeros(3);
    println!(
        "from zero class: {}",
        extension_exists_bits(&zero, SigmaClass::ONE)?
    );
    Ok(())
}
