//! Framing classes in `pi_1(SO(3)) = Z2` and the extension criterion.
//!
//! Classes are tracked abstractly: nothing here computes the class of a
//! geometric framing, only the relations between classes.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::HomologyClass;
use crate::linalg::{solve_gf2, BitVector, Gf2Matrix};
use crate::simplicial::Ring;

/// An element of `pi_1(SO(3)) = Z2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SigmaClass(bool);

impl SigmaClass {
    pub const ZERO: SigmaClass = SigmaClass(false);
    pub const ONE: SigmaClass = SigmaClass(true);

    pub fn new(value: u8) -> Result<Self> {
        match value {
            0 => Ok(Self::ZERO),
            1 => Ok(Self::ONE),
            v => Err(Error::InvalidParameters(format!(
                "sigma class must be 0 or 1, got {v}"
            ))),
        }
    }

    pub fn from_parity(n: i64) -> Self {
        SigmaClass(n.rem_euclid(2) == 1)
    }

    pub fn value(self) -> u8 {
        u8::from(self.0)
    }

    pub fn is_zero(self) -> bool {
        !self.0
    }
}

impl fmt::Display for SigmaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Twisting `n` times around the meridian: each full twist is the
/// generator.
pub fn twist(c: SigmaClass, n: i64) -> SigmaClass {
    SigmaClass::from_parity(i64::from(c.value()) + n.rem_euclid(2))
}

/// Class of the revolution framing of the (2,1)-cable of a knot whose
/// framing has class `c`: `2c + 1`.
pub fn cable_class(c: SigmaClass) -> SigmaClass {
    SigmaClass::from_parity(2 * i64::from(c.value()) + 1)
}

/// A homomorphism `H_1(M; Z2) -> Z2`, by its values on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Functional {
    coefficients: BitVector,
}

impl Gf2Functional {
    pub fn new(coefficients: BitVector) -> Self {
        Gf2Functional { coefficients }
    }

    pub fn coefficients(&self) -> &BitVector {
        &self.coefficients
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn apply_bits(&self, x: &BitVector) -> Result<SigmaClass> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "functional on a space of dimension {} applied to a vector of length {}",
                self.dim(),
                x.len()
            )));
        }
        Ok(SigmaClass(self.coefficients.dot(x)))
    }

    pub fn apply(&self, c: &HomologyClass) -> Result<SigmaClass> {
        self.apply_bits(&class_bits(c)?)
    }
}

impl fmt::Display for Gf2Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = self
            .coefficients
            .to_bools()
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect();
        write!(f, "({bits})")
    }
}

/// Coordinates of a mod-2 class as a bit vector.
pub fn class_bits(c: &HomologyClass) -> Result<BitVector> {
    if c.ring() != Ring::Z2 {
        return Err(Error::CarrierMismatch(
            "expected a class with Z2 coefficients".into(),
        ));
    }
    Ok(BitVector::from_bools(
        &c.coords().iter().map(|x| !x.is_zero()).collect::<Vec<_>>(),
    ))
}

fn solve(kappa2: &BitVector, c: SigmaClass) -> Result<Option<BitVector>> {
    let a = Gf2Matrix::from_rows(&[kappa2.to_bools()]);
    let b = BitVector::from_bools(&[c.0]);
    solve_gf2(&a, &b)
}

/// Whether some functional sends `kappa2` to `c`.
pub fn extension_exists_bits(kappa2: &BitVector, c: SigmaClass) -> Result<bool> {
    Ok(solve(kappa2, c)?.is_some())
}

/// Whether a homomorphism `Phi: H_1(M; Z2) -> Z2` with `Phi(kappa2) = c`
/// exists.
pub fn extension_exists(kappa2: &HomologyClass, c: SigmaClass) -> Result<bool> {
    extension_exists_bits(&class_bits(kappa2)?, c)
}

pub fn construct_extension_bits(kappa2: &BitVector) -> Result<Gf2Functional> {
    match solve(kappa2, SigmaClass::ONE)? {
        Some(x) => Ok(Gf2Functional::new(x)),
        None => Err(Error::Precondition(
            "the mod-2 class of the knot is zero".into(),
        )),
    }
}

/// A functional taking the value 1 on `kappa2`.
pub fn construct_extension(kappa2: &HomologyClass) -> Result<Gf2Functional> {
    construct_extension_bits(&class_bits(kappa2)?)
}
