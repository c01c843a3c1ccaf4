use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Coefficient ring for chains and homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    /// The integers.
    Z,
    /// The field with two elements.
    Z2,
}

impl Ring {
    pub(crate) fn normalize(self, x: BigInt) -> BigInt {
        match self {
            Ring::Z => x,
            Ring::Z2 => x.mod_floor(&BigInt::from(2)),
        }
    }

    pub(crate) fn is_unit(self, x: &BigInt) -> bool {
        match self {
            Ring::Z => x.magnitude().is_one(),
            Ring::Z2 => x.is_odd(),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Z => "Z",
            Ring::Z2 => "Z2",
        })
    }
}

/// A simplicial chain with coefficients in `Z` or `Z2`, keyed by simplex.
///
/// Chains are keyed by vertex tuples, so a chain on a subcomplex is the
/// same chain on any complex containing it.
#[derive(Clone, PartialEq, Eq)]
pub struct Chain {
    degree: usize,
    ring: Ring,
    terms: BTreeMap<Simplex, BigInt>,
}

impl Chain {
    pub fn zero(degree: usize, ring: Ring) -> Self {
        Chain {
            degree,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        degree: usize,
        ring: Ring,
        terms: impl IntoIterator<Item = (Simplex, BigInt)>,
    ) -> Result<Self> {
        let mut c = Chain::zero(degree, ring);
        for (s, x) in terms {
            c.add_term(s, x)?;
        }
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Simplex, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, s: &Simplex) -> BigInt {
        self.terms.get(s).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, s: Simplex, x: BigInt) -> Result<()> {
        if s.dim() != self.degree {
            return Err(Error::DimensionMismatch(format!(
                "simplex {s:?} in a chain of degree {}",
                self.degree
            )));
        }
        let slot = self.terms.entry(s.clone()).or_default();
        *slot = self.ring.normalize(std::mem::take(slot) + x);
        if slot.is_zero() {
            self.terms.remove(&s);
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Chain) -> Result<()> {
        if self.degree != other.degree || self.ring != other.ring {
            return Err(Error::DimensionMismatch(format!(
                "cannot combine a degree-{} {} chain with a degree-{} {} chain",
                self.degree, self.ring, other.degree, other.ring
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Chain) -> Result<Chain> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (s, x) in &other.terms {
            let slot = out.terms.entry(s.clone()).or_default();
            *slot = self.ring.normalize(std::mem::take(slot) + x);
        }
        out.terms.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub fn scale(&self, factor: &BigInt) -> Chain {
        let terms = self
            .terms
            .iter()
            .map(|(s, x)| (s.clone(), self.ring.normalize(x * factor)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Chain {
            degree: self.degree,
            ring: self.ring,
            terms,
        }
    }

    pub fn neg(&self) -> Chain {
        self.scale(&BigInt::from(-1))
    }

    /// Reduction of an integral chain modulo two.
    pub fn reduce_mod2(&self) -> Chain {
        let terms = self
            .terms
            .iter()
            .filter(|(_, x)| x.is_odd())
            .map(|(s, _)| (s.clone(), BigInt::one()))
            .collect();
        Chain {
            degree: self.degree,
            ring: Ring::Z2,
            terms,
        }
    }

    pub fn boundary(&self) -> Chain {
        let mut out = Chain::zero(self.degree.saturating_sub(1), self.ring);
        if self.degree == 0 {
            return out;
        }
        for (s, x) in &self.terms {
            for (sign, f) in s.facets() {
                let slot = out.terms.entry(f).or_default();
                *slot = self.ring.normalize(std::mem::take(slot) + x * sign);
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }

    pub fn is_cycle(&self) -> bool {
        self.boundary().is_zero()
    }

    /// Drops every term supported in `sub`.
    pub fn without(&self, sub: &SimplicialComplex) -> Chain {
        let terms = self
            .terms
            .iter()
            .filter(|(s, _)| !sub.contains(s))
            .map(|(s, x)| (s.clone(), x.clone()))
            .collect();
        Chain {
            degree: self.degree,
            ring: self.ring,
            terms,
        }
    }

    pub fn is_supported_in(&self, x: &SimplicialComplex) -> bool {
        self.terms.keys().all(|s| x.contains(s))
    }

    /// Algebraic sum of the coefficients, i.e. the augmentation of a 0-chain.
    pub fn coefficient_sum(&self) -> BigInt {
        self.ring.normalize(self.terms.values().sum())
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chain[{}, {}](", self.degree, self.ring)?;
        for (i, (s, x)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}*{s}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(vs: &[u32]) -> Simplex {
        Simplex::new(vs.iter().copied()).unwrap()
    }

    #[test]
    fn triangle_boundary_is_a_cycle() {
        let c = Chain::from_terms(2, Ring::Z, [(s(&[0, 1, 2]), BigInt::one())]).unwrap();
        let b = c.boundary();
        assert_eq!(b.coefficient(&s(&[0, 2])), BigInt::from(-1));
        assert!(b.is_cycle());
    }

    #[test]
    fn mod2_coefficients_wrap() {
        let mut c = Chain::zero(1, Ring::Z2);
        c.add_term(s(&[0, 1]), BigInt::one()).unwrap();
        c.add_term(s(&[0, 1]), BigInt::one()).unwrap();
        assert!(c.is_zero());
        let z = Chain::from_terms(1, Ring::Z, [(s(&[0, 1]), BigInt::from(-3))]).unwrap();
        assert_eq!(z.reduce_mod2().coefficient(&s(&[0, 1])), BigInt::one());
    }

    #[test]
    fn degree_mismatch_rejected() {
        let mut c = Chain::zero(1, Ring::Z);
        assert!(c.add_term(s(&[0, 1, 2]), BigInt::one()).is_err());
    }
}
