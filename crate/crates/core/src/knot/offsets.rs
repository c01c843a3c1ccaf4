use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ExteriorData;
use crate::error::{Error, Result};
use crate::homology::{homology_group, HomologyClass};
use crate::simplicial::Ring;

/// The set of integers `k` with `[lambda0 + k * mu] = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OffsetSolutionSet {
    Empty,
    All,
    /// `{base + t * period}`; `period == 0` is the singleton `{base}`.
    Affine {
        base: i64,
        period: u64,
    },
}

impl OffsetSolutionSet {
    pub fn is_empty(&self) -> bool {
        matches!(self, OffsetSolutionSet::Empty)
    }

    pub fn is_unique(&self) -> bool {
        matches!(self, OffsetSolutionSet::Affine { period: 0, .. })
    }

    pub fn contains(&self, k: i64) -> bool {
        match *self {
            OffsetSolutionSet::Empty => false,
            OffsetSolutionSet::All => true,
            OffsetSolutionSet::Affine { base, period: 0 } => k == base,
            OffsetSolutionSet::Affine { base, period } => (k - base).rem_euclid(period as i64) == 0,
        }
    }

    /// A few members, for spot checks.
    pub fn samples(&self) -> Vec<i64> {
        match *self {
            OffsetSolutionSet::Empty => Vec::new(),
            OffsetSolutionSet::All => vec![-1, 0, 1, 2],
            OffsetSolutionSet::Affine { base, period: 0 } => vec![base],
            OffsetSolutionSet::Affine { base, period } => {
                let p = period as i64;
                vec![base - p, base, base + p]
            }
        }
    }
}

impl fmt::Display for OffsetSolutionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OffsetSolutionSet::Empty => f.write_str("empty"),
            OffsetSolutionSet::All => f.write_str("all"),
            OffsetSolutionSet::Affine { base, period: 0 } => write!(f, "unique {base}"),
            OffsetSolutionSet::Affine { base, period } => write!(f, "{base} mod {period}"),
        }
    }
}

/// Residue class `{r + m t}`, `m == 0` meaning the single point `r`.
struct Residue {
    r: BigInt,
    m: BigInt,
}

impl Residue {
    fn meet(self, r2: BigInt, m2: BigInt) -> Option<Residue> {
        if m2.is_zero() {
            let ok = if self.m.is_zero() {
                self.r == r2
            } else {
                (&r2 - &self.r).is_multiple_of(&self.m)
            };
            return ok.then_some(Residue { r: r2, m: m2 });
        }
        if self.m.is_zero() {
            return (&self.r - &r2).is_multiple_of(&m2).then_some(self);
        }
        let g = self.m.gcd(&m2);
        let diff = &r2 - &self.r;
        if !diff.is_multiple_of(&g) {
            return None;
        }
        let step = &m2 / &g;
        let t = (&diff / &g * inverse_mod(&(&self.m / &g), &step)).mod_floor(&step);
        let lcm = &self.m * &step;
        Some(Residue {
            r: (&self.r + &self.m * t).mod_floor(&lcm),
            m: lcm,
        })
    }
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Solves `l + k m = 0` in a group `Z^betti + sum Z/d_i`, given the
/// coordinates of `l` and `m`.
pub fn solve_offsets(
    betti: usize,
    torsion: &[BigInt],
    l: &[BigInt],
    m: &[BigInt],
) -> Result<OffsetSolutionSet> {
    let rank = betti + torsion.len();
    if l.len() != rank || m.len() != rank {
        return Err(Error::DimensionMismatch(format!(
            "coordinates of length {} and {} in a group of rank {rank}",
            l.len(),
            m.len()
        )));
    }
    let mut set = Residue {
        r: BigInt::zero(),
        m: BigInt::one(),
    };
    for i in 0..rank {
        let (li, mi) = (&l[i], &m[i]);
        let next = if i < betti {
            if mi.is_zero() {
                if li.is_zero() {
                    continue;
                }
                None
            } else if li.is_multiple_of(mi) {
                set.meet(-(li / mi), BigInt::zero())
            } else {
                None
            }
        } else {
            let d = &torsion[i - betti];
            let g = mi.gcd(d);
            if !li.is_multiple_of(&g) {
                None
            } else {
                let modulus = d / &g;
                let r = (-(li / &g) * inverse_mod(&(mi / &g), &modulus)).mod_floor(&modulus);
                set.meet(r, modulus)
            }
        };
        match next {
            Some(s) => set = s,
            None => return Ok(OffsetSolutionSet::Empty),
        }
    }
    if set.m.is_one() {
        return Ok(OffsetSolutionSet::All);
    }
    let overflow = || Error::InvalidParameters("offset does not fit in 64 bits".into());
    let base = if set.m.is_zero() || set.r.abs() <= set.m.clone() / 2 {
        set.r.clone()
    } else {
        &set.r - &set.m
    };
    Ok(OffsetSolutionSet::Affine {
        base: base.to_i64().ok_or_else(overflow)?,
        period: set.m.to_u64().ok_or_else(overflow)?,
    })
}

/// Integers `k` making `lambda0 + k mu` null in `H_1(E, dM; Z)`.
pub fn preferred_offsets(ext: &ExteriorData) -> Result<OffsetSolutionSet> {
    let (l, m) = offset_classes(ext)?;
    let g = l.group();
    solve_offsets(g.betti(), g.torsion(), l.coords(), m.coords())
}

/// Classes of `lambda0` and `mu` in `H_1(E, dM; Z)`.
pub(crate) fn offset_classes(ext: &ExteriorData) -> Result<(HomologyClass, HomologyClass)> {
    let g = homology_group(
        ext.exterior().complex(),
        Some(ext.outer_boundary()),
        1,
        Ring::Z,
    )?;
    Ok((g.class_of(ext.longitude0())?, g.class_of(ext.meridian())?))
}
