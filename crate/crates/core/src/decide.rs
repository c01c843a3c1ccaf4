//! The realizability decision and its consistency checks.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framing::{
    cable_class, class_bits, construct_extension, extension_exists_bits, SigmaClass,
};
use crate::homology::{homology_group, mod2_reduce, GroupSummary};
use crate::knot::{build_exterior, preferred_offsets, EdgeLoop, ExteriorData, OffsetSolutionSet};
use crate::linalg::BitVector;
use crate::manifold::CompactModel3;
use crate::simplicial::{Chain, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Realizable,
    NotRealizable,
    PreconditionFailed,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Realizable => "Realizable",
            Outcome::NotRealizable => "NotRealizable",
            Outcome::PreconditionFailed => "PreconditionFailed",
        })
    }
}

/// A chain written out as `(vertices, coefficient)` pairs.
pub type ChainTerms = Vec<(Vec<u32>, i64)>;

/// The homological data a verdict rests on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub h1: GroupSummary,
    pub kappa: Vec<i64>,
    pub h1_mod2: GroupSummary,
    pub kappa2: Vec<u8>,
    pub locally_finite_h1: GroupSummary,
    pub locally_finite_class: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offsets: Option<OffsetSolutionSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub longitude0: Option<ChainTerms>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meridian: Option<ChainTerms>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub evidence: Evidence,
}

/// One passed consistency check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub offsets: OffsetSolutionSet,
    pub subdivisions: usize,
    pub exterior_tetrahedra: usize,
    pub checks: Vec<CheckRecord>,
}

pub(crate) fn small(coords: &[BigInt]) -> Result<Vec<i64>> {
    coords
        .iter()
        .map(|x| {
            x.to_i64().ok_or_else(|| {
                Error::InvalidParameters(format!("coordinate {x} does not fit in 64 bits"))
            })
        })
        .collect()
}

pub fn chain_terms(c: &Chain) -> Result<ChainTerms> {
    c.terms()
        .iter()
        .map(|(s, x)| Ok((s.vertices().to_vec(), small(std::slice::from_ref(x))?[0])))
        .collect()
}

/// Decides realizability of `k` in the interior of `m`.
pub fn decide(m: &CompactModel3, k: &EdgeLoop) -> Result<Verdict> {
    k.check_in(m)?;
    let gz = m.homology(1, Ring::Z)?;
    let g2 = m.homology(1, Ring::Z2)?;
    let lf = m.locally_finite_h1(Ring::Z)?;
    let kappa = gz.class_of(&k.chain(Ring::Z))?;
    let kappa2 = mod2_reduce(&kappa, &g2)?;
    let lf_class = lf.class_of(&k.chain(Ring::Z))?;
    let bits = class_bits(&kappa2)?;

    let outcome = if !lf_class.is_zero() {
        Outcome::PreconditionFailed
    } else if !kappa2.is_zero() {
        Outcome::Realizable
    } else {
        Outcome::NotRealizable
    };
    let extension = match outcome {
        Outcome::Realizable => Some(bool_bits(construct_extension(&kappa2)?.coefficients())),
        _ => None,
    };
    Ok(Verdict {
        outcome,
        evidence: Evidence {
            h1: gz.summary(),
            kappa: small(kappa.coords())?,
            h1_mod2: g2.summary(),
            kappa2: bool_bits(&bits),
            locally_finite_h1: lf.summary(),
            locally_finite_class: small(lf_class.coords())?,
            extension,
            offsets: None,
            longitude0: None,
            meridian: None,
        },
    })
}

fn bool_bits(b: &BitVector) -> Vec<u8> {
    b.to_bools().into_iter().map(u8::from).collect()
}

fn fail(check: &'static str, detail: impl Into<String>) -> Error {
    Error::Inconsistency {
        check,
        detail: detail.into(),
    }
}

/// Runs the exterior-level consistency checks for a knot that is null in
/// locally finite homology.
pub fn cross_check(m: &CompactModel3, k: &EdgeLoop) -> Result<CrossCheckReport> {
    let verdict = decide(m, k)?;
    let ext = build_exterior(m, k)?;
    cross_check_with(&verdict, &ext)
}

/// [`cross_check`] with a verdict and exterior already at hand.
pub fn cross_check_with(verdict: &Verdict, ext: &ExteriorData) -> Result<CrossCheckReport> {
    if verdict.outcome == Outcome::PreconditionFailed {
        return Err(Error::Precondition(
            "the knot is not null in locally finite homology".into(),
        ));
    }
    let mut checks = Vec::new();
    let kappa2_zero = verdict.evidence.kappa2.iter().all(|&b| b == 0);

    let offsets = preferred_offsets(ext)?;
    if offsets.is_empty() {
        return Err(fail(
            "preferred-framing-exists",
            "no offset makes the longitude null",
        ));
    }
    checks.push(CheckRecord {
        name: "preferred-framing-exists",
        detail: format!("offsets: {offsets}"),
    });

    let samples = offsets.samples();
    if kappa2_zero {
        let g2 = homology_group(ext.exterior().complex(), None, 1, Ring::Z2)?;
        for &j in &samples {
            let c = g2.class_of(&ext.longitude(j))?;
            if !c.is_zero() {
                return Err(fail(
                    "preferred-longitude-even",
                    format!("longitude with offset {j} is nonzero mod 2"),
                ));
            }
        }
        checks.push(CheckRecord {
            name: "preferred-longitude-even",
            detail: format!("offsets {samples:?} vanish in H1(E; Z2)"),
        });
    } else {
        let g2 = ext.model().homology(1, Ring::Z2)?;
        let kappa2 = g2.class_of(&ext.knot().chain(Ring::Z2))?;
        let phi = construct_extension(&kappa2)?;
        if phi.apply(&kappa2)? != SigmaClass::ONE {
            return Err(fail(
                "extension-witness",
                "constructed functional misses the knot",
            ));
        }
        checks.push(CheckRecord {
            name: "extension-witness",
            detail: format!("functional {phi} takes the value 1"),
        });
    }

    let dim = verdict.evidence.kappa2.len();
    for eps in [SigmaClass::ZERO, SigmaClass::ONE] {
        if extension_exists_bits(&BitVector::zeros(dim), cable_class(eps))? {
            return Err(fail(
                "cable-obstruction",
                "the zero class reached the value 1",
            ));
        }
    }
    checks.push(CheckRecord {
        name: "cable-obstruction",
        detail: "no functional sends 0 to the cable class".into(),
    });

    let gz = ext.model().homology(1, Ring::Z)?;
    let kappa = gz.class_of(&ext.knot().chain(Ring::Z))?;
    for j in samples.iter().copied().chain([0, 1]) {
        let c = gz.class_of(&ext.longitude(j))?;
        if c != kappa {
            return Err(fail(
                "longitude-parallel",
                format!("longitude with offset {j} is not homologous to the knot"),
            ));
        }
    }
    checks.push(CheckRecord {
        name: "longitude-parallel",
        detail: "every sampled longitude is homologous to the knot".into(),
    });

    let ip = ext.torus_intersection(ext.meridian(), ext.longitude0())?;
    if ip != BigInt::from(1) {
        return Err(fail(
            "meridian-longitude",
            format!("intersection number {ip}"),
        ));
    }
    let nbhd = homology_group(ext.neighborhood(), None, 1, Ring::Z)?;
    if !nbhd.class_of(ext.meridian())?.is_zero() {
        return Err(fail(
            "meridian-longitude",
            "meridian is not null in the neighborhood",
        ));
    }
    checks.push(CheckRecord {
        name: "meridian-longitude",
        detail: "meridian bounds in N(K) and meets the longitude once".into(),
    });

    debug_assert!(verdict
        .evidence
        .locally_finite_class
        .iter()
        .all(Zero::is_zero));
    Ok(CrossCheckReport {
        offsets,
        subdivisions: ext.subdivision_count(),
        exterior_tetrahedra: ext.exterior().complex().count(3),
        checks,
    })
}

/// Decides and, when the precondition holds, cross-checks, recording the
/// offsets and peripheral curves in the evidence.
pub fn decide_checked(
    m: &CompactModel3,
    k: &EdgeLoop,
) -> Result<(Verdict, Option<CrossCheckReport>)> {
    let mut verdict = decide(m, k)?;
    if verdict.outcome == Outcome::PreconditionFailed {
        return Ok((verdict, None));
    }
    let ext = build_exterior(m, k)?;
    let report = cross_check_with(&verdict, &ext)?;
    verdict.evidence.offsets = Some(report.offsets);
    verdict.evidence.longitude0 = Some(chain_terms(ext.longitude0())?);
    verdict.evidence.meridian = Some(chain_terms(ext.meridian())?);
    Ok((verdict, Some(report)))
}
