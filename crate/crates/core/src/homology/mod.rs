//! Absolute and relative simplicial homology over `Z` and `Z2`, with
//! explicit generators.
//!
//! A [`HomologyGroup`] keeps enough of its computation around to express
//! any cycle in its own basis ([`HomologyGroup::class_of`]). Coordinates
//! list the free generators first, then the torsion generators; torsion
//! coordinates are reduced into `[0, d)`.

mod reduction;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{snf, IntMatrix};
use crate::simplicial::{Chain, Ring, SimplicialComplex, MAX_DIM};

pub use crate::simplicial::Ring as CoefficientRing;

/// Isomorphism type of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub betti: usize,
    pub torsion: Vec<u64>,
}

impl GroupSummary {
    pub fn new(betti: usize, torsion: &[u64]) -> Self {
        GroupSummary {
            betti,
            torsion: torsion.to_vec(),
        }
    }

    pub fn trivial() -> Self {
        Self::new(0, &[])
    }

    pub fn free(betti: usize) -> Self {
        Self::new(betti, &[])
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Dimension of the mod-2 reduction `G ⊗ Z2`.
    pub fn mod2_rank(&self) -> usize {
        self.betti + self.torsion.iter().filter(|d| *d % 2 == 0).count()
    }
}

impl fmt::Display for GroupSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// A presentation `Z^betti + Z/d1 + .. + Z/dr` with `d1 | d2 | ..`, and a
/// representative cycle for each generator (free ones first).
#[derive(Clone, Debug)]
pub struct GroupPresentation {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
    pub basis: Vec<Chain>,
}

impl GroupPresentation {
    pub fn rank(&self) -> usize {
        self.betti + self.torsion.len()
    }

    pub fn summary(&self) -> GroupSummary {
        GroupSummary {
            betti: self.betti,
            torsion: self
                .torsion
                .iter()
                .map(|d| u64::try_from(d).expect("torsion coefficient fits in u64"))
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
enum Slot {
    Free(usize),
    Torsion(usize, BigInt),
}

struct GroupData {
    complex: SimplicialComplex,
    rel: Option<SimplicialComplex>,
    degree: usize,
    ring: Ring,
    presentation: GroupPresentation,
    substitutions: Vec<reduction::Substitution>,
    survivor_pos: BTreeMap<usize, usize>,
    kernel_coords: IntMatrix,
    p: IntMatrix,
    slots: Vec<Slot>,
}

/// `H_k(X; R)` or `H_k(X, A; R)` with explicit generators.
#[derive(Clone)]
pub struct HomologyGroup {
    data: Arc<GroupData>,
}

impl fmt::Debug for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "H{}({:?}{}; {}) = {}",
            self.degree(),
            self.complex(),
            if self.data.rel.is_some() { ", A" } else { "" },
            self.ring(),
            self.summary()
        )
    }
}

/// A homology class in a given group.
#[derive(Clone)]
pub struct HomologyClass {
    group: HomologyGroup,
    coords: Vec<BigInt>,
}

impl fmt::Debug for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "[{}] in {}", c.join(", "), self.group.summary())
    }
}

impl HomologyClass {
    pub fn group(&self) -> &HomologyGroup {
        &self.group
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn ring(&self) -> Ring {
        self.group.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// A cycle representing this class.
    pub fn representative(&self) -> Chain {
        let mut out = Chain::zero(self.group.degree(), self.group.ring());
        for (x, gen) in self.coords.iter().zip(&self.group.presentation().basis) {
            if !x.is_zero() {
                out = out
                    .add(&gen.scale(x))
                    .expect("basis chains share degree and ring");
            }
        }
        out
    }

    pub fn add(&self, other: &HomologyClass) -> Result<HomologyClass> {
        if !Arc::ptr_eq(&self.group.data, &other.group.data) {
            return Err(Error::CarrierMismatch(
                "classes live in different groups".into(),
            ));
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(self.group.normalize_coords(coords))
    }

    pub fn scale(&self, k: &BigInt) -> HomologyClass {
        self.group
            .normalize_coords(self.coords.iter().map(|x| x * k).collect())
    }
}

impl PartialEq for HomologyClass {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group.data, &other.group.data) && self.coords == other.coords
    }
}

impl HomologyGroup {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.data.complex
    }

    pub fn relative_to(&self) -> Option<&SimplicialComplex> {
        self.data.rel.as_ref()
    }

    pub fn degree(&self) -> usize {
        self.data.degree
    }

    pub fn ring(&self) -> Ring {
        self.data.ring
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.data.presentation
    }

    pub fn summary(&self) -> GroupSummary {
        self.data.presentation.summary()
    }

    pub fn betti(&self) -> usize {
        self.data.presentation.betti
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.data.presentation.torsion
    }

    pub fn rank(&self) -> usize {
        self.data.presentation.rank()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank() == 0
    }

    pub fn zero(&self) -> HomologyClass {
        HomologyClass {
            group: self.clone(),
            coords: vec![BigInt::zero(); self.rank()],
        }
    }

    /// The class of the `i`-th generator.
    pub fn generator(&self, i: usize) -> HomologyClass {
        let mut coords = vec![BigInt::zero(); self.rank()];
        coords[i] = BigInt::one();
        HomologyClass {
            group: self.clone(),
            coords,
        }
    }

    pub fn class_from_coords(&self, coords: Vec<BigInt>) -> Result<HomologyClass> {
        if coords.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for a group of rank {}",
                coords.len(),
                self.rank()
            )));
        }
        Ok(self.normalize_coords(coords))
    }

    fn normalize_coords(&self, mut coords: Vec<BigInt>) -> HomologyClass {
        let betti = self.betti();
        for (i, x) in coords.iter_mut().enumerate() {
            if i >= betti {
                *x = x.mod_floor(&self.data.presentation.torsion[i - betti]);
            } else if self.ring() == Ring::Z2 {
                *x = Ring::Z2.normalize(std::mem::take(x));
            }
        }
        HomologyClass {
            group: self.clone(),
            coords,
        }
    }

    /// Coordinates of the class of a cycle (a relative cycle for relative
    /// groups) in this group's basis.
    ///
    /// An integral chain handed to a `Z2` group is reduced mod 2 first.
    pub fn class_of(&self, z: &Chain) -> Result<HomologyClass> {
        let data = &*self.data;
        if z.degree() != data.degree {
            return Err(Error::DimensionMismatch(format!(
                "degree-{} chain in H{}",
                z.degree(),
                data.degree
            )));
        }
        let z = match (z.ring(), data.ring) {
            (Ring::Z, Ring::Z2) => z.reduce_mod2(),
            (Ring::Z2, Ring::Z) => {
                return Err(Error::CarrierMismatch(
                    "a mod-2 chain has no integral class".into(),
                ))
            }
            _ => z.clone(),
        };
        if let Some(s) = z.terms().keys().find(|s| !data.complex.contains(s)) {
            return Err(Error::UnknownSimplex(s.vertices().to_vec()));
        }
        let z = match &data.rel {
            Some(a) => z.without(a),
            None => z,
        };
        let bd = match &data.rel {
            Some(a) => z.boundary().without(a),
            None => z.boundary(),
        };
        if !bd.is_zero() {
            return Err(Error::NotACycle(bd.len()));
        }

        let mut x: BTreeMap<usize, BigInt> = z
            .terms()
            .iter()
            .map(|(s, v)| (data.complex.index_of(s).expect("checked above"), v.clone()))
            .collect();
        reduction::project(data.ring, &data.substitutions, &mut x);
        let mut reduced = vec![BigInt::zero(); data.survivor_pos.len()];
        for (i, v) in x {
            if let Some(&p) = data.survivor_pos.get(&i) {
                reduced[p] = v;
            }
        }
        let y = data.kernel_coords.mul_vec(&reduced);
        let w = data.p.mul_vec(&y);
        let coords = data
            .slots
            .iter()
            .map(|slot| match slot {
                Slot::Free(i) => data.ring.normalize(w[*i].clone()),
                Slot::Torsion(i, d) => w[*i].mod_floor(d),
            })
            .collect();
        Ok(HomologyClass {
            group: self.clone(),
            coords,
        })
    }

    fn same_carrier(&self, other: &HomologyGroup) -> bool {
        self.complex().same_as(other.complex())
            && self.degree() == other.degree()
            && match (self.relative_to(), other.relative_to()) {
                (None, None) => true,
                (Some(a), Some(b)) => a.same_as(b),
                _ => false,
            }
    }
}

/// Computes `H_k(X; ring)`, or `H_k(X, A; ring)` when `rel` is given, via
/// the quotient complex `C(X) / C(A)`.
pub fn homology_group(
    x: &SimplicialComplex,
    rel: Option<&SimplicialComplex>,
    k: usize,
    ring: Ring,
) -> Result<HomologyGroup> {
    if k > MAX_DIM {
        return Err(Error::DegreeOutOfRange(k));
    }
    if let Some(a) = rel {
        if !a.is_subcomplex_of(x) {
            return Err(Error::NotSubcomplex(
                "relative subcomplex is not contained in the complex".into(),
            ));
        }
    }
    let alive = |deg: usize| -> Vec<bool> {
        x.simplices(deg)
            .iter()
            .map(|s| rel.is_none_or(|a| !a.contains(s)))
            .collect()
    };
    let lo_cols = if k == 0 {
        vec![Vec::new(); x.count(0)]
    } else {
        x.boundary_columns(k)
    };
    let hi_cols = if k == MAX_DIM {
        Vec::new()
    } else {
        x.boundary_columns(k + 1)
    };
    let alive_lo = if k == 0 { Vec::new() } else { alive(k - 1) };
    let alive_hi = if k == MAX_DIM {
        Vec::new()
    } else {
        alive(k + 1)
    };
    let red = reduction::reduce(ring, lo_cols, hi_cols, alive_lo, alive(k), alive_hi);

    let pos = |v: &[usize]| -> BTreeMap<usize, usize> {
        v.iter().enumerate().map(|(p, &i)| (i, p)).collect()
    };
    let used = |ids: Vec<usize>| -> BTreeMap<usize, usize> {
        let set: std::collections::BTreeSet<usize> = ids.into_iter().collect();
        set.into_iter().enumerate().map(|(p, i)| (i, p)).collect()
    };
    let k_pos = pos(&red.survivors_k);
    let lo_pos = used(red.lo_entries.iter().map(|(i, _, _)| *i).collect());
    let hi_pos = used(red.hi_entries.iter().map(|(_, j, _)| *j).collect());
    let b_lo = IntMatrix::from_triplets(
        lo_pos.len(),
        red.survivors_k.len(),
        red.lo_entries
            .iter()
            .map(|(i, j, v)| (lo_pos[i], k_pos[j], v.clone())),
    );
    let b_hi = IntMatrix::from_triplets(
        red.survivors_k.len(),
        hi_pos.len(),
        red.hi_entries
            .iter()
            .map(|(i, j, v)| (k_pos[i], hi_pos[j], v.clone())),
    );
    if ring == Ring::Z2 {
        debug_assert!(
            b_lo.is_zero() && b_hi.is_zero(),
            "mod-2 reduction leaves no units"
        );
    }

    let n = red.survivors_k.len();
    let lo_snf = snf(&b_lo);
    let r1 = lo_snf.rank();
    let z = n - r1;
    let kernel_coords = IntMatrix::from_triplets(
        z,
        n,
        lo_snf
            .v_inv
            .entries()
            .into_iter()
            .filter(|(i, _, _)| *i >= r1)
            .map(|(i, j, v)| (i - r1, j, v)),
    );
    let kernel_basis = IntMatrix::from_triplets(
        n,
        z,
        lo_snf
            .v
            .entries()
            .into_iter()
            .filter(|(_, j, _)| *j >= r1)
            .map(|(i, j, v)| (i, j - r1, v)),
    );
    let w = kernel_coords.mul(&b_hi);
    let hi_snf = snf(&w);
    let diag = hi_snf.d.diagonal();

    let mut free = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..z {
        let d = diag.get(i).cloned().unwrap_or_default();
        if d.is_zero() {
            free.push(Slot::Free(i));
        } else if !d.is_one() {
            torsion.push(Slot::Torsion(i, d));
        }
    }
    let slots: Vec<Slot> = free.into_iter().chain(torsion).collect();

    let generators_in_kernel = kernel_basis.mul(&hi_snf.u_inv);
    let basis = slots
        .iter()
        .map(|slot| {
            let col = match slot {
                Slot::Free(i) | Slot::Torsion(i, _) => *i,
            };
            let mut v: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (row, j, val) in generators_in_kernel.entries() {
                if j == col {
                    let val = ring.normalize(val);
                    if !val.is_zero() {
                        v.insert(red.survivors_k[row], val);
                    }
                }
            }
            reduction::lift(ring, &red.corrections, &mut v);
            Chain::from_terms(
                k,
                ring,
                v.into_iter()
                    .map(|(i, val)| (x.simplices(k)[i].clone(), val)),
            )
        })
        .collect::<Result<Vec<_>>>()?;

    let presentation = GroupPresentation {
        betti: slots.iter().filter(|s| matches!(s, Slot::Free(_))).count(),
        torsion: slots
            .iter()
            .filter_map(|s| match s {
                Slot::Torsion(_, d) => Some(d.clone()),
                Slot::Free(_) => None,
            })
            .collect(),
        basis,
    };

    Ok(HomologyGroup {
        data: Arc::new(GroupData {
            complex: x.clone(),
            rel: rel.cloned(),
            degree: k,
            ring,
            presentation,
            substitutions: red.substitutions,
            survivor_pos: k_pos,
            kernel_coords,
            p: hi_snf.u,
            slots,
        }),
    })
}

/// Image of an integral class under `H_k(-; Z) -> H_k(-; Z2)`.
pub fn mod2_reduce(c: &HomologyClass, target: &HomologyGroup) -> Result<HomologyClass> {
    if c.ring() != Ring::Z || target.ring() != Ring::Z2 {
        return Err(Error::CarrierMismatch(
            "mod-2 reduction goes from a Z group to a Z2 group".into(),
        ));
    }
    if !c.group().same_carrier(target) {
        return Err(Error::CarrierMismatch(
            "mod-2 target was computed from a different complex, pair or degree".into(),
        ));
    }
    target.class_of(&c.representative().reduce_mod2())
}

/// Matrix of the map induced by the inclusion of carriers, with respect to
/// the stored bases: column `j` holds the coordinates of the image of the
/// `j`-th source generator.
pub fn induced_map_between(source: &HomologyGroup, target: &HomologyGroup) -> Result<IntMatrix> {
    if source.degree() != target.degree() || source.ring() != target.ring() {
        return Err(Error::CarrierMismatch("degree or ring differ".into()));
    }
    if !source.complex().is_subcomplex_of(target.complex()) {
        return Err(Error::CarrierMismatch(
            "source complex is not a subcomplex of the target".into(),
        ));
    }
    if let Some(a) = source.relative_to() {
        let ok = target.relative_to().is_some_and(|b| a.is_subcomplex_of(b));
        if !ok {
            return Err(Error::CarrierMismatch(
                "source pair does not map into the target pair".into(),
            ));
        }
    }
    let mut entries = Vec::new();
    for (j, gen) in source.presentation().basis.iter().enumerate() {
        let img = target.class_of(gen)?;
        entries.extend(img.coords.into_iter().enumerate().map(|(i, v)| (i, j, v)));
    }
    Ok(IntMatrix::from_triplets(
        target.rank(),
        source.rank(),
        entries,
    ))
}

/// The map `H_k(A; ring) -> H_k(X; ring)` induced by an inclusion.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub source: HomologyGroup,
    pub target: HomologyGroup,
    pub matrix: IntMatrix,
}

pub fn induced_map(
    sub: &SimplicialComplex,
    whole: &SimplicialComplex,
    k: usize,
    ring: Ring,
) -> Result<InducedMap> {
    if !sub.is_subcomplex_of(whole) {
        return Err(Error::CarrierMismatch("not an inclusion".into()));
    }
    let source = homology_group(sub, None, k, ring)?;
    let target = homology_group(whole, None, k, ring)?;
    let matrix = induced_map_between(&source, &target)?;
    Ok(InducedMap {
        source,
        target,
        matrix,
    })
}

/// Summaries of `H_0 .. H_3`.
pub fn homology_summaries(
    x: &SimplicialComplex,
    rel: Option<&SimplicialComplex>,
    ring: Ring,
) -> Result<Vec<GroupSummary>> {
    (0..=MAX_DIM)
        .map(|k| homology_group(x, rel, k, ring).map(|g| g.summary()))
        .collect()
}

#[cfg(test)]
mod tests;
