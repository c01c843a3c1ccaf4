use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Highest simplex dimension the crate handles.
pub const MAX_DIM: usize = 3;

/// A simplex stored as its strictly increasing vertex labels.
///
/// The increasing order fixes the orientation: the simplex `[v0, .., vk]`
/// is the positively oriented one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(SmallVec<[u32; 4]>);

impl Simplex {
    /// Sorts the labels; fails on repeated vertices or more than four.
    pub fn new(vertices: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut vs: SmallVec<[u32; 4]> = vertices.into_iter().collect();
        vs.sort_unstable();
        if vs.is_empty() || vs.len() > MAX_DIM + 1 {
            return Err(Error::InvalidModel(format!(
                "simplex with {} vertices is not supported",
                vs.len()
            )));
        }
        if vs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidModel(format!(
                "simplex {vs:?} repeats a vertex"
            )));
        }
        Ok(Simplex(vs))
    }

    pub(crate) fn from_sorted(vs: SmallVec<[u32; 4]>) -> Self {
        debug_assert!(vs.windows(2).all(|w| w[0] < w[1]));
        Simplex(vs)
    }

    pub fn vertex(v: u32) -> Self {
        Simplex(smallvec::smallvec![v])
    }

    /// The edge `{u, v}` together with the sign of the directed edge `u -> v`
    /// relative to the canonical orientation.
    pub fn oriented_edge(u: u32, v: u32) -> Result<(Self, i32)> {
        let s = Simplex::new([u, v])?;
        Ok((s, if u < v { 1 } else { -1 }))
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    /// Codimension-one faces with their incidence signs `(-1)^i`, where `i`
    /// is the position of the dropped vertex.
    pub fn facets(&self) -> impl Iterator<Item = (i32, Simplex)> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| {
            let mut f = self.0.clone();
            f.remove(i);
            (if i % 2 == 0 { 1 } else { -1 }, Simplex(f))
        })
    }

    /// All nonempty faces including the simplex itself.
    pub fn all_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (1u32..(1 << n)).map(move |mask| {
            Simplex(
                (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| self.0[i])
                    .collect(),
            )
        })
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

struct ComplexData {
    simplices: [Vec<Simplex>; MAX_DIM + 1],
    index: [HashMap<Simplex, usize>; MAX_DIM + 1],
    fingerprint: u64,
}

/// A finite abstract simplicial complex of dimension at most three.
///
/// Simplices of each dimension are kept in lexicographic order; that order
/// is the canonical basis order for chains and boundary matrices. Cloning
/// is cheap.
#[derive(Clone)]
pub struct SimplicialComplex {
    data: Arc<ComplexData>,
}

impl SimplicialComplex {
    /// The closure of the given simplices under taking faces.
    pub fn from_simplices(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        let mut sets: [HashSet<Simplex>; MAX_DIM + 1] = Default::default();
        for s in simplices {
            if sets[s.dim()].contains(&s) {
                continue;
            }
            for f in s.all_faces() {
                sets[f.dim()].insert(f);
            }
        }
        let simplices = sets.map(|set| {
            let mut v: Vec<Simplex> = set.into_iter().collect();
            v.sort_unstable();
            v
        });
        Self::from_sorted_levels(simplices)
    }

    fn from_sorted_levels(simplices: [Vec<Simplex>; MAX_DIM + 1]) -> Self {
        let index = std::array::from_fn(|k| {
            simplices[k]
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), i))
                .collect()
        });
        let mut h = DefaultHasher::new();
        simplices.hash(&mut h);
        SimplicialComplex {
            data: Arc::new(ComplexData {
                simplices,
                index,
                fingerprint: h.finish(),
            }),
        }
    }

    /// Builds the complex spanned by a list of tetrahedra.
    pub fn from_tetrahedra(tets: &[[u32; 4]]) -> Result<Self> {
        let simplices = tets
            .iter()
            .map(|t| Simplex::new(t.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_simplices(simplices))
    }

    pub fn empty() -> Self {
        Self::from_sorted_levels(Default::default())
    }

    pub fn dim(&self) -> Option<usize> {
        (0..=MAX_DIM)
            .rev()
            .find(|&k| !self.data.simplices[k].is_empty())
    }

    pub fn is_empty(&self) -> bool {
        self.data.simplices[0].is_empty()
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.data.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.data.index.get(s.dim())?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.data.simplices[0].iter().map(|s| s.0[0])
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        self.contains(&Simplex::vertex(v))
    }

    /// A hash of the full simplex set; equal complexes share it.
    pub fn fingerprint(&self) -> u64 {
        self.data.fingerprint
    }

    pub fn same_as(&self, other: &SimplicialComplex) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.fingerprint() == other.fingerprint()
                && self.data.simplices == other.data.simplices)
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=MAX_DIM)
            .map(|k| if k % 2 == 0 { 1 } else { -1 } * self.count(k) as i64)
            .sum()
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        (0..=MAX_DIM).all(|k| self.simplices(k).iter().all(|s| other.contains(s)))
    }

    /// Simplices common to both complexes.
    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let levels = std::array::from_fn(|k| {
            self.simplices(k)
                .iter()
                .filter(|s| other.contains(s))
                .cloned()
                .collect()
        });
        Self::from_sorted_levels(levels)
    }

    /// The subcomplex of simplices satisfying `keep`; the predicate must be
    /// closed under taking faces.
    pub fn filter(&self, keep: impl Fn(&Simplex) -> bool) -> SimplicialComplex {
        let levels = std::array::from_fn(|k| {
            self.simplices(k)
                .iter()
                .filter(|s| keep(s))
                .cloned()
                .collect()
        });
        Self::from_sorted_levels(levels)
    }

    /// Closure of the simplices of dimension `k` satisfying `pick`.
    pub fn closure_of(&self, k: usize, pick: impl Fn(&Simplex) -> bool) -> SimplicialComplex {
        Self::from_simplices(self.simplices(k).iter().filter(|s| pick(s)).cloned())
    }

    /// For every `(k-1)`-simplex, the indices of the `k`-simplices having it
    /// as a facet.
    pub fn cofaces(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count(k.saturating_sub(1))];
        if k == 0 {
            return out;
        }
        for (j, s) in self.simplices(k).iter().enumerate() {
            for (_, f) in s.facets() {
                let i = self.index_of(&f).expect("complex is closed under faces");
                out[i].push(j);
            }
        }
        out
    }

    /// Boundary columns of degree `k`: for each `k`-simplex its facets as
    /// `(index, sign)` pairs.
    pub(crate) fn boundary_columns(&self, k: usize) -> Vec<Vec<(usize, i32)>> {
        self.simplices(k)
            .iter()
            .map(|s| {
                s.facets()
                    .map(|(sign, f)| (self.index_of(&f).expect("closed under faces"), sign))
                    .collect()
            })
            .collect()
    }

    /// Matrix of the boundary map from `k`-chains to `(k-1)`-chains in the
    /// canonical simplex order.
    pub fn boundary_matrix(&self, k: usize) -> Result<IntMatrix> {
        if !(1..=MAX_DIM).contains(&k) {
            return Err(Error::DegreeOutOfRange(k));
        }
        let cols = self.boundary_columns(k);
        Ok(IntMatrix::from_triplets(
            self.count(k - 1),
            self.count(k),
            cols.into_iter()
                .enumerate()
                .flat_map(|(j, col)| col.into_iter().map(move |(i, s)| (i, j, BigInt::from(s)))),
        ))
    }

    /// Relabels vertices to `0..n` in increasing order of their old labels.
    pub fn compact_labels(&self) -> (SimplicialComplex, HashMap<u32, u32>) {
        let map: HashMap<u32, u32> = self
            .vertices()
            .enumerate()
            .map(|(i, v)| (v, i as u32))
            .collect();
        let relabeled = (0..=MAX_DIM)
            .flat_map(|k| self.simplices(k).iter())
            .map(|s| {
                Simplex::new(s.vertices().iter().map(|v| map[v])).expect("relabeling is injective")
            });
        (Self::from_simplices(relabeled), map)
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SimplicialComplex(f = [{}, {}, {}, {}])",
            self.count(0),
            self.count(1),
            self.count(2),
            self.count(3)
        )
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for SimplicialComplex {}

/// Closed star of a subcomplex: every simplex meeting a vertex of `sub`,
/// together with all faces.
pub fn star_neighborhood(
    x: &SimplicialComplex,
    sub: &SimplicialComplex,
) -> Result<SimplicialComplex> {
    if !sub.is_subcomplex_of(x) {
        return Err(Error::NotSubcomplex(
            "star center is not contained in the ambient complex".into(),
        ));
    }
    let meets = |s: &Simplex| s.vertices().iter().any(|&v| sub.contains_vertex(v));
    Ok(SimplicialComplex::from_simplices((0..=MAX_DIM).flat_map(
        |k| x.simplices(k).iter().filter(|s| meets(s)).cloned(),
    )))
}
