//! Compact oriented 3-manifolds with boundary, standing in for the open
//! manifold given by their interior.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{homology_group, HomologyGroup};
use crate::simplicial::{
    barycentric_subdivide, induced_signs, Chain, Ring, Simplex, SimplicialComplex, Subdivision,
};

/// Outcome of [`validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub is_pseudomanifold: bool,
    pub is_orientable: bool,
    /// Simplices violating purity or the two-tetrahedra rule.
    pub bad_simplices: Vec<Vec<u32>>,
    /// Vertices whose link is neither a disk nor a sphere.
    pub vertex_link_failures: Vec<u32>,
    /// A cycle of faces along which orientations cannot be made coherent.
    pub orientation_obstruction: Vec<Vec<u32>>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.is_pseudomanifold && self.is_orientable
    }
}

/// Checks that `x` triangulates a compact orientable 3-manifold with
/// boundary.
pub fn validate(x: &SimplicialComplex) -> ValidationReport {
    let mut report = ValidationReport::default();
    if x.count(3) == 0 {
        report.bad_simplices = x
            .simplices(0)
            .iter()
            .map(|s| s.vertices().to_vec())
            .collect();
        return report;
    }
    let mut covered: HashSet<&Simplex> = HashSet::new();
    let tet_faces: Vec<Vec<Simplex>> = x
        .simplices(3)
        .iter()
        .map(|t| t.all_faces().collect())
        .collect();
    for faces in &tet_faces {
        covered.extend(faces.iter());
    }
    for k in 0..3 {
        for s in x.simplices(k) {
            if !covered.contains(s) {
                report.bad_simplices.push(s.vertices().to_vec());
            }
        }
    }
    for (i, tets) in x.cofaces(3).iter().enumerate() {
        if tets.len() > 2 {
            report
                .bad_simplices
                .push(x.simplices(2)[i].vertices().to_vec());
        }
    }
    let faces_ok = report.bad_simplices.is_empty();

    let mut links: HashMap<u32, Vec<[u32; 3]>> = HashMap::new();
    for t in x.simplices(3) {
        let v = t.vertices();
        for i in 0..4 {
            let opp: Vec<u32> = (0..4).filter(|&j| j != i).map(|j| v[j]).collect();
            links
                .entry(v[i])
                .or_default()
                .push([opp[0], opp[1], opp[2]]);
        }
    }
    for v in x.vertices() {
        let ok = links.get(&v).is_some_and(|l| link_is_disk_or_sphere(l));
        if !ok {
            report.vertex_link_failures.push(v);
        }
    }
    report.is_pseudomanifold = faces_ok && report.vertex_link_failures.is_empty();

    if faces_ok {
        match orient(x) {
            Ok(_) => report.is_orientable = true,
            Err(Error::NonOrientable { faces }) => report.orientation_obstruction = faces,
            Err(_) => {}
        }
    }
    report
}

fn link_is_disk_or_sphere(tris: &[[u32; 3]]) -> bool {
    let mut edges: HashMap<(u32, u32), Vec<usize>> = HashMap::new();
    let mut around: HashMap<u32, Vec<(u32, u32)>> = HashMap::new();
    for (i, &[a, b, c]) in tris.iter().enumerate() {
        for (p, q, r) in [(a, b, c), (a, c, b), (b, c, a)] {
            edges.entry((p, q)).or_default().push(i);
            around.entry(r).or_default().push((p, q));
        }
    }
    if edges.values().any(|ts| ts.len() > 2) {
        return false;
    }

    let mut uf = UnionFind::new(tris.len());
    for ts in edges.values() {
        if let [s, t] = ts[..] {
            uf.union(s, t);
        }
    }
    let root = uf.find(0);
    if (0..tris.len()).any(|i| uf.find(i) != root) {
        return false;
    }

    for star in around.values() {
        if !is_path_or_cycle(star) {
            return false;
        }
    }

    let boundary_edges = edges.values().filter(|ts| ts.len() == 1).count();
    let chi = around.len() as i64 - edges.len() as i64 + tris.len() as i64;
    if boundary_edges == 0 {
        chi == 2
    } else {
        chi == 1
    }
}

fn is_path_or_cycle(edges: &[(u32, u32)]) -> bool {
    let mut degree: HashMap<u32, usize> = HashMap::new();
    let mut index: HashMap<u32, usize> = HashMap::new();
    for &(p, q) in edges {
        for v in [p, q] {
            *degree.entry(v).or_default() += 1;
            let n = index.len();
            index.entry(v).or_insert(n);
        }
    }
    if degree.values().any(|&d| d > 2) {
        return false;
    }
    let ends = degree.values().filter(|&&d| d == 1).count();
    if ends != 0 && ends != 2 {
        return false;
    }
    let mut uf = UnionFind::new(index.len());
    for &(p, q) in edges {
        uf.union(index[&p], index[&q]);
    }
    let root = uf.find(0);
    (0..index.len()).all(|i| uf.find(i) == root)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

fn facet_sign(tet: &Simplex, face: &Simplex) -> i32 {
    tet.facets()
        .find(|(_, f)| f == face)
        .map(|(s, _)| s)
        .expect("face of the tetrahedron")
}

/// Coherent orientation signs, one per tetrahedron in canonical order; the
/// first tetrahedron of each component gets `+1`.
pub fn orient(x: &SimplicialComplex) -> Result<Vec<i32>> {
    let tets = x.simplices(3);
    let tris = x.simplices(2);
    let cofaces = x.cofaces(3);
    if let Some(i) = cofaces.iter().position(|ts| ts.len() > 2) {
        return Err(Error::InvalidModel(format!(
            "triangle {} lies in {} tetrahedra",
            tris[i],
            cofaces[i].len()
        )));
    }
    let mut sign = vec![0i32; tets.len()];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; tets.len()];
    let mut depth = vec![0usize; tets.len()];
    let tet_faces = |t: usize| -> Vec<usize> {
        tets[t]
            .facets()
            .map(|(_, f)| x.index_of(&f).expect("closed under faces"))
            .collect()
    };

    for start in 0..tets.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for f in tet_faces(t) {
                for &u in &cofaces[f] {
                    if u == t {
                        continue;
                    }
                    let want =
                        -sign[t] * facet_sign(&tets[t], &tris[f]) * facet_sign(&tets[u], &tris[f]);
                    if sign[u] == 0 {
                        sign[u] = want;
                        parent[u] = Some((t, f));
                        depth[u] = depth[t] + 1;
                        queue.push_back(u);
                    } else if sign[u] != want {
                        let faces = obstruction_cycle(t, u, f, &parent, &depth)
                            .into_iter()
                            .map(|i| tris[i].vertices().to_vec())
                            .collect();
                        return Err(Error::NonOrientable { faces });
                    }
                }
            }
        }
    }
    Ok(sign)
}

fn obstruction_cycle(
    mut a: usize,
    mut b: usize,
    closing: usize,
    parent: &[Option<(usize, usize)>],
    depth: &[usize],
) -> Vec<usize> {
    let mut left = Vec::new();
    let mut right = Vec::new();
    while a != b {
        if depth[a] >= depth[b] {
            let (p, f) = parent[a].expect("non-root has a parent");
            left.push(f);
            a = p;
        } else {
            let (p, f) = parent[b].expect("non-root has a parent");
            right.push(f);
            b = p;
        }
    }
    left.push(closing);
    left.extend(right.into_iter().rev());
    left
}

/// A validated, oriented, compact triangulated 3-manifold with boundary.
#[derive(Clone, Debug)]
pub struct CompactModel3 {
    complex: SimplicialComplex,
    orientation: Vec<i32>,
    boundary: SimplicialComplex,
}

impl CompactModel3 {
    /// Validates and orients `complex`.
    pub fn new(complex: SimplicialComplex) -> Result<Self> {
        let report = validate(&complex);
        if !report.is_pseudomanifold {
            return Err(Error::InvalidModel(describe_failures(&report)));
        }
        if !report.is_orientable {
            return Err(Error::NonOrientable {
                faces: report.orientation_obstruction,
            });
        }
        let orientation = orient(&complex)?;
        Ok(Self::assemble(complex, orientation))
    }

    /// Validates `complex` and checks that `orientation` is coherent.
    pub fn with_orientation(complex: SimplicialComplex, orientation: Vec<i32>) -> Result<Self> {
        let model = Self::new(complex)?;
        if orientation.len() != model.orientation.len() || orientation.iter().any(|s| s.abs() != 1)
        {
            return Err(Error::InvalidModel(
                "expected one sign in {+1, -1} per tetrahedron".into(),
            ));
        }
        let model = Self {
            orientation,
            ..model
        };
        if !model.is_coherent() {
            return Err(Error::InvalidModel(
                "orientation signs are not coherent".into(),
            ));
        }
        Ok(model)
    }

    pub(crate) fn assemble(complex: SimplicialComplex, orientation: Vec<i32>) -> Self {
        let cofaces = complex.cofaces(3);
        let boundary = SimplicialComplex::from_simplices(
            complex
                .simplices(2)
                .iter()
                .zip(&cofaces)
                .filter(|(_, ts)| ts.len() == 1)
                .map(|(s, _)| s.clone()),
        );
        CompactModel3 {
            complex,
            orientation,
            boundary,
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn orientation(&self) -> &[i32] {
        &self.orientation
    }

    /// The boundary surface (possibly empty).
    pub fn boundary(&self) -> &SimplicialComplex {
        &self.boundary
    }

    pub fn is_interior_vertex(&self, v: u32) -> bool {
        self.complex.contains_vertex(v) && !self.boundary.contains_vertex(v)
    }

    /// The relative fundamental cycle: the sum of the oriented tetrahedra.
    pub fn fundamental_chain(&self) -> Chain {
        Chain::from_terms(
            3,
            Ring::Z,
            self.complex
                .simplices(3)
                .iter()
                .zip(&self.orientation)
                .map(|(t, &s)| (t.clone(), BigInt::from(s))),
        )
        .expect("tetrahedra have degree 3")
    }

    fn is_coherent(&self) -> bool {
        let boundary_terms = self.fundamental_chain().boundary();
        boundary_terms
            .terms()
            .keys()
            .all(|f| self.boundary.contains(f))
    }

    /// `H_k` of the compact model (equivalently of its interior).
    pub fn homology(&self, k: usize, ring: Ring) -> Result<HomologyGroup> {
        homology_group(&self.complex, None, k, ring)
    }

    /// Locally finite `H_1` of the interior, computed as `H_1(M, dM)`.
    pub fn locally_finite_h1(&self, ring: Ring) -> Result<HomologyGroup> {
        homology_group(&self.complex, Some(&self.boundary), 1, ring)
    }

    /// Barycentric subdivision with the induced orientation.
    pub fn subdivide(&self) -> (CompactModel3, Subdivision) {
        let sd = barycentric_subdivide(&self.complex);
        let orientation = induced_signs(&sd, 3, &self.orientation);
        (Self::assemble(sd.complex().clone(), orientation), sd)
    }
}

/// Locally finite `H_1` of the interior of `m`.
pub fn locally_finite_h1(m: &CompactModel3, ring: Ring) -> Result<HomologyGroup> {
    m.locally_finite_h1(ring)
}

fn describe_failures(report: &ValidationReport) -> String {
    let mut parts = Vec::new();
    if !report.bad_simplices.is_empty() {
        parts.push(format!("bad simplices {:?}", report.bad_simplices));
    }
    if !report.vertex_link_failures.is_empty() {
        parts.push(format!(
            "bad vertex links at {:?}",
            report.vertex_link_failures
        ));
    }
    if parts.is_empty() {
        parts.push("no tetrahedra".into());
    }
    parts.join("; ")
}
