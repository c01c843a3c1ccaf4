//! Knots as simple closed edge paths in the interior of a model.

mod exterior;
mod offsets;
mod pairing;

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::HomologyClass;
use crate::manifold::CompactModel3;
use crate::simplicial::{Chain, Ring, Simplex, SimplicialComplex, Subdivision};

pub use exterior::{build_exterior, ExteriorData};
pub use offsets::{preferred_offsets, solve_offsets, OffsetSolutionSet};
pub use pairing::{intersection_number, OrientedSurface};

/// An oriented knot: the cyclic vertex sequence of a closed edge path.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeLoop {
    vertices: Vec<u32>,
}

impl EdgeLoop {
    /// A loop visiting `vertices` in order and returning to the first.
    pub fn new(vertices: Vec<u32>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidKnot(format!(
                "a simple loop needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let mut seen = HashSet::new();
        if let Some(v) = vertices.iter().find(|v| !seen.insert(**v)) {
            return Err(Error::InvalidKnot(format!("vertex {v} is visited twice")));
        }
        Ok(EdgeLoop { vertices })
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive vertex pairs, including the closing one.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn reversed(&self) -> EdgeLoop {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        EdgeLoop { vertices }
    }

    /// The fundamental cycle of the loop.
    pub fn chain(&self, ring: Ring) -> Chain {
        let mut c = Chain::zero(1, ring);
        for (u, v) in self.edges() {
            let (e, sign) = Simplex::oriented_edge(u, v).expect("distinct endpoints");
            c.add_term(e, BigInt::from(sign))
                .expect("edges have degree 1");
        }
        c
    }

    /// The loop as a subcomplex: its vertices and edges.
    pub fn subcomplex(&self) -> SimplicialComplex {
        SimplicialComplex::from_simplices(
            self.edges()
                .map(|(u, v)| Simplex::oriented_edge(u, v).expect("distinct endpoints").0),
        )
    }

    /// Checks that every edge exists and every vertex is interior.
    pub fn check_in(&self, m: &CompactModel3) -> Result<()> {
        for &v in &self.vertices {
            if !m.complex().contains_vertex(v) {
                return Err(Error::InvalidKnot(format!(
                    "vertex {v} is not in the model"
                )));
            }
            if !m.is_interior_vertex(v) {
                return Err(Error::Precondition(format!(
                    "knot vertex {v} lies on the boundary"
                )));
            }
        }
        for (u, v) in self.edges() {
            let (e, _) = Simplex::oriented_edge(u, v)?;
            if !m.complex().contains(&e) {
                return Err(Error::InvalidKnot(format!("edge {e} is not in the model")));
            }
        }
        Ok(())
    }

    /// The same loop in a barycentric subdivision, through edge midpoints.
    pub fn subdivided(&self, sd: &Subdivision) -> Result<EdgeLoop> {
        let mut vertices = Vec::with_capacity(2 * self.len());
        for (u, v) in self.edges() {
            let (e, _) = Simplex::oriented_edge(u, v)?;
            let missing =
                || Error::InvalidKnot(format!("edge {e} is not in the subdivided complex"));
            vertices.push(sd.barycenter(&Simplex::vertex(u)).ok_or_else(missing)?);
            vertices.push(sd.barycenter(&e).ok_or_else(missing)?);
        }
        EdgeLoop::new(vertices)
    }
}

impl fmt::Debug for EdgeLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeLoop{:?}", self.vertices)
    }
}

/// Class of the knot in `H_1(M; ring)`.
pub fn knot_class(m: &CompactModel3, k: &EdgeLoop, ring: Ring) -> Result<HomologyClass> {
    k.check_in(m)?;
    m.homology(1, ring)?.class_of(&k.chain(ring))
}

/// Class of the knot in the locally finite group `H_1(M, dM; Z)`.
pub fn locally_finite_class(m: &CompactModel3, k: &EdgeLoop) -> Result<HomologyClass> {
    k.check_in(m)?;
    m.locally_finite_h1(Ring::Z)?.class_of(&k.chain(Ring::Z))
}

/// Whether the knot is null in locally finite homology.
pub fn is_null_locally_finite(m: &CompactModel3, k: &EdgeLoop) -> Result<bool> {
    Ok(locally_finite_class(m, k)?.is_zero())
}
