//! Simplicial complexes, chains, boundary operators and barycentric
//! subdivision.

mod chain;
mod complex;
mod subdivision;

pub use chain::{Chain, Ring};
pub use complex::{star_neighborhood, Simplex, SimplicialComplex, MAX_DIM};
pub use subdivision::{barycentric_subdivide, induced_signs, Subdivision};
