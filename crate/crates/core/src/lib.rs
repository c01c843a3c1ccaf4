//! Decides whether an oriented knot in a tame open oriented 3-manifold is
//! the fiber of a submersion to the plane.
//!
//! The open manifold is given as the interior of a compact triangulated
//! 3-manifold with boundary ([`manifold::CompactModel3`]); a knot is a
//! simple closed edge path in its interior ([`knot::EdgeLoop`]). When the
//! knot is null in locally finite homology, it is realizable exactly when
//! its class in `H_1(M; Z2)` is nonzero.

pub mod catalog;
pub mod cli;
pub mod decide;
pub mod error;
pub mod framing;
pub mod homology;
pub mod knot;
pub mod linalg;
pub mod manifold;
pub mod simplicial;

pub use error::{Error, Result};
