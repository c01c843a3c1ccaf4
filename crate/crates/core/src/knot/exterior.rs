use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::pairing::OrientedSurface;
use super::EdgeLoop;
use crate::error::{Error, Result};
use crate::homology::{homology_group, GroupSummary};
use crate::manifold::CompactModel3;
use crate::simplicial::{star_neighborhood, Chain, Ring, SimplicialComplex, Subdivision};

const MAX_SUBDIVISIONS: usize = 3;

/// The exterior of a knot together with its peripheral curves.
#[derive(Clone, Debug)]
pub struct ExteriorData {
    model: CompactModel3,
    knot: EdgeLoop,
    subdivisions: Vec<Subdivision>,
    neighborhood: SimplicialComplex,
    exterior: CompactModel3,
    torus: SimplicialComplex,
    torus_cycle: Chain,
    outer_boundary: SimplicialComplex,
    meridian: Chain,
    longitude0: Chain,
}

impl ExteriorData {
    /// The subdivided model the exterior lives in.
    pub fn model(&self) -> &CompactModel3 {
        &self.model
    }

    /// The knot carried into the subdivided model.
    pub fn knot(&self) -> &EdgeLoop {
        &self.knot
    }

    /// Number of barycentric subdivisions applied to the input model.
    pub fn subdivision_count(&self) -> usize {
        self.subdivisions.len()
    }

    /// Carrier maps, from the input model outwards.
    pub fn subdivisions(&self) -> &[Subdivision] {
        &self.subdivisions
    }

    /// The closed regular neighborhood `N(K)`.
    pub fn neighborhood(&self) -> &SimplicialComplex {
        &self.neighborhood
    }

    pub fn exterior(&self) -> &CompactModel3 {
        &self.exterior
    }

    /// The torus `dN(K)`.
    pub fn torus(&self) -> &SimplicialComplex {
        &self.torus
    }

    /// Fundamental cycle of the torus, oriented as the boundary of `N(K)`.
    pub fn torus_cycle(&self) -> &Chain {
        &self.torus_cycle
    }

    /// The boundary of the model, as a subcomplex of the exterior.
    pub fn outer_boundary(&self) -> &SimplicialComplex {
        &self.outer_boundary
    }

    pub fn meridian(&self) -> &Chain {
        &self.meridian
    }

    /// Reference longitude, parallel to the knot.
    pub fn longitude0(&self) -> &Chain {
        &self.longitude0
    }

    /// The torus curve `lambda0 + k mu`.
    pub fn longitude(&self, k: i64) -> Chain {
        self.longitude0
            .add(&self.meridian.scale(&BigInt::from(k)))
            .expect("torus cycles share degree and ring")
    }

    /// Algebraic intersection number of two cycles on the torus.
    pub fn torus_intersection(&self, a: &Chain, b: &Chain) -> Result<BigInt> {
        OrientedSurface::new(&self.torus_cycle)?.intersection(a, b)
    }
}

struct Parts {
    neighborhood: SimplicialComplex,
    exterior: CompactModel3,
    torus: SimplicialComplex,
    torus_cycle: Chain,
    meridian: Chain,
    longitude0: Chain,
}

/// Builds `E = M - int N(K)` after subdividing twice (three times if the
/// star of the twice subdivided knot is not a solid torus).
pub fn build_exterior(m: &CompactModel3, k: &EdgeLoop) -> Result<ExteriorData> {
    k.check_in(m)?;
    let mut model = m.clone();
    let mut knot = k.clone();
    let mut subdivisions = Vec::new();
    for n in 1..=MAX_SUBDIVISIONS {
        let (next, sd) = model.subdivide();
        knot = knot.subdivided(&sd)?;
        model = next;
        subdivisions.push(sd);
        if n < 2 {
            continue;
        }
        match split(&model, &knot) {
            Ok(parts) => {
                return Ok(ExteriorData {
                    outer_boundary: model.boundary().clone(),
                    model,
                    knot,
                    subdivisions,
                    neighborhood: parts.neighborhood,
                    exterior: parts.exterior,
                    torus: parts.torus,
                    torus_cycle: parts.torus_cycle,
                    meridian: parts.meridian,
                    longitude0: parts.longitude0,
                })
            }
            Err(reason) if n == MAX_SUBDIVISIONS => {
                return Err(Error::NeighborhoodNotSolidTorus {
                    subdivisions: n,
                    reason,
                })
            }
            Err(_) => {}
        }
    }
    unreachable!("loop returns on the last subdivision")
}

fn split(model: &CompactModel3, knot: &EdgeLoop) -> std::result::Result<Parts, String> {
    let x = model.complex();
    let on_knot: HashSet<u32> = knot.vertices().iter().copied().collect();
    let neighborhood = star_neighborhood(x, &knot.subcomplex()).map_err(|e| e.to_string())?;
    if neighborhood
        .vertices()
        .any(|v| model.boundary().contains_vertex(v))
    {
        return Err("neighborhood reaches the boundary".into());
    }
    let exterior_cx = x.closure_of(3, |t| !t.vertices().iter().any(|v| on_knot.contains(v)));
    if neighborhood.count(3) + exterior_cx.count(3) != x.count(3) {
        return Err("neighborhood and exterior do not tile the model".into());
    }
    let torus = neighborhood.intersection(&exterior_cx);
    if torus.count(3) != 0 || torus.euler_characteristic() != 0 {
        return Err(format!("frontier is not a torus ({:?})", torus));
    }

    let signs = model.orientation();
    let tets = x.simplices(3);
    let mut n_chain = Chain::zero(3, Ring::Z);
    let mut e_signs = Vec::with_capacity(exterior_cx.count(3));
    for (t, &s) in tets.iter().zip(signs) {
        if neighborhood.contains(t) {
            n_chain
                .add_term(t.clone(), BigInt::from(s))
                .expect("degree 3");
        } else {
            e_signs.push(s);
        }
    }
    let torus_cycle = n_chain.boundary();
    if torus_cycle.len() != torus.count(2) || !torus_cycle.is_supported_in(&torus) {
        return Err("boundary of the neighborhood is not the frontier".into());
    }

    let g_torus = homology_group(&torus, None, 1, Ring::Z).map_err(|e| e.to_string())?;
    if g_torus.summary() != GroupSummary::free(2) {
        return Err(format!("H1 of the frontier is {}", g_torus.summary()));
    }
    let g_nbhd = homology_group(&neighborhood, None, 1, Ring::Z).map_err(|e| e.to_string())?;
    if g_nbhd.summary() != GroupSummary::free(1) {
        return Err(format!("H1 of the neighborhood is {}", g_nbhd.summary()));
    }
    let image = |c: &Chain| -> std::result::Result<BigInt, String> {
        let cls = g_nbhd.class_of(c).map_err(|e| e.to_string())?;
        Ok(cls.coords()[0].clone())
    };
    let basis = &g_torus.presentation().basis;
    let (a, b) = (image(&basis[0])?, image(&basis[1])?);
    let s = image(&knot.chain(Ring::Z))?;
    if !s.abs().is_one() {
        return Err("knot does not generate H1 of its neighborhood".into());
    }
    let e = a.extended_gcd(&b);
    if !e.gcd.is_one() {
        return Err("frontier does not surject onto the neighborhood".into());
    }
    let combine = |p: &BigInt, q: &BigInt| -> Chain {
        basis[0]
            .scale(p)
            .add(&basis[1].scale(q))
            .expect("basis chains share degree and ring")
    };
    let mut meridian = combine(&-&b, &a);
    let longitude0 = combine(&(&s * &e.x), &(&s * &e.y));

    let surface = OrientedSurface::new(&torus_cycle).map_err(|e| e.to_string())?;
    let ip = surface
        .intersection(&meridian, &longitude0)
        .map_err(|e| e.to_string())?;
    if ip == -BigInt::one() {
        meridian = meridian.neg();
    } else if !ip.is_one() {
        return Err(format!("meridian and longitude meet {ip} times"));
    }
    debug_assert!(image(&meridian)?.is_zero());

    let exterior = CompactModel3::assemble(exterior_cx, e_signs);
    if exterior.boundary().count(2) != torus.count(2) + model.boundary().count(2) {
        return Err("exterior boundary is not the frontier plus the outer boundary".into());
    }
    Ok(Parts {
        neighborhood,
        exterior,
        torus,
        torus_cycle,
        meridian,
        longitude0,
    })
}
