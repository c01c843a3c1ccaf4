//! Small triangulated manifolds and knots with known answers.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::decide::Outcome;
use crate::error::{Error, Result};
use crate::homology::GroupSummary;
use crate::knot::EdgeLoop;
use crate::manifold::CompactModel3;
use crate::simplicial::{barycentric_subdivide, Simplex, SimplicialComplex};

/// A manifold family with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Ball,
    SolidTorus,
    ThickenedTorus,
    Handlebody { genus: u32 },
    LensPunctured { p: u32, q: u32 },
    S1xS2Punctured,
}

/// Which knot of a family to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KnotSelector {
    Core,
    CorePower(i32),
    Contractible,
    TorsionGenerator,
    HandleCore(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogSpec {
    pub family: Family,
    pub knot: KnotSelector,
}

/// Expected homology of a catalog model, `H_0 .. H_2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub homology_z: Vec<GroupSummary>,
    pub homology_z2: Vec<GroupSummary>,
    pub locally_finite_h1: GroupSummary,
}

/// A generated model with its named knots and expected answers.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub family: Family,
    pub model: CompactModel3,
    pub knots: Vec<(KnotSelector, EdgeLoop)>,
    pub fixture: Fixture,
}

impl CatalogEntry {
    pub fn knot(&self, sel: KnotSelector) -> Option<&EdgeLoop> {
        self.knots.iter().find(|(s, _)| *s == sel).map(|(_, k)| k)
    }
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Ball => "ball",
            Family::SolidTorus => "solid_torus",
            Family::ThickenedTorus => "thickened_torus",
            Family::Handlebody { .. } => "handlebody",
            Family::LensPunctured { .. } => "lens_punctured",
            Family::S1xS2Punctured => "s1xs2_punctured",
        }
    }

    pub fn check(&self) -> Result<()> {
        match *self {
            Family::Handlebody { genus } if !(1..=4).contains(&genus) => Err(
                Error::InvalidParameters(format!("handlebody genus must be in 1..=4, got {genus}")),
            ),
            Family::LensPunctured { p, q } => {
                if !(2..=7).contains(&p) {
                    return Err(Error::InvalidParameters(format!(
                        "lens p must be in 2..=7, got {p}"
                    )));
                }
                if q == 0 || q >= p || p.gcd(&q) != 1 {
                    return Err(Error::InvalidParameters(format!(
                        "lens q must be coprime to p and in 1..p, got q = {q}"
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Knots this family knows how to produce.
    pub fn default_knots(&self) -> Vec<KnotSelector> {
        match *self {
            Family::Ball => vec![KnotSelector::Contractible],
            Family::SolidTorus => vec![
                KnotSelector::Core,
                KnotSelector::CorePower(2),
                KnotSelector::Contractible,
            ],
            Family::ThickenedTorus => vec![KnotSelector::Core, KnotSelector::Contractible],
            Family::Handlebody { genus } => (0..genus).map(KnotSelector::HandleCore).collect(),
            Family::LensPunctured { .. } => vec![KnotSelector::TorsionGenerator],
            Family::S1xS2Punctured => vec![KnotSelector::Core, KnotSelector::Contractible],
        }
    }

    pub fn fixture(&self) -> Fixture {
        let g = GroupSummary::new;
        let z = || g(1, &[]);
        let zero = GroupSummary::trivial;
        match *self {
            Family::Ball => Fixture {
                homology_z: vec![z(), zero(), zero()],
                homology_z2: vec![z(), zero(), zero()],
                locally_finite_h1: zero(),
            },
            Family::SolidTorus => Fixture {
                homology_z: vec![z(), z(), zero()],
                homology_z2: vec![z(), z(), zero()],
                locally_finite_h1: zero(),
            },
            Family::ThickenedTorus => Fixture {
                homology_z: vec![z(), g(2, &[]), z()],
                homology_z2: vec![z(), g(2, &[]), z()],
                locally_finite_h1: z(),
            },
            Family::Handlebody { genus } => Fixture {
                homology_z: vec![z(), g(genus as usize, &[]), zero()],
                homology_z2: vec![z(), g(genus as usize, &[]), zero()],
                locally_finite_h1: zero(),
            },
            Family::LensPunctured { p, .. } => {
                let even = usize::from(p % 2 == 0);
                Fixture {
                    homology_z: vec![z(), g(0, &[p as u64]), zero()],
                    homology_z2: vec![z(), g(even, &[]), g(even, &[])],
                    locally_finite_h1: g(0, &[p as u64]),
                }
            }
            Family::S1xS2Punctured => Fixture {
                homology_z: vec![z(), z(), z()],
                homology_z2: vec![z(), z(), z()],
                locally_finite_h1: z(),
            },
        }
    }

    /// The verdict the decision procedure must reach.
    pub fn expected_outcome(&self, sel: KnotSelector) -> Result<Outcome> {
        use KnotSelector as K;
        Ok(match (*self, sel) {
            (Family::Ball, K::Contractible) => Outcome::NotRealizable,
            (Family::SolidTorus, K::Core) => Outcome::Realizable,
            (Family::SolidTorus, K::CorePower(n)) if n % 2 != 0 => Outcome::Realizable,
            (Family::SolidTorus, K::CorePower(_)) => Outcome::NotRealizable,
            (Family::SolidTorus, K::Contractible) => Outcome::NotRealizable,
            (Family::ThickenedTorus, K::Core) => Outcome::Realizable,
            (Family::ThickenedTorus, K::Contractible) => Outcome::NotRealizable,
            (Family::Handlebody { .. }, K::HandleCore(_)) => Outcome::Realizable,
            (Family::LensPunctured { .. }, K::TorsionGenerator) => Outcome::PreconditionFailed,
            (Family::S1xS2Punctured, K::Core) => Outcome::PreconditionFailed,
            (Family::S1xS2Punctured, K::Contractible) => Outcome::NotRealizable,
            _ => return Err(unsupported(self, sel)),
        })
    }
}

fn unsupported(f: &Family, sel: KnotSelector) -> Error {
    Error::InvalidParameters(format!("family {} has no knot {sel}", f.name()))
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Handlebody { genus } => write!(f, "handlebody(g={genus})"),
            Family::LensPunctured { p, q } => write!(f, "lens_punctured(p={p},q={q})"),
            other => f.write_str(other.name()),
        }
    }
}

impl fmt::Display for KnotSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotSelector::Core => f.write_str("core"),
            KnotSelector::CorePower(n) => write!(f, "core_power({n})"),
            KnotSelector::Contractible => f.write_str("contractible"),
            KnotSelector::TorsionGenerator => f.write_str("torsion_generator"),
            KnotSelector::HandleCore(i) => write!(f, "handle_core({i})"),
        }
    }
}

impl FromStr for KnotSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameters(format!("unknown knot selector `{s}`"));
        let arg = |prefix: &str| -> Option<&str> {
            s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')
        };
        Ok(match s {
            "core" => KnotSelector::Core,
            "contractible" => KnotSelector::Contractible,
            "torsion_generator" => KnotSelector::TorsionGenerator,
            _ => {
                if let Some(n) = arg("core_power") {
                    KnotSelector::CorePower(n.trim().parse().map_err(|_| bad())?)
                } else if let Some(i) = arg("handle_core") {
                    KnotSelector::HandleCore(i.trim().parse().map_err(|_| bad())?)
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

/// Staircase triangulation of `base x [0, layers - 1]`, closed up into
/// `base x S^1` by `wrap` when given. Vertex `d` of layer `l` gets label
/// `l * nv + d`.
fn prism(
    base: &[[u32; 3]],
    nv: u32,
    layers: u32,
    wrap: Option<&dyn Fn(u32) -> u32>,
) -> Vec<[u32; 4]> {
    let mut tets = Vec::new();
    let mut slab = |bottom: u32, top: u32, map: &dyn Fn(u32) -> u32| {
        for tri in base {
            let mut t = *tri;
            t.sort_unstable();
            let lo = |d: u32| bottom * nv + d;
            let hi = |d: u32| top * nv + map(d);
            let [a, b, c] = t;
            tets.push([lo(a), lo(b), lo(c), hi(c)]);
            tets.push([lo(a), lo(b), hi(b), hi(c)]);
            tets.push([lo(a), hi(a), hi(b), hi(c)]);
        }
    };
    for l in 0..layers - 1 {
        slab(l, l + 1, &|d| d);
    }
    if let Some(map) = wrap {
        slab(layers - 1, 0, map);
    }
    tets
}

/// A disk: the polygon `w_0 .. w_{m-1}` fanned from `w_0`, inside an
/// annulus to the rim `z_0 .. z_{m-1}`. `w_i = i`, `z_i = m + i`.
fn disk(m: u32) -> Vec<[u32; 3]> {
    let mut tris: Vec<[u32; 3]> = (1..m - 1).map(|i| [0, i, i + 1]).collect();
    let inner: Vec<u32> = (0..m).collect();
    let outer: Vec<u32> = (m..2 * m).collect();
    tris.extend(annulus(&inner, &outer));
    tris
}

fn annulus(inner: &[u32], outer: &[u32]) -> Vec<[u32; 3]> {
    let m = inner.len();
    (0..m)
        .flat_map(|j| {
            let k = (j + 1) % m;
            [
                [inner[j], inner[k], outer[j]],
                [inner[k], outer[j], outer[k]],
            ]
        })
        .collect()
}

fn model_from(tets: &[[u32; 4]]) -> Result<CompactModel3> {
    CompactModel3::new(SimplicialComplex::from_tetrahedra(tets)?)
}

fn knot(vs: Vec<u32>) -> Result<EdgeLoop> {
    EdgeLoop::new(vs)
}

/// A solid Klein bottle: the disk times a circle, closed up by a
/// reflection. Not orientable.
pub fn solid_klein_bottle() -> SimplicialComplex {
    let m = 3;
    let reflect = move |d: u32| {
        if d < m {
            (m - d) % m
        } else {
            m + (2 * m - (d - m) - 1) % m
        }
    };
    let tets = prism(&disk(m), 2 * m, 3, Some(&reflect));
    SimplicialComplex::from_tetrahedra(&tets).expect("well-formed tetrahedra")
}

/// Builds the model of `family` with the requested knots.
pub fn generate_with(family: Family, knots: &[KnotSelector]) -> Result<CatalogEntry> {
    family.check()?;
    for &k in knots {
        family.expected_outcome(k)?;
    }
    let (model, loops) = match family {
        Family::Ball => ball(knots)?,
        Family::SolidTorus => solid_torus(knots)?,
        Family::ThickenedTorus => thickened_torus(knots)?,
        Family::Handlebody { genus } => handlebody(genus, knots)?,
        Family::LensPunctured { p, q } => lens_punctured(p, q, knots)?,
        Family::S1xS2Punctured => s1xs2_punctured(knots)?,
    };
    let knots = knots.iter().copied().zip(loops).collect::<Vec<_>>();
    for (_, k) in &knots {
        k.check_in(&model)?;
    }
    Ok(CatalogEntry {
        family,
        model,
        knots,
        fixture: family.fixture(),
    })
}

/// Builds the model and knot described by `spec`.
pub fn generate(spec: &CatalogSpec) -> Result<(CompactModel3, EdgeLoop)> {
    let mut entry = generate_with(spec.family, &[spec.knot])?;
    let (_, k) = entry.knots.pop().expect("one knot requested");
    Ok((entry.model, k))
}

/// Every family at its default parameters with all its knots.
pub fn standard_catalog() -> Result<Vec<CatalogEntry>> {
    let families = [
        Family::Ball,
        Family::SolidTorus,
        Family::ThickenedTorus,
        Family::Handlebody { genus: 2 },
        Family::LensPunctured { p: 3, q: 1 },
        Family::LensPunctured { p: 4, q: 1 },
        Family::S1xS2Punctured,
    ];
    families
        .iter()
        .map(|f| generate_with(*f, &f.default_knots()))
        .collect()
}

fn ball(knots: &[KnotSelector]) -> Result<(CompactModel3, Vec<EdgeLoop>)> {
    let nv = 6;
    let model = model_from(&prism(&disk(3), nv, 3, None))?;
    let loops = knots
        .iter()
        .map(|_| knot(vec![nv, nv + 1, nv + 2]))
        .collect::<Result<_>>()?;
    Ok((model, loops))
}

fn solid_torus(knots: &[KnotSelector]) -> Result<(CompactModel3, Vec<EdgeLoop>)> {
    const LAYERS: u32 = 3;
    let mut m = 3;
    for k in knots {
        if let KnotSelector::CorePower(n) = *k {
            if n == 0 || n.abs() > 4 {
                return Err(Error::InvalidParameters(format!(
                    "core power must be in 1..=4 up to sign, got {n}"
                )));
            }
            m = m.max(n.unsigned_abs() + 1);
        }
    }
    let nv = 2 * m;
    let at = |w: u32, layer: u32| (layer % LAYERS) * nv + w;
    let model = model_from(&prism(&disk(m), nv, LAYERS, Some(&|d| d)))?;
    let loops = knots
        .iter()
        .map(|k| match *k {
            KnotSelector::Core => knot((0..LAYERS).map(|l| at(0, l)).collect()),
            KnotSelector::Contractible => knot(vec![at(0, 0), at(1, 0), at(2, 0)]),
            KnotSelector::CorePower(n) => {
                let turns = n.unsigned_abs();
                let mut vs = vec![at(0, 0)];
                for j in 1..=turns {
                    vs.push(at(j, 1));
                    for l in 2..=LAYERS {
                        vs.push(at(j, l));
                    }
                }
                if n < 0 {
                    vs.reverse();
                }
                knot(vs)
            }
            other => Err(unsupported(&Family::SolidTorus, other)),
        })
        .collect::<Result<_>>()?;
    Ok((model, loops))
}

fn seven_vertex_torus() -> Vec<[u32; 3]> {
    (0..7)
        .flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]])
        .collect()
}

fn thickened_torus(knots: &[KnotSelector]) -> Result<(CompactModel3, Vec<EdgeLoop>)> {
    let nv = 7;
    let model = model_from(&prism(&seven_vertex_torus(), nv, 3, None))?;
    let loops = knots
        .iter()
        .map(|k| match *k {
            KnotSelector::Core => knot((0..7).map(|d| nv + d).collect()),
            KnotSelector::Contractible => knot(vec![nv, nv + 1, nv + 3]),
            other => Err(unsupported(&Family::ThickenedTorus, other)),
        })
        .collect::<Result<_>>()?;
    Ok((model, loops))
}

/// A strip of `genus` triangles, each with a triangular hole surrounded by
/// a ring of interior vertices.
fn holed_strip(genus: u32) -> (u32, Vec<[u32; 3]>, Vec<[u32; 3]>) {
    let base = genus + 2;
    let mut tris = Vec::new();
    let mut rings = Vec::new();
    for i in 0..genus {
        let outer = [i, i + 1, i + 2];
        let ring = [base + 6 * i, base + 6 * i + 1, base + 6 * i + 2];
        let hole = [base + 6 * i + 3, base + 6 * i + 4, base + 6 * i + 5];
        tris.extend(annulus(&ring, &outer));
        tris.extend(annulus(&hole, &ring));
        rings.push(ring);
    }
    (base + 6 * genus, tris, rings)
}

fn handlebody(genus: u32, knots: &[KnotSelector]) -> Result<(CompactModel3, Vec<EdgeLoop>)> {
    let (nv, tris, rings) = holed_strip(genus);
    let model = model_from(&prism(&tris, nv, 3, None))?;
    let loops = knots
        .iter()
        .map(|k| match *k {
            KnotSelector::HandleCore(i) if i < genus => {
                knot(rings[i as usize].iter().map(|w| nv + w).collect())
            }
            KnotSelector::HandleCore(i) => Err(Error::InvalidParameters(format!(
                "handle index {i} out of range for genus {genus}"
            ))),
            other => Err(unsupported(&Family::Handlebody { genus }, other)),
        })
        .collect::<Result<_>>()?;
    Ok((model, loops))
}

/// `L(p, q)` minus an open ball: the join of two `2p`-gons, subdivided and
/// divided by the rotation `x_i -> x_{i+2}`, `y_j -> y_{j+2q}`; then the
/// open star of the image of `y_0` is removed.
fn lens_punctured(
    p: u32,
    q: u32,
    knots: &[KnotSelector],
) -> Result<(CompactModel3, Vec<EdgeLoop>)> {
    let n = 2 * p;
    let x = |i: u32| i % n;
    let y = |j: u32| n + j % n;
    let mut join = Vec::new();
    for i in 0..n {
        for j in 0..n {
            join.push([x(i), x(i + 1), y(j), y(j + 1)]);
        }
    }
    let sphere = SimplicialComplex::from_tetrahedra(&join)?;
    let sd = barycentric_subdivide(&sphere);
    let rotate = |v: u32| if v < n { x(v + 2) } else { y(v - n + 2 * q) };

    let mut orbit: HashMap<u32, u32> = HashMap::new();
    for k in 0..=3 {
        for s in sphere.simplices(k) {
            let label = sd.barycenter(s).expect("source simplex");
            if orbit.contains_key(&label) {
                continue;
            }
            let mut members = vec![label];
            let mut t = s.clone();
            for _ in 1..p {
                t = Simplex::new(t.vertices().iter().map(|&v| rotate(v)))?;
                members.push(sd.barycenter(&t).expect("rotation preserves the join"));
            }
            let rep = *members.iter().min().expect("nonempty orbit");
            for m in members {
                orbit.insert(m, rep);
            }
        }
    }

    let quotient: BTreeSet<[u32; 4]> = sd
        .complex()
        .simplices(3)
        .iter()
        .map(|t| {
            let mut q4 = [0u32; 4];
            for (slot, v) in q4.iter_mut().zip(t.vertices()) {
                *slot = orbit[v];
            }
            q4.sort_unstable();
            q4
        })
        .collect();
    if quotient.len() * p as usize != sd.complex().count(3) {
        return Err(Error::InvalidModel("rotation does not act freely".into()));
    }
    let puncture = orbit[&sd.barycenter(&Simplex::vertex(y(0))).expect("vertex")];
    let kept: Vec<[u32; 4]> = quotient
        .into_iter()
        .filter(|t| !t.contains(&puncture))
        .collect();
    let (complex, relabel) = SimplicialComplex::from_tetrahedra(&kept)?.compact_labels();
    let model = CompactModel3::new(complex)?;

    let label = |s: &[u32]| -> Result<u32> {
        let b = sd
            .barycenter(&Simplex::new(s.iter().copied())?)
            .expect("simplex of the join");
        Ok(relabel[&orbit[&b]])
    };
    let loops = knots
        .iter()
        .map(|k| match *k {
            KnotSelector::TorsionGenerator => knot(vec![
                label(&[x(0)])?,
                label(&[x(0), x(1)])?,
                label(&[x(1)])?,
                label(&[x(1), x(2)])?,
            ]),
            other => Err(unsupported(&Family::LensPunctured { p, q }, other)),
        })
        .collect::<Result<_>>()?;
    Ok((model, loops))
}

fn s1xs2_punctured(knots: &[KnotSelector]) -> Result<(CompactModel3, Vec<EdgeLoop>)> {
    let nv = 6;
    let octahedron: Vec<[u32; 3]> = (0..8)
        .map(|bits| [bits & 1, 2 + ((bits >> 1) & 1), 4 + ((bits >> 2) & 1)])
        .collect();
    let tets: Vec<[u32; 4]> = prism(&octahedron, nv, 3, Some(&|d| d))
        .into_iter()
        .filter(|t| !t.contains(&0))
        .collect();
    let (complex, relabel) = SimplicialComplex::from_tetrahedra(&tets)?.compact_labels();
    let model = CompactModel3::new(complex)?;
    let loops = knots
        .iter()
        .map(|k| match *k {
            KnotSelector::Core => knot((0..3).map(|l| relabel[&(l * nv + 1)]).collect()),
            KnotSelector::Contractible => {
                knot([1, 3, 5].iter().map(|d| relabel[&(2 * nv + d)]).collect())
            }
            other => Err(unsupported(&Family::S1xS2Punctured, other)),
        })
        .collect::<Result<_>>()?;
    Ok((model, loops))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology_summaries;
    use crate::manifold::validate;
    use crate::simplicial::Ring;

    #[test]
    fn sizes() {
        assert_eq!(ball(&[]).unwrap().0.complex().count(3), 42);
        assert_eq!(thickened_torus(&[]).unwrap().0.complex().count(3), 84);
        assert_eq!(solid_torus(&[]).unwrap().0.complex().count(3), 63);
    }

    #[test]
    fn fixtures_match_engine() {
        for entry in standard_catalog().unwrap() {
            let x = entry.model.complex();
            let hz = homology_summaries(x, None, Ring::Z).unwrap();
            let h2 = homology_summaries(x, None, Ring::Z2).unwrap();
            assert_eq!(hz[..3], entry.fixture.homology_z[..], "{}", entry.family);
            assert_eq!(h2[..3], entry.fixture.homology_z2[..], "{}", entry.family);
            assert_eq!(
                entry.model.locally_finite_h1(Ring::Z).unwrap().summary(),
                entry.fixture.locally_finite_h1,
                "{}",
                entry.family
            );
        }
    }

    #[test]
    fn klein_bottle_is_not_orientable() {
        let r = validate(&solid_klein_bottle());
        assert!(r.is_pseudomanifold, "{r:?}");
        assert!(!r.is_orientable);
        assert!(!r.orientation_obstruction.is_empty());
    }

    #[test]
    fn selector_round_trip() {
        for s in [
            "core",
            "core_power(-3)",
            "contractible",
            "torsion_generator",
            "handle_core(1)",
        ] {
            assert_eq!(s.parse::<KnotSelector>().unwrap().to_string(), s);
        }
        assert!("core_power".parse::<KnotSelector>().is_err());
    }

    #[test]
    fn parameter_ranges() {
        assert!(generate_with(Family::Handlebody { genus: 5 }, &[]).is_err());
        assert!(generate_with(Family::LensPunctured { p: 4, q: 2 }, &[]).is_err());
        assert!(generate_with(Family::SolidTorus, &[KnotSelector::CorePower(5)]).is_err());
        assert!(generate_with(Family::Ball, &[KnotSelector::Core]).is_err());
    }
}
