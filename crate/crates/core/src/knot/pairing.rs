//! Algebraic intersection numbers of 1-cycles on an oriented closed surface.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::simplicial::{Chain, Simplex};

/// A closed surface with oriented triangles, stored as the clockwise
/// rotation around each vertex.
#[derive(Clone, Debug)]
pub struct OrientedSurface {
    /// `(v, q) -> p` when some triangle reads `v, p, q` counterclockwise.
    clockwise: HashMap<(u32, u32), u32>,
    degree: HashMap<u32, usize>,
}

impl OrientedSurface {
    /// `triangles` is the fundamental 2-cycle: every triangle with
    /// coefficient `+1` (counterclockwise in increasing vertex order) or
    /// `-1`.
    pub fn new(triangles: &Chain) -> Result<Self> {
        if triangles.degree() != 2 {
            return Err(Error::DimensionMismatch("surface needs a 2-chain".into()));
        }
        let mut clockwise = HashMap::new();
        let mut degree: HashMap<u32, usize> = HashMap::new();
        for (t, x) in triangles.terms() {
            let v = t.vertices();
            let cyc = if x.is_one() {
                [v[0], v[1], v[2]]
            } else if (-x).is_one() {
                [v[0], v[2], v[1]]
            } else {
                return Err(Error::InvalidModel(format!(
                    "triangle {t} has coefficient {x}"
                )));
            };
            for i in 0..3 {
                let (a, p, q) = (cyc[i], cyc[(i + 1) % 3], cyc[(i + 2) % 3]);
                if clockwise.insert((a, q), p).is_some() {
                    return Err(Error::InvalidModel(format!(
                        "triangles around vertex {a} are not coherently oriented"
                    )));
                }
                *degree.entry(a).or_default() += 1;
            }
        }
        Ok(OrientedSurface { clockwise, degree })
    }

    /// Algebraic intersection number `a . b`, positive when the tangents
    /// of `a` and `b` form a positive frame.
    ///
    /// `b` is pushed off to its left; each time the push-off sweeps
    /// clockwise across an edge `v -> x` it picks up `-a(v -> x)`.
    pub fn intersection(&self, a: &Chain, b: &Chain) -> Result<BigInt> {
        if a.degree() != 1 || b.degree() != 1 {
            return Err(Error::DimensionMismatch(
                "intersection pairs 1-cycles".into(),
            ));
        }
        if !a.is_cycle() || !b.is_cycle() {
            return Err(Error::NotACycle(a.boundary().len() + b.boundary().len()));
        }
        let a_dir = |v: u32, x: u32| -> BigInt {
            let (e, sign) = Simplex::oriented_edge(v, x).expect("distinct endpoints");
            a.coefficient(&e) * sign
        };

        let mut incoming: HashMap<u32, Vec<u32>> = HashMap::new();
        let mut outgoing: HashMap<u32, Vec<u32>> = HashMap::new();
        for (e, x) in b.terms() {
            let (p, q) = (e.vertices()[0], e.vertices()[1]);
            let (from, to) = if x > &BigInt::zero() { (p, q) } else { (q, p) };
            let n = usize::try_from(x.magnitude()).map_err(|_| {
                Error::InvalidParameters("cycle coefficient too large to trace".into())
            })?;
            for _ in 0..n {
                outgoing.entry(from).or_default().push(to);
                incoming.entry(to).or_default().push(from);
            }
        }

        let mut total = BigInt::zero();
        for (&v, ins) in &incoming {
            let outs = &outgoing[&v];
            let limit = self.degree.get(&v).copied().unwrap_or(0);
            for (&u, &w) in ins.iter().zip(outs) {
                let mut x = self.next_clockwise(v, u)?;
                let mut steps = 0;
                while x != w {
                    total -= a_dir(v, x);
                    x = self.next_clockwise(v, x)?;
                    steps += 1;
                    if steps > limit {
                        return Err(Error::InvalidModel(format!(
                            "edge {v}-{w} is not in the surface"
                        )));
                    }
                }
            }
        }
        Ok(total)
    }

    fn next_clockwise(&self, v: u32, x: u32) -> Result<u32> {
        self.clockwise
            .get(&(v, x))
            .copied()
            .ok_or_else(|| Error::InvalidModel(format!("edge {v}-{x} is not in the surface")))
    }
}

/// Intersection number of two 1-cycles on the surface with fundamental
/// cycle `surface`.
pub fn intersection_number(surface: &Chain, a: &Chain, b: &Chain) -> Result<BigInt> {
    OrientedSurface::new(surface)?.intersection(a, b)
}
