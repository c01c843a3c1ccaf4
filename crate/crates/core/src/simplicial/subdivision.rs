use smallvec::SmallVec;

use super::{Chain, Simplex, SimplicialComplex, MAX_DIM};
use crate::error::{Error, Result};

/// A barycentric subdivision together with its carrier data.
///
/// Vertices of the subdivision are the simplices of the source complex,
/// labelled `0..n` by dimension and then lexicographic order. Because labels
/// grow with dimension, a simplex of the subdivision read in increasing
/// label order is a flag `s0 < s1 < ..`, and its carrier is the last entry.
#[derive(Clone, Debug)]
pub struct Subdivision {
    source: SimplicialComplex,
    complex: SimplicialComplex,
    offsets: [u32; MAX_DIM + 2],
}

impl Subdivision {
    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Label of the barycenter of a source simplex.
    pub fn barycenter(&self, s: &Simplex) -> Option<u32> {
        self.source
            .index_of(s)
            .map(|i| self.offsets[s.dim()] + i as u32)
    }

    /// The source simplex whose barycenter carries a given label.
    pub fn simplex_at(&self, label: u32) -> Option<&Simplex> {
        let k = (0..=MAX_DIM).find(|&k| label < self.offsets[k + 1])?;
        self.source
            .simplices(k)
            .get((label - self.offsets[k]) as usize)
    }

    /// Smallest source simplex containing a simplex of the subdivision.
    pub fn carrier(&self, s: &Simplex) -> Option<&Simplex> {
        if !self.complex.contains(s) {
            return None;
        }
        self.simplex_at(*s.vertices().last().expect("simplices are nonempty"))
    }

    /// Chain-level subdivision operator; commutes with the boundary.
    pub fn subdivide_chain(&self, c: &Chain) -> Result<Chain> {
        let mut out = Chain::zero(c.degree(), c.ring());
        for (s, x) in c.terms() {
            if !self.source.contains(s) {
                return Err(Error::UnknownSimplex(s.vertices().to_vec()));
            }
            for (sign, t) in self.subdivided_simplex(s) {
                out.add_term(t, x * sign)?;
            }
        }
        Ok(out)
    }

    /// Image of a subcomplex of the source.
    pub fn subdivide_subcomplex(&self, sub: &SimplicialComplex) -> Result<SimplicialComplex> {
        if !sub.is_subcomplex_of(&self.source) {
            return Err(Error::NotSubcomplex(
                "subcomplex of a different source".into(),
            ));
        }
        let mut top = Vec::new();
        for k in 0..=MAX_DIM {
            for s in sub.simplices(k) {
                top.extend(self.subdivided_simplex(s).into_iter().map(|(_, t)| t));
            }
        }
        Ok(SimplicialComplex::from_simplices(top))
    }

    /// The oriented simplices of `Sd(s)` with their signs.
    ///
    /// Uses the cone formula `Sd(s) = b_s * Sd(ds)`, which lists a flag in
    /// decreasing label order; reversing `k+1` labels contributes the sign
    /// `(-1)^(k(k+1)/2)`.
    fn subdivided_simplex(&self, s: &Simplex) -> Vec<(i32, Simplex)> {
        let k = s.dim();
        let reversal = if (k * (k + 1) / 2).is_multiple_of(2) {
            1
        } else {
            -1
        };
        let mut out = Vec::new();
        let mut flag: SmallVec<[u32; 4]> = SmallVec::new();
        self.collect_flags(s, 1, &mut flag, &mut out);
        for (sign, _) in out.iter_mut() {
            *sign *= reversal;
        }
        out
    }

    fn collect_flags(
        &self,
        s: &Simplex,
        sign: i32,
        flag: &mut SmallVec<[u32; 4]>,
        out: &mut Vec<(i32, Simplex)>,
    ) {
        flag.push(self.barycenter(s).expect("source simplex"));
        if s.dim() == 0 {
            let mut sorted = flag.clone();
            sorted.reverse();
            out.push((sign, Simplex::from_sorted(sorted)));
        } else {
            for (face_sign, f) in s.facets() {
                self.collect_flags(&f, sign * face_sign, flag, out);
            }
        }
        flag.pop();
    }
}

/// First barycentric subdivision.
pub fn barycentric_subdivide(x: &SimplicialComplex) -> Subdivision {
    let mut offsets = [0u32; MAX_DIM + 2];
    for k in 0..=MAX_DIM {
        offsets[k + 1] = offsets[k] + x.count(k) as u32;
    }
    let mut sub = Subdivision {
        source: x.clone(),
        complex: SimplicialComplex::empty(),
        offsets,
    };
    let mut top = Vec::new();
    for k in 0..=MAX_DIM {
        for s in x.simplices(k) {
            top.extend(sub.subdivided_simplex(s).into_iter().map(|(_, t)| t));
        }
    }
    sub.complex = SimplicialComplex::from_simplices(top);
    sub
}

/// Orientation signs on the `k`-simplices of the subdivision induced by
/// signs on the `k`-simplices of the source.
pub fn induced_signs(sub: &Subdivision, k: usize, signs: &[i32]) -> Vec<i32> {
    let mut out = vec![0; sub.complex.count(k)];
    for (s, &eps) in sub.source.simplices(k).iter().zip(signs) {
        for (sign, t) in sub.subdivided_simplex(s) {
            let i = sub.complex.index_of(&t).expect("subdivided simplex exists");
            out[i] = eps * sign;
        }
    }
    out
}
