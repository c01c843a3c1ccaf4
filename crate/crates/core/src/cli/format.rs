//! The line-oriented triangulation file.
//!
//! ```text
//! # comment
//! format 1
//! vertices 8
//! tet 0 1 2 3 +
//! tet 1 2 3 4 +
//! knot core 0 1 2
//! meta H1_Z Z
//! ```
//!
//! `format` and `vertices` come first. A tetrahedron line may end with an
//! orientation sign relative to its listed vertex order; either every
//! tetrahedron carries one or none does. Knot names and metadata keys are
//! single tokens; a metadata value is the rest of the line.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::knot::EdgeLoop;
use crate::manifold::CompactModel3;
use crate::simplicial::{Simplex, SimplicialComplex};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulationFile {
    pub vertex_count: u32,
    pub tetrahedra: Vec<[u32; 4]>,
    pub signs: Option<Vec<i32>>,
    pub knots: Vec<(String, EdgeLoop)>,
    pub meta: Vec<(String, String)>,
}

fn parity(t: &[u32; 4]) -> i32 {
    let mut inversions = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if t[i] > t[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl TriangulationFile {
    /// The file for a model, its tetrahedra in sorted order with their signs.
    pub fn from_model(m: &CompactModel3, knots: Vec<(String, EdgeLoop)>) -> Self {
        let tetrahedra: Vec<[u32; 4]> = m
            .complex()
            .simplices(3)
            .iter()
            .map(|s| {
                let v = s.vertices();
                [v[0], v[1], v[2], v[3]]
            })
            .collect();
        TriangulationFile {
            vertex_count: m.complex().vertices().max().map_or(0, |v| v + 1),
            tetrahedra,
            signs: Some(m.orientation().to_vec()),
            knots,
            meta: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut version = None;
        let mut vertex_count = None;
        let mut tetrahedra = Vec::new();
        let mut signs: Vec<Option<i32>> = Vec::new();
        let mut knots: Vec<(String, EdgeLoop)> = Vec::new();
        let mut meta = Vec::new();
        let mut seen_tets = HashSet::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |message: String| Error::Parse { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut tokens = content.split_whitespace();
            let keyword = tokens.next().unwrap_or_default();
            let number = |tok: &str| -> Result<u32> {
                tok.parse()
                    .map_err(|_| err(format!("expected a non-negative integer, got `{tok}`")))
            };
            if keyword != "format" && version.is_none() {
                return Err(err("the file must start with a `format` line".into()));
            }
            match keyword {
                "format" => {
                    if version.is_some() {
                        return Err(err("duplicate `format` line".into()));
                    }
                    let v = number(
                        tokens
                            .next()
                            .ok_or_else(|| err("missing format version".into()))?,
                    )?;
                    if v != FORMAT_VERSION {
                        return Err(err(format!("unsupported format version {v}")));
                    }
                    version = Some(v);
                }
                "vertices" => {
                    if vertex_count.is_some() {
                        return Err(err("duplicate `vertices` line".into()));
                    }
                    vertex_count = Some(number(
                        tokens
                            .next()
                            .ok_or_else(|| err("missing vertex count".into()))?,
                    )?);
                }
                "tet" | "knot" if vertex_count.is_none() => {
                    return Err(err(format!("`{keyword}` before the `vertices` line")));
                }
                "tet" => {
                    let n = vertex_count.unwrap_or_default();
                    let toks: Vec<&str> = tokens.by_ref().collect();
                    let (verts, sign) = match toks.as_slice() {
                        [a, b, c, d] => ([*a, *b, *c, *d], None),
                        [a, b, c, d, s] => {
                            let sign = match *s {
                                "+" => 1,
                                "-" => -1,
                                other => {
                                    return Err(err(format!("bad orientation sign `{other}`")))
                                }
                            };
                            ([*a, *b, *c, *d], Some(sign))
                        }
                        _ => return Err(err("a tetrahedron needs four vertices".into())),
                    };
                    let mut t = [0u32; 4];
                    for (slot, tok) in t.iter_mut().zip(verts) {
                        *slot = number(tok)?;
                        if *slot >= n {
                            return Err(err(format!(
                                "vertex {slot} is out of range (vertices {n})"
                            )));
                        }
                    }
                    let s = Simplex::new(t).map_err(|e| err(e.to_string()))?;
                    if !seen_tets.insert(s) {
                        return Err(err("duplicate tetrahedron".into()));
                    }
                    tetrahedra.push(t);
                    signs.push(sign);
                }
                "knot" => {
                    let n = vertex_count.unwrap_or_default();
                    let name = tokens
                        .next()
                        .ok_or_else(|| err("missing knot name".into()))?;
                    if knots.iter().any(|(k, _)| k == name) {
                        return Err(err(format!("duplicate knot `{name}`")));
                    }
                    let vertices = tokens
                        .map(|tok| {
                            let v = number(tok)?;
                            if v >= n {
                                return Err(err(format!(
                                    "vertex {v} is out of range (vertices {n})"
                                )));
                            }
                            Ok(v)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let k = EdgeLoop::new(vertices).map_err(|e| err(e.to_string()))?;
                    knots.push((name.to_string(), k));
                }
                "meta" => {
                    let rest = content["meta".len()..].trim_start();
                    let (key, value) = rest
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| err("`meta` needs a key and a value".into()))?;
                    meta.push((key.to_string(), value.trim().to_string()));
                }
                other => return Err(err(format!("unknown keyword `{other}`"))),
            }
        }

        let end = text.lines().count().max(1);
        let vertex_count = vertex_count.ok_or_else(|| Error::Parse {
            line: end,
            message: "missing `vertices` line".into(),
        })?;
        let signs = if signs.iter().all(Option::is_some) && !signs.is_empty() {
            Some(signs.into_iter().flatten().collect())
        } else if signs.iter().all(Option::is_none) {
            None
        } else {
            return Err(Error::Parse {
                line: end,
                message: "either every tetrahedron carries a sign or none does".into(),
            });
        };
        Ok(TriangulationFile {
            vertex_count,
            tetrahedra,
            signs,
            knots,
            meta,
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_string())?;
        Ok(())
    }

    pub fn complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_tetrahedra(&self.tetrahedra)
    }

    /// Validates the complex; signs, when present, must be coherent.
    pub fn model(&self) -> Result<CompactModel3> {
        let complex = self.complex()?;
        match &self.signs {
            None => CompactModel3::new(complex),
            Some(signs) => {
                let mut orientation = vec![0; complex.count(3)];
                for (t, s) in self.tetrahedra.iter().zip(signs) {
                    let i = complex
                        .index_of(&Simplex::new(*t)?)
                        .expect("listed tetrahedra are in the complex");
                    orientation[i] = s * parity(t);
                }
                CompactModel3::with_orientation(complex, orientation)
            }
        }
    }

    pub fn knot(&self, name: &str) -> Result<&EdgeLoop> {
        self.knots
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, k)| k)
            .ok_or_else(|| {
                let names: Vec<&str> = self.knots.iter().map(|(k, _)| k.as_str()).collect();
                Error::InvalidKnot(format!(
                    "no knot named `{name}` (file has: {})",
                    names.join(", ")
                ))
            })
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for TriangulationFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "format {FORMAT_VERSION}")?;
        writeln!(f, "vertices {}", self.vertex_count)?;
        for (key, value) in &self.meta {
            writeln!(f, "meta {key} {value}")?;
        }
        for (i, t) in self.tetrahedra.iter().enumerate() {
            write!(f, "tet {} {} {} {}", t[0], t[1], t[2], t[3])?;
            match self.signs.as_ref().map(|s| s[i]) {
                Some(1) => writeln!(f, " +")?,
                Some(_) => writeln!(f, " -")?,
                None => writeln!(f)?,
            }
        }
        for (name, k) in &self.knots {
            write!(f, "knot {name}")?;
            for v in k.vertices() {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
