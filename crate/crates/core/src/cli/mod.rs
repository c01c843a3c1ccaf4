//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a model, knot or expectation fails
//! validation, 2 on unreadable or malformed input.

pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::catalog::{generate_with, Family, KnotSelector};
use crate::decide::{chain_terms, decide, decide_checked, ChainTerms, CrossCheckReport, Verdict};
use crate::error::{Error, Result};
use crate::framing::{
    cable_class, class_bits, construct_extension, extension_exists, twist, SigmaClass,
};
use crate::homology::{homology_group, GroupSummary};
use crate::knot::{build_exterior, knot_class, preferred_offsets};
use crate::manifold::{validate, CompactModel3};
use crate::simplicial::{Chain, Ring};

pub use format::TriangulationFile;

const ABOUT: &str = "Decides whether a knot in the interior of a compact triangulated \
3-manifold is a fiber of a submersion to the plane.";

const LONG_ABOUT: &str = "Decides whether a knot in the interior of a compact triangulated \
3-manifold is a fiber of a submersion to the plane.

Only tame open manifolds are handled: the input is a compact manifold with \
boundary and the open manifold is its interior. Locally finite homology is \
computed as homology relative to the boundary.";

#[derive(Parser, Debug)]
#[command(name = "fiberknot", version, about = ABOUT, long_about = LONG_ABOUT)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a file describes an oriented 3-manifold and that its
    /// knots and recorded homology are right.
    Validate { file: PathBuf },
    /// Print homology groups.
    Homology {
        file: PathBuf,
        /// Homology relative to the boundary.
        #[arg(long)]
        rel_boundary: bool,
        /// Coefficients in Z/2 instead of Z.
        #[arg(long)]
        mod2: bool,
        /// Only this degree.
        #[arg(short = 'k', value_parser = clap::value_parser!(u8).range(0..=3))]
        degree: Option<u8>,
    },
    /// Decide realizability of a named knot.
    Decide {
        file: PathBuf,
        #[arg(long)]
        knot: String,
        /// Build the knot exterior and run the consistency checks.
        #[arg(long)]
        cross_check: bool,
        /// Print the verdict as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Build the knot exterior and print its peripheral data.
    Exterior {
        file: PathBuf,
        #[arg(long)]
        knot: String,
        /// Also print the meridian and longitude chains.
        #[arg(long)]
        chains: bool,
    },
    /// Write a catalog model with its knots.
    Generate {
        /// ball, solid_torus, thickened_torus, handlebody, lens_punctured or s1xs2_punctured
        family: String,
        #[arg(long, default_value_t = 2)]
        genus: u32,
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        q: u32,
        /// Knot selector such as `core` or `core_power(2)`; repeatable.
        /// Defaults to every knot the family supports.
        #[arg(long = "knot")]
        knots: Vec<String>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Framing class arithmetic in Z/2.
    Framing {
        #[command(subcommand)]
        op: FramingOp,
    },
}

#[derive(Subcommand, Debug)]
enum FramingOp {
    /// Class after `n` meridional twists.
    Twist { class: u8, n: i64 },
    /// Class of the cable of a knot with the given class.
    Cable { class: u8 },
    /// Whether a functional on H1(M; Z2) sends the knot to the class.
    Extend {
        file: PathBuf,
        #[arg(long)]
        knot: String,
        #[arg(long)]
        class: u8,
    },
}

enum Failure {
    Invalid(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Parse { .. } => Failure::Input(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs the command line, writing reports to `out` and diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

/// Runs the command line on the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(
        args,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Validate { file } => cmd_validate(&file, out),
        Command::Homology {
            file,
            rel_boundary,
            mod2,
            degree,
        } => cmd_homology(&file, rel_boundary, mod2, degree, out),
        Command::Decide {
            file,
            knot,
            cross_check,
            json,
        } => cmd_decide(&file, &knot, cross_check, json, out),
        Command::Exterior { file, knot, chains } => cmd_exterior(&file, &knot, chains, out),
        Command::Generate {
            family,
            genus,
            p,
            q,
            knots,
            output,
        } => cmd_generate(&family, genus, p, q, &knots, &output, out),
        Command::Framing { op } => cmd_framing(op, out),
    }
}

/// Parses a family name, taking parameters from the arguments.
pub fn family_from_name(name: &str, genus: u32, p: u32, q: u32) -> Result<Family> {
    let family = match name {
        "ball" => Family::Ball,
        "solid_torus" => Family::SolidTorus,
        "thickened_torus" => Family::ThickenedTorus,
        "handlebody" => Family::Handlebody { genus },
        "lens_punctured" => Family::LensPunctured { p, q },
        "s1xs2_punctured" => Family::S1xS2Punctured,
        other => {
            return Err(Error::InvalidParameters(format!(
                "unknown family `{other}`"
            )))
        }
    };
    family.check()?;
    Ok(family)
}

/// A group as printed in reports: `0`, `betti 2`, `torsion [3]`, or for
/// mod-2 coefficients `rank r`.
pub fn describe_group(g: &GroupSummary, ring: Ring) -> String {
    if g.is_trivial() {
        return "0".into();
    }
    match ring {
        Ring::Z2 => format!("rank {}", g.mod2_rank()),
        Ring::Z => match (g.betti, g.torsion.is_empty()) {
            (b, true) => format!("betti {b}"),
            (0, false) => format!("torsion {:?}", g.torsion),
            (b, false) => format!("betti {b}, torsion {:?}", g.torsion),
        },
    }
}

fn ring_name(ring: Ring) -> &'static str {
    match ring {
        Ring::Z => "Z",
        Ring::Z2 => "Z2",
    }
}

/// Metadata key for a homology group of the model.
fn meta_key(k: usize, ring: Ring) -> String {
    format!("H{k}_{}", ring_name(ring))
}

const LF_KEY: &str = "H1_lf";

fn verdict_key(knot: &str) -> String {
    format!("verdict.{knot}")
}

fn bits(v: &[u8]) -> String {
    format!("{v:?}")
}

fn load(file: &Path) -> Result<(TriangulationFile, CompactModel3)> {
    let f = TriangulationFile::read(file)?;
    let m = f.model()?;
    Ok((f, m))
}

fn cmd_validate(file: &Path, out: &mut dyn Write) -> Outcome {
    let f = TriangulationFile::read(file)?;
    let complex = f.complex()?;
    let report = validate(&complex);
    writeln!(out, "vertices: {}", complex.count(0))?;
    writeln!(out, "tetrahedra: {}", complex.count(3))?;
    writeln!(out, "pseudomanifold: {}", yes_no(report.is_pseudomanifold))?;
    writeln!(out, "orientable: {}", yes_no(report.is_orientable))?;
    if !report.is_valid() {
        for s in &report.bad_simplices {
            writeln!(out, "bad simplex: {s:?}")?;
        }
        for v in &report.vertex_link_failures {
            writeln!(out, "bad vertex link: {v}")?;
        }
        if !report.orientation_obstruction.is_empty() {
            writeln!(
                out,
                "orientation obstruction: {:?}",
                report.orientation_obstruction
            )?;
        }
        writeln!(out, "valid: no")?;
        return Err(Failure::Invalid(
            "the file does not describe an oriented 3-manifold".into(),
        ));
    }
    let m = f.model()?;
    writeln!(out, "boundary triangles: {}", m.boundary().count(2))?;
    writeln!(
        out,
        "euler characteristic: {}",
        complex.euler_characteristic()
    )?;

    let mut problems = Vec::new();
    for (name, k) in &f.knots {
        match k.check_in(&m) {
            Ok(()) => writeln!(out, "knot {name}: ok ({} edges)", k.len())?,
            Err(e) => {
                writeln!(out, "knot {name}: {e}")?;
                problems.push(format!("knot {name}"));
            }
        }
    }
    let mut expectations = Vec::new();
    for ring in [Ring::Z, Ring::Z2] {
        for k in 0..=3 {
            expectations.push((meta_key(k, ring), k, ring, false));
        }
    }
    expectations.push((LF_KEY.to_string(), 1, Ring::Z, true));
    for (key, k, ring, relative) in expectations {
        let Some(want) = f.meta(&key) else { continue };
        let rel = relative.then(|| m.boundary());
        let got = describe_group(&homology_group(m.complex(), rel, k, ring)?.summary(), ring);
        if got == want {
            writeln!(out, "{key}: ok ({got})")?;
        } else {
            writeln!(out, "{key}: expected {want}, computed {got}")?;
            problems.push(key);
        }
    }
    if problems.is_empty() {
        writeln!(out, "valid: yes")?;
        Ok(())
    } else {
        writeln!(out, "valid: no")?;
        Err(Failure::Invalid(format!("failed: {}", problems.join(", "))))
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_homology(
    file: &Path,
    rel_boundary: bool,
    mod2: bool,
    degree: Option<u8>,
    out: &mut dyn Write,
) -> Outcome {
    let (_, m) = load(file)?;
    let ring = if mod2 { Ring::Z2 } else { Ring::Z };
    let degrees: Vec<usize> = match degree {
        Some(k) => vec![usize::from(k)],
        None => (0..=3).collect(),
    };
    let rel = rel_boundary.then(|| m.boundary());
    for k in degrees {
        let g = homology_group(m.complex(), rel, k, ring)?;
        let label = if rel_boundary {
            format!("H{k}(M,dM;{})", ring_name(ring))
        } else {
            format!("H{k}({})", ring_name(ring))
        };
        writeln!(out, "{label}: {}", describe_group(&g.summary(), ring))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct DecideReport<'a> {
    knot: &'a str,
    verdict: &'a Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    cross_check: Option<&'a CrossCheckReport>,
}

fn cmd_decide(file: &Path, name: &str, cross: bool, json: bool, out: &mut dyn Write) -> Outcome {
    let (f, m) = load(file)?;
    let k = f.knot(name)?;
    let (verdict, report) = if cross {
        decide_checked(&m, k)?
    } else {
        (decide(&m, k)?, None)
    };
    if json {
        let doc = DecideReport {
            knot: name,
            verdict: &verdict,
            cross_check: report.as_ref(),
        };
        let text =
            serde_json::to_string_pretty(&doc).map_err(|e| Failure::Invalid(e.to_string()))?;
        writeln!(out, "{text}")?;
    } else {
        let ev = &verdict.evidence;
        writeln!(out, "knot: {name}")?;
        writeln!(out, "verdict: {}", verdict.outcome)?;
        writeln!(out, "H1(Z): {}", describe_group(&ev.h1, Ring::Z))?;
        writeln!(out, "class: {:?}", ev.kappa)?;
        writeln!(out, "H1(Z2): {}", describe_group(&ev.h1_mod2, Ring::Z2))?;
        writeln!(out, "class mod 2: {}", bits(&ev.kappa2))?;
        writeln!(
            out,
            "H1(M,dM;Z): {}",
            describe_group(&ev.locally_finite_h1, Ring::Z)
        )?;
        writeln!(out, "locally finite class: {:?}", ev.locally_finite_class)?;
        if let Some(x) = &ev.extension {
            writeln!(out, "extension: {}", bits(x))?;
        }
        if let Some(r) = &report {
            writeln!(out, "offsets: {}", r.offsets)?;
            writeln!(out, "subdivisions: {}", r.subdivisions)?;
            writeln!(out, "exterior tetrahedra: {}", r.exterior_tetrahedra)?;
            for c in &r.checks {
                writeln!(out, "check {}: {}", c.name, c.detail)?;
            }
        }
    }
    if let Some(want) = f.meta(&verdict_key(name)) {
        if want != verdict.outcome.to_string() {
            return Err(Failure::Invalid(format!(
                "expected verdict {want}, computed {}",
                verdict.outcome
            )));
        }
    }
    Ok(())
}

fn format_chain(terms: &ChainTerms) -> String {
    terms
        .iter()
        .map(|(s, c)| {
            let vs: Vec<String> = s.iter().map(u32::to_string).collect();
            format!("{c:+}*[{}]", vs.join(" "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_exterior(file: &Path, name: &str, chains: bool, out: &mut dyn Write) -> Outcome {
    let (f, m) = load(file)?;
    let k = f.knot(name)?;
    let ext = build_exterior(&m, k)?;
    let e = ext.exterior();
    writeln!(out, "knot: {name}")?;
    writeln!(out, "subdivisions: {}", ext.subdivision_count())?;
    writeln!(
        out,
        "subdivided model tetrahedra: {}",
        ext.model().complex().count(3)
    )?;
    writeln!(
        out,
        "neighborhood tetrahedra: {}",
        ext.neighborhood().count(3)
    )?;
    writeln!(out, "exterior tetrahedra: {}", e.complex().count(3))?;
    writeln!(out, "torus triangles: {}", ext.torus().count(2))?;
    writeln!(
        out,
        "H1(E;Z): {}",
        describe_group(&e.homology(1, Ring::Z)?.summary(), Ring::Z)
    )?;
    let outer = homology_group(e.complex(), Some(ext.outer_boundary()), 1, Ring::Z)?;
    writeln!(
        out,
        "H1(E,outer;Z): {}",
        describe_group(&outer.summary(), Ring::Z)
    )?;
    writeln!(out, "meridian edges: {}", ext.meridian().len())?;
    writeln!(out, "longitude edges: {}", ext.longitude0().len())?;
    let ip = ext.torus_intersection(ext.meridian(), ext.longitude0())?;
    writeln!(out, "meridian . longitude: {ip}")?;
    let class = |c: &Chain| -> Result<Vec<i64>> {
        outer
            .class_of(c)?
            .coords()
            .iter()
            .map(|x| {
                x.to_i64().ok_or_else(|| {
                    Error::InvalidParameters(format!("coordinate {x} does not fit in 64 bits"))
                })
            })
            .collect()
    };
    writeln!(out, "meridian class: {:?}", class(ext.meridian())?)?;
    writeln!(out, "longitude class: {:?}", class(ext.longitude0())?)?;
    writeln!(out, "offsets: {}", preferred_offsets(&ext)?)?;
    if chains {
        writeln!(
            out,
            "meridian: {}",
            format_chain(&chain_terms(ext.meridian())?)
        )?;
        writeln!(
            out,
            "longitude: {}",
            format_chain(&chain_terms(ext.longitude0())?)
        )?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    name: &str,
    genus: u32,
    p: u32,
    q: u32,
    knots: &[String],
    output: &Path,
    out: &mut dyn Write,
) -> Outcome {
    let family = family_from_name(name, genus, p, q)?;
    let selectors = if knots.is_empty() {
        family.default_knots()
    } else {
        knots
            .iter()
            .map(|s| s.parse::<KnotSelector>())
            .collect::<Result<Vec<_>>>()?
    };
    let entry = generate_with(family, &selectors)?;
    let named: Vec<(String, _)> = entry
        .knots
        .iter()
        .map(|(sel, k)| (sel.to_string(), k.clone()))
        .collect();
    let mut file = TriangulationFile::from_model(&entry.model, named);
    file.meta.push(("family".into(), family.to_string()));
    for (ring, groups) in [
        (Ring::Z, &entry.fixture.homology_z),
        (Ring::Z2, &entry.fixture.homology_z2),
    ] {
        for (k, g) in groups.iter().enumerate() {
            file.meta.push((meta_key(k, ring), describe_group(g, ring)));
        }
    }
    file.meta.push((
        LF_KEY.into(),
        describe_group(&entry.fixture.locally_finite_h1, Ring::Z),
    ));
    for sel in &selectors {
        file.meta.push((
            verdict_key(&sel.to_string()),
            family.expected_outcome(*sel)?.to_string(),
        ));
    }
    file.write(output)?;
    let names: Vec<String> = selectors.iter().map(ToString::to_string).collect();
    writeln!(
        out,
        "wrote {}: {} tetrahedra, knots: {}",
        output.display(),
        file.tetrahedra.len(),
        names.join(", ")
    )?;
    Ok(())
}

fn cmd_framing(op: FramingOp, out: &mut dyn Write) -> Outcome {
    match op {
        FramingOp::Twist { class, n } => {
            writeln!(out, "twist: {}", twist(SigmaClass::new(class)?, n))?;
        }
        FramingOp::Cable { class } => {
            writeln!(out, "cable: {}", cable_class(SigmaClass::new(class)?))?;
        }
        FramingOp::Extend { file, knot, class } => {
            let c = SigmaClass::new(class)?;
            let (f, m) = load(&file)?;
            let k = f.knot(&knot)?;
            let kappa2 = knot_class(&m, k, Ring::Z2)?;
            let b: Vec<u8> = class_bits(&kappa2)?
                .to_bools()
                .into_iter()
                .map(u8::from)
                .collect();
            writeln!(out, "class mod 2: {}", bits(&b))?;
            if !extension_exists(&kappa2, c)? {
                writeln!(out, "extension: none")?;
            } else if c.is_zero() {
                writeln!(out, "extension: ({})", "0".repeat(b.len()))?;
            } else {
                writeln!(out, "extension: {}", construct_extension(&kappa2)?)?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(
            std::iter::once("fiberknot").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn framing_arithmetic() {
        assert_eq!(run_str(&["framing", "twist", "1", "3"]).1, "twist: 0\n");
        assert_eq!(run_str(&["framing", "cable", "0"]).1, "cable: 1\n");
        assert_eq!(run_str(&["framing", "cable", "2"]).0, 1);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["homology"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn missing_file_exits_2() {
        let (code, _, err) = run_str(&["validate", "/nonexistent/model.tri"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn group_descriptions() {
        assert_eq!(describe_group(&GroupSummary::trivial(), Ring::Z), "0");
        assert_eq!(
            describe_group(&GroupSummary::new(0, &[3]), Ring::Z),
            "torsion [3]"
        );
        assert_eq!(
            describe_group(&GroupSummary::new(2, &[]), Ring::Z),
            "betti 2"
        );
        assert_eq!(
            describe_group(&GroupSummary::new(1, &[2, 4]), Ring::Z),
            "betti 1, torsion [2, 4]"
        );
        assert_eq!(
            describe_group(&GroupSummary::new(2, &[]), Ring::Z2),
            "rank 2"
        );
    }

    #[test]
    fn family_names() {
        assert_eq!(
            family_from_name("handlebody", 3, 0, 0).unwrap(),
            Family::Handlebody { genus: 3 }
        );
        assert!(family_from_name("lens_punctured", 0, 4, 2).is_err());
        assert!(family_from_name("torus", 0, 0, 0).is_err());
    }
}
