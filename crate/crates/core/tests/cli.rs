use std::path::{Path, PathBuf};
use std::process::Command;

use fiberknot::catalog::{generate_with, Family, KnotSelector};
use fiberknot::cli::TriangulationFile;
use fiberknot::simplicial::Ring;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn fiberknot(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_fiberknot"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

fn generated(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path_str(&path)]);
    let r = fiberknot(&full);
    assert_eq!(r.code, 0, "{}", r.stderr);
    path
}

#[test]
fn solid_torus_core_is_realizable() {
    let dir = TempDir::new().unwrap();
    let st = generated(&dir, "st.tri", &["solid_torus", "--knot", "core"]);
    let r = fiberknot(&["decide", path_str(&st), "--knot", "core"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("verdict: Realizable\n"), "{}", r.stdout);
}

#[test]
fn ball_unknot_is_not_realizable() {
    let dir = TempDir::new().unwrap();
    let ball = generated(&dir, "ball.tri", &["ball"]);
    let r = fiberknot(&["decide", path_str(&ball), "--knot", "contractible"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("verdict: NotRealizable\n"));
}

#[test]
fn lens_homology_has_torsion() {
    let dir = TempDir::new().unwrap();
    let lens = generated(
        &dir,
        "lens31.tri",
        &["lens_punctured", "--p", "3", "--q", "1"],
    );
    let r = fiberknot(&["homology", path_str(&lens)]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("H1(Z): torsion [3]\n"), "{}", r.stdout);
    let r = fiberknot(&["homology", path_str(&lens), "--mod2", "-k", "1"]);
    assert_eq!(r.stdout, "H1(Z2): 0\n");
    let r = fiberknot(&["homology", path_str(&lens), "--rel-boundary", "-k", "3"]);
    assert_eq!(r.stdout, "H3(M,dM;Z): betti 1\n");
    let r = fiberknot(&["decide", path_str(&lens), "--knot", "torsion_generator"]);
    assert!(r.stdout.contains("verdict: PreconditionFailed\n"));
}

#[test]
fn generated_files_round_trip() {
    let dir = TempDir::new().unwrap();
    let families = [
        (
            "solid_torus",
            Family::SolidTorus,
            vec!["--knot", "core", "--knot", "core_power(2)"],
        ),
        (
            "handlebody",
            Family::Handlebody { genus: 3 },
            vec!["--genus", "3"],
        ),
        (
            "lens_punctured",
            Family::LensPunctured { p: 5, q: 2 },
            vec!["--p", "5", "--q", "2"],
        ),
        ("s1xs2_punctured", Family::S1xS2Punctured, vec![]),
    ];
    for (name, family, extra) in families {
        let mut args = vec![name];
        args.extend(extra.iter().copied());
        let path = generated(&dir, &format!("{name}.tri"), &args);
        let file = TriangulationFile::read(&path).unwrap();
        let m = file.model().unwrap();

        let selectors: Vec<KnotSelector> =
            file.knots.iter().map(|(n, _)| n.parse().unwrap()).collect();
        let entry = generate_with(family, &selectors).unwrap();
        assert!(m.complex().same_as(entry.model.complex()), "{name}");
        assert_eq!(m.orientation(), entry.model.orientation());
        for ((n, k), (sel, want)) in file.knots.iter().zip(&entry.knots) {
            assert_eq!(n, &sel.to_string());
            assert_eq!(k.chain(Ring::Z), want.chain(Ring::Z));
        }
        assert_eq!(TriangulationFile::parse(&file.to_string()).unwrap(), file);

        let r = fiberknot(&["validate", path_str(&path)]);
        assert_eq!(r.code, 0, "{name}: {}", r.stdout);
        assert!(r.stdout.ends_with("valid: yes\n"));
    }
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = generated(&dir, "a.tri", &["thickened_torus"]);
    let b = generated(&dir, "b.tri", &["thickened_torus"]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let first = fiberknot(&["decide", path_str(&a), "--knot", "core", "--json"]);
    let second = fiberknot(&["decide", path_str(&a), "--knot", "core", "--json"]);
    assert_eq!(first.stdout, second.stdout);
    let doc: serde_json::Value = serde_json::from_str(&first.stdout).unwrap();
    assert_eq!(doc["verdict"]["outcome"], "Realizable");
    assert_eq!(doc["knot"], "core");
}

#[test]
fn cross_check_reports_offsets() {
    let dir = TempDir::new().unwrap();
    let st = generated(&dir, "st.tri", &["solid_torus", "--knot", "core_power(2)"]);
    let r = fiberknot(&[
        "decide",
        path_str(&st),
        "--knot",
        "core_power(2)",
        "--cross-check",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("verdict: NotRealizable\n"));
    assert!(r.stdout.contains("offsets: 1 mod 2\n"), "{}", r.stdout);
    assert!(r.stdout.contains("check preferred-longitude-even:"));

    let r = fiberknot(&["exterior", path_str(&st), "--knot", "core_power(2)"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("meridian . longitude: 1\n"));
}

#[test]
fn framing_subcommands() {
    assert_eq!(
        fiberknot(&["framing", "twist", "0", "5"]).stdout,
        "twist: 1\n"
    );
    assert_eq!(fiberknot(&["framing", "cable", "1"]).stdout, "cable: 1\n");
    let dir = TempDir::new().unwrap();
    let st = generated(&dir, "st.tri", &["solid_torus"]);
    let r = fiberknot(&[
        "framing",
        "extend",
        path_str(&st),
        "--knot",
        "core_power(2)",
        "--class",
        "1",
    ]);
    assert_eq!(r.stdout, "class mod 2: [0]\nextension: none\n");
    let r = fiberknot(&[
        "framing",
        "extend",
        path_str(&st),
        "--knot",
        "core",
        "--class",
        "1",
    ]);
    assert_eq!(r.stdout, "class mod 2: [1]\nextension: (1)\n");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.tri");
    assert_eq!(fiberknot(&["validate", path_str(&missing)]).code, 2);

    let garbled = dir.path().join("garbled.tri");
    std::fs::write(&garbled, "format 1\nvertices 4\ntet 0 1 2\n").unwrap();
    let r = fiberknot(&["validate", path_str(&garbled)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3"), "{}", r.stderr);

    let pinched = dir.path().join("pinched.tri");
    std::fs::write(&pinched, "format 1\nvertices 7\ntet 0 1 2 3\ntet 0 4 5 6\n").unwrap();
    let r = fiberknot(&["validate", path_str(&pinched)]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("valid: no"));

    let st = generated(&dir, "st.tri", &["solid_torus"]);
    let wrong = dir.path().join("wrong.tri");
    let text = std::fs::read_to_string(&st)
        .unwrap()
        .replace("meta H1_Z betti 1", "meta H1_Z betti 2");
    std::fs::write(&wrong, text).unwrap();
    assert_eq!(fiberknot(&["validate", path_str(&wrong)]).code, 1);
    assert_eq!(
        fiberknot(&["decide", path_str(&st), "--knot", "nope"]).code,
        1
    );
    assert_eq!(
        fiberknot(&[
            "generate",
            "handlebody",
            "--genus",
            "9",
            "-o",
            path_str(&wrong)
        ])
        .code,
        1
    );
    assert_eq!(fiberknot(&["decide"]).code, 2);
}
