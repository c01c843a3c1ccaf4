//! Driving the command line in-process.

use fiberknot::cli::run_with;

fn main() {
    let dir = std::env::temp_dir().join("fiberknot-example");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let file = dir.join("st.tri");
    let file = file.to_str().expect("utf-8 path");
    let calls: [&[&str]; 4] = [
        &["generate", "solid_torus", "--knot", "core", "-o", file],
        &["validate", file],
        &["homology", file, "-k", "1"],
        &["decide", file, "--knot", "core"],
    ];
    for args in calls {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(
            std::iter::once("fiberknot").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        println!("$ fiberknot {}  -> exit {code}", args.join(" "));
        print!(
            "{}{}",
            String::from_utf8_lossy(&out),
            String::from_utf8_lossy(&err)
        );
    }
}
