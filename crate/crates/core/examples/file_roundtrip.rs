//! Writing a model to the text format and reading it back.

use fiberknot::catalog::{generate_with, Family};
use fiberknot::cli::TriangulationFile;

fn main() -> fiberknot::Result<()> {
    let entry = generate_with(
        Family::ThickenedTorus,
        &Family::ThickenedTorus.default_knots(),
    )?;
    let knots = entry
        .knots
        .iter()
        .map(|(s, k)| (s.to_string(), k.clone()))
        .collect();
    let mut file = TriangulationFile::from_model(&entry.model, knots);
    file.meta.push(("family".into(), entry.family.to_string()));

    let text = file.to_string();
    println!("{}", text.lines().take(6).collect::<Vec<_>>().join("\n"));
    println!("... {} lines", text.lines().count());

    let back = TriangulationFile::parse(&text)?;
    let m = back.model()?;
    println!(
        "same complex: {}",
        m.complex().same_as(entry.model.complex())
    );
    println!(
        "same orientation: {}",
        m.orientation() == entry.model.orientation()
    );
    println!(
        "knots: {:?}",
        back.knots
            .iter()
            .map(|(n, _)| n.as_str())
            .collect::<Vec<_>>()
    );
    Ok(())
}
