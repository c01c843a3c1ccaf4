//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! The random matrices come from `ACCEPTANCE_SEED` (default 20240917).

use std::process::ExitCode;

use fiberknot::catalog::{generate_with, standard_catalog, CatalogEntry, Family, KnotSelector};
use fiberknot::decide::{decide, Outcome};
use fiberknot::framing::{cable_class, extension_exists, twist, SigmaClass};
use fiberknot::homology::{homology_group, GroupSummary};
use fiberknot::knot::{
    build_exterior, preferred_offsets, EdgeLoop, ExteriorData, OffsetSolutionSet,
};
use fiberknot::linalg::{snf, IntMatrix};
use fiberknot::manifold::CompactModel3;
use fiberknot::simplicial::{Ring, SimplicialComplex};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: fiberknot::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Pair {
    label: String,
    entry_index: usize,
    selector: KnotSelector,
    knot: EdgeLoop,
}

struct Context {
    catalog: Vec<CatalogEntry>,
    pairs: Vec<Pair>,
    /// exteriors of every pair whose knot is null in locally finite homology
    exteriors: Vec<(usize, ExteriorData)>,
}

impl Context {
    fn model(&self, p: &Pair) -> &CompactModel3 {
        &self.catalog[p.entry_index].model
    }
}

fn seed() -> u64 {
    std::env::var("ACCEPTANCE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(20240917)
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let rows = rng.gen_range(1..=12);
    let cols = rng.gen_range(1..=12);
    let sparse = rng.gen_bool(0.5);
    let table: Vec<Vec<i64>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    if sparse && rng.gen_bool(0.6) {
                        0
                    } else {
                        rng.gen_range(-9..=9)
                    }
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&table)
}

fn snf_contract(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..500 {
        let a = random_matrix(&mut rng);
        let s = snf(&a);
        let fail = |what: &str| format!("matrix {case} (seed {seed}): {what}");
        ensure(s.u.mul(&a).mul(&s.v) == s.d, || fail("U*A*V != D"))?;
        ensure(s.d.is_diagonal(), || fail("D is not diagonal"))?;
        ensure(s.u.mul(&s.u_inv) == IntMatrix::identity(a.rows()), || {
            fail("U is not unimodular")
        })?;
        ensure(s.v.mul(&s.v_inv) == IntMatrix::identity(a.cols()), || {
            fail("V is not unimodular")
        })?;
        let diag = s.d.diagonal();
        for w in diag.windows(2) {
            let divides = if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            };
            ensure(divides && w[0] >= BigInt::zero(), || {
                fail("divisibility chain broken")
            })?;
        }
        ensure(diag.iter().all(|d| *d >= BigInt::zero()), || {
            fail("negative diagonal entry")
        })?;
    }
    Ok(format!("500 matrices, seed {seed}"))
}

fn boundary_squares_vanish(x: &SimplicialComplex) -> Result<(), String> {
    for k in 1..3 {
        let lo = e2s(x.boundary_matrix(k))?;
        let hi = e2s(x.boundary_matrix(k + 1))?;
        ensure(lo.mul(&hi).is_zero(), || format!("d{k} d{} != 0", k + 1))?;
    }
    Ok(())
}

fn chain_sanity(ctx: &Context) -> Check {
    let mut n = 0;
    for e in &ctx.catalog {
        boundary_squares_vanish(e.model.complex()).map_err(|m| format!("{}: {m}", e.family))?;
        let (sd, _) = e.model.subdivide();
        boundary_squares_vanish(sd.complex())
            .map_err(|m| format!("{} subdivided: {m}", e.family))?;
        n += 2;
    }
    Ok(format!("{n} complexes"))
}

fn fixture_table(ctx: &Context) -> Check {
    let g = GroupSummary::new;
    let table: Vec<(Family, GroupSummary, usize, Option<GroupSummary>)> = vec![
        (Family::Ball, g(0, &[]), 0, None),
        (Family::SolidTorus, g(1, &[]), 1, None),
        (Family::ThickenedTorus, g(2, &[]), 2, None),
        (Family::Handlebody { genus: 2 }, g(2, &[]), 2, None),
        (Family::LensPunctured { p: 3, q: 1 }, g(0, &[3]), 0, None),
        (Family::LensPunctured { p: 4, q: 1 }, g(0, &[4]), 1, None),
        (Family::S1xS2Punctured, g(1, &[]), 1, Some(g(1, &[]))),
    ];
    for (family, h1, rank2, h2) in table {
        let e = ctx
            .catalog
            .iter()
            .find(|e| e.family == family)
            .ok_or_else(|| format!("{family} missing from the catalog"))?;
        let m = &e.model;
        for k in 0..=2 {
            let z = e2s(m.homology(k, Ring::Z))?.summary();
            let z2 = e2s(m.homology(k, Ring::Z2))?.summary();
            ensure(z == e.fixture.homology_z[k], || {
                format!("{family}: H{k}(Z) = {z}")
            })?;
            ensure(z2 == e.fixture.homology_z2[k], || {
                format!("{family}: H{k}(Z2) = {z2}")
            })?;
        }
        let lf = e2s(m.locally_finite_h1(Ring::Z))?.summary();
        ensure(lf == e.fixture.locally_finite_h1, || {
            format!("{family}: H1(M, dM) = {lf}")
        })?;
        let z1 = e2s(m.homology(1, Ring::Z))?;
        ensure(z1.summary() == h1, || {
            format!("{family}: H1 = {} instead of {h1}", z1.summary())
        })?;
        let r2 = e2s(m.homology(1, Ring::Z2))?.rank();
        ensure(r2 == rank2, || {
            format!("{family}: H1(Z2) rank {r2} instead of {rank2}")
        })?;
        if let Some(h2) = h2 {
            let got = e2s(m.homology(2, Ring::Z))?.summary();
            ensure(got == h2, || format!("{family}: H2 = {got}"))?;
        }
    }
    Ok("7 models, Z and Z2, degrees 0 to 2".into())
}

fn verdicts(ctx: &Context) -> Check {
    let required = [
        (Family::SolidTorus, KnotSelector::Core, Outcome::Realizable),
        (
            Family::SolidTorus,
            KnotSelector::CorePower(2),
            Outcome::NotRealizable,
        ),
        (
            Family::Ball,
            KnotSelector::Contractible,
            Outcome::NotRealizable,
        ),
        (
            Family::Handlebody { genus: 2 },
            KnotSelector::HandleCore(0),
            Outcome::Realizable,
        ),
        (
            Family::Handlebody { genus: 2 },
            KnotSelector::HandleCore(1),
            Outcome::Realizable,
        ),
        (
            Family::LensPunctured { p: 3, q: 1 },
            KnotSelector::TorsionGenerator,
            Outcome::PreconditionFailed,
        ),
    ];
    for (family, sel, want) in required {
        let p = ctx
            .pairs
            .iter()
            .find(|p| ctx.catalog[p.entry_index].family == family && p.selector == sel)
            .ok_or_else(|| format!("({family}, {sel}) missing"))?;
        let got = e2s(decide(ctx.model(p), &p.knot))?.outcome;
        ensure(got == want, || {
            format!("{}: {got} instead of {want}", p.label)
        })?;
    }
    for p in &ctx.pairs {
        let want = e2s(ctx.catalog[p.entry_index]
            .family
            .expected_outcome(p.selector))?;
        let got = e2s(decide(ctx.model(p), &p.knot))?.outcome;
        ensure(got == want, || {
            format!("{}: {got} instead of {want}", p.label)
        })?;
        let rev = e2s(decide(ctx.model(p), &p.knot.reversed()))?.outcome;
        ensure(rev == got, || {
            format!("{}: reversal changed the verdict", p.label)
        })?;
    }
    Ok(format!("{} pairs", ctx.pairs.len()))
}

fn exterior_of(ctx: &Context, family: Family, sel: KnotSelector) -> Result<&ExteriorData, String> {
    ctx.exteriors
        .iter()
        .find(|(i, _)| {
            let p = &ctx.pairs[*i];
            ctx.catalog[p.entry_index].family == family && p.selector == sel
        })
        .map(|(_, e)| e)
        .ok_or_else(|| format!("no exterior for ({family}, {sel})"))
}

fn remark_offsets(ctx: &Context) -> Check {
    let st = e2s(preferred_offsets(exterior_of(
        ctx,
        Family::SolidTorus,
        KnotSelector::Core,
    )?))?;
    ensure(st == OffsetSolutionSet::All, || {
        format!("solid torus core: {st}")
    })?;
    let ball = e2s(preferred_offsets(exterior_of(
        ctx,
        Family::Ball,
        KnotSelector::Contractible,
    )?))?;
    ensure(ball.is_unique(), || format!("ball unknot: {ball}"))?;
    Ok(format!("solid torus core: {st}; ball unknot: {ball}"))
}

fn longitude_parity(ctx: &Context) -> Check {
    let mut n = 0;
    for (i, ext) in &ctx.exteriors {
        let p = &ctx.pairs[*i];
        let v = e2s(decide(ctx.model(p), &p.knot))?;
        if v.evidence.kappa2.contains(&1) {
            continue;
        }
        let offsets = e2s(preferred_offsets(ext))?;
        let g2 = e2s(homology_group(ext.exterior().complex(), None, 1, Ring::Z2))?;
        for j in offsets.samples() {
            let c = e2s(g2.class_of(&ext.longitude(j)))?;
            ensure(c.is_zero(), || format!("{}: longitude {j} is odd", p.label))?;
        }
        n += 1;
    }
    ensure(n > 0, || "no pair with even class".into())?;
    Ok(format!("{n} pairs"))
}

fn offsets_nonempty(ctx: &Context) -> Check {
    for (i, ext) in &ctx.exteriors {
        let set = e2s(preferred_offsets(ext))?;
        ensure(!set.is_empty(), || {
            format!("{}: no preferred framing", ctx.pairs[*i].label)
        })?;
    }
    Ok(format!("{} pairs", ctx.exteriors.len()))
}

fn brute_force(kappa: &[bool], c: SigmaClass) -> bool {
    let d = kappa.len();
    (0u32..1 << d).any(|phi| {
        let value = (0..d).filter(|&i| kappa[i] && phi >> i & 1 == 1).count() % 2 == 1;
        value == !c.is_zero()
    })
}

fn extension_oracle(ctx: &Context) -> Check {
    let mut models: Vec<CompactModel3> = ctx.catalog.iter().map(|e| e.model.clone()).collect();
    for genus in [3, 4] {
        models.push(e2s(generate_with(Family::Handlebody { genus }, &[]))?.model);
    }
    let mut count = 0;
    for m in &models {
        let g2 = e2s(m.homology(1, Ring::Z2))?;
        let d = g2.rank();
        ensure(d <= 12, || format!("dimension {d} too large"))?;
        for bits in 0u32..1 << d {
            let kappa: Vec<bool> = (0..d).map(|i| bits >> i & 1 == 1).collect();
            let coords = kappa.iter().map(|&b| BigInt::from(u8::from(b))).collect();
            let class = e2s(g2.class_from_coords(coords))?;
            for c in [SigmaClass::ZERO, SigmaClass::ONE] {
                let got = e2s(extension_exists(&class, c))?;
                ensure(got == brute_force(&kappa, c), || {
                    format!("disagreement at {kappa:?}, c = {c}")
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{} models, {count} cases", models.len()))
}

fn cable_table() -> Check {
    for c in [SigmaClass::ZERO, SigmaClass::ONE] {
        ensure(cable_class(c) == SigmaClass::ONE, || {
            format!("cable({c}) != 1")
        })?;
        for n in -6..=6 {
            let want = SigmaClass::from_parity(i64::from(c.value()) + n);
            ensure(twist(c, n) == want, || format!("twist({c}, {n}) != {want}"))?;
        }
    }
    Ok("cable(0) = cable(1) = 1; twist(c, n) = c + n mod 2".into())
}

fn subdivision_invariance(ctx: &Context) -> Check {
    let picks = [
        (Family::SolidTorus, KnotSelector::Core),
        (Family::SolidTorus, KnotSelector::CorePower(2)),
        (
            Family::LensPunctured { p: 3, q: 1 },
            KnotSelector::TorsionGenerator,
        ),
    ];
    for (family, sel) in picks {
        let p = ctx
            .pairs
            .iter()
            .find(|p| ctx.catalog[p.entry_index].family == family && p.selector == sel)
            .ok_or_else(|| format!("({family}, {sel}) missing"))?;
        let m = ctx.model(p);
        let before = e2s(decide(m, &p.knot))?;
        let (m2, sd) = m.subdivide();
        let k2 = e2s(p.knot.subdivided(&sd))?;
        let after = e2s(decide(&m2, &k2))?;
        ensure(before.outcome == after.outcome, || {
            format!("{}: verdict changed", p.label)
        })?;
        ensure(before.evidence.h1 == after.evidence.h1, || {
            format!("{}: H1 changed", p.label)
        })?;
        ensure(
            before.evidence.locally_finite_h1 == after.evidence.locally_finite_h1,
            || format!("{}: locally finite H1 changed", p.label),
        )?;
    }
    Ok("3 pairs".into())
}

fn build_context() -> fiberknot::Result<Context> {
    let catalog = standard_catalog()?;
    let mut pairs = Vec::new();
    for (entry_index, e) in catalog.iter().enumerate() {
        for (selector, knot) in &e.knots {
            pairs.push(Pair {
                label: format!("({}, {selector})", e.family),
                entry_index,
                selector: *selector,
                knot: knot.clone(),
            });
        }
    }
    let mut exteriors = Vec::new();
    for (i, p) in pairs.iter().enumerate() {
        let m = &catalog[p.entry_index].model;
        if decide(m, &p.knot)?.outcome != Outcome::PreconditionFailed {
            exteriors.push((i, build_exterior(m, &p.knot)?));
        }
    }
    Ok(Context {
        catalog,
        pairs,
        exteriors,
    })
}

fn main() -> ExitCode {
    let ctx = match build_context() {
        Ok(ctx) => ctx,
        Err(e) => {
            println!("setup failed: {e}");
            return ExitCode::FAILURE;
        }
    };
    let criteria: Vec<Criterion> = vec![
        (
            "Smith normal form contract",
            Box::new(|| snf_contract(seed())),
        ),
        (
            "boundary of boundary vanishes",
            Box::new(|| chain_sanity(&ctx)),
        ),
        ("homology fixture table", Box::new(|| fixture_table(&ctx))),
        ("realizability verdicts", Box::new(|| verdicts(&ctx))),
        (
            "preferred offsets of core and unknot",
            Box::new(|| remark_offsets(&ctx)),
        ),
        (
            "preferred longitudes are even",
            Box::new(|| longitude_parity(&ctx)),
        ),
        (
            "preferred framings exist",
            Box::new(|| offsets_nonempty(&ctx)),
        ),
        (
            "extension criterion against brute force",
            Box::new(|| extension_oracle(&ctx)),
        ),
        ("cable and twist table", Box::new(cable_table)),
        (
            "subdivision invariance",
            Box::new(|| subdivision_invariance(&ctx)),
        ),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
