use std::sync::OnceLock;

use fiberknot::catalog::{generate_with, CatalogEntry, Family};
use fiberknot::knot::solve_offsets;
use fiberknot::linalg::{snf, solve_gf2, BitVector, Gf2Matrix, IntMatrix};
use fiberknot::simplicial::{Chain, Ring};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

const SEED: u64 = 0x00f1_be4b;

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

fn matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn bool_matrix(max: usize) -> impl Strategy<Value = (Vec<Vec<bool>>, Vec<bool>)> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        (
            prop::collection::vec(prop::collection::vec(any::<bool>(), c), r),
            prop::collection::vec(any::<bool>(), r),
        )
    })
}

fn thickened_torus() -> &'static CatalogEntry {
    static E: OnceLock<CatalogEntry> = OnceLock::new();
    E.get_or_init(|| generate_with(Family::ThickenedTorus, &[]).unwrap())
}

fn lens() -> &'static CatalogEntry {
    static E: OnceLock<CatalogEntry> = OnceLock::new();
    E.get_or_init(|| generate_with(Family::LensPunctured { p: 3, q: 1 }, &[]).unwrap())
}

/// `sum a_i g_i` plus the boundary of a combination of triangles.
fn cycle_with_coords(e: &CatalogEntry, ring: Ring, coords: &[i64], fill: &[(usize, i64)]) -> Chain {
    let g = e.model.homology(1, ring).unwrap();
    let mut z = Chain::zero(1, ring);
    for (i, a) in coords.iter().enumerate() {
        z = z
            .add(&g.generator(i).representative().scale(&BigInt::from(*a)))
            .unwrap();
    }
    let triangles = e.model.complex().simplices(2);
    for &(t, c) in fill {
        let tri = Chain::from_terms(
            2,
            ring,
            [(triangles[t % triangles.len()].clone(), BigInt::from(c))],
        )
        .unwrap();
        z = z.add(&tri.boundary()).unwrap();
    }
    z
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn snf_is_a_unimodular_diagonalization(rows in matrix(7)) {
        let a = IntMatrix::from_rows(&rows);
        let s = snf(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        prop_assert_eq!(s.v_inv.mul(&s.v), IntMatrix::identity(a.cols()));
        let d = s.invariant_factors();
        prop_assert!(d.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        prop_assert!(d.iter().all(|x| *x > BigInt::zero()));
    }

    #[test]
    fn snf_of_transpose_has_the_same_factors(rows in matrix(6)) {
        let a = IntMatrix::from_rows(&rows);
        prop_assert_eq!(snf(&a).invariant_factors(), snf(&a.transpose()).invariant_factors());
    }

    #[test]
    fn gf2_solutions_solve((rows, rhs) in bool_matrix(10)) {
        let a = Gf2Matrix::from_rows(&rows);
        let b = BitVector::from_bools(&rhs);
        match solve_gf2(&a, &b).unwrap() {
            Some(x) => prop_assert_eq!(a.mul_vec(&x).unwrap(), b),
            None => {
                let augmented: Vec<Vec<bool>> = rows
                    .iter()
                    .zip(&rhs)
                    .map(|(r, &bit)| r.iter().copied().chain([bit]).collect())
                    .collect();
                prop_assert!(Gf2Matrix::from_rows(&augmented).rank() > a.rank());
            }
        }
    }

    #[test]
    fn offsets_match_brute_force(
        t1 in 2u64..=6,
        t2 in 2u64..=6,
        l in prop::collection::vec(-12i64..=12, 3),
        m in prop::collection::vec(-12i64..=12, 3),
    ) {
        let torsion = [BigInt::from(t1), BigInt::from(t1 * t2)];
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let set = solve_offsets(1, &torsion, &big(&l), &big(&m)).unwrap();
        let holds = |k: i64| {
            l[0] + k * m[0] == 0
                && (l[1] + k * m[1]).rem_euclid(t1 as i64) == 0
                && (l[2] + k * m[2]).rem_euclid((t1 * t2) as i64) == 0
        };
        for k in -80..=80 {
            prop_assert_eq!(set.contains(k), holds(k), "k = {}", k);
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn class_of_reads_off_coordinates(
        coords in prop::collection::vec(-5i64..=5, 2),
        fill in prop::collection::vec((0usize..10_000, -3i64..=3), 0..6),
    ) {
        let e = thickened_torus();
        let z = cycle_with_coords(e, Ring::Z, &coords, &fill);
        let c = e.model.homology(1, Ring::Z).unwrap().class_of(&z).unwrap();
        prop_assert_eq!(c.coords().to_vec(), coords.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
    }

    #[test]
    fn class_of_is_additive(
        a in prop::collection::vec(-4i64..=4, 2),
        b in prop::collection::vec(-4i64..=4, 2),
        fa in prop::collection::vec((0usize..10_000, -2i64..=2), 0..4),
        fb in prop::collection::vec((0usize..10_000, -2i64..=2), 0..4),
    ) {
        let e = thickened_torus();
        let g = e.model.homology(1, Ring::Z).unwrap();
        let za = cycle_with_coords(e, Ring::Z, &a, &fa);
        let zb = cycle_with_coords(e, Ring::Z, &b, &fb);
        let sum = g.class_of(&za.add(&zb).unwrap()).unwrap();
        let parts = g.class_of(&za).unwrap().add(&g.class_of(&zb).unwrap()).unwrap();
        prop_assert!(sum == parts);
    }

    #[test]
    fn torsion_classes_wrap(a in -9i64..=9, fill in prop::collection::vec((0usize..10_000, -2i64..=2), 0..4)) {
        let e = lens();
        let z = cycle_with_coords(e, Ring::Z, &[a], &fill);
        let c = e.model.homology(1, Ring::Z).unwrap().class_of(&z).unwrap();
        prop_assert_eq!(c.coords()[0].clone(), BigInt::from(a.rem_euclid(3)));
        prop_assert_eq!(c.is_zero(), a % 3 == 0);
    }

    #[test]
    fn mod2_classes_are_parities(
        coords in prop::collection::vec(-5i64..=5, 2),
        fill in prop::collection::vec((0usize..10_000, -3i64..=3), 0..6),
    ) {
        let e = thickened_torus();
        let z = cycle_with_coords(e, Ring::Z, &coords, &fill);
        let g2 = e.model.homology(1, Ring::Z2).unwrap();
        let cz = e.model.homology(1, Ring::Z).unwrap().class_of(&z).unwrap();
        let c2 = fiberknot::homology::mod2_reduce(&cz, &g2).unwrap();
        prop_assert_eq!(c2.is_zero(), coords.iter().all(|x| x % 2 == 0));
        prop_assert!(c2 == g2.class_of(&z).unwrap());
    }
}
