use super::*;
use crate::simplicial::Simplex;

fn s(vs: &[u32]) -> Simplex {
    Simplex::new(vs.iter().copied()).unwrap()
}

fn loop_chain(vs: &[u32], ring: Ring) -> Chain {
    let mut c = Chain::zero(1, ring);
    for i in 0..vs.len() {
        let (e, sign) = Simplex::oriented_edge(vs[i], vs[(i + 1) % vs.len()]).unwrap();
        c.add_term(e, BigInt::from(sign)).unwrap();
    }
    c
}

fn circle() -> SimplicialComplex {
    SimplicialComplex::from_simplices([s(&[0, 1]), s(&[1, 2]), s(&[0, 2])])
}

/// Six-vertex projective plane.
fn rp2() -> SimplicialComplex {
    let tris = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 1, 5],
        [1, 2, 4],
        [2, 3, 5],
        [1, 3, 4],
        [2, 4, 5],
        [1, 3, 5],
    ];
    SimplicialComplex::from_simplices(tris.iter().map(|t| s(t)))
}

#[test]
fn circle_has_free_h1() {
    let g = homology_group(&circle(), None, 1, Ring::Z).unwrap();
    assert_eq!(g.summary(), GroupSummary::free(1));
    let c = g.class_of(&loop_chain(&[0, 1, 2], Ring::Z)).unwrap();
    assert!(c.coords()[0].magnitude().is_one());
    let twice = g
        .class_of(&loop_chain(&[0, 1, 2], Ring::Z).scale(&BigInt::from(2)))
        .unwrap();
    assert_eq!(twice, c.scale(&BigInt::from(2)));
}

#[test]
fn projective_plane_torsion() {
    let x = rp2();
    assert_eq!(x.euler_characteristic(), 1);
    assert_eq!(
        homology_group(&x, None, 1, Ring::Z).unwrap().summary(),
        GroupSummary::new(0, &[2])
    );
    assert!(homology_group(&x, None, 2, Ring::Z).unwrap().is_trivial());
    assert_eq!(
        homology_group(&x, None, 1, Ring::Z2).unwrap().summary(),
        GroupSummary::free(1)
    );
    assert_eq!(
        homology_group(&x, None, 2, Ring::Z2).unwrap().summary(),
        GroupSummary::free(1)
    );
}

#[test]
fn boundaries_are_zero() {
    let x = SimplicialComplex::from_tetrahedra(&[[0, 1, 2, 3]]).unwrap();
    let g = homology_group(&x, None, 1, Ring::Z).unwrap();
    assert!(g.is_trivial());
    let z = loop_chain(&[0, 1, 2], Ring::Z);
    assert!(g.class_of(&z).unwrap().is_zero());
}

#[test]
fn generators_have_unit_coordinates() {
    let x = rp2();
    for ring in [Ring::Z, Ring::Z2] {
        let g = homology_group(&x, None, 1, ring).unwrap();
        for i in 0..g.rank() {
            assert_eq!(
                g.class_of(&g.presentation().basis[i]).unwrap(),
                g.generator(i)
            );
        }
    }
}

#[test]
fn non_cycle_rejected() {
    let g = homology_group(&circle(), None, 1, Ring::Z).unwrap();
    let c = Chain::from_terms(1, Ring::Z, [(s(&[0, 1]), BigInt::one())]).unwrap();
    assert!(matches!(g.class_of(&c), Err(Error::NotACycle(_))));
    let alien = Chain::from_terms(1, Ring::Z, [(s(&[5, 6]), BigInt::one())]).unwrap();
    assert!(matches!(g.class_of(&alien), Err(Error::UnknownSimplex(_))));
}

#[test]
fn relative_edge_mod_endpoints() {
    let x = SimplicialComplex::from_simplices([s(&[0, 1]), s(&[1, 2])]);
    let a = SimplicialComplex::from_simplices([s(&[0]), s(&[2])]);
    let g = homology_group(&x, Some(&a), 1, Ring::Z).unwrap();
    assert_eq!(g.summary(), GroupSummary::free(1));
    let path = Chain::from_terms(
        1,
        Ring::Z,
        [(s(&[0, 1]), BigInt::one()), (s(&[1, 2]), BigInt::one())],
    )
    .unwrap();
    assert!(!g.class_of(&path).unwrap().is_zero());
    assert!(homology_group(&x, Some(&a), 0, Ring::Z)
        .unwrap()
        .is_trivial());
}

#[test]
fn relative_requires_subcomplex() {
    let a = SimplicialComplex::from_simplices([s(&[7])]);
    assert!(matches!(
        homology_group(&circle(), Some(&a), 1, Ring::Z),
        Err(Error::NotSubcomplex(_))
    ));
}

#[test]
fn mod2_reduction_of_doubled_loop() {
    let x = circle();
    let gz = homology_group(&x, None, 1, Ring::Z).unwrap();
    let g2 = homology_group(&x, None, 1, Ring::Z2).unwrap();
    let c = gz.class_of(&loop_chain(&[0, 1, 2], Ring::Z)).unwrap();
    assert!(!mod2_reduce(&c, &g2).unwrap().is_zero());
    assert!(mod2_reduce(&c.scale(&BigInt::from(2)), &g2)
        .unwrap()
        .is_zero());
    assert!(mod2_reduce(&gz.zero(), &g2).unwrap().is_zero());
    let other = homology_group(&rp2(), None, 1, Ring::Z2).unwrap();
    assert!(matches!(
        mod2_reduce(&c, &other),
        Err(Error::CarrierMismatch(_))
    ));
}

#[test]
fn identity_inclusion_is_identity() {
    let x = rp2();
    let m = induced_map(&x, &x, 1, Ring::Z2).unwrap();
    assert_eq!(m.matrix, IntMatrix::identity(1));
}

#[test]
fn h0_counts_components() {
    let x = SimplicialComplex::from_simplices([s(&[0, 1]), s(&[2, 3]), s(&[4])]);
    assert_eq!(
        homology_group(&x, None, 0, Ring::Z).unwrap().summary(),
        GroupSummary::free(3)
    );
}

#[test]
fn summary_display() {
    assert_eq!(GroupSummary::trivial().to_string(), "0");
    assert_eq!(GroupSummary::new(2, &[3]).to_string(), "Z^2 + Z/3");
}
