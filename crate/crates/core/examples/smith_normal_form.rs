//! Smith normal form of a small integer matrix.

use fiberknot::linalg::{snf, IntMatrix};

fn main() {
    let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = snf(&a);
    println!("invariant factors: {:?}", s.invariant_factors());
    println!("rank: {}", s.rank());
    assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
    println!("U*A*V = D checked");
}
