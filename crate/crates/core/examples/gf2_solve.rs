//! Solving a linear system over GF(2).

use fiberknot::linalg::{solve_gf2, BitVector, Gf2Matrix};

fn main() -> fiberknot::Result<()> {
    let a = Gf2Matrix::from_rows(&[vec![true, true, false], vec![false, true, true]]);
    let b = BitVector::from_bools(&[true, false]);
    match solve_gf2(&a, &b)? {
        Some(x) => println!("solution: {:?}", x.to_bools()),
        None => println!("no solution"),
    }
    println!("rank: {}", a.rank());
    Ok(())
}
