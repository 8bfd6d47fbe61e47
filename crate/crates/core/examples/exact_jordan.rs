//! Exact Jordan bases and rational roots of pencil determinants.

use slocc::canonical::{jordan_basis_exact, jordan_matrix};
use slocc::linalg::{pencil_det_poly, poly_roots, ExactMatrix, GaussianRational as Q, DEFAULT_TOL};

fn main() -> slocc::Result<()> {
    let spectrum = [(Q::from_ratio(1, 2), vec![2]), (Q::i(), vec![1])];
    let j = jordan_matrix(&spectrum);
    let s = ExactMatrix::from_ints(&[[1, 2, 0], [0, 1, 1], [1, 0, 3]]);
    let a = &(&s * &j) * &s.invert()?;
    println!("A =\n{a}");

    let det = pencil_det_poly(&a, &ExactMatrix::identity(3).scale(&Q::from_int(-1)));
    println!("det(A - t E) = {det}");
    for r in poly_roots(&det, DEFAULT_TOL)? {
        println!("  root {} with multiplicity {}", r.value, r.multiplicity);
    }

    let basis = jordan_basis_exact(&a, &spectrum)?;
    assert_eq!(&a * &basis, &basis * &j);
    println!("A S = S J holds exactly with S =\n{basis}");
    Ok(())
}
