//! Pairwise SLOCC equivalence, including the action on eigenvalues.

use slocc::classify::slocc_equivalent;
use slocc::linalg::{ExactMatrix, GaussianRational as Q, DEFAULT_TOL};
use slocc::state::{apply_ilo, MatrixPair};

/// `(diag(1,1,1,1,0), diag(0,1,l1,l2,1))`: five simple points, two of them free.
fn five_by_five(l1: Q, l2: Q) -> MatrixPair {
    let g1 = ExactMatrix::diagonal(&[1, 1, 1, 1, 0].map(Q::from_int));
    let g2 = ExactMatrix::diagonal(&[Q::from_int(0), Q::from_int(1), l1, l2, Q::from_int(1)]);
    MatrixPair::new(g1, g2).expect("square")
}

fn main() -> slocc::Result<()> {
    // The two c_{3,3} classes differ only by swapping the last two parties.
    let c_type = MatrixPair::from_ints(
        &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]],
        &[[0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0]],
    );
    let r_type = MatrixPair::new(c_type.gamma1.transpose(), c_type.gamma2.transpose())?;
    println!("c-type vs r-type: {}", slocc_equivalent(&c_type, &r_type, DEFAULT_TOL)?.verdict);

    // Eigenvalue pairs related by a fractional-linear map are one class.
    let (a, b) = (Q::from_int(3), Q::from_int(7));
    let base = five_by_five(a.clone(), b.clone());
    let moved = five_by_five(&Q::from_int(1) - &a, &Q::from_int(1) - &b);
    let eq = slocc_equivalent(&base, &moved, DEFAULT_TOL)?;
    println!("(3, 7) vs (-2, -6): {}", eq.verdict);
    if let Some(op) = &eq.witness {
        assert_eq!(apply_ilo(&base, op), moved);
        println!("witness maps one onto the other exactly");
    }
    let other = five_by_five(Q::from_int(3), Q::from_int(8));
    println!("(3, 7) vs (3, 8): {}", slocc_equivalent(&base, &other, DEFAULT_TOL)?.verdict);
    Ok(())
}
