//! Reduces a scrambled state to its canonical pair and checks the witness.

use slocc::canonical::{canonicalize, Exactness};
use slocc::linalg::DEFAULT_TOL;
use slocc::state::{apply_ilo, random_ilo, MatrixPair};

fn main() -> slocc::Result<()> {
    // c_{3,3} with an r-type B4 block, hidden behind a random operator.
    let rep = MatrixPair::from_ints(
        &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]],
        &[[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0]],
    );
    let scrambled = apply_ilo(&rep, &random_ilo(4, 7));
    let c = canonicalize(&scrambled, DEFAULT_TOL)?;
    println!("{}", c.pair);
    println!("blocks: {:?}", c.pair.blocks);

    let status = c.witness.verify(&scrambled, &c.pair);
    assert_eq!(status, Exactness::Exact);
    println!("T =\n{}P =\n{}Q =\n{}", c.witness.ops.t(), c.witness.ops.p(), c.witness.ops.q());

    // Full rank with a 2-block: the canonical values are fixed only up to
    // the eigenvalue chart, so 4 and 9 come back as 0 and 1.
    let jordan = MatrixPair::from_ints(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]], &[[4, 1, 0], [0, 4, 0], [0, 0, 9]]);
    let full = apply_ilo(&jordan, &random_ilo(3, 3));
    let c = canonicalize(&full, DEFAULT_TOL)?;
    println!("\n{}witness {:?}", c.pair, c.witness.verify(&full, &c.pair));
    Ok(())
}
