//! Classifies a few states and prints their descriptors.
//!
//! Run with `cargo run --example classify_state`.

use slocc::classify::descriptor_of;
use slocc::linalg::DEFAULT_TOL;
use slocc::state::{apply_ilo, random_ilo, samples, MatrixPair};

fn main() -> slocc::Result<()> {
    let jordan = MatrixPair::from_ints(
        &[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        &[[2, 1, 0], [0, 2, 0], [0, 0, 5]],
    );
    let states = [("ghz", samples::ghz()), ("w", samples::w()), ("jordan", jordan)];
    for (name, pair) in &states {
        let d = descriptor_of(pair, DEFAULT_TOL)?;
        println!("{name:<8} {:<10} (n, l) = ({}, {})  points {}  parameters {}", d.label(), d.n, d.l, d.config_key, d.param_count);
    }

    // The descriptor does not move under local operators.
    let (_, pair) = &states[2];
    let moved = apply_ilo(pair, &random_ilo(3, 42));
    assert_eq!(descriptor_of(&moved, DEFAULT_TOL)?, descriptor_of(pair, DEFAULT_TOL)?);
    println!("descriptor unchanged after a random local operator");
    Ok(())
}
