//! Singular blocks and the operators that mix, flip and restore them.

use slocc::canonical::{build_flip_operators, build_mixture_eliminators, restore_b_form, BBlock, MixDirection};
use slocc::linalg::{ExactMatrix, GaussianRational as Q};

fn main() -> slocc::Result<()> {
    let block = BBlock::parse("crc")?;
    let (lam, b) = block.matrices();
    println!("{block}: column/row indices {:?}\nlambda' =\n{lam}B =\n{b}", block.indices());

    let k = Q::from_ratio(5, 3);
    let (p, q) = build_mixture_eliminators(&block, &k, MixDirection::BIntoLambda);
    assert_eq!(&(&p * &(&lam + &b.scale(&k))) * &q, lam);
    assert_eq!(&(&p * &b) * &q, b);
    println!("absorbed 5/3 B into lambda'");

    let (p, q, (s1, s2)) = build_flip_operators(&block, &Q::from_int(2));
    assert_eq!(&(&p * &lam) * &q, b.scale(&s1));
    assert_eq!(&(&p * &b) * &q, lam.scale(&s2));
    println!("flip: lambda' -> {s1} B, B -> {s2} lambda'");

    let t = ExactMatrix::from_ints(&[[0, 2], [3, 1]]);
    let x = &lam.scale(&t[(0, 0)]) + &b.scale(&t[(0, 1)]);
    let y = &lam.scale(&t[(1, 0)]) + &b.scale(&t[(1, 1)]);
    let (p, q) = restore_b_form(&block, &t);
    assert_eq!((&(&p * &x) * &q, &(&p * &y) * &q), (lam, b));
    println!("restored after mixing by\n{t}");
    Ok(())
}
