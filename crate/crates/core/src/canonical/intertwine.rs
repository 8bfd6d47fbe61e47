//! Strict equivalence by linear algebra: `P a_i Q = b_i` for both slices is
//! the same as `a_i X = R b_i` with `X = Q`, `R = P^-1`, a linear system in
//! `(X, R)`. Invertible solutions form a dense open subset of its solution
//! space whenever one exists, so a seeded random combination of a kernel
//! basis finds one.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{ExactMatrix, GaussianRational as Q};
use crate::state::MatrixPair;

const SEED: u64 = 0x1a7e_2715;
const ATTEMPTS: usize = 24;

/// Invertible `(P, Q)` with `P a Q = b` slice by slice, if the pencils are
/// strictly equivalent.
pub fn intertwine(a: &MatrixPair, b: &MatrixPair) -> Option<(ExactMatrix, ExactMatrix)> {
    let n = a.dim();
    if a == b {
        return Some((ExactMatrix::identity(n), ExactMatrix::identity(n)));
    }
    let nn = n * n;
    let mut system = ExactMatrix::zeros(2 * nn, 2 * nn);
    for (s, (lhs, rhs)) in [(&a.gamma1, &b.gamma1), (&a.gamma2, &b.gamma2)].into_iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let eq = s * nn + i * n + j;
                for k in 0..n {
                    // (lhs X)_{ij} = sum_k lhs_{ik} X_{kj}
                    if !lhs[(i, k)].is_zero() {
                        system[(eq, k * n + j)] += &lhs[(i, k)];
                    }
                    // (R rhs)_{ij} = sum_k R_{ik} rhs_{kj}
                    if !rhs[(k, j)].is_zero() {
                        system[(eq, nn + i * n + k)] -= &rhs[(k, j)];
                    }
                }
            }
        }
    }
    let kernel = system.kernel_basis();
    if kernel.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..ATTEMPTS {
        let mut v = vec![Q::zero(); 2 * nn];
        for basis in &kernel {
            let c = Q::from_int(rng.random_range(-9..=9));
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(basis) {
                if !y.is_zero() {
                    *x += &(&c * y);
                }
            }
        }
        let x = ExactMatrix::from_fn(n, n, |i, j| v[i * n + j].clone());
        let r = ExactMatrix::from_fn(n, n, |i, j| v[nn + i * n + j].clone());
        if let (Ok(p), false) = (r.invert(), x.det().is_zero()) {
            return Some((p, x));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{random_ilo, samples};

    #[test]
    fn recovers_a_sandwich() {
        let m = samples::w();
        let op = random_ilo(2, 11);
        let target = m.sandwich(op.p(), op.q());
        let (p, q) = intertwine(&m, &target).unwrap();
        assert_eq!(m.sandwich(&p, &q), target);
    }

    #[test]
    fn inequivalent_pencils_have_no_intertwiner() {
        assert!(intertwine(&samples::w(), &samples::ghz()).is_none());
    }
}
