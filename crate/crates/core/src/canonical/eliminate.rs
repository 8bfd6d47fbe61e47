//! Local operators that move multiples of `B` into `lambda'` and back on a
//! single block, built by induction along the block's extension pattern.

use num_traits::{One, Zero};

use super::bblock::{grow, lambda_prime, BBlock, Extension};
use crate::linalg::{ExactMatrix, GaussianRational as Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MixDirection {
    /// `P (lambda' + k B) Q = lambda'` and `P B Q = B`.
    BIntoLambda,
    /// `P (B + k lambda') Q = B` and `P lambda' Q = lambda'`.
    LambdaIntoB,
}

/// Operators removing a `coeff` multiple of one block matrix from the other
/// while fixing the latter.
pub fn build_mixture_eliminators(block: &BBlock, coeff: &Q, direction: MixDirection) -> (ExactMatrix, ExactMatrix) {
    match direction {
        MixDirection::BIntoLambda => absorb_b(block.pattern(), coeff),
        MixDirection::LambdaIntoB => {
            let (p, q) = absorb_b(block.pattern(), coeff);
            let (rows, cols) = label_swap(block);
            // rows/cols are involutions, so each permutation matrix is its own inverse.
            (&(&rows * &p) * &rows, &(&cols * &q) * &cols)
        }
    }
}

fn absorb_b(pattern: &[Extension], coeff: &Q) -> (ExactMatrix, ExactMatrix) {
    let (_, units) = grow(pattern);
    let mut p = ExactMatrix::identity(1);
    let mut q = ExactMatrix::identity(1);
    for (k, (ext, unit)) in pattern.iter().zip(units).enumerate() {
        let n = k + 1;
        let b = grow(&pattern[..k]).0;
        let lam = lambda_prime(n);
        let eye = ExactMatrix::identity(n);
        let one = ExactMatrix::identity(1);
        match ext {
            Extension::Column => {
                // X B = r (E - Q), Y = k r Q + X lambda'
                let r = unit_vector(n, unit.1 - 1);
                let rhs = (&eye - &q).transpose().mul_vec(&r);
                let x = b.transpose().solve(&rhs).expect("column step is always solvable");
                let x = ExactMatrix::from_rows(vec![x]);
                let r = ExactMatrix::from_rows(vec![r]);
                let y = &(&r * &q).scale(coeff) + &(&x * &lam);
                p = block2(&one, &(&x * &p), &ExactMatrix::zeros(n, 1), &p);
                q = block2(&one, &-&y, &ExactMatrix::zeros(n, 1), &q);
            }
            Extension::Row => {
                // B X = (E - P) c, Y = k P c + lambda' X
                let c = unit_vector(n, unit.0 - 1);
                let rhs = (&eye - &p).mul_vec(&c);
                let x = b.solve(&rhs).expect("row step is always solvable");
                let x = ExactMatrix::from_columns(&[x]);
                let c = ExactMatrix::from_columns(&[c]);
                let y = &(&p * &c).scale(coeff) + &(&lam * &x);
                p = block2(&one, &ExactMatrix::zeros(1, n), &-&y, &p);
                q = block2(&one, &ExactMatrix::zeros(1, n), &(&q * &x), &q);
            }
        }
    }
    (p, q)
}

fn unit_vector(n: usize, k: usize) -> Vec<Q> {
    (0..n).map(|i| if i == k { Q::one() } else { Q::zero() }).collect()
}

/// `[[a, b], [c, d]]` with a 1x1 corner `a`.
fn block2(a: &ExactMatrix, b: &ExactMatrix, c: &ExactMatrix, d: &ExactMatrix) -> ExactMatrix {
    let n = a.rows() + d.rows();
    let mut out = ExactMatrix::zeros(n, n);
    out.set_block(0, 0, a);
    out.set_block(0, a.cols(), b);
    out.set_block(a.rows(), 0, c);
    out.set_block(a.rows(), a.cols(), d);
    out
}

/// Row and column permutations `R`, `C` with `R B C = lambda'` and
/// `R lambda' C = B`: every component of the bipartite graph of the pencil
/// is a path alternating between the two matrices, and reversing the path
/// swaps their roles.
fn label_swap(block: &BBlock) -> (ExactMatrix, ExactMatrix) {
    let (lam, b) = block.matrices();
    let n = block.size();
    // Nodes 0..n are rows, n..2n are columns.
    let mut adj = vec![Vec::new(); 2 * n];
    for i in 0..n {
        for j in 0..n {
            if !lam[(i, j)].is_zero() || !b[(i, j)].is_zero() {
                adj[i].push(n + j);
                adj[n + j].push(i);
            }
        }
    }
    let mut image = vec![usize::MAX; 2 * n];
    let mut seen = vec![false; 2 * n];
    for start in 0..2 * n {
        if seen[start] || adj[start].len() > 1 {
            continue;
        }
        let mut path = vec![start];
        seen[start] = true;
        while let Some(&next) = adj[*path.last().unwrap()].iter().find(|v| !seen[**v]) {
            seen[next] = true;
            path.push(next);
        }
        for (k, &v) in path.iter().enumerate() {
            image[v] = path[path.len() - 1 - k];
        }
    }
    assert!(seen.iter().all(|s| *s), "block graph must be a union of paths");
    let rows = ExactMatrix::from_fn(n, n, |i, j| Q::from_int((image[i] == j) as i64));
    let cols = ExactMatrix::from_fn(n, n, |i, j| Q::from_int((image[n + j] == n + i) as i64));
    (rows, cols)
}

/// The flip `P_t lambda' Q_t = -k B`, `P_t B Q_t = lambda' / k`, composed as
/// `absorb(k) . release(-1/k) . absorb(k)`. Returns the two scale factors.
pub fn build_flip_operators(block: &BBlock, k: &Q) -> (ExactMatrix, ExactMatrix, (Q, Q)) {
    let inv = k.inv().expect("flip parameter must be nonzero");
    let (p1, q1) = build_mixture_eliminators(block, k, MixDirection::BIntoLambda);
    let (p2, q2) = build_mixture_eliminators(block, &-&inv, MixDirection::LambdaIntoB);
    let p = &(&p1 * &p2) * &p1;
    let q = &(&q1 * &q2) * &q1;
    (p, q, (-k, inv))
}

/// Operators undoing a slice mixing on one block: with
/// `(X, Y) = (t11 lambda' + t12 B, t21 lambda' + t22 B)` they give
/// `P X Q = lambda'` and `P Y Q = B`.
pub fn restore_b_form(block: &BBlock, t: &ExactMatrix) -> (ExactMatrix, ExactMatrix) {
    let e = |i, j| t[(i, j)].clone();
    if e(0, 0).is_zero() {
        // The flip turns (t12 B, t21 lambda' + t22 B) into a mixing with a
        // nonzero pivot.
        let (pf, qf, _) = build_flip_operators(block, &Q::one());
        let next = ExactMatrix::from_rows(vec![vec![e(0, 1), Q::zero()], vec![e(1, 1), -e(1, 0)]]);
        let (p, q) = restore_b_form(block, &next);
        return (&p * &pf, &qf * &q);
    }
    // t = [[1, 0], [s, 1]] [[a, b], [0, g]]
    let (a, b) = (e(0, 0), e(0, 1));
    let s = &e(1, 0) / &a;
    let g = &e(1, 1) - &(&s * &b);
    let (p1, q1) = build_mixture_eliminators(block, &(&b / &a), MixDirection::BIntoLambda);
    let (p2, q2) = build_mixture_eliminators(block, &(&(&s * &a) / &g), MixDirection::LambdaIntoB);
    let (d1, d2) = edge_rescale(block, &a.inv().expect("pivot"), &g.inv().expect("invertible mixing"));
    (&(&d1 * &p2) * &p1, &(&q1 * &q2) * &d2)
}

/// Diagonal `D1`, `D2` with `D1 lambda' D2 = u lambda'` and `D1 B D2 = v B`,
/// found by propagating scales along the (acyclic) block graph.
fn edge_rescale(block: &BBlock, u: &Q, v: &Q) -> (ExactMatrix, ExactMatrix) {
    let (lam, b) = block.matrices();
    let n = block.size();
    let mut row: Vec<Option<Q>> = vec![None; n];
    let mut col: Vec<Option<Q>> = vec![None; n];
    let edges: Vec<(usize, usize, &Q)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter_map(|(i, j)| {
            if !lam[(i, j)].is_zero() {
                Some((i, j, u))
            } else if !b[(i, j)].is_zero() {
                Some((i, j, v))
            } else {
                None
            }
        })
        .collect();
    loop {
        let mut progressed = false;
        for &(i, j, w) in &edges {
            match (&row[i], &col[j]) {
                (Some(r), None) => col[j] = Some(w / r),
                (None, Some(c)) => row[i] = Some(w / c),
                _ => continue,
            }
            progressed = true;
        }
        if !progressed {
            match row.iter().position(Option::is_none) {
                Some(i) => row[i] = Some(Q::one()),
                None => match col.iter().position(Option::is_none) {
                    Some(j) => col[j] = Some(Q::one()),
                    None => break,
                },
            }
        }
    }
    let diag = |v: Vec<Option<Q>>| ExactMatrix::diagonal(&v.into_iter().map(Option::unwrap).collect::<Vec<_>>());
    (diag(row), diag(col))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_absorb(block: &BBlock, k: &Q) {
        let (lam, b) = block.matrices();
        let (p, q) = build_mixture_eliminators(block, k, MixDirection::BIntoLambda);
        assert_eq!(&(&p * &(&lam + &b.scale(k))) * &q, lam, "{block}");
        assert_eq!(&(&p * &b) * &q, b, "{block}");
        let (p, q) = build_mixture_eliminators(block, k, MixDirection::LambdaIntoB);
        assert_eq!(&(&p * &(&b + &lam.scale(k))) * &q, b, "{block}");
        assert_eq!(&(&p * &lam) * &q, lam, "{block}");
    }

    #[test]
    fn trivial_and_two_by_two_cases() {
        // The size-2 step has P = E and Q = [[1, -k], [0, 1]].
        let (p, q) = absorb_b(&[Extension::Column], &Q::from_int(7));
        assert!(p.is_identity());
        assert_eq!(q, ExactMatrix::from_ints(&[[1, -7], [0, 1]]));
        let (p, q) = absorb_b(&[], &Q::from_int(7));
        assert!(p.is_identity() && q.is_identity());
    }

    #[test]
    fn eliminators_on_small_blocks() {
        for s in ["cr", "rc", "crc", "crr", "crcr", "ccrr", "rrcc"] {
            check_absorb(&BBlock::parse(s).unwrap(), &Q::from_int(5));
            check_absorb(&BBlock::parse(s).unwrap(), &"2/3-i".parse().unwrap());
        }
    }

    #[test]
    fn flip_scales() {
        let block = BBlock::parse("cr").unwrap();
        let (lam, b) = block.matrices();
        let (p, q, (s1, s2)) = build_flip_operators(&block, &Q::one());
        assert_eq!((s1.clone(), s2.clone()), (Q::from_int(-1), Q::one()));
        assert_eq!(&(&p * &lam) * &q, b.scale(&s1));
        assert_eq!(&(&p * &b) * &q, lam.scale(&s2));
    }

    #[test]
    fn restore_after_mixing() {
        let block = BBlock::parse("crc").unwrap();
        let (lam, b) = block.matrices();
        for t in [[[2, 1], [3, 5]], [[0, 1], [1, 0]], [[0, 2], [-3, 4]], [[1, 0], [0, 1]]] {
            let t = ExactMatrix::from_ints(&t);
            let x = &lam.scale(&t[(0, 0)]) + &b.scale(&t[(0, 1)]);
            let y = &lam.scale(&t[(1, 0)]) + &b.scale(&t[(1, 1)]);
            let (p, q) = restore_b_form(&block, &t);
            assert_eq!(&(&p * &x) * &q, lam);
            assert_eq!(&(&p * &y) * &q, b);
        }
    }
}
