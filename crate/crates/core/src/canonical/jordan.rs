//! Jordan bases from chain heads.
//!
//! For an eigenvalue with nilpotent part `N`, heads of the longest chains are
//! picked first from `ker N^s` modulo `ker N^(s-1)` and the images of heads
//! already chosen; each head `h` of size `s` contributes the columns
//! `N^(s-1) h, ..., N h, h`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::numeric::{guarded_rank, numeric_kernel};
use crate::linalg::{ExactMatrix, GaussianRational as Q, SpanTracker, Vector};
use crate::pencil::Segre;

/// Block-diagonal Jordan matrix, blocks in the given order with ones on the
/// superdiagonal.
pub fn jordan_matrix(spectrum: &[(Q, Segre)]) -> ExactMatrix {
    let n: usize = spectrum.iter().map(|(_, s)| s.iter().sum::<usize>()).sum();
    let mut j = ExactMatrix::zeros(n, n);
    let mut at = 0;
    for (mu, segre) in spectrum {
        for &size in segre {
            for k in 0..size {
                j[(at + k, at + k)] = mu.clone();
                if k + 1 < size {
                    j[(at + k, at + k + 1)] = Q::from_int(1);
                }
            }
            at += size;
        }
    }
    j
}

fn count_of(segre: &Segre, size: usize) -> usize {
    segre.iter().filter(|s| **s == size).count()
}

/// `S` with `A S = S J` for `J = jordan_matrix(spectrum)`.
pub fn jordan_basis_exact(a: &ExactMatrix, spectrum: &[(Q, Segre)]) -> Result<ExactMatrix> {
    let n = a.rows();
    let mut columns: Vec<Vector> = Vec::with_capacity(n);
    for (mu, segre) in spectrum {
        let nil = a - &ExactMatrix::identity(n).scale(mu);
        let top = segre.first().copied().unwrap_or(0);
        let kernels: Vec<Vec<Vector>> = (0..=top).map(|k| nil.pow(k as u32).kernel_basis()).collect();
        let mut heads: Vec<(Vector, usize)> = Vec::new();
        for size in (1..=top).rev() {
            let wanted = count_of(segre, size);
            if wanted == 0 {
                continue;
            }
            let mut span = SpanTracker::new();
            for v in &kernels[size - 1] {
                span.insert(v);
            }
            for (h, s) in &heads {
                span.insert(&nil.pow((s - size) as u32).mul_vec(h));
            }
            let mut found = 0;
            for v in &kernels[size] {
                if found == wanted {
                    break;
                }
                if span.insert(v) {
                    heads.push((v.clone(), size));
                    found += 1;
                }
            }
            if found != wanted {
                return Err(Error::IllConditioned(format!("Jordan chains at {mu} do not match the Segre data")));
            }
        }
        // Heads were found longest first, matching the block order.
        for (h, size) in &heads {
            for k in (0..*size).rev() {
                columns.push(nil.pow(k as u32).mul_vec(h));
            }
        }
    }
    let s = ExactMatrix::from_columns(&columns);
    if s.rows() != n || s.cols() != n || s.det() == Q::from_int(0) {
        return Err(Error::IllConditioned("Jordan chains do not span the space".into()));
    }
    Ok(s)
}

/// Float analogue of `jordan_basis_exact` on a numerically known spectrum.
pub fn jordan_basis_numeric(a: &DMatrix<Complex64>, spectrum: &[(Complex64, Segre)], tol: f64) -> Result<DMatrix<Complex64>> {
    let n = a.nrows();
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for (mu, segre) in spectrum {
        let nil = a - DMatrix::<Complex64>::identity(n, n) * *mu;
        let power = |k: usize| (0..k).fold(DMatrix::<Complex64>::identity(n, n), |acc, _| &acc * &nil);
        let top = segre.first().copied().unwrap_or(0);
        let kernels: Vec<Vec<Vec<Complex64>>> = (0..=top).map(|k| numeric_kernel(&power(k), tol)).collect::<Result<_>>()?;
        let mut heads: Vec<(Vec<Complex64>, usize)> = Vec::new();
        for size in (1..=top).rev() {
            let wanted = count_of(segre, size);
            if wanted == 0 {
                continue;
            }
            let mut span: Vec<Vec<Complex64>> = kernels[size - 1].clone();
            for (h, s) in &heads {
                span.push(apply(&power(s - size), h));
            }
            let mut rank = stacked_rank(&span, n, tol)?;
            let mut found = 0;
            for v in &kernels[size] {
                if found == wanted {
                    break;
                }
                span.push(v.clone());
                let next = stacked_rank(&span, n, tol)?;
                if next > rank {
                    rank = next;
                    heads.push((v.clone(), size));
                    found += 1;
                } else {
                    span.pop();
                }
            }
            if found != wanted {
                return Err(Error::IllConditioned(format!("numeric Jordan chains at {mu} do not match the Segre data")));
            }
        }
        for (h, size) in &heads {
            for k in (0..*size).rev() {
                columns.push(apply(&power(k), h));
            }
        }
    }
    if columns.len() != n {
        return Err(Error::IllConditioned("numeric Jordan chains do not span the space".into()));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| columns[j][i]))
}

fn apply(m: &DMatrix<Complex64>, v: &[Complex64]) -> Vec<Complex64> {
    (m * DMatrix::from_column_slice(v.len(), 1, v)).iter().copied().collect()
}

fn stacked_rank(vectors: &[Vec<Complex64>], n: usize, tol: f64) -> Result<usize> {
    guarded_rank(&DMatrix::from_fn(n, vectors.len(), |i, j| vectors[j][i]), tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_conjugates_to_jordan_form() {
        // Similar to J2(3) + J1(3) + J1(-1).
        let j = jordan_matrix(&[(Q::from_int(3), vec![2, 1]), (Q::from_int(-1), vec![1])]);
        let s = ExactMatrix::from_ints(&[[1, 2, 0, 1], [0, 1, 1, 0], [1, 0, 1, 2], [0, 0, 1, 1]]);
        let a = &(&s * &j) * &s.invert().unwrap();
        let spectrum = [(Q::from_int(3), vec![2, 1]), (Q::from_int(-1), vec![1])];
        let basis = jordan_basis_exact(&a, &spectrum).unwrap();
        assert_eq!(&a * &basis, &basis * &j);
    }

    #[test]
    fn numeric_basis_agrees() {
        let spectrum = [(Q::from_int(0), vec![2]), (Q::from_int(2), vec![1])];
        let j = jordan_matrix(&spectrum);
        let s = ExactMatrix::from_ints(&[[1, 1, 0], [0, 1, 1], [1, 0, 2]]);
        let a = &(&s * &j) * &s.invert().unwrap();
        let ad = crate::linalg::numeric::exact_to_dmatrix(&a);
        let num: Vec<_> = spectrum.iter().map(|(q, seg)| (q.to_complex64(), seg.clone())).collect();
        let basis = jordan_basis_numeric(&ad, &num, 1e-9).unwrap();
        let jd = crate::linalg::numeric::exact_to_dmatrix(&j);
        assert!((&ad * &basis - &basis * jd).norm() < 1e-9);
    }
}
