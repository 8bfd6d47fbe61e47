//! Dense matrices over Q(i).
//!
//! Rank and determinant clear denominators row by row and run Bareiss
//! elimination over the Gaussian integers, so intermediate entries stay
//! bounded by minors of the input. Kernels, inverses and linear solves use
//! plain Gauss-Jordan over the field.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::GaussianRational as Q;
use crate::error::{Error, Result};

pub type Vector = Vec<Q>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.as_ref().iter().map(|&v| Q::from_int(v)).collect()).collect())
    }

    pub fn from_columns(cols: &[Vector]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        Self::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn diagonal(entries: &[Q]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, v) in entries.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Q] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * k).collect() }
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Q::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn set_block(&mut self, top: usize, left: usize, block: &ExactMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(top + i, left + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn direct_sum(blocks: &[&ExactMatrix]) -> Self {
        let r = blocks.iter().map(|b| b.rows).sum();
        let c = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(r, c);
        let (mut top, mut left) = (0, 0);
        for b in blocks {
            m.set_block(top, left, b);
            top += b.rows;
            left += b.cols;
        }
        m
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.data.iter().map(Q::to_complex64).collect()
    }

    /// Rank over Q(i), by fraction-free elimination.
    pub fn rank(&self) -> usize {
        bareiss(self.integer_rows(), self.cols).0
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Q {
        assert!(self.is_square(), "determinant of non-square matrix");
        if self.rows == 0 {
            return Q::one();
        }
        let scales: Vec<BigInt> = (0..self.rows).map(|i| row_denominator(self.row(i))).collect();
        let (rank, last, sign) = bareiss(self.integer_rows(), self.cols);
        if rank < self.rows {
            return Q::zero();
        }
        let denom = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
        let value = Q::new(BigRational::new(last.re, denom.clone()), BigRational::new(last.im, denom));
        if sign {
            -value
        } else {
            value
        }
    }

    fn integer_rows(&self) -> Vec<Vec<GaussInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let d = row_denominator(row);
                row.iter().map(|v| GaussInt::scaled(v, &d)).collect()
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            let pivot_row: Vec<Q> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !pivot_row[j].is_zero() {
                        let d = &f * &pivot_row[j];
                        m[(i, j)] -= &d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(row, f)];
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = rhs`, if the system is consistent.
    pub fn solve(&self, rhs: &[Q]) -> Option<Vector> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        aug.set_block(0, 0, self);
        for (i, v) in rhs.iter().enumerate() {
            aug[(i, self.cols)] = v.clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn invert(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::InvalidInput("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Self::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(r.submatrix(&rows, &cols))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

fn row_denominator(row: &[Q]) -> BigInt {
    row.iter().fold(BigInt::one(), |acc, v| acc.lcm(&v.denom_lcm()))
}

/// Returns (rank, last pivot, odd number of row swaps).
fn bareiss(mut a: Vec<Vec<GaussInt>>, cols: usize) -> (usize, GaussInt, bool) {
    let rows = a.len();
    let mut prev = GaussInt::one();
    let mut r = 0;
    let mut odd = false;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            odd = !odd;
        }
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let v = pivot_row[c].mul(&row[j]).sub(&lead.mul(&pivot_row[j]));
                row[j] = v.div_exact(&prev);
            }
            row[c] = GaussInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    (r, prev, odd)
}

/// Gaussian integer, only used inside fraction-free elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn zero() -> Self {
        Self { re: BigInt::zero(), im: BigInt::zero() }
    }

    fn one() -> Self {
        Self { re: BigInt::one(), im: BigInt::zero() }
    }

    fn scaled(v: &Q, d: &BigInt) -> Self {
        let part = |r: &BigRational| r.numer() * (d / r.denom());
        Self { re: part(&v.re), im: part(&v.im) }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Self { re: &self.re * &o.re, im: BigInt::zero() };
        }
        Self { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    fn sub(&self, o: &Self) -> Self {
        Self { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    /// Division known to be exact in Z[i].
    fn div_exact(&self, d: &Self) -> Self {
        if d.im.is_zero() {
            debug_assert!((&self.re % &d.re).is_zero() && (&self.im % &d.re).is_zero());
            return Self { re: &self.re / &d.re, im: &self.im / &d.re };
        }
        let norm = &d.re * &d.re + &d.im * &d.im;
        let num = self.mul(&Self { re: d.re.clone(), im: -&d.im });
        debug_assert!((&num.re % &norm).is_zero() && (&num.im % &norm).is_zero());
        Self { re: num.re / &norm, im: num.im / norm }
    }
}

/// Incremental linear-independence test: keeps a semi-echelon basis.
#[derive(Clone, Debug, Default)]
pub struct SpanTracker {
    basis: Vec<(usize, Vector)>,
}

impl SpanTracker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn reduce(&self, v: &[Q]) -> Vector {
        let mut v = v.to_vec();
        for (p, b) in &self.basis {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` if it is independent of the current span; reports whether it was.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        self.basis.push((p, r.iter().map(|x| x * &inv).collect()));
        true
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = ExactMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch in sum");
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch in difference");
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| -v).collect() }
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols).map(|j| format!("{:>width$}", cells[i * self.cols + j])).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_ints(rows)
    }

    #[test]
    fn ranks_of_small_cases() {
        assert_eq!(ExactMatrix::identity(4).rank(), 4);
        assert_eq!(ExactMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(m(&[&[0, 0, 0], &[0, 0, 1], &[1, 0, 0]]).rank(), 2);
        assert_eq!(m(&[&[1, 2, 3], &[2, 4, 6]]).rank(), 1);
        assert_eq!(m(&[&[0, 1], &[0, 2], &[1, 0]]).rank(), 2);
    }

    #[test]
    fn complex_rank_and_det() {
        let i = Q::i();
        let one = Q::one();
        // [[1, i], [i, -1]] has rank 1 over C.
        let a = ExactMatrix::from_rows(vec![vec![one.clone(), i.clone()], vec![i.clone(), -&one]]);
        assert_eq!(a.rank(), 1);
        assert!(a.det().is_zero());
        let b = ExactMatrix::from_rows(vec![vec!["1/2".parse().unwrap(), i.clone()], vec![one.clone(), "2+i".parse().unwrap()]]);
        // 1/2 (2+i) - i = 1 - i/2
        assert_eq!(b.det(), "1-1/2i".parse().unwrap());
    }

    #[test]
    fn determinant_sign_tracks_swaps() {
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), Q::from_int(-1));
        assert_eq!(m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]).det(), Q::from_int(-1));
        assert_eq!(m(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]).det(), Q::from_int(30));
    }

    #[test]
    fn inverses() {
        let a = m(&[&[1, 0], &[3, 1]]);
        assert_eq!(a.invert().unwrap(), m(&[&[1, 0], &[-3, 1]]));
        assert_eq!(ExactMatrix::identity(3).invert().unwrap(), ExactMatrix::identity(3));
        let swap = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.invert().unwrap(), swap);
        assert!(matches!(m(&[&[1, 2], &[2, 4]]).invert(), Err(Error::Singular)));
    }

    #[test]
    fn kernels() {
        let k = ExactMatrix::zeros(2, 2).kernel_basis();
        assert_eq!(k, vec![vec![Q::one(), Q::zero()], vec![Q::zero(), Q::one()]]);
        assert!(ExactMatrix::identity(3).kernel_basis().is_empty());
        assert_eq!(m(&[&[0, 1], &[0, 0]]).kernel_basis(), vec![vec![Q::one(), Q::zero()]]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[2, 2]]);
        let x = a.solve(&[Q::from_int(3), Q::from_int(6)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![Q::from_int(3), Q::from_int(6)]);
        assert!(a.solve(&[Q::from_int(3), Q::from_int(5)]).is_none());
    }

    #[test]
    fn span_tracker_detects_dependence() {
        let mut s = SpanTracker::new();
        assert!(s.insert(&[Q::one(), Q::one(), Q::zero()]));
        assert!(s.insert(&[Q::zero(), Q::one(), Q::one()]));
        assert!(!s.insert(&[Q::one(), Q::from_int(2), Q::one()]));
        assert!(s.contains(&[Q::from_int(2), Q::zero(), Q::from_int(-2)]));
        assert_eq!(s.dim(), 2);
    }
}
