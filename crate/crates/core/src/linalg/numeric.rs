//! Guarded floating-point fallbacks. Every decision taken here either lands
//! clearly outside the guard band or reports `IllConditioned`.

use std::cmp::Ordering;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::matrix::ExactMatrix;
use super::scalar::{rationalize, GaussianRational as Q};
use crate::error::{Error, Result};

/// Default absolute guard band for root residuals.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Ratio between the cluster-merging radius and the residual tolerance.
pub const CLUSTER_FACTOR: f64 = 100.0;

/// A complex number known only up to `tol`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApproxComplex {
    pub re: f64,
    pub im: f64,
    pub tol: f64,
}

impl ApproxComplex {
    pub fn new(z: Complex64, tol: f64) -> Self {
        Self { re: z.re, im: z.im, tol }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// `Some(true/false)` when the separation is decisive, `None` inside the band.
    pub fn near(&self, other: Complex64, band: f64) -> Option<bool> {
        let d = (self.value() - other).norm();
        if d <= band {
            Some(true)
        } else if d > 10.0 * band {
            Some(false)
        } else {
            None
        }
    }

    /// Total order for deterministic sorting, re then im.
    pub fn total_cmp(&self, o: &Self) -> Ordering {
        self.re.total_cmp(&o.re).then(self.im.total_cmp(&o.im))
    }
}

impl fmt::Display for ApproxComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.abs() <= self.tol {
            write!(f, "~{:.12}", self.re)
        } else {
            write!(f, "~{:.12}{:+.12}i", self.re, self.im)
        }
    }
}

pub fn to_dmatrix(rows: usize, cols: usize, data: &[Complex64]) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(rows, cols, data)
}

pub fn exact_to_dmatrix(m: &ExactMatrix) -> DMatrix<Complex64> {
    to_dmatrix(m.rows(), m.cols(), &m.to_complex())
}

/// Numeric rank from singular values relative to the largest one. Values at
/// or below `tol` count as zero, values above `1e3 * tol` as nonzero, anything
/// in between is ill-conditioned.
pub fn guarded_rank(m: &DMatrix<Complex64>, tol: f64) -> Result<usize> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(0);
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return Ok(0);
    }
    let mut rank = 0;
    for s in sv.iter() {
        let rel = s / top;
        if rel > 1e3 * tol {
            rank += 1;
        } else if rel > tol {
            return Err(Error::IllConditioned(format!("singular value ratio {rel:.3e} inside the guard band")));
        }
    }
    Ok(rank)
}

/// Orthonormal basis of the numerical right null space.
pub fn numeric_kernel(m: &DMatrix<Complex64>, tol: f64) -> Result<Vec<Vec<Complex64>>> {
    let (r, c) = (m.nrows(), m.ncols());
    let mut square = DMatrix::<Complex64>::zeros(r.max(c), c);
    square.view_mut((0, 0), (r, c)).copy_from(m);
    let svd = square.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let top = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let mut out = Vec::new();
    for (k, s) in svd.singular_values.iter().enumerate() {
        let rel = if top == 0.0 { 0.0 } else { s / top };
        if rel <= tol {
            out.push(v_t.row(k).iter().map(|z| z.conj()).collect());
        } else if rel <= 1e3 * tol {
            return Err(Error::IllConditioned(format!("null space gap {rel:.3e} inside the guard band")));
        }
    }
    Ok(out)
}

/// Rounds a complex float to a nearby Gaussian rational with modest
/// denominators; the caller decides whether the result is good enough.
pub fn snap_complex(z: Complex64, tol: f64, max_den: u64) -> Option<Q> {
    let re = rationalize(z.re, tol, max_den)?;
    let im = rationalize(z.im, tol, max_den)?;
    Some(Q::new(re, im))
}

/// Rounds to a Gaussian rational using binary-friendly denominators, always
/// succeeding; used for approximate witnesses whose residual is then
/// measured exactly.
pub fn round_complex(z: Complex64) -> Q {
    const SCALE: f64 = (1u64 << 40) as f64;
    let part = |x: f64| {
        let n = (x * SCALE).round();
        num_rational::BigRational::new(num_bigint::BigInt::from(n as i128), num_bigint::BigInt::from(1u64 << 40))
    };
    Q::new(part(z.re), part(z.im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guarded_rank_separates_clear_cases() {
        let m = to_dmatrix(2, 2, &[Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0), Complex64::new(2.0, 0.0), Complex64::new(4.0, 0.0)]);
        assert_eq!(guarded_rank(&m, DEFAULT_TOL).unwrap(), 1);
        let eps = Complex64::new(1e-7, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        let band = to_dmatrix(2, 2, &[one, z, z, eps]);
        assert!(matches!(guarded_rank(&band, DEFAULT_TOL), Err(Error::IllConditioned(_))));
    }

    #[test]
    fn kernel_of_rank_one() {
        let one = Complex64::new(1.0, 0.0);
        let m = to_dmatrix(1, 2, &[one, one]);
        let k = numeric_kernel(&m, DEFAULT_TOL).unwrap();
        assert_eq!(k.len(), 1);
        assert!((k[0][0] + k[0][1]).norm() < 1e-12);
    }

    #[test]
    fn snapping() {
        let q = snap_complex(Complex64::new(0.5, -1.0 / 3.0), 1e-12, 1000).unwrap();
        assert_eq!(q, "1/2-1/3i".parse().unwrap());
    }
}
