//! Univariate polynomials over Q(i) and the pencil polynomials built from them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::ExactMatrix;
use super::scalar::GaussianRational as Q;

/// Coefficients low to high; trailing zeros are stripped so the leading
/// coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UniPolynomial {
    coeffs: Vec<Q>,
}

impl UniPolynomial {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Q::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// The monic linear factor `t - root`.
    pub fn linear(root: &Q) -> Self {
        Self::new(vec![-root, Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| &(&acc * t) + c)
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lead) => self.scale(&lead.inv().expect("nonzero leading coefficient")),
            None => Self::zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * &Q::from_int(k as i64)).collect())
    }

    /// Coefficients reversed at the given formal degree: `t^deg p(1/t)`.
    pub fn reversed(&self, deg: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(deg + 1, Q::zero());
        c.reverse();
        Self::new(c)
    }

    /// Euclidean division; panics when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] -= &(&c * dc);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's algorithm: squarefree factors paired with their multiplicity.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPolynomial, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.div_rem(&a).0;
        let mut c = df.div_rem(&a).0;
        let mut d = &c - &b.derivative();
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), k));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = &c - &b.derivative();
            k += 1;
        }
        out
    }

    /// Newton interpolation through `(xs[i], ys[i])` with distinct `xs`.
    pub fn interpolate(xs: &[Q], ys: &[Q]) -> Self {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = &(&dd[i] - &dd[i - 1]) / &(&xs[i] - &xs[i - level]);
            }
        }
        let mut p = Self::zero();
        for i in (0..n).rev() {
            p = &(&p * &Self::linear(&xs[i])) + &Self::constant(dd[i].clone());
        }
        p
    }
}

impl<'a> Add<&'a UniPolynomial> for &'a UniPolynomial {
    type Output = UniPolynomial;
    fn add(self, o: &UniPolynomial) -> UniPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Q::zero();
        UniPolynomial::new((0..n).map(|k| self.coeffs.get(k).unwrap_or(&z) + o.coeffs.get(k).unwrap_or(&z)).collect())
    }
}

impl<'a> Sub<&'a UniPolynomial> for &'a UniPolynomial {
    type Output = UniPolynomial;
    fn sub(self, o: &UniPolynomial) -> UniPolynomial {
        self + &(-o)
    }
}

impl Neg for &UniPolynomial {
    type Output = UniPolynomial;
    fn neg(self) -> UniPolynomial {
        UniPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<'a> Mul<&'a UniPolynomial> for &'a UniPolynomial {
    type Output = UniPolynomial;
    fn mul(self, o: &UniPolynomial) -> UniPolynomial {
        if self.is_zero() || o.is_zero() {
            return UniPolynomial::zero();
        }
        let mut c = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += &(a * b);
                }
            }
        }
        UniPolynomial::new(c)
    }
}

impl fmt::Display for UniPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

fn sample_points(count: usize) -> Vec<Q> {
    (0..count as i64).map(Q::from_int).collect()
}

fn pencil_at(a: &ExactMatrix, b: &ExactMatrix, t: &Q) -> ExactMatrix {
    a + &b.scale(t)
}

/// `det(a + t b)` as an exact polynomial in `t`.
pub fn pencil_det_poly(a: &ExactMatrix, b: &ExactMatrix) -> UniPolynomial {
    assert!(a.is_square() && b.is_square() && a.rows() == b.rows(), "pencil needs equal square matrices");
    let xs = sample_points(a.rows() + 1);
    let ys: Vec<Q> = xs.iter().map(|t| pencil_at(a, b, t).det()).collect();
    UniPolynomial::interpolate(&xs, &ys)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Monic gcd of every `k x k` minor of `a + t b`. Zero when all minors vanish
/// identically, one when the rank never drops below `k`.
pub fn minors_gcd_poly(a: &ExactMatrix, b: &ExactMatrix, k: usize) -> UniPolynomial {
    assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
    assert!(k <= a.rows().min(a.cols()));
    if k == 0 {
        return UniPolynomial::constant(Q::one());
    }
    let xs = sample_points(k + 1);
    let evals: Vec<ExactMatrix> = xs.iter().map(|t| pencil_at(a, b, t)).collect();
    let mut g = UniPolynomial::zero();
    for rows in combinations(a.rows(), k) {
        for cols in combinations(a.cols(), k) {
            let ys: Vec<Q> = evals.iter().map(|m| m.submatrix(&rows, &cols).det()).collect();
            if ys.iter().all(Zero::is_zero) {
                continue;
            }
            g = g.gcd(&UniPolynomial::interpolate(&xs, &ys));
            if g.degree() == Some(0) {
                return g;
            }
        }
    }
    g
}

/// Same gcd as [`minors_gcd_poly`] when its degree is known in advance:
/// determinants of random `k x k` compressions `U (a + t b) V` are multiples
/// of the minors gcd, so their gcd equals it once the degree matches.
/// Falls back to the exhaustive computation if compressions do not settle.
pub fn minors_gcd_with_degree(a: &ExactMatrix, b: &ExactMatrix, k: usize, degree: usize) -> UniPolynomial {
    let (r, c) = (a.rows(), a.cols());
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let xs = sample_points(k + 1);
    let mut g = UniPolynomial::zero();
    for _ in 0..6 {
        let u = ExactMatrix::from_fn(k, r, |_, _| Q::from_int(rng.random_range(-4..=4)));
        let v = ExactMatrix::from_fn(c, k, |_, _| Q::from_int(rng.random_range(-4..=4)));
        let (ua, ub) = (&(&u * a) * &v, &(&u * b) * &v);
        let ys: Vec<Q> = xs.iter().map(|t| pencil_at(&ua, &ub, t).det()).collect();
        if ys.iter().all(Zero::is_zero) {
            continue;
        }
        g = g.gcd(&UniPolynomial::interpolate(&xs, &ys));
        if g.degree() == Some(degree) {
            return g;
        }
    }
    minors_gcd_poly(a, b, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPolynomial {
        UniPolynomial::from_ints(c)
    }

    #[test]
    fn arithmetic_and_division() {
        let a = p(&[2, -3, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-2, 1]));
        assert!(r.is_zero());
        assert_eq!(&q * &b, a);
        assert_eq!(a.eval(&Q::from_int(3)), Q::from_int(2));
        assert_eq!(a.derivative(), p(&[-3, 2]));
        assert_eq!(p(&[0, 0, 0]).degree(), None);
    }

    #[test]
    fn gcd_is_monic() {
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[5, 0, 3]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[4]).gcd(&p(&[0, 2])), p(&[1]));
        assert!(UniPolynomial::zero().gcd(&UniPolynomial::zero()).is_zero());
    }

    #[test]
    fn yun_multiplicities() {
        // (t-1)^3 (t+2) t^2
        let f = &(&p(&[-1, 1]) * &(&p(&[-1, 1]) * &p(&[-1, 1]))) * &(&p(&[2, 1]) * &p(&[0, 0, 1]));
        let sq = f.squarefree_decomposition();
        assert_eq!(sq, vec![(p(&[2, 1]), 1), (p(&[0, 1]), 2), (p(&[-1, 1]), 3)]);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = p(&[3, 0, -2, 1]);
        let xs = sample_points(4);
        let ys: Vec<Q> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(UniPolynomial::interpolate(&xs, &ys), f);
    }

    #[test]
    fn pencil_determinants() {
        let i2 = ExactMatrix::identity(2);
        assert_eq!(pencil_det_poly(&i2, &ExactMatrix::zeros(2, 2)), p(&[1]));
        let ghz = (ExactMatrix::from_ints(&[[1, 0], [0, 0]]), ExactMatrix::from_ints(&[[0, 0], [0, 1]]));
        assert_eq!(pencil_det_poly(&ghz.0, &ghz.1), p(&[0, 1]));
        let w = (ExactMatrix::from_ints(&[[0, 1], [1, 0]]), ExactMatrix::from_ints(&[[1, 0], [0, 0]]));
        assert_eq!(pencil_det_poly(&w.0, &w.1), p(&[-1]));
    }

    #[test]
    fn minors_gcd_cases() {
        let z = ExactMatrix::zeros(2, 2);
        assert!(minors_gcd_poly(&z, &z, 1).is_zero());
        let ghz = (ExactMatrix::from_ints(&[[1, 0], [0, 0]]), ExactMatrix::from_ints(&[[0, 0], [0, 1]]));
        assert_eq!(minors_gcd_poly(&ghz.0, &ghz.1, 2), p(&[0, 1]));
        assert_eq!(minors_gcd_poly(&ghz.0, &ghz.1, 1), p(&[1]));
    }

    #[test]
    fn compressed_gcd_matches_exhaustive() {
        // L1 block beside J1(3): singular pencil whose 2x2 minors share (t - 3)
        // in the chart a + t b with a = -J, b = E.
        let a = ExactMatrix::from_ints(&[[0, 1, 0], [0, 0, 0], [0, 0, -3]]);
        let b = ExactMatrix::from_ints(&[[1, 0, 0], [0, 0, 0], [0, 0, 1]]);
        let full = minors_gcd_poly(&a, &b, 2);
        assert_eq!(minors_gcd_with_degree(&a, &b, 2, full.degree().unwrap()), full);
    }

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(5, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }
}
