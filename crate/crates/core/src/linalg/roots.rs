//! Polynomial roots with exact detection of Gaussian-rational roots.
//!
//! The polynomial is split into squarefree factors (Yun), so every factor has
//! simple roots and a known multiplicity. Each factor is solved numerically
//! by Aberth iteration; every numeric root is snapped to nearby Gaussian
//! rationals and kept as exact only if it annihilates the factor exactly.
//! Whatever survives deflation is reported as approximate.

use num_complex::Complex64;
use num_traits::Zero;

use super::numeric::{snap_complex, ApproxComplex, CLUSTER_FACTOR};
use super::poly::UniPolynomial;
use super::scalar::GaussianRational as Q;
use super::value::Value;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub value: Value,
    pub multiplicity: usize,
}

/// Roots of a nonzero polynomial with multiplicities summing to its degree.
/// Exact roots come first in `Ord` order, then approximate ones by (re, im).
pub fn poly_roots(p: &UniPolynomial, tol: f64) -> Result<Vec<Root>> {
    assert!(!p.is_zero(), "roots of the zero polynomial");
    let mut exact = Vec::new();
    let mut approx: Vec<(ApproxComplex, usize)> = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        let (ex, rest) = split_exact_roots(&factor);
        exact.extend(ex.into_iter().map(|q| (q, mult)));
        if rest.degree().unwrap_or(0) > 0 {
            for z in numeric_roots(&rest, tol)? {
                approx.push((ApproxComplex::new(z, tol), mult));
            }
        }
    }
    check_separation(&exact, &approx, tol)?;
    exact.sort_by(|a, b| a.0.cmp(&b.0));
    approx.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<Root> = exact.into_iter().map(|(q, m)| Root { value: Value::Exact(q), multiplicity: m }).collect();
    out.extend(approx.into_iter().map(|(a, m)| Root { value: Value::Approx(a), multiplicity: m }));
    debug_assert_eq!(out.iter().map(|r| r.multiplicity).sum::<usize>(), p.degree().unwrap());
    Ok(out)
}

/// Peels off every Gaussian-rational root of a squarefree polynomial.
fn split_exact_roots(f: &UniPolynomial) -> (Vec<Q>, UniPolynomial) {
    let mut found = Vec::new();
    let mut rest = f.monic();
    loop {
        match rest.degree() {
            Some(0) | None => break,
            Some(1) => {
                found.push(-&rest.coeffs()[0]);
                rest = UniPolynomial::constant(Q::from_int(1));
                break;
            }
            _ => {}
        }
        let Some(root) = aberth(&rest).into_iter().find_map(|z| snap_candidates(&rest, z).into_iter().find(|c| rest.eval(c).is_zero())) else {
            break;
        };
        rest = rest.div_rem(&UniPolynomial::linear(&root)).0;
        found.push(root);
    }
    (found, rest)
}

/// Exact candidates near a numeric root: continued-fraction snaps at a few
/// denominator caps plus rational-root-theorem denominators for real factors.
fn snap_candidates(f: &UniPolynomial, z: Complex64) -> Vec<Q> {
    let mut out = Vec::new();
    let scale = z.norm().max(1.0);
    for (tol, max_den) in [(1e-9, 1_000u64), (1e-8, 1_000_000), (1e-7, 100_000_000)] {
        if let Some(q) = snap_complex(z, tol * scale, max_den) {
            if !out.contains(&q) {
                out.push(q);
            }
        }
    }
    if let Some(lead) = integer_leading_coefficient(f) {
        for q in small_divisors(lead) {
            let round = |x: f64| (x * q as f64).round() as i64;
            let cand = Q::from_parts((round(z.re), q), (round(z.im), q));
            if !out.contains(&cand) {
                out.push(cand);
            }
        }
    }
    out
}

/// Leading coefficient after clearing denominators, for real-rational
/// polynomials whose scaled leading coefficient fits comfortably.
fn integer_leading_coefficient(f: &UniPolynomial) -> Option<i64> {
    use num_integer::Integer;
    use num_traits::{Signed, ToPrimitive};
    if !f.coeffs().iter().all(Q::is_real) {
        return None;
    }
    let lcm = f.coeffs().iter().fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.re.denom()));
    let lead = f.leading()?.re.clone() * num_rational::BigRational::from_integer(lcm);
    lead.to_integer().abs().to_i64().filter(|v| *v <= 1_000_000)
}

fn small_divisors(n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

fn complex_coeffs(f: &UniPolynomial) -> Vec<Complex64> {
    f.coeffs().iter().map(Q::to_complex64).collect()
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Simultaneous Aberth-Ehrlich iteration on a polynomial of degree >= 1.
fn aberth(f: &UniPolynomial) -> Vec<Complex64> {
    let c = complex_coeffs(f);
    let n = c.len() - 1;
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|a| a / lead).collect();
    let radius = 1.0 + monic[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let start = (monic[0].norm().max(1e-300)).powf(1.0 / n as f64).min(radius);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(start, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..800 {
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = horner(&monic, z[k]);
            if p == Complex64::zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j])).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                worst = worst.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if worst < 1e-15 {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&monic, *zk);
            if dp.norm() > 0.0 {
                let next = *zk - p / dp;
                if next.is_finite() {
                    *zk = next;
                }
            }
        }
    }
    z
}

/// Numeric roots of a squarefree factor with no Gaussian-rational roots,
/// checked against the residual bound.
fn numeric_roots(f: &UniPolynomial, tol: f64) -> Result<Vec<Complex64>> {
    let roots = aberth(f);
    let c = complex_coeffs(f);
    for &z in &roots {
        let (p, _) = horner(&c, z);
        let norm: f64 = c.iter().enumerate().map(|(k, a)| a.norm() * z.norm().powi(k as i32)).sum();
        if p.norm() > 10.0 * tol * norm.max(1.0) {
            return Err(Error::IllConditioned(format!("root residual {:.3e} exceeds the guard band", p.norm())));
        }
    }
    Ok(roots)
}

/// Roots of distinct squarefree factors are distinct, so any numeric value
/// that lands within the cluster radius of another root cannot be resolved.
fn check_separation(exact: &[(Q, usize)], approx: &[(ApproxComplex, usize)], tol: f64) -> Result<()> {
    let cluster = CLUSTER_FACTOR * tol;
    for (i, (a, _)) in approx.iter().enumerate() {
        let za = a.value();
        let clash = exact.iter().any(|(q, _)| (q.to_complex64() - za).norm() <= cluster)
            || approx[i + 1..].iter().any(|(b, _)| (b.value() - za).norm() <= cluster);
        if clash {
            return Err(Error::IllConditioned(format!("root near {a} is within {cluster:.1e} of another root")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::numeric::DEFAULT_TOL;

    fn exact_roots(p: &UniPolynomial) -> Vec<(Q, usize)> {
        poly_roots(p, DEFAULT_TOL)
            .unwrap()
            .into_iter()
            .map(|r| (r.value.exact().cloned().expect("exact root"), r.multiplicity))
            .collect()
    }

    #[test]
    fn simple_rational_roots() {
        let p = UniPolynomial::from_ints(&[2, -3, 1]);
        assert_eq!(exact_roots(&p), vec![(Q::from_int(1), 1), (Q::from_int(2), 1)]);
        assert_eq!(exact_roots(&UniPolynomial::from_ints(&[0, 0, 1])), vec![(Q::zero(), 2)]);
    }

    #[test]
    fn irrational_roots_are_flagged() {
        let roots = poly_roots(&UniPolynomial::from_ints(&[-2, 0, 1]), DEFAULT_TOL).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(!r.value.is_exact());
            // Newton cross-check on t^2 - 2.
            let mut x = r.value.to_complex().re;
            for _ in 0..5 {
                x -= (x * x - 2.0) / (2.0 * x);
            }
            assert!((r.value.to_complex().re - x).abs() < 1e-12);
        }
        assert!((roots[1].value.to_complex().re - std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn gaussian_and_fractional_roots() {
        // (t - (1/3 + 2i)) (t + 5/7)^2 (t - i)
        let a: Q = "1/3+2i".parse().unwrap();
        let b: Q = "-5/7".parse().unwrap();
        let p = &(&UniPolynomial::linear(&a) * &UniPolynomial::linear(&b)) * &(&UniPolynomial::linear(&b) * &UniPolynomial::linear(&Q::i()));
        let got = exact_roots(&p);
        assert_eq!(got.len(), 3);
        assert!(got.contains(&(a, 1)) && got.contains(&(b, 2)) && got.contains(&(Q::i(), 1)));
    }

    #[test]
    fn mixed_exact_and_irrational() {
        // (t - 3)(t^2 + t + 1)
        let p = &UniPolynomial::from_ints(&[-3, 1]) * &UniPolynomial::from_ints(&[1, 1, 1]);
        let roots = poly_roots(&p, DEFAULT_TOL).unwrap();
        assert_eq!(roots[0].value, Value::Exact(Q::from_int(3)));
        assert_eq!(roots.iter().filter(|r| !r.value.is_exact()).count(), 2);
    }

    #[test]
    fn rational_root_with_large_denominator() {
        // 9973 t - 1 times t^2 - 3
        let p = &UniPolynomial::from_ints(&[-1, 9973]) * &UniPolynomial::from_ints(&[-3, 0, 1]);
        let roots = poly_roots(&p, DEFAULT_TOL).unwrap();
        assert!(roots.iter().any(|r| r.value == Value::Exact(Q::from_ratio(1, 9973))));
    }
}
