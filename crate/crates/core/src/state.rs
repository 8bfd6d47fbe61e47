//! States of a 2 x N x N system, their matrix-pair form, and the action of
//! invertible local operators.
//!
//! Indices are 1-based throughout the public surface: entry `(i, j, k)` with
//! `i` in `1..=2` lands in `gamma_i[j-1][k-1]`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, GaussianRational as Q};

/// Sparse coefficient tensor keyed by 1-based `(i, j, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateTensor {
    n: usize,
    entries: BTreeMap<(usize, usize, usize), Q>,
}

impl StateTensor {
    /// Zero coefficients are dropped; an all-zero tensor is rejected.
    pub fn new(n: usize, entries: impl IntoIterator<Item = ((usize, usize, usize), Q)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("dimension N = {n} must be at least 2")));
        }
        let mut map = BTreeMap::new();
        for ((i, j, k), v) in entries {
            if !(1..=2).contains(&i) || !(1..=n).contains(&j) || !(1..=n).contains(&k) {
                return Err(Error::InvalidInput(format!("index ({i}, {j}, {k}) out of range for 2x{n}x{n}")));
            }
            if map.contains_key(&(i, j, k)) {
                return Err(Error::InvalidInput(format!("duplicate entry ({i}, {j}, {k})")));
            }
            if !v.is_zero() {
                map.insert((i, j, k), v);
            }
        }
        if map.is_empty() {
            return Err(Error::InvalidInput("state has no nonzero coefficient".into()));
        }
        Ok(Self { n, entries: map })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> Q {
        self.entries.get(&(i, j, k)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Q)> {
        self.entries.iter()
    }

    /// Inverse of [`to_matrix_pair`].
    pub fn from_pair(m: &MatrixPair) -> Result<Self> {
        let n = m.dim();
        let mut entries = Vec::new();
        for (i, g) in [(1, &m.gamma1), (2, &m.gamma2)] {
            for j in 0..n {
                for k in 0..n {
                    let v = &g[(j, k)];
                    if !v.is_zero() {
                        entries.push(((i, j + 1, k + 1), v.clone()));
                    }
                }
            }
        }
        Self::new(n, entries)
    }
}

/// The two N x N slices of a state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixPair {
    pub gamma1: ExactMatrix,
    pub gamma2: ExactMatrix,
}

impl MatrixPair {
    pub fn new(gamma1: ExactMatrix, gamma2: ExactMatrix) -> Result<Self> {
        if !gamma1.is_square() || (gamma1.rows(), gamma1.cols()) != (gamma2.rows(), gamma2.cols()) {
            return Err(Error::InvalidInput("matrix pair needs two square matrices of equal size".into()));
        }
        if gamma1.is_zero() && gamma2.is_zero() {
            return Err(Error::InvalidInput("matrix pair is identically zero".into()));
        }
        Ok(Self { gamma1, gamma2 })
    }

    pub fn from_ints<R: AsRef<[i64]>>(gamma1: &[R], gamma2: &[R]) -> Self {
        Self::new(ExactMatrix::from_ints(gamma1), ExactMatrix::from_ints(gamma2)).expect("valid integer pair")
    }

    pub fn dim(&self) -> usize {
        self.gamma1.rows()
    }

    /// `(P gamma1 Q, P gamma2 Q)`.
    pub fn sandwich(&self, p: &ExactMatrix, q: &ExactMatrix) -> Self {
        Self { gamma1: &(p * &self.gamma1) * q, gamma2: &(p * &self.gamma2) * q }
    }

    /// The 2x2 mixing of the two slices: `gamma1' = t11 gamma1 + t12 gamma2`,
    /// `gamma2' = t21 gamma1 + t22 gamma2`.
    pub fn mix(&self, t: &ExactMatrix) -> Self {
        let comb = |a: &Q, b: &Q| &self.gamma1.scale(a) + &self.gamma2.scale(b);
        Self { gamma1: comb(&t[(0, 0)], &t[(0, 1)]), gamma2: comb(&t[(1, 0)], &t[(1, 1)]) }
    }

    /// Largest absolute entry deviation from `other`, as a float.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        let diff = |a: &ExactMatrix, b: &ExactMatrix| (a - b).to_complex().iter().map(|z| z.norm()).fold(0.0, f64::max);
        diff(&self.gamma1, &other.gamma1).max(diff(&self.gamma2, &other.gamma2))
    }
}

pub fn to_matrix_pair(s: &StateTensor) -> MatrixPair {
    let n = s.dim();
    let slice = |i| ExactMatrix::from_fn(n, n, |j, k| s.entry(i, j + 1, k + 1));
    MatrixPair { gamma1: slice(1), gamma2: slice(2) }
}

/// Invertible local operator `T (x) P (x) Q` acting as
/// `(gamma1, gamma2) -> T-mix of (P gamma1 Q, P gamma2 Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IloTriple {
    t: ExactMatrix,
    p: ExactMatrix,
    q: ExactMatrix,
}

impl IloTriple {
    pub fn new(t: ExactMatrix, p: ExactMatrix, q: ExactMatrix) -> Result<Self> {
        if (t.rows(), t.cols()) != (2, 2) || !p.is_square() || !q.is_square() || p.rows() != q.rows() {
            return Err(Error::InvalidInput("operator shapes must be 2x2, NxN, NxN".into()));
        }
        if t.det().is_zero() || p.det().is_zero() || q.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(Self { t, p, q })
    }

    pub fn identity(n: usize) -> Self {
        Self { t: ExactMatrix::identity(2), p: ExactMatrix::identity(n), q: ExactMatrix::identity(n) }
    }

    /// Pure slice mixing.
    pub fn from_t(t: ExactMatrix, n: usize) -> Result<Self> {
        Self::new(t, ExactMatrix::identity(n), ExactMatrix::identity(n))
    }

    pub fn t(&self) -> &ExactMatrix {
        &self.t
    }

    pub fn p(&self) -> &ExactMatrix {
        &self.p
    }

    pub fn q(&self) -> &ExactMatrix {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.p.rows()
    }

    /// The operator that applies `self` first and `after` second.
    pub fn then(&self, after: &IloTriple) -> IloTriple {
        IloTriple { t: &after.t * &self.t, p: &after.p * &self.p, q: &self.q * &after.q }
    }

    pub fn inverse(&self) -> IloTriple {
        let inv = |m: &ExactMatrix| m.invert().expect("operators are invertible by construction");
        IloTriple { t: inv(&self.t), p: inv(&self.p), q: inv(&self.q) }
    }
}

pub fn apply_ilo(m: &MatrixPair, op: &IloTriple) -> MatrixPair {
    m.sandwich(&op.p, &op.q).mix(&op.t)
}

/// Ranks of the three single-party reduced density matrices.
pub fn reduced_density_ranks(m: &MatrixPair) -> (usize, usize, usize) {
    let g = [&m.gamma1, &m.gamma2];
    let gram = ExactMatrix::from_fn(2, 2, |i, j| (g[i] * &g[j].conj_transpose()).trace());
    let left = &(g[0] * &g[0].conj_transpose()) + &(g[1] * &g[1].conj_transpose());
    let right = &(&g[0].conj_transpose() * g[0]) + &(&g[1].conj_transpose() * g[1]);
    (gram.rank(), left.rank(), right.rank())
}

pub fn is_true_entangled(m: &MatrixPair) -> bool {
    let (r0, r1, r2) = reduced_density_ranks(m);
    r0 == 2 && r1 == m.dim() && r2 == m.dim()
}

pub(crate) fn require_true_entangled(m: &MatrixPair) -> Result<()> {
    let (r0, r1, r2) = reduced_density_ranks(m);
    if r0 == 2 && r1 == m.dim() && r2 == m.dim() {
        Ok(())
    } else {
        Err(Error::NotTrueEntangled { n: m.dim(), r0, r1, r2 })
    }
}

/// Small Gaussian rational: real part in [-3, 3] over 1 or 2, imaginary part
/// present about a third of the time.
pub fn random_small_scalar(rng: &mut impl Rng) -> Q {
    let re = (rng.random_range(-3..=3), rng.random_range(1..=2));
    let im = if rng.random_range(0..3) == 0 { (rng.random_range(-2..=2), 1) } else { (0, 1) };
    Q::from_parts(re, im)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ExactMatrix {
    ExactMatrix::from_fn(rows, cols, |_, _| random_small_scalar(rng))
}

fn random_invertible(rng: &mut impl Rng, n: usize) -> ExactMatrix {
    loop {
        let m = random_matrix(rng, n, n);
        if !m.det().is_zero() {
            return m;
        }
    }
}

pub fn random_ilo_with(rng: &mut impl Rng, n: usize) -> IloTriple {
    IloTriple { t: random_invertible(rng, 2), p: random_invertible(rng, n), q: random_invertible(rng, n) }
}

/// Deterministic for a fixed `(n, seed)`.
pub fn random_ilo(n: usize, seed: u64) -> IloTriple {
    random_ilo_with(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

const REAR: &str = "rear plane (gamma1)";
const FRONT: &str = "front plane (gamma2)";

/// Text picture of the cubic grid: the gamma1 plane behind, gamma2 in
/// front, zeros drawn as ".".
pub fn grid_render(m: &MatrixPair) -> String {
    let cell = |v: &Q| if v.is_zero() { ".".to_string() } else { v.to_string() };
    let width = m.gamma1.entries().iter().chain(m.gamma2.entries()).map(|v| cell(v).chars().count()).max().unwrap_or(1);
    let mut out = String::new();
    for (title, g) in [(REAR, &m.gamma1), (FRONT, &m.gamma2)] {
        writeln!(out, "{title}").unwrap();
        for j in 0..g.rows() {
            let row: Vec<String> = g.row(j).iter().map(|v| format!("{:>width$}", cell(v))).collect();
            writeln!(out, "  {}", row.join(" ")).unwrap();
        }
    }
    out
}

/// Parses the output of [`grid_render`].
pub fn grid_parse(text: &str) -> Result<MatrixPair> {
    let mut planes: Vec<Vec<Vec<Q>>> = Vec::new();
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed == REAR || trimmed == FRONT {
            planes.push(Vec::new());
            continue;
        }
        let plane = planes.last_mut().ok_or_else(|| Error::Parse("grid row before any plane header".into()))?;
        let row = trimmed
            .split_whitespace()
            .map(|tok| if tok == "." { Ok(Q::zero()) } else { tok.parse::<Q>().map_err(|e| Error::Parse(e.to_string())) })
            .collect::<Result<Vec<_>>>()?;
        plane.push(row);
    }
    let [rear, front]: [Vec<Vec<Q>>; 2] = planes.try_into().map_err(|_| Error::Parse("expected exactly two planes".into()))?;
    let n = rear.len();
    if front.len() != n || rear.iter().chain(&front).any(|r| r.len() != n) {
        return Err(Error::Parse("planes must be square and of equal size".into()));
    }
    MatrixPair::new(ExactMatrix::from_rows(rear), ExactMatrix::from_rows(front)).map_err(|e| Error::Parse(e.to_string()))
}

/// Standard two-qubit-style examples used across tests and examples.
pub mod samples {
    use super::MatrixPair;

    pub fn ghz() -> MatrixPair {
        MatrixPair::from_ints(&[[1, 0], [0, 0]], &[[0, 0], [0, 1]])
    }

    pub fn w() -> MatrixPair {
        MatrixPair::from_ints(&[[0, 1], [1, 0]], &[[1, 0], [0, 0]])
    }
}

#[cfg(test)]
mod tests {
    use super::samples::{ghz, w};
    use super::*;

    fn q(v: i64) -> Q {
        Q::from_int(v)
    }

    #[test]
    fn tensor_to_pair_mapping() {
        let g = StateTensor::new(2, [((1, 1, 1), q(1)), ((2, 2, 2), q(1))]).unwrap();
        assert_eq!(to_matrix_pair(&g), ghz());
        let wt = StateTensor::new(2, [((1, 1, 2), q(1)), ((1, 2, 1), q(1)), ((2, 1, 1), q(1))]).unwrap();
        assert_eq!(to_matrix_pair(&wt), w());
        let single = StateTensor::new(2, [((1, 1, 1), q(1))]).unwrap();
        let pair = to_matrix_pair(&single);
        assert_eq!(pair.gamma1, ExactMatrix::from_ints(&[[1, 0], [0, 0]]));
        assert!(pair.gamma2.is_zero());
        assert_eq!(StateTensor::from_pair(&pair).unwrap(), single);
    }

    #[test]
    fn tensor_validation() {
        assert!(StateTensor::new(2, [((3, 1, 1), q(1))]).is_err());
        assert!(StateTensor::new(2, [((1, 1, 1), q(1)), ((1, 1, 1), q(2))]).is_err());
        assert!(StateTensor::new(2, [((1, 1, 1), q(0))]).is_err());
    }

    #[test]
    fn ilo_examples() {
        let m = ghz();
        assert_eq!(apply_ilo(&m, &IloTriple::identity(2)), m);
        let swap = ExactMatrix::from_ints(&[[0, 1], [1, 0]]);
        let swapped = apply_ilo(&m, &IloTriple::from_t(swap.clone(), 2).unwrap());
        assert_eq!((swapped.gamma1, swapped.gamma2), (m.gamma2.clone(), m.gamma1.clone()));
        let perm = IloTriple::new(ExactMatrix::identity(2), swap.clone(), swap).unwrap();
        let out = apply_ilo(&m, &perm);
        assert_eq!(out, MatrixPair::from_ints(&[[0, 0], [0, 1]], &[[1, 0], [0, 0]]));
    }

    #[test]
    fn density_ranks() {
        assert_eq!(reduced_density_ranks(&ghz()), (2, 2, 2));
        let single = MatrixPair::new(ExactMatrix::identity(3), ExactMatrix::zeros(3, 3)).unwrap();
        assert_eq!(reduced_density_ranks(&single), (1, 3, 3));
        let product = MatrixPair::from_ints(&[[1, 0], [0, 0]], &[[0, 0], [0, 0]]);
        assert_eq!(reduced_density_ranks(&product), (1, 1, 1));
        assert!(is_true_entangled(&ghz()) && is_true_entangled(&w()));
        assert!(!is_true_entangled(&single));
    }

    #[test]
    fn random_ilo_is_deterministic_and_invertible() {
        assert_eq!(random_ilo(2, 7), random_ilo(2, 7));
        let op = random_ilo(4, 1);
        assert!(!op.t().det().is_zero() && !op.p().det().is_zero() && !op.q().det().is_zero());
    }

    #[test]
    fn grid_examples() {
        let text = grid_render(&ghz());
        assert_eq!(text, format!("{REAR}\n  1 .\n  . .\n{FRONT}\n  . .\n  . 1\n"));
        assert_eq!(grid_parse(&text).unwrap(), ghz());
        let zero_front = MatrixPair::new(ExactMatrix::identity(2), ExactMatrix::zeros(2, 2)).unwrap();
        assert!(grid_render(&zero_front).ends_with(&format!("{FRONT}\n  . .\n  . .\n")));
        assert!(grid_parse("junk").is_err());
    }
}
