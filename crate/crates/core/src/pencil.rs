//! Invariants of the pencil `alpha gamma1 + beta gamma2`.
//!
//! The complete SLOCC data of a pair is the Kronecker structure of this
//! pencil up to the action of GL(2) on directions: the generic rank, the
//! minimal indices of the singular part, and for every singular direction
//! of the regular part its Segre partition.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::numeric::{exact_to_dmatrix, guarded_rank};
use crate::linalg::poly::minors_gcd_with_degree;
use crate::linalg::{pencil_det_poly, poly_roots, ExactMatrix, GaussianRational as Q, Value};
use crate::moebius::{Mobius, ProjPoint};
use crate::state::{require_true_entangled, MatrixPair};

/// Jordan block sizes at one point, largest first.
pub type Segre = Vec<usize>;

#[derive(Clone, Debug, PartialEq)]
pub struct SingularPoint {
    pub location: ProjPoint,
    pub rank_at: usize,
    pub segre: Segre,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PencilProfile {
    pub dim: usize,
    pub generic_rank: usize,
    pub min_rank: usize,
    pub points: Vec<SingularPoint>,
    /// Column minimal indices, largest first.
    pub column_indices: Vec<usize>,
    /// Row minimal indices, largest first.
    pub row_indices: Vec<usize>,
}

impl PencilProfile {
    pub fn is_exact(&self) -> bool {
        self.points.iter().all(|p| p.location.is_exact())
    }

    /// Size of the regular part of the Kronecker form.
    pub fn regular_size(&self) -> usize {
        self.points.iter().map(|p| p.segre.iter().sum::<usize>()).sum()
    }
}

/// Largest rank reached anywhere on the pencil.
pub fn generic_rank(m: &MatrixPair) -> usize {
    let n = m.dim();
    let mut best = m.gamma2.rank();
    for t in 0..=n as i64 {
        if best == n {
            break;
        }
        best = best.max((&m.gamma1 + &m.gamma2.scale(&Q::from_int(t))).rank());
    }
    best
}

/// Deterministic direction sweep: (1:0), (0:1), (1:1), (1:-1), (1:2), (1:-2),
/// (2:1), (2:-1), ...
pub fn sweep_directions() -> impl Iterator<Item = (i64, i64)> {
    [(1, 0), (0, 1)].into_iter().chain((1..).flat_map(|k: i64| {
        let extra = if k > 1 { vec![(k, 1), (k, -1)] } else { vec![] };
        [(1, k), (1, -k)].into_iter().chain(extra)
    }))
}

/// A change of pencil coordinates putting a generic-rank direction first.
#[derive(Clone, Debug)]
pub struct RegularChart {
    /// Slice-mixing matrix; `pair` is the input mixed by it.
    pub t: ExactMatrix,
    pub pair: MatrixPair,
}

impl RegularChart {
    /// Maps a chart eigenvalue back to the original pencil coordinates.
    pub fn to_original(&self, mu: &Value) -> ProjPoint {
        Mobius::from_t(&self.t).inverse().apply(&ProjPoint::Finite(mu.clone()))
    }
}

/// First direction of the sweep whose pencil matrix reaches `rank`.
pub fn regular_chart(m: &MatrixPair, rank: usize) -> RegularChart {
    for (alpha, beta) in sweep_directions() {
        let (a, b) = (Q::from_int(alpha), Q::from_int(beta));
        let g = &m.gamma1.scale(&a) + &m.gamma2.scale(&b);
        if g.rank() == rank {
            let other = if alpha != 0 { [0, 1] } else { [1, 0] };
            let t = ExactMatrix::from_ints(&[[alpha, beta], other]);
            return RegularChart { pair: m.mix(&t), t };
        }
    }
    unreachable!("a pencil reaches its generic rank off finitely many directions")
}

/// Column and row minimal indices of the singular part, from the kernel
/// dimensions of the block Toeplitz coefficient maps.
pub fn minimal_indices(m: &MatrixPair) -> (Vec<usize>, Vec<usize>) {
    let deficiency = m.dim() - generic_rank(m);
    let cols = indices(&m.gamma1, &m.gamma2, deficiency);
    let rows = indices(&m.gamma1.transpose(), &m.gamma2.transpose(), deficiency);
    (cols, rows)
}

fn indices(a: &ExactMatrix, b: &ExactMatrix, count: usize) -> Vec<usize> {
    let n = a.rows();
    let mut out = Vec::new();
    let (mut prev_kernel, mut prev_count) = (0, 0);
    let mut d = 0;
    while out.len() < count {
        let mut w = ExactMatrix::zeros((d + 2) * n, (d + 1) * n);
        for j in 0..=d {
            w.set_block(j * n, j * n, a);
            w.set_block((j + 1) * n, j * n, b);
        }
        let kernel = (d + 1) * n - w.rank();
        let at_most_d = kernel - prev_kernel;
        out.extend(std::iter::repeat_n(d, at_most_d - prev_count));
        (prev_kernel, prev_count) = (kernel, at_most_d);
        d += 1;
        assert!(d <= n + 1, "minimal indices exceed the pencil size");
    }
    out.reverse();
    out
}

/// A regular-part eigenvalue in chart coordinates.
#[derive(Clone, Debug)]
pub struct ChartPoint {
    pub mu: Value,
    pub segre: Segre,
}

/// Eigenvalues `mu` of the chart pencil (`gamma2 - mu gamma1` singular)
/// with Segre data. `regular` is the known size of the regular part.
pub fn chart_points(chart: &MatrixPair, rank: usize, regular: usize, tol: f64) -> Result<Vec<ChartPoint>> {
    if regular == 0 {
        return Ok(Vec::new());
    }
    let (g, h) = (&chart.gamma1, &chart.gamma2);
    let n = g.rows();
    let poly = if rank == n { pencil_det_poly(h, &-g) } else { minors_gcd_with_degree(h, &-g, rank, regular) };
    if poly.degree() != Some(regular) {
        return Err(Error::IllConditioned(format!("regular part has degree {:?}, expected {regular}", poly.degree())));
    }
    let mut out = Vec::new();
    for root in poly_roots(&poly, tol)? {
        let segre = if rank == n {
            segre_by_powers(g, h, &root.value, root.multiplicity, tol)?
        } else {
            segre_by_jets(g, h, n - rank, &root.value, root.multiplicity, tol)?
        };
        out.push(ChartPoint { mu: root.value, segre });
    }
    Ok(out)
}

/// Partition from the nullities `c_k` of increasing powers (or jet orders):
/// `c_k - c_{k-1}` blocks have size at least `k`.
fn partition_from_nullities(mult: usize, mut nullity: impl FnMut(usize) -> Result<usize>) -> Result<Segre> {
    let mut at_least = Vec::new();
    let mut prev = 0;
    for k in 1..=mult {
        let c = nullity(k)?;
        if c < prev || c > mult {
            return Err(Error::IllConditioned(format!("inconsistent nullity sequence at order {k}")));
        }
        at_least.push(c - prev);
        prev = c;
        if c == mult {
            break;
        }
    }
    if prev != mult {
        return Err(Error::IllConditioned("nullities do not reach the algebraic multiplicity".into()));
    }
    let mut segre = Vec::new();
    for (k, &count) in at_least.iter().enumerate() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        if count < next {
            return Err(Error::IllConditioned("non-monotone block counts".into()));
        }
        segre.extend(std::iter::repeat_n(k + 1, count - next));
    }
    segre.sort_unstable_by(|a, b| b.cmp(a));
    Ok(segre)
}

/// Segre data of `A = G^-1 H` at `mu` from ranks of `(A - mu)^k`.
pub fn segre_by_powers(g: &ExactMatrix, h: &ExactMatrix, mu: &Value, mult: usize, tol: f64) -> Result<Segre> {
    let n = g.rows();
    let a = &g.invert()? * h;
    match mu {
        Value::Exact(mu) => {
            let shifted = &a - &ExactMatrix::identity(n).scale(mu);
            let mut power = ExactMatrix::identity(n);
            partition_from_nullities(mult, |_| {
                power = &power * &shifted;
                Ok(n - power.rank())
            })
        }
        Value::Approx(mu) => {
            let shifted = exact_to_dmatrix(&a) - DMatrix::<Complex64>::identity(n, n) * mu.value();
            let mut power = DMatrix::<Complex64>::identity(n, n);
            partition_from_nullities(mult, |_| {
                power = &power * &shifted;
                Ok(n - guarded_rank(&power, tol)?)
            })
        }
    }
}

/// Segre data at `mu` for a possibly singular pencil: the order-`k` jets of
/// kernel vectors of `H - (mu + e) G` form a space of dimension
/// `k * deficiency + sum min(k, s_j)` over the blocks `s_j` at `mu`.
pub fn segre_by_jets(g: &ExactMatrix, h: &ExactMatrix, deficiency: usize, mu: &Value, mult: usize, tol: f64) -> Result<Segre> {
    let n = g.rows();
    match mu {
        Value::Exact(mu) => {
            let base = h - &g.scale(mu);
            let neg_g = -g;
            partition_from_nullities(mult, |k| {
                let mut t = ExactMatrix::zeros(k * n, k * n);
                for j in 0..k {
                    t.set_block(j * n, j * n, &base);
                    if j + 1 < k {
                        t.set_block((j + 1) * n, j * n, &neg_g);
                    }
                }
                Ok(k * n - t.rank() - k * deficiency)
            })
        }
        Value::Approx(mu) => {
            let gd = exact_to_dmatrix(g);
            let base = exact_to_dmatrix(h) - &gd * mu.value();
            partition_from_nullities(mult, |k| {
                let mut t = DMatrix::<Complex64>::zeros(k * n, k * n);
                for j in 0..k {
                    t.view_mut((j * n, j * n), (n, n)).copy_from(&base);
                    if j + 1 < k {
                        t.view_mut(((j + 1) * n, j * n), (n, n)).copy_from(&(-&gd));
                    }
                }
                let nullity = k * n - guarded_rank(&t, tol)?;
                nullity.checked_sub(k * deficiency).ok_or_else(|| Error::IllConditioned("jet nullity below the singular part".into()))
            })
        }
    }
}

/// Singular points of a pencil of full generic rank.
pub fn singular_points(m: &MatrixPair, tol: f64) -> Result<Vec<SingularPoint>> {
    let n = m.dim();
    if generic_rank(m) != n {
        return Err(Error::InvalidInput("singular_points needs full generic rank".into()));
    }
    points_in_chart(&regular_chart(m, n), n, n, tol)
}

fn points_in_chart(chart: &RegularChart, rank: usize, regular: usize, tol: f64) -> Result<Vec<SingularPoint>> {
    let mut points: Vec<SingularPoint> = chart_points(&chart.pair, rank, regular, tol)?
        .into_iter()
        .map(|cp| SingularPoint { location: chart.to_original(&cp.mu), rank_at: rank - cp.segre.len(), segre: cp.segre })
        .collect();
    points.sort_by(|a, b| a.location.order(&b.location));
    Ok(points)
}

/// Full invariant data of a true entangled pair.
pub fn pencil_profile(m: &MatrixPair, tol: f64) -> Result<PencilProfile> {
    require_true_entangled(m)?;
    profile_unchecked(m, tol)
}

pub(crate) fn profile_unchecked(m: &MatrixPair, tol: f64) -> Result<PencilProfile> {
    let dim = m.dim();
    let rank = generic_rank(m);
    let (column_indices, row_indices) = if rank < dim { minimal_indices(m) } else { (Vec::new(), Vec::new()) };
    let singular_size: usize = column_indices.iter().chain(&row_indices).sum::<usize>() + (dim - rank);
    let regular = dim.checked_sub(singular_size).expect("singular part fits inside the pencil");
    let points = points_in_chart(&regular_chart(m, rank), rank, regular, tol)?;
    let min_rank = points.iter().map(|p| p.rank_at).min().unwrap_or(rank);
    Ok(PencilProfile { dim, generic_rank: rank, min_rank, points, column_indices, row_indices })
}
