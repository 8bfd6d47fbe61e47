//! Families of true entangled 2xNxN classes.
//!
//! A family is fixed by discrete data: the singular blocks (for generic rank
//! below N) and, for the regular part, a multiset of Segre partitions, one
//! per distinct point. Candidates are generated combinatorially, then
//! instantiated at sample values and deduplicated with `descriptor_of`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::canonical::BShape;
use crate::classify::{descriptor_of, segre_priority, ClassDescriptor};
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, GaussianRational as Q};
use crate::pencil::Segre;
use crate::state::{is_true_entangled, MatrixPair};

/// Largest dimension enumerated unless the caller raises the cap.
pub const DEFAULT_MAX_DIM: usize = 8;

/// Admissible `(n, l)`: full rank with `1 <= l <= N-1`, and for
/// `ceil(2N/3) <= n <= N-1` every `2(N-n) <= l <= n`.
pub fn family_table(dim: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (1..dim).map(|l| (dim, l)).collect();
    for n in (2 * dim).div_ceil(3)..dim {
        for l in 2 * (dim - n)..=n {
            out.push((n, l));
        }
    }
    out
}

/// Partitions of `n`, parts in decreasing order.
pub fn partitions(n: usize) -> Vec<Segre> {
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Segre>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=left.min(max)).rev() {
            cur.push(part);
            rec(left - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Multisets of Segre partitions of total size `total`, each sorted by
/// priority (the point that goes to zero first).
pub fn point_patterns(total: usize) -> Vec<Vec<Segre>> {
    let types: Vec<Segre> = (1..=total).flat_map(partitions).collect();
    fn rec(types: &[Segre], left: usize, from: usize, cur: &mut Vec<Segre>, out: &mut Vec<Vec<Segre>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for (i, t) in types.iter().enumerate().skip(from) {
            let s: usize = t.iter().sum();
            if s <= left {
                cur.push(t.clone());
                rec(types, left - s, i, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&types, total, 0, &mut Vec::new(), &mut out);
    for p in &mut out {
        p.sort_by(segre_priority);
    }
    out
}

fn max_parts(points: &[Segre]) -> usize {
    points.iter().map(Vec::len).max().unwrap_or(0)
}

/// Regular-part patterns of an N x N full-rank pencil with minimum rank `l`.
pub fn jordan_patterns(dim: usize, l: usize) -> Vec<Vec<Segre>> {
    point_patterns(dim).into_iter().filter(|p| dim - max_parts(p) == l).collect()
}

/// Singular parts with `dim - n` blocks fitting in `dim`.
pub fn b_shapes(dim: usize, n: usize) -> Vec<BShape> {
    let k = dim - n;
    if k == 0 {
        return Vec::new();
    }
    // Decreasing index lists of length k with positive entries.
    fn lists(k: usize, max: usize, budget: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in 1..=max.min(budget) {
            for mut rest in lists(k - 1, first, budget - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let budget = dim.saturating_sub(k);
    let mut out = Vec::new();
    for eps in lists(k, budget, budget) {
        let used: usize = eps.iter().sum();
        for eta in lists(k, budget, budget.saturating_sub(used)) {
            out.push(BShape::from_indices(&eps, &eta).expect("positive indices"));
        }
    }
    out
}

/// Entry of a symbolic representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymEntry {
    Zero,
    One,
    /// Free eigenvalue slot, numbered from 1.
    Param(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicPair {
    pub first: Vec<Vec<SymEntry>>,
    pub second: Vec<Vec<SymEntry>>,
    pub params: usize,
}

impl SymbolicPair {
    pub fn dim(&self) -> usize {
        self.first.len()
    }

    pub fn param_name(&self, k: usize) -> String {
        if self.params == 1 {
            "λ".into()
        } else {
            format!("λ{k}")
        }
    }

    pub fn render_entry(&self, e: &SymEntry) -> String {
        match e {
            SymEntry::Zero => "0".into(),
            SymEntry::One => "1".into(),
            SymEntry::Param(k) => self.param_name(*k),
        }
    }

    /// Substitutes `values[k-1]` for slot `k`.
    pub fn instantiate(&self, values: &[Q]) -> MatrixPair {
        let n = self.dim();
        let conv = |rows: &Vec<Vec<SymEntry>>| {
            ExactMatrix::from_fn(n, n, |i, j| match &rows[i][j] {
                SymEntry::Zero => Q::from_int(0),
                SymEntry::One => Q::from_int(1),
                SymEntry::Param(k) => values[k - 1].clone(),
            })
        };
        MatrixPair::new(conv(&self.first), conv(&self.second)).expect("square")
    }

    fn render(&self, rows: &[Vec<SymEntry>]) -> String {
        let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|e| self.render_entry(e)).collect()).collect();
        let rows: Vec<String> = cells.iter().map(|r| r.join(" ")).collect();
        format!("[{}]", rows.join("; "))
    }

    /// One-line form `[..; ..]` of the second matrix.
    pub fn render_second(&self) -> String {
        self.render(&self.second)
    }

    pub fn render_first(&self) -> String {
        self.render(&self.first)
    }
}

/// A distinct point of the regular part: whether it sits at zero in the
/// representative, and its Jordan block sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointPattern {
    pub at_zero: bool,
    pub segre: Segre,
}

#[derive(Clone, Debug)]
pub struct ClassFamily {
    pub dim: usize,
    pub n: usize,
    pub l: usize,
    pub points: Vec<PointPattern>,
    pub b_shape: Option<BShape>,
    pub representative: SymbolicPair,
    pub param_count: usize,
}

impl ClassFamily {
    pub fn set_name(&self) -> String {
        format!("c_{{{},{}}}", self.n, self.l)
    }

    /// Deterministic sort key within a set.
    fn pattern_key(&self) -> (String, Vec<Segre>) {
        let b = self.b_shape.as_ref().map(ToString::to_string).unwrap_or_default();
        (b, self.points.iter().map(|p| p.segre.clone()).collect())
    }

    /// The representative with slot `k` set to the `k`-th value of `values`.
    pub fn sample(&self, values: &[Q]) -> MatrixPair {
        self.representative.instantiate(values)
    }
}

impl fmt::Display for ClassFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.set_name(), self.representative.render_second())
    }
}

/// Sample values for parameter slots: primes, shifted by `offset`.
pub fn sample_values(count: usize, offset: usize) -> Vec<Q> {
    const PRIMES: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    PRIMES.iter().skip(offset).take(count).map(|&p| Q::from_int(p)).collect()
}

/// Builds the family for a singular part and a regular-point pattern sorted
/// by priority; the first point goes to zero and the others get slots.
fn family(dim: usize, shape: Option<BShape>, points: &[Segre]) -> ClassFamily {
    let size = |s: &Segre| s.iter().sum::<usize>();
    let mut rows_first = vec![vec![SymEntry::Zero; dim]; dim];
    let mut rows_second = vec![vec![SymEntry::Zero; dim]; dim];
    let mut at = 0;
    let order: Vec<(Option<usize>, &Segre)> =
        points.iter().skip(1).enumerate().map(|(k, s)| (Some(k + 1), s)).chain(points.first().map(|s| (None, s))).collect();
    for (slot, segre) in &order {
        for &block in segre.iter() {
            for k in 0..block {
                rows_first[at + k][at + k] = SymEntry::One;
                rows_second[at + k][at + k] = slot.map_or(SymEntry::Zero, SymEntry::Param);
                if k + 1 < block {
                    rows_second[at + k][at + k + 1] = SymEntry::One;
                }
            }
            at += block;
        }
    }
    debug_assert_eq!(at, points.iter().map(size).sum::<usize>());
    if let Some(shape) = &shape {
        for block in shape.blocks() {
            let (lam, b) = block.matrices();
            for i in 0..block.size() {
                for j in 0..block.size() {
                    let conv = |q: &Q| if *q == Q::from_int(1) { SymEntry::One } else { SymEntry::Zero };
                    rows_first[at + i][at + j] = conv(&lam[(i, j)]);
                    rows_second[at + i][at + j] = conv(&b[(i, j)]);
                }
            }
            at += block.size();
        }
    }
    assert_eq!(at, dim, "family blocks must fill the matrix");
    let deficiency = shape.as_ref().map_or(0, BShape::deficiency);
    let n = dim - deficiency;
    let params = points.len().saturating_sub(1);
    ClassFamily {
        dim,
        n,
        l: n - max_parts(points),
        points: points.iter().enumerate().map(|(k, s)| PointPattern { at_zero: k == 0, segre: s.clone() }).collect(),
        b_shape: shape,
        representative: SymbolicPair { first: rows_first, second: rows_second, params },
        param_count: points.len().saturating_sub(3),
    }
}

/// Candidate families before deduplication.
fn candidates(dim: usize) -> Vec<ClassFamily> {
    let mut out = Vec::new();
    for (n, l) in family_table(dim) {
        if n == dim {
            out.extend(jordan_patterns(dim, l).iter().map(|p| family(dim, None, p)));
        }
    }
    let mut seen_n: Vec<usize> = family_table(dim).into_iter().map(|(n, _)| n).filter(|&n| n < dim).collect();
    seen_n.dedup();
    for n in seen_n {
        for shape in b_shapes(dim, n) {
            for pattern in point_patterns(dim - shape.size()) {
                out.push(family(dim, Some(shape.clone()), &pattern));
            }
        }
    }
    out
}

/// Every family of true entangled classes for `dim`, sorted by
/// `(n desc, l asc, pattern)`.
pub fn enumerate_classes(dim: usize, tol: f64) -> Result<Vec<ClassFamily>> {
    enumerate_classes_capped(dim, DEFAULT_MAX_DIM, tol)
}

pub fn enumerate_classes_capped(dim: usize, max_dim: usize, tol: f64) -> Result<Vec<ClassFamily>> {
    if dim < 2 {
        return Err(Error::InvalidInput("dimension must be at least 2".into()));
    }
    if dim > max_dim {
        return Err(Error::InvalidInput(format!("dimension {dim} exceeds the cap {max_dim}")));
    }
    let table = family_table(dim);
    let checked: Vec<Option<(ClassFamily, Vec<ClassDescriptor>)>> = candidates(dim)
        .into_par_iter()
        .map(|fam| {
            if !table.contains(&(fam.n, fam.l)) {
                return Ok(None);
            }
            let mut descriptors = Vec::new();
            for offset in 0..2 {
                let pair = fam.sample(&sample_values(fam.representative.params, offset));
                if !is_true_entangled(&pair) {
                    return Ok(None);
                }
                descriptors.push(descriptor_of(&pair, tol)?);
            }
            Ok(Some((fam, descriptors)))
        })
        .collect::<Result<_>>()?;
    // Two families are merged when a sample of one has the descriptor of a
    // sample of the other.
    let mut kept: Vec<(ClassFamily, Vec<ClassDescriptor>)> = Vec::new();
    for (fam, ds) in checked.into_iter().flatten() {
        if !kept.iter().any(|(_, other)| other.iter().any(|d| ds.contains(d))) {
            kept.push((fam, ds));
        }
    }
    let mut out: Vec<ClassFamily> = kept.into_iter().map(|(f, _)| f).collect();
    out.sort_by(|a, b| b.n.cmp(&a.n).then(a.l.cmp(&b.l)).then_with(|| compare_patterns(a, b)));
    Ok(out)
}

fn compare_patterns(a: &ClassFamily, b: &ClassFamily) -> Ordering {
    a.pattern_key().cmp(&b.pattern_key())
}

/// Family counts per `(n, l)` set.
pub fn counts_by_set(families: &[ClassFamily]) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    for f in families {
        *out.entry((f.n, f.l)).or_insert(0) += 1;
    }
    out
}
