//! SLOCC invariants of a pair.
//!
//! The slice mixing acts on pencil directions by the full fractional-linear
//! group, so the instance-level invariant is the orbit of the decorated
//! point configuration. An orbit is named by the lexicographically smallest
//! key over all ways of sending up to three of its points to 0, 1 and
//! infinity.

use std::cmp::Ordering;
use std::fmt;

use crate::canonical::{canonicalize, BShape, Exactness};
use crate::error::{Error, Result};
use crate::linalg::numeric::CLUSTER_FACTOR;
use crate::linalg::Value;
use crate::moebius::{Mobius, ProjPoint};
use crate::pencil::{pencil_profile, PencilProfile, Segre, SingularPoint};
use crate::state::{IloTriple, MatrixPair};

/// Priority of Segre data when choosing anchors: more blocks first (lower
/// rank at the point), then the larger partition.
pub fn segre_priority(a: &Segre, b: &Segre) -> Ordering {
    b.len().cmp(&a.len()).then_with(|| b.cmp(a))
}

#[derive(Clone, Debug, PartialEq)]
pub struct KeyEntry {
    pub point: ProjPoint,
    pub segre: Segre,
}

impl KeyEntry {
    fn cmp(&self, o: &Self) -> Ordering {
        segre_priority(&self.segre, &o.segre).then_with(|| self.point.order(&o.point))
    }
}

/// Normalized decorated configuration: anchors first (at 0, 1, infinity in
/// that order), then the remaining points sorted.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ConfigKey(pub Vec<KeyEntry>);

impl ConfigKey {
    pub fn entries(&self) -> &[KeyEntry] {
        &self.0
    }

    pub fn is_exact(&self) -> bool {
        self.0.iter().all(|e| e.point.is_exact())
    }

    fn cmp(&self, o: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&o.0) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        self.0.len().cmp(&o.0.len())
    }

    /// Entrywise comparison allowing approximate values to agree inside
    /// `band`; `None` means "agree only up to the band".
    pub fn matches(&self, o: &Self, band: f64) -> Option<bool> {
        if self.0.len() != o.0.len() {
            return Some(false);
        }
        let mut fuzzy = false;
        for (a, b) in self.0.iter().zip(&o.0) {
            if a.segre != b.segre {
                return Some(false);
            }
            match (&a.point, &b.point) {
                (ProjPoint::Infinity, ProjPoint::Infinity) => {}
                (ProjPoint::Finite(Value::Exact(x)), ProjPoint::Finite(Value::Exact(y))) => {
                    if x != y {
                        return Some(false);
                    }
                }
                (ProjPoint::Finite(x), ProjPoint::Finite(y)) => {
                    if (x.to_complex() - y.to_complex()).norm() > band {
                        return Some(false);
                    }
                    fuzzy = true;
                }
                _ => return Some(false),
            }
        }
        if fuzzy {
            None
        } else {
            Some(true)
        }
    }
}

impl fmt::Display for ConfigKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{:?}", e.point, e.segre)?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Debug)]
pub struct Normalized {
    pub key: ConfigKey,
    /// Map from original point coordinates to key coordinates.
    pub chart: Mobius,
    pub param_count: usize,
}

fn anchor_values() -> [ProjPoint; 3] {
    [ProjPoint::int(0), ProjPoint::int(1), ProjPoint::Infinity]
}

/// All ordered selections of `k` distinct indices below `d`.
pub(crate) fn ordered_tuples(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &out {
            for i in (0..d).filter(|i| !t.contains(i)) {
                next.push([t.as_slice(), &[i]].concat());
            }
        }
        out = next;
    }
    out
}

/// The key obtained by sending the chosen anchors to 0, 1, infinity.
pub(crate) fn key_for(points: &[SingularPoint], anchors: &[usize]) -> (ConfigKey, Mobius) {
    let locs: Vec<&ProjPoint> = anchors.iter().map(|&i| &points[i].location).collect();
    let chart = if locs.is_empty() { Mobius::identity() } else { Mobius::sending(&locs) };
    let mut entries: Vec<KeyEntry> =
        anchors.iter().zip(anchor_values()).map(|(&i, point)| KeyEntry { point, segre: points[i].segre.clone() }).collect();
    let mut rest: Vec<KeyEntry> = (0..points.len())
        .filter(|i| !anchors.contains(i))
        .map(|i| KeyEntry { point: chart.apply(&points[i].location), segre: points[i].segre.clone() })
        .collect();
    rest.sort_by(KeyEntry::cmp);
    entries.extend(rest);
    (ConfigKey(entries), chart)
}

/// Smallest key over all anchor choices, with the chart realizing it.
pub fn moebius_normalize(points: &[SingularPoint]) -> Result<Normalized> {
    check_separated(points)?;
    let d = points.len();
    let mut best: Option<(ConfigKey, Mobius)> = None;
    for anchors in ordered_tuples(d, d.min(3)) {
        let (key, chart) = key_for(points, &anchors);
        if best.as_ref().is_none_or(|(b, _)| key.cmp(b) == Ordering::Less) {
            best = Some((key, chart));
        }
    }
    let (key, chart) = best.expect("at least the empty selection");
    Ok(Normalized { key, chart, param_count: d.saturating_sub(3) })
}

fn check_separated(points: &[SingularPoint]) -> Result<()> {
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            if let (ProjPoint::Finite(x), ProjPoint::Finite(y)) = (&a.location, &b.location) {
                let band = CLUSTER_FACTOR * x.tol().max(y.tol());
                if !(x.is_exact() && y.is_exact()) && (x.to_complex() - y.to_complex()).norm() <= band {
                    return Err(Error::IllConditioned(format!("points {x} and {y} cannot be told apart")));
                }
            }
        }
    }
    Ok(())
}

/// The chart used for canonical representatives. When the key uses
/// infinity, it is followed by `z -> t z / (z + t - 1)`, which fixes 0 and 1
/// and brings infinity to the first `t >= 2` whose pole misses every key
/// value; otherwise the key chart is used as is.
pub fn canonical_chart(norm: &Normalized) -> (Mobius, Option<i64>) {
    if !norm.key.0.iter().any(|e| e.point == ProjPoint::Infinity) {
        return (norm.chart.clone(), None);
    }
    let mut t = 2;
    loop {
        let pole = Value::int(1 - t);
        let hits = norm.key.0.iter().any(|e| match &e.point {
            ProjPoint::Finite(v) => match (v, &pole) {
                (Value::Exact(_), _) => *v == pole,
                _ => (v.to_complex() - pole.to_complex()).norm() <= CLUSTER_FACTOR * v.tol(),
            },
            ProjPoint::Infinity => false,
        });
        if !hits {
            return (Mobius::finite_chart(t).compose(&norm.chart), Some(t));
        }
        t += 1;
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassDescriptor {
    pub dim: usize,
    pub n: usize,
    pub l: usize,
    pub b_shape: Option<BShape>,
    pub config_key: ConfigKey,
    pub param_count: usize,
}

impl ClassDescriptor {
    pub fn is_exact(&self) -> bool {
        self.config_key.is_exact()
    }

    /// Family name: the set `c_{n,l}`, with the two-qubit classes named.
    pub fn label(&self) -> String {
        let segres: Vec<&Segre> = self.config_key.0.iter().map(|e| &e.segre).collect();
        match (self.dim, segres.as_slice()) {
            (2, [a, b]) if **a == [1] && **b == [1] => "GHZ-type".into(),
            (2, [a]) if **a == [2] => "W-type".into(),
            _ => format!("c_{{{},{}}}", self.n, self.l),
        }
    }
}

pub(crate) fn descriptor_from_profile(profile: &PencilProfile) -> Result<ClassDescriptor> {
    let b_shape = if profile.generic_rank < profile.dim {
        Some(BShape::from_indices(&profile.column_indices, &profile.row_indices)?)
    } else {
        None
    };
    let norm = moebius_normalize(&profile.points)?;
    Ok(ClassDescriptor {
        dim: profile.dim,
        n: profile.generic_rank,
        l: profile.min_rank,
        b_shape,
        config_key: norm.key,
        param_count: norm.param_count,
    })
}

pub fn descriptor_of(m: &MatrixPair, tol: f64) -> Result<ClassDescriptor> {
    descriptor_from_profile(&pencil_profile(m, tol)?)
}

pub fn nonlocal_param_count(d: &ClassDescriptor) -> usize {
    d.param_count
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equivalent,
    Inequivalent,
    /// Approximate data agree only inside the guard band.
    Indeterminate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equivalent => "equivalent",
            Verdict::Inequivalent => "inequivalent",
            Verdict::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Equivalence {
    pub verdict: Verdict,
    /// Maps the first pair exactly onto the second.
    pub witness: Option<IloTriple>,
}

/// Compares two descriptors; approximate keys are matched against every
/// anchor choice of the second configuration.
pub fn compare_descriptors(a: &ClassDescriptor, b: &ClassDescriptor, b_points: &[SingularPoint], tol: f64) -> Verdict {
    if (a.dim, a.n, a.l, &a.b_shape, a.config_key.0.len()) != (b.dim, b.n, b.l, &b.b_shape, b.config_key.0.len()) {
        return Verdict::Inequivalent;
    }
    if a.is_exact() && b.is_exact() {
        return if a.config_key == b.config_key { Verdict::Equivalent } else { Verdict::Inequivalent };
    }
    let band = CLUSTER_FACTOR * tol;
    let d = b_points.len();
    let mut verdict = Verdict::Inequivalent;
    for anchors in ordered_tuples(d, d.min(3)) {
        match a.config_key.matches(&key_for(b_points, &anchors).0, band) {
            Some(true) => return Verdict::Equivalent,
            None => verdict = Verdict::Indeterminate,
            Some(false) => {}
        }
    }
    verdict
}

pub fn slocc_equivalent(a: &MatrixPair, b: &MatrixPair, tol: f64) -> Result<Equivalence> {
    if a.dim() != b.dim() {
        return Ok(Equivalence { verdict: Verdict::Inequivalent, witness: None });
    }
    let (pa, pb) = (pencil_profile(a, tol)?, pencil_profile(b, tol)?);
    let (da, db) = (descriptor_from_profile(&pa)?, descriptor_from_profile(&pb)?);
    let verdict = compare_descriptors(&da, &db, &pb.points, tol);
    let witness = if verdict == Verdict::Equivalent && da.is_exact() && db.is_exact() {
        let (ca, cb) = (canonicalize(a, tol)?, canonicalize(b, tol)?);
        match (ca.witness.exactness, cb.witness.exactness, ca.pair == cb.pair) {
            (Exactness::Exact, Exactness::Exact, true) => Some(ca.witness.ops.then(&cb.witness.ops.inverse())),
            _ => None,
        }
    } else {
        None
    };
    Ok(Equivalence { verdict, witness })
}
