//! Canonical representatives with checkable witnesses.
//!
//! Both routes first mix the slices so that the normalized point
//! configuration lands on its canonical values (all finite), then reduce by
//! `P, Q`:
//!
//! * full generic rank: `P = S^-1 gamma1^-1`, `Q = S` for a Jordan basis `S`
//!   of `gamma1^-1 gamma2`, giving `(E, J)`;
//! * rank-deficient: an exact intertwining solve against the predicted form
//!   `(E (+) lambda', J (+) B)`, which exists because the Kronecker structure
//!   is already known.

pub mod bblock;
pub mod eliminate;
pub mod intertwine;
pub mod jordan;

use std::fmt;

use num_complex::Complex64;

pub use bblock::{BBlock, BShape, Extension};
pub use eliminate::{build_flip_operators, build_mixture_eliminators, restore_b_form, MixDirection};
pub use intertwine::intertwine;
pub use jordan::{jordan_basis_exact, jordan_matrix};

use crate::classify::{canonical_chart, moebius_normalize};
use crate::error::{Error, Result};
use crate::linalg::numeric::{exact_to_dmatrix, round_complex};
use crate::linalg::{ExactMatrix, GaussianRational as Q, Value};
use crate::moebius::{Mobius, ProjPoint};
use crate::pencil::{pencil_profile, PencilProfile, Segre, SingularPoint};
use crate::state::{apply_ilo, IloTriple, MatrixPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    FullRank,
    RankDeficient,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Block {
    Jordan { value: Q, size: usize },
    Singular(BBlock),
}

impl Block {
    pub fn size(&self) -> usize {
        match self {
            Block::Jordan { size, .. } => *size,
            Block::Singular(b) => b.size(),
        }
    }
}

/// `(E, J)` or `(E (+) lambda', J (+) B)`; `blocks` lists the diagonal
/// blocks of the second matrix in order.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalPair {
    pub first: ExactMatrix,
    pub second: ExactMatrix,
    pub kind: PairKind,
    pub blocks: Vec<Block>,
}

impl CanonicalPair {
    pub fn from_blocks(blocks: Vec<Block>) -> Self {
        let parts: Vec<(ExactMatrix, ExactMatrix)> = blocks
            .iter()
            .map(|b| match b {
                Block::Jordan { value, size } => (ExactMatrix::identity(*size), jordan_matrix(&[(value.clone(), vec![*size])])),
                Block::Singular(bb) => bb.matrices(),
            })
            .collect();
        let first = ExactMatrix::direct_sum(&parts.iter().map(|p| &p.0).collect::<Vec<_>>());
        let second = ExactMatrix::direct_sum(&parts.iter().map(|p| &p.1).collect::<Vec<_>>());
        let kind = if blocks.iter().any(|b| matches!(b, Block::Singular(_))) { PairKind::RankDeficient } else { PairKind::FullRank };
        Self { first, second, kind, blocks }
    }

    pub fn to_pair(&self) -> MatrixPair {
        MatrixPair::new(self.first.clone(), self.second.clone()).expect("square blocks of equal size")
    }

    pub fn dim(&self) -> usize {
        self.first.rows()
    }
}

impl fmt::Display for CanonicalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "first:")?;
        write!(f, "{}", self.first)?;
        writeln!(f, "second:")?;
        write!(f, "{}", self.second)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exactness {
    Exact,
    /// Largest entry deviation after applying the witness.
    Approximate { residual: f64 },
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub ops: IloTriple,
    pub exactness: Exactness,
}

impl Witness {
    /// Re-applies the operator; exact witnesses must reproduce the pair
    /// entry for entry.
    pub fn verify(&self, input: &MatrixPair, canonical: &CanonicalPair) -> Exactness {
        let image = apply_ilo(input, &self.ops);
        let target = canonical.to_pair();
        if image == target {
            Exactness::Exact
        } else {
            Exactness::Approximate { residual: image.max_deviation(&target) }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Canonical {
    pub pair: CanonicalPair,
    pub witness: Witness,
    pub notes: Vec<String>,
}

/// Canonical values of the regular part with their Segre data, in block
/// order: nonzero points in key order, the point at zero last.
struct ChartPlan {
    chart: Mobius,
    spectrum: Vec<(Value, Segre)>,
}

impl ChartPlan {
    fn new(points: &[SingularPoint]) -> Result<Self> {
        let norm = moebius_normalize(points)?;
        let (chart, t) = canonical_chart(&norm);
        let finite = t.map_or_else(Mobius::identity, Mobius::finite_chart);
        let mut spectrum: Vec<(Value, Segre)> = norm
            .key
            .entries()
            .iter()
            .map(|e| match finite.apply(&e.point) {
                ProjPoint::Finite(v) => Ok((v, e.segre.clone())),
                ProjPoint::Infinity => Err(Error::IllConditioned("canonical chart left a point at infinity".into())),
            })
            .collect::<Result<_>>()?;
        if let Some(k) = spectrum.iter().position(|(v, _)| v.exact().is_some_and(|q| *q == Q::from_int(0))) {
            let zero = spectrum.remove(k);
            spectrum.push(zero);
        }
        Ok(Self { chart, spectrum })
    }

    fn is_exact(&self) -> bool {
        self.chart.is_exact() && self.spectrum.iter().all(|(v, _)| v.is_exact())
    }

    /// Exact spectrum, rounding approximate values.
    fn rounded_spectrum(&self) -> Vec<(Q, Segre)> {
        self.spectrum.iter().map(|(v, s)| (v.exact().cloned().unwrap_or_else(|| round_complex(v.to_complex())), s.clone())).collect()
    }

    fn jordan_blocks(&self) -> Vec<Block> {
        self.rounded_spectrum()
            .into_iter()
            .flat_map(|(value, segre)| segre.into_iter().map(move |size| Block::Jordan { value: value.clone(), size }))
            .collect()
    }
}

/// Dispatches on the generic rank.
pub fn canonicalize(m: &MatrixPair, tol: f64) -> Result<Canonical> {
    let profile = pencil_profile(m, tol)?;
    if profile.generic_rank == profile.dim {
        full_rank(m, &profile, tol)
    } else {
        rank_deficient(m, &profile)
    }
}

pub fn reduce_full_rank(m: &MatrixPair, tol: f64) -> Result<Canonical> {
    let profile = pencil_profile(m, tol)?;
    if profile.generic_rank != profile.dim {
        return Err(Error::InvalidInput(format!("generic rank {} below {}", profile.generic_rank, profile.dim)));
    }
    full_rank(m, &profile, tol)
}

pub fn reduce_rank_deficient(m: &MatrixPair, tol: f64) -> Result<Canonical> {
    let profile = pencil_profile(m, tol)?;
    if profile.generic_rank == profile.dim {
        return Err(Error::InvalidInput("pencil has full generic rank".into()));
    }
    rank_deficient(m, &profile)
}

fn full_rank(m: &MatrixPair, profile: &PencilProfile, tol: f64) -> Result<Canonical> {
    let plan = ChartPlan::new(&profile.points)?;
    let t = plan.chart.to_t_rounded();
    let mixed = m.mix(&t);
    let g_inv = mixed.gamma1.invert().map_err(|_| Error::IllConditioned("first slice singular in the canonical chart".into()))?;
    let a = &g_inv * &mixed.gamma2;
    let pair = CanonicalPair::from_blocks(plan.jordan_blocks());
    let mut notes = Vec::new();
    let s = if plan.is_exact() {
        jordan_basis_exact(&a, &plan.rounded_spectrum())?
    } else {
        notes.push("irrational points: Jordan basis computed numerically, witness approximate".to_string());
        let spectrum: Vec<(Complex64, Segre)> = plan.spectrum.iter().map(|(v, s)| (v.to_complex(), s.clone())).collect();
        let basis = jordan::jordan_basis_numeric(&exact_to_dmatrix(&a), &spectrum, tol)?;
        let s = ExactMatrix::from_fn(basis.nrows(), basis.ncols(), |i, j| round_complex(basis[(i, j)]));
        if s.det() == Q::from_int(0) {
            return Err(Error::IllConditioned("rounded Jordan basis is singular".into()));
        }
        s
    };
    let p = &s.invert()? * &g_inv;
    finish(m, pair, IloTriple::new(t, p, s)?, notes, plan.is_exact())
}

fn rank_deficient(m: &MatrixPair, profile: &PencilProfile) -> Result<Canonical> {
    let shape = BShape::from_indices(&profile.column_indices, &profile.row_indices)?;
    let plan = ChartPlan::new(&profile.points)?;
    if !plan.is_exact() {
        return Err(Error::IllConditioned(
            "regular part has irrational points; only the descriptor is available for rank-deficient pairs".into(),
        ));
    }
    let t = plan.chart.to_t_rounded();
    let mixed = m.mix(&t);
    let mut blocks = plan.jordan_blocks();
    blocks.extend(shape.blocks().iter().cloned().map(Block::Singular));
    let pair = CanonicalPair::from_blocks(blocks);
    let (p, q) = intertwine(&mixed, &pair.to_pair())
        .ok_or_else(|| Error::IllConditioned("no invertible intertwiner onto the predicted form".into()))?;
    finish(m, pair, IloTriple::new(t, p, q)?, Vec::new(), true)
}

fn finish(m: &MatrixPair, pair: CanonicalPair, ops: IloTriple, notes: Vec<String>, exact: bool) -> Result<Canonical> {
    let mut witness = Witness { ops, exactness: Exactness::Exact };
    witness.exactness = witness.verify(m, &pair);
    if exact && witness.exactness != Exactness::Exact {
        return Err(Error::IllConditioned("exact witness failed re-application".into()));
    }
    Ok(Canonical { pair, witness, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DEFAULT_TOL;
    use crate::state::{random_ilo, samples};

    fn canon(m: &MatrixPair) -> Canonical {
        canonicalize(m, DEFAULT_TOL).unwrap()
    }

    #[test]
    fn two_qubit_forms() {
        let ghz = canon(&samples::ghz());
        assert_eq!(ghz.pair.second, ExactMatrix::from_ints(&[[1, 0], [0, 0]]));
        assert!(ghz.pair.first.is_identity());
        assert_eq!(ghz.witness.exactness, Exactness::Exact);
        let w = canon(&samples::w());
        assert_eq!(w.pair.second, ExactMatrix::from_ints(&[[0, 1], [0, 0]]));
    }

    #[test]
    fn nilpotent_pairs_are_fixed() {
        let j = ExactMatrix::from_ints(&[[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]]);
        let m = MatrixPair::new(ExactMatrix::identity(4), j.clone()).unwrap();
        let c = canon(&m);
        assert_eq!(c.pair.second, j);
        assert_eq!(canon(&apply_ilo(&m, &random_ilo(4, 2))).pair, c.pair);
    }

    #[test]
    fn rank_deficient_symmetry_pair() {
        let r_type = MatrixPair::from_ints(
            &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]],
            &[[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0]],
        );
        let c = canon(&r_type);
        assert_eq!(c.pair.to_pair(), r_type);
        assert_eq!(c.pair.kind, PairKind::RankDeficient);
        assert!(c.witness.ops.p().is_identity() && c.witness.ops.q().is_identity());
        let moved = apply_ilo(&r_type, &random_ilo(4, 9));
        let c2 = canon(&moved);
        assert_eq!(c2.pair, c.pair);
        assert_eq!(apply_ilo(&moved, &c2.witness.ops), r_type);
    }

    #[test]
    fn b3_with_a_regular_point() {
        let m = MatrixPair::from_ints(
            &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]],
            &[[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0]],
        );
        let c = canon(&apply_ilo(&m, &random_ilo(4, 4)));
        assert_eq!(c.pair.to_pair(), m);
    }

    #[test]
    fn irrational_spectrum_gives_approximate_witness() {
        let m = MatrixPair::from_ints(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]], &[[0, 2, 0], [1, 0, 0], [0, 0, 0]]);
        let c = canon(&m);
        match c.witness.exactness {
            Exactness::Approximate { residual } => assert!(residual < 1e-6),
            Exactness::Exact => panic!("irrational chart cannot be exact"),
        }
        assert!(!c.notes.is_empty());
    }
}
