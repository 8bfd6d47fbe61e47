//! The 0/1 blocks that carry the singular part of a rank-deficient pencil.
//!
//! A block is grown from the 1x1 zero block by a sequence of extensions.
//! Each extension prepends a row and a column; a column extension puts a 1
//! in the new top row, a row extension puts a 1 in the new first column.
//! The companion matrix `lambda'` is `diag(1, ..., 1, 0)`. As a pencil
//! `(lambda', B)` the block is `L_eps (+) L_eta^T` with `eps` the number of
//! column extensions and `eta` the number of row extensions.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, GaussianRational as Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Extension {
    Column,
    Row,
}

impl Extension {
    fn symbol(self) -> char {
        match self {
            Extension::Column => 'c',
            Extension::Row => 'r',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BBlock {
    pattern: Vec<Extension>,
}

impl BBlock {
    /// Any pattern with at least one extension of each kind; anything else
    /// leaves a zero row or column behind.
    pub fn from_pattern(pattern: Vec<Extension>) -> Result<Self> {
        if !pattern.contains(&Extension::Column) || !pattern.contains(&Extension::Row) {
            return Err(Error::InvalidInput("a B block needs both a column and a row extension".into()));
        }
        Ok(Self { pattern })
    }

    /// Parses strings such as `"crc"`.
    pub fn parse(s: &str) -> Result<Self> {
        let pattern = s
            .chars()
            .map(|c| match c {
                'c' => Ok(Extension::Column),
                'r' => Ok(Extension::Row),
                _ => Err(Error::Parse(format!("bad extension symbol {c:?}"))),
            })
            .collect::<Result<_>>()?;
        Self::from_pattern(pattern)
    }

    /// The representative for given minimal indices: `c r`, then the
    /// remaining column extensions, then the remaining row extensions.
    pub fn canonical(eps: usize, eta: usize) -> Self {
        assert!(eps >= 1 && eta >= 1, "minimal indices of a B block are positive");
        let mut pattern = vec![Extension::Column, Extension::Row];
        pattern.extend(std::iter::repeat_n(Extension::Column, eps - 1));
        pattern.extend(std::iter::repeat_n(Extension::Row, eta - 1));
        Self { pattern }
    }

    pub fn pattern(&self) -> &[Extension] {
        &self.pattern
    }

    pub fn size(&self) -> usize {
        self.pattern.len() + 1
    }

    /// `(eps, eta)`: column and row minimal index of the block pencil.
    pub fn indices(&self) -> (usize, usize) {
        let eps = self.pattern.iter().filter(|e| **e == Extension::Column).count();
        (eps, self.pattern.len() - eps)
    }

    pub fn is_canonical(&self) -> bool {
        let (eps, eta) = self.indices();
        *self == Self::canonical(eps, eta)
    }

    /// `(lambda', B)`.
    pub fn matrices(&self) -> (ExactMatrix, ExactMatrix) {
        let b = grow(&self.pattern).0;
        (lambda_prime(self.size()), b)
    }
}

/// Replays the extensions and returns the final block together with the
/// position of the unit entry each step added (row, column).
pub(crate) fn grow(pattern: &[Extension]) -> (ExactMatrix, Vec<(usize, usize)>) {
    let mut b = ExactMatrix::zeros(1, 1);
    let (mut zero_row, mut zero_col) = (0, 0);
    let mut units = Vec::new();
    for ext in pattern {
        let n = b.rows();
        let mut next = ExactMatrix::zeros(n + 1, n + 1);
        next.set_block(1, 1, &b);
        let unit = match ext {
            Extension::Column => {
                let u = (0, zero_col + 1);
                zero_row += 1;
                zero_col = 0;
                u
            }
            Extension::Row => {
                let u = (zero_row + 1, 0);
                zero_row = 0;
                zero_col += 1;
                u
            }
        };
        next[unit] = Q::from_int(1);
        units.push(unit);
        b = next;
    }
    (b, units)
}

pub(crate) fn lambda_prime(size: usize) -> ExactMatrix {
    ExactMatrix::from_fn(size, size, |i, j| Q::from_int((i == j && i + 1 < size) as i64))
}

impl fmt::Display for BBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}[", self.size())?;
        for e in &self.pattern {
            write!(f, "{}", e.symbol())?;
        }
        write!(f, "]")
    }
}

/// The singular part of a rank-deficient class: one block per unit of rank
/// deficiency, sorted by minimal indices (largest first).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BShape {
    blocks: Vec<BBlock>,
}

impl BShape {
    /// Pairs the column and row minimal indices largest with largest.
    pub fn from_indices(columns: &[usize], rows: &[usize]) -> Result<Self> {
        if columns.len() != rows.len() || columns.is_empty() {
            return Err(Error::InvalidInput("need equally many column and row indices".into()));
        }
        if columns.iter().chain(rows).any(|&k| k == 0) {
            return Err(Error::InvalidInput("zero minimal index: the pair has a zero row or column".into()));
        }
        let (mut c, mut r) = (columns.to_vec(), rows.to_vec());
        c.sort_unstable_by(|a, b| b.cmp(a));
        r.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { blocks: c.into_iter().zip(r).map(|(e, h)| BBlock::canonical(e, h)).collect() })
    }

    pub fn single(block: BBlock) -> Self {
        let (e, h) = block.indices();
        Self { blocks: vec![BBlock::canonical(e, h)] }
    }

    pub fn blocks(&self) -> &[BBlock] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().map(BBlock::size).sum()
    }

    /// Rank deficiency contributed to the pencil (one per block).
    pub fn deficiency(&self) -> usize {
        self.blocks.len()
    }

    /// `(lambda', B)` of the direct sum.
    pub fn matrices(&self) -> (ExactMatrix, ExactMatrix) {
        let pairs: Vec<_> = self.blocks.iter().map(BBlock::matrices).collect();
        let firsts: Vec<_> = pairs.iter().map(|p| &p.0).collect();
        let seconds: Vec<_> = pairs.iter().map(|p| &p.1).collect();
        (ExactMatrix::direct_sum(&firsts), ExactMatrix::direct_sum(&seconds))
    }
}

impl fmt::Display for BShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pencil::minimal_indices;
    use crate::state::MatrixPair;

    #[test]
    fn small_blocks_match_the_known_matrices() {
        let (lam, b3) = BBlock::parse("cr").unwrap().matrices();
        assert_eq!(lam, ExactMatrix::from_ints(&[[1, 0, 0], [0, 1, 0], [0, 0, 0]]));
        assert_eq!(b3, ExactMatrix::from_ints(&[[0, 0, 0], [0, 0, 1], [1, 0, 0]]));
        let b4c = BBlock::parse("crc").unwrap().matrices().1;
        assert_eq!(b4c, ExactMatrix::from_ints(&[[0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0]]));
        let b4r = BBlock::parse("crr").unwrap().matrices().1;
        assert_eq!(b4r, ExactMatrix::from_ints(&[[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0]]));
    }

    #[test]
    fn every_pattern_has_the_counted_minimal_indices() {
        for len in 2..=6usize {
            for bits in 0..(1u32 << len) {
                let pattern: Vec<_> = (0..len).map(|k| if bits >> k & 1 == 1 { Extension::Row } else { Extension::Column }).collect();
                let Ok(block) = BBlock::from_pattern(pattern) else { continue };
                let (lam, b) = block.matrices();
                assert_eq!(b.rank(), block.size() - 1, "{block}");
                let (eps, eta) = block.indices();
                let m = MatrixPair::new(lam, b).unwrap();
                assert_eq!(minimal_indices(&m), (vec![eps], vec![eta]), "{block}");
            }
        }
    }

    #[test]
    fn shapes_pair_indices_largest_first() {
        let s = BShape::from_indices(&[1, 2], &[1, 1]).unwrap();
        assert_eq!(s.to_string(), "B4[crc]+B3[cr]");
        assert_eq!((s.size(), s.deficiency()), (7, 2));
        assert!(BShape::from_indices(&[0], &[2]).is_err());
        assert!(BBlock::parse("cc").is_err());
    }
}
