//! Barcodes: finite multisets of intervals.

use crate::error::{Error, Result};
use crate::interval::IntervalSet;

/// The barcode of an interval-decomposable module, `⊕ C(I)` over its bars.
///
/// Bars are identified by their index, so repeated supports are distinct
/// summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Barcode {
    dim: usize,
    bars: Vec<IntervalSet>,
}

impl Barcode {
    pub fn new(dim: usize, bars: Vec<IntervalSet>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if let Some(bad) = bars.iter().find(|b| b.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(Barcode { dim, bars })
    }

    /// The zero module.
    pub fn empty(dim: usize) -> Self {
        Barcode { dim, bars: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn bars(&self) -> &[IntervalSet] {
        &self.bars
    }

    pub fn iter(&self) -> std::slice::Iter<'_, IntervalSet> {
        self.bars.iter()
    }

    /// `B(M(t)) = { I(t) : I ∈ B(M) }`.
    pub fn shift(&self, t: i64) -> Result<Self> {
        Ok(Barcode {
            dim: self.dim,
            bars: self.bars.iter().map(|b| b.shift(t)).collect::<Result<_>>()?,
        })
    }

    pub(crate) fn check_same_dim(&self, other: &Barcode) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for Barcode {
    type Output = IntervalSet;

    fn index(&self, i: usize) -> &IntervalSet {
        &self.bars[i]
    }
}

impl<'a> IntoIterator for &'a Barcode {
    type Item = &'a IntervalSet;
    type IntoIter = std::slice::Iter<'a, IntervalSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.bars.iter()
    }
}
