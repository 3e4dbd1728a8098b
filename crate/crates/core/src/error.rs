use thiserror::Error;

use crate::grid::GridPoint;

/// Errors produced by the grid, interval, morphism and distance routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("{low} is not below {high}")]
    NotComparable { low: GridPoint, high: GridPoint },

    #[error("coordinate overflow")]
    Overflow,

    #[error("not poset-convex: {low} <= {missing} <= {high} but {missing} is missing")]
    NotConvex {
        low: Box<GridPoint>,
        high: Box<GridPoint>,
        missing: Box<GridPoint>,
    },

    #[error("not poset-connected: {components} components")]
    NotConnected { components: usize },

    #[error("empty point set")]
    Empty,

    #[error("intersection has {components} components")]
    MultiComponent { components: usize },

    #[error("set is not a connected component of the intersection")]
    NotAComponent,

    #[error("unsupported field characteristic {0} (expected a prime <= 7)")]
    InvalidField(u32),

    #[error("scalar {value} is not an element of F_{p}")]
    InvalidScalar { value: u32, p: u32 },

    #[error("nonzero scalar on a component that is not valid")]
    InvalidMorphism,

    #[error("oracle needs {needed} unknowns but the budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },

    #[error("barcodes do not match")]
    BarcodeMismatch,

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
