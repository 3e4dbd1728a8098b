//! Interval-decomposable persistence modules on `Z^n` with the diagonal
//! flow.
//!
//! A module is given by its [`Barcode`], a list of [`IntervalSet`]s. The
//! crate decides morphism existence between interval modules
//! ([`morphism`]), interleavings of intervals and of whole barcodes
//! ([`interleaving`]), and the Hausdorff and bottleneck distances between
//! barcodes ([`distance`]). [`construct`] builds the standard examples and
//! random inputs.
//!
//! ```
//! use pmod::distance::hausdorff;
//! use pmod::interleaving::pair_distance;
//! use pmod::{Barcode, GridPoint, IntervalSet};
//!
//! let a = IntervalSet::rect(&GridPoint::from([0, 0]), &GridPoint::from([3, 3]))?;
//! let b = a.shift(-1)?;
//! assert_eq!(pair_distance(Some(&a), Some(&b))?, 1);
//!
//! let m = Barcode::new(2, vec![a])?;
//! let n = Barcode::new(2, vec![b])?;
//! assert_eq!(hausdorff(&m, &n)?, 1);
//! # Ok::<(), pmod::Error>(())
//! ```

pub mod barcode;
pub mod construct;
pub mod distance;
pub mod error;
pub mod field;
pub mod grid;
pub mod interleaving;
pub mod interval;
pub mod morphism;
mod pointset;
pub mod raster;

pub use barcode::Barcode;
pub use error::{Error, Result};
pub use field::{FieldChar, Scalar};
pub use grid::{order_box, Dimension, GridPoint};
pub use interval::{ConvexSubset, EmptyInterval, IntervalSet, PointSet};

// The guide's Rust snippets run as doctests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/grid.md")]
    mod grid {}
    #[doc = include_str!("../../../book/src/intervals.md")]
    mod intervals {}
    #[doc = include_str!("../../../book/src/morphisms.md")]
    mod morphisms {}
    #[doc = include_str!("../../../book/src/interleavings.md")]
    mod interleavings {}
    #[doc = include_str!("../../../book/src/distances.md")]
    mod distances {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
