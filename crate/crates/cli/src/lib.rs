//! Library half of the `pmod` command: the barcode file format and the SVG
//! renderer.

pub mod format;
pub mod render;

pub use format::{BarcodeFile, FormatError, IntervalSpec, ModuleSpec};
pub use render::render_svg;
