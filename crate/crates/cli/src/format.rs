//! The barcode file format.
//!
//! A file is a JSON object with a version, an ambient dimension and a list
//! of named modules. Each module lists its bars as interval specs:
//!
//! ```json
//! {
//!   "version": 1,
//!   "dim": 2,
//!   "modules": [
//!     { "name": "M", "intervals": [
//!       { "rect": [[0, 0], [3, 2]] },
//!       { "points": [[5, 5], [5, 6]] },
//!       { "upperset": { "generators": [[0, 2], [2, 0]], "window": [[0, 0], [4, 4]] } },
//!       { "polygon": { "vertices": [[[0, 1], [0, 1]], [[3, 2], [0, 1]], [[0, 1], [3, 2]]], "scale": 4 } }
//!     ] }
//!   ]
//! }
//! ```
//!
//! Polygon coordinates are `[numerator, denominator]` pairs. An optional
//! top-level `"scale"` records the grid resolution.

use std::path::Path;

use num_rational::Rational64;
use pmod::raster::{rasterize_convex_polygon, RationalPoint};
use pmod::{Barcode, GridPoint, IntervalSet, PointSet};
use serde::{Deserialize, Serialize};

pub const VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed barcode file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported file version {0} (expected {VERSION})")]
    Version(u32),
    #[error("module {module}, interval {index}: {source}")]
    Interval {
        module: String,
        index: usize,
        #[source]
        source: Box<pmod::Error>,
    },
    #[error("module {module}, interval {index}: point {point:?} has {found} coordinates, expected {dim}")]
    Dimension {
        module: String,
        index: usize,
        point: Vec<i64>,
        found: usize,
        dim: usize,
    },
    #[error("no module named {0:?}")]
    NoSuchModule(String),
    #[error("{0} holds {1} modules; pick one with file#name")]
    Ambiguous(String, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarcodeFile {
    pub version: u32,
    pub dim: usize,
    /// Grid resolution the file was drawn at, echoed with distances.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<u64>,
    pub modules: Vec<ModuleSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub name: String,
    pub intervals: Vec<IntervalSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum IntervalSpec {
    Points(Vec<Vec<i64>>),
    Rect([Vec<i64>; 2]),
    Upperset(GeneratedSpec),
    Downset(GeneratedSpec),
    Polygon(PolygonSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratedSpec {
    pub generators: Vec<Vec<i64>>,
    pub window: [Vec<i64>; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonSpec {
    pub vertices: Vec<[[i64; 2]; 2]>,
    pub scale: u64,
}

impl IntervalSpec {
    /// A `rect` spec when the interval fills its bounding box, `points`
    /// otherwise.
    pub fn from_interval(i: &IntervalSet) -> Self {
        let (lo, hi) = (i.lo().coords().to_vec(), i.hi().coords().to_vec());
        let volume: u128 = lo.iter().zip(&hi).map(|(a, b)| (b - a + 1) as u128).product();
        if volume == i.len() as u128 {
            IntervalSpec::Rect([lo, hi])
        } else {
            IntervalSpec::Points(i.iter().map(|p| p.coords().to_vec()).collect())
        }
    }

    fn coordinate_lists(&self) -> Vec<&Vec<i64>> {
        match self {
            IntervalSpec::Points(p) => p.iter().collect(),
            IntervalSpec::Rect(r) => r.iter().collect(),
            IntervalSpec::Upperset(g) | IntervalSpec::Downset(g) => g.generators.iter().chain(&g.window).collect(),
            IntervalSpec::Polygon(_) => Vec::new(),
        }
    }

    /// Materializes the spec, validating it as an interval.
    pub fn to_interval(&self) -> pmod::Result<IntervalSet> {
        let gp = |v: &Vec<i64>| GridPoint::new(v.iter().copied());
        let gps = |v: &[Vec<i64>]| v.iter().map(gp).collect::<Vec<_>>();
        match self {
            IntervalSpec::Points(p) => IntervalSet::new(gps(p)),
            IntervalSpec::Rect([lo, hi]) => IntervalSet::rect(&gp(lo), &gp(hi)),
            IntervalSpec::Upperset(g) => {
                IntervalSet::upperset_in_window(&gps(&g.generators), &gp(&g.window[0]), &gp(&g.window[1]))
            }
            IntervalSpec::Downset(g) => {
                IntervalSet::downset_in_window(&gps(&g.generators), &gp(&g.window[0]), &gp(&g.window[1]))
            }
            IntervalSpec::Polygon(p) => {
                let mut vertices: Vec<RationalPoint> = Vec::with_capacity(p.vertices.len());
                for [x, y] in &p.vertices {
                    vertices.push([rational(*x)?, rational(*y)?]);
                }
                rasterize_convex_polygon(&vertices, p.scale)
            }
        }
    }
}

fn rational([num, den]: [i64; 2]) -> pmod::Result<Rational64> {
    if den == 0 {
        return Err(pmod::Error::InvalidPolygon("zero denominator".into()));
    }
    Ok(Rational64::new(num, den))
}

impl ModuleSpec {
    pub fn from_barcode(name: &str, b: &Barcode) -> Self {
        ModuleSpec {
            name: name.to_string(),
            intervals: b.iter().map(IntervalSpec::from_interval).collect(),
        }
    }

    /// Every bar, materialized and checked against `dim`.
    pub fn intervals(&self, dim: usize) -> Result<Vec<IntervalSet>, FormatError> {
        self.intervals
            .iter()
            .enumerate()
            .map(|(index, spec)| {
                let polygon_dim = matches!(spec, IntervalSpec::Polygon(_)).then_some(2);
                for v in spec.coordinate_lists() {
                    if v.len() != dim {
                        return Err(FormatError::Dimension {
                            module: self.name.clone(),
                            index,
                            point: v.clone(),
                            found: v.len(),
                            dim,
                        });
                    }
                }
                if let Some(found) = polygon_dim.filter(|d| *d != dim) {
                    return Err(FormatError::Dimension {
                        module: self.name.clone(),
                        index,
                        point: Vec::new(),
                        found,
                        dim,
                    });
                }
                spec.to_interval().map_err(|source| FormatError::Interval {
                    module: self.name.clone(),
                    index,
                    source: Box::new(source),
                })
            })
            .collect()
    }

    pub fn barcode(&self, dim: usize) -> Result<Barcode, FormatError> {
        let bars = self.intervals(dim)?;
        Barcode::new(dim, bars).map_err(|source| FormatError::Interval {
            module: self.name.clone(),
            index: 0,
            source: Box::new(source),
        })
    }

    /// Polygon scales used in this module, sorted and deduplicated.
    pub fn scales(&self) -> Vec<u64> {
        let mut s: Vec<u64> = self
            .intervals
            .iter()
            .filter_map(|i| match i {
                IntervalSpec::Polygon(p) => Some(p.scale),
                _ => None,
            })
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

impl BarcodeFile {
    pub fn new(dim: usize, modules: Vec<ModuleSpec>) -> Self {
        BarcodeFile {
            version: VERSION,
            dim,
            scale: None,
            modules,
        }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let file: BarcodeFile = serde_json::from_str(text)?;
        if file.version != VERSION {
            return Err(FormatError::Version(file.version));
        }
        Ok(file)
    }

    /// JSON with one interval spec per line.
    pub fn print(&self) -> String {
        let mut s = format!("{{\n  \"version\": {},\n  \"dim\": {},\n", self.version, self.dim);
        if let Some(scale) = self.scale {
            s.push_str(&format!("  \"scale\": {scale},\n"));
        }
        s.push_str("  \"modules\": [");
        for (k, m) in self.modules.iter().enumerate() {
            s.push_str(if k == 0 { "\n" } else { ",\n" });
            s.push_str(&format!(
                "    {{\n      \"name\": {},\n      \"intervals\": [",
                json(&m.name)
            ));
            for (j, i) in m.intervals.iter().enumerate() {
                s.push_str(if j == 0 { "\n        " } else { ",\n        " });
                s.push_str(&json(i));
            }
            s.push_str(if m.intervals.is_empty() {
                "]\n    }"
            } else {
                "\n      ]\n    }"
            });
        }
        s.push_str(if self.modules.is_empty() {
            "]\n}\n"
        } else {
            "\n  ]\n}\n"
        });
        s
    }

    pub fn read(path: &Path) -> Result<Self, FormatError> {
        let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn write(&self, path: &Path) -> Result<(), FormatError> {
        std::fs::write(path, self.print()).map_err(|source| FormatError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    /// The module called `name`, or the only module when `name` is `None`.
    pub fn module(&self, name: Option<&str>, label: &str) -> Result<&ModuleSpec, FormatError> {
        match name {
            Some(n) => self
                .modules
                .iter()
                .find(|m| m.name == n)
                .ok_or_else(|| FormatError::NoSuchModule(n.to_string())),
            None if self.modules.len() == 1 => Ok(&self.modules[0]),
            None => Err(FormatError::Ambiguous(label.to_string(), self.modules.len())),
        }
    }
}

/// Splits `file.json#name` into path and module name.
pub fn split_reference(reference: &str) -> (&str, Option<&str>) {
    match reference.rsplit_once('#') {
        Some((path, name)) => (path, Some(name)),
        None => (reference, None),
    }
}

/// Reads the module a `file#name` reference points to, with the file's
/// scale, or else the scales of its polygons.
pub fn load_module(reference: &str) -> Result<(Barcode, Vec<u64>), FormatError> {
    let (path, name) = split_reference(reference);
    let file = BarcodeFile::read(Path::new(path))?;
    let module = file.module(name, path)?;
    let scales = match file.scale {
        Some(s) => vec![s],
        None => module.scales(),
    };
    Ok((module.barcode(file.dim)?, scales))
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("barcode files always serialize")
}
