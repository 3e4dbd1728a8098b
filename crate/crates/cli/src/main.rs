use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use pmod::construct::{instability_instance, tightness_instance};
use pmod::distance::{bottleneck, hausdorff, verify_stability, InterleavingBound, StabilityReport, Verdict};
use pmod::interleaving::{oracle_interleaving_exists, oracle_module_distance, DEFAULT_BUDGET};
use pmod::interval::{flow_closure_violation, intersection_closure_violation};
use pmod::morphism::MorphismMatrix;
use pmod::{Barcode, FieldChar, IntervalSet};
use pmod_cli::format::{load_module, FormatError};
use pmod_cli::{render_svg, BarcodeFile, ModuleSpec};

const OK: u8 = 0;
const INVALID: u8 = 1;
const INCONCLUSIVE: u8 = 2;
const VIOLATION: u8 = 3;

/// Interleavings and barcode distances for interval-decomposable modules
/// on the integer grid.
///
/// Flow times are integers. To model a fractional epsilon, refine the grid:
/// a distance of d at scale s stands for d/s in the original units.
///
/// Exit codes: 0 success, 1 invalid input, 2 inconclusive, 3 stability
/// violation. PMOD_THREADS caps the worker threads.
#[derive(Parser)]
#[command(name = "pmod", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every interval and the intersection-closure of each module.
    Check { file: PathBuf },
    /// Distance between two modules, given as file.json#name.
    Dist {
        #[arg(long, value_enum)]
        metric: Metric,
        a: String,
        b: String,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Compare d_H against 2 d_I for two modules.
    VerifyStability {
        a: String,
        b: String,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Write a named example to a barcode file and report its distances.
    Example {
        #[command(subcommand)]
        which: Example,
        #[arg(long, short, global = true)]
        out: Option<PathBuf>,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Draw the intervals of a 2-D barcode file as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        /// Only this module.
        #[arg(long)]
        module: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    Interleaving,
    Hausdorff,
    Bottleneck,
}

#[derive(clap::Args)]
struct OracleArgs {
    /// Prime field characteristic for the interleaving oracle.
    #[arg(long, default_value_t = 2, global = true)]
    field: u32,
    /// Maximum number of unknowns the oracle may enumerate over.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    budget: usize,
}

#[derive(Subcommand)]
enum Example {
    /// Hook K against its two legs, with arm length a.
    Instability {
        #[arg(long)]
        a: u64,
    },
    /// Square and truncated wedge, delta as p/q.
    Tightness {
        #[arg(long)]
        delta: Rational64,
        #[arg(long)]
        scale: u64,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] pmod::Error),
    #[error(transparent)]
    Render(#[from] pmod_cli::render::NotPlanar),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("--out is required")]
    NoOutput,
}

type Outcome = Result<u8, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INVALID } else { OK });
        }
    };
    if let Some(n) = std::env::var("PMOD_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let outcome = match cli.command {
        Command::Check { file } => check(&file),
        Command::Dist { metric, a, b, oracle } => dist(metric, &a, &b, &oracle),
        Command::VerifyStability { a, b, oracle } => stability(&a, &b, &oracle),
        Command::Example { which, out, oracle } => example(which, out.as_deref(), &oracle),
        Command::Render { file, svg, module } => render(&file, &svg, module.as_deref()),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INVALID)
        }
    }
}

fn check(path: &Path) -> Outcome {
    let file = BarcodeFile::read(path)?;
    let mut bars = 0;
    for module in &file.modules {
        let intervals = match module.intervals(file.dim) {
            Ok(v) => v,
            Err(e) => {
                println!("FAIL {e}");
                return Ok(INVALID);
            }
        };
        if let Some(v) = intersection_closure_violation(&intervals)? {
            println!(
                "FAIL module {}, intervals {} and {}: intersection has {} components",
                module.name, v.first, v.second, v.components
            );
            return Ok(INVALID);
        }
        bars += intervals.len();
    }
    println!("ok: {} modules, {bars} intervals, dim {}", file.modules.len(), file.dim);
    Ok(OK)
}

fn load_pair(a: &str, b: &str) -> Result<(Barcode, Barcode, u64), CliError> {
    let (m, sa) = load_module(a)?;
    let (n, sb) = load_module(b)?;
    let mut scales: Vec<u64> = sa.into_iter().chain(sb).collect();
    scales.sort_unstable();
    scales.dedup();
    Ok((m, n, if scales.len() == 1 { scales[0] } else { 1 }))
}

fn dist(metric: Metric, a: &str, b: &str, oracle: &OracleArgs) -> Outcome {
    let (m, n, scale) = load_pair(a, b)?;
    let field = FieldChar::new(oracle.field)?;
    match metric {
        Metric::Hausdorff => println!("hausdorff {} (grid units, scale {scale})", hausdorff(&m, &n)?),
        Metric::Bottleneck => println!("bottleneck {} (grid units, scale {scale})", bottleneck(&m, &n)?),
        Metric::Interleaving => match oracle_module_distance(&m, &n, field, oracle.budget) {
            Ok(d) => {
                println!("interleaving {d} (grid units, scale {scale})");
                if let Some(w) = oracle_interleaving_exists(&m, &n, d, field, oracle.budget)? {
                    print_matrix("f", &w.f);
                    print_matrix("g", &w.g);
                }
            }
            Err(pmod::Error::BudgetExceeded { needed, budget }) => {
                let r = verify_stability(&m, &n, field, oracle.budget)?;
                let InterleavingBound::Bracket { lower, upper } = r.interleaving else {
                    unreachable!("the oracle was over budget")
                };
                println!("interleaving in [{lower}, {upper}] (grid units, scale {scale})");
                println!("oracle needs {needed} unknowns, budget {budget}");
                return Ok(INCONCLUSIVE);
            }
            Err(e) => return Err(e.into()),
        },
    }
    Ok(OK)
}

fn print_matrix(name: &str, m: &MorphismMatrix) {
    let entries: Vec<String> = m
        .entries()
        .map(|((i, j), f)| {
            let w: Vec<String> = f.weights().iter().map(u8::to_string).collect();
            format!("({i},{j})={}", w.join("/"))
        })
        .collect();
    println!(
        "  {name}: {}",
        if entries.is_empty() {
            "0".into()
        } else {
            entries.join(" ")
        }
    );
}

fn print_report(m: &Barcode, n: &Barcode, r: &StabilityReport, scale: u64) -> Result<u8, CliError> {
    println!("d_H {} (grid units, scale {scale})", r.hausdorff);
    match r.interleaving {
        InterleavingBound::Exact(d) => println!("d_I {d}"),
        InterleavingBound::Bracket { lower, upper } => println!("d_I in [{lower}, {upper}]"),
    }
    match r.ratio() {
        Some(x) => println!("ratio {x:.3}"),
        None => println!("ratio n/a"),
    }
    println!("{}", r.verdict);
    if !r.flow_closed {
        let bars: Vec<IntervalSet> = m.iter().chain(n.iter()).cloned().collect();
        if let Some(v) = flow_closure_violation(&bars)? {
            let name = |k: usize| {
                if k < m.len() {
                    format!("a[{k}]")
                } else {
                    format!("b[{}]", k - m.len())
                }
            };
            println!(
                "note: {} meets {} shifted by {} in {} components, so the bars are not flow-closed",
                name(v.first),
                name(v.second),
                v.shift,
                v.components
            );
        }
    }
    Ok(match r.verdict {
        Verdict::Pass => OK,
        Verdict::Inconclusive => INCONCLUSIVE,
        Verdict::Fail => VIOLATION,
        Verdict::NotClosed => INVALID,
    })
}

fn stability(a: &str, b: &str, oracle: &OracleArgs) -> Outcome {
    let (m, n, scale) = load_pair(a, b)?;
    let r = verify_stability(&m, &n, FieldChar::new(oracle.field)?, oracle.budget)?;
    print_report(&m, &n, &r, scale)
}

fn example(which: Example, out: Option<&Path>, oracle: &OracleArgs) -> Outcome {
    let out = out.ok_or(CliError::NoOutput)?;
    let ((m, n), scale) = match which {
        Example::Instability { a } => (instability_instance(a)?, 1),
        Example::Tightness { delta, scale } => (tightness_instance(delta, scale)?, scale),
    };
    let mut file = BarcodeFile::new(
        2,
        vec![ModuleSpec::from_barcode("M", &m), ModuleSpec::from_barcode("N", &n)],
    );
    file.scale = Some(scale);
    file.write(out)?;
    println!("wrote {}", out.display());
    println!("d_B {}", bottleneck(&m, &n)?);
    let r = verify_stability(&m, &n, FieldChar::new(oracle.field)?, oracle.budget)?;
    // the instability example exists to break the bound
    match print_report(&m, &n, &r, scale)? {
        INVALID => Ok(OK),
        code => Ok(code),
    }
}

fn render(path: &Path, svg: &Path, only: Option<&str>) -> Outcome {
    let file = BarcodeFile::read(path)?;
    let mut layers = Vec::new();
    for module in &file.modules {
        if only.is_some_and(|n| n != module.name) {
            continue;
        }
        for (k, i) in module.intervals(file.dim)?.into_iter().enumerate() {
            layers.push((format!("{}[{k}]", module.name), i));
        }
    }
    if file.dim != 2 {
        return Err(pmod_cli::render::NotPlanar(file.dim).into());
    }
    let text = render_svg(&layers)?;
    std::fs::write(svg, text).map_err(|e| CliError::Io(svg.display().to_string(), e))?;
    println!("wrote {} ({} intervals)", svg.display(), layers.len());
    Ok(OK)
}
