//! The `nclab` command line.
//!
//! JSON goes to stdout (or `--output`), a one-line summary to stderr.
//! Exit status: 0 on success, 1 for failed checks and unreadable input,
//! 2 for usage errors, unknown scenarios and out-of-range requests.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::gns::RANK_TOL;
use crate::io::{self, MeasureFile, QuadReport, SeriesFile};
use crate::linalg::{self, CMatrix, C64};
use crate::measures::{gram, psd_test, NcFunctional, PositiveNCMeasure, PSD_TOL};
use crate::scenarios::{flatten_matrix, run_scenario, ScenarioParams, SCENARIOS};
use crate::transforms::{cayley, clark_measure, herglotz_series, inverse_cayley, random_strict_point, series_eval, MatrixPoint};
use crate::decomposition::lebesgue_parts_on_example;

#[derive(Parser, Debug)]
#[command(name = "nclab", version, about = "Moment tables, GNS spaces and free power series for NC measures")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct OutputArg {
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gram matrix eigenvalues and numerical rank of a measure file.
    Gram {
        file: PathBuf,
        /// Truncation depth N (words of length <= N); defaults to max_len / 2.
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value_t = RANK_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Run a named scenario and emit its report.
    Scenario {
        name: Option<String>,
        #[arg(long = "scenario")]
        scenario: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// GNS depth N; moment tables are built to length 2N.
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        /// Degree cap M of free series.
        #[arg(long, default_value_t = 8)]
        cap: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Include wall time in the report (breaks byte-identical output).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Herglotz series of a positive measure file.
    Herglotz {
        file: PathBuf,
        /// Degree cap; defaults to the measure's max_len.
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Cayley transform of a series file, or its inverse.
    Cayley {
        file: PathBuf,
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Clark measure of a Schur-class series file.
    Clark {
        file: PathBuf,
        /// Gram depth N; moments are produced to length 2N. Defaults to cap / 2.
        #[arg(long)]
        max_len: Option<usize>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Evaluate a series file at a matrix point.
    Eval {
        file: PathBuf,
        /// Point file: {"z": [[[re, im], ...], ...]}, one row-major matrix per letter.
        #[arg(long, conflicts_with = "random")]
        point: Option<PathBuf>,
        /// Sample a random strict point of this matrix size.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0.5)]
        radius: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Validate a Wittstock quad file and report its residual.
    Quad {
        file: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Write a built-in measure as a measure file.
    Export {
        #[arg(value_enum)]
        measure: Builtin,
        /// Longest moment word.
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[command(flatten)]
        out: OutputArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Builtin {
    Lebesgue,
    Xi,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::OutOfRange { .. }
        | Error::DepthExceeded { .. }
        | Error::UnknownScenario(_)
        | Error::InvalidArgument(_)
        | Error::InvalidLetter { .. }
        | Error::AlphabetMismatch { .. } => 2,
        _ => 1,
    }
}

fn emit<T: Serialize>(value: &T, out: &OutputArg) -> Result<()> {
    match &out.output {
        Some(path) => io::write_json(value, path),
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{}", io::to_json(value)) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => Ok(other?),
            }
        }
    }
}

#[derive(Serialize)]
struct GramReport {
    depth: usize,
    words: usize,
    rank: usize,
    gram_min_eig: f64,
    positive: bool,
    eigenvalues: Vec<f64>,
}

fn cmd_gram(file: &Path, depth: Option<usize>, tol: f64) -> Result<GramReport> {
    let measure = io::read_measure(file)?.to_complex();
    let depth = depth.unwrap_or(measure.max_len() / 2);
    let g = gram(&measure, depth)?;
    let eigenvalues = linalg::eigenvalues(&g);
    let norm = eigenvalues.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let cutoff = tol * norm.max(1.0);
    let positivity = psd_test(&g, PSD_TOL);
    Ok(GramReport {
        depth,
        words: g.nrows(),
        rank: eigenvalues.iter().filter(|&&v| v > cutoff).count(),
        gram_min_eig: positivity.min_eig,
        positive: positivity.positive,
        eigenvalues,
    })
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct PointFile {
    z: Vec<Vec<Vec<[f64; 2]>>>,
}

fn read_point(path: &Path) -> Result<MatrixPoint> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let file: PointFile = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let mut mats = Vec::with_capacity(file.z.len());
    for rows in &file.z {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(format!("{}: matrices must be square", path.display())));
        }
        mats.push(CMatrix::from_fn(n, n, |i, j| C64::new(rows[i][j][0], rows[i][j][1])));
    }
    MatrixPoint::new(mats)
}

fn run_command(command: Command) -> Result<i32> {
    match command {
        Command::Gram { file, max_len, tol, out } => {
            let report = cmd_gram(&file, max_len, tol)?;
            eprintln!("gram: depth {}, rank {} of {}, min eig {:e}", report.depth, report.rank, report.words, report.gram_min_eig);
            emit(&report, &out)?;
            Ok(0)
        }
        Command::Scenario { name, scenario, seed, max_len, cap, tol, dim, timing, out } => {
            let name = match (name, scenario) {
                (Some(a), Some(b)) if a != b => {
                    return Err(Error::InvalidArgument(format!("scenario given twice: {a} and {b}")))
                }
                (Some(a), _) | (None, Some(a)) => a,
                (None, None) => {
                    return Err(Error::InvalidArgument(format!("name a scenario: {}", SCENARIOS.join(", "))))
                }
            };
            let params = ScenarioParams { dim, depth: max_len, cap, tol, seed };
            let start = Instant::now();
            let mut report = run_scenario(&name, &params)?;
            if timing {
                report.wall_time_s = Some(start.elapsed().as_secs_f64());
            }
            let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
            if failed.is_empty() {
                eprintln!("{name}: all {} checks passed", report.checks.len());
            } else {
                eprintln!("{name}: {} of {} checks failed: {}", failed.len(), report.checks.len(), failed.join(", "));
            }
            emit(&report, &out)?;
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Herglotz { file, cap, out } => {
            let measure = io::read_measure(&file)?;
            let mu = measure.positive()?;
            let h = herglotz_series(mu, cap.unwrap_or(mu.max_len()))?;
            eprintln!("herglotz: cap {}, {} nonzero coefficients", h.cap(), h.nonzero_terms(1e-15).len());
            emit(&SeriesFile::from_series(&h), &out)?;
            Ok(0)
        }
        Command::Cayley { file, inverse, out } => {
            let s = io::read_series(&file)?;
            let t = if inverse { inverse_cayley(&s)? } else { cayley(&s)? };
            eprintln!("{}: cap {}", if inverse { "inverse cayley" } else { "cayley" }, t.cap());
            emit(&SeriesFile::from_series(&t), &out)?;
            Ok(0)
        }
        Command::Clark { file, max_len, out } => {
            let b = io::read_series(&file)?;
            let mu = clark_measure(&b, max_len.unwrap_or(b.cap() / 2))?;
            eprintln!("clark: moments to length {}, mass {}", mu.max_len(), mu.unit().re);
            emit(&MeasureFile::from_positive(&mu), &out)?;
            Ok(0)
        }
        Command::Eval { file, point, random, radius, seed, tol, out } => {
            let s = io::read_series(&file)?;
            let z = match (point, random) {
                (Some(path), _) => read_point(&path)?,
                (None, Some(n)) => random_strict_point(s.dim(), n, radius, seed)?,
                (None, None) => return Err(Error::InvalidArgument("give --point FILE or --random N".into())),
            };
            let v = series_eval(&s, &z, tol)?;
            eprintln!("eval: row norm {:.6}, tail bound {:e}", v.row_norm, v.tail_bound);
            emit(
                &json!({
                    "n": z.n,
                    "row_norm": v.row_norm,
                    "tail_bound": v.tail_bound,
                    "within_tolerance": v.within_tolerance,
                    "value": flatten_matrix(&v.value),
                }),
                &out,
            )?;
            Ok(if v.within_tolerance { 0 } else { 1 })
        }
        Command::Quad { file, out } => {
            let text = std::fs::read_to_string(&file).map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
            let q = io::parse_quad(&text, &file.display().to_string())?;
            let report = QuadReport::new(&q)?;
            let ac_known = lebesgue_parts_on_example(&q).is_ok();
            eprintln!("quad: residual {:e}, closed-form parts {}", report.reconstruction_residual, if ac_known { "known" } else { "unknown" });
            emit(&report, &out)?;
            Ok(0)
        }
        Command::Export { measure, max_len, dim, out } => {
            let mu = match measure {
                Builtin::Lebesgue => PositiveNCMeasure::lebesgue(dim, max_len),
                Builtin::Xi if dim == 2 => PositiveNCMeasure::dirac_xi(max_len),
                Builtin::Xi => return Err(Error::InvalidArgument("xi is defined for --dim 2".into())),
            };
            emit(&MeasureFile::from_positive(&mu), &out)?;
            Ok(0)
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run_command(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

pub fn main() -> i32 {
    env_logger::Builder::from_env(env_logger::Env::new().filter("NCLAB_LOG")).init();
    run(std::env::args_os())
}
