//! The `viviani` command-line interface.
//!
//! Exit codes: 0 success (and "is Viviani" for `check`), 1 "not Viviani" from
//! `check`, 2 malformed input, 3 dimension or precondition violations.

use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::duality::{fermat_to_viviani, viviani_to_fermat};
use crate::fermat::{geometric_median, MedianOptions, MedianStatus};
use crate::geometry::{VectorN, DEFAULT_VIVIANI_TOL};
use crate::io::{parse_document, render_svg, ConfigDocument, DocumentError};
use crate::polytope::{example5_tetrahedron, make_equiangular_polygon, PlatonicSolid};
use crate::rng::SplitMix64;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_VIVIANI: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "viviani",
    version,
    about = "Signed-distance sums of oriented hyperplanes and geometric medians"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report the defect and gradient of a hyperplane set and whether its
    /// signed-distance sum is constant
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_VIVIANI_TOL)]
        tol: f64,
    },
    /// Evaluate the signed-distance sum at a point
    Value {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Solve for the geometric median of a point set
    Median {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
    },
    /// Turn a point set and its Fermat point into a hyperplane set
    Dualize {
        file: PathBuf,
        /// Use this point instead of solving (it must pass the certificate)
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Project a point onto every plane and re-solve the median
    Project {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a document for one of the built-in families
    Generate {
        #[command(subcommand)]
        family: Family,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Evaluate the signed-distance sum at seeded pseudorandom points
    Sample {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampling box `lo,hi`, applied to every coordinate
        #[arg(long = "box", default_value = "-1,1", allow_hyphen_values = true)]
        bounds: String,
    },
    /// Draw a two-dimensional document as SVG
    Plot {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum Family {
    /// Equiangular polygon with the given side lengths
    Equiangular {
        #[arg(long, allow_hyphen_values = true)]
        sides: String,
    },
    /// Face planes of a Platonic solid with unit circumradius
    Platonic { solid: String },
    /// Tetrahedron with cancelling face normals, parameter 0 < t < pi
    Example5 {
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Precondition(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_BAD_INPUT,
            CliError::Precondition(_) => EXIT_PRECONDITION,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Precondition(m) => m,
        }
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        if e.is_malformed_input() {
            CliError::Input(e.to_string())
        } else {
            CliError::Precondition(e.to_string())
        }
    }
}

fn precondition(e: impl Display) -> CliError {
    CliError::Precondition(e.to_string())
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn line(&mut self, s: impl Display) -> Result<(), CliError> {
        writeln!(self.out, "{s}").map_err(|e| CliError::Input(format!("cannot write output: {e}")))
    }

    fn warn(&mut self, s: impl Display) {
        let _ = writeln!(self.err, "warning: {s}");
    }

    /// Writes `text` to `path`, or to stdout when no path is given.
    fn emit(&mut self, path: Option<&Path>, text: &str) -> Result<(), CliError> {
        match path {
            Some(p) => std::fs::write(p, text)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display()))),
            None => self
                .out
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Input(format!("cannot write output: {e}"))),
        }
    }

    fn load(&mut self, path: &Path) -> Result<ConfigDocument, CliError> {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        let parsed = parse_document(&bytes)
            .map_err(CliError::from)
            .map_err(|e| match e {
                CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
                other => other,
            })?;
        for w in parsed.warnings {
            self.warn(format!("{}: {w}", path.display()));
        }
        Ok(parsed.document)
    }
}

fn parse_list(text: &str, what: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::Input(format!("invalid {what} `{text}`")))
        })
        .collect()
}

fn parse_point(text: &str, dim: usize) -> Result<VectorN, CliError> {
    let coords = parse_list(text, "point")?;
    if coords.len() != dim {
        return Err(CliError::Precondition(format!(
            "point has {} coordinates, document dimension is {dim}",
            coords.len()
        )));
    }
    VectorN::new(coords).map_err(precondition)
}

fn positive(value: f64, name: &str) -> Result<f64, CliError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(CliError::Input(format!(
            "--{name} must be positive, got {value}"
        )))
    }
}

#[derive(Serialize)]
struct MedianReport {
    point: Vec<f64>,
    objective: f64,
    #[serde(flatten)]
    status: MedianStatus,
    residual: f64,
    iterations: usize,
}

fn execute(command: Command, io: &mut Io<'_>) -> Result<i32, CliError> {
    match command {
        Command::Check { file, tol } => {
            let tol = positive(tol, "tol")?;
            let set = io.load(&file)?.hyperplane_set()?;
            let defect = set.viviani_defect();
            let viviani = set.is_viviani_with_tol(tol);
            io.line(format!("hyperplanes: {}", set.len()))?;
            io.line(format!("dimension: {}", set.dim()))?;
            io.line(format!("defect: {defect:e}"))?;
            let gradient: Vec<String> = set
                .viviani_gradient()
                .coords()
                .iter()
                .map(|g| format!("{g:e}"))
                .collect();
            io.line(format!("gradient: [{}]", gradient.join(", ")))?;
            io.line(format!("viviani: {viviani} (tol {tol:e})"))?;
            Ok(if viviani { EXIT_OK } else { EXIT_NOT_VIVIANI })
        }
        Command::Value { file, point } => {
            let set = io.load(&file)?.hyperplane_set()?;
            let p = parse_point(&point, set.dim())?;
            io.line(set.viviani_value(&p).map_err(precondition)?)?;
            Ok(EXIT_OK)
        }
        Command::Median {
            file,
            tol,
            max_iter,
        } => {
            let tol = positive(tol, "tol")?;
            let points = io.load(&file)?.point_set()?;
            let r = geometric_median(&points, MedianOptions { tol, max_iter });
            let report = MedianReport {
                point: r.point.into_vec(),
                objective: r.objective,
                status: r.status,
                residual: r.residual,
                iterations: r.iterations,
            };
            io.line(serde_json::to_string_pretty(&report).expect("report serializes"))?;
            Ok(EXIT_OK)
        }
        Command::Dualize { file, at, out } => {
            let points = io.load(&file)?.point_set()?;
            let fermat = match at {
                Some(text) => parse_point(&text, points.dim())?,
                None => {
                    let r = geometric_median(&points, MedianOptions::default());
                    match r.status {
                        MedianStatus::InteriorOptimum => r.point,
                        MedianStatus::AnchorOptimum(i) => {
                            return Err(CliError::Precondition(format!(
                                "the Fermat point is input point {i}; no hyperplane set exists"
                            )))
                        }
                        MedianStatus::NonUniqueCollinear => {
                            return Err(CliError::Precondition(
                                "points are collinear; the Fermat point is not unique".into(),
                            ))
                        }
                    }
                }
            };
            let set = fermat_to_viviani(&points, &fermat).map_err(precondition)?;
            let doc = ConfigDocument::from_planes(&set)
                .with_metadata("source", "dualize")
                .with_metadata("fermat_point", fermat.to_string())
                .with_metadata("defect", format!("{:e}", set.viviani_defect()));
            io.emit(out.as_deref(), &doc.to_json())?;
            Ok(EXIT_OK)
        }
        Command::Project { file, point, out } => {
            let set = io.load(&file)?.hyperplane_set()?;
            let p = parse_point(&point, set.dim())?;
            let projections = viviani_to_fermat(&set, &p).map_err(precondition)?;
            let r = geometric_median(&projections, MedianOptions::default());
            let recovery = r.point.distance(&p);
            let status = match r.status {
                MedianStatus::InteriorOptimum => "InteriorOptimum".to_string(),
                MedianStatus::AnchorOptimum(i) => format!("AnchorOptimum({i})"),
                MedianStatus::NonUniqueCollinear => "NonUniqueCollinear".to_string(),
            };
            let doc = ConfigDocument::from_points(&projections)
                .with_metadata("source", "project")
                .with_metadata("point", p.to_string())
                .with_metadata("median", r.point.to_string())
                .with_metadata("median_status", status)
                .with_metadata("recovery_error", format!("{recovery:e}"));
            let _ = writeln!(io.err, "recovery error: {recovery:e}");
            io.emit(out.as_deref(), &doc.to_json())?;
            Ok(EXIT_OK)
        }
        Command::Generate { family, out } => {
            let doc = match family {
                Family::Equiangular { sides } => {
                    let sides = parse_list(&sides, "side lengths")?;
                    let polygon = make_equiangular_polygon(&sides).map_err(precondition)?;
                    ConfigDocument::from_polygon(&polygon).with_metadata("family", "equiangular")
                }
                Family::Platonic { solid } => {
                    let solid: PlatonicSolid =
                        solid.parse().map_err(|e| CliError::Input(format!("{e}")))?;
                    ConfigDocument::from_planes(&solid.hyperplanes())
                        .with_metadata("family", "platonic")
                        .with_metadata("solid", solid.name())
                }
                Family::Example5 { t } => {
                    let set = example5_tetrahedron(t).map_err(precondition)?;
                    ConfigDocument::from_planes(&set)
                        .with_metadata("family", "example5")
                        .with_metadata("t", t.to_string())
                }
            };
            io.emit(out.as_deref(), &doc.to_json())?;
            Ok(EXIT_OK)
        }
        Command::Sample {
            file,
            count,
            seed,
            bounds,
        } => {
            let range = parse_list(&bounds, "box")?;
            let [lo, hi] = range[..] else {
                return Err(CliError::Input(format!(
                    "--box expects `lo,hi`, got `{bounds}`"
                )));
            };
            if lo >= hi || lo.is_nan() {
                return Err(CliError::Input(format!(
                    "--box needs lo < hi, got `{bounds}`"
                )));
            }
            if count == 0 {
                return Err(CliError::Input("--count must be at least 1".into()));
            }
            let set = io.load(&file)?.hyperplane_set()?;
            let values = sample_values(&set, count, seed, lo, hi);
            let min = values.iter().copied().fold(f64::INFINITY, f64::min);
            let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            io.line(format!("count: {count}"))?;
            io.line(format!("min: {min}"))?;
            io.line(format!("max: {max}"))?;
            io.line(format!("spread: {:e}", max - min))?;
            Ok(EXIT_OK)
        }
        Command::Plot { file, out } => {
            let doc = io.load(&file)?;
            let svg = render_svg(&doc)?;
            io.emit(Some(&out), &svg)?;
            Ok(EXIT_OK)
        }
    }
}

/// Values of `v` at `count` points drawn uniformly from `[lo, hi]^n`. The
/// coordinates come from one SplitMix64 stream seeded with `seed`, point by
/// point and coordinate by coordinate.
pub fn sample_values(
    set: &crate::geometry::HyperplaneSet,
    count: usize,
    seed: u64,
    lo: f64,
    hi: f64,
) -> Vec<f64> {
    let mut rng = SplitMix64::new(seed);
    let dim = set.dim();
    (0..count)
        .map(|_| {
            let p = VectorN::from_vec_unchecked((0..dim).map(|_| rng.uniform(lo, hi)).collect());
            set.viviani_value(&p)
                .expect("sample has the set's dimension")
        })
        .collect()
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_BAD_INPUT
            } else {
                EXIT_OK
            };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let mut io = Io { out, err };
    match execute(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {}", e.message());
            e.code()
        }
    }
}
