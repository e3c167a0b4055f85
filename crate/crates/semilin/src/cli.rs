//! Command-line front end: JSON specs in, JSON reports and CSV grids out.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when a spec
//! parses but fails validation (the report is still emitted).

use crate::association::{self, MeasureTriple};
use crate::asymmetry::{self, Functional};
use crate::choquet::{self, DiscreteMeasure, PiecewiseQuadratic};
use crate::diagonal::{self, ClassReport, DiagonalSpec};
use crate::extremity::{self, ExtremityReport};
use crate::numerics::{fmt17, Tolerance};
use crate::semilinear::{ObjectClass, PositivityReport, SemilinearObject};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "semilin",
    version,
    about = "Semilinear copulas from diagonal sections: validation, surfaces, extremity, mixtures, association and asymmetry"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Common {
    /// Inline JSON spec, or @path to read it from a file
    #[arg(short, long)]
    spec: String,
    /// Output path; stdout when omitted
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Threshold under which an estimated measure counts as zero
    #[arg(long, default_value_t = 1e-3)]
    tol_measure: f64,
    /// Composite Simpson panel count
    #[arg(long, default_value_t = 2048)]
    panels: usize,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Class-membership report for a diagonal spec
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Extremity classification in every class the spec belongs to
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the semilinear object at one point
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        u: f64,
        #[arg(long)]
        v: f64,
    },
    /// CSV surface grid of C over the unit square
    Grid {
        #[command(flatten)]
        common: Common,
        /// Grid resolution (cells per axis)
        #[arg(long, default_value_t = 200)]
        n: usize,
    },
    /// Brute-force 2-increasingness scan over an n-by-n cell grid
    VolumeCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 200)]
        n: usize,
    },
    /// Spearman's rho, Gini's gamma and the footrule coefficient
    Measures {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = MeasuresMethod::Both)]
        method: MeasuresMethod,
    },
    /// Asymmetry maps (chi, varrho, xi) or their bounds, as CSV
    Asymmetry {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = AsymmetryKind::Chi)]
        functional: AsymmetryKind,
        #[arg(long, default_value_t = 200)]
        n: usize,
    },
    /// Build the piecewise-quadratic form of a discrete-measure mixture
    Mix {
        #[command(flatten)]
        common: Common,
    },
    /// Recover the discrete measure behind a piecewise-quadratic diagonal
    Recover {
        #[command(flatten)]
        common: Common,
    },
    /// Draw pairs from a copula-class object, CSV `u,v`
    Sample {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MeasuresMethod {
    Closed,
    Numeric,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AsymmetryKind {
    Chi,
    Varrho,
    Xi,
    Bounds,
}

/// Process entry point; forwards to `run_with_writer` on real stdout/stderr.
pub fn run<I>(args: I) -> i32
where
    I: IntoIterator<Item = String>,
{
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    run_with_writer(args, &mut stdout, &mut stderr)
}

/// Testable entry point: all output goes through the supplied writers.
pub fn run_with_writer<I, O, E>(args: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = String>,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders help and version through the error path
            let rendered = e.render();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{rendered}");
            return EXIT_OK;
        }
    };
    match dispatch(cli.cmd, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON input: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Spec(#[from] diagonal::SpecError),
    #[error(transparent)]
    Semilinear(#[from] crate::semilinear::SemilinearError),
    #[error(transparent)]
    Choquet(#[from] choquet::ChoquetError),
    #[error(transparent)]
    Extremity(#[from] extremity::ExtremityError),
    #[error(transparent)]
    Association(#[from] association::AssociationError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),
}

fn spec_text(spec: &str) -> Result<String, CliError> {
    if let Some(path) = spec.strip_prefix('@') {
        fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_string(),
            source,
        })
    } else {
        Ok(spec.to_string())
    }
}

fn parse_diagonal(spec: &str) -> Result<(DiagonalSpec, Value), CliError> {
    let text = spec_text(spec)?;
    let value: Value = serde_json::from_str(&text)?;
    let spec: DiagonalSpec = serde_json::from_value(value.clone())?;
    spec.check()?;
    Ok((spec, value))
}

fn tolerance_of(common: &Common) -> Result<Tolerance, CliError> {
    let tol = Tolerance {
        eps_measure: common.tol_measure,
        quad_n: common.panels,
        ..Default::default()
    };
    tol.check().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(tol)
}

/// Writes a JSON report to --out or stdout with a trailing newline.
fn emit_json<O: Write, T: Serialize>(
    common: &Common,
    out: &mut O,
    report: &T,
) -> Result<(), CliError> {
    let body = serde_json::to_string_pretty(report)?;
    match &common.out {
        Some(path) => fs::write(path, format!("{body}\n"))?,
        None => writeln!(out, "{body}")?,
    }
    Ok(())
}

/// Writes CSV to --out and prints the provenance report (which embeds the
/// input spec) to stdout; without --out the CSV itself goes to stdout.
fn emit_csv<O: Write, P: Serialize>(
    common: &Common,
    out: &mut O,
    csv: Vec<u8>,
    provenance: &P,
) -> Result<(), CliError> {
    match &common.out {
        Some(path) => {
            fs::write(path, csv)?;
            let body = serde_json::to_string_pretty(provenance)?;
            writeln!(out, "{body}")?;
        }
        None => out.write_all(&csv)?,
    }
    Ok(())
}

fn out_name(common: &Common) -> String {
    common
        .out
        .as_ref()
        .map_or_else(|| "-".to_string(), |p| p.display().to_string())
}

#[derive(Serialize)]
struct ValidateReport {
    spec: Value,
    report: ClassReport,
}

#[derive(Serialize)]
struct ClassifyReport {
    spec: Value,
    validation: ClassReport,
    extremity: Vec<ExtremityReport>,
}

#[derive(Serialize)]
struct EvalReport {
    spec: Value,
    u: f64,
    v: f64,
    value: f64,
    survival: f64,
}

#[derive(Serialize)]
struct VolumeCheckReport {
    spec: Value,
    #[serde(flatten)]
    report: PositivityReport,
}

#[derive(Serialize)]
struct MeasuresReport {
    spec: Value,
    method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<MeasureTriple>,
    #[serde(skip_serializing_if = "Option::is_none")]
    numeric: Option<MeasureTriple>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_abs_diff: Option<f64>,
}

#[derive(Serialize)]
struct MixReport {
    spec: Value,
    piecewise: PiecewiseQuadratic,
    diagonal_spec: DiagonalSpec,
}

#[derive(Serialize)]
struct RecoverReport {
    spec: Value,
    measure: DiscreteMeasure,
}

#[derive(Serialize)]
struct CsvProvenance {
    spec: Value,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    out: String,
}

fn dispatch<O: Write>(cmd: Cmd, out: &mut O) -> Result<i32, CliError> {
    match cmd {
        Cmd::Validate { common } => {
            let (spec, value) = parse_diagonal(&common.spec)?;
            let tol = tolerance_of(&common)?;
            let report = diagonal::validate(&spec, &tol)?;
            let vacuous = report.is_vacuous();
            emit_json(
                &common,
                out,
                &ValidateReport {
                    spec: value,
                    report,
                },
            )?;
            Ok(if vacuous { EXIT_VALIDATION } else { EXIT_OK })
        }
        Cmd::Classify { common } => {
            let (spec, value) = parse_diagonal(&common.spec)?;
            let tol = tolerance_of(&common)?;
            let validation = diagonal::validate(&spec, &tol)?;
            let mut reports = Vec::new();
            if validation.in_copula_class() {
                reports.push(extremity::classify_copula(&spec, &tol)?);
            }
            if validation.in_quasicopula_class() {
                reports.push(extremity::classify_quasicopula(&spec, &tol)?);
            }
            if validation.in_semicopula_class() {
                reports.push(extremity::classify_semicopula(&spec, &tol)?);
            }
            let vacuous = validation.is_vacuous();
            emit_json(
                &common,
                out,
                &ClassifyReport {
                    spec: value,
                    validation,
                    extremity: reports,
                },
            )?;
            Ok(if vacuous { EXIT_VALIDATION } else { EXIT_OK })
        }
        Cmd::Eval { common, u, v } => {
            if !(0.0..=1.0).contains(&u) || !(0.0..=1.0).contains(&v) {
                return Err(CliError::Usage(format!(
                    "evaluation point ({u}, {v}) outside the unit square"
                )));
            }
            let (spec, value) = parse_diagonal(&common.spec)?;
            let tol = tolerance_of(&common)?;
            let obj = SemilinearObject::new(spec, &tol)?;
            emit_json(
                &common,
                out,
                &EvalReport {
                    spec: value,
                    u,
                    v,
                    value: obj.eval(u, v),
                    survival: obj.survival(u, v),
                },
            )?;
            Ok(EXIT_OK)
        }
        Cmd::Grid { common, n } => {
            if n < 2 {
                return Err(CliError::Usage("grid needs n >= 2".into()));
            }
            let (spec, value) = parse_diagonal(&common.spec)?;
            let tol = tolerance_of(&common)?;
            let obj = SemilinearObject::new(spec, &tol)?;
            let mut csv = Vec::new();
            obj.surface_grid(n).write_csv(&mut csv)?;
            let prov = CsvProvenance {
                spec: value,
                kind: "surface".into(),
                n: Some(n),
                count: None,
                seed: None,
                out: out_name(&common),
            };
            emit_csv(&common, out, csv, &prov)?;
            Ok(EXIT_OK)
        }
        Cmd::VolumeCheck { common, n } => {
            if n < 2 {
                return Err(CliError::Usage("volume check needs n >= 2".into()));
            }
            let (spec, value) = parse_diagonal(&common.spec)?;
            let tol = tolerance_of(&common)?;
            let obj = SemilinearObject::new(spec, &tol)?;
            let report = obj.positivity_oracle(n);
            emit_json(
                &common,
                out,
                &VolumeCheckReport {
                    spec: value,
                    report,
                },
            )?;
            Ok(EXIT_OK)
        }
        Cmd::Measures { common, method } => {
            let (spec, value) = parse_diagonal(&common.spec)?;
            let tol = tolerance_of(&common)?;
            let closed_available = match &spec {
                DiagonalSpec::FamilyM { m } => Some(association::closed_form_extreme(*m)),
                DiagonalSpec::Mixture { measure } => {
                    Some(association::closed_form_mixture(measure))
                }
                _ => None,
            };
            let want_closed = matches!(method, MeasuresMethod::Closed | MeasuresMethod::Both);
            let want_numeric = matches!(method, MeasuresMethod::Numeric | MeasuresMethod::Both);
            if want_closed && closed_available.is_none() {
                return Err(CliError::Usage(
                    "closed forms exist only for the m-family and mixtures; use --method numeric"
                        .into(),
                ));
            }
            let numeric = if want_numeric {
                let obj = SemilinearObject::new(spec, &tol)?;
                Some(association::numeric_measures(&obj, &tol)?)
            } else {
                None
            };
            let closed_form = if want_closed { closed_available } else { None };
            let max_abs_diff = match (&closed_form, &numeric) {
                (Some(a), Some(b)) => Some(a.max_abs_diff(b)),
                _ => None,
            };
            let method = match method {
                MeasuresMethod::Closed => "closed_form",
                MeasuresMethod::Numeric => "numeric",
                MeasuresMethod::Both => "both",
            };
            emit_json(
                &common,
                out,
                &MeasuresReport {
                    spec: value,
                    method: method.into(),
                    closed_form,
                    numeric,
                    max_abs_diff,
                },
            )?;
            Ok(EXIT_OK)
        }
        Cmd::Asymmetry {
            common,
            functional,
            n,
        } => {
            if n < 2 {
                return Err(CliError::Usage("asymmetry map needs n >= 2".into()));
            }
            let (spec, value) = parse_diagonal(&common.spec)?;
            let tol = tolerance_of(&common)?;
            let mut csv = Vec::new();
            match functional {
                AsymmetryKind::Bounds => {
                    writeln!(csv, "u,v,lower,upper,radial_upper")?;
                    for i in 0..=n {
                        let u = i as f64 / n as f64;
                        for j in 0..=n {
                            let v = j as f64 / n as f64;
                            let b = asymmetry::bounds(u, v);
                            writeln!(
                                csv,
                                "{},{},{},{},{}",
                                fmt17(u),
                                fmt17(v),
                                fmt17(b.lower),
                                fmt17(b.upper),
                                fmt17(b.radial_upper)
                            )?;
                        }
                    }
                }
                picked => {
                    let obj = SemilinearObject::new(spec, &tol)?;
                    let f = match picked {
                        AsymmetryKind::Chi => Functional::Chi,
                        AsymmetryKind::Varrho => Functional::Varrho,
                        AsymmetryKind::Xi => Functional::Xi,
                        AsymmetryKind::Bounds => unreachable!(),
                    };
                    asymmetry::map_grid(&obj, f, n).write_csv(&mut csv)?;
                }
            }
            let kind = match functional {
                AsymmetryKind::Chi => "asymmetry_chi",
                AsymmetryKind::Varrho => "asymmetry_varrho",
                AsymmetryKind::Xi => "asymmetry_xi",
                AsymmetryKind::Bounds => "asymmetry_bounds",
            };
            let prov = CsvProvenance {
                spec: value,
                kind: kind.into(),
                n: Some(n),
                count: None,
                seed: None,
                out: out_name(&common),
            };
            emit_csv(&common, out, csv, &prov)?;
            Ok(EXIT_OK)
        }
        Cmd::Mix { common } => {
            let text = spec_text(&common.spec)?;
            let value: Value = serde_json::from_str(&text)?;
            let measure: DiscreteMeasure = serde_json::from_value(value.clone())?;
            let piecewise = choquet::to_piecewise(&measure);
            emit_json(
                &common,
                out,
                &MixReport {
                    spec: value,
                    piecewise,
                    diagonal_spec: DiagonalSpec::mixture(measure),
                },
            )?;
            Ok(EXIT_OK)
        }
        Cmd::Recover { common } => {
            let text = spec_text(&common.spec)?;
            let value: Value = serde_json::from_str(&text)?;
            let piecewise: PiecewiseQuadratic = serde_json::from_value(value.clone())?;
            let measure = choquet::recover_measure(&piecewise)?;
            emit_json(
                &common,
                out,
                &RecoverReport {
                    spec: value,
                    measure,
                },
            )?;
            Ok(EXIT_OK)
        }
        Cmd::Sample {
            common,
            count,
            seed,
        } => {
            let (spec, value) = parse_diagonal(&common.spec)?;
            let tol = tolerance_of(&common)?;
            let obj = SemilinearObject::new(spec, &tol)?;
            if obj.class() != ObjectClass::Copula {
                return Err(CliError::Usage("sampling needs a copula-class spec".into()));
            }
            let pairs = obj.sample(count, seed)?;
            let mut csv = Vec::new();
            writeln!(csv, "u,v")?;
            for (u, v) in &pairs {
                writeln!(csv, "{},{}", fmt17(*u), fmt17(*v))?;
            }
            let prov = CsvProvenance {
                spec: value,
                kind: "sample".into(),
                n: None,
                count: Some(count),
                seed: Some(seed),
                out: out_name(&common),
            };
            emit_csv(&common, out, csv, &prov)?;
            Ok(EXIT_OK)
        }
    }
}
