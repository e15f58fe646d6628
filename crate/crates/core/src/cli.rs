//! Command-line driver: input handling, deterministic configuration, text
//! and JSON report rendering, and the exit-code contract (0 identity holds,
//! 1 verified failure, 2 input or validation error).

use crate::charclass::{verify_theorem, CurveReport};
use crate::chow::ChowClass;
use crate::codim::{identity_check, CiData, CodimError, IdentityCheck};
use crate::localinv::{validate_divisor, DivisorError};
use crate::polyalg::{parse_poly, ParseError, RatMatrix};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::PathBuf;

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Configuration for one `analyze` run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub poly_text: Option<String>,
    pub input_path: Option<PathBuf>,
    pub chart_retry_budget: usize,
    pub rng_seed: u64,
    pub max_jet_order: Option<usize>,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            poly_text: None,
            input_path: None,
            chart_retry_budget: 32,
            rng_seed: 0,
            max_jet_order: None,
            output_format: OutputFormat::Text,
            output_path: None,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    NoInput,
    AmbiguousInput,
    Io(std::io::Error),
    Parse(ParseError),
    Divisor(DivisorError),
    Codim(CodimError),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::NoInput => write!(f, "no input: pass --poly or --file"),
            CliError::AmbiguousInput => write!(f, "pass either --poly or --file, not both"),
            CliError::Io(e) => write!(f, "io error: {e}"),
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Divisor(e) => write!(f, "{e}"),
            CliError::Codim(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<DivisorError> for CliError {
    fn from(e: DivisorError) -> Self {
        CliError::Divisor(e)
    }
}

impl From<CodimError> for CliError {
    fn from(e: CodimError) -> Self {
        CliError::Codim(e)
    }
}

/// JSON form of one singular point record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonSingularPoint {
    pub point: Vec<String>,
    pub mu: u64,
    pub tau: u64,
    pub quasi_homogeneous: bool,
}

/// JSON form of a full curve report. Chow classes serialize as
/// codimension-ordered arrays of exact rational strings, so the report
/// survives serialization without loss.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonCurveReport {
    pub degree: u32,
    pub chart_transform: Vec<Vec<String>>,
    pub singular_points: Vec<JsonSingularPoint>,
    pub all_points_rational: bool,
    pub mu_total: u64,
    pub tau_total: u64,
    pub csm_curve: Vec<String>,
    pub csm_complement: Vec<String>,
    pub chern_log_derivations: Vec<String>,
    pub segre_side: Vec<String>,
    pub chern_side: Vec<String>,
    pub formula_holds: bool,
    pub difference: Vec<String>,
    pub euler_curve: i64,
    pub euler_complement: i64,
}

fn class_strings(class: &ChowClass) -> Vec<String> {
    class.coeffs().iter().map(|c| c.to_string()).collect()
}

fn matrix_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

impl JsonCurveReport {
    pub fn from_report(report: &CurveReport) -> Self {
        JsonCurveReport {
            degree: report.divisor.degree(),
            chart_transform: matrix_strings(report.divisor.chart_transform()),
            singular_points: report
                .locus
                .points
                .iter()
                .map(|p| JsonSingularPoint {
                    point: p.point.coords.iter().map(|c| c.to_string()).collect(),
                    mu: p.mu as u64,
                    tau: p.tau as u64,
                    quasi_homogeneous: p.quasi_homogeneous,
                })
                .collect(),
            all_points_rational: report.locus.all_points_rational,
            mu_total: report.locus.mu_total as u64,
            tau_total: report.locus.tau_total as u64,
            csm_curve: class_strings(&report.csm_curve),
            csm_complement: class_strings(&report.csm_complement),
            chern_log_derivations: class_strings(&report.chern_logder),
            segre_side: class_strings(&report.segre_side),
            chern_side: class_strings(&report.chern_side),
            formula_holds: report.formula_holds,
            difference: class_strings(&report.difference),
            euler_curve: report.euler_curve,
            euler_complement: report.euler_complement,
        }
    }
}

fn render_text_report(report: &CurveReport) -> String {
    let mut out = String::new();
    let push = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };
    push(&mut out, format!("curve: {} (degree {})", report.divisor.poly(), report.divisor.degree()));
    if *report.divisor.chart_transform() == RatMatrix::identity(3) {
        push(&mut out, "chart: identity (all singular points already affine)".into());
    } else {
        push(&mut out, format!("chart transform: {:?}", matrix_strings(report.divisor.chart_transform())));
    }
    if report.locus.points.is_empty() && report.locus.mu_total == 0 {
        push(&mut out, "singular points: none (smooth curve)".into());
    } else {
        push(
            &mut out,
            format!(
                "singular points ({}):",
                if report.locus.all_points_rational {
                    "all rational"
                } else {
                    "rational ones only; totals cover the rest"
                }
            ),
        );
        for p in &report.locus.points {
            push(
                &mut out,
                format!(
                    "  {}: mu = {}, tau = {}{}",
                    p.point,
                    p.mu,
                    p.tau,
                    if p.quasi_homogeneous { ", quasi-homogeneous" } else { "" }
                ),
            );
        }
    }
    push(&mut out, format!("mu_total = {}, tau_total = {}", report.locus.mu_total, report.locus.tau_total));
    push(&mut out, format!("c_SM(1_D)          = {}   (chi(D) = {})", report.csm_curve, report.euler_curve));
    push(&mut out, format!("c_SM(1_U)          = {}   (chi(U) = {})", report.csm_complement, report.euler_complement));
    push(&mut out, format!("c(Der(-log D))[X]  = {}", report.chern_logder));
    push(&mut out, format!("[X] - s(J_D,X)^v   = {}", report.segre_side));
    push(&mut out, format!("c(O_JD)[X]         = {}", report.chern_side));
    push(&mut out, format!("difference         = {}", report.difference));
    push(&mut out, format!("formula holds: {}", report.formula_holds));
    out
}

/// Result of a full `analyze` run.
#[derive(Debug)]
pub struct AnalyzeOutcome {
    pub report: CurveReport,
    pub rendered: String,
    pub exit_code: i32,
}

/// Parse, validate, verify, render. Deterministic for a fixed config.
pub fn run_analyze(config: &RunConfig) -> Result<AnalyzeOutcome, CliError> {
    let text = match (&config.poly_text, &config.input_path) {
        (Some(_), Some(_)) => return Err(CliError::AmbiguousInput),
        (Some(t), None) => t.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)?,
        (None, None) => return Err(CliError::NoInput),
    };
    let poly = parse_poly(text.trim(), &["x", "y", "z"])?;
    let divisor = validate_divisor(&poly, config.chart_retry_budget, config.rng_seed)?;
    let report = verify_theorem(&divisor, config.max_jet_order)?;

    let rendered = match config.output_format {
        OutputFormat::Text => render_text_report(&report),
        OutputFormat::Json => {
            let json = JsonCurveReport::from_report(&report);
            let mut s = serde_json::to_string_pretty(&json).expect("report serializes");
            s.push('\n');
            s
        }
    };
    if let Some(path) = &config.output_path {
        std::fs::write(path, &rendered)?;
    }
    let exit_code = if report.formula_holds { EXIT_HOLDS } else { EXIT_FAILS };
    Ok(AnalyzeOutcome { report, rendered, exit_code })
}

/// JSON form of a codimension check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonCodimReport {
    pub ambient_dim: usize,
    pub degrees: Vec<u32>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub holds: bool,
    pub mismatch: Vec<String>,
}

#[derive(Debug)]
pub struct CodimOutcome {
    pub check: IdentityCheck,
    pub rendered: String,
    pub exit_code: i32,
}

/// Evaluate the complete-intersection comparison and render it.
pub fn run_codim(
    ambient_dim: usize,
    degrees: &[u32],
    format: OutputFormat,
) -> Result<CodimOutcome, CliError> {
    let ci = CiData::new(ambient_dim, degrees.to_vec())?;
    let check = identity_check(&ci)?;
    let rendered = match format {
        OutputFormat::Text => format!(
            "Y: complete intersection of degrees {:?} in P^{}\n\
             [X] - s(Y,X)^v = {}\n\
             c(O_Y)[X]      = {}\n\
             mismatch       = {}\n\
             identity holds: {}\n",
            degrees, ambient_dim, check.lhs, check.rhs, check.mismatch, check.holds
        ),
        OutputFormat::Json => {
            let json = JsonCodimReport {
                ambient_dim,
                degrees: degrees.to_vec(),
                lhs: class_strings(&check.lhs),
                rhs: class_strings(&check.rhs),
                holds: check.holds,
                mismatch: class_strings(&check.mismatch),
            };
            let mut s = serde_json::to_string_pretty(&json).expect("report serializes");
            s.push('\n');
            s
        }
    };
    let exit_code = if check.holds { EXIT_HOLDS } else { EXIT_FAILS };
    Ok(CodimOutcome { check, rendered, exit_code })
}
