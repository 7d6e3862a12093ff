//! Batch command implementations. Each command builds its entire output
//! before returning, so a failing run never emits partial output.

use std::path::Path;
use std::sync::Arc;

use graphop_core::classify::{classify, classify_with, ClassifyConfig};
use graphop_core::freegroup::{freegroup_classify, FreeGroupContext};
use graphop_core::matrix::{
    commutator_gram, linear_graph_compression, operator_matrix, spectral_trace, CompressionKind,
    MatrixError, TruncatedMatrix,
};
use graphop_core::{Ball, GraphOperator, ShadowedGraph};

use crate::error::CliError;
use crate::formats::{self, format_complex};
use crate::report::{self, RunMode};

/// Validated tolerance bundle: `eps_zero` prunes term maps, `eps_eq` drives
/// coefficient comparisons, `tol` is the numeric positivity slack.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    pub eps_zero: f64,
    pub eps_eq: f64,
    pub tol: f64,
}

impl Tolerances {
    pub fn new(eps_zero: f64, eps_eq: f64, tol: f64) -> Result<Self, CliError> {
        for (name, value) in [("eps-zero", eps_zero), ("eps-eq", eps_eq), ("tol", tol)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(CliError::Parse(format!(
                    "tolerance --{name} must be a positive finite number, got {value}"
                )));
            }
        }
        Ok(Tolerances {
            eps_zero,
            eps_eq,
            tol,
        })
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load_graph(path: &Path) -> Result<Arc<ShadowedGraph>, CliError> {
    let text = read_file(path)?;
    Ok(Arc::new(ShadowedGraph::new(formats::parse_graph(&text)?)))
}

pub fn load_operator(
    path: &Path,
    graph: &Arc<ShadowedGraph>,
    eps_zero: f64,
) -> Result<GraphOperator, CliError> {
    let text = read_file(path)?;
    formats::parse_operator(&text, graph, eps_zero)
}

fn numeric_error(err: MatrixError) -> CliError {
    match err {
        MatrixError::Eigen(_) | MatrixError::AsymmetricGram => CliError::Numeric(err.to_string()),
        other => CliError::Parse(other.to_string()),
    }
}

pub fn cmd_classify(
    graph_path: &Path,
    operator_path: &Path,
    run_mode: RunMode,
    truncation: u32,
    tolerances: Tolerances,
    json: bool,
) -> Result<String, CliError> {
    let graph = load_graph(graph_path)?;
    let op = load_operator(operator_path, &graph, tolerances.eps_zero)?;
    let config = ClassifyConfig {
        eps_eq: tolerances.eps_eq,
        n_max: truncation,
        tol: tolerances.tol,
    };
    let result = classify(&op, &config).map_err(numeric_error)?;
    let document = report::build_document(&op, &result, run_mode);
    Ok(if json {
        report::to_json(&document)
    } else {
        report::to_text(&document)
    })
}

pub fn cmd_free_classify(
    generators: usize,
    operator_path: &Path,
    run_mode: RunMode,
    truncation: u32,
    tolerances: Tolerances,
    json: bool,
) -> Result<String, CliError> {
    let ctx = FreeGroupContext::new(generators).map_err(|e| CliError::Parse(e.to_string()))?;
    let text = read_file(operator_path)?;
    let op = formats::parse_free_operator(&text, &ctx, tolerances.eps_zero)?;
    let config = ClassifyConfig {
        eps_eq: tolerances.eps_eq,
        n_max: truncation,
        tol: tolerances.tol,
    };
    let result = freegroup_classify(&ctx, &op, &config).map_err(|e| match e {
        graphop_core::freegroup::FreeGroupError::Matrix(m) => numeric_error(m),
        other => CliError::Parse(other.to_string()),
    })?;
    let document = report::build_free_document(&ctx, &op, &result.report, run_mode);
    Ok(if json {
        report::to_json(&document)
    } else {
        report::to_text(&document)
    })
}

pub fn cmd_product(
    graph_path: &Path,
    left_path: &Path,
    right_path: &Path,
    eps_zero: f64,
) -> Result<String, CliError> {
    let graph = load_graph(graph_path)?;
    let left = load_operator(left_path, &graph, eps_zero)?;
    let right = load_operator(right_path, &graph, eps_zero)?;
    let product = left
        .multiply(&right)
        .map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(formats::write_operator(&product))
}

pub fn cmd_adjoint(
    graph_path: &Path,
    operator_path: &Path,
    eps_zero: f64,
) -> Result<String, CliError> {
    let graph = load_graph(graph_path)?;
    let op = load_operator(operator_path, &graph, eps_zero)?;
    Ok(formats::write_operator(&op.adjoint()))
}

pub fn cmd_commutator(
    graph_path: &Path,
    operator_path: &Path,
    eps_zero: f64,
) -> Result<String, CliError> {
    let graph = load_graph(graph_path)?;
    let op = load_operator(operator_path, &graph, eps_zero)?;
    Ok(formats::write_operator(&op.self_commutator()))
}

pub fn cmd_matrix(
    graph_path: &Path,
    operator_path: &Path,
    radius: u32,
    csv: bool,
    eps_zero: f64,
) -> Result<String, CliError> {
    let graph = load_graph(graph_path)?;
    let op = load_operator(operator_path, &graph, eps_zero)?;
    let ball = Ball::enumerate(graph, radius);
    let matrix = operator_matrix(&op, &ball).map_err(numeric_error)?;
    Ok(if csv {
        matrix_csv(&matrix, true)
    } else {
        matrix_table(&matrix)
    })
}

pub fn cmd_spectrum(
    graph_path: &Path,
    operator_path: &Path,
    ball_max: u32,
    csv: bool,
    eps_zero: f64,
) -> Result<String, CliError> {
    let graph = load_graph(graph_path)?;
    let op = load_operator(operator_path, &graph, eps_zero)?;
    let trace = spectral_trace(&op, ball_max).map_err(numeric_error)?;
    let mut out = String::new();
    if csv {
        out.push_str("n,dim,lambda_min\n");
        for level in &trace.levels {
            out.push_str(&format!("{},{},{}\n", level.radius, level.dim, level.lambda_min));
        }
    } else {
        for level in &trace.levels {
            out.push_str(&format!(
                "n={} dim={} lambdaMin={}\n",
                level.radius, level.dim, level.lambda_min
            ));
        }
    }
    Ok(out)
}

pub fn parse_compression_kind(text: &str) -> Result<CompressionKind, CliError> {
    match text {
        "vertex" => Ok(CompressionKind::Vertex),
        "edge" => Ok(CompressionKind::Edge),
        "sym" => Ok(CompressionKind::Symmetrized),
        other => Err(CliError::Parse(format!(
            "unknown compression kind `{other}`; expected vertex, edge, or sym"
        ))),
    }
}

/// Emits the N x N truncation as bare CSV rows (no header: rows and columns
/// are the 1-based vertex positions of the linear graph).
pub fn cmd_linear_compress(kind: CompressionKind, j: usize, size: usize) -> Result<String, CliError> {
    let matrix = linear_graph_compression(kind, j, size).map_err(numeric_error)?;
    Ok(matrix_csv(&matrix, false))
}

/// CSV per the representation contract: a header row of ball word names,
/// then complex entries as `re`, `re+imi`, or `re-imi`.
pub fn matrix_csv(matrix: &TruncatedMatrix, header: bool) -> String {
    let mut out = String::new();
    if header {
        out.push_str(&matrix.labels().join(","));
        out.push('\n');
    }
    let dim = matrix.dim();
    for row in 0..dim {
        let cells: Vec<String> = (0..dim)
            .map(|col| format_complex(matrix.entry(row, col)))
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Aligned text table with word labels on both axes.
fn matrix_table(matrix: &TruncatedMatrix) -> String {
    let labels = matrix.labels();
    let dim = matrix.dim();
    let mut cells: Vec<Vec<String>> = Vec::with_capacity(dim + 1);
    let mut header: Vec<String> = Vec::with_capacity(dim + 1);
    header.push(String::new());
    header.extend(labels.iter().cloned());
    cells.push(header);
    for row in 0..dim {
        let mut line = Vec::with_capacity(dim + 1);
        line.push(labels[row].clone());
        for col in 0..dim {
            line.push(format_complex(matrix.entry(row, col)));
        }
        cells.push(line);
    }
    let mut widths = vec![0usize; dim + 1];
    for line in &cells {
        for (k, cell) in line.iter().enumerate() {
            widths[k] = widths[k].max(cell.len());
        }
    }
    let mut out = String::new();
    for line in &cells {
        let rendered: Vec<String> = line
            .iter()
            .enumerate()
            .map(|(k, cell)| format!("{:>width$}", cell, width = widths[k]))
            .collect();
        out.push_str(rendered.join(" ").trim_end());
        out.push('\n');
    }
    out
}

/// Smallest commutator eigenvalue at one radius; used by tests.
pub fn gram_lambda_min(op: &GraphOperator, radius: u32) -> Result<f64, CliError> {
    let (_, lambda) = commutator_gram(op, radius).map_err(numeric_error)?;
    Ok(lambda)
}

/// Re-exported so tests can classify with a free-group rendering without
/// going through files.
pub fn classify_rendered(
    op: &GraphOperator,
    config: &ClassifyConfig,
    ctx: &FreeGroupContext,
) -> Result<graphop_core::ClassificationReport, CliError> {
    classify_with(op, config, ctx).map_err(numeric_error)
}
