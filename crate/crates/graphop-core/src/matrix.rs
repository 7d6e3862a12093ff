//! Matrix truncations of operators on ball bases.
//!
//! The generator `L_w` acts on basis vectors by `L_w xi_x = xi_{wx}` with
//! `xi_empty = 0`, so its truncation to a ball has entry `[y, x] = 1` exactly
//! when `range(w) = source(x)` and `w x = y`. Operator truncations are the
//! coefficient-weighted sums of these. Self-commutator Gram matrices are
//! assembled from the symbolically exact commutator, never from products of
//! truncations: the compression of a product is not the product of
//! compressions, and the symbolic route keeps every entry exact.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;

use crate::ball::Ball;
use crate::eigen::{self, EigenError};
use crate::graph::ShadowedGraph;
use crate::operator::GraphOperator;
use crate::word::{Word, WordError};

/// Pre-symmetrization asymmetry beyond this bound is treated as a failure.
pub const GRAM_ASYMMETRY_BOUND: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixError {
    EmptyWord,
    WordNotInGroupoid(WordError),
    GraphMismatch,
    IndexOutOfRange,
    AsymmetricGram,
    Eigen(EigenError),
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::EmptyWord => f.write_str("the empty word has no matrix"),
            MatrixError::WordNotInGroupoid(err) => write!(f, "word not in the groupoid: {err}"),
            MatrixError::GraphMismatch => f.write_str("operator and ball use different graphs"),
            MatrixError::IndexOutOfRange => f.write_str("index out of range"),
            MatrixError::AsymmetricGram => {
                f.write_str("commutator truncation asymmetry exceeds the tolerance")
            }
            MatrixError::Eigen(err) => write!(f, "{err}"),
        }
    }
}

impl From<EigenError> for MatrixError {
    fn from(err: EigenError) -> Self {
        MatrixError::Eigen(err)
    }
}

impl From<WordError> for MatrixError {
    fn from(err: WordError) -> Self {
        MatrixError::WordNotInGroupoid(err)
    }
}

/// Dense complex matrix over a ball basis; entry `(row y, col x)` follows the
/// ball word order.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedMatrix {
    ball: Ball,
    entries: Vec<Complex64>,
}

impl TruncatedMatrix {
    fn zeros(ball: Ball) -> Self {
        let dim = ball.len();
        TruncatedMatrix {
            ball,
            entries: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn ball(&self) -> &Ball {
        &self.ball
    }

    pub fn dim(&self) -> usize {
        self.ball.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Column labels in basis order, rendered in word syntax.
    pub fn labels(&self) -> Vec<String> {
        let graph = self.ball.graph();
        self.ball
            .words()
            .iter()
            .map(|w| graph.render_word(w))
            .collect()
    }

    pub fn conjugate_transpose(&self) -> TruncatedMatrix {
        let dim = self.dim();
        let mut out = TruncatedMatrix::zeros(self.ball.clone());
        for row in 0..dim {
            for col in 0..dim {
                out.entries[row * dim + col] = self.entries[col * dim + row].conj();
            }
        }
        out
    }

    pub fn max_asymmetry(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0_f64;
        for row in 0..dim {
            for col in 0..dim {
                let diff = (self.entries[row * dim + col]
                    - self.entries[col * dim + row].conj())
                .norm_sqr();
                if diff > worst {
                    worst = diff;
                }
            }
        }
        Float::sqrt(worst)
    }
}

/// Truncation of the generator `L_w`: a 0/1 matrix with at most one nonzero
/// per column.
pub fn generator_matrix(word: &Word, ball: &Ball) -> Result<TruncatedMatrix, MatrixError> {
    if word.is_empty_word() {
        return Err(MatrixError::EmptyWord);
    }
    let graph = ball.graph().clone();
    graph.validate_word(word)?;
    let mut out = TruncatedMatrix::zeros(ball.clone());
    let dim = out.dim();
    let range = graph.range(word).expect("nonempty word");
    for (col, x) in ball.words().iter().enumerate() {
        if graph.source(x).expect("ball words are nonempty") != range {
            continue;
        }
        let image = graph.product(word, x);
        if let Some(row) = ball.position(&image) {
            out.entries[row * dim + col] = Complex64::ONE;
        }
    }
    Ok(out)
}

/// Truncation of a finitely supported operator: the coefficient-weighted sum
/// of its generator truncations.
pub fn operator_matrix(
    operator: &GraphOperator,
    ball: &Ball,
) -> Result<TruncatedMatrix, MatrixError> {
    if operator.graph() != ball.graph() {
        return Err(MatrixError::GraphMismatch);
    }
    let graph = ball.graph().clone();
    let mut out = TruncatedMatrix::zeros(ball.clone());
    let dim = out.dim();
    for (word, coefficient) in operator.terms() {
        let range = graph.range(word).expect("terms are nonempty");
        for (col, x) in ball.words().iter().enumerate() {
            if graph.source(x).expect("ball words are nonempty") != range {
                continue;
            }
            let image = graph.product(word, x);
            if let Some(row) = ball.position(&image) {
                out.entries[row * dim + col] += coefficient;
            }
        }
    }
    Ok(out)
}

/// Exact Gram truncation of the self-commutator `S(T)` on `Ball(n)`,
/// symmetrized as `(G + G*)/2`, together with its smallest eigenvalue.
pub fn commutator_gram(
    operator: &GraphOperator,
    radius: u32,
) -> Result<(TruncatedMatrix, f64), MatrixError> {
    let commutator = operator.self_commutator();
    let ball = Ball::enumerate(operator.graph().clone(), radius);
    let mut gram = operator_matrix(&commutator, &ball)?;
    if gram.max_asymmetry() > GRAM_ASYMMETRY_BOUND {
        return Err(MatrixError::AsymmetricGram);
    }
    let dim = gram.dim();
    for row in 0..dim {
        for col in 0..=row {
            let value = (gram.entries[row * dim + col]
                + gram.entries[col * dim + row].conj())
                * 0.5;
            gram.entries[row * dim + col] = value;
            gram.entries[col * dim + row] = value.conj();
        }
    }
    let lambda_min = eigen::hermitian_min_eigenvalue(&gram.entries, dim)?;
    Ok((gram, lambda_min))
}

/// One level of the positivity probe.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceLevel {
    pub radius: u32,
    pub dim: usize,
    pub lambda_min: f64,
}

/// Smallest self-commutator eigenvalues over nested balls. Levels are
/// non-increasing in the radius because the Gram matrices nest as leading
/// principal submatrices.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SpectralTrace {
    pub levels: Vec<TraceLevel>,
}

impl SpectralTrace {
    pub fn min_lambda(&self) -> Option<f64> {
        self.levels
            .iter()
            .map(|level| level.lambda_min)
            .fold(None, |acc, x| match acc {
                None => Some(x),
                Some(y) => Some(if x < y { x } else { y }),
            })
    }
}

pub fn spectral_trace(operator: &GraphOperator, n_max: u32) -> Result<SpectralTrace, MatrixError> {
    let mut levels = Vec::with_capacity(n_max as usize + 1);
    for radius in 0..=n_max {
        let (gram, lambda_min) = commutator_gram(operator, radius)?;
        levels.push(TraceLevel {
            radius,
            dim: gram.dim(),
            lambda_min,
        });
    }
    Ok(SpectralTrace { levels })
}

/// The vertex-space compressions of the infinite linear graph, truncated to
/// an `N x N` block. Indices are 1-based to mirror the j-th vertex labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompressionKind {
    /// `|j><j|`
    Vertex,
    /// `|j><j| + |j><j+1|`
    Edge,
    /// `2|j><j| + |j><j+1| + |j+1><j|`
    Symmetrized,
}

pub fn linear_graph_compression(
    kind: CompressionKind,
    j: usize,
    size: usize,
) -> Result<TruncatedMatrix, MatrixError> {
    if j < 1 || j >= size {
        return Err(MatrixError::IndexOutOfRange);
    }
    let graph = linear_graph(size);
    let ball = Ball::enumerate(Arc::new(graph), 0);
    let mut out = TruncatedMatrix::zeros(ball);
    let dim = out.dim();
    let jj = j - 1;
    match kind {
        CompressionKind::Vertex => {
            out.entries[jj * dim + jj] = Complex64::ONE;
        }
        CompressionKind::Edge => {
            out.entries[jj * dim + jj] = Complex64::ONE;
            out.entries[jj * dim + jj + 1] = Complex64::ONE;
        }
        CompressionKind::Symmetrized => {
            out.entries[jj * dim + jj] = Complex64::new(2.0, 0.0);
            out.entries[jj * dim + jj + 1] = Complex64::ONE;
            out.entries[(jj + 1) * dim + jj] = Complex64::ONE;
        }
    }
    Ok(out)
}

/// Finite truncation of the linear graph `v1 -> v2 -> ... -> vN`.
fn linear_graph(size: usize) -> ShadowedGraph {
    let mut builder = crate::graph::GraphBuilder::new();
    for k in 1..=size {
        builder
            .add_vertex(&alloc::format!("v{k}"))
            .expect("generated names are unique");
    }
    for k in 1..size {
        builder
            .add_edge(
                &alloc::format!("e{k}"),
                &alloc::format!("v{k}"),
                &alloc::format!("v{}", k + 1),
            )
            .expect("generated names are unique");
    }
    ShadowedGraph::new(builder.finish().expect("size >= 1"))
}
