//! Exact models of graph groupoids and the finitely supported operators they
//! generate, with operator-theoretic classification (self-adjoint, unitary,
//! normal, hyponormal) in two modes: printed combinatorial criteria and an
//! exact convolution oracle, plus numeric positivity probes on truncated
//! matrix representations.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod ball;
pub mod classify;
pub mod eigen;
pub mod freegroup;
pub mod graph;
pub mod matrix;
pub mod operator;
pub mod word;

pub use ball::Ball;
pub use classify::{
    classify, ClassificationReport, ClassifyConfig, Discrepancy, Mode, Outcome, Property, Verdict,
};
pub use freegroup::{freegroup_classify, FreeGroupContext, FreeGroupError, FreeGroupReport};
pub use graph::{
    DirectedGraph, EdgeId, GraphBuilder, GraphError, Orientation, ShadowedGraph, SignedEdge,
    VertexId,
};
pub use matrix::{CompressionKind, MatrixError, SpectralTrace, TraceLevel, TruncatedMatrix};
pub use num_complex::Complex64;
pub use operator::{
    render_coefficient, GraphOperator, OperatorError, SupportProfile, DEFAULT_EPS_EQ,
    DEFAULT_EPS_ZERO,
};
pub use word::{Word, WordError};
