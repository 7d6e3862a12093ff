//! The bridge between free-group words and the one-vertex loop graphs.
//!
//! The groupoid of the one-vertex graph `O_N` is the free group on its `N`
//! loop edges, so finitely supported group-algebra elements are exactly the
//! graph operators over `O_N`. This module maps generator spellings onto
//! loop edges, reduces through the groupoid, and evaluates the one-vertex
//! classification formulas literally as printed, next to the exact oracle.
//!
//! The printed hyponormality/normality sums telescope to zero for every
//! coefficient family (`sum conj(t_g1) t_g2` is `|sum t|^2`, and the second
//! sum is its conjugate), so those criteria accept everything; disagreements
//! with the oracle are reported as discrepancies rather than patched.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;

use crate::classify::{
    check_self_adjoint_with, check_unitary_with, check_normal_with, collect_discrepancies,
    hyponormal_numeric_with_trace, ClassificationReport, ClassifyConfig, Mode, Outcome, Property,
    Verdict, WordRender,
};
use crate::graph::{DirectedGraph, GraphError, Orientation, ShadowedGraph, SignedEdge};
use crate::matrix::MatrixError;
use crate::operator::GraphOperator;
use crate::word::{Word, WordError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreeGroupError {
    ZeroGenerators,
    NotOneVertex,
    GraphMismatch,
    UnknownGenerator(String),
    EmptyWordText,
    Word(WordError),
    Matrix(MatrixError),
}

impl fmt::Display for FreeGroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FreeGroupError::ZeroGenerators => f.write_str("the generator count must be positive"),
            FreeGroupError::NotOneVertex => {
                f.write_str("the operator is not bound to a one-vertex loop graph")
            }
            FreeGroupError::GraphMismatch => {
                f.write_str("the operator belongs to a different context")
            }
            FreeGroupError::UnknownGenerator(token) => {
                write!(f, "unknown generator token `{token}`")
            }
            FreeGroupError::EmptyWordText => f.write_str("empty group word"),
            FreeGroupError::Word(err) => write!(f, "{err}"),
            FreeGroupError::Matrix(err) => write!(f, "{err}"),
        }
    }
}

impl From<WordError> for FreeGroupError {
    fn from(err: WordError) -> Self {
        FreeGroupError::Word(err)
    }
}

impl From<MatrixError> for FreeGroupError {
    fn from(err: MatrixError) -> Self {
        FreeGroupError::Matrix(err)
    }
}

/// Single letters used for generator names. The letter `e` is reserved for
/// the group identity token, so the alphabet skips it.
const GENERATOR_ALPHABET: &str = "abcdfghijklmnopqrstuvwxyz";

/// Free group on `N` generators realized over the loop graph `O_N`; the
/// generator `u_k` acts as the loop edge `e_k`, and the identity is the
/// unique vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeGroupContext {
    graph: Arc<ShadowedGraph>,
    names: Vec<String>,
}

impl FreeGroupContext {
    pub fn new(n: usize) -> Result<Self, FreeGroupError> {
        if n == 0 {
            return Err(FreeGroupError::ZeroGenerators);
        }
        let graph = DirectedGraph::one_vertex_loops(n).map_err(|_: GraphError| {
            FreeGroupError::ZeroGenerators
        })?;
        let names = (0..n)
            .map(|k| {
                if n <= GENERATOR_ALPHABET.len() {
                    GENERATOR_ALPHABET[k..k + 1].to_string()
                } else {
                    format!("u{}", k + 1)
                }
            })
            .collect();
        Ok(FreeGroupContext {
            graph: Arc::new(ShadowedGraph::new(graph)),
            names,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn graph(&self) -> &Arc<ShadowedGraph> {
        &self.graph
    }

    pub fn generator_name(&self, index: usize) -> &str {
        &self.names[index]
    }

    fn generator_index(&self, token: &str) -> Option<usize> {
        self.names.iter().position(|name| name == token)
    }

    /// Parses a group word: whitespace-separated generator tokens with an
    /// optional `^-1`, where `e` is the identity. Reduction runs through the
    /// groupoid, which coincides with free-group reduction here.
    pub fn parse_word(&self, text: &str) -> Result<Word, FreeGroupError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(FreeGroupError::EmptyWordText);
        }
        let mut letters: Vec<SignedEdge> = Vec::with_capacity(tokens.len());
        for token in tokens {
            let (name, orientation) = match token.strip_suffix("^-1") {
                Some(name) => (name, Orientation::Reverse),
                None => (token, Orientation::Forward),
            };
            if name == "e" {
                continue;
            }
            let edge = self
                .generator_index(name)
                .ok_or_else(|| FreeGroupError::UnknownGenerator(name.to_string()))?;
            letters.push(SignedEdge { edge, orientation });
        }
        if letters.is_empty() {
            return Ok(Word::Vertex(0));
        }
        Ok(self.graph.word_from_letters(&letters)?)
    }

    /// Renders a word in generator spelling; the vertex is the identity `e`.
    pub fn render_word(&self, word: &Word) -> String {
        match word {
            Word::Empty => "0".to_string(),
            Word::Vertex(_) => "e".to_string(),
            Word::Path(letters) => {
                let mut out = String::new();
                for (k, letter) in letters.iter().enumerate() {
                    if k > 0 {
                        out.push(' ');
                    }
                    out.push_str(&self.names[letter.edge]);
                    if letter.orientation == Orientation::Reverse {
                        out.push_str("^-1");
                    }
                }
                out
            }
        }
    }

    fn accepts(&self, op: &GraphOperator) -> Result<(), FreeGroupError> {
        if op.graph().vertex_count() != 1 {
            return Err(FreeGroupError::NotOneVertex);
        }
        if op.graph() != &self.graph {
            return Err(FreeGroupError::GraphMismatch);
        }
        Ok(())
    }
}

impl WordRender for FreeGroupContext {
    fn word(&self, word: &Word) -> String {
        self.render_word(word)
    }

    fn vertex(&self, _vertex: usize) -> String {
        "e".to_string()
    }
}

/// The sum `sum_(g1,g2) (conj(t_g1) t_g2 - t_g1 conj(t_g2))` over support
/// pairs, exactly as the one-vertex hyponormality and normality criteria
/// print it. It telescopes to `|sum t|^2 - conj(|sum t|^2) = 0`.
pub fn section5_pair_sum(op: &GraphOperator) -> Complex64 {
    let mut sum = Complex64::ZERO;
    for (_, c1) in op.terms() {
        for (_, c2) in op.terms() {
            sum += c1.conj() * c2 - c1 * c2.conj();
        }
    }
    sum
}

/// Classification over `O_N` with the one-vertex criteria standing in for
/// paper mode, mirroring the generic report shape.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeGroupReport {
    pub generator_count: usize,
    pub report: ClassificationReport,
}

pub fn freegroup_classify(
    ctx: &FreeGroupContext,
    op: &GraphOperator,
    config: &ClassifyConfig,
) -> Result<FreeGroupReport, FreeGroupError> {
    ctx.accepts(op)?;
    let eps = config.eps_eq;

    let sa_paper = check_self_adjoint_with(op, Mode::Paper, eps, ctx);
    let sa_oracle = check_self_adjoint_with(op, Mode::Oracle, eps, ctx);
    let un_paper = check_unitary_with(op, Mode::Paper, eps, ctx);
    let un_oracle = check_unitary_with(op, Mode::Oracle, eps, ctx);

    let pair_sum = section5_pair_sum(op);
    let no_paper = pair_sum_verdict(Property::Normal, pair_sum, eps, true);
    let no_oracle = check_normal_with(op, Mode::Oracle, eps, ctx);
    let hypo_paper = pair_sum_verdict(Property::Hyponormal, pair_sum, eps, false);
    let (hypo_numeric, trace) = hyponormal_numeric_with_trace(op, config.n_max, config.tol)?;

    let verdicts = alloc::vec![
        sa_paper, sa_oracle, un_paper, un_oracle, no_paper, no_oracle, hypo_paper, hypo_numeric,
    ];
    let discrepancies = collect_discrepancies(&verdicts);
    Ok(FreeGroupReport {
        generator_count: ctx.generator_count(),
        report: ClassificationReport {
            profile: op.support_profile(),
            verdicts,
            discrepancies,
            trace,
        },
    })
}

/// Evaluates the printed pair-sum condition: `= 0` for normality, `>= 0` for
/// hyponormality. Non-real sums would make the comparison meaningless, so
/// they yield `inapplicable`; as printed the sum vanishes identically.
fn pair_sum_verdict(property: Property, sum: Complex64, eps: f64, exact: bool) -> Verdict {
    let mode = Mode::Paper;
    if Float::abs(sum.im) > eps {
        return Verdict {
            property,
            mode,
            outcome: Outcome::Inapplicable,
            witness: Some(format!(
                "pair sum {} is not real",
                crate::operator::render_coefficient(sum)
            )),
        };
    }
    let holds = if exact {
        Float::abs(sum.re) <= eps
    } else {
        sum.re >= -eps
    };
    if holds {
        Verdict {
            property,
            mode,
            outcome: Outcome::Yes,
            witness: Some(format!(
                "pair sum over the support evaluates to {}",
                crate::operator::render_coefficient(sum)
            )),
        }
    } else {
        Verdict {
            property,
            mode,
            outcome: Outcome::No,
            witness: Some(format!(
                "pair sum over the support evaluates to {}",
                crate::operator::render_coefficient(sum)
            )),
        }
    }
}
