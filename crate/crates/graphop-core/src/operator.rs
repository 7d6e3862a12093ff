//! Finitely supported operators `T = sum t_w L_w` with exact convolution.
//!
//! Terms live in a canonical `BTreeMap` keyed by ball order, so construction
//! normalizes (sums duplicates, prunes coefficients below `eps_zero`) and all
//! arithmetic produces the canonical form. The generator relations are
//! `L_{w1} L_{w2} = L_{w1 w2}` (terms falling on the empty word vanish) and
//! `L_w^* = L_{w^-1}` with conjugated coefficients.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::graph::ShadowedGraph;
use crate::word::{Word, WordError};

/// Coefficients smaller than this in modulus are pruned on construction.
pub const DEFAULT_EPS_ZERO: f64 = 1e-12;

/// Drops the sign of a negative zero so equal values print identically.
pub fn canonical_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// Renders a coefficient as `re`, `re+imi`, or `re-imi` using the shortest
/// round-trip float form, so printed operators re-parse losslessly.
pub fn render_coefficient(z: Complex64) -> String {
    let re = canonical_zero(z.re);
    let im = canonical_zero(z.im);
    if im == 0.0 {
        alloc::format!("{re}")
    } else if im < 0.0 {
        alloc::format!("{re}-{}i", -im)
    } else {
        alloc::format!("{re}+{im}i")
    }
}

/// Default tolerance for coefficient-wise operator comparisons.
pub const DEFAULT_EPS_EQ: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorError {
    GraphMismatch,
    EmptyWordTerm,
    NonFiniteCoefficient,
    InvalidWord(WordError),
}

impl fmt::Display for OperatorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorError::GraphMismatch => {
                f.write_str("operators are bound to different graphs")
            }
            OperatorError::EmptyWordTerm => f.write_str("the empty word cannot carry a term"),
            OperatorError::NonFiniteCoefficient => {
                f.write_str("coefficients must be finite complex numbers")
            }
            OperatorError::InvalidWord(err) => write!(f, "invalid term word: {err}"),
        }
    }
}

impl From<WordError> for OperatorError {
    fn from(err: WordError) -> Self {
        OperatorError::InvalidWord(err)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GraphOperator {
    graph: Arc<ShadowedGraph>,
    terms: BTreeMap<Word, Complex64>,
}

impl GraphOperator {
    /// Builds an operator from term pairs. Duplicate words are summed, and
    /// near-zero results are pruned at [`DEFAULT_EPS_ZERO`].
    pub fn new<I>(graph: Arc<ShadowedGraph>, terms: I) -> Result<Self, OperatorError>
    where
        I: IntoIterator<Item = (Word, Complex64)>,
    {
        Self::with_eps_zero(graph, terms, DEFAULT_EPS_ZERO)
    }

    pub fn with_eps_zero<I>(
        graph: Arc<ShadowedGraph>,
        terms: I,
        eps_zero: f64,
    ) -> Result<Self, OperatorError>
    where
        I: IntoIterator<Item = (Word, Complex64)>,
    {
        let mut map: BTreeMap<Word, Complex64> = BTreeMap::new();
        for (word, coefficient) in terms {
            if word.is_empty_word() {
                return Err(OperatorError::EmptyWordTerm);
            }
            if !coefficient.re.is_finite() || !coefficient.im.is_finite() {
                return Err(OperatorError::NonFiniteCoefficient);
            }
            graph.validate_word(&word)?;
            *map.entry(word).or_insert(Complex64::ZERO) += coefficient;
        }
        map.retain(|_, c| c.norm_sqr() > eps_zero * eps_zero);
        Ok(GraphOperator { graph, terms: map })
    }

    /// The zero operator (empty support).
    pub fn zero(graph: Arc<ShadowedGraph>) -> Self {
        GraphOperator {
            graph,
            terms: BTreeMap::new(),
        }
    }

    /// The identity `1 = sum_v L_v` of a finite graph.
    pub fn identity(graph: Arc<ShadowedGraph>) -> Self {
        let terms = (0..graph.vertex_count())
            .map(|v| (Word::Vertex(v), Complex64::ONE))
            .collect();
        GraphOperator { graph, terms }
    }

    pub fn single(
        graph: Arc<ShadowedGraph>,
        word: Word,
        coefficient: Complex64,
    ) -> Result<Self, OperatorError> {
        Self::new(graph, [(word, coefficient)])
    }

    pub fn graph(&self) -> &Arc<ShadowedGraph> {
        &self.graph
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, Complex64)> {
        self.terms.iter().map(|(w, c)| (w, *c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &Word) -> Complex64 {
        self.terms.get(word).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    fn same_graph(&self, other: &GraphOperator) -> Result<(), OperatorError> {
        if self.graph == other.graph {
            Ok(())
        } else {
            Err(OperatorError::GraphMismatch)
        }
    }

    /// Weighted sum `sum_k a_k T_k`. All operators must share one graph.
    pub fn linear_combine(
        pairs: &[(Complex64, &GraphOperator)],
    ) -> Result<GraphOperator, OperatorError> {
        let Some((_, first)) = pairs.first() else {
            return Err(OperatorError::GraphMismatch);
        };
        let graph = first.graph.clone();
        let mut map: BTreeMap<Word, Complex64> = BTreeMap::new();
        for (weight, op) in pairs {
            first.same_graph(op)?;
            if !weight.re.is_finite() || !weight.im.is_finite() {
                return Err(OperatorError::NonFiniteCoefficient);
            }
            for (word, coefficient) in &op.terms {
                *map.entry(word.clone()).or_insert(Complex64::ZERO) += weight * coefficient;
            }
        }
        map.retain(|_, c| c.norm_sqr() > DEFAULT_EPS_ZERO * DEFAULT_EPS_ZERO);
        Ok(GraphOperator { graph, terms: map })
    }

    pub fn add(&self, other: &GraphOperator) -> Result<GraphOperator, OperatorError> {
        GraphOperator::linear_combine(&[(Complex64::ONE, self), (Complex64::ONE, other)])
    }

    pub fn sub(&self, other: &GraphOperator) -> Result<GraphOperator, OperatorError> {
        GraphOperator::linear_combine(&[(Complex64::ONE, self), (-Complex64::ONE, other)])
    }

    pub fn scale(&self, weight: Complex64) -> GraphOperator {
        GraphOperator::linear_combine(&[(weight, self)]).expect("single operand cannot mismatch")
    }

    /// Convolution product: every term pair lands on its groupoid product,
    /// and pairs with empty product vanish (`xi_empty = 0`).
    pub fn multiply(&self, other: &GraphOperator) -> Result<GraphOperator, OperatorError> {
        self.same_graph(other)?;
        let mut map: BTreeMap<Word, Complex64> = BTreeMap::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let product = self.graph.product(w1, w2);
                if product.is_empty_word() {
                    continue;
                }
                *map.entry(product).or_insert(Complex64::ZERO) += c1 * c2;
            }
        }
        map.retain(|_, c| c.norm_sqr() > DEFAULT_EPS_ZERO * DEFAULT_EPS_ZERO);
        Ok(GraphOperator {
            graph: self.graph.clone(),
            terms: map,
        })
    }

    /// Adjoint: `(sum t_w L_w)^* = sum conj(t_w) L_{w^-1}`.
    pub fn adjoint(&self) -> GraphOperator {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.inverse(), c.conj()))
            .collect();
        GraphOperator {
            graph: self.graph.clone(),
            terms,
        }
    }

    /// Conditional expectation onto the diagonal subalgebra: keeps exactly
    /// the vertex-indexed terms.
    pub fn diagonal_part(&self) -> GraphOperator {
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| w.is_vertex())
            .map(|(w, c)| (w.clone(), *c))
            .collect();
        GraphOperator {
            graph: self.graph.clone(),
            terms,
        }
    }

    /// Self-commutator `S(T) = T*T - TT*`, computed exactly on the symbols.
    pub fn self_commutator(&self) -> GraphOperator {
        let adjoint = self.adjoint();
        let left = adjoint.multiply(self).expect("same graph");
        let right = self.multiply(&adjoint).expect("same graph");
        left.sub(&right).expect("same graph")
    }

    /// Coefficient-wise comparison within `eps_eq` over the union of both
    /// supports.
    pub fn approx_eq(&self, other: &GraphOperator, eps_eq: f64) -> bool {
        self.max_coefficient_difference(other) <= eps_eq
    }

    /// Largest coefficient modulus of `self - other`, without pruning.
    pub fn max_coefficient_difference(&self, other: &GraphOperator) -> f64 {
        let mut worst: f64 = 0.0;
        for word in self.terms.keys().chain(other.terms.keys()) {
            let diff = (self.coefficient(word) - other.coefficient(word)).norm_sqr();
            if diff > worst {
                worst = diff;
            }
        }
        num_traits::Float::sqrt(worst)
    }

    /// All seven support sets used by the classification criteria.
    pub fn support_profile(&self) -> SupportProfile {
        let supp: Vec<Word> = self.terms.keys().cloned().collect();
        let supp_vertices: Vec<Word> = supp.iter().filter(|w| w.is_vertex()).cloned().collect();
        let supp_paths: Vec<Word> = supp.iter().filter(|w| w.is_path()).cloned().collect();

        let mut pi_star_left: BTreeSet<Word> = BTreeSet::new();
        let mut pi_star_right: BTreeSet<Word> = BTreeSet::new();
        for w1 in &supp {
            for w2 in &supp {
                let left = self.graph.product(&w1.inverse(), w2);
                if !left.is_empty_word() {
                    pi_star_left.insert(left);
                }
                let right = self.graph.product(w1, &w2.inverse());
                if !right.is_empty_word() {
                    pi_star_right.insert(right);
                }
            }
        }
        let range_of = |words: &BTreeSet<Word>| -> BTreeSet<usize> {
            words
                .iter()
                .map(|w| self.graph.range(w).expect("profile words are nonempty"))
                .collect()
        };
        let r_left = range_of(&pi_star_left);
        let r_right = range_of(&pi_star_right);
        SupportProfile {
            supp,
            supp_vertices,
            supp_paths,
            pi_star_left: pi_star_left.into_iter().collect(),
            pi_star_right: pi_star_right.into_iter().collect(),
            r_left: r_left.into_iter().collect(),
            r_right: r_right.into_iter().collect(),
        }
    }

    /// Renders terms as `coefficient * word` pairs for report text.
    pub fn render_terms(&self) -> Vec<(String, Complex64)> {
        self.terms
            .iter()
            .map(|(w, c)| (self.graph.render_word(w), *c))
            .collect()
    }
}

/// Derived support data: the support split into vertex and path parts, the
/// pairwise product sets `Pi_{T*T}` and `Pi_{TT*}`, and their range vertex
/// sets. All lists are sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportProfile {
    pub supp: Vec<Word>,
    pub supp_vertices: Vec<Word>,
    pub supp_paths: Vec<Word>,
    pub pi_star_left: Vec<Word>,
    pub pi_star_right: Vec<Word>,
    pub r_left: Vec<usize>,
    pub r_right: Vec<usize>,
}
