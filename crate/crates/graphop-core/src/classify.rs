//! Property classification in two modes.
//!
//! Paper mode evaluates the printed combinatorial criteria: support pairing
//! for self-adjointness, alternative disconnectedness plus range coverage and
//! unit sums for unitarity, range-set comparison plus per-vertex sums for
//! normality and hyponormality. Oracle mode evaluates the defining operator
//! equations by exact convolution. Numeric mode probes positivity of the
//! self-commutator through truncated Gram spectra and can only refute
//! hyponormality or stay undetermined.
//!
//! Oracle mode is authoritative in reports; paper mode is informational and
//! disagreements between the two are surfaced as discrepancies, not errors.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;

use crate::graph::ShadowedGraph;
use crate::matrix::{self, MatrixError, SpectralTrace};
use crate::operator::{render_coefficient, GraphOperator, SupportProfile};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Property {
    SelfAdjoint,
    Unitary,
    Normal,
    Hyponormal,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::SelfAdjoint => "selfAdjoint",
            Property::Unitary => "unitary",
            Property::Normal => "normal",
            Property::Hyponormal => "hyponormal",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Paper,
    Oracle,
    Numeric,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Paper => "paper",
            Mode::Oracle => "oracle",
            Mode::Numeric => "numeric",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Yes,
    No,
    Undetermined,
    Inapplicable,
}

impl Outcome {
    pub fn is_decisive(self) -> bool {
        matches!(self, Outcome::Yes | Outcome::No)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Yes => "yes",
            Outcome::No => "no",
            Outcome::Undetermined => "undetermined",
            Outcome::Inapplicable => "inapplicable",
        })
    }
}

/// One property checked in one mode. A `no` always carries a witness.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub property: Property,
    pub mode: Mode,
    pub outcome: Outcome,
    pub witness: Option<String>,
}

impl Verdict {
    fn yes(property: Property, mode: Mode) -> Self {
        Verdict {
            property,
            mode,
            outcome: Outcome::Yes,
            witness: None,
        }
    }

    fn yes_with(property: Property, mode: Mode, witness: String) -> Self {
        Verdict {
            property,
            mode,
            outcome: Outcome::Yes,
            witness: Some(witness),
        }
    }

    fn no(property: Property, mode: Mode, witness: String) -> Self {
        Verdict {
            property,
            mode,
            outcome: Outcome::No,
            witness: Some(witness),
        }
    }
}

/// Renders words and vertices for witness text. Graphs render in word
/// syntax; the free-group bridge substitutes generator spellings.
pub trait WordRender {
    fn word(&self, word: &Word) -> String;
    fn vertex(&self, vertex: usize) -> String;
}

impl WordRender for ShadowedGraph {
    fn word(&self, word: &Word) -> String {
        self.render_word(word)
    }

    fn vertex(&self, vertex: usize) -> String {
        self.vertex_name(vertex).0.clone()
    }
}

fn render_word_set(render: &dyn WordRender, words: &[Word]) -> String {
    let mut out = String::from("{");
    for (k, w) in words.iter().enumerate() {
        if k > 0 {
            out.push_str(", ");
        }
        out.push_str(&render.word(w));
    }
    out.push('}');
    out
}

fn render_vertex_set(render: &dyn WordRender, vertices: &[usize]) -> String {
    let mut out = String::from("{");
    for (k, v) in vertices.iter().enumerate() {
        if k > 0 {
            out.push_str(", ");
        }
        out.push_str(&render.vertex(*v));
    }
    out.push('}');
    out
}

/// Tolerances and truncation schedule shared by the checkers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassifyConfig {
    pub eps_eq: f64,
    pub n_max: u32,
    pub tol: f64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            eps_eq: crate::operator::DEFAULT_EPS_EQ,
            n_max: 4,
            tol: 1e-9,
        }
    }
}

// ---------------------------------------------------------------------------
// Self-adjointness
// ---------------------------------------------------------------------------

pub fn check_self_adjoint(op: &GraphOperator, mode: Mode, eps_eq: f64) -> Verdict {
    check_self_adjoint_with(op, mode, eps_eq, op.graph().as_ref())
}

pub fn check_self_adjoint_with(
    op: &GraphOperator,
    mode: Mode,
    eps_eq: f64,
    render: &dyn WordRender,
) -> Verdict {
    let property = Property::SelfAdjoint;
    match mode {
        Mode::Paper => {
            // The pairing X ⊔ X^-1 exists exactly when the path part of the
            // support is closed under inverse with conjugate coefficients; a
            // reduced path never equals its own inverse, so no search is
            // needed. Vertex coefficients must be real.
            for (word, coefficient) in op.terms() {
                if word.is_vertex() {
                    if (coefficient - coefficient.conj()).norm() > eps_eq {
                        return Verdict::no(
                            property,
                            mode,
                            format!(
                                "vertex coefficient t({}) = {} is not real",
                                render.word(word),
                                render_coefficient(coefficient)
                            ),
                        );
                    }
                    continue;
                }
                let partner = op.coefficient(&word.inverse());
                if (coefficient - partner.conj()).norm() > eps_eq {
                    return Verdict::no(
                        property,
                        mode,
                        format!(
                            "pairing broken at {}: t = {} but conj(t({})) = {}",
                            render.word(word),
                            render_coefficient(coefficient),
                            render.word(&word.inverse()),
                            render_coefficient(partner.conj())
                        ),
                    );
                }
            }
            Verdict::yes(property, mode)
        }
        Mode::Oracle | Mode::Numeric => {
            let adjoint = op.adjoint();
            for word in op.support().chain(adjoint.support()) {
                let diff = op.coefficient(word) - adjoint.coefficient(word);
                if diff.norm() > eps_eq {
                    return Verdict::no(
                        property,
                        Mode::Oracle,
                        format!(
                            "T* - T has coefficient {} at {}",
                            render_coefficient(-diff),
                            render.word(word)
                        ),
                    );
                }
            }
            Verdict::yes(property, Mode::Oracle)
        }
    }
}

// ---------------------------------------------------------------------------
// Unitarity
// ---------------------------------------------------------------------------

/// A support set is alternatively disconnected when it has at least two
/// elements and no two distinct reduced-path members compose in either
/// shadow pairing. Vertex members impose nothing.
pub fn is_alternatively_disconnected(graph: &ShadowedGraph, words: &[Word]) -> bool {
    if words.len() < 2 {
        return false;
    }
    let paths: Vec<&Word> = words.iter().filter(|w| w.is_path()).collect();
    for (i, w1) in paths.iter().enumerate() {
        for (j, w2) in paths.iter().enumerate() {
            if i == j {
                continue;
            }
            if !graph.product(&w1.inverse(), w2).is_empty_word() {
                return false;
            }
            if !graph.product(w1, &w2.inverse()).is_empty_word() {
                return false;
            }
        }
    }
    true
}

pub fn check_unitary(op: &GraphOperator, mode: Mode, eps_eq: f64) -> Verdict {
    check_unitary_with(op, mode, eps_eq, op.graph().as_ref())
}

pub fn check_unitary_with(
    op: &GraphOperator,
    mode: Mode,
    eps_eq: f64,
    render: &dyn WordRender,
) -> Verdict {
    let property = Property::Unitary;
    match mode {
        Mode::Paper => {
            if op.graph().vertex_count() == 1 {
                check_unitary_paper_one_vertex(op, eps_eq, render)
            } else {
                check_unitary_paper_multi_vertex(op, eps_eq, render)
            }
        }
        Mode::Oracle | Mode::Numeric => {
            let identity = GraphOperator::identity(op.graph().clone());
            let adjoint = op.adjoint();
            let left = adjoint.multiply(op).expect("same graph");
            if let Some(witness) = identity_defect(&left, &identity, eps_eq, render, "T*T") {
                return Verdict::no(property, Mode::Oracle, witness);
            }
            let right = op.multiply(&adjoint).expect("same graph");
            if let Some(witness) = identity_defect(&right, &identity, eps_eq, render, "TT*") {
                return Verdict::no(property, Mode::Oracle, witness);
            }
            Verdict::yes(property, Mode::Oracle)
        }
    }
}

/// Residual terms of `product - identity`, rendered for a witness.
fn identity_defect(
    product: &GraphOperator,
    identity: &GraphOperator,
    eps_eq: f64,
    render: &dyn WordRender,
    label: &str,
) -> Option<String> {
    let mut residuals: Vec<String> = Vec::new();
    for word in product.support().chain(identity.support()) {
        let diff = product.coefficient(word) - identity.coefficient(word);
        if diff.norm() > eps_eq {
            let rendered = format!("{} at {}", render_coefficient(diff), render.word(word));
            if !residuals.contains(&rendered) {
                residuals.push(rendered);
            }
        }
    }
    if residuals.is_empty() {
        None
    } else {
        Some(format!("{label} - 1 has terms: {}", residuals.join("; ")))
    }
}

fn check_unitary_paper_one_vertex(
    op: &GraphOperator,
    eps_eq: f64,
    render: &dyn WordRender,
) -> Verdict {
    let property = Property::Unitary;
    let mode = Mode::Paper;
    let support: Vec<&Word> = op.support().collect();
    if support.is_empty() {
        return Verdict::no(
            property,
            mode,
            "empty support: Supp^-1 Supp = {} differs from {v_O}".to_string(),
        );
    }
    // On a one-vertex graph every product is defined, so Supp^-1 Supp is the
    // singleton {v_O} exactly when all pairwise quotients collapse.
    for w1 in &support {
        for w2 in &support {
            let quotient = op.graph().product(&w1.inverse(), w2);
            if quotient.is_path() {
                return Verdict::no(
                    property,
                    mode,
                    format!(
                        "Supp^-1 Supp contains {} = ({})^-1 ({})",
                        render.word(&quotient),
                        render.word(w1),
                        render.word(w2)
                    ),
                );
            }
        }
    }
    let mut sum = Complex64::ZERO;
    for (_, c1) in op.terms() {
        for (_, c2) in op.terms() {
            sum += c1.conj() * c2;
        }
    }
    if (sum - Complex64::ONE).norm() > eps_eq {
        return Verdict::no(
            property,
            mode,
            format!(
                "sum of conj(t_w1) t_w2 over support pairs is {}, not 1",
                render_coefficient(sum)
            ),
        );
    }
    Verdict::yes(property, mode)
}

fn check_unitary_paper_multi_vertex(
    op: &GraphOperator,
    eps_eq: f64,
    render: &dyn WordRender,
) -> Verdict {
    let property = Property::Unitary;
    let mode = Mode::Paper;
    let support: Vec<Word> = op.support().cloned().collect();
    if !is_alternatively_disconnected(op.graph(), &support) {
        return Verdict::no(
            property,
            mode,
            alternative_disconnectedness_witness(op.graph(), &support, render),
        );
    }
    // Under alternative disconnectedness the diagonal products w^-1 w are all
    // that survive, so the coverage condition reduces to the range set.
    let graph = op.graph();
    let ranges: BTreeSet<usize> = support
        .iter()
        .map(|w| graph.range(w).expect("support words are nonempty"))
        .collect();
    let all: Vec<usize> = (0..graph.vertex_count()).collect();
    let ranges: Vec<usize> = ranges.into_iter().collect();
    if ranges != all {
        return Verdict::no(
            property,
            mode,
            format!(
                "Pi = {} differs from V = {}",
                render_vertex_set(render, &ranges),
                render_vertex_set(render, &all)
            ),
        );
    }
    for v in 0..graph.vertex_count() {
        let mut sum = 0.0_f64;
        for (word, coefficient) in op.terms() {
            if graph.range(word).expect("nonempty") == v {
                sum += coefficient.norm_sqr();
            }
        }
        if Float::abs(sum - 1.0) > eps_eq {
            return Verdict::no(
                property,
                mode,
                format!(
                    "sum of |t_w|^2 over words with range {} is {sum}, not 1",
                    render.vertex(v)
                ),
            );
        }
    }
    Verdict::yes(property, mode)
}

fn alternative_disconnectedness_witness(
    graph: &ShadowedGraph,
    support: &[Word],
    render: &dyn WordRender,
) -> String {
    if support.len() < 2 {
        return "support has fewer than two elements".to_string();
    }
    let paths: Vec<&Word> = support.iter().filter(|w| w.is_path()).collect();
    for (i, w1) in paths.iter().enumerate() {
        for (j, w2) in paths.iter().enumerate() {
            if i == j {
                continue;
            }
            if !graph.product(&w1.inverse(), w2).is_empty_word() {
                return format!(
                    "({})^-1 and {} are admissible",
                    render.word(w1),
                    render.word(w2)
                );
            }
            if !graph.product(w1, &w2.inverse()).is_empty_word() {
                return format!(
                    "{} and ({})^-1 are admissible",
                    render.word(w1),
                    render.word(w2)
                );
            }
        }
    }
    "support is not alternatively disconnected".to_string()
}

// ---------------------------------------------------------------------------
// Per-vertex criterion sums shared by normality and hyponormality
// ---------------------------------------------------------------------------

/// For each vertex `v`: the sums of `conj(t_{w1}) t_{w2}` over support pairs
/// with `w1^-1 w2` nonempty of range `v`, and of `t_{y1} conj(t_{y2})` over
/// pairs with `y1 y2^-1` nonempty of range `v`.
fn per_vertex_sums(op: &GraphOperator) -> (Vec<Complex64>, Vec<Complex64>) {
    let graph = op.graph();
    let n = graph.vertex_count();
    let mut lhs = alloc::vec![Complex64::ZERO; n];
    let mut rhs = alloc::vec![Complex64::ZERO; n];
    for (w1, c1) in op.terms() {
        for (w2, c2) in op.terms() {
            let left = graph.product(&w1.inverse(), w2);
            if !left.is_empty_word() {
                lhs[graph.range(&left).expect("nonempty")] += c1.conj() * c2;
            }
            let right = graph.product(w1, &w2.inverse());
            if !right.is_empty_word() {
                rhs[graph.range(&right).expect("nonempty")] += c1 * c2.conj();
            }
        }
    }
    (lhs, rhs)
}

/// Outcome of comparing the per-vertex sums with `>=` at every vertex.
/// Sums that fail to be real make the printed criterion inapplicable.
fn compare_per_vertex_sums(
    op: &GraphOperator,
    eps_eq: f64,
    render: &dyn WordRender,
) -> Result<(), (Outcome, String)> {
    let (lhs, rhs) = per_vertex_sums(op);
    for (v, (l, r)) in lhs.iter().zip(rhs.iter()).enumerate() {
        if Float::abs(l.im) > eps_eq || Float::abs(r.im) > eps_eq {
            return Err((
                Outcome::Inapplicable,
                format!(
                    "criterion sum at vertex {} is not real: lhs = {}, rhs = {}",
                    render.vertex(v),
                    render_coefficient(*l),
                    render_coefficient(*r)
                ),
            ));
        }
        if l.re < r.re - eps_eq {
            return Err((
                Outcome::No,
                format!(
                    "at vertex {}: sum over T*T pairs {} < sum over TT* pairs {}",
                    render.vertex(v),
                    l.re,
                    r.re
                ),
            ));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Normality
// ---------------------------------------------------------------------------

pub fn check_normal(op: &GraphOperator, mode: Mode, eps_eq: f64) -> Verdict {
    check_normal_with(op, mode, eps_eq, op.graph().as_ref())
}

pub fn check_normal_with(
    op: &GraphOperator,
    mode: Mode,
    eps_eq: f64,
    render: &dyn WordRender,
) -> Verdict {
    let property = Property::Normal;
    match mode {
        Mode::Paper => {
            let profile = op.support_profile();
            if profile.r_left != profile.r_right {
                return Verdict::no(
                    property,
                    mode,
                    format!(
                        "R_(T*T) = {} differs from R_(TT*) = {}",
                        render_vertex_set(render, &profile.r_left),
                        render_vertex_set(render, &profile.r_right)
                    ),
                );
            }
            match compare_per_vertex_sums(op, eps_eq, render) {
                Ok(()) => Verdict::yes_with(
                    property,
                    mode,
                    "per-vertex sums compared with the displayed >=; the equality reading is stricter"
                        .to_string(),
                ),
                Err((outcome, witness)) => Verdict {
                    property,
                    mode,
                    outcome,
                    witness: Some(witness),
                },
            }
        }
        Mode::Oracle | Mode::Numeric => {
            let adjoint = op.adjoint();
            let left = adjoint.multiply(op).expect("same graph");
            let right = op.multiply(&adjoint).expect("same graph");
            let commutator = left.sub(&right).expect("same graph");
            let mut worst: Option<(&Word, Complex64)> = None;
            for (word, coefficient) in commutator.terms() {
                if coefficient.norm() > eps_eq {
                    match worst {
                        Some((_, best)) if best.norm() >= coefficient.norm() => {}
                        _ => worst = Some((word, coefficient)),
                    }
                }
            }
            match worst {
                None => Verdict::yes(property, Mode::Oracle),
                Some((word, coefficient)) => {
                    let left_supp: Vec<Word> = left.support().cloned().collect();
                    let right_supp: Vec<Word> = right.support().cloned().collect();
                    Verdict::no(
                        property,
                        Mode::Oracle,
                        format!(
                            "S(T) has coefficient {} at {}; Supp(T*T) = {}, Supp(TT*) = {}",
                            render_coefficient(coefficient),
                            render.word(word),
                            render_word_set(render, &left_supp),
                            render_word_set(render, &right_supp)
                        ),
                    )
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Hyponormality
// ---------------------------------------------------------------------------

/// The printed criterion: range-set inclusion, then per-vertex sums.
pub fn check_hyponormal_criterion(op: &GraphOperator, eps_eq: f64) -> Verdict {
    check_hyponormal_criterion_with(op, eps_eq, op.graph().as_ref())
}

pub fn check_hyponormal_criterion_with(
    op: &GraphOperator,
    eps_eq: f64,
    render: &dyn WordRender,
) -> Verdict {
    let property = Property::Hyponormal;
    let mode = Mode::Paper;
    let profile = op.support_profile();
    let left: BTreeSet<usize> = profile.r_left.iter().copied().collect();
    for v in &profile.r_right {
        if !left.contains(v) {
            return Verdict::no(
                property,
                mode,
                format!(
                    "vertex {} lies in R_(TT*) = {} but not in R_(T*T) = {}",
                    render.vertex(*v),
                    render_vertex_set(render, &profile.r_right),
                    render_vertex_set(render, &profile.r_left)
                ),
            );
        }
    }
    match compare_per_vertex_sums(op, eps_eq, render) {
        Ok(()) => Verdict::yes(property, mode),
        Err((outcome, witness)) => Verdict {
            property,
            mode,
            outcome,
            witness: Some(witness),
        },
    }
}

/// Positivity probe: smallest eigenvalues of the exact self-commutator Gram
/// truncations over nested balls. Refutes hyponormality when some level dips
/// below `-tol`; otherwise stays undetermined. Never answers yes.
pub fn check_hyponormal_numeric(
    op: &GraphOperator,
    n_max: u32,
    tol: f64,
) -> Result<Verdict, MatrixError> {
    let (verdict, _) = hyponormal_numeric_with_trace(op, n_max, tol)?;
    Ok(verdict)
}

pub fn hyponormal_numeric_with_trace(
    op: &GraphOperator,
    n_max: u32,
    tol: f64,
) -> Result<(Verdict, SpectralTrace), MatrixError> {
    let property = Property::Hyponormal;
    let mode = Mode::Numeric;
    let trace = matrix::spectral_trace(op, n_max)?;
    for level in &trace.levels {
        if level.lambda_min < -tol {
            let verdict = Verdict::no(
                property,
                mode,
                format!(
                    "lambda_min = {} at truncation n = {} (dim {})",
                    level.lambda_min, level.radius, level.dim
                ),
            );
            return Ok((verdict, trace));
        }
    }
    let verdict = Verdict {
        property,
        mode,
        outcome: Outcome::Undetermined,
        witness: Some(format!(
            "lambda_min >= -{tol} on every truncation up to n = {n_max}"
        )),
    };
    Ok((verdict, trace))
}

// ---------------------------------------------------------------------------
// Combined report
// ---------------------------------------------------------------------------

/// Paper-vs-oracle disagreement on one property, both sides decisive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub property: Property,
    pub paper: Outcome,
    pub oracle: Outcome,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub profile: SupportProfile,
    pub verdicts: Vec<Verdict>,
    pub discrepancies: Vec<Discrepancy>,
    pub trace: SpectralTrace,
}

/// Runs every checker in both modes and assembles the discrepancy list.
pub fn classify(
    op: &GraphOperator,
    config: &ClassifyConfig,
) -> Result<ClassificationReport, MatrixError> {
    classify_with(op, config, op.graph().clone().as_ref())
}

pub fn classify_with(
    op: &GraphOperator,
    config: &ClassifyConfig,
    render: &dyn WordRender,
) -> Result<ClassificationReport, MatrixError> {
    let eps = config.eps_eq;
    let sa_paper = check_self_adjoint_with(op, Mode::Paper, eps, render);
    let sa_oracle = check_self_adjoint_with(op, Mode::Oracle, eps, render);
    // The support-pairing criterion is equivalent to coefficient-wise
    // adjoint equality, so the two modes cannot disagree.
    debug_assert_eq!(sa_paper.outcome, sa_oracle.outcome);
    let un_paper = check_unitary_with(op, Mode::Paper, eps, render);
    let un_oracle = check_unitary_with(op, Mode::Oracle, eps, render);
    let no_paper = check_normal_with(op, Mode::Paper, eps, render);
    let no_oracle = check_normal_with(op, Mode::Oracle, eps, render);
    let hypo_criterion = check_hyponormal_criterion_with(op, eps, render);
    let (hypo_numeric, trace) = hyponormal_numeric_with_trace(op, config.n_max, config.tol)?;

    let verdicts = alloc::vec![
        sa_paper, sa_oracle, un_paper, un_oracle, no_paper, no_oracle, hypo_criterion,
        hypo_numeric,
    ];
    let discrepancies = collect_discrepancies(&verdicts);
    Ok(ClassificationReport {
        profile: op.support_profile(),
        verdicts,
        discrepancies,
        trace,
    })
}

/// Pairs each property's paper-mode outcome with its oracle (or numeric)
/// outcome and lists the properties where both are decisive yet different.
pub fn collect_discrepancies(verdicts: &[Verdict]) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    for property in [
        Property::SelfAdjoint,
        Property::Unitary,
        Property::Normal,
        Property::Hyponormal,
    ] {
        let paper = verdicts
            .iter()
            .find(|v| v.property == property && v.mode == Mode::Paper);
        let other = verdicts
            .iter()
            .find(|v| v.property == property && v.mode != Mode::Paper);
        if let (Some(paper), Some(other)) = (paper, other) {
            if paper.outcome.is_decisive()
                && other.outcome.is_decisive()
                && paper.outcome != other.outcome
            {
                out.push(Discrepancy {
                    property,
                    paper: paper.outcome,
                    oracle: other.outcome,
                });
            }
        }
    }
    out
}
