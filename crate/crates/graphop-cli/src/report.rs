//! The machine-readable classification report, schema `graphop-report/1`.
//!
//! Field order is fixed by the struct declarations and every list is in
//! canonical order, so identical inputs serialize byte-identically.

use graphop_core::classify::{ClassificationReport, Mode, WordRender};
use graphop_core::freegroup::FreeGroupContext;
use graphop_core::operator::canonical_zero;
use graphop_core::{GraphOperator, ShadowedGraph, SupportProfile};
use serde::Serialize;

pub const SCHEMA: &str = "graphop-report/1";

/// Which verdict modes to include in the document.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunMode {
    Paper,
    Oracle,
    Both,
}

impl RunMode {
    pub fn parse(text: &str) -> Option<RunMode> {
        match text {
            "paper" => Some(RunMode::Paper),
            "oracle" => Some(RunMode::Oracle),
            "both" => Some(RunMode::Both),
            _ => None,
        }
    }

    fn includes(self, mode: Mode) -> bool {
        match self {
            RunMode::Both => true,
            RunMode::Paper => mode == Mode::Paper,
            RunMode::Oracle => mode == Mode::Oracle || mode == Mode::Numeric,
        }
    }
}

#[derive(Serialize)]
pub struct ReportDocument {
    pub schema: String,
    pub graph: GraphSummary,
    pub operator: OperatorSummary,
    #[serde(rename = "supportProfile")]
    pub support_profile: SupportProfileDoc,
    pub verdicts: Vec<VerdictDoc>,
    pub discrepancies: Vec<DiscrepancyDoc>,
    #[serde(rename = "spectralTrace", skip_serializing_if = "Option::is_none")]
    pub spectral_trace: Option<SpectralTraceDoc>,
    #[serde(rename = "freeGroup", skip_serializing_if = "Option::is_none")]
    pub free_group: Option<FreeGroupDoc>,
}

#[derive(Serialize)]
pub struct GraphSummary {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Serialize)]
pub struct EdgeDoc {
    pub id: String,
    pub from: String,
    pub to: String,
}

#[derive(Serialize)]
pub struct OperatorSummary {
    pub terms: Vec<TermDoc>,
}

#[derive(Serialize)]
pub struct TermDoc {
    pub word: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Serialize)]
pub struct SupportProfileDoc {
    pub supp: Vec<String>,
    #[serde(rename = "suppV")]
    pub supp_v: Vec<String>,
    #[serde(rename = "suppVc")]
    pub supp_vc: Vec<String>,
    #[serde(rename = "piStarLeft")]
    pub pi_star_left: Vec<String>,
    #[serde(rename = "piStarRight")]
    pub pi_star_right: Vec<String>,
    #[serde(rename = "rLeft")]
    pub r_left: Vec<String>,
    #[serde(rename = "rRight")]
    pub r_right: Vec<String>,
}

#[derive(Serialize)]
pub struct VerdictDoc {
    pub property: String,
    pub mode: String,
    pub result: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Serialize)]
pub struct DiscrepancyDoc {
    pub property: String,
    pub paper: String,
    pub oracle: String,
}

#[derive(Serialize)]
pub struct SpectralTraceDoc {
    pub levels: Vec<TraceLevelDoc>,
}

#[derive(Serialize)]
pub struct TraceLevelDoc {
    pub n: u32,
    pub dim: usize,
    #[serde(rename = "lambdaMin")]
    pub lambda_min: f64,
}

#[derive(Serialize)]
pub struct FreeGroupDoc {
    pub generators: usize,
    pub names: Vec<String>,
}

pub fn graph_summary(graph: &ShadowedGraph) -> GraphSummary {
    let base = graph.base();
    GraphSummary {
        vertices: (0..base.vertex_count())
            .map(|v| base.vertex_name(v).0.clone())
            .collect(),
        edges: (0..base.edge_count())
            .map(|e| {
                let (from, to) = base.edge_endpoints(e);
                EdgeDoc {
                    id: base.edge_name(e).0.clone(),
                    from: base.vertex_name(from).0.clone(),
                    to: base.vertex_name(to).0.clone(),
                }
            })
            .collect(),
    }
}

fn operator_summary(op: &GraphOperator, render: &dyn WordRender) -> OperatorSummary {
    OperatorSummary {
        terms: op
            .terms()
            .map(|(word, c)| TermDoc {
                word: render.word(word),
                re: canonical_zero(c.re),
                im: canonical_zero(c.im),
            })
            .collect(),
    }
}

fn profile_doc(profile: &SupportProfile, render: &dyn WordRender) -> SupportProfileDoc {
    let words = |ws: &[graphop_core::Word]| ws.iter().map(|w| render.word(w)).collect();
    let vertices = |vs: &[usize]| vs.iter().map(|v| render.vertex(*v)).collect();
    SupportProfileDoc {
        supp: words(&profile.supp),
        supp_v: words(&profile.supp_vertices),
        supp_vc: words(&profile.supp_paths),
        pi_star_left: words(&profile.pi_star_left),
        pi_star_right: words(&profile.pi_star_right),
        r_left: vertices(&profile.r_left),
        r_right: vertices(&profile.r_right),
    }
}

/// Builds the document for a generic classification.
pub fn build_document(
    op: &GraphOperator,
    report: &ClassificationReport,
    run_mode: RunMode,
) -> ReportDocument {
    let render: &dyn WordRender = op.graph().as_ref();
    build_with(op, report, run_mode, render, None)
}

/// Builds the document for a free-group classification, rendered in
/// generator spellings.
pub fn build_free_document(
    ctx: &FreeGroupContext,
    op: &GraphOperator,
    report: &ClassificationReport,
    run_mode: RunMode,
) -> ReportDocument {
    let free = FreeGroupDoc {
        generators: ctx.generator_count(),
        names: (0..ctx.generator_count())
            .map(|k| ctx.generator_name(k).to_string())
            .collect(),
    };
    build_with(op, report, run_mode, ctx, Some(free))
}

fn build_with(
    op: &GraphOperator,
    report: &ClassificationReport,
    run_mode: RunMode,
    render: &dyn WordRender,
    free_group: Option<FreeGroupDoc>,
) -> ReportDocument {
    let verdicts = report
        .verdicts
        .iter()
        .filter(|v| run_mode.includes(v.mode))
        .map(|v| VerdictDoc {
            property: v.property.to_string(),
            mode: v.mode.to_string(),
            result: v.outcome.to_string(),
            witness: v.witness.clone(),
        })
        .collect();
    let discrepancies = if run_mode == RunMode::Both {
        report
            .discrepancies
            .iter()
            .map(|d| DiscrepancyDoc {
                property: d.property.to_string(),
                paper: d.paper.to_string(),
                oracle: d.oracle.to_string(),
            })
            .collect()
    } else {
        Vec::new()
    };
    let spectral_trace = if run_mode == RunMode::Paper {
        None
    } else {
        Some(SpectralTraceDoc {
            levels: report
                .trace
                .levels
                .iter()
                .map(|l| TraceLevelDoc {
                    n: l.radius,
                    dim: l.dim,
                    lambda_min: canonical_zero(l.lambda_min),
                })
                .collect(),
        })
    };
    ReportDocument {
        schema: SCHEMA.to_string(),
        graph: graph_summary(op.graph()),
        operator: operator_summary(op, render),
        support_profile: profile_doc(&report.profile, render),
        verdicts,
        discrepancies,
        spectral_trace,
        free_group,
    }
}

pub fn to_json(document: &ReportDocument) -> String {
    let mut text = serde_json::to_string_pretty(document).expect("document serializes");
    text.push('\n');
    text
}

/// Human-readable rendering with the same content and ordering.
pub fn to_text(document: &ReportDocument) -> String {
    let mut out = String::new();
    out.push_str(&format!("schema: {}\n", document.schema));
    out.push_str(&format!(
        "graph: {} vertices, {} edges\n",
        document.graph.vertices.len(),
        document.graph.edges.len()
    ));
    out.push_str(&format!("operator: {} terms\n", document.operator.terms.len()));
    for term in &document.operator.terms {
        out.push_str(&format!("  term {} {} {}\n", term.re, term.im, term.word));
    }
    let set = |items: &[String]| -> String {
        format!("{{{}}}", items.join(", "))
    };
    out.push_str(&format!("supp: {}\n", set(&document.support_profile.supp)));
    out.push_str(&format!("suppV: {}\n", set(&document.support_profile.supp_v)));
    out.push_str(&format!("suppVc: {}\n", set(&document.support_profile.supp_vc)));
    out.push_str(&format!(
        "piStarLeft: {}\n",
        set(&document.support_profile.pi_star_left)
    ));
    out.push_str(&format!(
        "piStarRight: {}\n",
        set(&document.support_profile.pi_star_right)
    ));
    out.push_str(&format!("rLeft: {}\n", set(&document.support_profile.r_left)));
    out.push_str(&format!("rRight: {}\n", set(&document.support_profile.r_right)));
    out.push_str("verdicts:\n");
    for verdict in &document.verdicts {
        match &verdict.witness {
            Some(witness) => out.push_str(&format!(
                "  {} {}: {} ({witness})\n",
                verdict.property, verdict.mode, verdict.result
            )),
            None => out.push_str(&format!(
                "  {} {}: {}\n",
                verdict.property, verdict.mode, verdict.result
            )),
        }
    }
    if document.discrepancies.is_empty() {
        out.push_str("discrepancies: none\n");
    } else {
        out.push_str("discrepancies:\n");
        for d in &document.discrepancies {
            out.push_str(&format!(
                "  {}: paper {} vs oracle {}\n",
                d.property, d.paper, d.oracle
            ));
        }
    }
    if let Some(trace) = &document.spectral_trace {
        out.push_str("spectralTrace:\n");
        for level in &trace.levels {
            out.push_str(&format!(
                "  n={} dim={} lambdaMin={}\n",
                level.n, level.dim, level.lambda_min
            ));
        }
    }
    out
}
