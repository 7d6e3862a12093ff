//! Line-oriented file formats.
//!
//! Graph files (`.gg`): `vertex <id>` and `edge <id> <from> -> <to>` lines,
//! `#` comments, blank lines ignored. Declarations may arrive in any order;
//! a two-pass parse collects vertices first so edge errors are precise.
//!
//! Operator files (`.gop`): `term <re> <im> <word>` with the word in graph
//! word syntax (`@v` or space-separated letters `e` / `e^-1`). Duplicate
//! words are summed. Free-group operator files (`.fop`) use generator
//! spellings with `e` as the identity.

use std::sync::Arc;

use graphop_core::freegroup::FreeGroupContext;
use graphop_core::operator::{canonical_zero, render_coefficient};
use graphop_core::{Complex64, DirectedGraph, GraphBuilder, GraphOperator, ShadowedGraph};

use crate::error::CliError;

fn line_error(line: usize, message: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("line {line}: {message}"))
}

/// Lines that carry content: `(1-based number, trimmed text)`.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, line)| (k + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

pub fn parse_graph(text: &str) -> Result<DirectedGraph, CliError> {
    let mut builder = GraphBuilder::new();
    for (number, line) in content_lines(text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["vertex", id] => builder
                .add_vertex(id)
                .map_err(|e| line_error(number, e))?,
            ["vertex", ..] => {
                return Err(line_error(number, "malformed line: expected `vertex <id>`"))
            }
            ["edge", ..] => {}
            _ => {
                return Err(line_error(
                    number,
                    format!("malformed line: `{line}`"),
                ))
            }
        }
    }
    for (number, line) in content_lines(text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["edge", id, from, "->", to] => builder
                .add_edge(id, from, to)
                .map_err(|e| line_error(number, e))?,
            ["edge", ..] => {
                return Err(line_error(
                    number,
                    "malformed line: expected `edge <id> <from> -> <to>`",
                ))
            }
            _ => {}
        }
    }
    builder.finish().map_err(|e| CliError::Parse(e.to_string()))
}

fn parse_term_line(number: usize, line: &str) -> Result<(Complex64, String), CliError> {
    let mut tokens = line.split_whitespace();
    match tokens.next() {
        Some("term") => {}
        _ => return Err(line_error(number, format!("malformed line: `{line}`"))),
    }
    let re: f64 = tokens
        .next()
        .ok_or_else(|| line_error(number, "malformed line: missing coefficient"))?
        .parse()
        .map_err(|_| line_error(number, "malformed line: bad real part"))?;
    let im: f64 = tokens
        .next()
        .ok_or_else(|| line_error(number, "malformed line: missing coefficient"))?
        .parse()
        .map_err(|_| line_error(number, "malformed line: bad imaginary part"))?;
    if !re.is_finite() || !im.is_finite() {
        return Err(line_error(number, "coefficient must be finite"));
    }
    let word_text: Vec<&str> = tokens.collect();
    if word_text.is_empty() {
        return Err(line_error(number, "malformed line: missing word"));
    }
    Ok((Complex64::new(re, im), word_text.join(" ")))
}

pub fn parse_operator(
    text: &str,
    graph: &Arc<ShadowedGraph>,
    eps_zero: f64,
) -> Result<GraphOperator, CliError> {
    let mut terms = Vec::new();
    for (number, line) in content_lines(text) {
        let (coefficient, word_text) = parse_term_line(number, line)?;
        let word = graph
            .parse_word(&word_text)
            .map_err(|e| line_error(number, e))?;
        terms.push((word, coefficient));
    }
    GraphOperator::with_eps_zero(graph.clone(), terms, eps_zero)
        .map_err(|e| CliError::Parse(e.to_string()))
}

pub fn parse_free_operator(
    text: &str,
    ctx: &FreeGroupContext,
    eps_zero: f64,
) -> Result<GraphOperator, CliError> {
    let mut terms = Vec::new();
    for (number, line) in content_lines(text) {
        let (coefficient, word_text) = parse_term_line(number, line)?;
        let word = ctx
            .parse_word(&word_text)
            .map_err(|e| line_error(number, e))?;
        terms.push((word, coefficient));
    }
    GraphOperator::with_eps_zero(ctx.graph().clone(), terms, eps_zero)
        .map_err(|e| CliError::Parse(e.to_string()))
}

/// Canonical `.gop` text: one `term <re> <im> <word>` line per term in ball
/// order, floats in shortest round-trip form.
pub fn write_operator(op: &GraphOperator) -> String {
    let graph = op.graph();
    let mut out = String::new();
    for (word, coefficient) in op.terms() {
        out.push_str(&format!(
            "term {} {} {}\n",
            canonical_zero(coefficient.re),
            canonical_zero(coefficient.im),
            graph.render_word(word)
        ));
    }
    out
}

pub fn write_free_operator(op: &GraphOperator, ctx: &FreeGroupContext) -> String {
    let mut out = String::new();
    for (word, coefficient) in op.terms() {
        out.push_str(&format!(
            "term {} {} {}\n",
            canonical_zero(coefficient.re),
            canonical_zero(coefficient.im),
            ctx.render_word(word)
        ));
    }
    out
}

/// `re`, `re+imi`, or `re-imi`; shared by CSV and text output.
pub fn format_complex(z: Complex64) -> String {
    render_coefficient(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use graphop_core::Word;

    #[test]
    fn parses_a_graph_with_comments_and_any_order() {
        let text = "# demo\nedge e1 v1 -> v2\n\nvertex v1\nvertex v2\n";
        let graph = parse_graph(text).unwrap();
        assert_eq!(graph.vertex_count(), 2);
        assert_eq!(graph.edge_count(), 1);
    }

    #[test]
    fn graph_errors_carry_line_numbers() {
        let err = parse_graph("vertex v1\nedge e1 v1 -> v9\n").unwrap_err();
        assert_eq!(
            err.to_string(),
            "line 2: unknown endpoint `v9`"
        );
        let err = parse_graph("vertex v1\nvertex v1\n").unwrap_err();
        assert!(err.to_string().contains("duplicate id"));
        let err = parse_graph("vertex v1\nedge e1 v1 v1\n").unwrap_err();
        assert!(err.to_string().contains("line 2: malformed line"));
        let err = parse_graph("# nothing\n").unwrap_err();
        assert!(err.to_string().contains("empty vertex set"));
    }

    #[test]
    fn operator_round_trip_is_exact() {
        let graph = Arc::new(ShadowedGraph::new(
            parse_graph("vertex v1\nvertex v2\nedge e1 v1 -> v2\nedge e2 v1 -> v2\n").unwrap(),
        ));
        let text = "term 0.1 -2.5 e1\nterm 1 0 @v1\nterm 0.30000000000000004 0 e1 e2^-1\n";
        let op = parse_operator(text, &graph, 1e-12).unwrap();
        let written = write_operator(&op);
        let reparsed = parse_operator(&written, &graph, 1e-12).unwrap();
        assert_eq!(op, reparsed);
        for (word, c) in op.terms() {
            assert_eq!(c, reparsed.coefficient(word));
        }
    }

    #[test]
    fn duplicate_words_are_summed() {
        let graph = Arc::new(ShadowedGraph::new(
            parse_graph("vertex v1\nvertex v2\nedge e1 v1 -> v2\n").unwrap(),
        ));
        let op = parse_operator("term 1 0 e1\nterm 0.5 1 e1\n", &graph, 1e-12).unwrap();
        assert_eq!(op.term_count(), 1);
        let word = graph.parse_word("e1").unwrap();
        assert_eq!(op.coefficient(&word), Complex64::new(1.5, 1.0));
    }

    #[test]
    fn operator_errors_carry_line_numbers() {
        let graph = Arc::new(ShadowedGraph::new(
            parse_graph("vertex v1\nvertex v2\nedge e1 v1 -> v2\n").unwrap(),
        ));
        let err = parse_operator("term x 0 e1\n", &graph, 1e-12).unwrap_err();
        assert!(err.to_string().contains("line 1"));
        let err = parse_operator("term 1 0 e9\n", &graph, 1e-12).unwrap_err();
        assert!(err.to_string().contains("unknown edge"));
        let err = parse_operator("term 1 0\n", &graph, 1e-12).unwrap_err();
        assert!(err.to_string().contains("missing word"));
        let err = parse_operator("term inf 0 e1\n", &graph, 1e-12).unwrap_err();
        assert!(err.to_string().contains("finite"));
    }

    #[test]
    fn free_operator_uses_generator_spelling() {
        let ctx = FreeGroupContext::new(2).unwrap();
        let op = parse_free_operator("term 1 0 a\nterm 1 0 a b\n", &ctx, 1e-12).unwrap();
        assert_eq!(op.term_count(), 2);
        let written = write_free_operator(&op, &ctx);
        assert_eq!(written, "term 1 0 a\nterm 1 0 a b\n");
        let identity = parse_free_operator("term 5 0 e\n", &ctx, 1e-12).unwrap();
        assert_eq!(identity.coefficient(&Word::Vertex(0)), Complex64::new(5.0, 0.0));
    }
}
