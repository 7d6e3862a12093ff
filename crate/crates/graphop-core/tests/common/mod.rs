//! Shared pseudo-random generators for the property suites.

use std::sync::Arc;

use graphop_core::{Complex64, DirectedGraph, GraphOperator, ShadowedGraph, SignedEdge, Word};
use rand::Rng;

/// Random connected-ish directed graph with at most `max_vertices` vertices
/// and at most `max_edges` edges (at least one of each).
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> Arc<ShadowedGraph> {
    let nv = rng.gen_range(1..=max_vertices);
    let ne = rng.gen_range(1..=max_edges);
    let vertices: Vec<String> = (1..=nv).map(|k| format!("v{k}")).collect();
    let edges: Vec<(String, String, String)> = (1..=ne)
        .map(|k| {
            let from = rng.gen_range(0..nv);
            let to = rng.gen_range(0..nv);
            (
                format!("e{k}"),
                format!("v{}", from + 1),
                format!("v{}", to + 1),
            )
        })
        .collect();
    let graph = DirectedGraph::new(
        vertices.iter().map(|s| s.as_str()),
        edges.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())),
    )
    .expect("generated names are valid and unique");
    Arc::new(ShadowedGraph::new(graph))
}

/// Letters leaving `vertex`, in letter order.
pub fn letters_from(graph: &ShadowedGraph, vertex: usize) -> Vec<SignedEdge> {
    graph
        .signed_edges()
        .filter(|l| graph.initial(*l) == vertex)
        .collect()
}

/// Random reduced word of length at most `max_len`: a backtrack-free walk,
/// falling back to the starting vertex when no step exists.
pub fn random_word<R: Rng>(rng: &mut R, graph: &ShadowedGraph, max_len: usize) -> Word {
    let start = rng.gen_range(0..graph.vertex_count());
    random_word_from(rng, graph, start, max_len)
}

/// Random reduced word whose source is `start`.
pub fn random_word_from<R: Rng>(
    rng: &mut R,
    graph: &ShadowedGraph,
    start: usize,
    max_len: usize,
) -> Word {
    let target = rng.gen_range(0..=max_len);
    let mut letters: Vec<SignedEdge> = Vec::new();
    let mut at = start;
    for _ in 0..target {
        let mut options = letters_from(graph, at);
        if let Some(last) = letters.last() {
            options.retain(|l| *l != last.twin());
        }
        if options.is_empty() {
            break;
        }
        let step = options[rng.gen_range(0..options.len())];
        at = graph.terminal(step);
        letters.push(step);
    }
    if letters.is_empty() {
        Word::Vertex(start)
    } else {
        Word::Path(letters)
    }
}

pub fn random_coefficient<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Random operator with up to `max_terms` words of length at most `max_len`.
pub fn random_operator<R: Rng>(
    rng: &mut R,
    graph: &Arc<ShadowedGraph>,
    max_terms: usize,
    max_len: usize,
) -> GraphOperator {
    let count = rng.gen_range(1..=max_terms);
    let terms: Vec<(Word, Complex64)> = (0..count)
        .map(|_| (random_word(rng, graph, max_len), random_coefficient(rng)))
        .collect();
    GraphOperator::new(graph.clone(), terms).expect("random words are valid")
}
