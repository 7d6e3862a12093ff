//! Directed graphs and their shadowed extensions.
//!
//! A directed graph carries named vertices and named directed edges. The
//! shadowed graph adds, for every edge `e`, the orientation-reversed twin
//! `e^-1`; words in the graph groupoid are spelled in these signed edges.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Vertex name. Valid identifiers match `[A-Za-z_][A-Za-z0-9_]*`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct VertexId(pub String);

/// Edge name, drawn from the same identifier alphabet as vertices and
/// disjoint from them within a graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeId(pub String);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Orientation of a signed edge: `Forward` is the edge as declared,
/// `Reverse` is its shadow. `Forward` sorts before `Reverse`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Orientation {
    Forward,
    Reverse,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Reverse,
            Orientation::Reverse => Orientation::Forward,
        }
    }
}

/// An edge symbol of the shadowed graph: a declared edge together with an
/// orientation. Ordering is (edge declaration index, orientation), which is
/// the letter order used for canonical word enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SignedEdge {
    pub edge: usize,
    pub orientation: Orientation,
}

impl SignedEdge {
    pub fn forward(edge: usize) -> Self {
        SignedEdge {
            edge,
            orientation: Orientation::Forward,
        }
    }

    pub fn reverse(edge: usize) -> Self {
        SignedEdge {
            edge,
            orientation: Orientation::Reverse,
        }
    }

    /// The shadow twin `e <-> e^-1`. Applying it twice is the identity.
    pub fn twin(self) -> Self {
        SignedEdge {
            edge: self.edge,
            orientation: self.orientation.flipped(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    InvalidIdentifier(String),
    DuplicateId(String),
    UnknownEndpoint(String),
    EmptyVertexSet,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::InvalidIdentifier(name) => write!(f, "invalid identifier `{name}`"),
            GraphError::DuplicateId(name) => write!(f, "duplicate id `{name}`"),
            GraphError::UnknownEndpoint(name) => write!(f, "unknown endpoint `{name}`"),
            GraphError::EmptyVertexSet => f.write_str("empty vertex set"),
        }
    }
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct EdgeRecord {
    id: EdgeId,
    from: usize,
    to: usize,
}

/// A finite directed graph. Vertex and edge order is declaration order and
/// is the canonical order used for ball bases, matrices, and reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeRecord>,
}

/// Incremental construction with per-call validation, so callers that parse
/// text can attribute each error to its source line.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeRecord>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<(), GraphError> {
        if !valid_identifier(name) {
            return Err(GraphError::InvalidIdentifier(String::from(name)));
        }
        if self.lookup_name(name) {
            return Err(GraphError::DuplicateId(String::from(name)));
        }
        self.vertices.push(VertexId(String::from(name)));
        Ok(())
    }

    pub fn add_edge(&mut self, name: &str, from: &str, to: &str) -> Result<(), GraphError> {
        if !valid_identifier(name) {
            return Err(GraphError::InvalidIdentifier(String::from(name)));
        }
        if self.lookup_name(name) {
            return Err(GraphError::DuplicateId(String::from(name)));
        }
        let from = self
            .vertex_index(from)
            .ok_or_else(|| GraphError::UnknownEndpoint(String::from(from)))?;
        let to = self
            .vertex_index(to)
            .ok_or_else(|| GraphError::UnknownEndpoint(String::from(to)))?;
        self.edges.push(EdgeRecord {
            id: EdgeId(String::from(name)),
            from,
            to,
        });
        Ok(())
    }

    pub fn finish(self) -> Result<DirectedGraph, GraphError> {
        if self.vertices.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        Ok(DirectedGraph {
            vertices: self.vertices,
            edges: self.edges,
        })
    }

    fn lookup_name(&self, name: &str) -> bool {
        self.vertices.iter().any(|v| v.0 == name) || self.edges.iter().any(|e| e.id.0 == name)
    }

    fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.0 == name)
    }
}

impl DirectedGraph {
    /// Builds a graph from explicit vertex and edge declarations.
    pub fn new<'a, V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = &'a str>,
        E: IntoIterator<Item = (&'a str, &'a str, &'a str)>,
    {
        let mut builder = GraphBuilder::new();
        for v in vertices {
            builder.add_vertex(v)?;
        }
        for (name, from, to) in edges {
            builder.add_edge(name, from, to)?;
        }
        builder.finish()
    }

    /// The one-vertex graph `O_N` with vertex `v_O` and loop edges `e1..eN`.
    pub fn one_vertex_loops(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut builder = GraphBuilder::new();
        builder.add_vertex("v_O")?;
        for k in 1..=n {
            let name = alloc::format!("e{k}");
            builder.add_edge(&name, "v_O", "v_O")?;
        }
        builder.finish()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, index: usize) -> &VertexId {
        &self.vertices[index]
    }

    pub fn edge_name(&self, index: usize) -> &EdgeId {
        &self.edges[index].id
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.0 == name)
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id.0 == name)
    }

    /// Declared endpoints `(initial, terminal)` of the forward edge.
    pub fn edge_endpoints(&self, index: usize) -> (usize, usize) {
        let record = &self.edges[index];
        (record.from, record.to)
    }
}

/// A directed graph together with the shadow of every edge. Vertices are
/// shared with the base graph; each declared edge contributes the two signed
/// symbols `e` and `e^-1` with swapped endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowedGraph {
    base: DirectedGraph,
}

impl ShadowedGraph {
    pub fn new(base: DirectedGraph) -> Self {
        ShadowedGraph { base }
    }

    pub fn base(&self) -> &DirectedGraph {
        &self.base
    }

    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.base.edge_count()
    }

    pub fn vertex_name(&self, index: usize) -> &VertexId {
        self.base.vertex_name(index)
    }

    /// Endpoints of a signed edge; the reverse orientation swaps them.
    pub fn endpoints(&self, letter: SignedEdge) -> (usize, usize) {
        let (from, to) = self.base.edge_endpoints(letter.edge);
        match letter.orientation {
            Orientation::Forward => (from, to),
            Orientation::Reverse => (to, from),
        }
    }

    pub fn initial(&self, letter: SignedEdge) -> usize {
        self.endpoints(letter).0
    }

    pub fn terminal(&self, letter: SignedEdge) -> usize {
        self.endpoints(letter).1
    }

    /// All `2 |E(G)|` signed edge symbols in letter order.
    pub fn signed_edges(&self) -> impl Iterator<Item = SignedEdge> + '_ {
        (0..self.base.edge_count()).flat_map(|edge| {
            [SignedEdge::forward(edge), SignedEdge::reverse(edge)].into_iter()
        })
    }

    /// Renders a signed edge in word syntax: `e` or `e^-1`.
    pub fn letter_name(&self, letter: SignedEdge) -> String {
        let id = self.base.edge_name(letter.edge);
        match letter.orientation {
            Orientation::Forward => alloc::format!("{id}"),
            Orientation::Reverse => alloc::format!("{id}^-1"),
        }
    }
}
