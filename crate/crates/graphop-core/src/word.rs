//! Elements of the graph groupoid: vertices, reduced admissible paths, and
//! the absorbing empty element.
//!
//! A path is a nonempty sequence of signed edges whose consecutive endpoints
//! match and which contains no adjacent twin pair `(s, s^-1)`. Products
//! concatenate and cancel twins at the junction; a product of words with
//! mismatched endpoints is `Empty`, which absorbs everything.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::graph::{ShadowedGraph, SignedEdge};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    /// The absorbing empty element, standing for all undefined products.
    Empty,
    /// A vertex, acting as a one-sided unit at its own endpoints.
    Vertex(usize),
    /// A reduced admissible path, at least one letter long.
    Path(Vec<SignedEdge>),
}

impl Word {
    pub fn vertex(index: usize) -> Self {
        Word::Vertex(index)
    }

    pub fn single(letter: SignedEdge) -> Self {
        Word::Path(alloc::vec![letter])
    }

    pub fn is_empty_word(&self) -> bool {
        matches!(self, Word::Empty)
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self, Word::Vertex(_))
    }

    pub fn is_path(&self) -> bool {
        matches!(self, Word::Path(_))
    }

    /// Letter count; vertices have length 0 and `Empty` has no length.
    pub fn len(&self) -> usize {
        match self {
            Word::Path(letters) => letters.len(),
            _ => 0,
        }
    }

    /// The shadow `w^-1`: reversed twin letters. Vertices and `Empty` are
    /// their own inverses. The result of inverting a reduced word is reduced.
    pub fn inverse(&self) -> Word {
        match self {
            Word::Empty => Word::Empty,
            Word::Vertex(v) => Word::Vertex(*v),
            Word::Path(letters) => {
                Word::Path(letters.iter().rev().map(|l| l.twin()).collect())
            }
        }
    }

    pub fn letters(&self) -> &[SignedEdge] {
        match self {
            Word::Path(letters) => letters,
            _ => &[],
        }
    }
}

/// Ball order: `Empty`, then vertices by declaration index, then paths by
/// (length, lexicographic letter order). This is the canonical order for
/// term maps, ball bases, and serialized output.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        use Word::*;
        match (self, other) {
            (Empty, Empty) => Ordering::Equal,
            (Empty, _) => Ordering::Less,
            (_, Empty) => Ordering::Greater,
            (Vertex(a), Vertex(b)) => a.cmp(b),
            (Vertex(_), Path(_)) => Ordering::Less,
            (Path(_), Vertex(_)) => Ordering::Greater,
            (Path(a), Path(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
        }
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordError {
    EmptyWord,
    NoLetters,
    Inadmissible { position: usize },
    UnknownVertex(String),
    UnknownEdge(String),
    VertexOutOfRange(usize),
    EdgeOutOfRange(usize),
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::EmptyWord => f.write_str("the empty word has no endpoints"),
            WordError::NoLetters => f.write_str("a path needs at least one letter"),
            WordError::Inadmissible { position } => {
                write!(f, "inadmissible letter pair at position {position}")
            }
            WordError::UnknownVertex(name) => write!(f, "unknown vertex `{name}`"),
            WordError::UnknownEdge(name) => write!(f, "unknown edge `{name}`"),
            WordError::VertexOutOfRange(index) => write!(f, "vertex index {index} out of range"),
            WordError::EdgeOutOfRange(index) => write!(f, "edge index {index} out of range"),
        }
    }
}

impl ShadowedGraph {
    /// Initial vertex: `source(w) = w w^-1`. Rejects `Empty`.
    pub fn source(&self, word: &Word) -> Result<usize, WordError> {
        match word {
            Word::Empty => Err(WordError::EmptyWord),
            Word::Vertex(v) => Ok(*v),
            Word::Path(letters) => Ok(self.initial(letters[0])),
        }
    }

    /// Terminal vertex: `range(w) = w^-1 w`. Rejects `Empty`.
    pub fn range(&self, word: &Word) -> Result<usize, WordError> {
        match word {
            Word::Empty => Err(WordError::EmptyWord),
            Word::Vertex(v) => Ok(*v),
            Word::Path(letters) => Ok(self.terminal(letters[letters.len() - 1])),
        }
    }

    /// Builds a reduced word from a letter sequence. Consecutive endpoints
    /// must match; twin pairs are cancelled by a single left-to-right stack
    /// pass, which is confluent for this rewriting system. Full cancellation
    /// yields the vertex at which the sequence started.
    pub fn word_from_letters(&self, letters: &[SignedEdge]) -> Result<Word, WordError> {
        if letters.is_empty() {
            return Err(WordError::NoLetters);
        }
        for letter in letters {
            if letter.edge >= self.edge_count() {
                return Err(WordError::EdgeOutOfRange(letter.edge));
            }
        }
        for (position, pair) in letters.windows(2).enumerate() {
            if self.terminal(pair[0]) != self.initial(pair[1]) {
                return Err(WordError::Inadmissible { position });
            }
        }
        let start = self.initial(letters[0]);
        let mut stack: Vec<SignedEdge> = Vec::with_capacity(letters.len());
        for &letter in letters {
            if stack.last().copied() == Some(letter.twin()) {
                stack.pop();
            } else {
                stack.push(letter);
            }
        }
        if stack.is_empty() {
            Ok(Word::Vertex(start))
        } else {
            Ok(Word::Path(stack))
        }
    }

    /// Groupoid product under the cancellation rule. Returns `Empty` when
    /// either factor is `Empty` or the endpoints do not match; vertices act
    /// as one-sided units at their own endpoints.
    pub fn product(&self, left: &Word, right: &Word) -> Word {
        match (left, right) {
            (Word::Empty, _) | (_, Word::Empty) => Word::Empty,
            (Word::Vertex(u), Word::Vertex(v)) => {
                if u == v {
                    Word::Vertex(*u)
                } else {
                    Word::Empty
                }
            }
            (Word::Vertex(u), Word::Path(q)) => {
                if self.initial(q[0]) == *u {
                    Word::Path(q.clone())
                } else {
                    Word::Empty
                }
            }
            (Word::Path(p), Word::Vertex(v)) => {
                if self.terminal(p[p.len() - 1]) == *v {
                    Word::Path(p.clone())
                } else {
                    Word::Empty
                }
            }
            (Word::Path(p), Word::Path(q)) => {
                if self.terminal(p[p.len() - 1]) != self.initial(q[0]) {
                    return Word::Empty;
                }
                // Both factors are reduced, so cancellation happens only at
                // the junction: pop the tail of `p` against the head of `q`.
                let mut stack = p.clone();
                for &letter in q {
                    if stack.last().copied() == Some(letter.twin()) {
                        stack.pop();
                    } else {
                        stack.push(letter);
                    }
                }
                if stack.is_empty() {
                    Word::Vertex(self.initial(p[0]))
                } else {
                    Word::Path(stack)
                }
            }
        }
    }

    /// True when the word is a vertex of this graph or a reduced admissible
    /// path in its signed edges. `Empty` is not an element.
    pub fn validate_word(&self, word: &Word) -> Result<(), WordError> {
        match word {
            Word::Empty => Err(WordError::EmptyWord),
            Word::Vertex(v) => {
                if *v < self.vertex_count() {
                    Ok(())
                } else {
                    Err(WordError::VertexOutOfRange(*v))
                }
            }
            Word::Path(letters) => {
                for letter in letters {
                    if letter.edge >= self.edge_count() {
                        return Err(WordError::EdgeOutOfRange(letter.edge));
                    }
                }
                for (position, pair) in letters.windows(2).enumerate() {
                    if self.terminal(pair[0]) != self.initial(pair[1]) {
                        return Err(WordError::Inadmissible { position });
                    }
                    if pair[1] == pair[0].twin() {
                        return Err(WordError::Inadmissible { position });
                    }
                }
                Ok(())
            }
        }
    }

    /// Parses word syntax: `@v` for a vertex, otherwise whitespace-separated
    /// letters `e` or `e^-1`, reduced on construction.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(WordError::NoLetters);
        }
        if let Some(name) = tokens[0].strip_prefix('@') {
            let index = self
                .base()
                .vertex_index(name)
                .ok_or_else(|| WordError::UnknownVertex(String::from(name)))?;
            if tokens.len() > 1 {
                return Err(WordError::Inadmissible { position: 0 });
            }
            return Ok(Word::Vertex(index));
        }
        let mut letters = Vec::with_capacity(tokens.len());
        for token in tokens {
            let (name, orientation) = match token.strip_suffix("^-1") {
                Some(name) => (name, crate::graph::Orientation::Reverse),
                None => (token, crate::graph::Orientation::Forward),
            };
            let edge = self
                .base()
                .edge_index(name)
                .ok_or_else(|| WordError::UnknownEdge(String::from(name)))?;
            letters.push(SignedEdge { edge, orientation });
        }
        self.word_from_letters(&letters)
    }

    /// Renders a word in the same syntax `parse_word` accepts.
    pub fn render_word(&self, word: &Word) -> String {
        match word {
            Word::Empty => String::from("0"),
            Word::Vertex(v) => alloc::format!("@{}", self.vertex_name(*v)),
            Word::Path(letters) => {
                let mut out = String::new();
                for (k, letter) in letters.iter().enumerate() {
                    if k > 0 {
                        out.push(' ');
                    }
                    out.push_str(&self.letter_name(*letter));
                }
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DirectedGraph;

    fn example_32() -> ShadowedGraph {
        ShadowedGraph::new(
            DirectedGraph::new(
                ["v1", "v2", "v3"],
                [("e1", "v1", "v2"), ("e2", "v1", "v2"), ("e3", "v3", "v2")],
            )
            .unwrap(),
        )
    }

    // v1 <-e1- v2 -e2-> v3 -e3-> v4 is handy for range/source checks.
    fn path_graph_b() -> ShadowedGraph {
        ShadowedGraph::new(
            DirectedGraph::new(
                ["v1", "v2", "v3", "v4"],
                [("e1", "v2", "v1"), ("e2", "v2", "v3"), ("e3", "v3", "v4")],
            )
            .unwrap(),
        )
    }

    #[test]
    fn source_and_range_of_letters() {
        let g = ShadowedGraph::new(
            DirectedGraph::new(["v1", "v2"], [("e1", "v1", "v2")]).unwrap(),
        );
        let e1 = Word::single(SignedEdge::forward(0));
        assert_eq!(g.source(&e1).unwrap(), 0);
        assert_eq!(g.range(&e1).unwrap(), 1);

        let b = path_graph_b();
        let e2_rev = Word::single(SignedEdge::reverse(1));
        assert_eq!(g2v(&b, &e2_rev), ("v3", "v2"));

        let e2e3 = b
            .word_from_letters(&[SignedEdge::forward(1), SignedEdge::forward(2)])
            .unwrap();
        assert_eq!(g2v(&b, &e2e3), ("v2", "v4"));

        assert_eq!(b.source(&Word::Empty).unwrap_err(), WordError::EmptyWord);
    }

    fn g2v<'a>(g: &'a ShadowedGraph, w: &Word) -> (&'a str, &'a str) {
        (
            &g.vertex_name(g.source(w).unwrap()).0,
            &g.vertex_name(g.range(w).unwrap()).0,
        )
    }

    #[test]
    fn inverse_examples() {
        let g = example_32();
        assert_eq!(Word::Vertex(0).inverse(), Word::Vertex(0));
        assert_eq!(Word::Empty.inverse(), Word::Empty);
        // inverse(e3 e2^-1) = e2 e3^-1
        let w = g
            .word_from_letters(&[SignedEdge::forward(2), SignedEdge::reverse(1)])
            .unwrap();
        let expected = g
            .word_from_letters(&[SignedEdge::forward(1), SignedEdge::reverse(2)])
            .unwrap();
        assert_eq!(w.inverse(), expected);
    }

    #[test]
    fn product_reduction_and_admissibility() {
        let g = example_32();
        let e1 = Word::single(SignedEdge::forward(0));
        let e1_inv = Word::single(SignedEdge::reverse(0));
        let e3 = Word::single(SignedEdge::forward(2));
        let e2_inv = Word::single(SignedEdge::reverse(1));

        // e1 e1^-1 collapses to the source vertex v1.
        assert_eq!(g.product(&e1, &e1_inv), Word::Vertex(0));
        // e1 e3 is undefined: range(e1) = v2, source(e3) = v3.
        assert_eq!(g.product(&e1, &e3), Word::Empty);
        // e3 e2^-1 is a genuine length-2 path.
        let expected = g
            .word_from_letters(&[SignedEdge::forward(2), SignedEdge::reverse(1)])
            .unwrap();
        assert_eq!(g.product(&e3, &e2_inv), expected);
    }

    #[test]
    fn vertices_act_as_one_sided_units() {
        let g = example_32();
        let e1 = Word::single(SignedEdge::forward(0));
        assert_eq!(g.product(&Word::Vertex(0), &e1), e1);
        assert_eq!(g.product(&e1, &Word::Vertex(1)), e1);
        assert_eq!(g.product(&Word::Vertex(1), &e1), Word::Empty);
        assert_eq!(g.product(&Word::Vertex(2), &Word::Vertex(2)), Word::Vertex(2));
        assert_eq!(g.product(&Word::Vertex(0), &Word::Vertex(1)), Word::Empty);
        assert_eq!(g.product(&Word::Empty, &e1), Word::Empty);
    }

    #[test]
    fn loops_with_equal_adjacent_letters_do_not_cancel() {
        let o1 = ShadowedGraph::new(DirectedGraph::one_vertex_loops(1).unwrap());
        let e = SignedEdge::forward(0);
        let ee = o1.word_from_letters(&[e, e]).unwrap();
        assert_eq!(ee.len(), 2);
        let cancel = o1.word_from_letters(&[e, e.twin()]).unwrap();
        assert_eq!(cancel, Word::Vertex(0));
    }

    #[test]
    fn from_letters_rejects_inadmissible_sequences() {
        let g = example_32();
        let err = g
            .word_from_letters(&[SignedEdge::forward(0), SignedEdge::forward(2)])
            .unwrap_err();
        assert_eq!(err, WordError::Inadmissible { position: 0 });
        assert_eq!(g.word_from_letters(&[]).unwrap_err(), WordError::NoLetters);
    }

    #[test]
    fn full_cancellation_returns_the_starting_vertex() {
        let g = example_32();
        // e1 e1^-1 e2 e2^-1 reduces to v1.
        let w = g
            .word_from_letters(&[
                SignedEdge::forward(0),
                SignedEdge::reverse(0),
                SignedEdge::forward(1),
                SignedEdge::reverse(1),
            ])
            .unwrap();
        assert_eq!(w, Word::Vertex(0));
    }

    #[test]
    fn word_order_is_vertices_then_paths_by_length_then_lex() {
        let g = example_32();
        let v0 = Word::Vertex(0);
        let v2 = Word::Vertex(2);
        let e1 = Word::single(SignedEdge::forward(0));
        let e1_inv = Word::single(SignedEdge::reverse(0));
        let e2 = Word::single(SignedEdge::forward(1));
        let long = g
            .word_from_letters(&[SignedEdge::forward(2), SignedEdge::reverse(1)])
            .unwrap();
        assert!(Word::Empty < v0);
        assert!(v0 < v2);
        assert!(v2 < e1);
        assert!(e1 < e1_inv);
        assert!(e1_inv < e2);
        assert!(e2 < long);
    }

    #[test]
    fn parse_and_render_round_trip() {
        let g = example_32();
        for text in ["@v1", "@v3", "e1", "e3 e2^-1", "e2 e3^-1"] {
            let word = g.parse_word(text).unwrap();
            assert_eq!(g.render_word(&word), text);
        }
        assert_eq!(g.parse_word("e1 e1^-1").unwrap(), Word::Vertex(0));
        assert!(matches!(
            g.parse_word("@nope").unwrap_err(),
            WordError::UnknownVertex(_)
        ));
        assert!(matches!(
            g.parse_word("e9").unwrap_err(),
            WordError::UnknownEdge(_)
        ));
    }
}
