//! Finite slices of the groupoid: all reduced words of bounded length.
//!
//! `Ball(n)` indexes the basis vectors of the graph Hilbert space with word
//! length at most `n`. The word list is canonical — vertices first in
//! declaration order, then paths grouped by length in lexicographic letter
//! order — so `Ball(n)` is an ordered prefix of `Ball(n+1)`. Matrix
//! truncations over these bases therefore nest as leading principal
//! submatrices, which is what makes the spectral probes monotone.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::graph::ShadowedGraph;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    graph: Arc<ShadowedGraph>,
    radius: u32,
    words: Vec<Word>,
    positions: BTreeMap<Word, usize>,
}

impl Ball {
    /// Enumerates every reduced word of length `<= radius`.
    pub fn enumerate(graph: Arc<ShadowedGraph>, radius: u32) -> Ball {
        let mut words: Vec<Word> = (0..graph.vertex_count()).map(Word::Vertex).collect();
        let mut frontier: Vec<Word> = Vec::new();
        for letter in graph.signed_edges() {
            frontier.push(Word::single(letter));
        }
        frontier.sort();
        for _ in 0..radius {
            words.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            // Extending in word order by letters in letter order keeps each
            // length group lexicographically sorted.
            for word in &frontier {
                let letters = word.letters();
                let last = letters[letters.len() - 1];
                let tail = graph.terminal(last);
                for letter in graph.signed_edges() {
                    if letter == last.twin() || graph.initial(letter) != tail {
                        continue;
                    }
                    let mut extended = letters.to_vec();
                    extended.push(letter);
                    next.push(Word::Path(extended));
                }
            }
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
        let positions = words
            .iter()
            .enumerate()
            .map(|(k, w)| (w.clone(), k))
            .collect();
        Ball {
            graph,
            radius,
            words,
            positions,
        }
    }

    pub fn graph(&self) -> &Arc<ShadowedGraph> {
        &self.graph
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, index: usize) -> &Word {
        &self.words[index]
    }

    pub fn position(&self, word: &Word) -> Option<usize> {
        self.positions.get(word).copied()
    }
}
