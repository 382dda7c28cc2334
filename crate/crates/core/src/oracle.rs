//! Brute-force reference implementations for tests.
//!
//! Nothing here shares code with the solvers or the packed word arithmetic:
//! cliques are found by exhaustive subset enumeration over a boolean matrix
//! and distances by comparing characters of the textual word form.

use crate::error::{Error, Result};
use crate::graph::BitGraph;
use crate::words::Word;

/// Largest graph [`brute_force_max_clique`] accepts.
pub const MAX_BRUTE_FORCE_ORDER: usize = 25;

/// Size of a maximum clique, by checking every vertex subset.
pub fn brute_force_max_clique(graph: &BitGraph) -> Result<usize> {
    let order = graph.order();
    if order > MAX_BRUTE_FORCE_ORDER {
        return Err(Error::capacity(format!(
            "brute force handles at most {MAX_BRUTE_FORCE_ORDER} vertices, got {order}"
        )));
    }
    let adjacent: Vec<Vec<bool>> = (0..order)
        .map(|u| (0..order).map(|v| graph.has_edge(u, v)).collect())
        .collect();

    // is_clique[s] for subset s, built from s minus its lowest member
    let subsets = 1usize << order;
    let mut is_clique = vec![false; subsets];
    is_clique[0] = true;
    let mut best = 0;
    for s in 1..subsets {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        if !is_clique[rest] {
            continue;
        }
        let ok = (0..order)
            .filter(|&v| rest >> v & 1 == 1)
            .all(|v| adjacent[low][v]);
        if ok {
            is_clique[s] = true;
            best = best.max(s.count_ones() as usize);
        }
    }
    Ok(best)
}

/// Minimum pairwise Hamming distance and the first pair attaining it.
pub fn brute_force_min_distance(words: &[Word]) -> Result<(usize, usize, usize)> {
    if words.len() < 2 {
        return Err(Error::usage("minimum distance needs at least two words"));
    }
    let text: Vec<Vec<char>> = words
        .iter()
        .map(|w| w.to_string().chars().collect())
        .collect();
    let mut best: Option<(usize, usize, usize)> = None;
    for i in 0..text.len() {
        for j in i + 1..text.len() {
            if text[i].len() != text[j].len() {
                return Err(Error::usage(format!(
                    "words {i} and {j} have different lengths"
                )));
            }
            let differ = text[i].iter().zip(&text[j]).filter(|(a, b)| a != b).count();
            if best.is_none_or(|(b, _, _)| differ < b) {
                best = Some((differ, i, j));
            }
        }
    }
    Ok(best.unwrap())
}
