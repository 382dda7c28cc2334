//! Exact maximum-clique search by branch and bound.
//!
//! Vertices are renumbered by non-increasing degree (ties by lowest index) once
//! at the root and candidate sets are bitsets over that order, so every
//! extension is a word-parallel intersection with an adjacency row.
//!
//! Two bounding rules are available. [`Bound::Basic`] prunes a node when the
//! current clique plus every remaining candidate cannot beat the incumbent.
//! [`Bound::Coloring`] replaces the candidate count with the number of colours
//! of a greedy sequential colouring of the candidates, which is never larger.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::graph::BitGraph;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    /// `|clique| + |candidates| <= incumbent` prunes.
    #[default]
    Basic,
    /// `|clique| + colours(candidates) <= incumbent` prunes.
    Coloring,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactOptions {
    pub bound: Bound,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    /// Test hook: with `false` no branch is ever pruned.
    #[doc(hidden)]
    #[serde(skip)]
    pub pruning: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            bound: Bound::Basic,
            node_limit: None,
            time_limit: None,
            pruning: true,
        }
    }
}

impl ExactOptions {
    pub fn with_bound(bound: Bound) -> Self {
        ExactOptions {
            bound,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExactResult {
    /// Vertex indices of the best clique found, ascending.
    pub clique: Vec<usize>,
    pub size: usize,
    /// True iff the search ran to completion.
    pub proven_optimal: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    /// Incumbent size after each improvement, in the order found.
    pub incumbent_trace: Vec<usize>,
}

/// Maximum clique of the whole graph.
pub fn max_clique_exact(graph: &BitGraph, options: &ExactOptions) -> ExactResult {
    let all: Vec<usize> = (0..graph.order()).collect();
    max_clique_in(graph, &all, options)
}

/// Maximum clique of the subgraph induced by `subset`. Returned indices refer
/// to `graph`.
pub fn max_clique_in(graph: &BitGraph, subset: &[usize], options: &ExactOptions) -> ExactResult {
    let start = Instant::now();
    let (local, perm) = reorder(graph, subset);

    let mut search = Search {
        graph: &local,
        options,
        current: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        start,
        aborted: false,
        trace: Vec::new(),
    };
    if local.order() > 0 {
        let candidates = BitSet::full(local.order());
        match options.bound {
            Bound::Basic => search.expand_basic(candidates),
            Bound::Coloring => search.expand_coloring(candidates),
        }
    }

    let mut clique: Vec<usize> = search.best.iter().map(|&v| perm[v]).collect();
    clique.sort_unstable();
    ExactResult {
        size: clique.len(),
        clique,
        proven_optimal: !search.aborted,
        nodes_explored: search.nodes,
        elapsed: start.elapsed(),
        incumbent_trace: search.trace,
    }
}

// Induced subgraph with vertices sorted by non-increasing degree inside
// `subset`, ties by lowest original index. Returns the graph and the map from
// new to original indices.
fn reorder(graph: &BitGraph, subset: &[usize]) -> (BitGraph, Vec<usize>) {
    let mut members = BitSet::new(graph.order());
    for &v in subset {
        members.insert(v);
    }
    let mut perm: Vec<usize> = members.iter().collect();
    let degree: Vec<usize> = (0..graph.order())
        .map(|v| {
            if members.contains(v) {
                members.intersection_len(graph.row(v))
            } else {
                0
            }
        })
        .collect();
    perm.sort_by(|&a, &b| degree[b].cmp(&degree[a]).then(a.cmp(&b)));
    (graph.induced(&perm), perm)
}

struct Search<'a> {
    graph: &'a BitGraph,
    options: &'a ExactOptions,
    current: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    start: Instant,
    aborted: bool,
    trace: Vec<usize>,
}

impl Search<'_> {
    fn out_of_budget(&mut self) -> bool {
        if self.aborted {
            return true;
        }
        if let Some(limit) = self.options.node_limit {
            if self.nodes >= limit {
                self.aborted = true;
            }
        }
        if let Some(limit) = self.options.time_limit {
            if self.nodes.is_multiple_of(1024) && self.start.elapsed() >= limit {
                self.aborted = true;
            }
        }
        self.aborted
    }

    fn record(&mut self) {
        if self.current.len() > self.best.len() {
            self.best.clone_from(&self.current);
            self.trace.push(self.best.len());
        }
    }

    fn expand_basic(&mut self, mut candidates: BitSet) {
        while let Some(v) = candidates.first() {
            if self.out_of_budget() {
                return;
            }
            if self.options.pruning && self.current.len() + candidates.len() <= self.best.len() {
                return;
            }
            self.nodes += 1;
            self.current.push(v);
            let next = candidates.intersection(self.graph.row(v));
            if next.is_empty() {
                self.record();
            } else {
                self.expand_basic(next);
            }
            self.current.pop();
            candidates.remove(v);
        }
    }

    fn expand_coloring(&mut self, mut candidates: BitSet) {
        let (order, colors) = color_classes(self.graph, &candidates);
        for i in (0..order.len()).rev() {
            if self.out_of_budget() {
                return;
            }
            if self.options.pruning && self.current.len() + colors[i] <= self.best.len() {
                return;
            }
            let v = order[i];
            self.nodes += 1;
            self.current.push(v);
            let next = candidates.intersection(self.graph.row(v));
            if next.is_empty() {
                self.record();
            } else {
                self.expand_coloring(next);
            }
            self.current.pop();
            candidates.remove(v);
        }
    }
}

/// Greedy sequential colouring of `candidates`: each class takes the lowest
/// uncoloured vertices that are pairwise non-adjacent. Returns the vertices in
/// class order together with their colour numbers (1-based, non-decreasing).
fn color_classes(graph: &BitGraph, candidates: &BitSet) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(candidates.len());
    let mut colors = Vec::with_capacity(candidates.len());
    let mut uncolored = candidates.clone();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut class = uncolored.clone();
        while let Some(v) = class.first() {
            class.remove(v);
            class.difference_with(graph.row(v));
            uncolored.remove(v);
            order.push(v);
            colors.push(color);
        }
    }
    (order, colors)
}
