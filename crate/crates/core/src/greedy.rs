//! Semi-exhaustive randomized greedy clique search with restarts.
//!
//! One run keeps a clique set and an available set (vertices adjacent to every
//! clique member). While more than `threshold_y` vertices remain available it
//! samples `x` of them, moves the one with the most neighbours inside the
//! available set into the clique and drops its non-neighbours. The remaining
//! available set is then solved exactly and the two cliques are joined.
//!
//! Each restart draws from its own ChaCha stream keyed by
//! `(master_seed, restart_index)`, so results do not depend on scheduling.

use std::time::{Duration, Instant};

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::exact::{max_clique_in, Bound, ExactOptions};
use crate::graph::BitGraph;

#[derive(Clone, Debug, Serialize)]
pub struct GreedyConfig {
    /// Sample size as a fraction of the original vertex count.
    pub sample_fraction: f64,
    /// Available-set size at which the exact phase takes over.
    pub threshold_y: usize,
    pub restarts: usize,
    pub master_seed: u64,
    /// Options for the exact phase on the residual available set.
    pub exact: ExactOptions,
}

impl Default for GreedyConfig {
    fn default() -> Self {
        GreedyConfig {
            sample_fraction: 0.1,
            threshold_y: 100,
            restarts: 1000,
            master_seed: 0,
            exact: ExactOptions::with_bound(Bound::Coloring),
        }
    }
}

impl GreedyConfig {
    pub fn with_seed(master_seed: u64) -> Self {
        GreedyConfig {
            master_seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sample_fraction > 0.0 && self.sample_fraction <= 1.0) {
            return Err(Error::usage(format!(
                "sample fraction must lie in (0, 1], got {}",
                self.sample_fraction
            )));
        }
        if self.threshold_y == 0 {
            return Err(Error::usage("threshold must be positive"));
        }
        if self.restarts == 0 {
            return Err(Error::usage("restart count must be positive"));
        }
        Ok(())
    }

    /// Number of vertices sampled per selection for a graph of `order` vertices.
    pub fn sample_size(&self, order: usize) -> usize {
        ((self.sample_fraction * order as f64).round() as usize).max(1)
    }
}

#[derive(Clone, Debug)]
pub struct GreedyResult {
    /// Vertex indices, ascending.
    pub clique: Vec<usize>,
    pub size: usize,
    pub best_restart_index: usize,
    pub elapsed: Duration,
}

/// Random stream for one restart.
pub fn restart_rng(master_seed: u64, restart_index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(restart_index as u64);
    rng
}

/// One greedy run; returns the clique as ascending vertex indices.
pub fn greedy_once(graph: &BitGraph, config: &GreedyConfig, restart_index: usize) -> Vec<usize> {
    greedy_walk(graph, config, restart_index, |_, _| {})
}

// `observe` sees the clique and available set after every selection.
pub(crate) fn greedy_walk<F>(
    graph: &BitGraph,
    config: &GreedyConfig,
    restart_index: usize,
    mut observe: F,
) -> Vec<usize>
where
    F: FnMut(&[usize], &BitSet),
{
    let order = graph.order();
    let sample_size = config.sample_size(order);
    let mut rng = restart_rng(config.master_seed, restart_index);

    let mut clique = Vec::new();
    let mut available = BitSet::full(order);
    let mut pool = Vec::with_capacity(order);

    while available.len() > config.threshold_y {
        pool.clear();
        pool.extend(available.iter());

        let chosen = if pool.len() <= sample_size {
            most_connected(graph, &available, pool.iter().copied())
        } else {
            let picks = index::sample(&mut rng, pool.len(), sample_size);
            most_connected(graph, &available, picks.iter().map(|i| pool[i]))
        };

        clique.push(chosen);
        available.intersect_with(graph.row(chosen));
        observe(&clique, &available);
    }

    let residual: Vec<usize> = available.iter().collect();
    let tail = max_clique_in(graph, &residual, &config.exact);
    clique.extend(tail.clique);
    clique.sort_unstable();
    clique
}

// Most neighbours inside `available`; ties to the lowest index.
fn most_connected(
    graph: &BitGraph,
    available: &BitSet,
    sample: impl Iterator<Item = usize>,
) -> usize {
    sample
        .map(|v| (available.intersection_len(graph.row(v)), v))
        .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
        .map(|(_, v)| v)
        .expect("sample is never empty")
}

/// Runs `config.restarts` independent greedy runs in parallel and keeps the
/// largest clique, ties to the lexicographically smallest vertex list.
pub fn greedy_restarts(graph: &BitGraph, config: &GreedyConfig) -> GreedyResult {
    let start = Instant::now();
    let best = (0..config.restarts)
        .into_par_iter()
        .map(|i| (greedy_once(graph, config, i), i))
        .reduce_with(better)
        .unwrap_or_default();
    GreedyResult {
        size: best.0.len(),
        clique: best.0,
        best_restart_index: best.1,
        elapsed: start.elapsed(),
    }
}

fn better(a: (Vec<usize>, usize), b: (Vec<usize>, usize)) -> (Vec<usize>, usize) {
    let ord =
        b.0.len()
            .cmp(&a.0.len())
            .then_with(|| a.0.cmp(&b.0))
            .then(a.1.cmp(&b.1));
    if ord.is_le() {
        a
    } else {
        b
    }
}
