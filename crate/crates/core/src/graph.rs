//! Compatibility graphs: one vertex per admissible word, an edge between two
//! words iff their Hamming distance is at least `d`. Codes are exactly the
//! cliques of this graph.

use std::io::{self, Write};

use crate::bitset::{limbs_for, BitSet};
use crate::error::{Error, Result};
use crate::words::{enumerate_words_capped, CodeParams, Word, DEFAULT_ENUMERATION_CAP};

/// Adjacency matrices larger than this are refused.
pub const DEFAULT_ADJACENCY_BYTES_CAP: u64 = 4 << 30;

/// Simple undirected graph stored as one bitset row per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitGraph {
    order: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl BitGraph {
    /// Edgeless graph on `order` vertices.
    pub fn new(order: usize) -> Self {
        let stride = limbs_for(order);
        BitGraph {
            order,
            stride,
            rows: vec![0; stride * order],
        }
    }

    pub fn complete(order: usize) -> Self {
        let mut g = BitGraph::new(order);
        for u in 0..order {
            for v in u + 1..order {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = BitGraph::new(order);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Limbs per adjacency row.
    pub fn stride(&self) -> usize {
        self.stride
    }

    /// Adds `{u, v}`; self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.order && v < self.order, "vertex out of range");
        if u == v {
            return;
        }
        self.rows[u * self.stride + v / 64] |= 1 << (v % 64);
        self.rows[v * self.stride + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    pub fn neighbors(&self, v: usize) -> BitSet {
        BitSet::from_limbs(self.row(v), self.order)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|l| l.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ascending by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&v| v > u)
                .collect::<Vec<_>>()
                .into_iter()
                .map(move |v| (u, v))
        })
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> BitGraph {
        let mut g = BitGraph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}

impl AsRef<BitGraph> for BitGraph {
    fn as_ref(&self) -> &BitGraph {
        self
    }
}

#[derive(Clone, Debug)]
pub struct CompatibilityGraph {
    params: CodeParams,
    vertices: Vec<Word>,
    adjacency: BitGraph,
}

impl CompatibilityGraph {
    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    /// Admissible words in enumeration order; vertex `i` is `vertices()[i]`.
    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn adjacency(&self) -> &BitGraph {
        &self.adjacency
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn words_of(&self, vertex_set: &[usize]) -> Vec<Word> {
        vertex_set
            .iter()
            .map(|&v| self.vertices[v].clone())
            .collect()
    }

    /// Vertex index of `word`, if it is admissible.
    pub fn index_of(&self, word: &Word) -> Option<usize> {
        self.vertices.binary_search(word).ok()
    }
}

impl AsRef<BitGraph> for CompatibilityGraph {
    fn as_ref(&self) -> &BitGraph {
        &self.adjacency
    }
}

/// Limits applied while building a graph.
#[derive(Clone, Copy, Debug)]
pub struct GraphLimits {
    pub max_vertices: u64,
    pub max_adjacency_bytes: u64,
}

impl Default for GraphLimits {
    fn default() -> Self {
        GraphLimits {
            max_vertices: DEFAULT_ENUMERATION_CAP,
            max_adjacency_bytes: DEFAULT_ADJACENCY_BYTES_CAP,
        }
    }
}

pub fn build_graph(params: &CodeParams) -> Result<CompatibilityGraph> {
    build_graph_with(params, GraphLimits::default())
}

pub fn build_graph_with(params: &CodeParams, limits: GraphLimits) -> Result<CompatibilityGraph> {
    let vertices = enumerate_words_capped(params, limits.max_vertices)?;
    let order = vertices.len() as u64;
    let bytes = order * order.div_ceil(64) * 8;
    if bytes > limits.max_adjacency_bytes {
        return Err(Error::capacity(format!(
            "{params}: adjacency matrix for {order} vertices needs {bytes} bytes, above the cap of {}",
            limits.max_adjacency_bytes
        )));
    }
    let d = params.d as u32;
    let mut adjacency = BitGraph::new(vertices.len());
    for (u, x) in vertices.iter().enumerate() {
        for (v, y) in vertices.iter().enumerate().skip(u + 1) {
            if x.distance(y) >= d {
                adjacency.add_edge(u, v);
            }
        }
    }
    Ok(CompatibilityGraph {
        params: *params,
        vertices,
        adjacency,
    })
}

/// Writes the graph in DIMACS edge format with 1-based vertex numbers.
pub fn export_dimacs<W: Write + ?Sized>(graph: &BitGraph, sink: &mut W) -> io::Result<()> {
    writeln!(sink, "p edge {} {}", graph.order(), graph.edge_count())?;
    for (u, v) in graph.edges() {
        writeln!(sink, "e {} {}", u + 1, v + 1)?;
    }
    sink.flush()
}

/// True iff every pair of `vertex_set` is adjacent.
pub fn clique_is_code(graph: &BitGraph, vertex_set: &[usize]) -> Result<bool> {
    if let Some(&bad) = vertex_set.iter().find(|&&v| v >= graph.order()) {
        return Err(Error::usage(format!(
            "vertex {bad} out of range for a graph of order {}",
            graph.order()
        )));
    }
    Ok(vertex_set.iter().enumerate().all(|(i, &u)| {
        vertex_set[i + 1..]
            .iter()
            .all(|&v| u != v && graph.has_edge(u, v))
    }))
}
