//! Graph partition statistics: independent partitions, deformed weights,
//! graph Stirling numbers of the second kind, and graph Bell numbers.
//!
//! A partition of a graph's vertices is independent when no block contains
//! an edge. Each partition gets the weight `(eps2/eps1)^e` where
//! `e = sum_j (j-1) |V_j|` over blocks ordered by minimum element, and the
//! graph Stirling number `S(G, kappa)` sums the weights of the independent
//! partitions into exactly `kappa` blocks.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::deformation::Deformation;
use crate::scalar::{c2, Scalar};

/// Invalid graph description.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("vertex {v} outside 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },
}

/// Wire shape: `{"n": 5, "edges": [[1,3],[1,4]]}`.
#[derive(Serialize, Deserialize)]
struct GraphWire {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Simple finite graph on vertices `1..=n`, edges stored as normalized
/// unordered pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphWire", into = "GraphWire")]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop { v: a });
            }
            for v in [a, b] {
                if v < 1 || v > n {
                    return Err(GraphError::VertexOutOfRange { v, n });
                }
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Graph { n, edges: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }
}

impl From<Graph> for GraphWire {
    fn from(g: Graph) -> Self {
        GraphWire { n: g.n, edges: g.edges.into_iter().collect() }
    }
}

impl TryFrom<GraphWire> for Graph {
    type Error = GraphError;
    fn try_from(w: GraphWire) -> Result<Self, Self::Error> {
        Graph::new(w.n, w.edges)
    }
}

/// Complement of the path `1-2-...-n`: edge `{i,k}` present iff
/// `|i - k| >= 2`. Its independent blocks are single vertices and
/// consecutive pairs.
pub fn dual_path_graph(n: usize) -> Graph {
    let edges = (1..=n)
        .flat_map(|i| (i + 2..=n).map(move |k| (i, k)))
        .collect::<Vec<_>>();
    Graph::new(n, edges).expect("constructed edges are valid")
}

/// A partition of `1..=n` into nonempty blocks, each an independent set of
/// some graph; blocks ordered by ascending minimum element, members sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependentPartition {
    blocks: Vec<Vec<usize>>,
}

impl IndependentPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `sum_j (j - 1) |V_j|` over 1-based block indices; the power of
    /// `eps2/eps1` the partition contributes.
    pub fn weight_exponent(&self) -> i64 {
        self.blocks
            .iter()
            .enumerate()
            .map(|(j, block)| j as i64 * block.len() as i64)
            .sum()
    }
}

/// All partitions of the graph's vertices into exactly `kappa` independent
/// blocks, in deterministic (restricted-growth) order.
///
/// Enumerates restricted growth strings: each vertex joins an existing block
/// or opens the next one, so blocks come out canonically ordered by minimum
/// element; branches that put adjacent vertices in one block are pruned
/// immediately.
pub fn independent_partitions(g: &Graph, kappa: usize) -> Vec<IndependentPartition> {
    let n = g.n();
    let mut out = Vec::new();
    if kappa > n {
        return out;
    }
    if n == 0 {
        // the empty partition is the one partition into zero blocks
        if kappa == 0 {
            out.push(IndependentPartition { blocks: Vec::new() });
        }
        return out;
    }
    if kappa == 0 {
        return out;
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    recurse(g, 1, kappa, &mut blocks, &mut out);
    return out;

    fn recurse(
        g: &Graph,
        v: usize,
        kappa: usize,
        blocks: &mut Vec<Vec<usize>>,
        out: &mut Vec<IndependentPartition>,
    ) {
        if v > g.n() {
            if blocks.len() == kappa {
                out.push(IndependentPartition { blocks: blocks.clone() });
            }
            return;
        }
        let remaining = g.n() - v + 1;
        // cannot shed blocks, and each new block needs a fresh vertex
        if blocks.len() > kappa || blocks.len() + remaining < kappa {
            return;
        }
        for b in 0..blocks.len() {
            if blocks[b].iter().all(|&u| !g.has_edge(u, v)) {
                blocks[b].push(v);
                recurse(g, v + 1, kappa, blocks, out);
                blocks[b].pop();
            }
        }
        blocks.push(vec![v]);
        recurse(g, v + 1, kappa, blocks, out);
        blocks.pop();
    }
}

/// `(eps2/eps1)` raised to the partition's weight exponent.
pub fn partition_weight(d: &Deformation, p: &IndependentPartition) -> Scalar {
    (&d.eps2 / &d.eps1).powi(p.weight_exponent())
}

/// Graph Stirling number of the second kind: the weight sum over
/// independent partitions into exactly `kappa` blocks, with the convention
/// `S(G, 0) = 0`.
pub fn graph_stirling_second(d: &Deformation, g: &Graph, kappa: usize) -> Scalar {
    if kappa == 0 {
        return Scalar::zero();
    }
    let mut acc = Scalar::zero();
    for p in independent_partitions(g, kappa) {
        acc += partition_weight(d, &p);
    }
    acc
}

/// Graph Bell number: `sum_{kappa=0..n} S(G, kappa)`.
pub fn graph_bell(d: &Deformation, g: &Graph) -> Scalar {
    let mut acc = Scalar::zero();
    for kappa in 0..=g.n() {
        acc += graph_stirling_second(d, g, kappa);
    }
    acc
}

/// Number of independent partitions over all block counts: the classical
/// (weightless) graphical Bell number.
pub fn independent_partition_count(g: &Graph) -> u64 {
    (0..=g.n())
        .map(|kappa| independent_partitions(g, kappa).len() as u64)
        .sum()
}

/// Closed form for the dual path graph,
///
/// ```text
/// S(T-bar_n, kappa) = t^(C(kappa,2) + C(n-kappa,2)) * gauss_t(kappa, n-kappa),
/// ```
///
/// where `t = eps2/eps1` and `gauss_t` is the binomial of the ratio
/// deformation `(1, t)`. Equals [`graph_stirling_second`] on
/// [`dual_path_graph`] exactly for every deformation in the family; the
/// exponent can also be grouped as `C(n,2) - kappa(n-kappa)`.
pub fn dual_path_closed_form(d: &Deformation, n: usize, kappa: usize) -> Scalar {
    assert!(n >= 1 && kappa <= n, "need 1 <= n and kappa <= n");
    if kappa == 0 {
        return Scalar::zero();
    }
    let t = &d.eps2 / &d.eps1;
    let (k, m) = (kappa as i64, (n - kappa) as i64);
    t.powi(c2(k) + c2(m)) * d.ratio().binomial(k, m)
}
