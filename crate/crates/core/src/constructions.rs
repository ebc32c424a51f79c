//! Builders for the named extremal graphs.
//!
//! Turán parts are residue classes: vertex `v` lies in part `((v - 1) mod r) + 1`,
//! so `T_r(n)` is literally a subgraph of the colex Turán graph under the same labels.

use thiserror::Error;

use crate::colex::rpartite_colex_iter;
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("r must be at least {min}, got {got}")]
    PartCount { min: usize, got: usize },
    #[error("blowup factor must be at least 1")]
    ZeroBlowup,
    #[error("no attachment exists: m = {m} is not strictly between t_{r}(n-1) and t_{r}(n-1) + n for any n")]
    NoAttachment { r: usize, m: usize },
}

/// Part sizes of `T_r(n)`, largest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TuranSpec {
    pub r: usize,
    pub n: usize,
}

impl TuranSpec {
    pub fn part_sizes(&self) -> Vec<usize> {
        (0..self.r).map(|i| self.n / self.r + usize::from(i < self.n % self.r)).collect()
    }

    /// Part index (1-based) of vertex `v`.
    pub fn part_of(&self, v: Vertex) -> usize {
        (v - 1) % self.r + 1
    }

    pub fn edge_count(&self) -> usize {
        let sizes = self.part_sizes();
        let sum_sq: usize = sizes.iter().map(|s| s * s).sum();
        (self.n * self.n - sum_sq) / 2
    }
}

/// `t_r(n)`, the number of edges of the Turán graph.
pub fn turan_number(r: usize, n: usize) -> usize {
    assert!(r >= 1, "r must be positive");
    TuranSpec { r, n }.edge_count()
}

/// The complete r-partite graph on `n` vertices with near-equal parts.
pub fn turan_graph(r: usize, n: usize) -> Graph {
    assert!(r >= 1, "r must be positive");
    let edges = (1..=n).flat_map(|v| (1..v).filter(move |u| (v - u) % r != 0).map(move |u| (u, v)));
    Graph::from_trusted_edges(n, edges)
}

/// `C(m)`: the first `m` pairs in colex order.
pub fn colex_graph(m: usize) -> Graph {
    let edges = (2..).flat_map(|v| (1..v).map(move |u| (u, v))).take(m);
    let mut g = Graph::empty(0);
    for (u, v) in edges {
        g.add_edge(u, v);
    }
    g
}

/// `CT_r(m)`: the first `m` pairs in r-partite colex order.
pub fn colex_turan_graph(r: usize, m: usize) -> Result<Graph, ConstructionError> {
    Ok(colex_turan_edges(r)?.take(m).fold(Graph::empty(0), |mut g, (u, v)| {
        g.add_edge(u, v);
        g
    }))
}

/// The edges of `CT_r(∞)` in order.
pub fn colex_turan_edges(r: usize) -> Result<impl Iterator<Item = (Vertex, Vertex)>, ConstructionError> {
    if r < 2 {
        return Err(ConstructionError::PartCount { min: 2, got: r });
    }
    let it = rpartite_colex_iter(r, 2).expect("2 <= r");
    Ok(it.map(|s| (s.elements()[0] as Vertex, s.elements()[1] as Vertex)))
}

/// `G[t]`: copy `j` of vertex `v` becomes `(v - 1) t + j`.
pub fn blowup(g: &Graph, t: usize) -> Result<Graph, ConstructionError> {
    if t == 0 {
        return Err(ConstructionError::ZeroBlowup);
    }
    let label = |v: Vertex, j: usize| (v - 1) * t + j;
    let edges = g
        .edges()
        .into_iter()
        .flat_map(|(u, v)| (1..=t).flat_map(move |i| (1..=t).map(move |j| (label(u, i), label(v, j)))));
    Ok(Graph::from_trusted_edges(g.vertex_count() * t, edges))
}

/// `T_r(n - 1)` plus a vertex `v* = n` joined to `attachment` vertices spread
/// evenly over the parts.
#[derive(Debug, Clone)]
pub struct CriticalEdgeGadget {
    pub graph: Graph,
    /// Label of `v*`.
    pub apex: Vertex,
    /// `n`, the least integer with `m <= t_r(n)`.
    pub n: usize,
    /// `m - t_r(n - 1)`, the degree of `v*`.
    pub attachment: usize,
}

/// The `m`-edge graph showing `CT_r(m)` need not be extremal when the
/// forbidden graph has a critical edge.
///
/// The caller must check `r <= attachment < δ(F)` for the particular `F`.
pub fn critical_edge_gadget(r: usize, m: usize) -> Result<CriticalEdgeGadget, ConstructionError> {
    if r < 2 {
        return Err(ConstructionError::NoAttachment { r, m });
    }
    if m == 0 {
        return Err(ConstructionError::NoAttachment { r, m });
    }
    let mut n = 1;
    while turan_number(r, n) < m {
        n += 1;
    }
    let attachment = m - turan_number(r, n - 1);
    if attachment < 1 || attachment > n - 1 {
        return Err(ConstructionError::NoAttachment { r, m });
    }
    let mut graph = turan_graph(r, n - 1);
    let spec = TuranSpec { r, n: n - 1 };
    // round-robin over parts, lowest labels first
    let mut parts: Vec<Vec<Vertex>> = vec![Vec::new(); r];
    for v in 1..n {
        parts[spec.part_of(v) - 1].push(v);
    }
    let mut chosen = Vec::with_capacity(attachment);
    let mut depth = 0;
    while chosen.len() < attachment {
        for part in &parts {
            if chosen.len() < attachment {
                if let Some(&v) = part.get(depth) {
                    chosen.push(v);
                }
            }
        }
        depth += 1;
    }
    for v in chosen {
        graph.add_edge(v, n);
    }
    Ok(CriticalEdgeGadget { graph, apex: n, n, attachment })
}
