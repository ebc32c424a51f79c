//! Canonical labelling of small graphs.
//!
//! Each connected component is labelled by an individualisation-refinement
//! search: colour refinement to an equitable ordered partition, then branching
//! on the first non-singleton cell, keeping the lexicographically least
//! adjacency string over all leaves. Vertices with identical neighbourhoods
//! are interchangeable, so only one of each twin class is branched on.
//! Components are then placed in sorted order of their codes.

use crate::graph::{Graph, Vertex};

/// Canonical key: vertex count plus the upper-triangle adjacency bits of the
/// canonically relabelled graph, listed by column.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    bits: Vec<u64>,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// The canonical representative.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        let mut idx = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.bits[idx / 64] >> (idx % 64) & 1 == 1 {
                    g.add_edge(i + 1, j + 1);
                }
                idx += 1;
            }
        }
        g
    }
}

/// Local dense copy of one component.
struct Dense {
    n: usize,
    adj: Vec<Vec<bool>>,
}

fn encode(d: &Dense, position: &[usize]) -> Vec<u64> {
    // vertex at canonical position p
    let mut at = vec![0; d.n];
    for (v, &p) in position.iter().enumerate() {
        at[p] = v;
    }
    let total = d.n * d.n.saturating_sub(1) / 2;
    let mut bits = vec![0u64; total.div_ceil(64)];
    let mut idx = 0;
    for j in 1..d.n {
        for i in 0..j {
            if d.adj[at[i]][at[j]] {
                bits[idx / 64] |= 1 << (idx % 64);
            }
            idx += 1;
        }
    }
    bits
}

/// Refines an ordered partition (cell index per vertex, cells numbered
/// 0..k in order) until equitable.
fn refine(d: &Dense, cell: &mut [usize]) {
    loop {
        let cells = cell.iter().max().map_or(0, |&c| c + 1);
        let mut sig: Vec<(usize, Vec<usize>, usize)> = (0..d.n)
            .map(|v| {
                let mut counts = vec![0usize; cells];
                for u in 0..d.n {
                    if d.adj[v][u] {
                        counts[cell[u]] += 1;
                    }
                }
                (cell[v], counts, v)
            })
            .collect();
        sig.sort();
        let mut next = vec![0usize; d.n];
        let mut idx = 0;
        for i in 0..sig.len() {
            if i > 0 && (sig[i].0 != sig[i - 1].0 || sig[i].1 != sig[i - 1].1) {
                idx += 1;
            }
            next[sig[i].2] = idx;
        }
        let new_cells = idx + 1;
        cell.copy_from_slice(&next);
        if new_cells == cells || d.n == 0 {
            return;
        }
    }
}

fn are_twins(d: &Dense, u: usize, v: usize) -> bool {
    (0..d.n).all(|w| w == u || w == v || d.adj[u][w] == d.adj[v][w])
}

fn search(d: &Dense, cell: Vec<usize>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    let cells = cell.iter().max().map_or(0, |&c| c + 1);
    if cells == d.n {
        let code = encode(d, &cell);
        if best.as_ref().map_or(true, |(b, _)| code < *b) {
            *best = Some((code, cell));
        }
        return;
    }
    // first non-singleton cell
    let mut size = vec![0usize; cells];
    for &c in &cell {
        size[c] += 1;
    }
    let target = (0..cells).find(|&c| size[c] > 1).unwrap();
    let members: Vec<usize> = (0..d.n).filter(|&v| cell[v] == target).collect();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &members {
        if tried.iter().any(|&u| are_twins(d, u, v)) {
            continue;
        }
        tried.push(v);
        // v gets its own cell placed just before the rest of its old cell
        let mut next: Vec<usize> = cell.iter().map(|&c| if c > target { c + 1 } else { c }).collect();
        for &u in &members {
            if u != v {
                next[u] = target + 1;
            }
        }
        refine(d, &mut next);
        search(d, next, best);
    }
}

/// Canonical positions (0-based) for the vertices of a connected component.
fn canonical_positions(d: &Dense) -> (Vec<u64>, Vec<usize>) {
    let mut cell = vec![0usize; d.n];
    refine(d, &mut cell);
    let mut best = None;
    search(d, cell, &mut best);
    best.expect("search visits at least one leaf")
}

/// Canonical labelling: returns the key and `map[v - 1]`, the canonical label of `v`.
pub fn canonical_labelling(g: &Graph) -> (CanonicalForm, Vec<Vertex>) {
    let mut pieces: Vec<(usize, Vec<u64>, Vec<Vertex>, Vec<usize>)> = g
        .components()
        .into_iter()
        .map(|comp| {
            let n = comp.len();
            let adj = comp.iter().map(|&u| comp.iter().map(|&v| g.has_edge(u, v)).collect()).collect();
            let d = Dense { n, adj };
            let (code, pos) = canonical_positions(&d);
            (n, code, comp, pos)
        })
        .collect();
    pieces.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let mut map = vec![0; g.vertex_count()];
    let mut offset = 0;
    for (n, _, comp, pos) in &pieces {
        for (i, &v) in comp.iter().enumerate() {
            map[v - 1] = offset + pos[i] + 1;
        }
        offset += n;
    }
    let relabelled = g.relabel(&map);
    let n = g.vertex_count();
    let d = Dense { n, adj: (1..=n).map(|u| (1..=n).map(|v| relabelled.has_edge(u, v)).collect()).collect() };
    let identity: Vec<usize> = (0..n).collect();
    (CanonicalForm { n, bits: encode(&d, &identity) }, map)
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labelling(g).0
}

pub fn canonical_graph(g: &Graph) -> Graph {
    canonical_form(g).to_graph()
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}
