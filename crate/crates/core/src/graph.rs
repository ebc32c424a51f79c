//! Finite simple graphs on vertices `1..=n` with bit-vector adjacency, plus the
//! exact clique-counting primitives everything else is built on.

use std::fmt::Write as _;

use thiserror::Error;

/// A vertex label. Labels are 1-based.
pub type Vertex = usize;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex labels must be positive")]
    ZeroVertex,
    #[error("duplicate edge {{{0},{1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("explicit vertex count {explicit} is below the largest endpoint {max}")]
    VertexCountTooSmall { explicit: usize, max: usize },
    #[error("vertex {0} is not in the graph")]
    VertexOutOfRange(Vertex),
    #[error("{{{0},{1}}} is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("clique order must be at least {min}, got {got}")]
    CliqueOrder { min: usize, got: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD).max(1)
}

#[inline]
pub(crate) fn bit_set(bits: &mut [u64], i: usize) {
    bits[i / WORD] |= 1 << (i % WORD);
}

#[inline]
pub(crate) fn bit_clear(bits: &mut [u64], i: usize) {
    bits[i / WORD] &= !(1 << (i % WORD));
}

#[inline]
pub(crate) fn bit_test(bits: &[u64], i: usize) -> bool {
    bits[i / WORD] >> (i % WORD) & 1 == 1
}

pub(crate) fn popcount(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

/// Indices of the set bits in increasing order.
pub(crate) fn ones(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + b)
            }
        })
    })
}

/// A finite simple graph. Vertex `v` is stored at bit index `v - 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    m: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph { n, words, adj: vec![0; n * words], m: 0 }
    }

    /// Builds a graph from an edge list, rejecting self-loops and repeated pairs.
    ///
    /// The vertex count is `explicit_vertex_count` if given, otherwise the
    /// largest endpoint.
    pub fn from_edges(
        edges: &[(Vertex, Vertex)],
        explicit_vertex_count: Option<usize>,
    ) -> Result<Self, GraphError> {
        let mut max = 0;
        for &(u, v) in edges {
            if u == 0 || v == 0 {
                return Err(GraphError::ZeroVertex);
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            max = max.max(u).max(v);
        }
        let n = match explicit_vertex_count {
            Some(explicit) if explicit < max => {
                return Err(GraphError::VertexCountTooSmall { explicit, max })
            }
            Some(explicit) => explicit,
            None => max,
        };
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if !g.add_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(g)
    }

    pub(crate) fn from_trusted_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        Graph::from_trusted_edges(n, (1..=n).flat_map(|v| (1..v).map(move |u| (u, v))))
    }

    /// The cycle `C_n` for `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::from_trusted_edges(n, (1..=n).map(|v| (v, v % n + 1)))
    }

    /// The path on `n` vertices.
    pub fn path(n: usize) -> Self {
        Graph::from_trusted_edges(n, (1..n).map(|v| (v, v + 1)))
    }

    /// The star `K_{1,leaves}` centred at vertex 1.
    pub fn star(leaves: usize) -> Self {
        Graph::from_trusted_edges(leaves + 1, (2..=leaves + 1).map(|v| (1, v)))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        (1..=self.n).contains(&v)
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange(v))
        }
    }

    pub(crate) fn row(&self, v: Vertex) -> &[u64] {
        let i = v - 1;
        &self.adj[i * self.words..(i + 1) * self.words]
    }

    fn row_mut(&mut self, v: Vertex) -> &mut [u64] {
        let i = v - 1;
        &mut self.adj[i * self.words..(i + 1) * self.words]
    }

    pub(crate) fn word_count(&self) -> usize {
        self.words
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.contains_vertex(u) && self.contains_vertex(v) && bit_test(self.row(u), v - 1)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        popcount(self.row(v))
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        ones(self.row(v)).map(|i| i + 1)
    }

    /// Edges `(u, v)` with `u < v`, listed in colex order (by `v`, then `u`).
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.m);
        for v in 1..=self.n {
            out.extend(self.neighbors(v).take_while(|&u| u < v).map(|u| (u, v)));
        }
        out
    }

    /// Adds `{u, v}`; returns false if it was already present. Grows the
    /// vertex set if an endpoint is beyond the current count.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        assert!(u != v && u > 0 && v > 0, "invalid edge {{{u},{v}}}");
        let need = u.max(v);
        if need > self.n {
            self.grow(need);
        }
        if bit_test(self.row(u), v - 1) {
            return false;
        }
        bit_set(self.row_mut(u), v - 1);
        bit_set(self.row_mut(v), u - 1);
        self.m += 1;
        true
    }

    /// Removes `{u, v}`; returns false if it was not present.
    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        bit_clear(self.row_mut(u), v - 1);
        bit_clear(self.row_mut(v), u - 1);
        self.m -= 1;
        true
    }

    /// Removes every edge at `v`, leaving it isolated. Returns the old degree.
    pub fn isolate(&mut self, v: Vertex) -> usize {
        let nbrs: Vec<Vertex> = self.neighbors(v).collect();
        for &u in &nbrs {
            self.remove_edge(u, v);
        }
        nbrs.len()
    }

    fn grow(&mut self, n: usize) {
        let words = words_for(n);
        let mut adj = vec![0; n * words];
        for i in 0..self.n {
            adj[i * words..i * words + self.words]
                .copy_from_slice(&self.adj[i * self.words..(i + 1) * self.words]);
        }
        self.n = n;
        self.words = words;
        self.adj = adj;
    }

    /// Vertices with at least one neighbour.
    pub fn non_isolated_vertices(&self) -> Vec<Vertex> {
        (1..=self.n).filter(|&v| self.degree(v) > 0).collect()
    }

    /// The subgraph induced on `vertices`, relabelled `1..=len` in the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i + 1, j + 1);
                }
            }
        }
        g
    }

    /// Drops isolated vertices, relabelling the rest in increasing order.
    pub fn without_isolated(&self) -> Graph {
        self.induced(&self.non_isolated_vertices())
    }

    /// Applies a relabelling: vertex `v` becomes `map[v - 1]`.
    pub fn relabel(&self, map: &[Vertex]) -> Graph {
        assert_eq!(map.len(), self.n);
        let n = map.iter().copied().max().unwrap_or(0).max(self.n);
        Graph::from_trusted_edges(n, self.edges().into_iter().map(|(u, v)| (map[u - 1], map[v - 1])))
    }

    /// Connected components, each as a sorted vertex list, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n + 1];
        let mut comps = Vec::new();
        for start in 1..=self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Number of `t`-vertex cliques.
    pub fn count_cliques(&self, t: usize) -> Result<u128, GraphError> {
        if t == 0 {
            return Err(GraphError::CliqueOrder { min: 1, got: t });
        }
        Ok(match t {
            1 => self.n as u128,
            2 => self.m as u128,
            _ => CliqueCounter::new(self).count_all(t),
        })
    }

    /// `κ_s(v)`: the number of `s`-cliques containing `v`.
    pub fn cliques_at_vertex(&self, v: Vertex, s: usize) -> Result<u128, GraphError> {
        self.check_vertex(v)?;
        if s == 0 {
            return Err(GraphError::CliqueOrder { min: 1, got: s });
        }
        Ok(match s {
            1 => 1,
            2 => self.degree(v) as u128,
            _ => CliqueCounter::new(self).count_within(self.row(v), s - 1),
        })
    }

    /// `κ_s(e)`: the number of `s`-cliques containing the edge `{u, v}`.
    pub fn cliques_at_edge(&self, u: Vertex, v: Vertex, s: usize) -> Result<u128, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if s < 2 {
            return Err(GraphError::CliqueOrder { min: 2, got: s });
        }
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        Ok(self.common_neighborhood_cliques(u, v, s - 2))
    }

    /// Number of `k`-cliques inside `N(u) ∩ N(v)`; the edge need not be present.
    pub(crate) fn common_neighborhood_cliques(&self, u: Vertex, v: Vertex, k: usize) -> u128 {
        if k == 0 {
            return 1;
        }
        let common: Vec<u64> = self.row(u).iter().zip(self.row(v)).map(|(a, b)| a & b).collect();
        if k == 1 {
            return popcount(&common) as u128;
        }
        CliqueCounter::new(self).count_within(&common, k)
    }

    /// `(δ_s(G), δ'_s(G))`; each is `None` when there is no vertex or no edge to minimise over.
    pub fn min_clique_degrees(&self, s: usize) -> Result<(Option<u128>, Option<u128>), GraphError> {
        if s < 2 {
            return Err(GraphError::CliqueOrder { min: 2, got: s });
        }
        let counter = CliqueCounter::new(self);
        let at_vertex = (1..=self.n)
            .map(|v| if s == 2 { self.degree(v) as u128 } else { counter.count_within(self.row(v), s - 1) })
            .min();
        let at_edge = self
            .edges()
            .into_iter()
            .map(|(u, v)| {
                let common: Vec<u64> = self.row(u).iter().zip(self.row(v)).map(|(a, b)| a & b).collect();
                counter.count_within(&common, s - 2)
            })
            .min();
        Ok((at_vertex, at_edge))
    }

    /// `(κ_1, κ_2, …, κ_ω)`.
    pub fn clique_profile(&self) -> CliqueProfile {
        let counter = CliqueCounter::new(self);
        let mut counts = Vec::new();
        if self.n > 0 {
            counts.push(self.n as u128);
        }
        if self.m > 0 {
            counts.push(self.m as u128);
            let mut t = 3;
            loop {
                let c = counter.count_all(t);
                if c == 0 {
                    break;
                }
                counts.push(c);
                t += 1;
            }
        }
        CliqueProfile { counts }
    }

    /// Whether `pattern` occurs as a (not necessarily induced) subgraph.
    pub fn contains_subgraph(&self, pattern: &Graph) -> bool {
        if pattern.n > self.n {
            return false;
        }
        if pattern.m == 0 {
            return true;
        }
        if pattern.m > self.m {
            return false;
        }
        // Order pattern vertices so each one after the first in its component
        // has an already-placed neighbour.
        let mut order: Vec<Vertex> = Vec::new();
        let mut placed = vec![false; pattern.n + 1];
        let mut comps = pattern.components();
        comps.retain(|c| c.len() > 1);
        comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
        for comp in comps {
            let root = *comp.iter().max_by_key(|&&v| (pattern.degree(v), std::cmp::Reverse(v))).unwrap();
            placed[root] = true;
            order.push(root);
            let mut i = order.len() - 1;
            while i < order.len() {
                let mut next: Vec<Vertex> = comp
                    .iter()
                    .copied()
                    .filter(|&v| !placed[v] && pattern.neighbors(v).any(|u| placed[u]))
                    .collect();
                next.sort_by_key(|&v| {
                    let back = pattern.neighbors(v).filter(|&u| placed[u]).count();
                    (std::cmp::Reverse(back), std::cmp::Reverse(pattern.degree(v)), v)
                });
                if let Some(&v) = next.first() {
                    placed[v] = true;
                    order.push(v);
                } else {
                    i = order.len();
                }
            }
        }
        let mut image = vec![0usize; pattern.n + 1];
        let mut used = vec![0u64; self.words];
        embed(self, pattern, &order, 0, &mut image, &mut used)
    }

    /// Parses the edge-list text format: one `u v` pair per line, an optional
    /// `n <count>` header, blank lines and `#` comments ignored.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut explicit = None;
        let mut edges = Vec::new();
        let mut seen_edge = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| GraphError::Parse { line: line_no, msg: format!("not a nonnegative integer: {s:?}") })
            };
            match fields.as_slice() {
                ["n", count] => {
                    if seen_edge || explicit.is_some() {
                        return Err(GraphError::Parse { line: line_no, msg: "header must precede edges".into() });
                    }
                    explicit = Some(parse(count)?);
                }
                [u, v] => {
                    seen_edge = true;
                    let (u, v) = (parse(u)?, parse(v)?);
                    if u == 0 || v == 0 {
                        return Err(GraphError::Parse { line: line_no, msg: "vertex labels must be positive".into() });
                    }
                    edges.push((u, v));
                }
                _ => {
                    return Err(GraphError::Parse {
                        line: line_no,
                        msg: format!("expected two vertices, got {line:?}"),
                    })
                }
            }
        }
        Graph::from_edges(&edges, explicit)
    }

    /// Renders the edge-list format. A header is written only when the vertex
    /// count is not implied by the edges.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let implied = edges.iter().map(|&(_, v)| v).max().unwrap_or(0);
        let mut out = String::new();
        if implied != self.n {
            writeln!(out, "n {}", self.n).unwrap();
        }
        for (u, v) in edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}

fn embed(host: &Graph, pattern: &Graph, order: &[Vertex], depth: usize, image: &mut [usize], used: &mut [u64]) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    let mut cand: Vec<u64> = vec![!0; host.words];
    let tail = host.n % WORD;
    if tail != 0 {
        cand[host.words - 1] = (1 << tail) - 1;
    }
    if host.n == 0 {
        cand[0] = 0;
    }
    for u in pattern.neighbors(v) {
        if image[u] != 0 {
            for (c, r) in cand.iter_mut().zip(host.row(image[u])) {
                *c &= r;
            }
        }
    }
    let need = pattern.degree(v);
    for (c, u) in cand.iter_mut().zip(used.iter()) {
        *c &= !u;
    }
    let choices: Vec<usize> = ones(&cand).collect();
    for h in choices {
        if host.degree(h + 1) < need {
            continue;
        }
        image[v] = h + 1;
        bit_set(used, h);
        if embed(host, pattern, order, depth + 1, image, used) {
            return true;
        }
        bit_clear(used, h);
        image[v] = 0;
    }
    false
}

/// Clique counts `c_t = κ_t(G)` for `t = 1..=ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueProfile {
    pub counts: Vec<u128>,
}

impl CliqueProfile {
    /// The clique number.
    pub fn omega(&self) -> usize {
        self.counts.len()
    }

    /// `κ_t`, zero beyond the clique number.
    pub fn get(&self, t: usize) -> u128 {
        if t == 0 {
            return 0;
        }
        self.counts.get(t - 1).copied().unwrap_or(0)
    }
}

/// Forward adjacency over a degeneracy ordering: every clique is counted once
/// from its earliest vertex.
struct CliqueCounter {
    words: usize,
    forward: Vec<u64>,
}

impl CliqueCounter {
    fn new(g: &Graph) -> Self {
        let n = g.n;
        let words = g.words;
        let position = degeneracy_positions(g);
        let mut forward = vec![0u64; n.max(1) * words];
        for v in 1..=n {
            let row = &mut forward[(v - 1) * words..v * words];
            for u in g.neighbors(v) {
                if position[u - 1] > position[v - 1] {
                    bit_set(row, u - 1);
                }
            }
        }
        CliqueCounter { words, forward }
    }

    fn fwd(&self, i: usize) -> &[u64] {
        &self.forward[i * self.words..(i + 1) * self.words]
    }

    fn count_all(&self, k: usize) -> u128 {
        let n = self.forward.len() / self.words;
        let mut all = vec![0u64; self.words];
        for i in 0..n {
            bit_set(&mut all, i);
        }
        self.count_within(&all, k)
    }

    /// `k`-cliques contained in the vertex set `cand` (bit indices).
    fn count_within(&self, cand: &[u64], k: usize) -> u128 {
        if k == 0 {
            return 1;
        }
        if k == 1 {
            return popcount(cand) as u128;
        }
        let mut scratch = vec![0u64; self.words * (k - 1)];
        self.recurse(cand, k, &mut scratch)
    }

    fn recurse(&self, cand: &[u64], k: usize, scratch: &mut [u64]) -> u128 {
        if k == 1 {
            return popcount(cand) as u128;
        }
        let (next, rest) = scratch.split_at_mut(self.words);
        let mut total: u128 = 0;
        for i in ones(cand) {
            let mut any = false;
            for ((out, c), f) in next.iter_mut().zip(cand).zip(self.fwd(i)) {
                *out = c & f;
                any |= *out != 0;
            }
            if !any {
                continue;
            }
            let sub = if k == 2 { popcount(next) as u128 } else { self.recurse(next, k - 1, rest) };
            total = total.checked_add(sub).expect("clique count overflowed 128 bits");
        }
        total
    }
}

/// Position of each vertex (bit index) in a smallest-last degeneracy ordering.
fn degeneracy_positions(g: &Graph) -> Vec<usize> {
    let n = g.n;
    let mut degree: Vec<usize> = (1..=n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut position = vec![0; n];
    for step in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (degree[v], v)).unwrap();
        removed[v] = true;
        position[v] = step;
        for u in g.neighbors(v + 1) {
            if !removed[u - 1] {
                degree[u - 1] -= 1;
            }
        }
    }
    position
}
