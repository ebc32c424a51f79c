//! Exhaustive searches that re-derive the extremal values independently of
//! the closed forms.
//!
//! Every search has a safety cap; exceeding it is an error unless the caps are
//! overridden (`OracleConfig::override_caps`, or `MEXKIT_CAP_OVERRIDE=1`).

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use itertools::Itertools;
use thiserror::Error;

use crate::canon::{canonical_form, CanonicalForm};
use crate::colex::binomial;
use crate::graph::{ones, Graph, Vertex};

pub const CAP_OVERRIDE_ENV: &str = "MEXKIT_CAP_OVERRIDE";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} = {value} exceeds the safety cap {cap} (override with {CAP_OVERRIDE_ENV}=1)")]
    CapExceeded { what: &'static str, value: u128, cap: u128 },
    #[error("{what} = {value} is too large for exact mode (cap {cap}); use the heuristic instead")]
    TooLargeForExact { what: &'static str, value: u128, cap: u128 },
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("no family of the requested size satisfies the restriction")]
    NoFeasibleFamily,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest edge count `enumerate_graphs` accepts.
    pub edge_cap: usize,
    /// Largest vertex count `brute_force_ex` accepts.
    pub ex_vertex_cap: usize,
    /// Largest number of families `brute_force_min_shadow` may examine.
    pub family_cap: u128,
    /// Largest non-isolated vertex count for exact min-edits.
    pub edits_vertex_cap: usize,
    pub blowup_vertex_cap: usize,
    pub blowup_part_cap: usize,
    pub override_caps: bool,
    /// Witnesses reported; the optimum is exact regardless.
    pub witness_limit: usize,
    pub workers: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            edge_cap: 10,
            ex_vertex_cap: 8,
            family_cap: 10_000_000,
            edits_vertex_cap: 16,
            blowup_vertex_cap: 30,
            blowup_part_cap: 3,
            override_caps: false,
            witness_limit: 16,
            workers: 1,
        }
    }
}

impl OracleConfig {
    /// Defaults, with caps lifted when `MEXKIT_CAP_OVERRIDE=1`.
    pub fn from_env() -> Self {
        let override_caps = std::env::var(CAP_OVERRIDE_ENV).is_ok_and(|v| v == "1");
        OracleConfig { override_caps, ..Default::default() }
    }

    fn check_cap(&self, what: &'static str, value: u128, cap: u128) -> Result<(), OracleError> {
        if value > cap && !self.override_caps {
            Err(OracleError::CapExceeded { what, value, cap })
        } else {
            Ok(())
        }
    }
}

/// Optimum of an exhaustive search together with canonical witnesses.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub optimum: u128,
    /// Canonical forms attaining the optimum, sorted and truncated to the witness limit.
    pub witnesses: Vec<Graph>,
    /// Number of pairwise non-isomorphic graphs attaining the optimum.
    pub witness_count: usize,
    pub search_space_size: u128,
    pub elapsed: Duration,
}

/// Running max with the set of canonical witnesses; merging is associative.
#[derive(Default)]
struct Best {
    value: Option<u128>,
    witnesses: BTreeSet<CanonicalForm>,
}

impl Best {
    fn offer(&mut self, value: u128, witness: impl FnOnce() -> CanonicalForm) {
        match self.value {
            Some(v) if value < v => {}
            Some(v) if value == v => {
                self.witnesses.insert(witness());
            }
            _ => {
                self.value = Some(value);
                self.witnesses.clear();
                self.witnesses.insert(witness());
            }
        }
    }

    fn merge(mut self, other: Best) -> Best {
        match (self.value, other.value) {
            (_, None) => self,
            (None, _) => other,
            (Some(a), Some(b)) if a > b => self,
            (Some(a), Some(b)) if a < b => other,
            _ => {
                self.witnesses.extend(other.witnesses);
                self
            }
        }
    }

    fn finish(self, limit: usize, space: u128, started: Instant) -> SearchResult {
        SearchResult {
            optimum: self.value.unwrap_or(0),
            witness_count: self.witnesses.len(),
            witnesses: self.witnesses.iter().take(limit).map(CanonicalForm::to_graph).collect(),
            search_space_size: space,
            elapsed: started.elapsed(),
        }
    }
}

/// Splits `items` into `workers` contiguous blocks, runs `f` on each, and
/// returns the results in block order.
fn par_blocks<T: Sync, R: Send>(items: &[T], workers: usize, f: impl Fn(&[T]) -> R + Sync) -> Vec<R> {
    let workers = workers.max(1);
    if workers == 1 || items.len() < 2 {
        return vec![f(items)];
    }
    let chunk = items.len().div_ceil(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| scope.spawn(|| f(c))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// Every graph with exactly `m` edges and no isolated vertices, once per
/// isomorphism class, as canonical representatives in canonical order.
///
/// Graphs are grown one edge at a time; deleting any edge of an `m`-edge graph
/// (and any vertex left isolated) gives an `(m-1)`-edge graph, so extending
/// every class at level `m - 1` by every possible edge reaches every class.
pub fn enumerate_graphs(m: usize, n_max: usize, config: &OracleConfig) -> Result<Vec<Graph>, OracleError> {
    Ok(enumerate_levels(m, n_max, config)?.pop().unwrap_or_default())
}

/// Levels `1..=m_max` of [`enumerate_graphs`].
pub fn enumerate_levels(m_max: usize, n_max: usize, config: &OracleConfig) -> Result<Vec<Vec<Graph>>, OracleError> {
    if m_max == 0 {
        return Err(OracleError::Parameters("m must be at least 1".into()));
    }
    config.check_cap("m", m_max as u128, config.edge_cap as u128)?;
    let n_max = n_max.min(2 * m_max);
    let mut levels: Vec<Vec<Graph>> = Vec::with_capacity(m_max);
    let mut current: Vec<Graph> = if n_max >= 2 { vec![Graph::complete(2)] } else { Vec::new() };
    levels.push(current.clone());
    for _ in 2..=m_max {
        let parts = par_blocks(&current, config.workers, |block| {
            let mut seen = BTreeSet::new();
            for g in block {
                for child in one_edge_extensions(g, n_max) {
                    seen.insert(canonical_form(&child));
                }
            }
            seen
        });
        let merged: BTreeSet<CanonicalForm> = parts.into_iter().flatten().collect();
        current = merged.iter().map(CanonicalForm::to_graph).collect();
        levels.push(current.clone());
    }
    Ok(levels)
}

fn one_edge_extensions(g: &Graph, n_max: usize) -> Vec<Graph> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for v in 2..=n {
        for u in 1..v {
            if !g.has_edge(u, v) {
                let mut h = g.clone();
                h.add_edge(u, v);
                out.push(h);
            }
        }
    }
    if n < n_max {
        for u in 1..=n {
            let mut h = g.clone();
            h.add_edge(u, n + 1);
            out.push(h);
        }
    }
    if n + 2 <= n_max {
        let mut h = g.clone();
        h.add_edge(n + 1, n + 2);
        out.push(h);
    }
    out
}

/// `mex_{K_s}(m, F)` by exhaustion over all `m`-edge graphs.
pub fn brute_force_mex(m: usize, s: usize, forbidden: &Graph, config: &OracleConfig) -> Result<SearchResult, OracleError> {
    let graphs = enumerate_graphs(m, 2 * m, config)?;
    Ok(mex_over(&graphs, s, forbidden, config))
}

/// The `mex` search over a pre-enumerated level.
pub fn mex_over(graphs: &[Graph], s: usize, forbidden: &Graph, config: &OracleConfig) -> SearchResult {
    let started = Instant::now();
    let best = par_blocks(graphs, config.workers, |block| {
        let mut best = Best::default();
        for g in block {
            if !g.contains_subgraph(forbidden) {
                let k = g.count_cliques(s.max(1)).expect("s >= 1");
                best.offer(k, || canonical_form(g));
            }
        }
        best
    })
    .into_iter()
    .fold(Best::default(), Best::merge);
    best.finish(config.witness_limit, graphs.len() as u128, started)
}

/// Dense graph on at most 32 vertices, used by the labelled-graph sweep.
#[derive(Clone, Copy)]
struct Small {
    n: usize,
    adj: [u32; 32],
}

impl Small {
    fn from_graph(g: &Graph) -> Small {
        let mut adj = [0u32; 32];
        for (u, v) in g.edges() {
            adj[u - 1] |= 1 << (v - 1);
            adj[v - 1] |= 1 << (u - 1);
        }
        Small { n: g.vertex_count(), adj }
    }

    fn cliques(&self, t: usize) -> u128 {
        fn go(adj: &[u32; 32], cand: u32, k: usize) -> u128 {
            if k == 1 {
                return cand.count_ones() as u128;
            }
            let mut total = 0;
            let mut c = cand;
            while c != 0 {
                let v = c.trailing_zeros();
                c &= c - 1;
                // only later vertices, so each clique is seen once
                total += go(adj, cand & adj[v as usize] & !((2u32 << v) - 1), k - 1);
            }
            total
        }
        let all = if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 };
        if t == 0 {
            return 1;
        }
        go(&self.adj, all, t)
    }

    fn contains(&self, pattern: &Small, order: &[usize]) -> bool {
        fn go(host: &Small, pat: &Small, order: &[usize], depth: usize, image: &mut [u32; 32], used: u32) -> bool {
            if depth == order.len() {
                return true;
            }
            let v = order[depth];
            let all = if host.n == 32 { u32::MAX } else { (1u32 << host.n) - 1 };
            let mut cand = all & !used;
            let mut back = pat.adj[v];
            while back != 0 {
                let u = back.trailing_zeros() as usize;
                back &= back - 1;
                if image[u] != u32::MAX {
                    cand &= host.adj[image[u] as usize];
                }
            }
            while cand != 0 {
                let h = cand.trailing_zeros();
                cand &= cand - 1;
                image[v] = h;
                if go(host, pat, order, depth + 1, image, used | 1 << h) {
                    return true;
                }
            }
            image[v] = u32::MAX;
            false
        }
        if pattern.n > self.n {
            return false;
        }
        let mut image = [u32::MAX; 32];
        go(self, pattern, order, 0, &mut image, 0)
    }

    fn to_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for v in 0..self.n {
            for u in 0..v {
                if self.adj[v] >> u & 1 == 1 {
                    g.add_edge(u + 1, v + 1);
                }
            }
        }
        g
    }
}

/// Pattern vertices (0-based, non-isolated) in an order where each has an earlier neighbour when possible.
fn pattern_order(f: &Graph) -> Vec<usize> {
    let mut order = Vec::new();
    let mut placed = vec![false; f.vertex_count() + 1];
    let mut remaining: Vec<Vertex> = f.non_isolated_vertices();
    while !remaining.is_empty() {
        let pick = remaining
            .iter()
            .copied()
            .max_by_key(|&v| {
                let back = f.neighbors(v).filter(|&u| placed[u]).count();
                (back, f.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[pick] = true;
        order.push(pick - 1);
        remaining.retain(|&v| v != pick);
    }
    order
}

/// `ex_{K_t}(n, F)` by sweeping every labelled graph on `n` vertices.
pub fn brute_force_ex(n: usize, t: usize, forbidden: &Graph, config: &OracleConfig) -> Result<SearchResult, OracleError> {
    config.check_cap("n", n as u128, config.ex_vertex_cap as u128)?;
    if n > 11 {
        return Err(OracleError::Parameters("labelled sweep supports at most 11 vertices".into()));
    }
    if t == 0 {
        return Err(OracleError::Parameters("t must be at least 1".into()));
    }
    let started = Instant::now();
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let total: u64 = 1u64 << pairs.len();
    let pattern = Small::from_graph(forbidden);
    let order = pattern_order(forbidden);
    let pattern_fits = forbidden.vertex_count() <= n;
    let blocks: Vec<u64> = {
        let w = config.workers.max(1) as u64;
        let step = total.div_ceil(w);
        (0..w).map(|i| i * step).filter(|&s| s < total).collect()
    };
    let step = total.div_ceil(blocks.len() as u64);
    let best = par_blocks(&blocks, blocks.len(), |starts| {
        let mut best = Best::default();
        for &start in starts {
            let end = (start + step).min(total);
            for mask in start..end {
                let mut g = Small { n, adj: [0; 32] };
                let mut bits = mask;
                while bits != 0 {
                    let i = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let (u, v) = pairs[i];
                    g.adj[u] |= 1 << v;
                    g.adj[v] |= 1 << u;
                }
                let k = g.cliques(t);
                if best.value.is_some_and(|b| k < b) {
                    continue;
                }
                if pattern_fits && g.contains(&pattern, &order) {
                    continue;
                }
                best.offer(k, || canonical_form(&g.to_graph()));
            }
        }
        best
    })
    .into_iter()
    .fold(Best::default(), Best::merge);
    Ok(best.finish(config.witness_limit, total as u128, started))
}

/// Result of [`brute_force_min_shadow`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShadowSearch {
    pub minimum: usize,
    pub families_examined: u128,
}

/// Least `|∂_p(A)|` over all families `A` of `size` k-subsets of `[n]`,
/// optionally only over families that are r-partite for some partition of `[n]`.
pub fn brute_force_min_shadow(
    n: usize,
    k: usize,
    size: usize,
    p: usize,
    r_colorable: Option<usize>,
    config: &OracleConfig,
) -> Result<ShadowSearch, OracleError> {
    if !(1 <= p && p < k && k <= n) {
        return Err(OracleError::Parameters(format!("need 1 <= p < k <= n, got n={n} k={k} p={p}")));
    }
    let ksets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    let families = binomial(ksets.len() as u64, size as u64).unwrap_or(u128::MAX);
    config.check_cap("families", families, config.family_cap)?;
    if size > ksets.len() {
        return Err(OracleError::NoFeasibleFamily);
    }
    let psets: BTreeMap<Vec<usize>, usize> = (0..n).combinations(p).enumerate().map(|(i, s)| (s, i)).collect();
    let pwords = psets.len().div_ceil(64);
    let shadow_of: Vec<Vec<u64>> = ksets
        .iter()
        .map(|s| {
            let mut bits = vec![0u64; pwords];
            for sub in s.iter().copied().combinations(p) {
                let i = psets[&sub];
                bits[i / 64] |= 1 << (i % 64);
            }
            bits
        })
        .collect();
    let rainbow: Option<Vec<Vec<u64>>> = r_colorable.map(|r| rainbow_masks(n, r, &ksets));
    let mut search = ShadowDfs {
        shadow_of: &shadow_of,
        rainbow: rainbow.as_deref(),
        size,
        best: None,
        examined: 0,
    };
    let union = vec![0u64; pwords];
    let alive: Vec<usize> = rainbow.as_ref().map_or_else(Vec::new, |r| (0..r.len()).collect());
    search.go(0, 0, &union, &alive);
    match search.best {
        Some(minimum) => Ok(ShadowSearch { minimum, families_examined: search.examined }),
        None => Err(OracleError::NoFeasibleFamily),
    }
}

/// For each assignment of `[n]` to `r` parts, the set of k-sets meeting each
/// part at most once; only maximal masks are kept.
fn rainbow_masks(n: usize, r: usize, ksets: &[Vec<usize>]) -> Vec<Vec<u64>> {
    let words = ksets.len().div_ceil(64);
    let mut masks: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut colour = vec![0usize; n];
    // colourings up to renaming parts: each element uses a part at most one past the largest so far
    fn rec(i: usize, used: usize, r: usize, colour: &mut Vec<usize>, ksets: &[Vec<usize>], words: usize, out: &mut BTreeSet<Vec<u64>>) {
        if i == colour.len() {
            let mut bits = vec![0u64; words];
            for (j, s) in ksets.iter().enumerate() {
                if s.iter().map(|&x| colour[x]).all_unique() {
                    bits[j / 64] |= 1 << (j % 64);
                }
            }
            out.insert(bits);
            return;
        }
        for c in 0..(used + 1).min(r) {
            colour[i] = c;
            rec(i + 1, used.max(c + 1), r, colour, ksets, words, out);
        }
    }
    rec(0, 0, r, &mut colour, ksets, words, &mut masks);
    let all: Vec<Vec<u64>> = masks.into_iter().collect();
    let subset = |a: &[u64], b: &[u64]| a.iter().zip(b).all(|(x, y)| x & !y == 0);
    all.iter()
        .filter(|a| !all.iter().any(|b| b != *a && subset(a, b)))
        .cloned()
        .collect()
}

struct ShadowDfs<'a> {
    shadow_of: &'a [Vec<u64>],
    rainbow: Option<&'a [Vec<u64>]>,
    size: usize,
    best: Option<usize>,
    examined: u128,
}

impl ShadowDfs<'_> {
    fn go(&mut self, start: usize, depth: usize, union: &[u64], alive: &[usize]) {
        let current: usize = union.iter().map(|w| w.count_ones() as usize).sum();
        if depth == self.size {
            self.examined += 1;
            if self.best.map_or(true, |b| current < b) {
                self.best = Some(current);
            }
            return;
        }
        let remaining = self.size - depth;
        for j in start..=self.shadow_of.len() - remaining {
            // colourings that still make every chosen set rainbow
            let next_alive: Vec<usize> = match self.rainbow {
                Some(masks) => {
                    let keep: Vec<usize> = alive.iter().copied().filter(|&c| masks[c][j / 64] >> (j % 64) & 1 == 1).collect();
                    if keep.is_empty() {
                        continue;
                    }
                    keep
                }
                None => Vec::new(),
            };
            let next_union: Vec<u64> = union.iter().zip(&self.shadow_of[j]).map(|(a, b)| a | b).collect();
            self.go(j + 1, depth + 1, &next_union, &next_alive);
        }
    }
}

/// Least number of edges whose deletion leaves an r-partite graph, by exact
/// branch and bound over part assignments, one component at a time.
pub fn min_edits_to_r_partite(g: &Graph, r: usize, config: &OracleConfig) -> Result<usize, OracleError> {
    if r == 0 {
        return Err(OracleError::Parameters("r must be at least 1".into()));
    }
    let active = g.non_isolated_vertices().len();
    if active > config.edits_vertex_cap && !config.override_caps {
        return Err(OracleError::TooLargeForExact {
            what: "non-isolated vertices",
            value: active as u128,
            cap: config.edits_vertex_cap as u128,
        });
    }
    Ok(g.components().iter().filter(|c| c.len() > 1).map(|c| component_min_edits(g, c, r)).sum())
}

fn component_min_edits(g: &Graph, comp: &[Vertex], r: usize) -> usize {
    if comp.len() <= r {
        return 0;
    }
    // BFS from a maximum-degree vertex so each vertex has placed neighbours early
    let root = *comp.iter().max_by_key(|&&v| (g.degree(v), std::cmp::Reverse(v))).unwrap();
    let mut order = vec![root];
    let mut seen: BTreeSet<Vertex> = [root].into();
    let mut i = 0;
    while i < order.len() {
        let mut next: Vec<Vertex> = g.neighbors(order[i]).filter(|u| !seen.contains(u)).collect();
        next.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        for v in next {
            seen.insert(v);
            order.push(v);
        }
        i += 1;
    }
    let index: BTreeMap<Vertex, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let back: Vec<Vec<usize>> = order
        .iter()
        .map(|&v| g.neighbors(v).map(|u| index[&u]).filter(|&j| j < index[&v]).collect())
        .collect();
    let greedy = {
        let mut colour = vec![0usize; order.len()];
        let mut lost = 0;
        for i in 0..order.len() {
            let (c, cost) = (0..r)
                .map(|c| (c, back[i].iter().filter(|&&j| colour[j] == c).count()))
                .min_by_key(|&(c, cost)| (cost, c))
                .unwrap();
            colour[i] = c;
            lost += cost;
        }
        lost
    };
    let mut best = greedy;
    let mut colour = vec![0usize; order.len()];
    fn dfs(i: usize, used: usize, lost: usize, r: usize, back: &[Vec<usize>], colour: &mut [usize], best: &mut usize) {
        if lost >= *best {
            return;
        }
        if i == back.len() {
            *best = lost;
            return;
        }
        for c in 0..(used + 1).min(r) {
            let cost = back[i].iter().filter(|&&j| colour[j] == c).count();
            if lost + cost < *best {
                colour[i] = c;
                dfs(i + 1, used.max(c + 1), lost + cost, r, back, colour, best);
            }
        }
    }
    dfs(0, 0, 0, r, &back, &mut colour, &mut best);
    best
}

/// Local-search upper bound on [`min_edits_to_r_partite`] for graphs too large
/// for the exact search.
pub fn min_edits_upper_bound(g: &Graph, r: usize) -> usize {
    let n = g.vertex_count();
    if r == 0 || n == 0 {
        return g.edge_count();
    }
    let mut colour: Vec<usize> = (0..n).map(|i| i % r).collect();
    let conflicts = |colour: &[usize], v: Vertex, c: usize| g.neighbors(v).filter(|&u| colour[u - 1] == c).count();
    loop {
        let mut improved = false;
        for v in 1..=n {
            let here = conflicts(&colour, v, colour[v - 1]);
            if let Some((c, cost)) = (0..r).map(|c| (c, conflicts(&colour, v, c))).min_by_key(|&(c, cost)| (cost, c)) {
                if cost < here {
                    colour[v - 1] = c;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    g.edges().into_iter().filter(|&(u, v)| colour[u - 1] == colour[v - 1]).count()
}

/// Searches for a complete `parts`-partite subgraph with every part of size `t`
/// (a copy of `K_parts[t]`); returns the parts if found.
pub fn find_blowup(g: &Graph, parts: usize, t: usize, config: &OracleConfig) -> Result<Option<Vec<Vec<Vertex>>>, OracleError> {
    if parts == 0 || t == 0 {
        return Err(OracleError::Parameters("parts and t must be positive".into()));
    }
    config.check_cap("vertices", g.vertex_count() as u128, config.blowup_vertex_cap as u128)?;
    config.check_cap("t", t as u128, config.blowup_part_cap as u128)?;
    let words = g.word_count();
    let mut all = vec![0u64; words];
    for v in 0..g.vertex_count() {
        all[v / 64] |= 1 << (v % 64);
    }
    let mut found: Vec<Vec<Vertex>> = Vec::new();
    if blowup_parts(g, parts, t, &all, 0, &mut found) {
        Ok(Some(found))
    } else {
        Ok(None)
    }
}

/// Picks the remaining parts from `cand`; each part's least vertex exceeds the previous part's.
fn blowup_parts(g: &Graph, parts: usize, t: usize, cand: &[u64], floor: usize, found: &mut Vec<Vec<Vertex>>) -> bool {
    if found.len() == parts {
        return true;
    }
    let left = parts - found.len();
    if cand.iter().map(|w| w.count_ones() as usize).sum::<usize>() < left * t {
        return false;
    }
    let members: Vec<usize> = ones(cand).collect();
    let mut part = Vec::with_capacity(t);
    pick_part(g, parts, t, cand, &members, 0, floor, &mut part, found)
}

#[allow(clippy::too_many_arguments)]
fn pick_part(
    g: &Graph,
    parts: usize,
    t: usize,
    cand: &[u64],
    members: &[usize],
    from: usize,
    floor: usize,
    part: &mut Vec<usize>,
    found: &mut Vec<Vec<Vertex>>,
) -> bool {
    if part.len() == t {
        // vertices adjacent to all of this part, minus the part itself
        let mut next = cand.to_vec();
        for &v in part.iter() {
            for (w, r) in next.iter_mut().zip(g.row(v + 1)) {
                *w &= r;
            }
            next[v / 64] &= !(1 << (v % 64));
        }
        found.push(part.iter().map(|&v| v + 1).collect());
        if blowup_parts(g, parts, t, &next, part[0] + 1, found) {
            return true;
        }
        found.pop();
        return false;
    }
    for i in from..members.len() {
        let v = members[i];
        if part.is_empty() && v < floor {
            continue;
        }
        part.push(v);
        if pick_part(g, parts, t, cand, members, i + 1, floor, part, found) {
            return true;
        }
        part.pop();
    }
    false
}
