//! Step-by-step deletion procedures from the stability arguments, with full
//! traces so their bookkeeping can be checked exactly.
//!
//! The edge procedure repeatedly deletes an edge lying in few `K_s`; the
//! vertex procedure repeatedly deletes a vertex of small degree. Both stop
//! when nothing qualifies or the edge budget is spent. The theorems they come
//! from are asymptotic, so nothing here enforces "small ε" or "large m": the
//! procedures run at any scale and report what happened.

use serde::Serialize;
use thiserror::Error;

use crate::extremal::{beta, c_rs, mex_clique, ExtremalError};
use crate::graph::{Graph, Vertex};
use crate::oracle::{min_edits_to_r_partite, OracleConfig, OracleError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProcessError {
    #[error("epsilon must lie in (0, 1), got {0}")]
    Epsilon(f64),
    #[error("coefficient must be positive, got {0}")]
    Coefficient(f64),
    #[error("edge budget {budget} exceeds the {edges} edges of the graph")]
    Budget { budget: usize, edges: usize },
    #[error("the process needs s >= {min}, got {got}")]
    CliqueOrder { min: usize, got: usize },
    #[error("config is for {0:?} mode")]
    WrongMode(ProcessMode),
    #[error("the graph contains K_{0}")]
    NotCliqueFree(usize),
    #[error(transparent)]
    Extremal(#[from] ExtremalError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProcessMode {
    EdgeThreshold,
    VertexThreshold,
}

/// Constants the stability proofs derive from `ε`, evaluated in floating point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProofConstants {
    /// `1 - (s!/2^{s/2} (c_{r,s} + ε/3))^{2/s}`; `ρ` must lie strictly between this and 1.
    pub rho_lower: f64,
    /// Midpoint of the admissible interval `(max(rho_lower, 0), 1)`.
    pub rho: f64,
    /// `s(s-2) c_{r,s} ε² / 16`.
    pub delta: f64,
    /// `ε / (16r + 1)`.
    pub epsilon_prime: f64,
    /// `min{ε², δ' / (5 · 2^{(s+2)/2})}`, present when `δ'` is supplied.
    pub alpha: Option<f64>,
    /// `ε² α`.
    pub eta: Option<f64>,
}

fn factorial_f64(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

pub fn proof_constants(r: usize, s: usize, epsilon: f64, delta_prime: Option<f64>) -> Result<ProofConstants, ProcessError> {
    check_epsilon(epsilon)?;
    let c = c_rs(r, s)?.float_value;
    let sf = s as f64;
    let inner = factorial_f64(s) / 2f64.powf(sf / 2.0) * (c + epsilon / 3.0);
    let rho_lower = 1.0 - inner.powf(2.0 / sf);
    let rho = (rho_lower.max(0.0) + 1.0) / 2.0;
    let delta = sf * (sf - 2.0) * c * epsilon * epsilon / 16.0;
    let epsilon_prime = epsilon / (16.0 * r as f64 + 1.0);
    let alpha = delta_prime.map(|dp| (epsilon * epsilon).min(dp / (5.0 * 2f64.powf((sf + 2.0) / 2.0))));
    let eta = alpha.map(|a| epsilon * epsilon * a);
    Ok(ProofConstants { rho_lower, rho, delta, epsilon_prime, alpha, eta })
}

fn check_epsilon(epsilon: f64) -> Result<(), ProcessError> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(ProcessError::Epsilon(epsilon))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProcessConfig {
    pub s: usize,
    pub r: usize,
    pub epsilon: f64,
    pub mode: ProcessMode,
    /// Items are deleted while their value is below `coefficient · e(G_i)^exponent`.
    pub coefficient: f64,
    pub exponent: f64,
    pub edge_budget: usize,
}

impl ProcessConfig {
    /// Edge mode: threshold `2^{s-2} ε^{2s-4} / (s-2)! · e^{(s-2)/2}`, budget `⌊ρm⌋`.
    pub fn edge_defaults(s: usize, r: usize, epsilon: f64, m: usize) -> Result<Self, ProcessError> {
        if s < 3 {
            return Err(ProcessError::CliqueOrder { min: 3, got: s });
        }
        let consts = proof_constants(r, s, epsilon, None)?;
        let sf = s as f64;
        let coefficient = 2f64.powf(sf - 2.0) * epsilon.powf(2.0 * sf - 4.0) / factorial_f64(s - 2);
        Ok(ProcessConfig {
            s,
            r,
            epsilon,
            mode: ProcessMode::EdgeThreshold,
            coefficient,
            exponent: (sf - 2.0) / 2.0,
            edge_budget: (consts.rho * m as f64).floor() as usize,
        })
    }

    /// Vertex mode: threshold `β_r (1 - 2ε) e^{1/2}`, budget `⌊εm⌋`.
    pub fn vertex_defaults(s: usize, r: usize, epsilon: f64, m: usize) -> Result<Self, ProcessError> {
        check_epsilon(epsilon)?;
        let coefficient = beta(r)?.float_value * (1.0 - 2.0 * epsilon);
        Ok(ProcessConfig {
            s,
            r,
            epsilon,
            mode: ProcessMode::VertexThreshold,
            coefficient,
            exponent: 0.5,
            edge_budget: (epsilon * m as f64).floor() as usize,
        })
    }

    pub fn threshold(&self, edges: usize) -> f64 {
        self.coefficient * (edges as f64).powf(self.exponent)
    }

    fn validate(&self, g: &Graph, mode: ProcessMode) -> Result<(), ProcessError> {
        if self.mode != mode {
            return Err(ProcessError::WrongMode(self.mode));
        }
        check_epsilon(self.epsilon)?;
        if !(self.coefficient > 0.0) {
            return Err(ProcessError::Coefficient(self.coefficient));
        }
        if self.edge_budget > g.edge_count() {
            return Err(ProcessError::Budget { budget: self.edge_budget, edges: g.edge_count() });
        }
        if mode == ProcessMode::EdgeThreshold && self.s < 2 {
            return Err(ProcessError::CliqueOrder { min: 2, got: self.s });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Edge,
    Vertex,
    /// The last vertex when deleting it whole would overshoot the budget.
    PartialVertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub step: usize,
    pub kind: StepKind,
    /// `[u, v]` for an edge, `[v]` for a vertex.
    pub item: Vec<Vertex>,
    /// `κ_s(e)` for edges, degree for vertices, edges removed for a partial vertex.
    pub value: u128,
    pub edges_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialVertex {
    pub vertex: Vertex,
    /// Neighbours whose edges were removed, lowest labels first.
    pub removed: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcessTrace {
    pub steps: Vec<Step>,
    pub final_graph: Graph,
    /// Vertices not deleted (vertex mode); every vertex in edge mode.
    pub surviving: Vec<Vertex>,
    /// Stopped with a qualifying item left because the budget was spent.
    pub budget_exhausted: bool,
    pub partial_last_vertex: Option<PartialVertex>,
}

impl ProcessTrace {
    /// Edges removed over all steps.
    pub fn edges_removed(&self) -> usize {
        self.steps
            .iter()
            .map(|s| match s.kind {
                StepKind::Edge => 1,
                StepKind::Vertex | StepKind::PartialVertex => s.value as usize,
            })
            .sum()
    }

    /// Re-applies the recorded deletions to `initial`.
    pub fn replay(&self, initial: &Graph) -> Graph {
        let mut g = initial.clone();
        for step in &self.steps {
            match step.kind {
                StepKind::Edge => {
                    g.remove_edge(step.item[0], step.item[1]);
                }
                StepKind::Vertex => {
                    g.isolate(step.item[0]);
                }
                StepKind::PartialVertex => {
                    let p = self.partial_last_vertex.as_ref().expect("partial step has a record");
                    for &u in &p.removed {
                        g.remove_edge(p.vertex, u);
                    }
                }
            }
        }
        g
    }
}

/// Deletes, one at a time, the edge with the fewest `K_s` among those below
/// the threshold (ties to the colex-least edge).
pub fn edge_deletion_process(g: &Graph, config: &ProcessConfig) -> Result<ProcessTrace, ProcessError> {
    config.validate(g, ProcessMode::EdgeThreshold)?;
    let s = config.s;
    let mut current = g.clone();
    let mut steps = Vec::new();
    let mut budget_exhausted = false;
    loop {
        let threshold = config.threshold(current.edge_count());
        let pick = current
            .edges()
            .into_iter()
            .map(|(u, v)| (current.common_neighborhood_cliques(u, v, s - 2), u, v))
            .filter(|&(k, _, _)| (k as f64) < threshold)
            .min_by_key(|&(k, u, v)| (k, v, u));
        let Some((k, u, v)) = pick else { break };
        if steps.len() == config.edge_budget {
            budget_exhausted = true;
            break;
        }
        current.remove_edge(u, v);
        steps.push(Step { step: steps.len(), kind: StepKind::Edge, item: vec![u, v], value: k, edges_after: current.edge_count() });
    }
    let surviving = (1..=current.vertex_count()).collect();
    Ok(ProcessTrace { steps, final_graph: current, surviving, budget_exhausted, partial_last_vertex: None })
}

/// Deletes, one at a time, a least-degree vertex below the threshold (ties to
/// the lowest label). If deleting it whole would overshoot the budget, only
/// enough of its edges are removed to meet the budget exactly.
pub fn vertex_deletion_process(g: &Graph, config: &ProcessConfig) -> Result<ProcessTrace, ProcessError> {
    config.validate(g, ProcessMode::VertexThreshold)?;
    let mut current = g.clone();
    let mut alive = vec![true; g.vertex_count() + 1];
    let mut steps = Vec::new();
    let mut removed = 0usize;
    let mut partial = None;
    loop {
        let threshold = config.threshold(current.edge_count());
        let pick = (1..=current.vertex_count())
            .filter(|&v| alive[v])
            .map(|v| (current.degree(v), v))
            .filter(|&(d, _)| (d as f64) < threshold)
            .min();
        let Some((d, v)) = pick else { break };
        if removed + d > config.edge_budget || removed == config.edge_budget {
            let take = config.edge_budget - removed;
            let nbrs: Vec<Vertex> = current.neighbors(v).take(take).collect();
            for &u in &nbrs {
                current.remove_edge(v, u);
            }
            if take > 0 {
                steps.push(Step {
                    step: steps.len(),
                    kind: StepKind::PartialVertex,
                    item: vec![v],
                    value: take as u128,
                    edges_after: current.edge_count(),
                });
            }
            partial = Some(PartialVertex { vertex: v, removed: nbrs });
            break;
        }
        current.isolate(v);
        alive[v] = false;
        removed += d;
        steps.push(Step { step: steps.len(), kind: StepKind::Vertex, item: vec![v], value: d as u128, edges_after: current.edge_count() });
    }
    let surviving = (1..=current.vertex_count()).filter(|&v| alive[v]).collect();
    Ok(ProcessTrace { budget_exhausted: partial.is_some(), steps, final_graph: current, surviving, partial_last_vertex: partial })
}

/// Outcome of running the vertex procedure with its default constants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DenseCoreReport {
    pub deleted_vertices: usize,
    pub edges_removed: usize,
    pub surviving_vertices: usize,
    pub surviving_edges: usize,
    pub min_degree: Option<usize>,
    pub partial_last_vertex: Option<PartialVertex>,
    /// `δ(G') >= β_r (1 - 2ε) (m')^{1/2}`.
    pub degree_vs_edges: Option<bool>,
    /// `δ(G') >= ((r-1)/r - 4ε) n'`.
    pub degree_vs_vertices: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    pub r: usize,
    pub s: usize,
    pub epsilon: f64,
    pub edges: usize,
    pub kappa_s: u128,
    pub mex: u128,
    /// `κ_s(G) / mex`, absent when the extremal value is zero.
    pub ratio: Option<f64>,
    pub min_edits: usize,
    /// `min_edits <= ε m`.
    pub edits_within_epsilon: bool,
    pub dense_core: DenseCoreReport,
}

/// Measures how close a `K_{r+1}`-free graph is to being r-partite and runs
/// the dense-core vertex procedure on it. Reports only; asserts nothing.
pub fn stability_experiment(
    g: &Graph,
    r: usize,
    s: usize,
    epsilon: f64,
    oracle: &OracleConfig,
) -> Result<StabilityReport, ProcessError> {
    check_epsilon(epsilon)?;
    if g.contains_subgraph(&Graph::complete(r + 1)) {
        return Err(ProcessError::NotCliqueFree(r + 1));
    }
    let m = g.edge_count();
    let kappa_s = g.count_cliques(s).map_err(|_| ProcessError::CliqueOrder { min: 2, got: s })?;
    let mex = mex_clique(m, s, r)?;
    let min_edits = min_edits_to_r_partite(g, r, oracle)?;
    let config = ProcessConfig::vertex_defaults(s, r, epsilon, m)?;
    let trace = vertex_deletion_process(g, &config)?;
    let core = &trace.final_graph;
    let min_degree = trace.surviving.iter().map(|&v| core.degree(v)).min();
    let n_core = trace.surviving.len();
    let m_core = core.edge_count();
    let beta_r = beta(r)?.float_value;
    let dense_core = DenseCoreReport {
        deleted_vertices: trace.steps.iter().filter(|s| s.kind == StepKind::Vertex).count(),
        edges_removed: trace.edges_removed(),
        surviving_vertices: n_core,
        surviving_edges: m_core,
        min_degree,
        partial_last_vertex: trace.partial_last_vertex.clone(),
        degree_vs_edges: min_degree.map(|d| d as f64 >= beta_r * (1.0 - 2.0 * epsilon) * (m_core as f64).sqrt()),
        degree_vs_vertices: min_degree
            .map(|d| d as f64 >= ((r as f64 - 1.0) / r as f64 - 4.0 * epsilon) * n_core as f64),
    };
    Ok(StabilityReport {
        r,
        s,
        epsilon,
        edges: m,
        kappa_s,
        mex,
        ratio: (mex > 0).then(|| kappa_s as f64 / mex as f64),
        min_edits,
        edits_within_epsilon: (min_edits as f64) <= epsilon * m as f64,
        dense_core,
    })
}
