//! The hardness reductions as executable instance generators, plus brute
//! force vertex-cover and independent-set oracles for round-trip testing.

use crate::model::{Instance, ThresholdSpec, Tightness};
use crate::rational::{q, q_int, Q};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("bad parameter {param}: {reason}")]
    BadParam { param: &'static str, reason: String },
    #[error("graph must have at least one edge")]
    EmptyGraph,
    #[error("bad graph: {0}")]
    BadGraph(String),
    #[error("graph too large for brute force: {vertices} vertices (limit {limit})")]
    TooLarge { vertices: usize, limit: usize },
}

fn bad(param: &'static str, reason: impl Into<String>) -> ReductionError {
    ReductionError::BadParam {
        param,
        reason: reason.into(),
    }
}

/// Undirected simple graph; vertices are 0-based internally, 1-based in the
/// text format and in mapping documents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self, ReductionError> {
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v {
                return Err(ReductionError::BadGraph(format!(
                    "self-loop at vertex {}",
                    u + 1
                )));
            }
            if u >= vertices || v >= vertices {
                return Err(ReductionError::BadGraph(format!(
                    "edge ({}, {}) out of range",
                    u + 1,
                    v + 1
                )));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        let mut dedup = normalized.clone();
        dedup.sort_unstable();
        dedup.dedup();
        if dedup.len() != normalized.len() {
            return Err(ReductionError::BadGraph("duplicate edge".into()));
        }
        Ok(Graph {
            vertices,
            edges: normalized,
        })
    }

    /// Parses `N M` followed by `M` lines `u v` with 1-based endpoints.
    pub fn parse(text: &str) -> Result<Self, ReductionError> {
        let mut numbers = text.split_whitespace().map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| ReductionError::BadGraph(format!("not an integer: {tok:?}")))
        });
        let mut next = |what: &str| {
            numbers
                .next()
                .unwrap_or_else(|| Err(ReductionError::BadGraph(format!("missing {what}"))))
        };
        let n = next("vertex count")?;
        let m = next("edge count")?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let u = next("edge endpoint")?;
            let v = next("edge endpoint")?;
            if u == 0 || v == 0 {
                return Err(ReductionError::BadGraph("vertices are 1-based".into()));
            }
            edges.push((u - 1, v - 1));
        }
        Graph::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.vertices, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// This graph plus `count` fresh disjoint edges.
    pub fn with_disjoint_edges(&self, count: usize) -> Graph {
        let mut edges = self.edges.clone();
        let mut vertices = self.vertices;
        for _ in 0..count {
            edges.push((vertices, vertices + 1));
            vertices += 2;
        }
        Graph { vertices, edges }
    }

    /// This graph plus `count` vertices adjacent to everything.
    pub fn with_universal_vertices(&self, count: usize) -> Graph {
        let mut edges = self.edges.clone();
        let mut vertices = self.vertices;
        for _ in 0..count {
            for u in 0..vertices {
                edges.push((u, vertices));
            }
            vertices += 1;
        }
        Graph { vertices, edges }
    }
}

const BRUTE_FORCE_LIMIT: usize = 20;

fn check_brute_force_size(g: &Graph) -> Result<(), ReductionError> {
    if g.vertices > BRUTE_FORCE_LIMIT {
        return Err(ReductionError::TooLarge {
            vertices: g.vertices,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    Ok(())
}

/// Exact minimum vertex cover size by subset enumeration.
pub fn brute_force_vc(g: &Graph) -> Result<usize, ReductionError> {
    check_brute_force_size(g)?;
    let edge_masks: Vec<u32> = g.edges.iter().map(|&(u, v)| (1 << u) | (1 << v)).collect();
    let mut best = g.vertices;
    for mask in 0u32..1 << g.vertices {
        if edge_masks.iter().all(|&e| mask & e != 0) {
            best = best.min(mask.count_ones() as usize);
        }
    }
    Ok(best)
}

/// Exact maximum independent set size by subset enumeration.
pub fn brute_force_is(g: &Graph) -> Result<usize, ReductionError> {
    check_brute_force_size(g)?;
    let edge_masks: Vec<u32> = g.edges.iter().map(|&(u, v)| (1 << u) | (1 << v)).collect();
    let mut best = 0;
    for mask in 0u32..1 << g.vertices {
        if edge_masks.iter().all(|&e| (mask & e) != e) {
            best = best.max(mask.count_ones() as usize);
        }
    }
    Ok(best)
}

/// What each project of a reduced instance stands for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum ProjectRole {
    /// 1-based vertex of the (padded) graph.
    Vertex { vertex: usize },
    /// Private project of one agent (1-based agent, 1-based slot).
    Private { agent: usize, slot: usize },
    /// Non-interesting filler project.
    Filler { index: usize },
}

/// Agent-edge and project-vertex correspondence, plus any padding applied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionMapping {
    pub reduction: String,
    pub original_vertices: usize,
    pub original_edges: usize,
    pub padded_vertices: usize,
    pub padded_edges: usize,
    pub k: Option<u64>,
    pub effective_k: Option<u64>,
    /// 1-based endpoint pairs, one per agent.
    pub agent_edges: Vec<(usize, usize)>,
    pub projects: Vec<ProjectRole>,
    pub correspondence: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub instance: Instance,
    pub tau: ThresholdSpec,
    pub target_budget: Q,
    pub mapping: ReductionMapping,
}

fn vertex_projects(g: &Graph) -> Vec<ProjectRole> {
    (1..=g.vertex_count())
        .map(|vertex| ProjectRole::Vertex { vertex })
        .collect()
}

fn agent_edges(g: &Graph) -> Vec<(usize, usize)> {
    g.edges.iter().map(|&(u, v)| (u + 1, v + 1)).collect()
}

/// Vertex cover of size at most `k` exists iff every agent can be satisfied
/// at all-but-one within the unit budget: agents are edges demanding `1/k` on
/// both endpoints.
pub fn vc_to_allsat_m_minus_1(g: &Graph, k: u64) -> Result<ReductionOutput, ReductionError> {
    if g.edges.is_empty() {
        return Err(ReductionError::EmptyGraph);
    }
    if k < 2 {
        return Err(bad("k", "must be at least 2 so rows fit in the unit mass"));
    }
    let share = q(1, k as i64);
    let rows: Vec<Vec<Q>> = g
        .edges
        .iter()
        .map(|&(u, v)| {
            let mut row = vec![Q::zero(); g.vertex_count()];
            row[u] = share.clone();
            row[v] = share.clone();
            row
        })
        .collect();
    let instance = Instance::validate(rows, Tightness::General)
        .map_err(|e| ReductionError::BadGraph(e.to_string()))?;
    Ok(ReductionOutput {
        instance,
        tau: ThresholdSpec::AllButC(1),
        target_budget: q_int(1),
        mapping: ReductionMapping {
            reduction: "vc-allsat-m1".into(),
            original_vertices: g.vertex_count(),
            original_edges: g.edges.len(),
            padded_vertices: g.vertex_count(),
            padded_edges: g.edges.len(),
            k: Some(k),
            effective_k: Some(k),
            agent_edges: agent_edges(g),
            projects: vertex_projects(g),
            correspondence: format!(
                "vertex cover of size <= {k} exists iff all agents satisfiable at tau = m-1 within budget 1"
            ),
        },
    })
}

/// Strong variant for `tau = m - c`, `c >= 2`, with tight rows: the graph is
/// padded with `c + 1` disjoint edges (raising `k` accordingly) and every
/// agent gets `c - 1` private projects carrying the rest of her mass.
pub fn vc_to_allsat_m_minus_c(
    g: &Graph,
    k: u64,
    c: u32,
) -> Result<ReductionOutput, ReductionError> {
    if g.edges.is_empty() {
        return Err(ReductionError::EmptyGraph);
    }
    if c < 2 {
        return Err(bad("c", "must be at least 2; use vc-allsat-m1 for c = 1"));
    }
    let padded = g.with_disjoint_edges(c as usize + 1);
    let k_eff = k + u64::from(c) + 1;
    let vertex_count = padded.vertex_count();
    let edge_count = padded.edges.len();
    let private_per_agent = c as usize - 1;
    let m = vertex_count + private_per_agent * edge_count;
    let endpoint_share = q(1, k_eff as i64);
    let private_share = q(k_eff as i64 - 2, (c as i64 - 1) * k_eff as i64);
    let rows: Vec<Vec<Q>> = padded
        .edges
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| {
            let mut row = vec![Q::zero(); m];
            row[u] = endpoint_share.clone();
            row[v] = endpoint_share.clone();
            for s in 0..private_per_agent {
                row[vertex_count + i * private_per_agent + s] = private_share.clone();
            }
            row
        })
        .collect();
    let instance = Instance::validate(rows, Tightness::Tight)
        .map_err(|e| ReductionError::BadGraph(e.to_string()))?;
    let mut projects = vertex_projects(&padded);
    for agent in 1..=edge_count {
        for slot in 1..=private_per_agent {
            projects.push(ProjectRole::Private { agent, slot });
        }
    }
    Ok(ReductionOutput {
        instance,
        tau: ThresholdSpec::AllButC(c),
        target_budget: q_int(1),
        mapping: ReductionMapping {
            reduction: "vc-allsat-mc".into(),
            original_vertices: g.vertex_count(),
            original_edges: g.edges.len(),
            padded_vertices: vertex_count,
            padded_edges: edge_count,
            k: Some(k),
            effective_k: Some(k_eff),
            agent_edges: agent_edges(&padded),
            projects,
            correspondence: format!(
                "vertex cover of size <= {k} in the original graph iff all agents satisfiable at tau = m-{c} within budget 1"
            ),
        },
    })
}

/// Independent set of size at least `k` exists iff all agents are satisfiable
/// at the majority threshold within budget `k / (N - 2)`. Graphs with fewer
/// than `2k + 2` vertices are padded with universal vertices, which leave the
/// maximum independent set unchanged.
pub fn is_to_minbudget_half(g: &Graph, k: u64) -> Result<ReductionOutput, ReductionError> {
    if g.edges.is_empty() {
        return Err(ReductionError::EmptyGraph);
    }
    if k < 1 {
        return Err(bad("k", "must be at least 1"));
    }
    let needed = 2 * k as usize + 2;
    let padded = if g.vertex_count() < needed {
        g.with_universal_vertices(needed - g.vertex_count())
    } else {
        g.clone()
    };
    let n_vertices = padded.vertex_count();
    let filler = n_vertices - 2 * k as usize - 2;
    let m = n_vertices + filler;
    let share = q(1, n_vertices as i64 - 2);
    let rows: Vec<Vec<Q>> = padded
        .edges
        .iter()
        .map(|&(u, v)| {
            let mut row = vec![Q::zero(); m];
            #[allow(clippy::needless_range_loop)]
            for vertex in 0..n_vertices {
                if vertex != u && vertex != v {
                    row[vertex] = share.clone();
                }
            }
            row
        })
        .collect();
    let instance = Instance::validate(rows, Tightness::General)
        .map_err(|e| ReductionError::BadGraph(e.to_string()))?;
    let mut projects = vertex_projects(&padded);
    for index in 1..=filler {
        projects.push(ProjectRole::Filler { index });
    }
    Ok(ReductionOutput {
        instance,
        tau: ThresholdSpec::Half,
        target_budget: q(k as i64, n_vertices as i64 - 2),
        mapping: ReductionMapping {
            reduction: "is-minbudget-half".into(),
            original_vertices: g.vertex_count(),
            original_edges: g.edges.len(),
            padded_vertices: n_vertices,
            padded_edges: padded.edges.len(),
            k: Some(k),
            effective_k: Some(k),
            agent_edges: agent_edges(&padded),
            projects,
            correspondence: format!(
                "independent set of size >= {k} in the original graph iff all agents satisfiable at the majority threshold within the target budget"
            ),
        },
    })
}

/// Agents demand 1/2 on both endpoints; the minimum all-but-one budget is
/// exactly half the minimum vertex cover size.
pub fn vc_to_minbudget_m_minus_1(g: &Graph) -> Result<ReductionOutput, ReductionError> {
    if g.edges.is_empty() {
        return Err(ReductionError::EmptyGraph);
    }
    let rows: Vec<Vec<Q>> = g
        .edges
        .iter()
        .map(|&(u, v)| {
            let mut row = vec![Q::zero(); g.vertex_count()];
            row[u] = q(1, 2);
            row[v] = q(1, 2);
            row
        })
        .collect();
    let instance = Instance::validate(rows, Tightness::General)
        .map_err(|e| ReductionError::BadGraph(e.to_string()))?;
    Ok(ReductionOutput {
        instance,
        tau: ThresholdSpec::AllButC(1),
        target_budget: q(g.vertex_count() as i64, 2),
        mapping: ReductionMapping {
            reduction: "vc-minbudget-m1".into(),
            original_vertices: g.vertex_count(),
            original_edges: g.edges.len(),
            padded_vertices: g.vertex_count(),
            padded_edges: g.edges.len(),
            k: None,
            effective_k: None,
            agent_edges: agent_edges(g),
            projects: vertex_projects(g),
            correspondence:
                "minimum all-but-one budget equals half the minimum vertex cover size; the target is the always-sufficient m/2"
                    .into(),
        },
    })
}

/// Tight rows, `tau = 1`: endpoints get `1/m^2` and every other project gets
/// the balancing share, so a budget of `k/m^2` suffices iff a vertex cover of
/// size `k` exists. The minimum budget is exactly `vc/m^2`.
pub fn vc_to_minbudget_tau1(g: &Graph, k: u64) -> Result<ReductionOutput, ReductionError> {
    if g.edges.is_empty() {
        return Err(ReductionError::EmptyGraph);
    }
    let m = g.vertex_count();
    if m < 3 {
        return Err(bad("graph", "needs at least 3 vertices"));
    }
    // Nontriviality: k/m^2 must undercut the balancing share, i.e.
    // k < m + 2 + 2/(m - 2).
    let m_i = m as i64;
    let limit = q_int(m_i) + q_int(2) + q_int(2) / q_int(m_i - 2);
    if q_int(k as i64) >= limit {
        return Err(bad(
            "k",
            format!("must be smaller than m + 2 + 2/(m-2) = {limit}"),
        ));
    }
    let endpoint = q(1, m_i * m_i);
    let other = q(m_i * m_i - 2, (m_i - 2) * m_i * m_i);
    let rows: Vec<Vec<Q>> = g
        .edges
        .iter()
        .map(|&(u, v)| {
            (0..m)
                .map(|j| {
                    if j == u || j == v {
                        endpoint.clone()
                    } else {
                        other.clone()
                    }
                })
                .collect()
        })
        .collect();
    let instance = Instance::validate(rows, Tightness::Tight)
        .map_err(|e| ReductionError::BadGraph(e.to_string()))?;
    Ok(ReductionOutput {
        instance,
        tau: ThresholdSpec::One,
        target_budget: q(k as i64, m_i * m_i),
        mapping: ReductionMapping {
            reduction: "vc-minbudget-tau1".into(),
            original_vertices: g.vertex_count(),
            original_edges: g.edges.len(),
            padded_vertices: g.vertex_count(),
            padded_edges: g.edges.len(),
            k: Some(k),
            effective_k: Some(k),
            agent_edges: agent_edges(g),
            projects: vertex_projects(g),
            correspondence: format!(
                "vertex cover of size <= {k} exists iff all agents satisfiable at tau = 1 within the target budget"
            ),
        },
    })
}

#[cfg(test)]
pub(crate) mod test_graphs {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::new(n, edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let edges = (0..n).map(|u| (u, (u + 1) % n)).collect();
        Graph::new(n, edges).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        let edges = (1..=leaves).map(|v| (0, v)).collect();
        Graph::new(leaves + 1, edges).unwrap()
    }

    pub fn single_edge() -> Graph {
        Graph::new(2, vec![(0, 1)]).unwrap()
    }
}
