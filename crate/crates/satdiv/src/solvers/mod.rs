//! Exact decision and optimization procedures.
//!
//! The searches enumerate only the candidate grid: per project, zero plus the
//! demand values declared for it. Snapping any solution down to this grid
//! keeps every satisfied agent satisfied without increasing the total, so the
//! restriction loses nothing. Everything here is deterministic: columns are
//! scanned left to right, candidates ascending, and ties between optima
//! resolve to the lexicographically smallest coordinate vector.

mod pseudopoly;
mod search;
mod utilitarian;

pub use pseudopoly::solve_m_minus_1_tight;
pub use utilitarian::{dp_tables, utilitarian_dp, DpTables, UtilitarianOutcome};

use crate::model::{Instance, ModelError, Solution};
use crate::rational::{q_int, Q};
use num_traits::Zero;
use search::{MaxSatSearch, MinBudgetSearch, SearchContext};
use thiserror::Error;

/// Default cap on explored search nodes. The exhaustive searches are
/// desk-scale oracles; instances past this size are refused, not degraded.
pub const DEFAULT_NODE_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("search space exceeds the node limit of {limit}")]
    TooLarge { limit: u64 },
    #[error("budget must be non-negative")]
    NegativeBudget,
    #[error("base solution must use demand values, dominate nothing, and cost at most 1")]
    BadBase,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Per project, the sorted distinct values a solution coordinate needs to
/// consider: zero plus every demand declared for that project.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateGrid {
    per_project: Vec<Vec<Q>>,
}

impl CandidateGrid {
    pub fn candidates(&self, project: usize) -> &[Q] {
        &self.per_project[project]
    }

    pub fn projects(&self) -> usize {
        self.per_project.len()
    }

    /// Number of complete grid assignments, saturating.
    pub fn points(&self) -> u128 {
        self.per_project
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
    }
}

pub fn candidate_grid(inst: &Instance) -> CandidateGrid {
    let per_project = (0..inst.projects())
        .map(|j| {
            let mut vals: Vec<Q> = Vec::with_capacity(inst.agents() + 1);
            vals.push(Q::zero());
            for row in inst.rows() {
                vals.push(row[j].clone());
            }
            vals.sort();
            vals.dedup();
            vals
        })
        .collect();
    CandidateGrid { per_project }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxSatOutcome {
    pub solution: Solution,
    pub satisfied_count: usize,
    pub stats: SearchStats,
}

/// Maximizes the number of satisfied agents over grid solutions with total at
/// most `budget`.
pub fn max_satisfied_exact(
    inst: &Instance,
    tau: usize,
    budget: &Q,
    node_limit: u64,
) -> Result<MaxSatOutcome, SolveError> {
    check_tau(inst, tau)?;
    if budget < &Q::zero() {
        return Err(SolveError::NegativeBudget);
    }
    let grid = candidate_grid(inst);
    if grid.points() > u128::from(node_limit) {
        return Err(SolveError::TooLarge { limit: node_limit });
    }
    let ctx = SearchContext::new(inst, &grid);
    let mut search = MaxSatSearch::new(&ctx, tau, budget, false, node_limit);
    search.run()?;
    debug_assert!(search.best_count >= 0, "zero solution is always feasible");
    Ok(MaxSatOutcome {
        solution: solution_from_choice(&grid, &search.best_choice),
        satisfied_count: search.best_count as usize,
        stats: SearchStats {
            nodes: search.nodes,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinBudgetOutcome {
    pub budget: Q,
    pub solution: Solution,
    pub stats: SearchStats,
}

/// Minimum total over grid solutions satisfying every agent at `tau`. Always
/// feasible: the column maxima satisfy everyone.
pub fn min_budget_exact(
    inst: &Instance,
    tau: usize,
    node_limit: u64,
) -> Result<MinBudgetOutcome, SolveError> {
    check_tau(inst, tau)?;
    if tau == inst.projects() {
        // Any all-satisfying solution dominates the column maxima, so they
        // are the unique optimum.
        let solution = column_maxima(inst);
        return Ok(MinBudgetOutcome {
            budget: solution.total(),
            solution,
            stats: SearchStats::default(),
        });
    }
    let grid = candidate_grid(inst);
    if grid.points() > u128::from(node_limit) {
        return Err(SolveError::TooLarge { limit: node_limit });
    }
    let ctx = SearchContext::new(inst, &grid);
    let mut search = MinBudgetSearch::new(&ctx, tau, node_limit);
    search.run()?;
    let (budget, choice) = search
        .best
        .expect("column maxima always satisfy all agents");
    Ok(MinBudgetOutcome {
        budget,
        solution: solution_from_choice(&grid, &choice),
        stats: SearchStats {
            nodes: search.nodes,
        },
    })
}

/// How an all-agents decision was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveRoute {
    ClosedFormTau1,
    ClosedFormTauM,
    PseudoPolynomial,
    ExhaustiveSearch,
}

impl SolveRoute {
    pub fn label(&self) -> &'static str {
        match self {
            SolveRoute::ClosedFormTau1 => "closed form (tau = 1)",
            SolveRoute::ClosedFormTauM => "closed form (tau = m)",
            SolveRoute::PseudoPolynomial => "all-but-one branching (tight rows)",
            SolveRoute::ExhaustiveSearch => "exhaustive grid search",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllSatOutcome {
    /// `Some` with a witness satisfying every agent within budget, or `None`.
    pub solution: Option<Solution>,
    pub route: SolveRoute,
    pub stats: SearchStats,
}

impl AllSatOutcome {
    pub fn satisfiable(&self) -> bool {
        self.solution.is_some()
    }
}

/// Decides whether some solution with total at most `budget` satisfies every
/// agent at `tau`, dispatching to the cheapest applicable procedure.
pub fn all_agents_sat(
    inst: &Instance,
    tau: usize,
    budget: &Q,
    node_limit: u64,
) -> Result<AllSatOutcome, SolveError> {
    check_tau(inst, tau)?;
    if budget < &Q::zero() {
        return Err(SolveError::NegativeBudget);
    }
    let m = inst.projects();
    let one = q_int(1);
    if tau == 1 && budget >= &one {
        return Ok(AllSatOutcome {
            solution: Some(solve_tau1(inst)),
            route: SolveRoute::ClosedFormTau1,
            stats: SearchStats::default(),
        });
    }
    if tau == m {
        return Ok(AllSatOutcome {
            solution: solve_tau_m(inst, budget),
            route: SolveRoute::ClosedFormTauM,
            stats: SearchStats::default(),
        });
    }
    if tau + 1 == m && budget == &one && inst.rows_are_tight() {
        let zero = Solution::from_grid_values(vec![Q::zero(); m]);
        let solution = solve_m_minus_1_tight(inst, &zero)?;
        return Ok(AllSatOutcome {
            solution,
            route: SolveRoute::PseudoPolynomial,
            stats: SearchStats::default(),
        });
    }
    let grid = candidate_grid(inst);
    if grid.points() > u128::from(node_limit) {
        return Err(SolveError::TooLarge { limit: node_limit });
    }
    let ctx = SearchContext::new(inst, &grid);
    let mut search = MaxSatSearch::new(&ctx, tau, budget, true, node_limit);
    search.run()?;
    let solution = (search.best_count == inst.agents() as i64)
        .then(|| solution_from_choice(&grid, &search.best_choice));
    Ok(AllSatOutcome {
        solution,
        route: SolveRoute::ExhaustiveSearch,
        stats: SearchStats {
            nodes: search.nodes,
        },
    })
}

/// Uniform spending `1/m` per project: total exactly 1, and any agent whose
/// demands respect the mass constraint has some demand at most `1/m`.
pub fn solve_tau1(inst: &Instance) -> Solution {
    let m = inst.projects();
    let share = q_int(1) / q_int(m as i64);
    Solution::from_grid_values(vec![share; m])
}

/// Column maxima if affordable within `budget`, otherwise no solution exists
/// at `tau = m`.
pub fn solve_tau_m(inst: &Instance, budget: &Q) -> Option<Solution> {
    let solution = column_maxima(inst);
    (&solution.total() <= budget).then_some(solution)
}

pub(crate) fn column_maxima(inst: &Instance) -> Solution {
    let coords = (0..inst.projects()).map(|j| inst.column_max(j)).collect();
    Solution::from_grid_values(coords)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DictatorOutcome {
    /// 0-based index of the winning agent.
    pub agent: usize,
    pub solution: Solution,
    pub satisfied_count: usize,
}

/// Outputs the demand row that tau-covers the most rows (ties to the smallest
/// agent index). An agent always covers herself.
pub fn dictator(inst: &Instance, tau: usize) -> Result<DictatorOutcome, SolveError> {
    check_tau(inst, tau)?;
    let mut best: Option<(usize, usize)> = None;
    for i in 0..inst.agents() {
        let count = inst
            .rows()
            .iter()
            .filter(|row| crate::model::tau_covers(inst.row(i), row, tau).expect("equal lengths"))
            .count();
        if best.as_ref().is_none_or(|&(c, _)| count > c) {
            best = Some((count, i));
        }
    }
    let (satisfied_count, agent) = best.expect("instance has at least one agent");
    Ok(DictatorOutcome {
        agent,
        solution: Solution::from_grid_values(inst.row(agent).to_vec()),
        satisfied_count,
    })
}

fn check_tau(inst: &Instance, tau: usize) -> Result<(), SolveError> {
    let m = inst.projects();
    if tau < 1 || tau > m {
        return Err(SolveError::Model(ModelError::TauOutOfRange {
            tau: tau as i64,
            m,
        }));
    }
    Ok(())
}

fn solution_from_choice(grid: &CandidateGrid, choice: &[usize]) -> Solution {
    let coords = choice
        .iter()
        .enumerate()
        .map(|(j, &idx)| grid.candidates(j)[idx].clone())
        .collect();
    Solution::from_grid_values(coords)
}
