//! Depth-first exact search over the per-project candidate grid.
//!
//! Columns are processed left to right and candidates in ascending order, so
//! complete assignments are visited in lexicographic order. Incumbents are
//! replaced only on strict improvement, which makes the reported witness the
//! lexicographically smallest optimum without any post-processing.

use super::{CandidateGrid, SolveError};
use crate::model::Instance;
use crate::rational::Q;
use num_traits::Zero;

/// Per-agent, per-project index of the smallest candidate that locally
/// satisfies the demand. Turns every satisfaction test in the hot loop into
/// an integer comparison.
pub(super) struct SearchContext<'a> {
    pub grid: &'a CandidateGrid,
    pub thresh: Vec<Vec<usize>>,
    pub n: usize,
    pub m: usize,
}

impl<'a> SearchContext<'a> {
    pub fn new(inst: &Instance, grid: &'a CandidateGrid) -> Self {
        let n = inst.agents();
        let m = inst.projects();
        let thresh = (0..n)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        grid.candidates(j)
                            .partition_point(|v| v < inst.demand(i, j))
                    })
                    .collect()
            })
            .collect();
        SearchContext { grid, thresh, n, m }
    }
}

fn check_limit(nodes: &mut u64, limit: u64) -> Result<(), SolveError> {
    *nodes += 1;
    if *nodes > limit {
        Err(SolveError::TooLarge { limit })
    } else {
        Ok(())
    }
}

pub(super) struct MaxSatSearch<'a> {
    ctx: &'a SearchContext<'a>,
    budget: &'a Q,
    tau: usize,
    /// All-satisfied decision mode: prune any branch with a dead agent and
    /// stop at the first full-satisfaction witness.
    require_all: bool,
    node_limit: u64,
    pub nodes: u64,
    sat: Vec<usize>,
    satisfied_now: usize,
    choice: Vec<usize>,
    pub best_count: i64,
    pub best_choice: Vec<usize>,
    done: bool,
}

impl<'a> MaxSatSearch<'a> {
    pub fn new(
        ctx: &'a SearchContext<'a>,
        tau: usize,
        budget: &'a Q,
        require_all: bool,
        node_limit: u64,
    ) -> Self {
        MaxSatSearch {
            ctx,
            budget,
            tau,
            require_all,
            node_limit,
            nodes: 0,
            sat: vec![0; ctx.n],
            satisfied_now: 0,
            choice: vec![0; ctx.m],
            best_count: -1,
            best_choice: Vec::new(),
            done: false,
        }
    }

    pub fn run(&mut self) -> Result<(), SolveError> {
        let zero = Q::zero();
        self.dfs(0, &zero)
    }

    fn dfs(&mut self, depth: usize, spent: &Q) -> Result<(), SolveError> {
        if self.done {
            return Ok(());
        }
        if depth == self.ctx.m {
            if self.satisfied_now as i64 > self.best_count {
                self.best_count = self.satisfied_now as i64;
                self.best_choice = self.choice.clone();
                if self.require_all && self.satisfied_now == self.ctx.n {
                    self.done = true;
                }
            }
            return Ok(());
        }
        let remaining = self.ctx.m - depth - 1;
        for (idx, value) in self.ctx.grid.candidates(depth).iter().enumerate() {
            check_limit(&mut self.nodes, self.node_limit)?;
            let child_spent = spent + value;
            if &child_spent > self.budget {
                break;
            }
            let mut gained = 0;
            for i in 0..self.ctx.n {
                if self.ctx.thresh[i][depth] <= idx {
                    self.sat[i] += 1;
                    if self.sat[i] == self.tau {
                        self.satisfied_now += 1;
                        gained += 1;
                    }
                }
            }
            let viable = if self.require_all {
                (0..self.ctx.n).all(|i| self.sat[i] + remaining >= self.tau)
            } else {
                let alive = (0..self.ctx.n)
                    .filter(|&i| self.sat[i] + remaining >= self.tau)
                    .count();
                alive as i64 > self.best_count
            };
            if viable {
                self.choice[depth] = idx;
                self.dfs(depth + 1, &child_spent)?;
            }
            for i in 0..self.ctx.n {
                if self.ctx.thresh[i][depth] <= idx {
                    self.sat[i] -= 1;
                }
            }
            self.satisfied_now -= gained;
            if self.done {
                return Ok(());
            }
        }
        Ok(())
    }
}

pub(super) struct MinBudgetSearch<'a> {
    ctx: &'a SearchContext<'a>,
    tau: usize,
    node_limit: u64,
    pub nodes: u64,
    sat: Vec<usize>,
    satisfied_now: usize,
    choice: Vec<usize>,
    pub best: Option<(Q, Vec<usize>)>,
}

impl<'a> MinBudgetSearch<'a> {
    pub fn new(ctx: &'a SearchContext<'a>, tau: usize, node_limit: u64) -> Self {
        MinBudgetSearch {
            ctx,
            tau,
            node_limit,
            nodes: 0,
            sat: vec![0; ctx.n],
            satisfied_now: 0,
            choice: vec![0; ctx.m],
            best: None,
        }
    }

    pub fn run(&mut self) -> Result<(), SolveError> {
        let zero = Q::zero();
        self.dfs(0, &zero)
    }

    fn dfs(&mut self, depth: usize, spent: &Q) -> Result<(), SolveError> {
        if depth == self.ctx.m {
            if self.satisfied_now == self.ctx.n && self.best.as_ref().is_none_or(|(b, _)| spent < b)
            {
                self.best = Some((spent.clone(), self.choice.clone()));
            }
            return Ok(());
        }
        let remaining = self.ctx.m - depth - 1;
        for (idx, value) in self.ctx.grid.candidates(depth).iter().enumerate() {
            check_limit(&mut self.nodes, self.node_limit)?;
            let child_spent = spent + value;
            if let Some((bound, _)) = &self.best {
                if &child_spent >= bound {
                    break;
                }
            }
            let mut gained = 0;
            for i in 0..self.ctx.n {
                if self.ctx.thresh[i][depth] <= idx {
                    self.sat[i] += 1;
                    if self.sat[i] == self.tau {
                        self.satisfied_now += 1;
                        gained += 1;
                    }
                }
            }
            // Every agent must still be able to reach tau.
            let viable = (0..self.ctx.n).all(|i| self.sat[i] + remaining >= self.tau);
            if viable {
                self.choice[depth] = idx;
                self.dfs(depth + 1, &child_spent)?;
            }
            for i in 0..self.ctx.n {
                if self.ctx.thresh[i][depth] <= idx {
                    self.sat[i] -= 1;
                }
            }
            self.satisfied_now -= gained;
        }
        Ok(())
    }
}
