//! Plain grid enumeration used to cross-check the solvers.
//!
//! Deliberately dumb: every grid assignment is visited with no pruning and no
//! incumbent logic, so these share nothing with the search engine they audit.
//! Desk-scale inputs only.

use crate::model::Instance;
use crate::rational::Q;
use crate::solvers::{candidate_grid, CandidateGrid};
use num_traits::Zero;

struct Space {
    grid: CandidateGrid,
    /// Smallest satisfying candidate index per agent and project.
    thresh: Vec<Vec<usize>>,
    n: usize,
    m: usize,
}

fn space(inst: &Instance) -> Space {
    let grid = candidate_grid(inst);
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
    Space { grid, thresh, n, m }
}

pub fn grid_points(inst: &Instance) -> u128 {
    candidate_grid(inst).points()
}

/// Calls `f(indices, total)` for every complete grid assignment.
fn for_each_assignment(space: &Space, mut f: impl FnMut(&[usize], &Q)) {
    let m = space.m;
    let mut idx = vec![0usize; m];
    // prefix[d] = sum of the chosen values for columns 0..d.
    let mut prefix = vec![Q::zero(); m + 1];
    for d in 0..m {
        prefix[d + 1] = prefix[d].clone() + &space.grid.candidates(d)[0];
    }
    loop {
        f(&idx, &prefix[m]);
        let mut d = m;
        loop {
            if d == 0 {
                return;
            }
            d -= 1;
            if idx[d] + 1 < space.grid.candidates(d).len() {
                idx[d] += 1;
                break;
            }
            idx[d] = 0;
        }
        for col in d..m {
            prefix[col + 1] = prefix[col].clone() + &space.grid.candidates(col)[idx[col]];
        }
    }
}

fn satisfied_agents(space: &Space, idx: &[usize], tau: usize) -> usize {
    (0..space.n)
        .filter(|&i| {
            (0..space.m)
                .filter(|&j| space.thresh[i][j] <= idx[j])
                .count()
                >= tau
        })
        .count()
}

/// Maximum number of agents satisfiable at `tau` within `budget`.
pub fn max_satisfied_naive(inst: &Instance, tau: usize, budget: &Q) -> usize {
    max_satisfied_naive_witness(inst, tau, budget).0
}

/// Like `max_satisfied_naive`, also returning the first maximizer in
/// lexicographic order (assignments are enumerated lexicographically).
pub fn max_satisfied_naive_witness(inst: &Instance, tau: usize, budget: &Q) -> (usize, Vec<Q>) {
    let space = space(inst);
    let mut best = 0;
    let mut witness = vec![0usize; space.m];
    let mut seen_feasible = false;
    for_each_assignment(&space, |idx, spent| {
        if spent <= budget {
            let count = satisfied_agents(&space, idx, tau);
            if !seen_feasible || count > best {
                seen_feasible = true;
                best = count;
                witness.copy_from_slice(idx);
            }
        }
    });
    let coords = witness
        .iter()
        .enumerate()
        .map(|(j, &c)| space.grid.candidates(j)[c].clone())
        .collect();
    (best, coords)
}

pub fn all_sat_naive(inst: &Instance, tau: usize, budget: &Q) -> bool {
    max_satisfied_naive(inst, tau, budget) == inst.agents()
}

/// Minimum total of a grid assignment satisfying every agent at `tau`.
pub fn min_budget_naive(inst: &Instance, tau: usize) -> Q {
    min_budget_naive_witness(inst, tau).0
}

/// Like `min_budget_naive`, also returning the first minimizer in
/// lexicographic order.
pub fn min_budget_naive_witness(inst: &Instance, tau: usize) -> (Q, Vec<Q>) {
    let space = space(inst);
    let mut best: Option<Q> = None;
    let mut witness = vec![0usize; space.m];
    for_each_assignment(&space, |idx, spent| {
        if satisfied_agents(&space, idx, tau) == space.n && best.as_ref().is_none_or(|b| spent < b)
        {
            best = Some(spent.clone());
            witness.copy_from_slice(idx);
        }
    });
    let coords = witness
        .iter()
        .enumerate()
        .map(|(j, &c)| space.grid.candidates(j)[c].clone())
        .collect();
    (best.expect("column maxima satisfy every agent"), coords)
}

/// Maximum count of locally satisfied agent-project pairs within `budget`.
pub fn max_pairs_naive(inst: &Instance, budget: &Q) -> usize {
    let space = space(inst);
    let mut best = 0;
    for_each_assignment(&space, |idx, spent| {
        if spent <= budget {
            let pairs: usize = (0..space.n)
                .map(|i| {
                    (0..space.m)
                        .filter(|&j| space.thresh[i][j] <= idx[j])
                        .count()
                })
                .sum();
            best = best.max(pairs);
        }
    });
    best
}
