//! All-but-one satisfaction for tight demands, without enumerating the grid.
//!
//! Works on a growing base vector. Agents already satisfied for all but at
//! most one project drop out. Otherwise, an agent whose unsatisfied demands
//! split evenly (both halves of a greedy partition cost at least a quarter of
//! the residual budget) forces a two-way branch; when no such agent exists,
//! every remaining agent holds exactly one "expensive" demand above half the
//! residual budget, and the search branches on which project, if any, gets an
//! expensive demand satisfied. Every branch spends a constant fraction of the
//! residual budget, and tight rows guarantee residual demand never undercuts
//! it, so the recursion bottoms out quickly.

use super::SolveError;
use crate::model::{Instance, ModelError, Solution};
use crate::rational::{q_int, total, Q};
use num_traits::Zero;

/// Finds a solution dominating `base` (coordinate-wise) with total at most 1
/// that satisfies at least `m - 1` demands of every agent, or reports that
/// none exists. Requires every row to sum to exactly 1 and `base` to use only
/// zero or declared demand values with total at most 1.
pub fn solve_m_minus_1_tight(
    inst: &Instance,
    base: &Solution,
) -> Result<Option<Solution>, SolveError> {
    let m = inst.projects();
    if base.len() != m {
        return Err(SolveError::Model(ModelError::DimensionMismatch {
            expected: m,
            found: base.len(),
        }));
    }
    let one = q_int(1);
    for (i, row) in inst.rows().iter().enumerate() {
        if total(row) != one {
            return Err(SolveError::Model(ModelError::NotTight { agent: i + 1 }));
        }
    }
    for (j, b) in base.coords().iter().enumerate() {
        let known = b.is_zero() || inst.rows().iter().any(|row| &row[j] == b);
        if !known {
            return Err(SolveError::BadBase);
        }
    }
    if base.total() > one {
        return Err(SolveError::BadBase);
    }
    Ok(search(inst, base.coords().to_vec()).map(Solution::from_grid_values))
}

fn search(inst: &Instance, x: Vec<Q>) -> Option<Vec<Q>> {
    let one = q_int(1);
    let residual_budget = &one - total(&x);
    debug_assert!(residual_budget >= Q::zero());

    // Agents satisfied for all but at most one project no longer constrain
    // the search: the result dominates x, so they stay satisfied.
    let active: Vec<(usize, Vec<usize>)> = (0..inst.agents())
        .filter_map(|i| {
            let unsat: Vec<usize> = (0..inst.projects())
                .filter(|&j| inst.demand(i, j) > &x[j])
                .collect();
            (unsat.len() >= 2).then_some((i, unsat))
        })
        .collect();
    if active.is_empty() {
        return Some(x);
    }

    // If no unsatisfied demand is reachable even by spending the whole
    // residual budget on it, nothing dominating x can help.
    let reachable = active.iter().any(|(i, unsat)| {
        unsat
            .iter()
            .any(|&j| inst.demand(*i, j) - &x[j] <= residual_budget)
    });
    if !reachable {
        return None;
    }

    // Greedy partition: unsatisfied projects in non-increasing residual
    // order, split alternately. A feasible outcome must fully satisfy one
    // side, so a balanced split lets us branch while spending at least a
    // quarter of the residual budget either way.
    for (agent, unsat) in &active {
        let mut residuals: Vec<(Q, usize)> = unsat
            .iter()
            .map(|&j| (inst.demand(*agent, j) - &x[j], j))
            .collect();
        residuals.sort_by(|(da, ja), (db, jb)| db.cmp(da).then(ja.cmp(jb)));
        let mut halves = [Vec::new(), Vec::new()];
        let mut sums = [Q::zero(), Q::zero()];
        for (pos, (residual, j)) in residuals.iter().enumerate() {
            halves[pos % 2].push(*j);
            sums[pos % 2] += residual;
        }
        let quarter_ok = sums.iter().all(|s| s.clone() * q_int(4) >= residual_budget);
        if quarter_ok {
            for half in &halves {
                let mut forced = x.clone();
                for &j in half {
                    forced[j] = inst.demand(*agent, j).clone();
                }
                if total(&forced) <= one {
                    if let Some(sol) = search(inst, forced) {
                        return Some(sol);
                    }
                }
            }
            return None;
        }
    }

    // No balanced agent: each active agent has exactly one expensive project
    // whose residual demand exceeds half the residual budget, and a feasible
    // outcome can afford expensive demands on at most one project.
    let expensive: Vec<(usize, usize)> = active
        .iter()
        .map(|(agent, unsat)| {
            let mut over: Vec<usize> = unsat
                .iter()
                .copied()
                .filter(|&j| (inst.demand(*agent, j) - &x[j]) * q_int(2) > residual_budget)
                .collect();
            debug_assert_eq!(
                over.len(),
                1,
                "an unbalanced agent has exactly one expensive project"
            );
            (
                *agent,
                over.pop()
                    .expect("unbalanced agent has an expensive project"),
            )
        })
        .collect();

    // Case: no expensive pair gets satisfied. Everything else is forced.
    let mut no_expensive = x.clone();
    for ((agent, unsat), (_, skip)) in active.iter().zip(&expensive) {
        for &j in unsat {
            if j != *skip && &no_expensive[j] < inst.demand(*agent, j) {
                no_expensive[j] = inst.demand(*agent, j).clone();
            }
        }
    }
    if total(&no_expensive) <= one {
        return Some(no_expensive);
    }

    // Case: the satisfied expensive pairs, if any, live on project j. Agents
    // expensive elsewhere get all their other demands forced; the cheapest
    // expensive demand on j is a sound lower bound for its coordinate.
    let mut candidates: Vec<usize> = expensive.iter().map(|&(_, j)| j).collect();
    candidates.sort_unstable();
    candidates.dedup();
    for &project in &candidates {
        let mut forced = x.clone();
        for ((agent, unsat), (_, exp)) in active.iter().zip(&expensive) {
            if *exp != project {
                for &j in unsat {
                    if j != *exp && &forced[j] < inst.demand(*agent, j) {
                        forced[j] = inst.demand(*agent, j).clone();
                    }
                }
            }
        }
        let cheapest = expensive
            .iter()
            .filter(|&&(_, exp)| exp == project)
            .map(|&(agent, _)| inst.demand(agent, project))
            .min()
            .expect("candidate projects come from expensive pairs");
        if &forced[project] < cheapest {
            forced[project] = cheapest.clone();
        }
        if total(&forced) <= one {
            if let Some(sol) = search(inst, forced) {
                return Some(sol);
            }
        }
    }
    None
}
