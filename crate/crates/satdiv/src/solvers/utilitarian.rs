//! Dynamic program maximizing the count of locally satisfied agent-project
//! pairs within a budget.
//!
//! `z[j][k]` is the cheapest coordinate value locally satisfying at least `k`
//! agents on project `j`: the k-th smallest demand in that column. Costs
//! combine column by column; `cost(j, k)` is the least investment covering at
//! least `k` pairs among the first `j` projects, tracked as `None` once it
//! exceeds the budget.

use super::SolveError;
use crate::model::{Instance, Solution};
use crate::rational::Q;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpTables {
    /// `z[j][k]`, for `k` in `0..=n`.
    pub z: Vec<Vec<Q>>,
    /// `cost(m, k)` for `k` in `0..=m*n`; `None` means the budget is exceeded.
    pub final_costs: Vec<Option<Q>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtilitarianOutcome {
    pub solution: Solution,
    pub pair_count: usize,
}

fn z_table(inst: &Instance) -> Vec<Vec<Q>> {
    let n = inst.agents();
    (0..inst.projects())
        .map(|j| {
            let mut column: Vec<Q> = inst.rows().iter().map(|row| row[j].clone()).collect();
            column.sort();
            let mut z = Vec::with_capacity(n + 1);
            z.push(Q::zero());
            z.extend(column);
            z
        })
        .collect()
}

struct Dp {
    z: Vec<Vec<Q>>,
    /// `choices[j][k]`: how many agents the optimum satisfies on project `j`
    /// when covering `k` pairs with the first `j + 1` projects.
    choices: Vec<Vec<u32>>,
    last_row: Vec<Option<Q>>,
}

#[allow(clippy::needless_range_loop)]
fn run_dp(inst: &Instance, budget: &Q) -> Dp {
    let n = inst.agents();
    let m = inst.projects();
    let z = z_table(inst);
    let clamp = |value: Q| if &value > budget { None } else { Some(value) };

    let mut cost: Vec<Option<Q>> = (0..=n).map(|k| clamp(z[0][k].clone())).collect();
    let mut choices: Vec<Vec<u32>> = vec![(0..=n as u32).collect()];
    for j in 1..m {
        let prev_max = j * n;
        let mut next: Vec<Option<Q>> = vec![None; prev_max + n + 1];
        let mut choice = vec![0u32; prev_max + n + 1];
        for (k, slot) in next.iter_mut().enumerate() {
            let mut best: Option<(Q, u32)> = None;
            for b in 0..=n.min(k) {
                let a = k - b;
                if a > prev_max {
                    continue;
                }
                if let Some(prev) = &cost[a] {
                    let candidate = prev + &z[j][b];
                    if &candidate <= budget && best.as_ref().is_none_or(|(c, _)| &candidate < c) {
                        best = Some((candidate, b as u32));
                    }
                }
            }
            if let Some((value, b)) = best {
                *slot = Some(value);
                choice[k] = b;
            }
        }
        cost = next;
        choices.push(choice);
    }
    Dp {
        z,
        choices,
        last_row: cost,
    }
}

/// Exposed for invariant checks: the z-values and final cost row.
pub fn dp_tables(inst: &Instance, budget: &Q) -> DpTables {
    let dp = run_dp(inst, budget);
    DpTables {
        z: dp.z,
        final_costs: dp.last_row,
    }
}

/// Returns a budget-feasible solution maximizing the number of locally
/// satisfied agent-project pairs, with the achieved count.
pub fn utilitarian_dp(inst: &Instance, budget: &Q) -> Result<UtilitarianOutcome, SolveError> {
    if budget < &Q::zero() {
        return Err(SolveError::NegativeBudget);
    }
    let m = inst.projects();
    let dp = run_dp(inst, budget);
    let best_k = dp
        .last_row
        .iter()
        .rposition(Option::is_some)
        .expect("zero pairs cost nothing");

    let mut coords = vec![Q::zero(); m];
    let mut k = best_k;
    for j in (0..m).rev() {
        let b = dp.choices[j][k] as usize;
        coords[j] = dp.z[j][b].clone();
        k -= b;
    }
    let solution = Solution::from_grid_values(coords);
    let pair_count = count_pairs(inst, &solution);
    debug_assert_eq!(pair_count, best_k);
    Ok(UtilitarianOutcome {
        solution,
        pair_count,
    })
}

fn count_pairs(inst: &Instance, x: &Solution) -> usize {
    inst.rows()
        .iter()
        .map(|row| row.iter().zip(x.coords()).filter(|(d, v)| v >= d).count())
        .sum()
}
