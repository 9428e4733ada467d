//! Closed-form and constructive satisfiers for the threshold scenarios that
//! always admit one.

mod reshuffle;

pub use reshuffle::{
    reshuffle_verify, three_agent_half_solve, three_agent_half_solve_traced, Color, QClass,
    ReshuffleState, ReshuffleTrace,
};

use crate::model::{tau_covers, Instance, Solution};
use crate::rational::{q, q_int, Q};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructiveError {
    #[error("solver requires {expected}, got {agents} agents and {projects} projects")]
    WrongShape {
        expected: &'static str,
        agents: usize,
        projects: usize,
    },
    #[error("reshuffle construction failed verification: {0}")]
    ReshuffleFailed(&'static str),
}

/// `2/m` on every project (capped at 1). Total 2; satisfies every valid agent
/// at the majority threshold, since more than `m/2` demands above `2/m` would
/// exceed the agent's unit mass.
pub fn uniform_half_solution(m: usize) -> Solution {
    assert!(m >= 1, "need at least one project");
    let share = q(2, m as i64).min(q_int(1));
    Solution::new(vec![share; m]).expect("shares lie in [0,1]")
}

/// `1/2` on every project. Total `m/2`; satisfies every valid agent at
/// `tau = m - 1` because at most one demand per agent can exceed `1/2`.
pub fn half_each_solution(m: usize) -> Solution {
    Solution::new(vec![q(1, 2); m]).expect("shares lie in [0,1]")
}

/// Column maxima: the cheapest solution satisfying every agent at `tau = m`.
pub fn column_max_solution(inst: &Instance) -> Solution {
    let coords = (0..inst.projects()).map(|j| inst.column_max(j)).collect();
    Solution::new(coords).expect("demands lie in [0,1]")
}

/// Two agents, four projects, `tau = 3`: either one row 3-covers the other,
/// or each row wins on exactly two coordinates and swapping the winners
/// crosswise yields two lines that both 3-cover both agents; their totals add
/// to at most 2, so one is budget-feasible.
pub fn two_agent_four_solve(inst: &Instance) -> Result<Solution, ConstructiveError> {
    if inst.agents() != 2 || inst.projects() != 4 {
        return Err(ConstructiveError::WrongShape {
            expected: "2 agents and 4 projects",
            agents: inst.agents(),
            projects: inst.projects(),
        });
    }
    let a = inst.row(0);
    let b = inst.row(1);
    if tau_covers(a, b, 3).expect("equal lengths") {
        return Ok(Solution::new(a.to_vec()).expect("demands lie in [0,1]"));
    }
    if tau_covers(b, a, 3).expect("equal lengths") {
        return Ok(Solution::new(b.to_vec()).expect("demands lie in [0,1]"));
    }
    let a_wins: Vec<usize> = (0..4).filter(|&j| a[j] > b[j]).collect();
    let b_wins: Vec<usize> = (0..4).filter(|&j| b[j] > a[j]).collect();
    debug_assert_eq!(a_wins.len(), 2);
    debug_assert_eq!(b_wins.len(), 2);
    // Crosswise mix: each line keeps one winning coordinate per row and
    // takes the smaller value on the other two.
    let mut line1: Vec<Q> = a.to_vec();
    let mut line2: Vec<Q> = b.to_vec();
    line1[a_wins[1]] = b[a_wins[1]].clone();
    line1[b_wins[0]] = b[b_wins[0]].clone();
    line2[a_wins[1]] = a[a_wins[1]].clone();
    line2[b_wins[0]] = a[b_wins[0]].clone();
    debug_assert!(tau_covers(&line1, a, 3).unwrap() && tau_covers(&line1, b, 3).unwrap());
    debug_assert!(tau_covers(&line2, a, 3).unwrap() && tau_covers(&line2, b, 3).unwrap());
    let one = q_int(1);
    let pick = |l: Vec<Q>| Solution::new(l).expect("demand entries lie in [0,1]");
    let t1 = crate::rational::total(&line1);
    let t2 = crate::rational::total(&line2);
    if t1 <= one && (t2 > one || t1 <= t2) {
        Ok(pick(line1))
    } else {
        Ok(pick(line2))
    }
}
