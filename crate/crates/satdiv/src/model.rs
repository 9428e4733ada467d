//! Core data model: instances, thresholds, solutions, and the satisfaction
//! predicates everything else is defined in terms of.
//!
//! An instance is an `n x m` matrix of demands in `[0,1]` where each row sums
//! to at most 1 (exactly 1 when the instance is flagged tight). A solution
//! assigns a share in `[0,1]` to every project. Agent `i` is locally satisfied
//! for project `j` when `x_j >= d[i][j]`, and satisfied when that holds for at
//! least `tau` projects. Equality counts: all comparisons are exact.

use crate::rational::{total, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Whether every row must sum to exactly 1 (`Tight`) or merely at most 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tightness {
    General,
    Tight,
}

/// Errors from instance/solution validation and the satisfaction predicates.
/// Agent and project numbers in messages are 1-based, matching reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("agent {agent}: demands sum to more than 1")]
    RowMassExceeded { agent: usize },
    #[error("agent {agent}: demands sum to less than 1 in a tight instance")]
    NotTight { agent: usize },
    #[error("agent {agent}, project {project}: demand outside [0,1]")]
    OutOfRange { agent: usize, project: usize },
    #[error("instance must have at least one agent and one project")]
    EmptyInstance,
    #[error("agent {agent}: row has {found} entries, expected {expected}")]
    RaggedMatrix {
        agent: usize,
        expected: usize,
        found: usize,
    },
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("threshold {tau} outside [1,{m}]")]
    TauOutOfRange { tau: i64, m: usize },
    #[error("solution coordinate {index} outside [0,1]")]
    CoordOutOfRange { index: usize },
}

/// A validated demand matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    demands: Vec<Vec<Q>>,
    tightness: Tightness,
}

impl Instance {
    /// Validates a raw matrix: rectangular, entries in `[0,1]`, every row sum
    /// at most 1, and exactly 1 under the tight flag.
    pub fn validate(rows: Vec<Vec<Q>>, tightness: Tightness) -> Result<Self, ModelError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(ModelError::EmptyInstance);
        }
        let m = rows[0].len();
        let one = Q::one();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(ModelError::RaggedMatrix {
                    agent: i + 1,
                    expected: m,
                    found: row.len(),
                });
            }
            for (j, d) in row.iter().enumerate() {
                if d < &Q::zero() || d > &one {
                    return Err(ModelError::OutOfRange {
                        agent: i + 1,
                        project: j + 1,
                    });
                }
            }
            let sum = total(row);
            if sum > one {
                return Err(ModelError::RowMassExceeded { agent: i + 1 });
            }
            if tightness == Tightness::Tight && sum != one {
                return Err(ModelError::NotTight { agent: i + 1 });
            }
        }
        Ok(Instance {
            demands: rows,
            tightness,
        })
    }

    pub fn agents(&self) -> usize {
        self.demands.len()
    }

    pub fn projects(&self) -> usize {
        self.demands[0].len()
    }

    pub fn tightness(&self) -> Tightness {
        self.tightness
    }

    pub fn demand(&self, agent: usize, project: usize) -> &Q {
        &self.demands[agent][project]
    }

    pub fn row(&self, agent: usize) -> &[Q] {
        &self.demands[agent]
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.demands
    }

    pub fn column_max(&self, project: usize) -> Q {
        self.demands
            .iter()
            .map(|row| &row[project])
            .max()
            .expect("instance has at least one agent")
            .clone()
    }

    /// True when every row actually sums to exactly 1, regardless of the
    /// declared tightness flag.
    pub fn rows_are_tight(&self) -> bool {
        let one = Q::one();
        self.demands.iter().all(|row| total(row) == one)
    }
}

/// Symbolic threshold, resolved against the number of projects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdSpec {
    /// `tau = 1`
    One,
    /// `tau = ceil(m/2)`
    Half,
    /// `tau = m - c`
    AllButC(u32),
    /// `tau = m`
    All,
    /// `tau = k` verbatim
    Fixed(u32),
}

impl ThresholdSpec {
    /// Resolves to a concrete threshold in `[1, m]`.
    pub fn resolve(&self, m: usize) -> Result<usize, ModelError> {
        let raw: i64 = match self {
            ThresholdSpec::One => 1,
            ThresholdSpec::Half => m.div_ceil(2) as i64,
            ThresholdSpec::AllButC(c) => m as i64 - i64::from(*c),
            ThresholdSpec::All => m as i64,
            ThresholdSpec::Fixed(k) => i64::from(*k),
        };
        if raw < 1 || raw > m as i64 {
            return Err(ModelError::TauOutOfRange { tau: raw, m });
        }
        Ok(raw as usize)
    }
}

impl fmt::Display for ThresholdSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThresholdSpec::One => write!(f, "one"),
            ThresholdSpec::Half => write!(f, "half"),
            ThresholdSpec::AllButC(c) => write!(f, "all-but-{c}"),
            ThresholdSpec::All => write!(f, "all"),
            ThresholdSpec::Fixed(k) => write!(f, "{k}"),
        }
    }
}

/// A budget division: one share in `[0,1]` per project. The total may exceed
/// 1; budget feasibility is checked where it matters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    coords: Vec<Q>,
}

impl Solution {
    pub fn new(coords: Vec<Q>) -> Result<Self, ModelError> {
        let one = Q::one();
        for (index, c) in coords.iter().enumerate() {
            if c < &Q::zero() || c > &one {
                return Err(ModelError::CoordOutOfRange { index: index + 1 });
            }
        }
        Ok(Solution { coords })
    }

    /// For solver-internal construction from values already known to be
    /// demands or zero.
    pub(crate) fn from_grid_values(coords: Vec<Q>) -> Self {
        debug_assert!(coords.iter().all(|c| c >= &Q::zero() && c <= &Q::one()));
        Solution { coords }
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn total(&self) -> Q {
        total(&self.coords)
    }
}

/// Per-agent satisfaction breakdown for one solution and threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatisfactionReport {
    pub tau: usize,
    /// For each agent, the 0-based projects it is locally satisfied for.
    pub local_sets: Vec<Vec<usize>>,
    pub satisfied: Vec<bool>,
    pub satisfied_count: usize,
    pub total_budget: Q,
}

impl SatisfactionReport {
    pub fn all_satisfied(&self) -> bool {
        self.satisfied_count == self.satisfied.len()
    }

    /// 0-based indices of satisfied agents.
    pub fn satisfied_agents(&self) -> Vec<usize> {
        self.satisfied
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.then_some(i))
            .collect()
    }
}

/// Evaluates which agents a solution satisfies at threshold `tau`.
pub fn satisfaction_report(
    x: &Solution,
    inst: &Instance,
    tau: usize,
) -> Result<SatisfactionReport, ModelError> {
    let m = inst.projects();
    if x.len() != m {
        return Err(ModelError::DimensionMismatch {
            expected: m,
            found: x.len(),
        });
    }
    if tau < 1 || tau > m {
        return Err(ModelError::TauOutOfRange { tau: tau as i64, m });
    }
    let mut local_sets = Vec::with_capacity(inst.agents());
    let mut satisfied = Vec::with_capacity(inst.agents());
    let mut satisfied_count = 0;
    for row in inst.rows() {
        let local: Vec<usize> = (0..m).filter(|&j| x.coords()[j] >= row[j]).collect();
        let ok = local.len() >= tau;
        if ok {
            satisfied_count += 1;
        }
        local_sets.push(local);
        satisfied.push(ok);
    }
    Ok(SatisfactionReport {
        tau,
        local_sets,
        satisfied,
        satisfied_count,
        total_budget: x.total(),
    })
}

/// True when `a_j >= b_j` on at least `tau` coordinates.
pub fn tau_covers(a: &[Q], b: &[Q], tau: usize) -> Result<bool, ModelError> {
    if a.len() != b.len() {
        return Err(ModelError::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x >= y).count() >= tau)
}

/// Snaps each coordinate down to the largest value in `{0} u {d[i][j]}` not
/// exceeding it. Every agent satisfied by `x` stays satisfied and the total
/// never grows, so exact searches may restrict themselves to these values.
pub fn canonicalize(x: &Solution, inst: &Instance) -> Result<Solution, ModelError> {
    let m = inst.projects();
    if x.len() != m {
        return Err(ModelError::DimensionMismatch {
            expected: m,
            found: x.len(),
        });
    }
    let coords = (0..m)
        .map(|j| {
            inst.rows()
                .iter()
                .map(|row| &row[j])
                .filter(|d| *d <= &x.coords()[j])
                .max()
                .cloned()
                .unwrap_or_else(Q::zero)
        })
        .collect();
    Ok(Solution::from_grid_values(coords))
}

/// The four-agent, three-project matrix used as the running example and as
/// the half-scenario infeasibility witness. Rows: (0.5,0.5,0), (0,0.5,0.5),
/// (0.6,0.1,0.3), (0.3,0.1,0.6).
#[cfg(test)]
pub(crate) fn library_instance() -> Instance {
    use crate::rational::q;
    Instance::validate(
        vec![
            vec![q(1, 2), q(1, 2), q(0, 1)],
            vec![q(0, 1), q(1, 2), q(1, 2)],
            vec![q(3, 5), q(1, 10), q(3, 10)],
            vec![q(3, 10), q(1, 10), q(3, 5)],
        ],
        Tightness::General,
    )
    .expect("library instance is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_int};
    use proptest::prelude::*;

    fn sol(coords: &[Q]) -> Solution {
        Solution::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn validates_library_instance() {
        let inst = library_instance();
        assert_eq!(inst.agents(), 4);
        assert_eq!(inst.projects(), 3);
        assert!(inst.rows_are_tight());
    }

    #[test]
    fn accepts_zero_demand_singleton() {
        let inst = Instance::validate(vec![vec![q(0, 1)]], Tightness::General).unwrap();
        assert_eq!(inst.agents(), 1);
    }

    #[test]
    fn rejects_row_mass_over_one() {
        let err = Instance::validate(vec![vec![q(3, 5), q(3, 5)]], Tightness::General).unwrap_err();
        assert_eq!(err, ModelError::RowMassExceeded { agent: 1 });
    }

    #[test]
    fn rejects_untight_rows_under_tight_flag() {
        let err = Instance::validate(vec![vec![q(1, 2), q(1, 4)]], Tightness::Tight).unwrap_err();
        assert_eq!(err, ModelError::NotTight { agent: 1 });
    }

    #[test]
    fn rejects_out_of_range_and_ragged() {
        let err =
            Instance::validate(vec![vec![q(1, 2), q(-1, 10)]], Tightness::General).unwrap_err();
        assert_eq!(
            err,
            ModelError::OutOfRange {
                agent: 1,
                project: 2
            }
        );
        let err = Instance::validate(vec![vec![q(0, 1)], vec![]], Tightness::General).unwrap_err();
        assert!(matches!(err, ModelError::RaggedMatrix { agent: 2, .. }));
    }

    #[test]
    fn resolves_thresholds() {
        assert_eq!(ThresholdSpec::Half.resolve(5).unwrap(), 3);
        assert_eq!(ThresholdSpec::All.resolve(7).unwrap(), 7);
        assert_eq!(ThresholdSpec::AllButC(2).resolve(6).unwrap(), 4);
        assert_eq!(ThresholdSpec::One.resolve(1).unwrap(), 1);
        assert_eq!(ThresholdSpec::Half.resolve(4).unwrap(), 2);
        assert!(ThresholdSpec::AllButC(3).resolve(3).is_err());
        assert!(ThresholdSpec::Fixed(4).resolve(3).is_err());
        assert!(ThresholdSpec::Fixed(0).resolve(3).is_err());
    }

    #[test]
    fn report_on_library_instance_at_half() {
        let inst = library_instance();
        let x = sol(&[q(3, 10), q(3, 5), q(1, 10)]);
        let rep = satisfaction_report(&x, &inst, 2).unwrap();
        assert_eq!(rep.satisfied, vec![true, true, false, true]);
        assert_eq!(rep.satisfied_count, 3);
        // The third agent is locally satisfied only for the second project.
        assert_eq!(rep.local_sets[2], vec![1]);
        assert_eq!(rep.total_budget, q_int(1));
    }

    #[test]
    fn report_all_ones_dominates_everything() {
        let inst = library_instance();
        let x = sol(&[q_int(1), q_int(1), q_int(1)]);
        for tau in 1..=3 {
            let rep = satisfaction_report(&x, &inst, tau).unwrap();
            assert!(rep.all_satisfied());
        }
    }

    #[test]
    fn report_zero_solution_at_tau_one() {
        let inst = library_instance();
        let x = sol(&[q(0, 1), q(0, 1), q(0, 1)]);
        let rep = satisfaction_report(&x, &inst, 1).unwrap();
        // Agents with a zero demand somewhere are satisfied by zero spending.
        assert_eq!(rep.satisfied, vec![true, true, false, false]);
    }

    #[test]
    fn report_rejects_bad_dimensions() {
        let inst = library_instance();
        let x = sol(&[q(1, 2)]);
        assert!(matches!(
            satisfaction_report(&x, &inst, 1),
            Err(ModelError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn coverage_examples() {
        let a = [q(1, 2), q(1, 2), q(0, 1)];
        let b = [q(0, 1), q(1, 2), q(1, 2)];
        assert!(tau_covers(&a, &b, 2).unwrap());
        assert!(!tau_covers(&a, &b, 3).unwrap());
        assert!(tau_covers(&a, &a, 3).unwrap());
        assert!(!tau_covers(&[q(0, 1), q(0, 1)], &[q_int(1), q_int(1)], 1).unwrap());
        assert!(tau_covers(&a, &b[..2], 1).is_err());
    }

    #[test]
    fn canonicalize_snaps_down_per_column() {
        let inst = library_instance();
        let x = sol(&[q(7, 20), q(11, 20), q(1, 10)]);
        let z = canonicalize(&x, &inst).unwrap();
        assert_eq!(z.coords(), &[q(3, 10), q(1, 2), q(0, 1)]);
    }

    #[test]
    fn canonicalize_fixed_points() {
        let inst = library_instance();
        let row = sol(inst.row(2));
        assert_eq!(canonicalize(&row, &inst).unwrap(), row);
        let zero = sol(&[q(0, 1), q(0, 1), q(0, 1)]);
        assert_eq!(canonicalize(&zero, &inst).unwrap(), zero);
    }

    /// Strategy: a rational in [0,1] with denominator from a small pool, so
    /// ties between independently drawn values actually happen.
    fn unit_rational() -> impl Strategy<Value = Q> {
        (0u8..=3, 0i64..=60).prop_map(|(d, n)| {
            let denom = [6i64, 12, 20, 60][d as usize];
            q(n.min(denom), denom)
        })
    }

    fn vector(m: usize) -> impl Strategy<Value = Vec<Q>> {
        proptest::collection::vec(unit_rational(), m)
    }

    /// Random valid instance: rows are scaled to respect the mass constraint.
    fn instance_strategy() -> impl Strategy<Value = Instance> {
        (1usize..=4, 1usize..=5)
            .prop_flat_map(|(n, m)| proptest::collection::vec(vector(m), n))
            .prop_map(|rows| {
                let scaled: Vec<Vec<Q>> = rows
                    .into_iter()
                    .map(|row| {
                        let s = total(&row);
                        if s > Q::one() {
                            row.into_iter().map(|v| v / &s).collect()
                        } else {
                            row
                        }
                    })
                    .collect();
                Instance::validate(scaled, Tightness::General).expect("scaled rows are valid")
            })
    }

    proptest! {
        /// Any pair of same-length vectors: one half-covers the other.
        #[test]
        fn pairwise_half_coverage(m in 1usize..=7, seed in 0u64..1000) {
            let mut s = crate::verify::sampler::Sampler::new(seed);
            let a: Vec<Q> = (0..m).map(|_| s.unit_rational(20)).collect();
            let b: Vec<Q> = (0..m).map(|_| s.unit_rational(20)).collect();
            let tau = m.div_ceil(2);
            prop_assert!(tau_covers(&a, &b, tau).unwrap() || tau_covers(&b, &a, tau).unwrap());
        }

        /// Raising coordinates never unsatisfies an agent.
        #[test]
        fn satisfaction_is_monotone(inst in instance_strategy(), x in vector(5), y in vector(5)) {
            let m = inst.projects();
            let x: Vec<Q> = x.into_iter().take(m).collect();
            let y: Vec<Q> = y.into_iter().take(m).collect();
            prop_assume!(x.len() == m && y.len() == m);
            let hi: Vec<Q> = x.iter().zip(&y).map(|(a, b)| a.max(b).clone()).collect();
            let lo = Solution::new(x).unwrap();
            let hi = Solution::new(hi).unwrap();
            for tau in 1..=m {
                let rl = satisfaction_report(&lo, &inst, tau).unwrap();
                let rh = satisfaction_report(&hi, &inst, tau).unwrap();
                for i in 0..inst.agents() {
                    prop_assert!(!rl.satisfied[i] || rh.satisfied[i]);
                }
            }
        }

        /// Snap-down keeps every satisfied agent satisfied and never costs more.
        #[test]
        fn canonicalize_is_sound(inst in instance_strategy(), x in vector(5)) {
            let m = inst.projects();
            let x: Vec<Q> = x.into_iter().take(m).collect();
            prop_assume!(x.len() == m);
            let x = Solution::new(x).unwrap();
            let z = canonicalize(&x, &inst).unwrap();
            prop_assert!(z.total() <= x.total());
            for tau in 1..=m {
                let rx = satisfaction_report(&x, &inst, tau).unwrap();
                let rz = satisfaction_report(&z, &inst, tau).unwrap();
                for i in 0..inst.agents() {
                    prop_assert!(!rx.satisfied[i] || rz.satisfied[i]);
                }
            }
            // Idempotent.
            prop_assert_eq!(canonicalize(&z, &inst).unwrap(), z);
        }

        /// Satisfied count never increases with the threshold.
        #[test]
        fn count_monotone_in_tau(inst in instance_strategy(), x in vector(5)) {
            let m = inst.projects();
            let x: Vec<Q> = x.into_iter().take(m).collect();
            prop_assume!(x.len() == m);
            let x = Solution::new(x).unwrap();
            let counts: Vec<usize> = (1..=m)
                .map(|tau| satisfaction_report(&x, &inst, tau).unwrap().satisfied_count)
                .collect();
            for w in counts.windows(2) {
                prop_assert!(w[0] >= w[1]);
            }
        }
    }
}
