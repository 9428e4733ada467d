//! Named fixtures and parametric instance families, with the facts each one
//! is known to exhibit attached as machine-checkable expectations.

use crate::model::{Instance, ThresholdSpec, Tightness};
use crate::rational::{q, q_int, Q};
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("bad parameter {param}: {reason}")]
    BadParam { param: &'static str, reason: String },
    #[error("family too large: {reason}")]
    TooLarge { reason: String },
    #[error("unknown fixture {name:?}")]
    UnknownFixture { name: String },
}

fn bad(param: &'static str, reason: impl Into<String>) -> FamilyError {
    FamilyError::BadParam {
        param,
        reason: reason.into(),
    }
}

/// A fact a family is constructed to exhibit, checkable by the solvers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedFact {
    pub label: String,
    /// Where the expectation comes from: a closed form, the family
    /// construction itself, or exhaustive search on the fixed instance.
    pub basis: String,
    pub check: FactCheck,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactCheck {
    AllAgentsSat {
        tau: ThresholdSpec,
        budget: Q,
        satisfiable: bool,
    },
    MaxSatisfied {
        tau: ThresholdSpec,
        budget: Q,
        count: usize,
    },
    MinBudget {
        tau: ThresholdSpec,
        value: Q,
    },
    MinBudgetExceeds {
        tau: ThresholdSpec,
        bound: Q,
    },
    DictatorCount {
        tau: ThresholdSpec,
        count: usize,
    },
    UtilitarianPairs {
        budget: Q,
        count: usize,
    },
}

/// A generated instance with its provenance: family name, parameters, the
/// natural threshold, and expected facts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub name: String,
    pub params: Vec<(String, String)>,
    pub tau: ThresholdSpec,
    pub expected: Vec<ExpectedFact>,
    pub instance: Instance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureName {
    /// 4 agents, 3 projects; unsatisfiable at the majority threshold.
    Instance1,
    /// 3 agents, 4 projects; unsatisfiable at all-but-one.
    NocoverFour,
    /// 2 agents, 5 projects; unsatisfiable at all-but-one.
    NocoverFive,
    /// 3 agents, 5 projects; the worked reshuffle example.
    Mat1,
}

impl FixtureName {
    pub const ALL: [FixtureName; 4] = [
        FixtureName::Instance1,
        FixtureName::NocoverFour,
        FixtureName::NocoverFive,
        FixtureName::Mat1,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FixtureName::Instance1 => "instance1",
            FixtureName::NocoverFour => "nocover_four",
            FixtureName::NocoverFive => "nocover_five",
            FixtureName::Mat1 => "mat1",
        }
    }
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FixtureName {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, FamilyError> {
        match s {
            "instance1" => Ok(FixtureName::Instance1),
            "nocover_four" => Ok(FixtureName::NocoverFour),
            "nocover_five" => Ok(FixtureName::NocoverFive),
            "mat1" => Ok(FixtureName::Mat1),
            other => Err(FamilyError::UnknownFixture {
                name: other.to_string(),
            }),
        }
    }
}

fn instance(rows: Vec<Vec<Q>>, tightness: Tightness) -> Instance {
    Instance::validate(rows, tightness).expect("family construction yields valid rows")
}

pub fn fixture(name: FixtureName) -> FamilyInstance {
    match name {
        FixtureName::Instance1 => {
            let rows = vec![
                vec![q(1, 2), q(1, 2), q(0, 1)],
                vec![q(0, 1), q(1, 2), q(1, 2)],
                vec![q(3, 5), q(1, 10), q(3, 10)],
                vec![q(3, 10), q(1, 10), q(3, 5)],
            ];
            FamilyInstance {
                name: name.to_string(),
                params: Vec::new(),
                tau: ThresholdSpec::Fixed(2),
                expected: vec![
                    ExpectedFact {
                        label: "no division satisfies all four agents at tau 2".into(),
                        basis: "exhaustive search".into(),
                        check: FactCheck::AllAgentsSat {
                            tau: ThresholdSpec::Fixed(2),
                            budget: q_int(1),
                            satisfiable: false,
                        },
                    },
                    ExpectedFact {
                        label: "at most 3 of 4 agents satisfiable at tau 2".into(),
                        basis: "exhaustive search".into(),
                        check: FactCheck::MaxSatisfied {
                            tau: ThresholdSpec::Fixed(2),
                            budget: q_int(1),
                            count: 3,
                        },
                    },
                    ExpectedFact {
                        label: "minimum budget at tau 1 is 1/10".into(),
                        basis: "exhaustive search".into(),
                        check: FactCheck::MinBudget {
                            tau: ThresholdSpec::One,
                            value: q(1, 10),
                        },
                    },
                    ExpectedFact {
                        label: "minimum budget at tau m is the column-maxima total".into(),
                        basis: "closed form".into(),
                        check: FactCheck::MinBudget {
                            tau: ThresholdSpec::All,
                            value: q(17, 10),
                        },
                    },
                    ExpectedFact {
                        label: "utilitarian optimum covers 8 of 12 pairs".into(),
                        basis: "exhaustive search".into(),
                        check: FactCheck::UtilitarianPairs {
                            budget: q_int(1),
                            count: 8,
                        },
                    },
                ],
                instance: instance(rows, Tightness::General),
            }
        }
        FixtureName::NocoverFour => {
            let rows = vec![
                vec![q(1, 10), q(3, 10), q(2, 5), q(1, 5)],
                vec![q(1, 5), q(2, 5), q(1, 10), q(3, 10)],
                vec![q(2, 5), q(1, 5), q(3, 10), q(1, 10)],
            ];
            FamilyInstance {
                name: name.to_string(),
                params: Vec::new(),
                tau: ThresholdSpec::AllButC(1),
                expected: vec![ExpectedFact {
                    label: "no division satisfies all three agents at all-but-one".into(),
                    basis: "exhaustive search".into(),
                    check: FactCheck::AllAgentsSat {
                        tau: ThresholdSpec::AllButC(1),
                        budget: q_int(1),
                        satisfiable: false,
                    },
                }],
                instance: instance(rows, Tightness::General),
            }
        }
        FixtureName::NocoverFive => {
            let rows = vec![
                vec![q(8, 25), q(8, 25), q(8, 25), q(1, 50), q(1, 50)],
                vec![q(1, 20), q(1, 20), q(1, 20), q(17, 40), q(17, 40)],
            ];
            FamilyInstance {
                name: name.to_string(),
                params: Vec::new(),
                tau: ThresholdSpec::AllButC(1),
                expected: vec![ExpectedFact {
                    label: "no division satisfies both agents at all-but-one".into(),
                    basis: "exhaustive search".into(),
                    check: FactCheck::AllAgentsSat {
                        tau: ThresholdSpec::AllButC(1),
                        budget: q_int(1),
                        satisfiable: false,
                    },
                }],
                instance: instance(rows, Tightness::General),
            }
        }
        FixtureName::Mat1 => {
            let rows = vec![
                vec![q(3, 10), q(33, 100), q(1, 25), q(4, 25), q(17, 100)],
                vec![q(1, 5), q(9, 50), q(7, 25), q(8, 25), q(1, 50)],
                vec![q(0, 1), q(19, 100), q(21, 100), q(31, 100), q(29, 100)],
            ];
            FamilyInstance {
                name: name.to_string(),
                params: Vec::new(),
                tau: ThresholdSpec::Half,
                expected: vec![ExpectedFact {
                    label: "a majority division satisfying all three agents exists".into(),
                    basis: "family construction".into(),
                    check: FactCheck::AllAgentsSat {
                        tau: ThresholdSpec::Half,
                        budget: q_int(1),
                        satisfiable: true,
                    },
                }],
                instance: instance(rows, Tightness::General),
            }
        }
    }
}

/// `m = n` odd, row `i` demanding `1/2 + 1/2^m` on project `i` and geometric
/// leftovers elsewhere; every row is tight and the best dictator covers
/// exactly `(m+1)/2` agents at the majority threshold.
pub fn tight_dictator(m: usize) -> Result<FamilyInstance, FamilyError> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(bad("m", "must be odd and at least 3"));
    }
    let two_pow_m = Q::one() / pow2(m);
    let rows: Vec<Vec<Q>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        q(1, 2) + &two_pow_m
                    } else {
                        Q::one() / pow2((j + m - i) % m + 1)
                    }
                })
                .collect()
        })
        .collect();
    Ok(FamilyInstance {
        name: "tight-dictator".into(),
        params: vec![("m".into(), m.to_string())],
        tau: ThresholdSpec::Half,
        expected: vec![ExpectedFact {
            label: format!("best dictator covers exactly {} agents", m.div_ceil(2)),
            basis: "family construction".into(),
            check: FactCheck::DictatorCount {
                tau: ThresholdSpec::Half,
                count: m.div_ceil(2),
            },
        }],
        instance: instance(rows, Tightness::Tight),
    })
}

fn pow2(e: usize) -> Q {
    let mut v = Q::one();
    for _ in 0..e {
        v *= q_int(2);
    }
    v
}

/// Three cyclic agents per delta on three projects; a budget-feasible
/// division satisfies at most `2k + 1` of the `3k` agents at the majority
/// threshold, and that many is achievable.
pub fn half_upper_bound_family(deltas: &[Q]) -> Result<FamilyInstance, FamilyError> {
    if deltas.is_empty() {
        return Err(bad("deltas", "need at least one value"));
    }
    let sixth = q(1, 6);
    for pair in deltas.windows(2) {
        if pair[0] >= pair[1] {
            return Err(bad("deltas", "must be strictly increasing"));
        }
    }
    if deltas[0] <= Q::zero() || deltas[deltas.len() - 1] >= sixth {
        return Err(bad("deltas", "must lie strictly between 0 and 1/6"));
    }
    let mut rows = Vec::with_capacity(3 * deltas.len());
    for delta in deltas {
        let high = q(1, 2) + delta / q_int(2);
        let mid = q(1, 2) - delta;
        let low = delta / q_int(2);
        rows.push(vec![high.clone(), mid.clone(), low.clone()]);
        rows.push(vec![low.clone(), high.clone(), mid.clone()]);
        rows.push(vec![mid, low, high]);
    }
    let k = deltas.len();
    Ok(FamilyInstance {
        name: "half-upper-bound".into(),
        params: vec![(
            "deltas".into(),
            deltas
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(","),
        )],
        tau: ThresholdSpec::Half,
        expected: vec![ExpectedFact {
            label: format!("exactly {} of {} agents satisfiable", 2 * k + 1, 3 * k),
            basis: "family construction".into(),
            check: FactCheck::MaxSatisfied {
                tau: ThresholdSpec::Half,
                budget: q_int(1),
                count: 2 * k + 1,
            },
        }],
        instance: instance(rows, Tightness::Tight),
    })
}

/// Default delta list for the upper-bound family: `i / (10k)`.
pub fn default_deltas(k: usize) -> Vec<Q> {
    (1..=k as i64).map(|i| q(i, 10 * k as i64)).collect()
}

/// `m` agents on `m` projects, agent `i` demanding 1/2 on projects `i` and
/// `i + 1` cyclically. At all-but-one, a unit budget satisfies at most four
/// agents once `m` exceeds 4.
pub fn cyclic_m_minus_1(m: usize) -> Result<FamilyInstance, FamilyError> {
    if m < 3 {
        return Err(bad("m", "must be at least 3"));
    }
    let rows: Vec<Vec<Q>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if j == i || j == (i + 1) % m {
                        q(1, 2)
                    } else {
                        Q::zero()
                    }
                })
                .collect()
        })
        .collect();
    Ok(FamilyInstance {
        name: "cyclic".into(),
        params: vec![("m".into(), m.to_string())],
        tau: ThresholdSpec::AllButC(1),
        expected: vec![ExpectedFact {
            label: format!("at most {} agents satisfiable at all-but-one", m.min(4)),
            basis: "family construction".into(),
            check: FactCheck::MaxSatisfied {
                tau: ThresholdSpec::AllButC(1),
                budget: q_int(1),
                count: m.min(4),
            },
        }],
        instance: instance(rows, Tightness::Tight),
    })
}

/// One agent per vector of `m` non-negative integers summing to `m^2`
/// (demands in units of `1/m^2`), in lexicographic order. Desk scale caps at
/// `m = 4`, which already has 969 agents.
pub fn half_min_budget_family(m: usize) -> Result<FamilyInstance, FamilyError> {
    if m < 4 || !m.is_multiple_of(2) {
        return Err(bad("m", "must be even and at least 4"));
    }
    if m > 4 {
        return Err(FamilyError::TooLarge {
            reason: format!("m = {m} would enumerate too many agents; the cap is m = 4"),
        });
    }
    let unit = m * m;
    let mut rows = Vec::new();
    let mut current = vec![0usize; m];
    compositions(unit, 0, &mut current, &mut rows, m);
    let rows: Vec<Vec<Q>> = rows
        .into_iter()
        .map(|parts| {
            parts
                .into_iter()
                .map(|p| q(p as i64, unit as i64))
                .collect()
        })
        .collect();
    let bound = q_int(2) - q(6, m as i64);
    Ok(FamilyInstance {
        name: "half-min-budget".into(),
        params: vec![("m".into(), m.to_string())],
        tau: ThresholdSpec::Half,
        expected: vec![ExpectedFact {
            label: format!("minimum majority budget exceeds 2 - 6/m = {bound}"),
            basis: "family construction".into(),
            check: FactCheck::MinBudgetExceeds {
                tau: ThresholdSpec::Half,
                bound,
            },
        }],
        instance: instance(rows, Tightness::Tight),
    })
}

fn compositions(
    remaining: usize,
    index: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    m: usize,
) {
    if index == m - 1 {
        current[index] = remaining;
        out.push(current.clone());
        return;
    }
    for value in 0..=remaining {
        current[index] = value;
        compositions(remaining - value, index + 1, current, out, m);
    }
}

/// For every unordered project pair an agent demanding 1/2 on both, and for
/// every ordered pair an agent demanding `eps` and `1 - eps`. The minimum
/// all-but-one budget is exactly `min(eps + (m-1)/2, (m-1)(1-eps))`, peaking
/// at `m/2 - 1/(2m)` when `eps = 1/2 - 1/(2m)`.
pub fn abo_min_budget_family(m: usize, eps: &Q) -> Result<FamilyInstance, FamilyError> {
    if m < 3 {
        return Err(bad("m", "must be at least 3"));
    }
    if eps <= &Q::zero() || eps >= &q(1, 2) {
        return Err(bad("eps", "must lie strictly between 0 and 1/2"));
    }
    let mut rows = Vec::new();
    for j in 0..m {
        for jp in j + 1..m {
            let mut row = vec![Q::zero(); m];
            row[j] = q(1, 2);
            row[jp] = q(1, 2);
            rows.push(row);
        }
    }
    for j in 0..m {
        for jp in 0..m {
            if j == jp {
                continue;
            }
            let mut row = vec![Q::zero(); m];
            row[j] = eps.clone();
            row[jp] = Q::one() - eps;
            rows.push(row);
        }
    }
    let half_rest = q(m as i64 - 1, 2);
    let spread = q_int(m as i64 - 1) * (Q::one() - eps);
    let optimum = (eps + half_rest).min(spread);
    Ok(FamilyInstance {
        name: "abo-min-budget".into(),
        params: vec![("m".into(), m.to_string()), ("eps".into(), eps.to_string())],
        tau: ThresholdSpec::AllButC(1),
        expected: vec![ExpectedFact {
            label: format!("minimum all-but-one budget is exactly {optimum}"),
            basis: "closed form".into(),
            check: FactCheck::MinBudget {
                tau: ThresholdSpec::AllButC(1),
                value: optimum,
            },
        }],
        instance: instance(rows, Tightness::Tight),
    })
}

/// Two tight agents concentrated on different projects: unsatisfiable
/// together at `tau = m`, trivially satisfiable at `tau = 1`.
pub fn two_distinct_tight(m: usize) -> Result<FamilyInstance, FamilyError> {
    if m < 2 {
        return Err(bad("m", "must be at least 2"));
    }
    Ok(FamilyInstance {
        name: "two-distinct-tight".into(),
        params: vec![("m".into(), m.to_string())],
        tau: ThresholdSpec::All,
        expected: vec![
            ExpectedFact {
                label: "distinct tight demands cannot both be met in full".into(),
                basis: "closed form".into(),
                check: FactCheck::AllAgentsSat {
                    tau: ThresholdSpec::All,
                    budget: q_int(1),
                    satisfiable: false,
                },
            },
            ExpectedFact {
                label: "both agents satisfiable at tau 1".into(),
                basis: "closed form".into(),
                check: FactCheck::AllAgentsSat {
                    tau: ThresholdSpec::One,
                    budget: q_int(1),
                    satisfiable: true,
                },
            },
        ],
        instance: instance(rows_two_distinct(m), Tightness::Tight),
    })
}

fn rows_two_distinct(m: usize) -> Vec<Vec<Q>> {
    let mut first = vec![Q::zero(); m];
    first[0] = Q::one();
    let mut second = vec![Q::zero(); m];
    second[1] = Q::one();
    vec![first, second]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::total;
    use crate::solvers::{self, DEFAULT_NODE_LIMIT};
    use crate::verify::oracle;

    #[test]
    fn fixtures_match_expected_matrices() {
        let inst1 = fixture(FixtureName::Instance1).instance;
        assert_eq!(inst1.agents(), 4);
        assert_eq!(inst1.row(2), &[q(3, 5), q(1, 10), q(3, 10)]);

        let five = fixture(FixtureName::NocoverFive).instance;
        assert_eq!(
            five.row(1),
            &[q(1, 20), q(1, 20), q(1, 20), q(17, 40), q(17, 40)]
        );

        let mat1 = fixture(FixtureName::Mat1).instance;
        assert_eq!(
            mat1.row(0),
            &[q(3, 10), q(33, 100), q(1, 25), q(4, 25), q(17, 100)]
        );
        for f in FixtureName::ALL {
            assert!(fixture(f).instance.rows_are_tight());
        }
    }

    #[test]
    fn fixture_names_round_trip() {
        for f in FixtureName::ALL {
            assert_eq!(f.as_str().parse::<FixtureName>().unwrap(), f);
        }
        assert!(matches!(
            "bogus".parse::<FixtureName>(),
            Err(FamilyError::UnknownFixture { .. })
        ));
    }

    #[test]
    fn tight_dictator_shape() {
        let fam = tight_dictator(3).unwrap();
        assert_eq!(fam.instance.row(0), &[q(1, 2) + q(1, 8), q(1, 4), q(1, 8)]);
        for m in [3, 5, 7] {
            let fam = tight_dictator(m).unwrap();
            assert!(fam.instance.rows_are_tight());
            assert_eq!(fam.instance.agents(), m);
        }
        assert!(tight_dictator(4).is_err());
        assert!(tight_dictator(1).is_err());
    }

    #[test]
    fn tight_dictator_counts() {
        for m in [3, 5, 7] {
            let fam = tight_dictator(m).unwrap();
            let tau = ThresholdSpec::Half.resolve(m).unwrap();
            let out = solvers::dictator(&fam.instance, tau).unwrap();
            assert_eq!(out.satisfied_count, m.div_ceil(2));
        }
    }

    #[test]
    fn upper_bound_family_rows_are_tight() {
        let fam = half_upper_bound_family(&default_deltas(2)).unwrap();
        assert_eq!(fam.instance.agents(), 6);
        assert_eq!(default_deltas(2), vec![q(1, 20), q(1, 10)]);
        assert!(fam.instance.rows_are_tight());
        assert!(half_upper_bound_family(&[q(1, 6)]).is_err());
        assert!(half_upper_bound_family(&[q(1, 10), q(1, 10)]).is_err());
    }

    #[test]
    fn upper_bound_family_k1_max_is_three() {
        let fam = half_upper_bound_family(&default_deltas(1)).unwrap();
        let out =
            solvers::max_satisfied_exact(&fam.instance, 2, &q_int(1), DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!(out.satisfied_count, 3);
    }

    #[test]
    fn cyclic_family_shape_and_counts() {
        let fam = cyclic_m_minus_1(4).unwrap();
        assert!(fam.instance.rows_are_tight());
        assert_eq!(fam.instance.demand(3, 0), &q(1, 2));
        assert_eq!(fam.instance.demand(3, 3), &q(1, 2));
        for m in [3, 5] {
            let fam = cyclic_m_minus_1(m).unwrap();
            let out =
                solvers::max_satisfied_exact(&fam.instance, m - 1, &q_int(1), DEFAULT_NODE_LIMIT)
                    .unwrap();
            assert_eq!(out.satisfied_count, m.min(4), "m = {m}");
            assert_eq!(
                oracle::max_satisfied_naive(&fam.instance, m - 1, &q_int(1)),
                m.min(4)
            );
        }
        assert!(cyclic_m_minus_1(2).is_err());
    }

    #[test]
    fn half_min_budget_family_counts_agents() {
        let fam = half_min_budget_family(4).unwrap();
        assert_eq!(fam.instance.agents(), 969);
        assert!(fam.instance.rows_are_tight());
        assert!(half_min_budget_family(3).is_err());
        assert!(matches!(
            half_min_budget_family(6),
            Err(FamilyError::TooLarge { .. })
        ));
    }

    #[test]
    fn abo_family_structure() {
        let fam = abo_min_budget_family(3, &q(1, 3)).unwrap();
        assert_eq!(fam.instance.agents(), 9);
        assert!(fam.instance.rows_are_tight());
        for row in fam.instance.rows() {
            assert_eq!(total(row), q_int(1));
        }
        assert!(abo_min_budget_family(2, &q(1, 3)).is_err());
        assert!(abo_min_budget_family(3, &q(1, 2)).is_err());
    }

    #[test]
    fn abo_family_minimum_budget_closed_form() {
        let fam = abo_min_budget_family(3, &q(1, 3)).unwrap();
        let out = solvers::min_budget_exact(&fam.instance, 2, DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!(out.budget, q(4, 3));
    }

    #[test]
    fn two_distinct_tight_family() {
        let fam = two_distinct_tight(2).unwrap();
        assert!(fam.instance.rows_are_tight());
        let no = solvers::all_agents_sat(&fam.instance, 2, &q_int(1), DEFAULT_NODE_LIMIT).unwrap();
        assert!(!no.satisfiable());
        let yes = solvers::all_agents_sat(&fam.instance, 1, &q_int(1), DEFAULT_NODE_LIMIT).unwrap();
        assert!(yes.satisfiable());
        assert!(!oracle::all_sat_naive(&fam.instance, 2, &q_int(1)));
        assert!(oracle::all_sat_naive(&fam.instance, 1, &q_int(1)));
    }
}
