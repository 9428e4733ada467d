//! Instance, solution, and mapping file formats.
//!
//! Instance files are JSON with fields `projects`, `tau`, `tight`, and
//! `agents`; every numeric entry is a string holding either `p/q` or a
//! decimal, parsed exactly. Generated families embed their parameters and
//! expected facts under `family`. Solutions serialize as the coordinate list
//! plus the exact total.

use crate::families::{ExpectedFact, FactCheck, FamilyInstance};
use crate::model::{Instance, ModelError, Solution, ThresholdSpec, Tightness};
use crate::rational::{parse_rational, ParseRationalError, Q};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TauWord {
    One,
    Half,
    All,
}

/// `"one" | "half" | "all" | {"all_but": c} | {"fixed": k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TauField {
    Word(TauWord),
    AllBut { all_but: u32 },
    Fixed { fixed: u32 },
}

impl From<ThresholdSpec> for TauField {
    fn from(spec: ThresholdSpec) -> Self {
        match spec {
            ThresholdSpec::One => TauField::Word(TauWord::One),
            ThresholdSpec::Half => TauField::Word(TauWord::Half),
            ThresholdSpec::All => TauField::Word(TauWord::All),
            ThresholdSpec::AllButC(c) => TauField::AllBut { all_but: c },
            ThresholdSpec::Fixed(k) => TauField::Fixed { fixed: k },
        }
    }
}

impl From<TauField> for ThresholdSpec {
    fn from(field: TauField) -> Self {
        match field {
            TauField::Word(TauWord::One) => ThresholdSpec::One,
            TauField::Word(TauWord::Half) => ThresholdSpec::Half,
            TauField::Word(TauWord::All) => ThresholdSpec::All,
            TauField::AllBut { all_but } => ThresholdSpec::AllButC(all_but),
            TauField::Fixed { fixed } => ThresholdSpec::Fixed(fixed),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub projects: usize,
    pub tau: TauField,
    pub tight: bool,
    pub agents: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<FamilyMeta>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyMeta {
    pub name: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub params: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub expected: Vec<ExpectedMeta>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExpectedMeta {
    pub label: String,
    pub basis: String,
    pub check: CheckMeta,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckMeta {
    AllAgentsSat {
        tau: TauField,
        budget: String,
        satisfiable: bool,
    },
    MaxSatisfied {
        tau: TauField,
        budget: String,
        count: usize,
    },
    MinBudget {
        tau: TauField,
        value: String,
    },
    MinBudgetExceeds {
        tau: TauField,
        bound: String,
    },
    DictatorCount {
        tau: TauField,
        count: usize,
    },
    UtilitarianPairs {
        budget: String,
        count: usize,
    },
}

impl From<&FactCheck> for CheckMeta {
    fn from(check: &FactCheck) -> Self {
        match check {
            FactCheck::AllAgentsSat {
                tau,
                budget,
                satisfiable,
            } => CheckMeta::AllAgentsSat {
                tau: (*tau).into(),
                budget: budget.to_string(),
                satisfiable: *satisfiable,
            },
            FactCheck::MaxSatisfied { tau, budget, count } => CheckMeta::MaxSatisfied {
                tau: (*tau).into(),
                budget: budget.to_string(),
                count: *count,
            },
            FactCheck::MinBudget { tau, value } => CheckMeta::MinBudget {
                tau: (*tau).into(),
                value: value.to_string(),
            },
            FactCheck::MinBudgetExceeds { tau, bound } => CheckMeta::MinBudgetExceeds {
                tau: (*tau).into(),
                bound: bound.to_string(),
            },
            FactCheck::DictatorCount { tau, count } => CheckMeta::DictatorCount {
                tau: (*tau).into(),
                count: *count,
            },
            FactCheck::UtilitarianPairs { budget, count } => CheckMeta::UtilitarianPairs {
                budget: budget.to_string(),
                count: *count,
            },
        }
    }
}

impl CheckMeta {
    pub fn to_fact(&self, label: &str, basis: &str) -> Result<ExpectedFact, FormatError> {
        let check = match self {
            CheckMeta::AllAgentsSat {
                tau,
                budget,
                satisfiable,
            } => FactCheck::AllAgentsSat {
                tau: (*tau).into(),
                budget: parse_rational(budget)?,
                satisfiable: *satisfiable,
            },
            CheckMeta::MaxSatisfied { tau, budget, count } => FactCheck::MaxSatisfied {
                tau: (*tau).into(),
                budget: parse_rational(budget)?,
                count: *count,
            },
            CheckMeta::MinBudget { tau, value } => FactCheck::MinBudget {
                tau: (*tau).into(),
                value: parse_rational(value)?,
            },
            CheckMeta::MinBudgetExceeds { tau, bound } => FactCheck::MinBudgetExceeds {
                tau: (*tau).into(),
                bound: parse_rational(bound)?,
            },
            CheckMeta::DictatorCount { tau, count } => FactCheck::DictatorCount {
                tau: (*tau).into(),
                count: *count,
            },
            CheckMeta::UtilitarianPairs { budget, count } => FactCheck::UtilitarianPairs {
                budget: parse_rational(budget)?,
                count: *count,
            },
        };
        Ok(ExpectedFact {
            label: label.to_string(),
            basis: basis.to_string(),
            check,
        })
    }
}

/// A parsed instance file: the instance, its default threshold, and any
/// family metadata it carried.
#[derive(Debug, Clone)]
pub struct LoadedInstance {
    pub instance: Instance,
    pub tau: ThresholdSpec,
    pub family: Option<FamilyMeta>,
}

pub fn parse_instance_json(text: &str) -> Result<LoadedInstance, FormatError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    if file.agents.is_empty() {
        return Err(FormatError::Invalid("no agent rows".into()));
    }
    let mut rows = Vec::with_capacity(file.agents.len());
    for row in &file.agents {
        if row.len() != file.projects {
            return Err(FormatError::Invalid(format!(
                "row has {} entries but the file declares {} projects",
                row.len(),
                file.projects
            )));
        }
        rows.push(
            row.iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<Q>, _>>()?,
        );
    }
    let tightness = if file.tight {
        Tightness::Tight
    } else {
        Tightness::General
    };
    Ok(LoadedInstance {
        instance: Instance::validate(rows, tightness)?,
        tau: file.tau.into(),
        family: file.family,
    })
}

pub fn instance_to_json(
    instance: &Instance,
    tau: ThresholdSpec,
    family: Option<FamilyMeta>,
) -> String {
    let file = InstanceFile {
        projects: instance.projects(),
        tau: tau.into(),
        tight: instance.tightness() == Tightness::Tight,
        agents: instance
            .rows()
            .iter()
            .map(|row| row.iter().map(|d| d.to_string()).collect())
            .collect(),
        family,
    };
    let mut text = serde_json::to_string_pretty(&file).expect("instance files always serialize");
    text.push('\n');
    text
}

pub fn family_meta(fam: &FamilyInstance) -> FamilyMeta {
    FamilyMeta {
        name: fam.name.clone(),
        params: fam.params.iter().cloned().collect(),
        expected: fam
            .expected
            .iter()
            .map(|fact| ExpectedMeta {
                label: fact.label.clone(),
                basis: fact.basis.clone(),
                check: (&fact.check).into(),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionFile {
    pub coords: Vec<String>,
    pub total: String,
}

pub fn parse_solution_json(text: &str) -> Result<Solution, FormatError> {
    let file: SolutionFile = serde_json::from_str(text)?;
    let coords = file
        .coords
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<Q>, _>>()?;
    let solution = Solution::new(coords)?;
    let declared = parse_rational(&file.total)?;
    if declared != solution.total() {
        return Err(FormatError::Invalid(format!(
            "declared total {} does not match the exact coordinate sum {}",
            declared,
            solution.total()
        )));
    }
    Ok(solution)
}

pub fn solution_to_json(solution: &Solution) -> String {
    let file = SolutionFile {
        coords: solution.coords().iter().map(|c| c.to_string()).collect(),
        total: solution.total().to_string(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("solution files always serialize");
    text.push('\n');
    text
}
