//! Every fact a family embeds must be reproduced exactly by the solver it
//! names, and the generated instances must also satisfy the closed-form
//! solutions that their construction relies on.

use satdiv::constructive::{half_each_solution, uniform_half_solution};
use satdiv::families::{
    abo_min_budget_family, cyclic_m_minus_1, default_deltas, fixture, half_min_budget_family,
    half_upper_bound_family, tight_dictator, two_distinct_tight, FactCheck, FamilyInstance,
    FixtureName,
};
use satdiv::model::satisfaction_report;
use satdiv::rational::q;
use satdiv::solvers::{
    all_agents_sat, dictator, max_satisfied_exact, min_budget_exact, utilitarian_dp,
    DEFAULT_NODE_LIMIT,
};

fn check_fact(fam: &FamilyInstance, fact: &FactCheck) {
    let inst = &fam.instance;
    let m = inst.projects();
    match fact {
        FactCheck::AllAgentsSat {
            tau,
            budget,
            satisfiable,
        } => {
            let tau = tau.resolve(m).expect("valid tau");
            let out = all_agents_sat(inst, tau, budget, DEFAULT_NODE_LIMIT).expect("desk scale");
            assert_eq!(
                out.satisfiable(),
                *satisfiable,
                "{}: all-agents fact",
                fam.name
            );
        }
        FactCheck::MaxSatisfied { tau, budget, count } => {
            let tau = tau.resolve(m).expect("valid tau");
            let out =
                max_satisfied_exact(inst, tau, budget, DEFAULT_NODE_LIMIT).expect("desk scale");
            assert_eq!(
                out.satisfied_count, *count,
                "{}: max-satisfied fact",
                fam.name
            );
        }
        FactCheck::MinBudget { tau, value } => {
            let tau = tau.resolve(m).expect("valid tau");
            let out = min_budget_exact(inst, tau, DEFAULT_NODE_LIMIT).expect("desk scale");
            assert_eq!(out.budget, *value, "{}: min-budget fact", fam.name);
        }
        FactCheck::MinBudgetExceeds { tau, bound } => {
            let tau = tau.resolve(m).expect("valid tau");
            let out = min_budget_exact(inst, tau, DEFAULT_NODE_LIMIT).expect("desk scale");
            assert!(out.budget > *bound, "{}: min-budget bound fact", fam.name);
        }
        FactCheck::DictatorCount { tau, count } => {
            let tau = tau.resolve(m).expect("valid tau");
            let out = dictator(inst, tau).expect("valid tau");
            assert_eq!(out.satisfied_count, *count, "{}: dictator fact", fam.name);
        }
        FactCheck::UtilitarianPairs { budget, count } => {
            let out = utilitarian_dp(inst, budget).expect("valid budget");
            assert_eq!(out.pair_count, *count, "{}: utilitarian fact", fam.name);
        }
    }
}

fn catalog() -> Vec<FamilyInstance> {
    let mut families: Vec<FamilyInstance> =
        FixtureName::ALL.iter().map(|&name| fixture(name)).collect();
    for m in [3, 5, 7] {
        families.push(tight_dictator(m).unwrap());
    }
    for k in 1..=3 {
        families.push(half_upper_bound_family(&default_deltas(k)).unwrap());
    }
    for m in 3..=7 {
        families.push(cyclic_m_minus_1(m).unwrap());
    }
    families.push(half_min_budget_family(4).unwrap());
    families.push(abo_min_budget_family(3, &q(1, 3)).unwrap());
    families.push(abo_min_budget_family(4, &q(1, 4)).unwrap());
    families.push(abo_min_budget_family(3, &q(2, 5)).unwrap());
    for m in [2, 4, 6] {
        families.push(two_distinct_tight(m).unwrap());
    }
    families
}

#[test]
fn every_embedded_fact_is_reproduced() {
    for fam in catalog() {
        assert!(!fam.expected.is_empty(), "{} embeds no facts", fam.name);
        for fact in &fam.expected {
            check_fact(&fam, &fact.check);
        }
    }
}

#[test]
fn uniform_solutions_cover_the_generated_families() {
    for fam in catalog() {
        let m = fam.instance.projects();
        let half = satisfaction_report(&uniform_half_solution(m), &fam.instance, m.div_ceil(2))
            .expect("dimensions match");
        assert!(half.all_satisfied(), "2/m fails on {}", fam.name);
        if m >= 2 {
            let abo = satisfaction_report(&half_each_solution(m), &fam.instance, m - 1)
                .expect("dimensions match");
            assert!(abo.all_satisfied(), "1/2 fails on {}", fam.name);
        }
    }
}
