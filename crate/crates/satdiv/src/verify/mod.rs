//! The verification suite behind `satdiv verify` and the acceptance tests.
//!
//! Each criterion pins an exact expected value (zero tolerance) and reports
//! expected versus actual. Random suites draw from fixed-seed samplers, so
//! every run checks the same instances.

pub mod oracle;
pub mod sampler;

use crate::constructive::{
    half_each_solution, three_agent_half_solve_traced, two_agent_four_solve, uniform_half_solution,
};
use crate::families::{
    abo_min_budget_family, cyclic_m_minus_1, default_deltas, fixture, half_min_budget_family,
    half_upper_bound_family, tight_dictator, FixtureName,
};
use crate::model::{satisfaction_report, Instance, Solution, Tightness};
use crate::rational::{q, q_int, Q};
use crate::reductions::{
    brute_force_is, brute_force_vc, is_to_minbudget_half, vc_to_allsat_m_minus_1,
    vc_to_allsat_m_minus_c, vc_to_minbudget_m_minus_1, vc_to_minbudget_tau1, Graph,
};
use crate::solvers::{
    all_agents_sat, dictator, max_satisfied_exact, min_budget_exact, solve_m_minus_1_tight,
    solve_tau1, solve_tau_m, utilitarian_dp, DEFAULT_NODE_LIMIT,
};
use num_traits::Zero;
use sampler::Sampler;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Tables,
    Bounds,
    Algorithms,
    Reductions,
}

impl Suite {
    pub fn label(&self) -> &'static str {
        match self {
            Suite::Tables => "tables",
            Suite::Bounds => "bounds",
            Suite::Algorithms => "algorithms",
            Suite::Reductions => "reductions",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "tables" => Ok(Suite::Tables),
            "bounds" => Ok(Suite::Bounds),
            "algorithms" => Ok(Suite::Algorithms),
            "reductions" => Ok(Suite::Reductions),
            other => Err(format!(
                "unknown suite {other:?}; expected tables, bounds, algorithms, reductions, or all"
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub suite: Suite,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:2} [{}] {}: {} ({})",
            self.id,
            self.suite.label(),
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

/// Failure accumulator: counts every check, keeps the first few messages.
struct Check {
    checks: usize,
    failures: usize,
    messages: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check {
            checks: 0,
            failures: 0,
            messages: Vec::new(),
        }
    }

    fn assert(&mut self, condition: bool, message: impl FnOnce() -> String) {
        self.checks += 1;
        if !condition {
            self.failures += 1;
            if self.messages.len() < 4 {
                self.messages.push(message());
            }
        }
    }

    fn result(
        self,
        id: usize,
        suite: Suite,
        name: &'static str,
        summary: String,
    ) -> CriterionResult {
        let passed = self.failures == 0;
        let detail = if passed {
            format!("{summary}; {} checks", self.checks)
        } else {
            format!(
                "{} of {} checks failed: {}",
                self.failures,
                self.checks,
                self.messages.join(" | ")
            )
        };
        CriterionResult {
            id,
            suite,
            name,
            passed,
            detail,
        }
    }
}

pub fn run(filter: Option<Suite>) -> Vec<CriterionResult> {
    let all: Vec<fn() -> CriterionResult> = vec![
        criterion_01_instance1_infeasible,
        criterion_02_dictator_tightness,
        criterion_03_dictator_guarantee,
        criterion_04_upper_bound_family,
        criterion_05_three_agent_reshuffle,
        criterion_06_table_cells,
        criterion_07_pseudopolynomial_equivalence,
        criterion_08_utilitarian_dp_equivalence,
        criterion_09_minimum_budget_bounds,
        criterion_10_reduction_round_trips,
        criterion_11_tau_extremes,
        criterion_12_cyclic_family_cap,
    ];
    all.iter()
        .map(|f| f())
        .filter(|r| filter.is_none_or(|s| r.suite == s))
        .collect()
}

fn criterion_01_instance1_infeasible() -> CriterionResult {
    let mut check = Check::new();
    let fam = fixture(FixtureName::Instance1);
    let one = q_int(1);
    let sat = all_agents_sat(&fam.instance, 2, &one, DEFAULT_NODE_LIMIT).expect("desk scale");
    check.assert(!sat.satisfiable(), || {
        "expected NO for all-agents satisfiability at tau 2".into()
    });
    let max = max_satisfied_exact(&fam.instance, 2, &one, DEFAULT_NODE_LIMIT).expect("desk scale");
    check.assert(max.satisfied_count == 3, || {
        format!("expected max satisfied 3, got {}", max.satisfied_count)
    });
    check.result(
        1,
        Suite::Tables,
        "library instance infeasible at tau 2, max satisfied 3 of 4",
        "expected NO and 3; matched".into(),
    )
}

fn criterion_02_dictator_tightness() -> CriterionResult {
    let mut check = Check::new();
    let mut seen = Vec::new();
    for m in [3usize, 5, 7] {
        let fam = tight_dictator(m).expect("odd m");
        let out = dictator(&fam.instance, m.div_ceil(2)).expect("valid tau");
        seen.push(format!("m={m}:{}", out.satisfied_count));
        check.assert(out.satisfied_count == m.div_ceil(2), || {
            format!(
                "m = {m}: expected dictator count {}, got {}",
                m.div_ceil(2),
                out.satisfied_count
            )
        });
    }
    check.result(
        2,
        Suite::Bounds,
        "tight dictator family pins the (n+1)/2 guarantee",
        format!("expected (m+1)/2 exactly; got {}", seen.join(" ")),
    )
}

fn criterion_03_dictator_guarantee() -> CriterionResult {
    let mut check = Check::new();
    let mut s = Sampler::new(0x0301);
    for _ in 0..500 {
        let inst = s.sized_instance((1, 7), (1, 7), Tightness::Tight);
        let tau = inst.projects().div_ceil(2);
        let out = dictator(&inst, tau).expect("valid tau");
        let needed = (inst.agents() + 1).div_ceil(2);
        check.assert(out.satisfied_count >= needed, || {
            format!(
                "n = {}, m = {}: dictator count {} below guarantee {}",
                inst.agents(),
                inst.projects(),
                out.satisfied_count,
                needed
            )
        });
    }
    check.result(
        3,
        Suite::Algorithms,
        "dictator covers a majority on random tight instances",
        "500 random tight instances, count >= ceil((n+1)/2)".into(),
    )
}

fn criterion_04_upper_bound_family() -> CriterionResult {
    let mut check = Check::new();
    let mut seen = Vec::new();
    for k in 1usize..=3 {
        let fam = half_upper_bound_family(&default_deltas(k)).expect("valid deltas");
        let out = max_satisfied_exact(&fam.instance, 2, &q_int(1), DEFAULT_NODE_LIMIT)
            .expect("desk scale");
        seen.push(format!("k={k}:{}", out.satisfied_count));
        check.assert(out.satisfied_count == 2 * k + 1, || {
            format!(
                "k = {k}: expected exactly {} satisfiable, got {}",
                2 * k + 1,
                out.satisfied_count
            )
        });
    }
    check.result(
        4,
        Suite::Bounds,
        "cyclic triples cap satisfaction at 2n/3 + 1",
        format!("expected 2k+1 exactly; got {}", seen.join(" ")),
    )
}

fn criterion_05_three_agent_reshuffle() -> CriterionResult {
    let mut check = Check::new();
    let one = q_int(1);
    let mut s = Sampler::new(0x0501);
    for round in 0..1000 {
        let m = s.range(3, 9);
        let tightness = if round % 3 == 0 {
            Tightness::Tight
        } else {
            Tightness::General
        };
        let inst = s.instance(3, m, tightness);
        let tau = m.div_ceil(2);
        match three_agent_half_solve_traced(&inst) {
            Ok((solution, trace)) => {
                let rep = satisfaction_report(&solution, &inst, tau).expect("dimensions match");
                check.assert(
                    solution.total() <= one && rep.all_satisfied() && trace.verify(),
                    || format!("construction or certificate failed on {inst:?}"),
                );
            }
            Err(e) => check.assert(false, || format!("solver error {e} on {inst:?}")),
        }
    }
    let fam = fixture(FixtureName::Mat1);
    let (line, trace) = three_agent_half_solve_traced(&fam.instance).expect("3 x 5 instance");
    let rep = satisfaction_report(&line, &fam.instance, 3).expect("dimensions match");
    check.assert(
        rep.all_satisfied() && line.total() <= one && trace.verify(),
        || "returned line on the worked example failed to verify".into(),
    );
    let known_line = Solution::new(vec![q(1, 5), q(19, 100), q(1, 25), q(4, 25), q(29, 100)])
        .expect("valid coordinates");
    let rep = satisfaction_report(&known_line, &fam.instance, 3).expect("dimensions match");
    check.assert(rep.all_satisfied() && known_line.total() <= one, || {
        "known feasible line failed to verify".into()
    });
    check.result(
        5,
        Suite::Algorithms,
        "three-agent majority reshuffle always satisfies all three",
        "1000 random instances plus the worked 3 x 5 example".into(),
    )
}

/// One satisfiable cell of the characterization tables: which constructive
/// solver proves it, per (agents, projects).
fn solve_cell(inst: &Instance, tau: usize) -> Result<Solution, String> {
    let n = inst.agents();
    let m = inst.projects();
    if tau == 1 {
        return Ok(solve_tau1(inst));
    }
    match n {
        1 | 2 => Ok(dictator(inst, tau).map_err(|e| e.to_string())?.solution),
        3 if tau == m.div_ceil(2) => three_agent_half_solve_traced(inst)
            .map(|(solution, _)| solution)
            .map_err(|e| e.to_string()),
        _ => Err(format!(
            "no constructive solver for cell n={n}, m={m}, tau={tau}"
        )),
    }
}

fn criterion_06_table_cells() -> CriterionResult {
    let mut check = Check::new();
    let mut s = Sampler::new(0x0601);
    let one = q_int(1);
    // Majority threshold: satisfiable for up to three agents (any m) and for
    // two projects (any n).
    let mut half_cells: Vec<(usize, usize)> = Vec::new();
    for n in 1..=3 {
        for m in 2..=7 {
            half_cells.push((n, m));
        }
    }
    for n in 4..=6 {
        half_cells.push((n, 2));
    }
    for &(n, m) in &half_cells {
        let tau = m.div_ceil(2);
        for _ in 0..200 {
            let inst = s.instance(n, m, Tightness::General);
            match solve_cell(&inst, tau) {
                Ok(solution) => {
                    let rep = satisfaction_report(&solution, &inst, tau).expect("dimensions");
                    check.assert(rep.all_satisfied() && solution.total() <= one, || {
                        format!("majority cell n={n}, m={m} failed on {inst:?}")
                    });
                }
                Err(e) => check.assert(false, || e),
            }
        }
    }
    // All-but-one threshold: satisfiable for m = 2 (any n), m = 3 with up to
    // three agents, and m = 4 with two agents.
    let abo_cells: Vec<(usize, usize)> = vec![
        (2, 2),
        (3, 2),
        (4, 2),
        (5, 2),
        (6, 2),
        (2, 3),
        (3, 3),
        (2, 4),
    ];
    for &(n, m) in &abo_cells {
        let tau = m - 1;
        for _ in 0..200 {
            let inst = s.instance(n, m, Tightness::General);
            let solved = if m == 4 {
                two_agent_four_solve(&inst).map_err(|e| e.to_string())
            } else {
                solve_cell(&inst, tau)
            };
            match solved {
                Ok(solution) => {
                    let rep = satisfaction_report(&solution, &inst, tau).expect("dimensions");
                    check.assert(rep.all_satisfied() && solution.total() <= one, || {
                        format!("all-but-one cell n={n}, m={m} failed on {inst:?}")
                    });
                }
                Err(e) => check.assert(false, || e),
            }
        }
    }
    // Unsatisfiable cells, witnessed by the fixtures.
    for (name, tau) in [
        (FixtureName::Instance1, 2usize),
        (FixtureName::NocoverFour, 3),
        (FixtureName::NocoverFive, 4),
    ] {
        let fam = fixture(name);
        let sat = all_agents_sat(&fam.instance, tau, &one, DEFAULT_NODE_LIMIT).expect("desk scale");
        check.assert(!sat.satisfiable(), || {
            format!("{name} unexpectedly satisfiable at tau {tau}")
        });
    }
    check.result(
        6,
        Suite::Tables,
        "satisfiability tables: constructive cells and counterexample cells",
        format!(
            "{} satisfiable cells x 200 random instances, 3 counterexamples",
            half_cells.len() + abo_cells.len()
        ),
    )
}

fn criterion_07_pseudopolynomial_equivalence() -> CriterionResult {
    let mut check = Check::new();
    let one = q_int(1);
    let mut s = Sampler::new(0x0701);
    for _ in 0..500 {
        let inst = s.sized_instance((1, 5), (2, 6), Tightness::Tight);
        let m = inst.projects();
        let zero = Solution::new(vec![Q::zero(); m]).expect("zeros");
        let fast = solve_m_minus_1_tight(&inst, &zero).expect("tight rows");
        let slow = oracle::all_sat_naive(&inst, m - 1, &one);
        check.assert(fast.is_some() == slow, || {
            format!(
                "branching answered {} but enumeration answered {} on {inst:?}",
                fast.is_some(),
                slow
            )
        });
        if let Some(x) = fast {
            let rep = satisfaction_report(&x, &inst, m - 1).expect("dimensions");
            check.assert(rep.all_satisfied() && x.total() <= one, || {
                format!("witness failed re-verification on {inst:?}")
            });
        }
    }
    for name in [FixtureName::NocoverFour, FixtureName::NocoverFive] {
        let fam = fixture(name);
        let m = fam.instance.projects();
        let zero = Solution::new(vec![Q::zero(); m]).expect("zeros");
        let got = solve_m_minus_1_tight(&fam.instance, &zero).expect("tight rows");
        check.assert(got.is_none(), || format!("{name} unexpectedly satisfiable"));
    }
    check.result(
        7,
        Suite::Algorithms,
        "all-but-one branching matches enumeration on tight instances",
        "500 random tight instances plus both counterexamples".into(),
    )
}

fn criterion_08_utilitarian_dp_equivalence() -> CriterionResult {
    let mut check = Check::new();
    let one = q_int(1);
    let mut s = Sampler::new(0x0801);
    for _ in 0..500 {
        let inst = s.sized_instance((1, 5), (1, 5), Tightness::General);
        debug_assert!(oracle::grid_points(&inst) <= 100_000);
        let dp = utilitarian_dp(&inst, &one).expect("valid budget");
        let naive = oracle::max_pairs_naive(&inst, &one);
        check.assert(dp.pair_count == naive, || {
            format!(
                "dp found {} pairs, enumeration {} on {inst:?}",
                dp.pair_count, naive
            )
        });
    }
    let fam = fixture(FixtureName::Instance1);
    let dp = utilitarian_dp(&fam.instance, &one).expect("valid budget");
    check.assert(dp.pair_count == 8, || {
        format!(
            "expected 8 pairs on the library instance, got {}",
            dp.pair_count
        )
    });
    check.result(
        8,
        Suite::Algorithms,
        "utilitarian dynamic program matches grid enumeration",
        "500 random instances; library instance pins 8 of 12 pairs".into(),
    )
}

fn criterion_09_minimum_budget_bounds() -> CriterionResult {
    let mut check = Check::new();

    // (a) the all-but-one family meets its closed-form optimum.
    let fam = abo_min_budget_family(3, &q(1, 3)).expect("valid parameters");
    let out = min_budget_exact(&fam.instance, 2, DEFAULT_NODE_LIMIT).expect("desk scale");
    check.assert(out.budget == q(4, 3), || {
        format!("expected minimum budget 4/3, got {}", out.budget)
    });

    // (b) the uniform bounds satisfy everyone on random instances.
    let mut s = Sampler::new(0x0901);
    for _ in 0..200 {
        let inst = s.sized_instance((1, 5), (2, 6), Tightness::General);
        let m = inst.projects();
        let half = satisfaction_report(&uniform_half_solution(m), &inst, m.div_ceil(2))
            .expect("dimensions");
        check.assert(half.all_satisfied(), || {
            format!("2/m solution failed at the majority threshold on {inst:?}")
        });
        let abo = satisfaction_report(&half_each_solution(m), &inst, m - 1).expect("dimensions");
        check.assert(abo.all_satisfied(), || {
            format!("1/2 solution failed at all-but-one on {inst:?}")
        });
    }

    // (c) the exhaustive family keeps the majority budget above 2 - 6/m.
    let fam = half_min_budget_family(4).expect("m = 4 is desk scale");
    let out = min_budget_exact(&fam.instance, 2, DEFAULT_NODE_LIMIT).expect("desk scale");
    check.assert(out.budget > q(1, 2), || {
        format!("expected minimum budget above 1/2, got {}", out.budget)
    });
    let grid_bound = q(1, 2);
    let summary_c = format!("969-agent family minimum {} > {}", out.budget, grid_bound);

    // (d) full-coverage minimum equals the column-maxima total.
    for _ in 0..100 {
        let inst = s.sized_instance((1, 5), (1, 5), Tightness::General);
        let m = inst.projects();
        let out = min_budget_exact(&inst, m, DEFAULT_NODE_LIMIT).expect("desk scale");
        let expected: Q = (0..m).map(|j| inst.column_max(j)).sum();
        check.assert(out.budget == expected, || {
            format!(
                "tau = m minimum {} differs from column maxima {expected}",
                out.budget
            )
        });
    }
    check.result(
        9,
        Suite::Bounds,
        "minimum-budget bounds: closed forms, uniform solutions, column maxima",
        summary_c,
    )
}

/// All connected graphs with `2..=max_n` vertices, one per isomorphism class.
pub fn connected_graph_corpus(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let mut pair_index = vec![vec![0usize; n]; n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            pair_index[u][v] = i;
            pair_index[v][u] = i;
        }
        let perms = permutations(n);
        'mask: for mask in 1u32..1 << pairs.len() {
            if !mask_connected(n, &pairs, mask) {
                continue;
            }
            // Keep only the lexicographically smallest relabeling.
            for perm in &perms {
                let mut mapped = 0u32;
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        mapped |= 1 << pair_index[perm[u]][perm[v]];
                    }
                }
                if mapped < mask {
                    continue 'mask;
                }
            }
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &p)| p)
                .collect();
            out.push(Graph::new(n, edges).expect("generated edges are simple"));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    heap_permutations(n, &mut current, &mut out);
    out
}

fn heap_permutations(k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(current.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(k - 1, current, out);
        if k.is_multiple_of(2) {
            current.swap(i, k - 1);
        } else {
            current.swap(0, k - 1);
        }
    }
}

#[allow(clippy::needless_range_loop)]
fn mask_connected(n: usize, pairs: &[(usize, usize)], mask: u32) -> bool {
    let mut adjacency = vec![0u32; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask & (1 << i) != 0 {
            adjacency[u] |= 1 << v;
            adjacency[v] |= 1 << u;
        }
    }
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let mut next = 0u32;
        for v in 0..n {
            if frontier & (1 << v) != 0 {
                next |= adjacency[v];
            }
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen.count_ones() as usize == n
}

fn named_graphs() -> Vec<(&'static str, Graph)> {
    let complete = |n: usize| {
        Graph::new(
            n,
            (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect(),
        )
        .expect("simple")
    };
    let cycle =
        |n: usize| Graph::new(n, (0..n).map(|u| (u, (u + 1) % n)).collect()).expect("simple");
    vec![
        ("K3", complete(3)),
        ("C5", cycle(5)),
        ("C6", cycle(6)),
        ("K4", complete(4)),
        (
            "K1_4",
            Graph::new(5, (1..=4).map(|v| (0, v)).collect()).expect("simple"),
        ),
    ]
}

fn criterion_10_reduction_round_trips() -> CriterionResult {
    let mut check = Check::new();
    let one = q_int(1);
    let corpus = connected_graph_corpus(6);
    check.assert(corpus.len() == 142, || {
        format!(
            "expected 142 connected graphs up to 6 vertices, got {}",
            corpus.len()
        )
    });
    for g in &corpus {
        let n = g.vertex_count();
        let vc = brute_force_vc(g).expect("small graph");
        let is = brute_force_is(g).expect("small graph");
        check.assert(vc + is == n, || {
            format!("cover {vc} plus independent {is} misses {n} vertices")
        });

        // Vertex cover <=> all-but-one satisfiability within budget 1.
        for k in 2u64..=3 {
            let out = vc_to_allsat_m_minus_1(g, k).expect("valid parameters");
            let tau = out.tau.resolve(out.instance.projects()).expect("valid tau");
            let sat = oracle::all_sat_naive(&out.instance, tau, &out.target_budget);
            check.assert(sat == (vc as u64 <= k), || {
                format!("all-but-one round trip failed for k = {k} on {g:?}")
            });
        }

        // Independent set <=> majority satisfiability within k/(N-2).
        for k in 1u64..=2 {
            let out = is_to_minbudget_half(g, k).expect("valid parameters");
            let tau = out.tau.resolve(out.instance.projects()).expect("valid tau");
            let min = oracle::min_budget_naive(&out.instance, tau);
            check.assert((min <= out.target_budget) == (is as u64 >= k), || {
                format!("majority budget round trip failed for k = {k} on {g:?}")
            });
        }

        // Minimum all-but-one budget is exactly half the cover size.
        let out = vc_to_minbudget_m_minus_1(g).expect("nonempty graph");
        let tau = out.tau.resolve(out.instance.projects()).expect("valid tau");
        let min = oracle::min_budget_naive(&out.instance, tau);
        check.assert(min == q(vc as i64, 2), || {
            format!("expected minimum budget {}/2, got {min} on {g:?}", vc)
        });

        // Minimum single-hit budget is exactly vc/m^2.
        if n >= 3 {
            let m2 = (n * n) as i64;
            let out = vc_to_minbudget_tau1(g, 2).expect("valid parameters");
            let min = oracle::min_budget_naive(&out.instance, 1);
            check.assert(min == q(vc as i64, m2), || {
                format!("expected minimum budget {vc}/{m2}, got {min} on {g:?}")
            });
            check.assert((min <= out.target_budget) == (vc <= 2), || {
                format!("single-hit decision mismatched for k = 2 on {g:?}")
            });
        }
    }

    // The private-project variant stays desk-scale only on the named graphs.
    for (name, g) in named_graphs() {
        let vc = brute_force_vc(&g).expect("small graph");
        for k in [0u64, 2] {
            let out = vc_to_allsat_m_minus_c(&g, k, 2).expect("valid parameters");
            let tau = out.tau.resolve(out.instance.projects()).expect("valid tau");
            let sat = all_agents_sat(&out.instance, tau, &one, DEFAULT_NODE_LIMIT)
                .expect("pruned search stays desk scale");
            check.assert(sat.satisfiable() == (vc as u64 <= k), || {
                format!("private-project round trip failed for k = {k} on {name}")
            });
        }
    }
    check.result(
        10,
        Suite::Reductions,
        "graph reductions round-trip against brute force",
        format!(
            "{} corpus graphs plus {} named graphs",
            corpus.len(),
            named_graphs().len()
        ),
    )
}

fn criterion_11_tau_extremes() -> CriterionResult {
    let mut check = Check::new();
    let one = q_int(1);
    let mut s = Sampler::new(0x1101);
    for round in 0..1000 {
        let tightness = if round % 2 == 0 {
            Tightness::Tight
        } else {
            Tightness::General
        };
        let inst = s.sized_instance((1, 6), (1, 6), tightness);
        let m = inst.projects();
        let uniform = solve_tau1(&inst);
        let rep = satisfaction_report(&uniform, &inst, 1).expect("dimensions");
        check.assert(rep.all_satisfied(), || {
            format!("uniform 1/m solution failed at tau 1 on {inst:?}")
        });
        let maxima_total: Q = (0..m).map(|j| inst.column_max(j)).sum();
        let answer = solve_tau_m(&inst, &one);
        check.assert(answer.is_some() == (maxima_total <= one), || {
            format!("full-coverage sign test disagreed on {inst:?}")
        });
    }
    check.result(
        11,
        Suite::Algorithms,
        "threshold extremes: uniform 1/m and column-maxima sign test",
        "1000 random instances".into(),
    )
}

fn criterion_12_cyclic_family_cap() -> CriterionResult {
    let mut check = Check::new();
    let mut seen = Vec::new();
    for m in [5usize, 6, 7] {
        let fam = cyclic_m_minus_1(m).expect("m >= 3");
        let out = max_satisfied_exact(&fam.instance, m - 1, &q_int(1), DEFAULT_NODE_LIMIT)
            .expect("desk scale");
        seen.push(format!("m={m}:{}", out.satisfied_count));
        check.assert(out.satisfied_count <= 4, || {
            format!(
                "m = {m}: cyclic family satisfied {} agents, cap is 4",
                out.satisfied_count
            )
        });
    }
    check.result(
        12,
        Suite::Bounds,
        "cyclic all-but-one family satisfies at most four agents",
        format!("expected at most 4; got {}", seen.join(" ")),
    )
}
