//! Command-line front end: check a division against an instance, run the
//! solvers, generate families, emit reductions, and run the verification
//! suites. Reports on stdout are byte-stable across runs; timing goes to
//! stderr.

use clap::{Args, Parser, Subcommand};
use satdiv::constructive::{three_agent_half_solve_traced, two_agent_four_solve, ReshuffleTrace};
use satdiv::families::{
    abo_min_budget_family, cyclic_m_minus_1, default_deltas, fixture, half_min_budget_family,
    half_upper_bound_family, tight_dictator, two_distinct_tight, FamilyInstance, FixtureName,
};
use satdiv::io::{
    family_meta, instance_to_json, parse_instance_json, parse_solution_json, LoadedInstance,
};
use satdiv::model::{satisfaction_report, Solution, ThresholdSpec};
use satdiv::rational::{parse_rational, q_int, Q};
use satdiv::reductions::{
    is_to_minbudget_half, vc_to_allsat_m_minus_1, vc_to_allsat_m_minus_c,
    vc_to_minbudget_m_minus_1, vc_to_minbudget_tau1, Graph, ReductionOutput,
};
use satdiv::report::RunReport;
use satdiv::solvers::{
    all_agents_sat, dictator, max_satisfied_exact, min_budget_exact, solve_m_minus_1_tight,
    utilitarian_dp, DEFAULT_NODE_LIMIT,
};
use satdiv::verify::{run as run_verify, Suite};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "satdiv",
    about = "Exact solvers for threshold budget division",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a solution file against an instance; exit 0 iff every agent
    /// is satisfied.
    Check {
        /// Instance file (JSON).
        instance: PathBuf,
        /// Solution file (JSON).
        solution: PathBuf,
        #[command(flatten)]
        tau: TauArg,
    },
    /// Run a solver on an instance file.
    Solve {
        /// One of max-sat, all-sat, min-budget, utilitarian, dictator,
        /// three-agent, two-agent-four.
        mode: String,
        /// Instance file (JSON).
        instance: PathBuf,
        #[command(flatten)]
        tau: TauArg,
        /// Budget bound (rational); defaults to 1. Ignored by min-budget.
        #[arg(long)]
        budget: Option<String>,
        /// Search-node cap for the exhaustive solvers; also settable via
        /// SATDIV_NODE_LIMIT.
        #[arg(long)]
        node_limit: Option<u64>,
    },
    /// Generate a named family or fixture as an instance file.
    Gen {
        /// One of fixture, tight-dictator, half-upper-bound, cyclic,
        /// half-min-budget, abo-min-budget, two-distinct-tight.
        family: String,
        /// Fixture name for `gen fixture`.
        #[arg(long)]
        name: Option<String>,
        /// Size parameter m.
        #[arg(long)]
        m: Option<usize>,
        /// Comma-separated increasing rationals in (0, 1/6).
        #[arg(long)]
        deltas: Option<String>,
        /// Number of default deltas for half-upper-bound.
        #[arg(long)]
        k: Option<usize>,
        /// Epsilon in (0, 1/2) for abo-min-budget.
        #[arg(long)]
        eps: Option<String>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a hardness reduction to a graph file.
    Reduce {
        /// One of vc-allsat-m1, vc-allsat-mc, is-minbudget-half,
        /// vc-minbudget-m1, vc-minbudget-tau1.
        reduction: String,
        /// Graph file: `N M` then M lines `u v` (1-based).
        graph: PathBuf,
        /// Cover / independent-set target size.
        #[arg(long)]
        k: Option<u64>,
        /// Relaxation constant c for vc-allsat-mc.
        #[arg(long)]
        c: Option<u32>,
        /// Instance output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Mapping sidecar path; defaults to `<out>.mapping.json`.
        #[arg(long)]
        mapping_out: Option<PathBuf>,
    },
    /// Run the verification suites: tables, bounds, algorithms, reductions,
    /// or all.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
}

#[derive(Args)]
struct TauArg {
    /// Threshold override: one, half, all, all-but-C, or an integer.
    #[arg(long)]
    tau: Option<String>,
}

fn parse_tau_spec(text: &str) -> Result<ThresholdSpec, String> {
    match text {
        "one" => Ok(ThresholdSpec::One),
        "half" => Ok(ThresholdSpec::Half),
        "all" => Ok(ThresholdSpec::All),
        other => {
            if let Some(c) = other.strip_prefix("all-but-") {
                let c: u32 = c.parse().map_err(|_| format!("bad threshold {other:?}"))?;
                return Ok(ThresholdSpec::AllButC(c));
            }
            let k: u32 = other
                .parse()
                .map_err(|_| format!("bad threshold {other:?}"))?;
            Ok(ThresholdSpec::Fixed(k))
        }
    }
}

fn read_instance(path: &Path) -> Result<LoadedInstance, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_instance_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn resolve_tau(loaded: &LoadedInstance, arg: &TauArg) -> Result<(ThresholdSpec, usize), String> {
    let spec = match &arg.tau {
        Some(text) => parse_tau_spec(text)?,
        None => loaded.tau,
    };
    let tau = spec
        .resolve(loaded.instance.projects())
        .map_err(|e| e.to_string())?;
    Ok((spec, tau))
}

fn node_limit(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("SATDIV_NODE_LIMIT")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_NODE_LIMIT)
}

fn emit(report: &RunReport, started: Instant) {
    print!("{}", report.render());
    eprintln!("elapsed: {:.3?}", started.elapsed());
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Check {
            instance,
            solution,
            tau,
        } => cmd_check(&instance, &solution, &tau),
        Command::Solve {
            mode,
            instance,
            tau,
            budget,
            node_limit: limit,
        } => cmd_solve(&mode, &instance, &tau, budget.as_deref(), limit),
        Command::Gen {
            family,
            name,
            m,
            deltas,
            k,
            eps,
            out,
        } => cmd_gen(
            &family,
            name.as_deref(),
            m,
            deltas.as_deref(),
            k,
            eps.as_deref(),
            out,
        ),
        Command::Reduce {
            reduction,
            graph,
            k,
            c,
            out,
            mapping_out,
        } => cmd_reduce(&reduction, &graph, k, c, out, mapping_out),
        Command::Verify { suite } => cmd_verify(&suite),
    }
}

fn cmd_check(
    instance_path: &Path,
    solution_path: &Path,
    tau_arg: &TauArg,
) -> Result<ExitCode, String> {
    let started = Instant::now();
    let loaded = read_instance(instance_path)?;
    let text = fs::read_to_string(solution_path)
        .map_err(|e| format!("cannot read {}: {e}", solution_path.display()))?;
    let solution = parse_solution_json(&text).map_err(|e| e.to_string())?;
    let (spec, tau) = resolve_tau(&loaded, tau_arg)?;
    let rep = satisfaction_report(&solution, &loaded.instance, tau).map_err(|e| e.to_string())?;

    let mut report = RunReport::new("check");
    report.push_instance(&loaded.instance);
    report.push("tau", format!("{tau} ({spec})"));
    report.push_solution("solution", &solution);
    if solution.total() > q_int(1) {
        report.push("warning", "total exceeds the unit budget");
    }
    for (agent, local) in rep.local_sets.iter().enumerate() {
        let projects: Vec<String> = local.iter().map(|j| (j + 1).to_string()).collect();
        report.push(
            &format!("agent {}", agent + 1),
            format!(
                "{} (locally satisfied for projects [{}])",
                if rep.satisfied[agent] {
                    "satisfied"
                } else {
                    "NOT satisfied"
                },
                projects.join(", ")
            ),
        );
    }
    report.push(
        "satisfied",
        format!("{} of {}", rep.satisfied_count, loaded.instance.agents()),
    );
    emit(&report, started);
    Ok(if rep.all_satisfied() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_solve(
    mode: &str,
    instance_path: &Path,
    tau_arg: &TauArg,
    budget: Option<&str>,
    limit_flag: Option<u64>,
) -> Result<ExitCode, String> {
    let started = Instant::now();
    let loaded = read_instance(instance_path)?;
    let inst = &loaded.instance;
    let budget = match budget {
        Some(text) => parse_rational(text).map_err(|e| e.to_string())?,
        None => q_int(1),
    };
    let limit = node_limit(limit_flag);

    let mut report = RunReport::new(&format!("solve {mode}"));
    report.push_instance(inst);

    let too_large = |report: &mut RunReport| {
        report.push("status", "TOO-LARGE");
        report.push("node limit", limit.to_string());
    };

    match mode {
        "max-sat" => {
            let (spec, tau) = resolve_tau(&loaded, tau_arg)?;
            report.push("tau", format!("{tau} ({spec})"));
            report.push_rational("budget", &budget);
            match max_satisfied_exact(inst, tau, &budget, limit) {
                Ok(out) => {
                    report.push("status", "OK");
                    report.push("satisfied count", out.satisfied_count.to_string());
                    report.push(
                        "rho",
                        format!("{}/{}", out.satisfied_count, inst.agents()),
                    );
                    report.push_solution("solution", &out.solution);
                    let rep = satisfaction_report(&out.solution, inst, tau)
                        .map_err(|e| e.to_string())?;
                    report.push_agents("satisfied agents", &rep.satisfied_agents());
                    report.push("nodes", out.stats.nodes.to_string());
                }
                Err(satdiv::solvers::SolveError::TooLarge { .. }) => too_large(&mut report),
                Err(e) => return Err(e.to_string()),
            }
        }
        "all-sat" => {
            let (spec, tau) = resolve_tau(&loaded, tau_arg)?;
            report.push("tau", format!("{tau} ({spec})"));
            report.push_rational("budget", &budget);
            match all_agents_sat(inst, tau, &budget, limit) {
                Ok(out) => {
                    report.push("route", out.route.label());
                    match &out.solution {
                        Some(solution) => {
                            report.push("status", "YES");
                            report.push_solution("solution", solution);
                        }
                        None => report.push("status", "NO"),
                    }
                    report.push("nodes", out.stats.nodes.to_string());
                }
                Err(satdiv::solvers::SolveError::TooLarge { .. }) => too_large(&mut report),
                Err(e) => return Err(e.to_string()),
            }
        }
        "min-budget" => {
            let (spec, tau) = resolve_tau(&loaded, tau_arg)?;
            report.push("tau", format!("{tau} ({spec})"));
            match min_budget_exact(inst, tau, limit) {
                Ok(out) => {
                    report.push("status", "OK");
                    report.push_rational("minimum budget", &out.budget);
                    report.push_solution("solution", &out.solution);
                    report.push("nodes", out.stats.nodes.to_string());
                }
                Err(satdiv::solvers::SolveError::TooLarge { .. }) => too_large(&mut report),
                Err(e) => return Err(e.to_string()),
            }
        }
        "utilitarian" => {
            report.push_rational("budget", &budget);
            let out = utilitarian_dp(inst, &budget).map_err(|e| e.to_string())?;
            report.push("status", "OK");
            report.push(
                "locally satisfied pairs",
                format!("{} of {}", out.pair_count, inst.agents() * inst.projects()),
            );
            report.push_solution("solution", &out.solution);
        }
        "dictator" => {
            let (spec, tau) = resolve_tau(&loaded, tau_arg)?;
            report.push("tau", format!("{tau} ({spec})"));
            let out = dictator(inst, tau).map_err(|e| e.to_string())?;
            report.push("status", "OK");
            report.push("dictator", format!("agent {}", out.agent + 1));
            report.push("satisfied count", out.satisfied_count.to_string());
            report.push("rho", format!("{}/{}", out.satisfied_count, inst.agents()));
            report.push_solution("solution", &out.solution);
        }
        "three-agent" => {
            let tau = inst.projects().div_ceil(2);
            report.push("tau", format!("{tau} (half)"));
            let (solution, trace) =
                three_agent_half_solve_traced(inst).map_err(|e| e.to_string())?;
            report.push("status", "YES");
            report.push(
                "construction",
                match &trace {
                    ReshuffleTrace::PairSplit { .. } => "two-project split",
                    ReshuffleTrace::DirectCover { .. } => "covering demand row",
                    ReshuffleTrace::Reshuffled(_) => "column reshuffle",
                    ReshuffleTrace::DroppedLast { .. } => "reduced to odd project count",
                },
            );
            report.push("certificate", if trace.verify() { "verified" } else { "INVALID" });
            report.push_solution("solution", &solution);
            push_reshuffle_certificate(&mut report, &trace);
        }
        "two-agent-four" => {
            report.push("tau", "3 (all-but-one)");
            let solution = two_agent_four_solve(inst).map_err(|e| e.to_string())?;
            report.push("status", "YES");
            report.push_solution("solution", &solution);
        }
        "pseudopoly" => {
            // Exposed for completeness: the all-but-one branching solver on
            // a tight instance from the zero base.
            let zero = Solution::new(vec![q_int(0); inst.projects()])
                .expect("zero coordinates are valid");
            report.push("tau", format!("{} (all-but-one)", inst.projects() - 1));
            match solve_m_minus_1_tight(inst, &zero).map_err(|e| e.to_string())? {
                Some(solution) => {
                    report.push("status", "YES");
                    report.push_solution("solution", &solution);
                }
                None => report.push("status", "NO"),
            }
        }
        other => {
            return Err(format!(
                "unknown mode {other:?}; expected max-sat, all-sat, min-budget, utilitarian, dictator, three-agent, two-agent-four, or pseudopoly"
            ))
        }
    }
    emit(&report, started);
    Ok(ExitCode::SUCCESS)
}

/// Renders the audit certificate of a cyclic reshuffle run: order classes,
/// the distinguished triple, the matching, and the per-column coloring.
fn push_reshuffle_certificate(report: &mut RunReport, trace: &ReshuffleTrace) {
    let state = match trace {
        ReshuffleTrace::Reshuffled(state) => state,
        ReshuffleTrace::DroppedLast { inner } => {
            return push_reshuffle_certificate(report, inner);
        }
        _ => return,
    };
    report.push(
        "agent order",
        format!(
            "rows relabeled as agents [{}]",
            state
                .original_agents
                .iter()
                .map(|a| (a + 1).to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ),
    );
    let classes: Vec<String> = state
        .classes
        .iter()
        .enumerate()
        .map(|(j, c)| format!("{}:{c:?}", j + 1))
        .collect();
    report.push("classes", classes.join(" "));
    report.push(
        "triple",
        format!(
            "projects [{}, {}, {}]",
            state.triple[0] + 1,
            state.triple[1] + 1,
            state.triple[2] + 1
        ),
    );
    let pairs: Vec<String> = state
        .pairs
        .iter()
        .map(|(x, y)| format!("({}, {})", x + 1, y + 1))
        .collect();
    report.push("pairing", format!("[{}]", pairs.join(", ")));
    report.push("leftovers", format!("{:?}", state.deltas));
    let coloring: Vec<String> = state
        .coloring
        .iter()
        .enumerate()
        .map(|(j, colors)| {
            format!(
                "{}:{}/{}/{}",
                j + 1,
                colors[0].label(),
                colors[1].label(),
                colors[2].label()
            )
        })
        .collect();
    report.push("coloring (rows a/b/c)", coloring.join(" "));
}

fn cmd_gen(
    family: &str,
    name: Option<&str>,
    m: Option<usize>,
    deltas: Option<&str>,
    k: Option<usize>,
    eps: Option<&str>,
    out: Option<PathBuf>,
) -> Result<ExitCode, String> {
    let need_m = || m.ok_or_else(|| format!("family {family:?} needs --m"));
    let fam: FamilyInstance = match family {
        "fixture" => {
            let name = name.ok_or("gen fixture needs --name")?;
            let fixture_name: FixtureName = name.parse().map_err(|e| format!("{e}"))?;
            fixture(fixture_name)
        }
        "tight-dictator" => tight_dictator(need_m()?).map_err(|e| e.to_string())?,
        "half-upper-bound" => {
            let deltas = match (deltas, k) {
                (Some(text), _) => text
                    .split(',')
                    .map(|s| parse_rational(s.trim()).map_err(|e| e.to_string()))
                    .collect::<Result<Vec<Q>, String>>()?,
                (None, Some(k)) => default_deltas(k),
                (None, None) => return Err("half-upper-bound needs --deltas or --k".into()),
            };
            half_upper_bound_family(&deltas).map_err(|e| e.to_string())?
        }
        "cyclic" => cyclic_m_minus_1(need_m()?).map_err(|e| e.to_string())?,
        "half-min-budget" => half_min_budget_family(need_m()?).map_err(|e| e.to_string())?,
        "abo-min-budget" => {
            let eps = parse_rational(eps.ok_or("abo-min-budget needs --eps")?)
                .map_err(|e| e.to_string())?;
            abo_min_budget_family(need_m()?, &eps).map_err(|e| e.to_string())?
        }
        "two-distinct-tight" => two_distinct_tight(need_m()?).map_err(|e| e.to_string())?,
        other => {
            return Err(format!(
                "unknown family {other:?}; expected fixture, tight-dictator, half-upper-bound, cyclic, half-min-budget, abo-min-budget, or two-distinct-tight"
            ))
        }
    };
    let text = instance_to_json(&fam.instance, fam.tau, Some(family_meta(&fam)));
    write_or_print(out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_reduce(
    reduction: &str,
    graph_path: &Path,
    k: Option<u64>,
    c: Option<u32>,
    out: Option<PathBuf>,
    mapping_out: Option<PathBuf>,
) -> Result<ExitCode, String> {
    let text = fs::read_to_string(graph_path)
        .map_err(|e| format!("cannot read {}: {e}", graph_path.display()))?;
    let graph = Graph::parse(&text).map_err(|e| e.to_string())?;
    let need_k = || k.ok_or_else(|| format!("reduction {reduction:?} needs --k"));
    let output: ReductionOutput = match reduction {
        "vc-allsat-m1" => vc_to_allsat_m_minus_1(&graph, need_k()?).map_err(|e| e.to_string())?,
        "vc-allsat-mc" => {
            let c = c.ok_or("vc-allsat-mc needs --c")?;
            vc_to_allsat_m_minus_c(&graph, need_k()?, c).map_err(|e| e.to_string())?
        }
        "is-minbudget-half" => {
            is_to_minbudget_half(&graph, need_k()?).map_err(|e| e.to_string())?
        }
        "vc-minbudget-m1" => vc_to_minbudget_m_minus_1(&graph).map_err(|e| e.to_string())?,
        "vc-minbudget-tau1" => {
            vc_to_minbudget_tau1(&graph, need_k()?).map_err(|e| e.to_string())?
        }
        other => {
            return Err(format!(
                "unknown reduction {other:?}; expected vc-allsat-m1, vc-allsat-mc, is-minbudget-half, vc-minbudget-m1, or vc-minbudget-tau1"
            ))
        }
    };
    let instance_text = instance_to_json(&output.instance, output.tau, None);
    let mut mapping_value =
        serde_json::to_value(&output.mapping).expect("mappings always serialize");
    mapping_value["target_budget"] = serde_json::Value::String(output.target_budget.to_string());
    let mapping_text = format!(
        "{}\n",
        serde_json::to_string_pretty(&mapping_value).expect("mappings always serialize")
    );
    write_or_print(out.as_deref(), &instance_text)?;
    let mapping_path =
        mapping_out.or_else(|| out.as_deref().map(|p| p.with_extension("mapping.json")));
    match mapping_path {
        Some(path) => fs::write(&path, mapping_text)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{mapping_text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(suite: &str) -> Result<ExitCode, String> {
    let started = Instant::now();
    let filter = match suite {
        "all" => None,
        other => Some(other.parse::<Suite>()?),
    };
    let results = run_verify(filter);
    let mut passed = 0;
    for result in &results {
        println!("{result}");
        if result.passed {
            passed += 1;
        }
    }
    println!("verify: {passed}/{} criteria passed", results.len());
    eprintln!("elapsed: {:.3?}", started.elapsed());
    Ok(if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
