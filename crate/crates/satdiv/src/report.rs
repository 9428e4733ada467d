//! Deterministic run reports.
//!
//! Reports carry exact rationals with decimal approximations alongside; the
//! exact values are authoritative. Rendering is byte-stable for identical
//! inputs, so timing never appears here (the CLI sends it to stderr).

use crate::model::{Instance, Solution, Tightness};
use crate::rational::{decimal_string, Q};
use std::fmt::Write;

/// FNV-1a over a canonical serialization of the demand matrix.
pub fn instance_digest(inst: &Instance) -> String {
    let mut text = format!(
        "{}x{};{}",
        inst.agents(),
        inst.projects(),
        matches!(inst.tightness(), Tightness::Tight)
    );
    for row in inst.rows() {
        for d in row {
            text.push(';');
            text.push_str(&d.to_string());
        }
    }
    let mut hash: u64 = 0xcbf29ce484222325;
    for byte in text.bytes() {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

pub fn format_rational(value: &Q) -> String {
    format!("{} ({})", value, decimal_string(value))
}

pub fn format_solution(solution: &Solution) -> String {
    let exact: Vec<String> = solution.coords().iter().map(|c| c.to_string()).collect();
    let approx: Vec<String> = solution.coords().iter().map(decimal_string).collect();
    format!("[{}] ([{}])", exact.join(", "), approx.join(", "))
}

/// One solver or checker run, rendered as `key: value` lines.
#[derive(Debug, Clone, Default)]
pub struct RunReport {
    lines: Vec<(String, String)>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        let mut report = RunReport::default();
        report.push("command", command);
        report
    }

    pub fn push(&mut self, key: &str, value: impl Into<String>) {
        self.lines.push((key.to_string(), value.into()));
    }

    pub fn push_instance(&mut self, inst: &Instance) {
        self.push(
            "instance",
            format!(
                "{} agents, {} projects, {}, digest {}",
                inst.agents(),
                inst.projects(),
                match inst.tightness() {
                    Tightness::Tight => "tight",
                    Tightness::General => "general",
                },
                instance_digest(inst)
            ),
        );
    }

    pub fn push_rational(&mut self, key: &str, value: &Q) {
        self.push(key, format_rational(value));
    }

    pub fn push_solution(&mut self, key: &str, solution: &Solution) {
        self.push(key, format_solution(solution));
        self.push_rational("total", &solution.total());
    }

    /// 1-based agent list.
    pub fn push_agents(&mut self, key: &str, agents: &[usize]) {
        let list: Vec<String> = agents.iter().map(|a| (a + 1).to_string()).collect();
        self.push(key, format!("[{}]", list.join(", ")));
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.lines {
            writeln!(out, "{key}: {value}").expect("string writes cannot fail");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Instance;
    use crate::rational::q;

    #[test]
    fn digest_distinguishes_instances() {
        let a = Instance::validate(vec![vec![q(1, 2), q(1, 2)]], Tightness::General).unwrap();
        let b = Instance::validate(vec![vec![q(1, 2), q(1, 3)]], Tightness::General).unwrap();
        assert_ne!(instance_digest(&a), instance_digest(&b));
        assert_eq!(instance_digest(&a), instance_digest(&a));
    }

    #[test]
    fn report_renders_stable_lines() {
        let mut report = RunReport::new("solve max-sat");
        report.push("status", "YES");
        report.push_rational("budget", &q(1, 2));
        assert_eq!(
            report.render(),
            "command: solve max-sat\nstatus: YES\nbudget: 1/2 (0.5)\n"
        );
    }
}
