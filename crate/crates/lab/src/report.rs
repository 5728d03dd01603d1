//! JSON reports and the terminal summary table.

use std::fmt::Write as _;

use elemlab::group::CacheStats;
use elemlab::identities::{CheckResult, Verdict};
use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Overall {
    Pass,
    Inconclusive,
    Fail,
    Error,
}

impl Overall {
    pub fn exit_code(self) -> u8 {
        match self {
            Overall::Pass => 0,
            Overall::Fail => 1,
            Overall::Inconclusive => 2,
            Overall::Error => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub claim: String,
    pub required: bool,
    pub ideals: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<CheckResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckEntry {
    pub fn status(&self) -> &'static str {
        match (&self.result, &self.error) {
            (_, Some(_)) => "error",
            (Some(r), None) => match r.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail { .. } => "fail",
                Verdict::Inconclusive { .. } => "inconclusive",
            },
            (None, None) => "error",
        }
    }
}

/// Everything that varies between identical runs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Runtime {
    pub workers: usize,
    pub elapsed_ms: u64,
    pub check_ms: Vec<u64>,
    pub cache: CacheStats,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub scenario_digest: String,
    pub overall: Overall,
    pub checks: Vec<CheckEntry>,
    pub warnings: Vec<String>,
    pub runtime: Runtime,
}

impl Report {
    /// Pass iff no required check failed, errored or was inconclusive;
    /// optional checks only add warnings.
    pub fn assemble(digest: String, checks: Vec<CheckEntry>, runtime: Runtime) -> Report {
        let mut overall = Overall::Pass;
        let mut warnings = Vec::new();
        for (k, c) in checks.iter().enumerate() {
            let level = match c.status() {
                "pass" => Overall::Pass,
                "fail" => Overall::Fail,
                "inconclusive" => Overall::Inconclusive,
                _ => Overall::Error,
            };
            if level == Overall::Pass {
                continue;
            }
            if c.required {
                overall = overall.max(level);
            } else {
                warnings.push(format!("optional check {k} ({}) is {}", c.claim, c.status()));
            }
        }
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            scenario_digest: digest,
            overall,
            checks,
            warnings,
            runtime,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:>3}  {:<22} {:<10} {:<13} {:>10}  {:>9}", "#", "claim", "ideals", "status", "evaluated", "ms");
        for (k, c) in self.checks.iter().enumerate() {
            let evaluated = c.result.as_ref().map_or(String::from("-"), |r| r.counts.evaluated.to_string());
            let ms = self.runtime.check_ms.get(k).copied().unwrap_or(0);
            let status = if c.required { c.status().to_string() } else { format!("{} (opt)", c.status()) };
            let _ = writeln!(out, "{k:>3}  {:<22} {:<10} {status:<13} {evaluated:>10}  {ms:>9}", c.claim, c.ideals.join(","));
            match (&c.result, &c.error) {
                (_, Some(e)) => {
                    let _ = writeln!(out, "       error: {e}");
                }
                (Some(r), None) => match &r.verdict {
                    Verdict::Fail { witness, context } => {
                        let _ = writeln!(out, "       {context}\n       witness {witness}");
                    }
                    Verdict::Inconclusive { reason } => {
                        let _ = writeln!(out, "       {reason}");
                    }
                    Verdict::Pass => {}
                },
                (None, None) => {}
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        let c = self.runtime.cache;
        let _ = writeln!(
            out,
            "overall: {:?}  (cache: {} computed, {} memory hits, {} disk hits)",
            self.overall, c.computed, c.memory_hits, c.disk_hits
        );
        out
    }
}
