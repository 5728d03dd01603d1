//! Scenario runner behind the `lab` binary.

use std::path::{Path, PathBuf};
use std::time::Instant;

use elemlab::group::Engine;
use elemlab::identities::run_claim;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

pub mod report;
pub mod scenario;

pub use report::{CheckEntry, Overall, Report, Runtime};
pub use scenario::Scenario;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("malformed scenario: {0}")]
    Json(serde_json::Error),
    #[error("invalid scenario: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub workers: Option<usize>,
    pub cache: Option<PathBuf>,
    pub seed: Option<u64>,
}

/// Digest of the scenario as it will run, i.e. after the seed override.
pub fn scenario_digest(s: &Scenario) -> String {
    let canonical = serde_json::to_vec(s).expect("scenario serialises");
    hex::encode(Sha256::digest(&canonical))
}

pub fn run_scenario(scenario: &Scenario, opts: &RunOptions) -> Result<Report, ConfigError> {
    let mut scenario = scenario.clone();
    if let Some(seed) = opts.seed {
        scenario.seed = seed;
    }
    let requests = scenario.requests(scenario.seed)?;
    let mut engine = Engine::new(scenario.budgets);
    if let Some(dir) = &opts.cache {
        engine = engine.with_disk_cache(dir).map_err(|e| ConfigError::Io(dir.clone(), e))?;
    }
    let workers = opts.workers.unwrap_or_else(rayon::current_num_threads).max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| ConfigError::Invalid(e.to_string()))?;
    let start = Instant::now();
    let outcomes: Vec<_> = pool.install(|| {
        requests
            .par_iter()
            .map(|req| {
                let t = Instant::now();
                let r = run_claim(&engine, req);
                (r, t.elapsed().as_millis() as u64)
            })
            .collect()
    });
    let mut checks = Vec::with_capacity(outcomes.len());
    let mut check_ms = Vec::with_capacity(outcomes.len());
    for ((outcome, ms), cfg) in outcomes.into_iter().zip(&scenario.checks) {
        let (result, error) = match outcome {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        };
        checks.push(CheckEntry { claim: cfg.claim.clone(), required: cfg.required, ideals: cfg.ideals.clone(), result, error });
        check_ms.push(ms);
    }
    let runtime = Runtime { workers, elapsed_ms: start.elapsed().as_millis() as u64, check_ms, cache: engine.stats() };
    Ok(Report::assemble(scenario_digest(&scenario), checks, runtime))
}

/// Where the report goes: the flag, else the scenario's `report` field
/// (relative to the config), else `<stem>.report.json` beside the config.
pub fn report_path(config: &Path, scenario: &Scenario, flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_owned();
    }
    let dir = config.parent().unwrap_or(Path::new("."));
    match &scenario.report {
        Some(p) if p.is_absolute() => p.clone(),
        Some(p) => dir.join(p),
        None => {
            let stem = config.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
            dir.join(format!("{stem}.report.json"))
        }
    }
}
