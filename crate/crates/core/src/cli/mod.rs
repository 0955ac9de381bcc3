//! Batch verification runner behind the `verify` binary.

mod checks;
mod report;

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use checks::{registry, Check, Context, Outcome, LIFT_SIGN, STAGES};
pub use report::{emit, CheckResult, Format, Status};

use crate::error::{Error, Result};
use crate::g2alg::G2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    /// Check-id globs; empty selects everything.
    pub filter: Vec<String>,
    pub format: Format,
    pub timing: bool,
    /// Run against a g2 whose bracket table has one corrupted entry.
    pub inject_fault: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0, trials: 25, filter: vec![], format: Format::Text, timing: true, inject_fault: false }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<Vec<glob::Pattern>> {
        if self.trials == 0 {
            return Err(Error::Precondition("trials must be at least 1".into()));
        }
        self.filter
            .iter()
            .map(|f| glob::Pattern::new(f).map_err(|e| Error::Precondition(format!("invalid filter {f:?}: {e}"))))
            .collect()
    }
}

/// Exit status of a completed run.
pub fn exit_code(results: &[CheckResult]) -> i32 {
    if results.iter().all(|r| r.status == Status::Pass) {
        0
    } else {
        1
    }
}

/// Independent stream per check, so results do not depend on the filter.
fn rng_for(seed: u64, id: &str) -> ChaCha8Rng {
    // FNV-1a
    let h = id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic".into())
}

fn run_one(check: &Check, ctx: &Context, config: &RunConfig) -> CheckResult {
    let mut rng = rng_for(config.seed, check.id);
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| (check.run)(ctx, &mut rng)))
        .unwrap_or_else(|p| Err(format!("panicked: {}", panic_message(p))));
    let ms = if config.timing { start.elapsed().as_millis() as u64 } else { 0 };
    match outcome {
        Ok(()) => CheckResult::pass(check.id, check.anchor, ms),
        Err(witness) => CheckResult::fail(check.id, check.anchor, witness, ms),
    }
}

/// Runs the selected checks stage by stage (checks inside a stage in
/// parallel) and returns the results in registry order.
pub fn run(config: &RunConfig) -> Result<Vec<CheckResult>> {
    let patterns = config.validate()?;
    let g2 = if config.inject_fault { Arc::new(G2::get().with_corrupted_constant()) } else { G2::shared() };
    let ctx = Context { g2, trials: config.trials };
    let selected: Vec<Check> = registry()
        .into_iter()
        .filter(|c| patterns.is_empty() || patterns.iter().any(|p| p.matches(c.id)))
        .collect();

    let mut done: HashMap<&'static str, CheckResult> = HashMap::new();
    for stage in STAGES {
        let here: Vec<&Check> = selected.iter().filter(|c| c.stage() == stage).collect();
        let results: Vec<CheckResult> = here
            .par_iter()
            .map(|c| {
                let failed: Vec<&str> =
                    c.requires.iter().copied().filter(|r| done.get(r).is_some_and(|d| d.status != Status::Pass)).collect();
                if failed.is_empty() {
                    run_one(c, &ctx, config)
                } else {
                    CheckResult::skipped(c.id, c.anchor, format!("requires {}", failed.join(", ")))
                }
            })
            .collect();
        for (c, r) in here.iter().zip(results) {
            done.insert(c.id, r);
        }
    }
    Ok(selected.iter().map(|c| done.remove(c.id).expect("every selected check ran")).collect())
}
