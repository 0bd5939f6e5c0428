//! Monte Carlo failure-rate estimation, solver benchmarking, and report
//! emission. The CLI front end lives in [`cli`].
//!
//! Determinism contract: the statistical content of a report (trial counts,
//! outcome tallies, rates, bounds, fingerprint) is a pure function of the
//! configuration and seed, reproduced bit for bit by
//! [`SimReport::deterministic_json`] regardless of the worker-pool size.
//! Decode timings and wall-clock totals are measured and therefore live
//! outside that contract.

pub mod cli;

pub use cli::cli_main;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::channel::{sample_error, transmit};
use crate::code::{build_hilrs, encode_hilrs, random_message, HilrsCode, LocatorMode};
use crate::decode::{
    decoding_radius, failure_bound, gao_decode, BoundMode, DecodeResult, Solver,
};
use crate::ff::{make_tower, LengthPartition};
use crate::Error;

/// Observed failure rate of an independent simulation run at the canonical
/// parameter set (q = 3, m = 8, parts (8, 8), k = 4, s = 3, t = 9); reports
/// at those parameters print it next to the measured rate.
pub const REFERENCE_RATE: f64 = 1.569e-4;

/// Which solver(s) a simulation runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverChoice {
    Gauss,
    Mab,
    Both,
}

impl SolverChoice {
    pub fn solvers(&self) -> Vec<Solver> {
        match self {
            SolverChoice::Gauss => vec![Solver::Gauss],
            SolverChoice::Mab => vec![Solver::Mab],
            SolverChoice::Both => vec![Solver::Gauss, Solver::Mab],
        }
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        match s {
            "gauss" => Ok(SolverChoice::Gauss),
            "mab" => Ok(SolverChoice::Mab),
            "both" => Ok(SolverChoice::Both),
            other => Err(Error::InvalidParameter(format!(
                "unknown solver '{other}' (expected gauss, mab, or both)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::InvalidParameter(format!(
                "unknown format '{other}' (expected json or csv)"
            ))),
        }
    }
}

/// Full simulation configuration. Code-level invariants are re-validated by
/// [`SimConfig::build_code`] before any trial runs.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub p: u64,
    pub e: usize,
    pub m: usize,
    pub r: usize,
    pub parts: Vec<usize>,
    pub k: usize,
    pub s: usize,
    pub t_values: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    pub solver: SolverChoice,
    pub locators: LocatorMode,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
    pub verbose_trials: bool,
}

impl SimConfig {
    pub fn build_code(&self) -> Result<HilrsCode, Error> {
        let tower = Arc::new(make_tower(self.p, self.e, self.m, self.r)?);
        let partition = LengthPartition::new(self.parts.clone())?;
        let code = build_hilrs(tower, partition, self.k, self.s, self.locators)?;
        for &t in &self.t_values {
            let caps: usize = code
                .partition()
                .parts()
                .iter()
                .map(|&n_i| (self.s * n_i).min(self.m))
                .sum();
            if t > caps {
                return Err(Error::WeightOutOfRange { t, max: caps });
            }
        }
        Ok(code)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    SuccessCorrect,
    Miscorrection,
    DeclaredFailure(crate::decode::FailureReason),
}

/// One row of the per-trial CSV.
#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub t: usize,
    pub solver: String,
    pub outcome: String,
    pub reason: String,
    pub decode_ms: f64,
}

/// Aggregated results for one (t, solver) pair.
#[derive(Debug, Clone, Serialize)]
pub struct SimEntry {
    pub t: usize,
    pub solver: String,
    pub trials: u64,
    pub success_correct: u64,
    pub miscorrections: u64,
    pub failures: BTreeMap<String, u64>,
    pub failures_total: u64,
    pub observed_rate: Option<f64>,
    pub bound_kappa35: Option<f64>,
    pub bound_exact_kappa: Option<f64>,
    pub reference_rate: Option<f64>,
    pub mean_decode_ms: Option<f64>,
    pub median_decode_ms: Option<f64>,
}

/// Simulation report. The JSON schema is versioned by the `schema` field.
#[derive(Debug, Clone, Serialize)]
pub struct SimReport {
    pub schema: u32,
    pub seed: u64,
    pub code_fingerprint: String,
    pub entries: Vec<SimEntry>,
    pub wall_clock_ms: Option<f64>,
    #[serde(skip)]
    pub trial_records: Vec<TrialRecord>,
}

impl SimReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The deterministic portion of the report: timing fields stripped.
    /// Byte-identical across runs with the same configuration and seed.
    pub fn deterministic_json(&self) -> String {
        let mut stripped = self.clone();
        stripped.wall_clock_ms = None;
        for e in &mut stripped.entries {
            e.mean_decode_ms = None;
            e.median_decode_ms = None;
        }
        stripped.trial_records.clear();
        serde_json::to_string_pretty(&stripped).expect("report serializes")
    }

    /// Per-trial rows as CSV (header included).
    pub fn trials_csv(&self) -> String {
        let mut out = String::from("trial_index,t,solver,outcome,reason,decode_ms\n");
        for r in &self.trial_records {
            out.push_str(&format!(
                "{},{},{},{},{},{:.6}\n",
                r.trial_index, r.t, r.solver, r.outcome, r.reason, r.decode_ms
            ));
        }
        out
    }
}

/// Hex SHA-256 of the serialized code parameters.
pub fn code_fingerprint(code: &HilrsCode) -> String {
    let mut hasher = Sha256::new();
    hasher.update(code.params_document().as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn thread_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("SUMRANK_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                builder = builder.num_threads(n);
            }
        }
    }
    builder.build().expect("worker pool")
}

/// Derived per-trial stream: the master seed keys the generator, the trial
/// index selects the stream, and t decorrelates sweeps.
fn trial_rng(seed: u64, t: usize, trial: u64) -> ChaCha12Rng {
    let mut rng =
        ChaCha12Rng::seed_from_u64(seed ^ (t as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(trial);
    rng
}

fn run_trial(code: &HilrsCode, seed: u64, t: usize, trial: u64, solver: Solver) -> (Outcome, f64) {
    let mut rng = trial_rng(seed, t, trial);
    let tower = code.tower();
    let msg = random_message(code, &mut rng);
    let c = encode_hilrs(code, &msg).expect("sampled message fits the degree bound");
    let (e, _) = sample_error(code, t, &mut rng).expect("t validated for this code");
    let y = transmit(tower, &c, &e).expect("lengths agree");
    let start = Instant::now();
    let result = gao_decode(code, &y, solver);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let outcome = match result {
        DecodeResult::Success(out) => {
            if out == msg {
                Outcome::SuccessCorrect
            } else {
                Outcome::Miscorrection
            }
        }
        DecodeResult::Failure(reason) => Outcome::DeclaredFailure(reason),
    };
    (outcome, elapsed_ms)
}

/// Runs the Monte Carlo loop: per trial, sample a uniform message, encode,
/// corrupt with a uniform weight-t error, decode, classify. Deterministic for
/// a given (config, seed) regardless of parallelism.
pub fn run_montecarlo(config: &SimConfig) -> Result<SimReport, Error> {
    let code = config.build_code()?;
    let fingerprint = code_fingerprint(&code);
    let pool = thread_pool();
    let wall_start = Instant::now();
    let mut entries = Vec::new();
    let mut trial_records = Vec::new();

    for &t in &config.t_values {
        for solver in config.solver.solvers() {
            let results: Vec<(Outcome, f64)> = pool.install(|| {
                (0..config.trials)
                    .into_par_iter()
                    .map(|trial| run_trial(&code, config.seed, t, trial, solver))
                    .collect()
            });
            let mut success = 0u64;
            let mut miscorrections = 0u64;
            let mut failures: BTreeMap<String, u64> = BTreeMap::new();
            let mut times: Vec<f64> = Vec::with_capacity(results.len());
            for (idx, (outcome, ms)) in results.iter().enumerate() {
                times.push(*ms);
                let (oname, rname) = match outcome {
                    Outcome::SuccessCorrect => {
                        success += 1;
                        ("success", String::new())
                    }
                    Outcome::Miscorrection => {
                        miscorrections += 1;
                        ("miscorrection", String::new())
                    }
                    Outcome::DeclaredFailure(reason) => {
                        *failures.entry(reason.name().to_string()).or_default() += 1;
                        ("failure", reason.name().to_string())
                    }
                };
                if config.verbose_trials {
                    trial_records.push(TrialRecord {
                        trial_index: idx as u64,
                        t,
                        solver: solver.name().to_string(),
                        outcome: oname.to_string(),
                        reason: rname,
                        decode_ms: *ms,
                    });
                }
            }
            let failures_total: u64 = failures.values().sum();
            let observed_rate = if config.trials > 0 {
                Some(failures_total as f64 / config.trials as f64)
            } else {
                None
            };
            let t_max = decoding_radius(code.n(), code.k(), code.s());
            let (b35, bk) = if t <= t_max {
                (
                    Some(failure_bound(&code, t, BoundMode::Kappa35)?),
                    Some(failure_bound(&code, t, BoundMode::ExactKappa)?),
                )
            } else {
                (None, None)
            };
            let reference_rate = reference_rate_for(config, t);
            let (mean, median) = if times.is_empty() {
                (None, None)
            } else {
                let mean = times.iter().sum::<f64>() / times.len() as f64;
                (Some(mean), median_of(&times))
            };
            entries.push(SimEntry {
                t,
                solver: solver.name().to_string(),
                trials: config.trials,
                success_correct: success,
                miscorrections,
                failures,
                failures_total,
                observed_rate,
                bound_kappa35: b35,
                bound_exact_kappa: bk,
                reference_rate,
                mean_decode_ms: mean,
                median_decode_ms: median,
            });
        }
    }
    Ok(SimReport {
        schema: 1,
        seed: config.seed,
        code_fingerprint: fingerprint,
        entries,
        wall_clock_ms: Some(wall_start.elapsed().as_secs_f64() * 1e3),
        trial_records,
    })
}

/// The published reference rate applies only to the canonical parameter set.
fn reference_rate_for(config: &SimConfig, t: usize) -> Option<f64> {
    (config.p == 3
        && config.e == 1
        && config.m == 8
        && config.r == 1
        && config.parts == [8, 8]
        && config.k == 4
        && config.s == 3
        && t == 9)
        .then_some(REFERENCE_RATE)
}

/// Scaling-benchmark configuration: decode timings over an n-grid.
#[derive(Debug, Clone)]
pub struct ScalingConfig {
    pub p: u64,
    pub e: usize,
    pub m: usize,
    pub r: usize,
    pub s: usize,
    /// Code rate used to derive k = max(1, round(rate * n)).
    pub rate: f64,
    pub grid: Vec<usize>,
    pub instances: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingRow {
    pub n: usize,
    pub solver: String,
    pub instances: u64,
    pub median_ms: f64,
    pub mean_ms: f64,
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct ScalingTable {
    pub rows: Vec<ScalingRow>,
    /// (n, median gauss time / median mab time)
    pub ratios: Vec<(usize, f64)>,
    /// Cross-solver output disagreements (must stay zero).
    pub mismatches: u64,
}

impl ScalingTable {
    pub fn render(&self) -> String {
        let mut out = String::from("n       solver  instances  median_ms   mean_ms\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{:<7} {:<7} {:<10} {:<11.3} {:<.3}\n",
                r.n, r.solver, r.instances, r.median_ms, r.mean_ms
            ));
        }
        for (n, ratio) in &self.ratios {
            out.push_str(&format!("n = {n}: gauss/mab median ratio = {ratio:.3}\n"));
        }
        out.push_str(&format!("cross-solver mismatches: {}\n", self.mismatches));
        out
    }
}

/// Times both solvers over the n-grid: each grid point splits n into blocks
/// of at most m, derives k from the rate, and decodes `instances` seeded
/// channel instances per solver, cross-checking that outputs agree.
pub fn run_scaling(config: &ScalingConfig) -> Result<ScalingTable, Error> {
    let mut table = ScalingTable::default();
    for &n in &config.grid {
        let mut parts = vec![config.m; n / config.m];
        if n % config.m != 0 {
            parts.push(n % config.m);
        }
        let k = ((config.rate * n as f64).round() as usize).clamp(1, n.saturating_sub(1).max(1));
        let tower = Arc::new(make_tower(config.p, config.e, config.m, config.r)?);
        let partition = LengthPartition::new(parts)?;
        let code = build_hilrs(tower, partition, k, config.s, LocatorMode::Deterministic)?;
        let t = decoding_radius(code.n(), code.k(), code.s());
        let mut times: BTreeMap<&'static str, Vec<f64>> = BTreeMap::new();
        for trial in 0..config.instances {
            let mut rng = trial_rng(config.seed, n, trial);
            let msg = random_message(&code, &mut rng);
            let c = encode_hilrs(&code, &msg)?;
            let (e, _) = sample_error(&code, t, &mut rng)?;
            let y = transmit(code.tower(), &c, &e)?;
            let mut outputs = Vec::new();
            for solver in [Solver::Gauss, Solver::Mab] {
                let start = Instant::now();
                let res = gao_decode(&code, &y, solver);
                let ms = start.elapsed().as_secs_f64() * 1e3;
                times.entry(solver.name()).or_default().push(ms);
                outputs.push(res);
            }
            if outputs[0] != outputs[1] {
                table.mismatches += 1;
            }
        }
        for (solver, ts) in &times {
            table.rows.push(ScalingRow {
                n,
                solver: solver.to_string(),
                instances: config.instances,
                median_ms: median_of(ts).unwrap_or(0.0),
                mean_ms: if ts.is_empty() {
                    0.0
                } else {
                    ts.iter().sum::<f64>() / ts.len() as f64
                },
            });
        }
        let g = times.get("gauss").and_then(|v| median_of(v));
        let mm = times.get("mab").and_then(|v| median_of(v));
        if let (Some(g), Some(mm)) = (g, mm) {
            if mm > 0.0 {
                table.ratios.push((n, g / mm));
            }
        }
    }
    Ok(table)
}

fn median_of(v: &[f64]) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mid = sorted.len() / 2;
    Some(if sorted.len() % 2 == 0 {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    } else {
        sorted[mid]
    })
}
