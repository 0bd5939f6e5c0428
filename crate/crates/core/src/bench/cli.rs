//! Command-line front end: parameter validation, encode/decode round trips,
//! Monte Carlo runs, and solver benchmarking.
//!
//! Exit codes: 0 success, 1 parameter error, 2 I/O error. A plain-text
//! key=value config file can supply any long flag; explicit flags win.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use super::{
    run_montecarlo, run_scaling, OutputFormat, ScalingConfig, SimConfig, SimReport, SolverChoice,
};
use crate::channel::{interleaved_distance, interleaved_weight, sample_error, transmit};
use crate::code::{encode_hilrs, random_message, LocatorMode};
use crate::decode::{decoding_radius, gao_decode, gao_decode_strict, DecodeResult};
use crate::Error;

#[derive(Parser, Debug)]
#[command(
    name = "sumrank",
    version,
    about = "Horizontally interleaved linearized Reed-Solomon codes in the sum-rank metric"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check code parameters and print the derived code facts
    Validate(CodeArgs),
    /// One encode / corrupt / decode round trip with a trace
    Roundtrip(RoundtripArgs),
    /// Monte Carlo failure-rate estimation against the bound
    Montecarlo(MontecarloArgs),
    /// Runtime scaling of both solvers over an n-grid
    Bench(BenchArgs),
}

#[derive(Args, Debug, Clone)]
struct CodeArgs {
    /// Characteristic of the base field
    #[arg(long)]
    p: Option<u64>,
    /// Base extension degree (q = p^e)
    #[arg(long)]
    e: Option<usize>,
    /// Top extension degree
    #[arg(long)]
    m: Option<usize>,
    /// Frobenius power defining the automorphism (coprime to m)
    #[arg(long)]
    r: Option<usize>,
    /// Comma-separated length partition, e.g. 8,8
    #[arg(long)]
    parts: Option<String>,
    /// Component-code dimension
    #[arg(long)]
    k: Option<usize>,
    /// Interleaving order
    #[arg(long)]
    s: Option<usize>,
    /// Locator selection: deterministic or seeded
    #[arg(long)]
    locators: Option<String>,
    /// Seed for seeded locators
    #[arg(long)]
    locator_seed: Option<u64>,
    /// key=value config file; explicit flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RoundtripArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Error weight
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// gauss, mab, or both
    #[arg(long)]
    solver: Option<String>,
    /// Re-encode and check the distance before accepting
    #[arg(long)]
    strict: bool,
}

#[derive(Args, Debug)]
struct MontecarloArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Error weight (single value)
    #[arg(long)]
    t: Option<usize>,
    /// Comma-separated sweep of error weights (overrides --t)
    #[arg(long)]
    t_sweep: Option<String>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// gauss, mab, or both
    #[arg(long)]
    solver: Option<String>,
    /// Report output path
    #[arg(long)]
    out: Option<PathBuf>,
    /// json (summary) or csv (per-trial rows)
    #[arg(long)]
    format: Option<String>,
    /// Collect one CSV row per trial
    #[arg(long)]
    verbose_trials: bool,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Comma-separated component lengths to benchmark, e.g. 16,32,64
    #[arg(long)]
    grid: Option<String>,
    /// Code rate for deriving k at each grid point
    #[arg(long)]
    rate: Option<f64>,
    /// Instances per grid point and solver
    #[arg(long)]
    instances: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the table as CSV to this path
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses argv and runs the selected subcommand; returns the process exit
/// code.
pub fn cli_main(args: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Validate(args) => cmd_validate(args),
        Command::Roundtrip(args) => cmd_roundtrip(args),
        Command::Montecarlo(args) => cmd_montecarlo(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match outcome {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Io(_) => 2,
                _ => 1,
            }
        }
    }
}

struct ConfigMap(BTreeMap<String, String>);

impl ConfigMap {
    fn load(path: Option<&PathBuf>) -> Result<Self, Error> {
        let mut map = BTreeMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    return Err(Error::InvalidParameter(format!(
                        "config line {}: expected key=value, got '{line}'",
                        lineno + 1
                    )));
                };
                map.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(ConfigMap(map))
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, Error> {
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
                Error::InvalidParameter(format!("config key '{key}': cannot parse '{raw}'"))
            }),
        }
    }
}

fn parse_usize_list(raw: &str, what: &str) -> Result<Vec<usize>, Error> {
    raw.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidParameter(format!("bad {what} entry '{p}'")))
        })
        .collect()
}

struct ResolvedCode {
    p: u64,
    e: usize,
    m: usize,
    r: usize,
    parts: Vec<usize>,
    k: usize,
    s: usize,
    locators: LocatorMode,
}

fn resolve_code(args: &CodeArgs, cfg: &ConfigMap) -> Result<ResolvedCode, Error> {
    let require = |name: &str, v: Option<u64>| {
        v.ok_or_else(|| Error::InvalidParameter(format!("missing --{name}")))
    };
    let p = require("p", args.p.or(cfg.get("p")?))?;
    let e = args.e.or(cfg.get("e")?).unwrap_or(1);
    let m = args
        .m
        .or(cfg.get("m")?)
        .ok_or_else(|| Error::InvalidParameter("missing --m".into()))?;
    let r = args.r.or(cfg.get("r")?).unwrap_or(1);
    let parts_raw = args
        .parts
        .clone()
        .or(cfg.get::<String>("parts")?)
        .ok_or_else(|| Error::InvalidParameter("missing --parts".into()))?;
    let parts = parse_usize_list(&parts_raw, "partition")?;
    let k = args
        .k
        .or(cfg.get("k")?)
        .ok_or_else(|| Error::InvalidParameter("missing --k".into()))?;
    let s = args
        .s
        .or(cfg.get("s")?)
        .ok_or_else(|| Error::InvalidParameter("missing --s".into()))?;
    let locator_kind = args
        .locators
        .clone()
        .or(cfg.get::<String>("locators")?)
        .unwrap_or_else(|| "deterministic".to_string());
    let locator_seed = args.locator_seed.or(cfg.get("locator_seed")?).unwrap_or(0);
    let locators = match locator_kind.as_str() {
        "deterministic" => LocatorMode::Deterministic,
        "seeded" => LocatorMode::Seeded(locator_seed),
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown locator mode '{other}' (expected deterministic or seeded)"
            )))
        }
    };
    Ok(ResolvedCode { p, e, m, r, parts, k, s, locators })
}

fn cmd_validate(args: CodeArgs) -> Result<(), Error> {
    let cfg = ConfigMap::load(args.config.as_ref())?;
    let rc = resolve_code(&args, &cfg)?;
    let config = SimConfig {
        p: rc.p,
        e: rc.e,
        m: rc.m,
        r: rc.r,
        parts: rc.parts,
        k: rc.k,
        s: rc.s,
        t_values: vec![],
        trials: 0,
        seed: 0,
        solver: SolverChoice::Both,
        locators: rc.locators,
        output: None,
        format: OutputFormat::Json,
        verbose_trials: false,
    };
    let code = config.build_code()?;
    print!("{}", code.params_document());
    println!("n={}", code.n());
    println!("t_max={}", decoding_radius(code.n(), code.k(), code.s()));
    println!("fingerprint={}", super::code_fingerprint(&code));
    println!("ok");
    Ok(())
}

fn cmd_roundtrip(args: RoundtripArgs) -> Result<(), Error> {
    let cfg = ConfigMap::load(args.code.config.as_ref())?;
    let rc = resolve_code(&args.code, &cfg)?;
    let t = args
        .t
        .or(cfg.get("t")?)
        .ok_or_else(|| Error::InvalidParameter("missing --t".into()))?;
    let seed = args.seed.or(cfg.get("seed")?).unwrap_or(0);
    let solver = SolverChoice::parse(
        &args
            .solver
            .clone()
            .or(cfg.get::<String>("solver")?)
            .unwrap_or_else(|| "both".to_string()),
    )?;
    let config = SimConfig {
        p: rc.p,
        e: rc.e,
        m: rc.m,
        r: rc.r,
        parts: rc.parts,
        k: rc.k,
        s: rc.s,
        t_values: vec![t],
        trials: 1,
        seed,
        solver,
        locators: rc.locators,
        output: None,
        format: OutputFormat::Json,
        verbose_trials: false,
    };
    let code = config.build_code()?;
    let tower = code.tower().clone();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let msg = random_message(&code, &mut rng);
    let c = encode_hilrs(&code, &msg)?;
    let (e, decomp) = sample_error(&code, t, &mut rng)?;
    let y = transmit(&tower, &c, &e)?;

    println!("code: n={} k={} s={} t_max={}", code.n(), code.k(), code.s(),
        decoding_radius(code.n(), code.k(), code.s()));
    for (j, f) in msg.components().iter().enumerate() {
        println!("message f_{}: {}", j + 1, f.render(&tower));
    }
    println!(
        "error: weight {} (rank partition {:?})",
        interleaved_weight(&tower, &e, code.s(), code.partition())?,
        decomp.rank_partition()
    );
    for solver in config.solver.solvers() {
        let result = if args.strict {
            gao_decode_strict(&code, &y, solver)
        } else {
            gao_decode(&code, &y, solver)
        };
        match result {
            DecodeResult::Success(out) => {
                let cw = encode_hilrs(&code, &out)?;
                let dist = interleaved_distance(&tower, &y, &cw, code.s(), code.partition())?;
                let verdict = if out == msg { "matches the sent message" } else { "MISCORRECTION" };
                println!("{}: success, distance {} to y, {}", solver.name(), dist, verdict);
                for (j, f) in out.components().iter().enumerate() {
                    println!("  decoded f_{}: {}", j + 1, f.render(&tower));
                }
            }
            DecodeResult::Failure(reason) => {
                println!("{}: decoding failure ({})", solver.name(), reason.name());
            }
        }
    }
    Ok(())
}

fn cmd_montecarlo(args: MontecarloArgs) -> Result<(), Error> {
    let cfg = ConfigMap::load(args.code.config.as_ref())?;
    let rc = resolve_code(&args.code, &cfg)?;
    let t_values = if let Some(sweep) = args.t_sweep.clone().or(cfg.get::<String>("t_sweep")?) {
        parse_usize_list(&sweep, "t-sweep")?
    } else {
        vec![args
            .t
            .or(cfg.get("t")?)
            .ok_or_else(|| Error::InvalidParameter("missing --t (or --t-sweep)".into()))?]
    };
    let format = OutputFormat::parse(
        &args
            .format
            .clone()
            .or(cfg.get::<String>("format")?)
            .unwrap_or_else(|| "json".to_string()),
    )?;
    let config = SimConfig {
        p: rc.p,
        e: rc.e,
        m: rc.m,
        r: rc.r,
        parts: rc.parts,
        k: rc.k,
        s: rc.s,
        t_values,
        trials: args.trials.or(cfg.get("trials")?).unwrap_or(1000),
        seed: args.seed.or(cfg.get("seed")?).unwrap_or(0),
        solver: SolverChoice::parse(
            &args
                .solver
                .clone()
                .or(cfg.get::<String>("solver")?)
                .unwrap_or_else(|| "both".to_string()),
        )?,
        locators: rc.locators,
        output: args.out.clone(),
        format,
        // per-trial rows are needed whenever the CSV schema is requested
        verbose_trials: args.verbose_trials || format == OutputFormat::Csv,
    };
    let report = run_montecarlo(&config)?;
    print_report(&report);
    if let Some(path) = &config.output {
        let payload = match config.format {
            OutputFormat::Json => report.to_json(),
            OutputFormat::Csv => report.trials_csv(),
        };
        std::fs::write(path, payload)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn print_report(report: &SimReport) {
    println!("fingerprint: {}", report.code_fingerprint);
    println!("seed: {}", report.seed);
    for e in &report.entries {
        let rate = e
            .observed_rate
            .map_or("n/a".to_string(), |r| format!("{r:.4e}"));
        println!(
            "t={} solver={}: trials={} failures={} (rate {}) miscorrections={}",
            e.t, e.solver, e.trials, e.failures_total, rate, e.miscorrections
        );
        if !e.failures.is_empty() {
            let by: Vec<String> =
                e.failures.iter().map(|(k, v)| format!("{k}={v}")).collect();
            println!("  failure reasons: {}", by.join(", "));
        }
        if let (Some(b35), Some(bk)) = (e.bound_kappa35, e.bound_exact_kappa) {
            println!("  bound (kappa<3.5): {b35:.4e}   bound (exact kappa): {bk:.4e}");
        }
        if let Some(reference) = e.reference_rate {
            println!("  reference observed rate at these parameters: {reference:.3e}");
        }
        if let (Some(mean), Some(median)) = (e.mean_decode_ms, e.median_decode_ms) {
            println!("  decode time: mean {mean:.3} ms, median {median:.3} ms");
        }
    }
    if let Some(wall) = report.wall_clock_ms {
        println!("wall clock: {wall:.1} ms");
    }
}

fn cmd_bench(args: BenchArgs) -> Result<(), Error> {
    let cfg = ConfigMap::load(args.code.config.as_ref())?;
    let p = args
        .code
        .p
        .or(cfg.get("p")?)
        .ok_or_else(|| Error::InvalidParameter("missing --p".into()))?;
    let e = args.code.e.or(cfg.get("e")?).unwrap_or(1);
    let m = args
        .code
        .m
        .or(cfg.get("m")?)
        .ok_or_else(|| Error::InvalidParameter("missing --m".into()))?;
    let r = args.code.r.or(cfg.get("r")?).unwrap_or(1);
    let s = args
        .code
        .s
        .or(cfg.get("s")?)
        .ok_or_else(|| Error::InvalidParameter("missing --s".into()))?;
    let grid = match args.grid.clone().or(cfg.get::<String>("grid")?) {
        Some(g) if !g.trim().is_empty() => parse_usize_list(&g, "grid")?,
        _ => Vec::new(),
    };
    let config = ScalingConfig {
        p,
        e,
        m,
        r,
        s,
        rate: args.rate.or(cfg.get("rate")?).unwrap_or(0.25),
        grid,
        instances: args.instances.or(cfg.get("instances")?).unwrap_or(20),
        seed: args.seed.or(cfg.get("seed")?).unwrap_or(0),
    };
    let table = run_scaling(&config)?;
    print!("{}", table.render());
    if let Some(path) = &args.out {
        let mut csv = String::from("n,solver,instances,median_ms,mean_ms\n");
        for row in &table.rows {
            csv.push_str(&format!(
                "{},{},{},{:.6},{:.6}\n",
                row.n, row.solver, row.instances, row.median_ms, row.mean_ms
            ));
        }
        std::fs::write(path, csv)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
