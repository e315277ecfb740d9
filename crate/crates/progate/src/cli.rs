//! Command-line front end: reproducible, scriptable runs of the simulator
//! and analysis routines with JSON or CSV output.
//!
//! Every command is deterministic for a fixed argument list: Monte Carlo
//! trials draw their seeds from (master seed, trial index), so identical
//! invocations produce byte-identical payloads apart from the reported
//! wall-clock duration.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation error, 3 capacity
//! error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind as ClapErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{
    bound_product, default_density_grid, exact_success_probability, expected_program_length,
    program_density_average, retrieval_bound, single_qubit_max_avg, single_qubit_p_alpha,
};
use crate::error::Error;
use crate::protocol::{
    cascade, encode_program, run_adaptive, run_once, Angle, DEFAULT_MAX_ATTEMPTS,
};
use crate::remote::{expected_resources, haar_random_su2, simulate_remote_with_rng};
use crate::statevec::StateVector;

/// Version stamp of the JSON payload layout; see docs/cli-report.schema.json.
pub const SCHEMA_VERSION: u64 = 1;

/// Terms used whenever the average program length series is evaluated.
const AVG_LENGTH_TERMS: usize = 60;

/// Points in the `bound` command's plot-ready sweep table.
const BOUND_SWEEP_POINTS: usize = 512;

/// Largest program register the CLI accepts.
const MAX_CLI_QUBITS: usize = 20;

#[derive(Debug)]
pub enum CliError {
    /// Bad command line; exits with code 1.
    Usage(String),
    /// Library-level failure; capacity errors exit 3, the rest exit 2.
    Library(Error),
    /// Failed to write the payload; exits with code 2.
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Library(err) => write!(f, "{err}"),
            CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Library(err)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Library(Error::Capacity { .. }) => 3,
            CliError::Library(_) => 2,
            CliError::Io(_) => 2,
        }
    }
}

/// The eight runnable commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Simulate,
    Exact,
    Adaptive,
    Optimal1q,
    Bound,
    Entropy,
    Remote,
    AvgLength,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Simulate => "simulate",
            CommandKind::Exact => "exact",
            CommandKind::Adaptive => "adaptive",
            CommandKind::Optimal1q => "optimal1q",
            CommandKind::Bound => "bound",
            CommandKind::Entropy => "entropy",
            CommandKind::Remote => "remote",
            CommandKind::AvgLength => "avg-length",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl OutputFormat {
    fn name(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        }
    }
}

/// A fully validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub alpha: Angle,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub data_theta: f64,
    pub data_phi: f64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    /// The data qubit cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩.
    pub fn data_state(&self) -> StateVector {
        StateVector::from_bloch(self.data_theta, self.data_phi)
    }
}

#[derive(Parser)]
#[command(
    name = "progate",
    version,
    about = "Stochastic programmable gate for z-axis rotations: simulation, exact analysis, bounds, and remote-control resource accounting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo estimate of the retrieval success rate
    Simulate(CommonArgs),
    /// Exact branch-enumerated success probability with a per-branch table
    Exact(CommonArgs),
    /// Adaptive retry statistics: attempts until the stored rotation lands
    Adaptive(CommonArgs),
    /// Optimal average success probability of any single-qubit storage gate
    Optimal1q(CommonArgs),
    /// Retrieval bound: sweep of the unitarity product and its implied ceiling
    Bound(CommonArgs),
    /// Deviation of the angle-averaged program ensemble from maximal mixedness
    Entropy(CommonArgs),
    /// Remote SU(2) execution: entanglement and communication costs
    Remote(CommonArgs),
    /// Average program length of the adaptive protocol
    #[command(name = "avg-length")]
    AvgLength(CommonArgs),
}

impl Command {
    fn split(self) -> (CommandKind, CommonArgs) {
        match self {
            Command::Simulate(args) => (CommandKind::Simulate, args),
            Command::Exact(args) => (CommandKind::Exact, args),
            Command::Adaptive(args) => (CommandKind::Adaptive, args),
            Command::Optimal1q(args) => (CommandKind::Optimal1q, args),
            Command::Bound(args) => (CommandKind::Bound, args),
            Command::Entropy(args) => (CommandKind::Entropy, args),
            Command::Remote(args) => (CommandKind::Remote, args),
            Command::AvgLength(args) => (CommandKind::AvgLength, args),
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Stored rotation angle in radians (canonicalized to [0, 2π))
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
    alpha: f64,

    /// Program register size in qubits
    #[arg(long, default_value_t = 1)]
    n: usize,

    /// Number of Monte Carlo trials
    #[arg(long, default_value_t = 10_000)]
    trials: usize,

    /// Master seed; trial t draws from the derived seed (seed, t)
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Bloch polar angle θ of the data qubit
    #[arg(long, default_value_t = 0.0)]
    data_theta: f64,

    /// Bloch azimuthal angle φ of the data qubit
    #[arg(long, default_value_t = 0.0)]
    data_phi: f64,

    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Write the payload to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses and validates a full argument list (including the program name).
pub fn parse_args<I, S>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|err| CliError::Usage(err.to_string()))?;
    let (command, args) = cli.command.split();
    if args.n == 0 || args.n > MAX_CLI_QUBITS {
        return Err(CliError::Usage(format!(
            "--n must be between 1 and {MAX_CLI_QUBITS}, got {}",
            args.n
        )));
    }
    if args.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    for (flag, value) in [
        ("--alpha", args.alpha),
        ("--data-theta", args.data_theta),
        ("--data-phi", args.data_phi),
    ] {
        if !value.is_finite() {
            return Err(CliError::Usage(format!("{flag} must be finite")));
        }
    }
    Ok(RunConfig {
        command,
        alpha: Angle::new(args.alpha),
        n: args.n,
        trials: args.trials,
        seed: args.seed,
        data_theta: args.data_theta,
        data_phi: args.data_phi,
        format: args.format,
        out: args.out,
    })
}

/// Echo of the configuration inside every payload.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub alpha: f64,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub data_theta: f64,
    pub data_phi: f64,
    pub format: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchRow {
    pub bits: String,
    pub probability: f64,
    pub success: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub delta: f64,
    pub value: f64,
}

/// Structured result of one command. Scalars live in `results` (sorted by
/// key); `branches` and `sweep` are the per-branch and plot-ready tables
/// of the commands that produce them.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema_version: u64,
    pub command: &'static str,
    pub config: ConfigEcho,
    pub results: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branches: Option<Vec<BranchRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<SweepRow>>,
    pub duration_seconds: f64,
}

/// Deterministic per-trial seed: splitmix64 finalizer over the master seed
/// and the trial index, so trials can run in any order (or in parallel)
/// without changing the aggregate.
pub fn derive_trial_seed(master: u64, trial: u64) -> u64 {
    let mut z = master ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs the configured command and assembles its report.
pub fn execute(config: &RunConfig) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let mut results = BTreeMap::new();
    let mut branches = None;
    let mut sweep = None;

    match config.command {
        CommandKind::Simulate => {
            let data = config.data_state();
            let mut successes = 0usize;
            for trial in 0..config.trials {
                let seed = derive_trial_seed(config.seed, trial as u64);
                let outcome = run_once(&data, config.alpha, config.n, seed)?;
                if outcome.success {
                    successes += 1;
                }
            }
            let rate = successes as f64 / config.trials as f64;
            let se = (rate * (1.0 - rate) / config.trials as f64).sqrt();
            results.insert("successes".into(), successes as f64);
            results.insert("success_rate".into(), rate);
            results.insert("standard_error".into(), se);
        }
        CommandKind::Exact => {
            let probability = exact_success_probability(config.alpha, config.n)?;
            results.insert("success_probability".into(), probability);
            results.insert("failure_probability".into(), 1.0 - probability);
            let joint = cascade(
                &config.data_state(),
                &encode_program(config.alpha, config.n)?,
            )?;
            let qubits: Vec<usize> = (1..=config.n).collect();
            let rows = joint
                .branch_probabilities(&qubits)?
                .into_iter()
                .map(|(bits, prob)| BranchRow {
                    success: !bits.iter().all(|&b| b == 1),
                    bits: bits.iter().map(|b| char::from(b'0' + b)).collect(),
                    probability: prob,
                })
                .collect();
            branches = Some(rows);
        }
        CommandKind::Adaptive => {
            let data = config.data_state();
            let mut attempt_counts = Vec::with_capacity(config.trials);
            let mut succeeded = 0usize;
            for trial in 0..config.trials {
                let seed = derive_trial_seed(config.seed, trial as u64);
                let stats = run_adaptive(&data, config.alpha, seed, DEFAULT_MAX_ATTEMPTS)?;
                attempt_counts.push(stats.attempts as f64);
                if stats.succeeded {
                    succeeded += 1;
                }
            }
            let mean = attempt_counts.iter().sum::<f64>() / config.trials as f64;
            let variance = attempt_counts
                .iter()
                .map(|a| (a - mean) * (a - mean))
                .sum::<f64>()
                / config.trials as f64;
            let se = (variance / config.trials as f64).sqrt();
            results.insert("mean_attempts".into(), mean);
            results.insert("standard_error".into(), se);
            results.insert(
                "expected_attempts".into(),
                expected_program_length(AVG_LENGTH_TERMS),
            );
            results.insert("runs_succeeded".into(), succeeded as f64);
        }
        CommandKind::Optimal1q => {
            let (params, value) = single_qubit_max_avg();
            results.insert("max_avg_probability".into(), value);
            results.insert("p0".into(), params.p0);
            results.insert("p_pi".into(), params.p_pi);
            results.insert("overlap_re".into(), params.overlap_re);
            // Constancy of p_α at the optimum over a 256-point grid.
            let mut deviation: f64 = 0.0;
            for k in 0..256 {
                let alpha = Angle::new(std::f64::consts::TAU * k as f64 / 256.0);
                let p = single_qubit_p_alpha(alpha, &params)?;
                deviation = deviation.max((p - value).abs());
            }
            results.insert("p_alpha_max_deviation".into(), deviation);
        }
        CommandKind::Bound => {
            let ceiling = retrieval_bound(config.n)?;
            results.insert("retrieval_bound".into(), ceiling);
            results.insert("max_bound_product".into(), 1.0 - ceiling);
            if config.n <= crate::analysis::MAX_EXACT_QUBITS {
                let achieved = exact_success_probability(config.alpha, config.n)?;
                results.insert("exact_success_probability".into(), achieved);
                results.insert("bound_minus_exact".into(), ceiling - achieved);
            }
            let mut rows = Vec::with_capacity(BOUND_SWEEP_POINTS + 1);
            for k in 0..=BOUND_SWEEP_POINTS {
                let delta = std::f64::consts::TAU * k as f64 / BOUND_SWEEP_POINTS as f64;
                rows.push(SweepRow {
                    delta,
                    value: bound_product(delta, config.n)?,
                });
            }
            sweep = Some(rows);
        }
        CommandKind::Entropy => {
            let grid_points = default_density_grid(config.n);
            let rho = program_density_average(config.n, grid_points)?;
            results.insert(
                "max_deviation_from_maximally_mixed".into(),
                rho.max_deviation_from_maximally_mixed(),
            );
            results.insert("dimension".into(), rho.dim() as f64);
            results.insert("grid_points".into(), grid_points as f64);
            results.insert("trace_real".into(), rho.trace().re);
            results.insert("trace_imag".into(), rho.trace().im);
        }
        CommandKind::Remote => {
            let data = config.data_state();
            let (expected_ebits, expected_cbits) = expected_resources();
            let mut total_ebits = 0usize;
            let mut total_cbits = 0usize;
            let mut ebit_counts = Vec::with_capacity(config.trials);
            let mut succeeded = 0usize;
            let mut min_fidelity = f64::INFINITY;
            for trial in 0..config.trials {
                let seed = derive_trial_seed(config.seed, trial as u64);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                // A fresh Haar-random target per trial, then the run itself,
                // both drawn from the same per-trial stream.
                let target = haar_random_su2(&mut rng);
                let outcome = simulate_remote_with_rng(&target, &data, &mut rng)?;
                total_ebits += outcome.tally.ebits;
                total_cbits += outcome.tally.cbits;
                ebit_counts.push(outcome.tally.ebits as f64);
                if outcome.succeeded {
                    succeeded += 1;
                    let expect = target.apply_to([data.amplitude(0), data.amplitude(1)]);
                    let expect_state = StateVector::single_qubit(expect[0], expect[1])?;
                    let fid = outcome.final_data.fidelity_up_to_phase(&expect_state)?;
                    min_fidelity = min_fidelity.min(fid);
                }
            }
            let mean_ebits = total_ebits as f64 / config.trials as f64;
            let variance = ebit_counts
                .iter()
                .map(|e| (e - mean_ebits) * (e - mean_ebits))
                .sum::<f64>()
                / config.trials as f64;
            results.insert("mean_ebits".into(), mean_ebits);
            results.insert(
                "mean_cbits".into(),
                total_cbits as f64 / config.trials as f64,
            );
            results.insert(
                "standard_error".into(),
                (variance / config.trials as f64).sqrt(),
            );
            results.insert("expected_ebits".into(), expected_ebits);
            results.insert("expected_cbits".into(), expected_cbits);
            results.insert("runs_succeeded".into(), succeeded as f64);
            results.insert("min_success_fidelity".into(), min_fidelity);
        }
        CommandKind::AvgLength => {
            results.insert(
                "expected_length".into(),
                expected_program_length(AVG_LENGTH_TERMS),
            );
            results.insert("terms".into(), AVG_LENGTH_TERMS as f64);
        }
    }

    Ok(RunReport {
        schema_version: SCHEMA_VERSION,
        command: config.command.name(),
        config: ConfigEcho {
            alpha: config.alpha.radians(),
            n: config.n,
            trials: config.trials,
            seed: config.seed,
            data_theta: config.data_theta,
            data_phi: config.data_phi,
            format: config.format.name(),
        },
        results,
        branches,
        sweep,
        duration_seconds: started.elapsed().as_secs_f64(),
    })
}

/// Renders a report as JSON (stable key order) or CSV (header row plus
/// data rows; floats use the shortest representation that round-trips).
pub fn render(report: &RunReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut text =
                serde_json::to_string_pretty(report).expect("report serialization cannot fail");
            text.push('\n');
            text
        }
        OutputFormat::Csv => render_csv(report),
    }
}

fn render_csv(report: &RunReport) -> String {
    let mut out = String::new();
    match report.command {
        "exact" => {
            out.push_str("n,alpha,success_probability\n");
            out.push_str(&format!(
                "{},{},{}\n",
                report.config.n, report.config.alpha, report.results["success_probability"]
            ));
        }
        "simulate" => {
            out.push_str("n,alpha,trials,seed,success_rate,standard_error\n");
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                report.config.n,
                report.config.alpha,
                report.config.trials,
                report.config.seed,
                report.results["success_rate"],
                report.results["standard_error"]
            ));
        }
        "adaptive" => {
            out.push_str("alpha,trials,seed,mean_attempts,standard_error,expected_attempts\n");
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                report.config.alpha,
                report.config.trials,
                report.config.seed,
                report.results["mean_attempts"],
                report.results["standard_error"],
                report.results["expected_attempts"]
            ));
        }
        "optimal1q" => {
            out.push_str("p0,p_pi,max_avg_probability\n");
            out.push_str(&format!(
                "{},{},{}\n",
                report.results["p0"], report.results["p_pi"], report.results["max_avg_probability"]
            ));
        }
        "bound" => {
            out.push_str("delta,value\n");
            if let Some(rows) = &report.sweep {
                for row in rows {
                    out.push_str(&format!("{},{}\n", row.delta, row.value));
                }
            }
        }
        "entropy" => {
            out.push_str("n,grid_points,max_deviation\n");
            out.push_str(&format!(
                "{},{},{}\n",
                report.config.n,
                report.results["grid_points"],
                report.results["max_deviation_from_maximally_mixed"]
            ));
        }
        "remote" => {
            out.push_str("trials,seed,mean_ebits,mean_cbits,expected_ebits,expected_cbits\n");
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                report.config.trials,
                report.config.seed,
                report.results["mean_ebits"],
                report.results["mean_cbits"],
                report.results["expected_ebits"],
                report.results["expected_cbits"]
            ));
        }
        "avg-length" => {
            out.push_str("terms,expected_length\n");
            out.push_str(&format!(
                "{},{}\n",
                report.results["terms"], report.results["expected_length"]
            ));
        }
        other => {
            out.push_str(&format!("command\n{other}\n"));
        }
    }
    out
}

/// Full CLI entry point: parse, execute, render, and deliver. Returns the
/// process exit code. Help and version requests print to stdout and exit 0;
/// nothing is written to the output sink on any error path.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    if let Err(err) = Cli::try_parse_from(argv.iter()) {
        match err.kind() {
            ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion => {
                print!("{err}");
                return 0;
            }
            _ => {}
        }
    }
    let config = match parse_args(argv) {
        Ok(config) => config,
        Err(err) => {
            eprintln!("{err}");
            return err.exit_code();
        }
    };
    let report = match execute(&config) {
        Ok(report) => report,
        Err(err) => {
            eprintln!("error: {err}");
            return err.exit_code();
        }
    };
    let payload = render(&report, config.format);
    match &config.out {
        Some(path) => {
            if let Err(err) = std::fs::write(path, payload) {
                eprintln!("error: cannot write {}: {err}", path.display());
                return CliError::Io(err.to_string()).exit_code();
            }
        }
        None => print!("{payload}"),
    }
    0
}
