//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flowlag_core::generate::{generate, GeneratorParams};
use flowlag_core::model::{validate_schedule, Criterion, Instance, Time};
use flowlag_core::timing::{permutation_value, time_permutation};
use flowlag_core::Error;
use serde::Serialize;

use crate::bench::{run_bench, write_csv};
use crate::error::{exit, CliError};
use crate::format::{parse_instance, parse_schedule, serialize_instance};
use crate::gantt::render_gantt;
use crate::solve::{run_method, Method, SolveSettings};

#[derive(Debug, Parser)]
#[command(name = "flowlag", version, about = "Flowshop scheduling with minimal and maximal time lags")]
pub struct Cli {
    /// Log to stderr (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a random instance file.
    Generate(GenerateArgs),
    /// Solve an instance and print the result as JSON.
    Solve(SolveArgs),
    /// Time a permutation and print its objective value.
    Evaluate(EvaluateArgs),
    /// Check a schedule file against an instance.
    Check(ScheduleArgs),
    /// Run methods over a directory of instances and print CSV.
    Bench(BenchArgs),
    /// Render a schedule as an SVG Gantt chart.
    Gantt(ScheduleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Cmax,
    Lmax,
    Total,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::Cmax => Criterion::Makespan,
            CriterionArg::Lmax => Criterion::MaxLateness,
            CriterionArg::Total => Criterion::TotalCompletion,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Bnb,
    Neh,
    BrutePerm,
    BruteGeneral,
    F2Restricted,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Bnb => Method::Bnb,
            MethodArg::Neh => Method::Neh,
            MethodArg::BrutePerm => Method::BrutePerm,
            MethodArg::BruteGeneral => Method::BruteGeneral,
            MethodArg::F2Restricted => Method::F2Restricted,
        }
    }
}

/// Parses `lo:hi` (inclusive).
fn parse_range(s: &str) -> Result<(Time, Time), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {:?}", s))?;
    let lo: Time = lo.trim().parse().map_err(|e| format!("{:?}: {}", lo, e))?;
    let hi: Time = hi.trim().parse().map_err(|e| format!("{:?}: {}", hi, e))?;
    if lo > hi {
        return Err(format!("empty range {}:{}", lo, hi));
    }
    Ok((lo, hi))
}

fn parse_seconds(s: &str) -> Result<Duration, String> {
    let secs: f64 = s.parse().map_err(|e| format!("{:?}: {}", s, e))?;
    Duration::try_from_secs_f64(secs).map_err(|e| format!("{:?}: {}", s, e))
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 5)]
    pub jobs: usize,
    #[arg(long, default_value_t = 3)]
    pub machines: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_parser = parse_range, default_value = "1:100")]
    pub processing: (Time, Time),
    /// Probability that an operation pair receives a lag.
    #[arg(long, default_value_t = 0.5)]
    pub lag_density: f64,
    #[arg(long, value_parser = parse_range, default_value = "0:50")]
    pub min_lag: (Time, Time),
    /// Finite maximal lags are the minimal lag plus a draw from this range.
    #[arg(long, value_parser = parse_range, default_value = "0:50")]
    pub max_lag_extra: (Time, Time),
    #[arg(long, default_value_t = 0.5)]
    pub unbounded_probability: f64,
    /// Allow lags between any two operations of a job, not only successive ones.
    #[arg(long)]
    pub arbitrary_lags: bool,
    #[arg(long, value_parser = parse_range)]
    pub release: Option<(Time, Time)>,
    #[arg(long, value_parser = parse_range)]
    pub due: Option<(Time, Time)>,
    /// Output file (stdout if absent).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::Bnb)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = CriterionArg::Cmax)]
    pub criterion: CriterionArg,
    /// Seconds.
    #[arg(long, value_parser = parse_seconds)]
    pub time_limit: Option<Duration>,
    #[arg(long)]
    pub node_limit: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Seeds the machine-1 order of f2-restricted when --m1-order is absent.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated machine-1 job order for f2-restricted.
    #[arg(long, value_delimiter = ',')]
    pub m1_order: Option<Vec<usize>>,
    /// Largest job count for brute-perm.
    #[arg(long, default_value_t = flowlag_core::exact::DEFAULT_PERMUTATION_CAP)]
    pub perm_cap: usize,
    /// Largest number of order tuples for brute-general.
    #[arg(long, default_value_t = 1_000_000)]
    pub general_cap: u64,
}

impl SolveArgs {
    fn settings(&self) -> SolveSettings {
        SolveSettings {
            criterion: self.criterion.into(),
            node_limit: self.node_limit,
            time_limit: self.time_limit,
            workers: self.workers,
            seed: self.seed,
            m1_order: self.m1_order.clone(),
            perm_cap: self.perm_cap,
            general_cap: self.general_cap,
        }
    }
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    pub instance: PathBuf,
    /// Comma-separated job permutation.
    #[arg(long, value_delimiter = ',', required = true)]
    pub perm: Vec<usize>,
    #[arg(long, value_enum, default_value_t = CriterionArg::Cmax)]
    pub criterion: CriterionArg,
}

#[derive(Debug, Args)]
pub struct ScheduleArgs {
    pub instance: PathBuf,
    /// Schedule file: {"start": [[...]], "orders"?: [[...]], "permutation"?: [...]}.
    pub schedule: PathBuf,
    /// Output file (stdout if absent).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    pub dir: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [MethodArg::Bnb, MethodArg::Neh])]
    pub methods: Vec<MethodArg>,
    #[arg(long, value_enum, default_value_t = CriterionArg::Cmax)]
    pub criterion: CriterionArg,
    /// Seconds per instance and method.
    #[arg(long, value_parser = parse_seconds)]
    pub time_limit: Option<Duration>,
    #[arg(long)]
    pub node_limit: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Output file (stdout if absent).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn read_instance(path: &Path) -> Result<Instance, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_instance(&text).map_err(|e| CliError::format(path, e))
}

fn emit(output: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("plain data serializes");
    text.push('\n');
    text
}

fn generate_cmd(args: &GenerateArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let params = GeneratorParams {
        jobs: args.jobs,
        machines: args.machines,
        processing: args.processing,
        lag_density: args.lag_density,
        min_lag: args.min_lag,
        max_lag_extra: args.max_lag_extra,
        unbounded_probability: args.unbounded_probability,
        arbitrary_lags: args.arbitrary_lags,
        release: args.release,
        due: args.due,
        seed: args.seed,
    };
    let inst = generate(&params)?;
    emit(args.output.as_deref(), &serialize_instance(&inst), stdout)?;
    Ok(exit::OK)
}

fn solve_cmd(args: &SolveArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let inst = read_instance(&args.instance)?;
    let sol = run_method(&inst, args.method.into(), &args.settings())?;
    stdout.write_all(to_json(&sol).as_bytes())?;
    if args.method == MethodArg::Bnb && !sol.optimal {
        log::warn!("limit reached before optimality was proven");
        return Ok(exit::LIMIT_REACHED);
    }
    Ok(exit::OK)
}

#[derive(Serialize)]
struct Evaluation<'a> {
    criterion: &'static str,
    permutation: &'a [usize],
    value: Time,
    start: Vec<Vec<Time>>,
}

fn evaluate_cmd(args: &EvaluateArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let inst = read_instance(&args.instance)?;
    let mut sorted = args.perm.clone();
    sorted.sort_unstable();
    if sorted != (0..inst.jobs()).collect::<Vec<_>>() {
        return Err(CliError::Usage(format!("--perm is not a permutation of 0..{}", inst.jobs())));
    }
    let crit: Criterion = args.criterion.into();
    let value = permutation_value(&inst, &args.perm, crit)?;
    let sched = time_permutation(&inst, &args.perm).map_err(|witness| Error::Infeasible { job: None, witness })?;
    let doc = Evaluation { criterion: crit.name(), permutation: &args.perm, value, start: sched.start };
    stdout.write_all(to_json(&doc).as_bytes())?;
    Ok(exit::OK)
}

#[derive(Serialize)]
struct CheckReport {
    feasible: bool,
    violations: Vec<String>,
}

fn check_cmd(args: &ScheduleArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let inst = read_instance(&args.instance)?;
    let text = fs::read_to_string(&args.schedule).map_err(|e| CliError::io(&args.schedule, e))?;
    let file = parse_schedule(&text).map_err(|e| CliError::format(&args.schedule, e))?;
    let orders = file.orders(&inst).map_err(|e| CliError::format(&args.schedule, e))?;
    let violations: Vec<String> =
        validate_schedule(&inst, &orders, &file.schedule()).iter().map(ToString::to_string).collect();
    let report = CheckReport { feasible: violations.is_empty(), violations };
    emit(args.output.as_deref(), &to_json(&report), stdout)?;
    Ok(if report.feasible { exit::OK } else { exit::INVALID_INPUT })
}

fn bench_cmd(args: &BenchArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let settings = SolveSettings {
        criterion: args.criterion.into(),
        node_limit: args.node_limit,
        time_limit: args.time_limit,
        workers: args.workers,
        ..SolveSettings::default()
    };
    let methods: Vec<Method> = args.methods.iter().map(|&m| m.into()).collect();
    let rows = run_bench(&args.dir, &methods, &settings)?;
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf)?;
    emit(args.output.as_deref(), &String::from_utf8(buf).expect("CSV of UTF-8 fields"), stdout)?;
    Ok(exit::OK)
}

fn gantt_cmd(args: &ScheduleArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let inst = read_instance(&args.instance)?;
    let text = fs::read_to_string(&args.schedule).map_err(|e| CliError::io(&args.schedule, e))?;
    let file = parse_schedule(&text).map_err(|e| CliError::format(&args.schedule, e))?;
    match render_gantt(&inst, &file.schedule()) {
        Ok(svg) => {
            emit(args.output.as_deref(), &svg, stdout)?;
            Ok(exit::OK)
        }
        Err(violations) => {
            for v in &violations {
                writeln!(stderr, "flowlag: {}", v)?;
            }
            Ok(exit::INVALID_INPUT)
        }
    }
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    // Configured from flags only; a second call in the same process keeps the first logger.
    let _ = env_logger::Builder::new().filter_level(level).target(env_logger::Target::Stderr).try_init();
}

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::INVALID_INPUT } else { exit::OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    init_logging(cli.verbose);
    let outcome = match &cli.command {
        Command::Generate(a) => generate_cmd(a, stdout),
        Command::Solve(a) => solve_cmd(a, stdout),
        Command::Evaluate(a) => evaluate_cmd(a, stdout),
        Command::Check(a) => check_cmd(a, stdout),
        Command::Bench(a) => bench_cmd(a, stdout),
        Command::Gantt(a) => gantt_cmd(a, stdout, stderr),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "flowlag: {}", e);
            e.exit_code()
        }
    }
}
