//! The `arc-lab` command line.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage or domain error,
//! 3 a `--check` assertion failed.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::class::{TaskClass, TaskParams};
use crate::dataset::{generate_dataset, Dataset, Demonstration};
use crate::error::{ArcError, Result};
use crate::families::{
    estimate_margin, parity_margin, ArithmeticConfig, DecoyMode, FamilyConfig, IndexMode, ParityConfig,
    TranslationConfig,
};
use crate::harness::{
    adversarial_experiment, resolve_margins, run_experiment, sweep, EllRule, ExperimentConfig, NThetaRule,
    SelectionFilter, SweepGrid,
};
use crate::io::{read_dataset, read_header, write_dataset, TaskRecord};
use crate::learner::{IdentifiedFamilies, Learner, LearnerConfig, MuEstimation, SelectedTask, TrainingMode};
use crate::seed::rng_from_seed;
use crate::stats::{nonasymptotic_bound, theorem_thresholds, BoundInputs};

#[derive(Debug, Parser)]
#[command(
    name = "arc-lab",
    version,
    about = "Autoregressive compositional tasks: data generation, the two-stage subtask learner, bounds, and Monte Carlo experiments",
    long_about = None
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write demonstrations of one task as JSON Lines (the task goes to a sidecar file).
    Gen(GenArgs),
    /// Identify per-step subtasks from training datasets, one file per training task.
    Train(TrainArgs),
    /// Select a task for new demonstrations by the pairwise tournament over identified subtasks.
    Infer(InferArgs),
    /// Training-task and demonstration thresholds, and the three-term failure bound.
    Bounds(BoundsArgs),
    /// Exact identifiability margins c and r by brute force (or the parity closed form).
    Margin(MarginArgs),
    /// End-to-end Monte Carlo trials: train on sampled tasks, recover an unseen one.
    Experiment(ExperimentArgs),
    /// Failure rate across a grid of training-task counts, subtask counts, or lengths.
    Sweep(SweepArgs),
    /// Train with a coordinate or a pair of indices withheld and test on the withheld tasks.
    Adversarial(AdversarialArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Parity,
    Arithmetic,
    Translation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IndexModeArg {
    StrictlyIncreasing,
    Ordered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DecoyArg {
    None,
    NegatedXor,
    FreshBit,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    MleStrictSupport,
    MleContainmentSupport,
    Discrimination,
}

impl From<ModeArg> for TrainingMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::MleStrictSupport => TrainingMode::MleStrict,
            ModeArg::MleContainmentSupport => TrainingMode::MleContainment,
            ModeArg::Discrimination => TrainingMode::Discrimination,
        }
    }
}

/// Task-class selection shared by every command that needs one.
#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// Task family.
    #[arg(long, value_enum, default_value = "parity")]
    pub family: FamilyArg,
    /// JSON task-class config; replaces the family flags below.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Bit count (parity, arithmetic).
    #[arg(long, default_value_t = 10)]
    pub d: u32,
    /// Secret length, i.e. steps (parity).
    #[arg(long, default_value_t = 3)]
    pub k: u32,
    #[arg(long, value_enum, default_value = "strictly-increasing")]
    pub index_mode: IndexModeArg,
    /// Extra hypotheses beyond the truth family (parity).
    #[arg(long, value_enum, default_value = "none")]
    pub decoys: DecoyArg,
    /// Language count (translation).
    #[arg(long, default_value_t = 4)]
    pub languages: u32,
    /// Chain steps after the input word (translation).
    #[arg(long, default_value_t = 5)]
    pub steps: u32,
    /// Meanings per lexicon (translation).
    #[arg(long, default_value_t = 8)]
    pub meanings: u32,
    #[arg(long, default_value_t = 0)]
    pub lexicon_seed: u64,
}

impl FamilyArgs {
    pub fn family_config(&self) -> Result<FamilyConfig> {
        if let Some(path) = &self.config {
            return crate::io::read_config(&std::fs::read_to_string(path)?);
        }
        Ok(match self.family {
            FamilyArg::Parity => FamilyConfig::Parity(ParityConfig {
                d: self.d,
                k: self.k,
                index_mode: match self.index_mode {
                    IndexModeArg::StrictlyIncreasing => IndexMode::StrictlyIncreasing,
                    IndexModeArg::Ordered => IndexMode::Ordered,
                },
                decoys: match self.decoys {
                    DecoyArg::None => DecoyMode::None,
                    DecoyArg::NegatedXor => DecoyMode::NegatedXor,
                    DecoyArg::FreshBit => DecoyMode::FreshBit,
                    DecoyArg::Both => DecoyMode::Both,
                },
            }),
            FamilyArg::Arithmetic => FamilyConfig::Arithmetic(ArithmeticConfig::new(self.d)),
            FamilyArg::Translation => {
                let mut t = TranslationConfig::new(self.languages, self.steps, self.meanings);
                t.lexicon_seed = self.lexicon_seed;
                FamilyConfig::Translation(t)
            }
        })
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// 1-indexed task tuple: parity indices `1,4,7`, operators `+,x,+`, target languages `2,3,1`.
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    pub task: Option<String>,
    /// Draw the task uniformly instead.
    #[arg(long)]
    pub random: bool,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use this input for every demonstration, in file form (bits, or `language,meaning` 0-based).
    #[arg(long)]
    pub x: Option<String>,
    /// Dataset path, `-` for standard output.
    #[arg(long, default_value = "-")]
    pub out: String,
    /// Task sidecar path; defaults to `<out>.task.json`.
    #[arg(long)]
    pub task_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// One dataset file per training task.
    #[arg(long, num_args = 1.., required = true)]
    pub data: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "discrimination")]
    pub mode: ModeArg,
    /// Keep repeated members (the tournament then sees every training task's pick).
    #[arg(long)]
    pub no_dedupe: bool,
    /// Accepted for uniformity; training is deterministic.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "ARC_LAB_WORKERS")]
    pub workers: Option<usize>,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct InferArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Output of `train`.
    #[arg(long)]
    pub identified: PathBuf,
    /// Inference demonstrations.
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "ARC_LAB_WORKERS")]
    pub workers: Option<usize>,
    #[arg(long, default_value = "-")]
    pub out: String,
    /// Fail with exit code 3 unless the selection equals this 1-indexed tuple.
    #[arg(long)]
    pub check: Option<String>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long = "D")]
    pub d: u64,
    #[arg(long = "T")]
    pub t: u64,
    #[arg(long, allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<f64>,
    #[arg(long = "H")]
    pub h: Option<u64>,
    #[arg(long)]
    pub n_theta: Option<u64>,
    #[arg(long)]
    pub ell: Option<u64>,
    #[arg(long)]
    pub n_x: Option<u64>,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct MarginArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Steps to examine; all by default.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Use the parity closed form instead of brute force.
    #[arg(long)]
    pub analytic: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "ARC_LAB_WORKERS")]
    pub workers: Option<usize>,
    #[arg(long, default_value = "-")]
    pub out: String,
    /// Fail with exit code 3 unless c equals this value within 1e-12.
    #[arg(long, allow_negative_numbers = true)]
    pub check: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Training tasks; `⌈D ln(100 D T)⌉` by default.
    #[arg(long)]
    pub n_theta: Option<usize>,
    #[arg(long, default_value_t = 200)]
    pub n_x: usize,
    /// Inference demonstrations; `⌈2 ln(100 T n_θ) / c²⌉` by default.
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long, default_value_t = 200)]
    pub trials: u64,
    #[arg(long, value_enum, default_value = "discrimination")]
    pub mode: ModeArg,
    #[arg(long)]
    pub no_dedupe: bool,
    /// Estimate test expectations from this many samples instead of exactly.
    #[arg(long)]
    pub approximate: Option<usize>,
    /// Fresh inputs per trial for final-token accuracy.
    #[arg(long, default_value_t = 200)]
    pub held_out: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "ARC_LAB_WORKERS")]
    pub workers: Option<usize>,
    /// JSON report path, `-` for standard output.
    #[arg(long, default_value = "-")]
    pub out: String,
    /// Enable acceptance assertions; exit code 3 on violation.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Per-trial CSV.
    #[arg(long)]
    pub rows_csv: Option<PathBuf>,
    /// `--check` passes when the failure rate is at most this.
    #[arg(long, default_value_t = 0.05)]
    pub max_failure: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridArg {
    NTheta,
    #[value(name = "D")]
    D,
    #[value(name = "T")]
    T,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, value_enum)]
    pub grid: GridArg,
    /// Comma-separated grid values.
    #[arg(long)]
    pub values: String,
    /// `fixed`, `theorem`, or `dlnd:<multiplier>` (e.g. `dlnd:3`).
    #[arg(long, default_value = "theorem")]
    pub n_theta_rule: String,
    /// `fixed` or `theorem`.
    #[arg(long, default_value = "theorem")]
    pub ell_rule: String,
    /// Full JSON reports.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// `--check` passes when every point's failure rate is at most this.
    #[arg(long, default_value_t = 0.05)]
    pub max_failure: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    ExcludeCoordinate,
    ExcludePair,
}

#[derive(Debug, Args)]
pub struct AdversarialArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// 1-indexed step of the withheld coordinate.
    #[arg(long, default_value_t = 2)]
    pub step: usize,
    /// 1-indexed withheld value at that step.
    #[arg(long, default_value_t = 5)]
    pub value: u32,
    /// 1-indexed pair withheld together.
    #[arg(long, default_value_t = 4)]
    pub a: u32,
    #[arg(long, default_value_t = 6)]
    pub b: u32,
}

fn open_out(out: &str) -> Result<Box<dyn Write>> {
    Ok(if out == "-" {
        Box::new(BufWriter::new(io::stdout().lock()))
    } else {
        Box::new(BufWriter::new(File::create(out)?))
    })
}

fn write_json<T: Serialize>(out: &str, value: &T) -> Result<()> {
    let mut w = open_out(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| ArcError::InvalidInput(format!("cannot parse {what} {s:?}")))
        })
        .collect()
}

/// Parses a 1-indexed task tuple for `class`.
pub fn parse_task(class: &TaskClass, text: &str) -> Result<TaskParams> {
    let ids = match class.config() {
        FamilyConfig::Arithmetic(_) => crate::families::parse_ops(text)?,
        _ => parse_list::<u32>(text, "task component")?
            .into_iter()
            .map(|v| {
                v.checked_sub(1)
                    .ok_or_else(|| ArcError::InvalidTask("task tuples are 1-indexed".into()))
            })
            .collect::<Result<_>>()?,
    };
    class.task(ids)
}

fn load_dataset(path: &Path, class: &TaskClass) -> Result<Dataset> {
    read_dataset(BufReader::new(File::open(path)?), class)
}

/// The class a dataset file was written for, unless flags say otherwise.
fn class_for(family: &FamilyArgs, data: Option<&Path>, explicit: bool) -> Result<TaskClass> {
    if !explicit {
        if let Some(path) = data {
            let header = read_header(&mut BufReader::new(File::open(path)?))?;
            if let Some(cfg) = header.config {
                return cfg.build();
            }
        }
    }
    family.family_config()?.build()
}

fn cmd_gen(args: &GenArgs) -> Result<()> {
    let class = args.family.family_config()?.build()?;
    let mut rng = rng_from_seed(args.seed);
    let task = match &args.task {
        Some(t) => parse_task(&class, t)?,
        None => class.sample_task(&mut rng),
    };
    let data = match &args.x {
        None => generate_dataset(&class, &task, args.n, &mut rng)?,
        Some(text) => {
            if args.n == 0 {
                return Err(ArcError::EmptyDataset);
            }
            let x = class.input_space().from_ints(&parse_list::<u64>(text, "input value")?)?;
            let demos = (0..args.n)
                .map(|_| Demonstration {
                    x,
                    y: class.generate_sequence(&task, &x, &mut rng),
                })
                .collect();
            Dataset::new(demos, Some(task.clone()))
        }
    };
    write_dataset(open_out(&args.out)?, &class, &data)?;
    let sidecar = match (&args.task_out, args.out.as_str()) {
        (Some(p), _) => Some(p.clone()),
        (None, "-") => None,
        (None, out) => Some(PathBuf::from(format!("{out}.task.json"))),
    };
    let record = TaskRecord::new(&class, &task);
    match sidecar {
        Some(p) => write_json(&p.to_string_lossy(), &record)?,
        None => eprintln!("task {}", record.display),
    }
    Ok(())
}

fn family_flags_given(args: &FamilyArgs) -> bool {
    args.config.is_some()
}

fn cmd_train(args: &TrainArgs) -> Result<()> {
    let class = class_for(&args.family, args.data.first().map(PathBuf::as_path), family_flags_given(&args.family))?;
    let data: Vec<Dataset> = args
        .data
        .iter()
        .map(|p| load_dataset(p, &class))
        .collect::<Result<_>>()?;
    let learner = Learner::new(
        &class,
        LearnerConfig {
            mode: args.mode.into(),
            dedupe: !args.no_dedupe,
            mu: MuEstimation::Exact,
        },
    );
    let pool = crate::harness::pool(args.workers)?;
    let ident = pool.install(|| learner.train(&data))?;
    write_json(&args.out, &ident)
}

#[derive(Serialize)]
struct InferOutput<'a> {
    task: String,
    theta: Vec<u32>,
    index_base: u32,
    selection: &'a SelectedTask,
}

fn cmd_infer(args: &InferArgs) -> Result<Option<bool>> {
    let class = class_for(&args.family, Some(&args.data), family_flags_given(&args.family))?;
    let ident: IdentifiedFamilies = serde_json::from_reader(BufReader::new(File::open(&args.identified)?))?;
    let data = load_dataset(&args.data, &class)?;
    let learner = Learner::new(&class, LearnerConfig::default());
    let selected = learner.infer(&ident, &data)?;
    let ids = selected.ids();
    let display = format!(
        "({})",
        ids.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
    );
    write_json(
        &args.out,
        &InferOutput {
            task: display,
            theta: ids.clone(),
            index_base: 0,
            selection: &selected,
        },
    )?;
    match &args.check {
        Some(expected) => Ok(Some(parse_task(&class, expected)?.ids() == ids.as_slice())),
        None => Ok(None),
    }
}

#[derive(Serialize)]
struct BoundsOutput {
    thresholds: crate::stats::ThresholdSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<crate::stats::FailureBound>,
}

fn cmd_bounds(args: &BoundsArgs) -> Result<()> {
    let mut thresholds = theorem_thresholds(args.d, args.t, args.c)?;
    thresholds.r_used = args.r;
    let bound = match (args.r, args.h, args.n_theta, args.ell, args.n_x) {
        (None, None, None, None, None) => None,
        (Some(r), Some(h), Some(n_theta), Some(ell), Some(n_x)) => Some(nonasymptotic_bound(&BoundInputs {
            d: args.d,
            t: args.t,
            h,
            c: args.c,
            r,
            n_theta,
            ell,
            n_x,
        })?),
        _ => {
            return Err(ArcError::InvalidConfig(
                "the failure bound needs all of --r --H --n-theta --ell --n-x".into(),
            ))
        }
    };
    write_json(&args.out, &BoundsOutput { thresholds, bound })
}

fn cmd_margin(args: &MarginArgs) -> Result<Option<bool>> {
    let class = args.family.family_config()?.build()?;
    let report = if args.analytic {
        parity_margin(&class)?
    } else {
        estimate_margin(&class, args.depth.unwrap_or(class.steps()))?
    };
    write_json(&args.out, &report)?;
    Ok(args.check.map(|want| report.c.is_some_and(|c| (c - want).abs() <= 1e-12)))
}

fn experiment_config(run: &RunArgs) -> Result<ExperimentConfig> {
    let family = run.family.family_config()?;
    let class = family.build()?;
    let (d, t) = (class.subtasks_per_step() as u64, class.steps() as u64);
    let mut cfg = ExperimentConfig::new(family, 1, run.n_x, 1, run.trials);
    cfg.mode = run.mode.into();
    cfg.dedupe = !run.no_dedupe;
    cfg.master_seed = run.seed;
    cfg.held_out = run.held_out;
    if let Some(samples) = run.approximate {
        cfg.mu = MuEstimation::MonteCarlo { samples, seed: run.seed };
    }
    cfg.n_theta = match run.n_theta {
        Some(n) => n,
        None => theorem_thresholds(d, t, 1.0)?.n_theta_min as usize,
    };
    cfg.ell = match run.ell {
        Some(l) => l,
        None => {
            let c = resolve_margins(&class, &cfg)
                .0
                .ok_or_else(|| ArcError::InvalidConfig("no known margin; pass --ell".into()))?;
            theorem_ell(t, cfg.n_theta, c)?
        }
    };
    Ok(cfg)
}

fn theorem_ell(t: u64, n_theta: usize, c: f64) -> Result<usize> {
    if c.is_nan() || c <= 0.0 {
        return Err(ArcError::Domain("margin must be positive".into()));
    }
    Ok((2.0 * (100.0 * t as f64 * n_theta.max(1) as f64).ln() / (c * c)).ceil() as usize)
}

fn cmd_experiment(args: &ExperimentArgs) -> Result<Option<bool>> {
    let cfg = experiment_config(&args.run)?;
    let report = run_experiment(&cfg, args.run.workers)?;
    write_json(&args.run.out, &report)?;
    if let Some(path) = &args.rows_csv {
        std::fs::write(path, report.rows_csv())?;
    }
    Ok(args
        .run
        .check
        .then(|| report.failure.rate <= args.max_failure && report.within_bound()))
}

fn cmd_sweep(args: &SweepArgs) -> Result<Option<bool>> {
    let base = experiment_config(&args.run)?;
    let grid = match args.grid {
        GridArg::NTheta => SweepGrid::NTheta(parse_list(&args.values, "grid value")?),
        GridArg::D => SweepGrid::D(parse_list(&args.values, "grid value")?),
        GridArg::T => SweepGrid::T(parse_list(&args.values, "grid value")?),
    };
    let n_rule = match args.n_theta_rule.as_str() {
        "fixed" => NThetaRule::Fixed,
        "theorem" => NThetaRule::Theorem,
        other => match other.strip_prefix("dlnd:").map(str::parse::<f64>) {
            Some(Ok(multiplier)) if multiplier > 0.0 => NThetaRule::DLnD { multiplier },
            _ => return Err(ArcError::InvalidConfig(format!("unknown n-theta rule {other:?}"))),
        },
    };
    let ell_rule = match args.ell_rule.as_str() {
        "fixed" => EllRule::Fixed,
        "theorem" => EllRule::Theorem,
        other => return Err(ArcError::InvalidConfig(format!("unknown ell rule {other:?}"))),
    };
    let report = sweep(&base, &grid, n_rule, ell_rule, args.run.workers)?;
    let mut w = open_out(&args.run.out)?;
    w.write_all(report.csv().as_bytes())?;
    w.flush()?;
    if let Some(path) = &args.json {
        write_json(&path.to_string_lossy(), &report)?;
    }
    Ok(args
        .run
        .check
        .then(|| report.rows.iter().all(|r| r.failure_rate <= args.max_failure)))
}

fn cmd_adversarial(args: &AdversarialArgs) -> Result<Option<bool>> {
    let mut cfg = experiment_config(&args.run)?;
    let one_based = |v: u32, what: &str| {
        v.checked_sub(1)
            .ok_or_else(|| ArcError::InvalidConfig(format!("{what} is 1-indexed")))
    };
    cfg.filter = match args.kind {
        KindArg::ExcludeCoordinate => SelectionFilter::ExcludeCoordinate {
            step: one_based(args.step as u32, "--step")? as usize,
            value: one_based(args.value, "--value")?,
        },
        KindArg::ExcludePair => SelectionFilter::ExcludePair {
            a: one_based(args.a, "--a")?,
            b: one_based(args.b, "--b")?,
        },
    };
    if args.run.ell.is_none() {
        // size ℓ for the number of tasks actually trained on
        let class = cfg.family.build()?;
        let admitted = crate::harness::admitted_tasks(&class, &cfg.filter)?.len();
        if let Some(c) = resolve_margins(&class, &cfg).0 {
            cfg.ell = theorem_ell(class.steps() as u64, admitted, c)?;
        }
    }
    let report = adversarial_experiment(&cfg, args.run.workers)?;
    write_json(&args.run.out, &report)?;
    if !args.run.check {
        return Ok(None);
    }
    let control_ok = report.control.recovery_rate() >= 0.95;
    let excluded_ok = match args.kind {
        KindArg::ExcludePair => report.excluded.recovery_rate() >= 0.95,
        KindArg::ExcludeCoordinate => {
            let step = args.step - 1;
            let acc = report.excluded.mean_token_accuracy;
            (0.45..=0.55).contains(&acc) && report.excluded.step_recovery.get(step) == Some(&0.0)
        }
    };
    Ok(Some(control_ok && excluded_ok))
}

/// Runs the parsed command, returning `Some(passed)` for `--check` runs.
pub fn execute(cli: &Cli) -> Result<Option<bool>> {
    match &cli.command {
        Command::Gen(a) => cmd_gen(a).map(|_| None),
        Command::Train(a) => cmd_train(a).map(|_| None),
        Command::Infer(a) => cmd_infer(a),
        Command::Bounds(a) => cmd_bounds(a).map(|_| None),
        Command::Margin(a) => cmd_margin(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Adversarial(a) => cmd_adversarial(a),
    }
}

/// Entry point used by the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(None) | Ok(Some(true)) => ExitCode::SUCCESS,
        Ok(Some(false)) => {
            eprintln!("check failed");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
