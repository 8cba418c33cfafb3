//! Command-line front end: dataset generation, validation, evaluation,
//! program search, prompt rendering, and trace inspection.
//!
//! Exit codes are a stable contract: 0 on success, 1 on a usage error
//! (unknown flags or commands), 2 on a data or configuration error.

use crate::dataset::{read_samples, render_samples, sha256_hex, Format, Manifest};
use crate::error::{Error, Result};
use crate::metrics::{evaluate_dataset, read_predictions};
use crate::prompts::Setting;
use crate::sample::{Sample, TaskId};
use crate::seed::derive_seed;
use crate::solver::{
    hill_climb, holdout_accuracy, reference_program, run_program, MachineLimits, SearchStats,
};
use crate::suite::{
    build_prompts, generate_mix, generate_sample, generate_task, parse_mix, validate_sample,
    PromptPlan, SuiteConfig,
};
use crate::trace::export_trace_graph;
use crate::word::Seq;
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

/// Name of the environment variable consulted when `--seed` is absent.
pub const SEED_ENV_VAR: &str = "POINTER_SUITE_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "pointer-suite",
    version,
    about = "Generate, validate, evaluate, prompt, and solve pointer-chasing word tasks"
)]
pub struct Cli {
    /// Master seed (fallback: the POINTER_SUITE_SEED variable, then 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Flat key=value configuration file; command-line flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Worker thread count (default: all cores). Never changes output bytes.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a dataset file plus a manifest that pins the run.
    Gen(GenArgs),
    /// Re-derive every answer in a dataset file and run structural checks.
    Validate(ValidateArgs),
    /// Score a predictions file against a gold dataset.
    Eval(EvalArgs),
    /// Learn a chain-following program from a single training sample.
    Solve(SolveArgs),
    /// Render prompt sets for the two chain tasks.
    Prompt(PromptArgs),
    /// Print the pointer graph of one sample in DOT form.
    Inspect(InspectArgs),
}

fn parse_task(s: &str) -> std::result::Result<TaskId, String> {
    s.parse::<TaskId>().map_err(|e| e.to_string())
}

fn parse_setting(s: &str) -> std::result::Result<Setting, String> {
    s.parse::<Setting>().map_err(|e| e.to_string())
}

/// Wrapper so clap can carry a parsed mix description.
#[derive(Debug, Clone)]
pub struct MixArg(pub Vec<(TaskId, usize)>);

fn parse_mix_arg(s: &str) -> std::result::Result<MixArg, String> {
    parse_mix(s).map(MixArg).map_err(|e| e.to_string())
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    match s {
        "flat" => Ok(Format::Flat),
        "jsonl" => Ok(Format::Jsonl),
        _ => Err(format!("unknown format {s:?} (expected flat or jsonl)")),
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Task id to generate (e.g. pen, perm, hss, mul).
    #[arg(long, value_parser = parse_task, required_unless_present = "mix", conflicts_with = "mix")]
    pub task: Option<TaskId>,

    /// Per-task counts, e.g. `pen=5,cpy=2`; samples are shuffled together.
    #[arg(long, value_parser = parse_mix_arg)]
    pub mix: Option<MixArg>,

    /// Sample count (single-task mode).
    #[arg(long, default_value_t = 100)]
    pub n: usize,

    /// Output directory for the data file and manifest.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,

    /// Data file layout: `flat` (tab-separated) or `jsonl` (with metadata).
    #[arg(long, default_value = "flat", value_parser = parse_format)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Dataset file to check.
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Gold dataset file.
    #[arg(long, value_name = "FILE")]
    pub gold: PathBuf,

    /// Predictions: raw text (one per line) or JSONL with a `prediction` field.
    #[arg(long, value_name = "FILE")]
    pub predictions: PathBuf,

    /// Restrict scoring to one task id.
    #[arg(long, value_parser = parse_task)]
    pub task: Option<TaskId>,

    /// Directory for `report.json` (the table always goes to stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Read the training sample from this dataset file (first record)
    /// instead of generating a fresh one.
    #[arg(long, value_name = "FILE")]
    pub sample_file: Option<PathBuf>,

    /// Random restarts.
    #[arg(long)]
    pub restarts: Option<usize>,

    /// Hill-climbing steps per restart.
    #[arg(long)]
    pub steps: Option<usize>,

    /// Accept sideways moves (same fitness).
    #[arg(long)]
    pub accept_equal: Option<bool>,

    /// Strength of the bias away from repeatedly-changed table entries.
    #[arg(long)]
    pub weight: Option<f64>,

    /// Fresh samples the found program is scored on.
    #[arg(long, default_value_t = 100)]
    pub holdout: usize,

    /// Skip the search and evaluate the built-in hand-written program.
    #[arg(long)]
    pub reference: bool,

    /// Print the machine trace on the training input.
    #[arg(long)]
    pub trace: bool,

    /// Directory for `program.json` and `solve.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PromptArgs {
    /// Prompt family (fewshot, fewshot-description, cot, fewshot-cot,
    /// subtask-cot, analogical-cot, code-interpreter).
    #[arg(long, value_parser = parse_setting)]
    pub setting: Setting,

    /// Task id (pen or perm).
    #[arg(long, value_parser = parse_task)]
    pub task: TaskId,

    /// Worked examples per prompt (default: the setting's own count).
    #[arg(long)]
    pub k: Option<usize>,

    /// Number of prompts to render.
    #[arg(long, default_value_t = 10)]
    pub n: usize,

    /// Draw the worked examples from the trap-free generator.
    #[arg(long)]
    pub traps_removed: bool,

    /// Directory for `prompts.jsonl` and a manifest; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    /// Dataset file to read the sample from.
    #[arg(long, value_name = "FILE", conflicts_with = "task", required_unless_present = "task")]
    pub input: Option<PathBuf>,

    /// Record index within the file.
    #[arg(long, default_value_t = 0)]
    pub index: usize,

    /// Generate a fresh sample of this task instead of reading a file.
    #[arg(long, value_parser = parse_task)]
    pub task: Option<TaskId>,

    /// File for the DOT text; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

fn resolve_master_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV_VAR) {
        Ok(text) => text.trim().parse::<u64>().map_err(|_| Error::BadConfig {
            line: 0,
            reason: format!("{SEED_ENV_VAR} is not a non-negative integer: {text:?}"),
        }),
        Err(_) => Ok(0),
    }
}

fn resolve_config(path: Option<&Path>) -> Result<SuiteConfig> {
    let mut config = SuiteConfig::default();
    if let Some(path) = path {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        config.load_flat(&text)?;
    }
    Ok(config)
}

fn sample_stream_seed(master: u64, task: TaskId, index: u64) -> u64 {
    derive_seed(derive_seed(master, task.seed_namespace()), index)
}

fn ensure_dir(path: &Path) -> Result<()> {
    std::fs::create_dir_all(path).map_err(|e| Error::io(path, e))
}

fn write_json_pretty<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::MalformedRecord {
        line: 0,
        reason: e.to_string(),
    })?;
    std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

/// Run one parsed invocation; the returned value is the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    if let Some(threads) = cli.threads {
        // A failure here means a pool already exists (second call in-process);
        // the explicitly requested count then cannot be honored.
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::infeasible(format!("cannot size the thread pool: {e}")))?;
    }
    let master = resolve_master_seed(cli.seed)?;
    let config = resolve_config(cli.config.as_deref())?;
    match cli.command {
        Command::Gen(args) => cmd_gen(args, &config, master),
        Command::Validate(args) => cmd_validate(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Solve(args) => cmd_solve(args, &config, master),
        Command::Prompt(args) => cmd_prompt(args, &config, master),
        Command::Inspect(args) => cmd_inspect(args, &config, master),
    }
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

fn mix_echo(mix: &[(TaskId, usize)]) -> String {
    mix.iter()
        .map(|(t, n)| format!("{}={n}", t.name().to_lowercase()))
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_gen(args: GenArgs, config: &SuiteConfig, master: u64) -> Result<i32> {
    let mut run_keys: BTreeMap<String, String> = BTreeMap::new();
    run_keys.insert("run.command".to_string(), "gen".to_string());
    let samples = match (&args.task, &args.mix) {
        (Some(task), None) => {
            run_keys.insert("run.task".to_string(), task.name().to_lowercase());
            run_keys.insert("run.n".to_string(), args.n.to_string());
            generate_task(*task, config, master, args.n)?
        }
        (None, Some(MixArg(mix))) => {
            run_keys.insert("run.mix".to_string(), mix_echo(mix));
            generate_mix(mix, config, master)?
        }
        _ => unreachable!("clap enforces exactly one of --task and --mix"),
    };
    let data_name = match args.format {
        Format::Flat => "data.txt",
        Format::Jsonl => "data.jsonl",
    };
    run_keys.insert("run.format".to_string(), data_name.rsplit('.').next().unwrap().to_string());

    let bytes = render_samples(&samples, args.format)?;
    ensure_dir(&args.out)?;
    let data_path = args.out.join(data_name);
    std::fs::write(&data_path, &bytes).map_err(|e| Error::io(&data_path, e))?;

    let mut flat = config.to_flat();
    flat.extend(run_keys);
    let mut manifest = Manifest::new(master, flat);
    manifest.record_counts(&samples);
    manifest.record_digest(&bytes);

    // Self-check: the digest in the manifest must match the bytes on disk.
    let on_disk = std::fs::read(&data_path).map_err(|e| Error::io(&data_path, e))?;
    if sha256_hex(&on_disk) != manifest.sha256 {
        return Err(Error::io(
            &data_path,
            std::io::Error::other("written bytes do not match the recorded digest"),
        ));
    }
    manifest.write(&args.out.join("manifest.json"))?;
    println!(
        "wrote {} samples to {} (sha256 {})",
        samples.len(),
        data_path.display(),
        &manifest.sha256[..12]
    );
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

fn cmd_validate(args: ValidateArgs) -> Result<i32> {
    let samples = read_samples(&args.input)?;
    let mut dirty = 0usize;
    for (idx, sample) in samples.iter().enumerate() {
        let findings = validate_sample(sample)?;
        if !findings.is_empty() {
            dirty += 1;
            for finding in findings {
                println!("sample {idx} ({}): {finding}", sample.task);
            }
        }
    }
    if dirty == 0 {
        println!("{} samples, all clean", samples.len());
        Ok(EXIT_OK)
    } else {
        println!("{} of {} samples have findings", dirty, samples.len());
        Ok(EXIT_DATA)
    }
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

fn has_answer_marker(text: &str) -> bool {
    text.lines()
        .any(|l| l.trim_start().to_ascii_lowercase().starts_with("answer:"))
        || text.to_ascii_lowercase().contains("answer is:")
}

/// A single-line prediction with no answer marker is taken as the bare
/// answer itself. Multi-line transcripts must mark their answer and
/// otherwise count as extraction failures.
fn normalize_predictions(predictions: Vec<String>) -> Vec<String> {
    predictions
        .into_iter()
        .map(|p| {
            let trimmed = p.trim();
            if !has_answer_marker(&p) && !trimmed.is_empty() && !trimmed.contains('\n') {
                format!("Answer: {trimmed}")
            } else {
                p
            }
        })
        .collect()
}

fn cmd_eval(args: EvalArgs) -> Result<i32> {
    let gold = read_samples(&args.gold)?;
    let predictions = normalize_predictions(read_predictions(&args.predictions)?);
    let report = evaluate_dataset(&predictions, &gold, args.task)?;
    print!("{report}");
    if let Some(out) = &args.out {
        ensure_dir(out)?;
        write_json_pretty(&out.join("report.json"), &report)?;
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

/// Everything one solve run produced, echoed into `solve.json`.
#[derive(Debug, Serialize, Deserialize)]
pub struct SolveReport {
    pub master_seed: u64,
    pub train_task: String,
    pub train_input: String,
    pub train_target: String,
    /// Absent when `--reference` skipped the search.
    pub stats: Option<SearchStats>,
    pub holdout_n: usize,
    pub holdout_accuracy: f64,
    pub reference: bool,
}

fn cmd_solve(args: SolveArgs, config: &SuiteConfig, master: u64) -> Result<i32> {
    let mut search = config.search.clone();
    if let Some(r) = args.restarts {
        search.restarts = r;
    }
    if let Some(s) = args.steps {
        search.steps_per_restart = s;
    }
    if let Some(a) = args.accept_equal {
        search.accept_equal = a;
    }
    if let Some(w) = args.weight {
        search.repeat_penalty_weight = w;
    }

    let train = match &args.sample_file {
        Some(path) => {
            let samples = read_samples(path)?;
            samples.into_iter().next().ok_or(Error::MalformedRecord {
                line: 0,
                reason: "sample file is empty".to_string(),
            })?
        }
        None => {
            let root = derive_seed(derive_seed(master, TaskId::Pen.seed_namespace()), 2);
            generate_sample(TaskId::Pen, config, derive_seed(root, 0))?
        }
    };

    let (table, stats) = if args.reference {
        (reference_program(), None)
    } else {
        let (table, stats) = hill_climb(&train, &search, master)?;
        (table, Some(stats))
    };

    let holdout_root = derive_seed(derive_seed(master, train.task.seed_namespace()), 3);
    let holdout: Vec<Sample> = (0..args.holdout as u64)
        .map(|i| generate_sample(train.task, config, derive_seed(holdout_root, i)))
        .collect::<Result<_>>()?;
    let accuracy = holdout_accuracy(&table, &holdout)?;

    if let Some(stats) = &stats {
        let trajectory = stats
            .trajectory
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(" -> ");
        println!(
            "training fitness {}/{} (perfect: {}), {} restarts, {} steps",
            stats.best_fitness,
            train.target_tokens().len(),
            stats.perfect,
            stats.restarts_used,
            stats.total_steps
        );
        println!("fitness trajectory: {trajectory}");
    } else {
        println!("reference program (no search)");
    }
    println!("holdout accuracy: {accuracy} on {} samples", args.holdout);

    if args.trace {
        let result = run_program(&table, &Seq::parse(&train.input)?, &MachineLimits::default());
        print!("{}", result.render_trace());
        println!("output: {}", result.words.join(" "));
    }

    if let Some(out) = &args.out {
        ensure_dir(out)?;
        std::fs::write(out.join("program.json"), table.to_json_string() + "\n")
            .map_err(|e| Error::io(out.join("program.json"), e))?;
        let report = SolveReport {
            master_seed: master,
            train_task: train.task.to_string(),
            train_input: train.input.clone(),
            train_target: train.target.clone(),
            stats,
            holdout_n: args.holdout,
            holdout_accuracy: accuracy,
            reference: args.reference,
        };
        write_json_pretty(&out.join("solve.json"), &report)?;
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// prompt
// ---------------------------------------------------------------------------

fn cmd_prompt(args: PromptArgs, config: &SuiteConfig, master: u64) -> Result<i32> {
    let plan = PromptPlan {
        setting: args.setting,
        task: args.task,
        shots: args.k,
        count: args.n,
        traps_removed: args.traps_removed,
    };
    let records = build_prompts(&plan, config, master)?;
    let mut body = String::new();
    for record in &records {
        body.push_str(&serde_json::to_string(record).map_err(|e| Error::MalformedRecord {
            line: 0,
            reason: e.to_string(),
        })?);
        body.push('\n');
    }
    match &args.out {
        Some(out) => {
            ensure_dir(out)?;
            let path = out.join("prompts.jsonl");
            std::fs::write(&path, &body).map_err(|e| Error::io(&path, e))?;
            let mut flat = config.to_flat();
            flat.insert("run.command".to_string(), "prompt".to_string());
            flat.insert("run.setting".to_string(), args.setting.name().to_string());
            flat.insert("run.task".to_string(), args.task.name().to_lowercase());
            flat.insert(
                "run.k".to_string(),
                plan.shots
                    .unwrap_or_else(|| args.setting.default_shots())
                    .to_string(),
            );
            flat.insert("run.n".to_string(), args.n.to_string());
            flat.insert("run.traps_removed".to_string(), args.traps_removed.to_string());
            let mut manifest = Manifest::new(master, flat);
            manifest.record_digest(body.as_bytes());
            manifest.write(&out.join("manifest.json"))?;
            println!("wrote {} prompts to {}", records.len(), path.display());
        }
        None => print!("{body}"),
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// inspect
// ---------------------------------------------------------------------------

fn cmd_inspect(args: InspectArgs, config: &SuiteConfig, master: u64) -> Result<i32> {
    let sample = match (&args.input, args.task) {
        (Some(path), None) => {
            let samples = read_samples(path)?;
            samples
                .into_iter()
                .nth(args.index)
                .ok_or(Error::MalformedRecord {
                    line: args.index + 1,
                    reason: "no record at this index".to_string(),
                })?
        }
        (None, Some(task)) => generate_sample(task, config, sample_stream_seed(master, task, 0))?,
        _ => unreachable!("clap enforces exactly one of --input and --task"),
    };
    let graph = export_trace_graph(&sample)?;
    let dot = graph.to_dot();
    match &args.out {
        Some(path) => std::fs::write(path, dot).map_err(|e| Error::io(path, e))?,
        None => print!("{dot}"),
    }
    Ok(EXIT_OK)
}
