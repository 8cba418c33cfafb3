//! Black-box tests of the command-line binary: the exit-code contract
//! (0 success, 1 usage error, 2 data error), the seed environment
//! variable, config-file layering, and the files each subcommand writes.

use pointer_suite::dataset::{read_samples, Manifest};
use pointer_suite::prompts::read_prompt_records;
use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Output};

const SEED_VAR: &str = "POINTER_SUITE_SEED";

/// Command for the built binary with the seed variable scrubbed, so tests
/// control it explicitly.
fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pointer-suite"));
    cmd.env_remove(SEED_VAR);
    cmd
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary should spawn")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("binary should exit, not signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn gen_ok(dir: &Path, extra: &[&str]) {
    let out = run(bin().args(["gen", "--out"]).arg(dir).args(extra));
    assert_eq!(code(&out), 0, "gen failed: {}", stderr(&out));
}

#[test]
fn help_and_version_exit_zero() {
    for flag in ["--help", "--version"] {
        let out = run(bin().arg(flag));
        assert_eq!(code(&out), 0, "{flag}");
    }
    let out = run(bin().args(["gen", "--help"]));
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("--mix"));
}

#[test]
fn usage_errors_exit_one() {
    let cases: &[&[&str]] = &[
        &["no-such-command"],
        &["gen", "--no-such-flag"],
        &["gen"],                                       // neither --task nor --mix
        &["gen", "--task", "pen", "--mix", "pen=1"],    // mutually exclusive
        &["gen", "--task", "zzz"],                      // unknown task id
        &["prompt", "--setting", "mystery", "--task", "pen"],
        &["inspect"],                                   // neither --input nor --task
        &["solve", "--restarts", "many"],               // non-numeric value
    ];
    for args in cases {
        let out = run(bin().args(*args));
        assert_eq!(code(&out), 1, "args {args:?}: {}", stderr(&out));
    }
}

#[test]
fn malformed_data_and_config_exit_two() {
    let dir = tempfile::tempdir().unwrap();

    let broken = dir.path().join("broken.txt");
    std::fs::write(&broken, "PEN only-one-field\n").unwrap();
    let out = run(bin().args(["validate", "--input"]).arg(&broken));
    assert_eq!(code(&out), 2, "{}", stderr(&out));
    assert!(stderr(&out).contains("error:"));

    let config = dir.path().join("suite.conf");
    std::fs::write(&config, "pen.no_such_knob=1\n").unwrap();
    let out = run(bin()
        .args(["--config"])
        .arg(&config)
        .args(["gen", "--task", "pen", "--n", "1", "--out"])
        .arg(dir.path()));
    assert_eq!(code(&out), 2, "{}", stderr(&out));
    assert!(stderr(&out).contains("no_such_knob"));

    let out = run(bin().env(SEED_VAR, "not-a-number").args(["inspect", "--task", "pen"]));
    assert_eq!(code(&out), 2, "{}", stderr(&out));
}

#[test]
fn eval_rejects_mismatched_lengths() {
    let dir = tempfile::tempdir().unwrap();
    gen_ok(dir.path(), &["--task", "pen", "--n", "4", "--seed", "1"]);
    let gold = dir.path().join("data.txt");
    let predictions = dir.path().join("pred.txt");
    std::fs::write(&predictions, "Answer: a\nAnswer: b\n").unwrap();
    let out = run(bin()
        .args(["eval", "--gold"])
        .arg(&gold)
        .arg("--predictions")
        .arg(&predictions));
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("4") && stderr(&out).contains("2"));
}

#[test]
fn seed_env_var_is_the_fallback_and_the_flag_wins() {
    let with_flag = tempfile::tempdir().unwrap();
    let with_env = tempfile::tempdir().unwrap();
    let env_beaten = tempfile::tempdir().unwrap();

    gen_ok(with_flag.path(), &["--task", "perm", "--n", "20", "--seed", "9"]);
    let out = run(bin()
        .env(SEED_VAR, "9")
        .args(["gen", "--task", "perm", "--n", "20", "--out"])
        .arg(with_env.path()));
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = run(bin()
        .env(SEED_VAR, "12345")
        .args(["gen", "--task", "perm", "--n", "20", "--seed", "9", "--out"])
        .arg(env_beaten.path()));
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let bytes = |d: &Path| std::fs::read(d.join("data.txt")).unwrap();
    assert_eq!(bytes(with_flag.path()), bytes(with_env.path()));
    assert_eq!(bytes(with_flag.path()), bytes(env_beaten.path()));

    let manifest = Manifest::read(&with_env.path().join("manifest.json")).unwrap();
    assert_eq!(manifest.master_seed, 9);
}

#[test]
fn mix_counts_and_manifest_digest_hold() {
    let dir = tempfile::tempdir().unwrap();
    gen_ok(dir.path(), &["--mix", "pen=5,cpy=2,hss=3", "--seed", "4"]);

    let samples = read_samples(&dir.path().join("data.txt")).unwrap();
    assert_eq!(samples.len(), 10);
    let manifest = Manifest::read(&dir.path().join("manifest.json")).unwrap();
    assert_eq!(manifest.counts.get("PEN"), Some(&5));
    assert_eq!(manifest.counts.get("CPY"), Some(&2));
    assert_eq!(manifest.counts.get("HSS"), Some(&3));
    assert_eq!(manifest.config.get("run.mix").map(String::as_str), Some("pen=5,cpy=2,hss=3"));

    // The recorded digest matches the dataset bytes on disk.
    let mut check = Manifest::new(0, BTreeMap::new());
    check.record_digest(&std::fs::read(dir.path().join("data.txt")).unwrap());
    assert_eq!(check.sha256, manifest.sha256);
}

#[test]
fn validate_passes_generated_data_and_flags_tampering() {
    let dir = tempfile::tempdir().unwrap();
    gen_ok(dir.path(), &["--task", "pen", "--n", "6", "--seed", "2"]);
    let data = dir.path().join("data.txt");

    let out = run(bin().args(["validate", "--input"]).arg(&data));
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("all clean"));

    // Swap the last two answer tokens of the third record.
    let text = std::fs::read_to_string(&data).unwrap();
    let tampered: Vec<String> = text
        .lines()
        .enumerate()
        .map(|(i, line)| {
            if i != 2 {
                return line.to_string();
            }
            let (head, target) = line.rsplit_once('\t').unwrap();
            let mut tokens: Vec<&str> = target.split(' ').collect();
            let n = tokens.len();
            tokens.swap(n - 2, n - 1);
            format!("{head}\t{}", tokens.join(" "))
        })
        .collect();
    std::fs::write(&data, tampered.join("\n") + "\n").unwrap();

    let out = run(bin().args(["validate", "--input"]).arg(&data));
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("sample 2"), "stdout: {}", stdout(&out));
}

#[test]
fn eval_scores_gold_predictions_perfectly() {
    let dir = tempfile::tempdir().unwrap();
    gen_ok(
        dir.path(),
        &["--task", "perm", "--n", "25", "--seed", "6", "--format", "jsonl"],
    );
    let gold = dir.path().join("data.jsonl");
    let samples = read_samples(&gold).unwrap();
    let predictions = dir.path().join("pred.txt");
    let lines: Vec<String> = samples.iter().map(|s| s.target.clone()).collect();
    std::fs::write(&predictions, lines.join("\n") + "\n").unwrap();

    let out = run(bin()
        .args(["eval", "--gold"])
        .arg(&gold)
        .arg("--predictions")
        .arg(&predictions)
        .arg("--out")
        .arg(dir.path()));
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("task accuracy"));

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["task_acc"], 1.0);
    assert_eq!(report["match_acc"], 1.0);
    assert_eq!(report["term_acc"], 1.0);
    assert_eq!(report["extraction_failures"], 0);
}

#[test]
fn solve_reference_program_scores_perfect_holdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(bin()
        .args([
            "solve",
            "--reference",
            "--holdout",
            "50",
            "--seed",
            "11",
            "--out",
        ])
        .arg(dir.path()));
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("solve.json")).unwrap())
            .unwrap();
    assert_eq!(report["reference"], true);
    assert_eq!(report["holdout_accuracy"], 1.0);
    assert_eq!(report["holdout_n"], 50);
    assert!(report["stats"].is_null());

    let program = std::fs::read_to_string(dir.path().join("program.json")).unwrap();
    assert!(program.contains("MATCH") && program.contains("OUTPUT"));
}

#[test]
fn prompt_rejects_unsupported_combinations() {
    // Prompts only exist for the two main tasks.
    let out = run(bin().args(["prompt", "--setting", "fewshot", "--task", "cpy"]));
    assert_eq!(code(&out), 2, "{}", stderr(&out));

    // This scaffold takes no worked examples.
    let out = run(bin().args([
        "prompt",
        "--setting",
        "analogical-cot",
        "--task",
        "pen",
        "--k",
        "2",
    ]));
    assert_eq!(code(&out), 2, "{}", stderr(&out));

    // Decoy removal only applies to the chain task.
    let out = run(bin().args([
        "prompt",
        "--setting",
        "fewshot-cot",
        "--task",
        "perm",
        "--traps-removed",
    ]));
    assert_eq!(code(&out), 2, "{}", stderr(&out));
}

#[test]
fn prompt_writes_records_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(bin()
        .args([
            "prompt",
            "--setting",
            "fewshot-cot",
            "--task",
            "pen",
            "--n",
            "3",
            "--traps-removed",
            "--seed",
            "7",
            "--out",
        ])
        .arg(dir.path()));
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let records = read_prompt_records(&dir.path().join("prompts.jsonl")).unwrap();
    assert_eq!(records.len(), 3);
    for record in &records {
        assert!(record.prompt.contains("Your question:"));
        assert!(record.prompt.contains("answer is:"));
        assert!(!record.gold.is_empty());
        assert!(!record.prompt.contains(&format!("Answer: {}", record.gold)));
    }
    let manifest = Manifest::read(&dir.path().join("manifest.json")).unwrap();
    assert_eq!(manifest.config.get("run.setting").map(String::as_str), Some("fewshot-cot"));
    assert_eq!(manifest.config.get("run.traps_removed").map(String::as_str), Some("true"));
}

#[test]
fn config_file_settings_reach_the_generator() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("suite.conf");
    std::fs::write(
        &config,
        "# pin the chain length\npen.chain_len_min=9\npen.chain_len_max=9\n",
    )
    .unwrap();
    let out = run(bin()
        .arg("--config")
        .arg(&config)
        .args(["gen", "--task", "pen", "--n", "8", "--seed", "3", "--format", "jsonl", "--out"])
        .arg(dir.path()));
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let samples = read_samples(&dir.path().join("data.jsonl")).unwrap();
    assert_eq!(samples.len(), 8);
    for sample in &samples {
        assert_eq!(sample.meta["m"], 9);
    }
    let manifest = Manifest::read(&dir.path().join("manifest.json")).unwrap();
    assert_eq!(manifest.config.get("pen.chain_len_min").map(String::as_str), Some("9"));
    assert_eq!(manifest.config.get("pen.chain_len_max").map(String::as_str), Some("9"));
}

#[test]
fn inspect_renders_a_trace_graph() {
    let out = run(bin().args(["inspect", "--task", "hss", "--seed", "5"]));
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("digraph"), "stdout: {text}");
    assert!(text.contains("->"));

    // The same sample drawn from a file renders the same graph.
    let dir = tempfile::tempdir().unwrap();
    gen_ok(dir.path(), &["--task", "hss", "--n", "1", "--seed", "5", "--format", "jsonl"]);
    let from_file = run(bin()
        .args(["inspect", "--index", "0", "--input"])
        .arg(dir.path().join("data.jsonl")));
    assert_eq!(code(&from_file), 0);
    assert_eq!(stdout(&from_file), text);
}
