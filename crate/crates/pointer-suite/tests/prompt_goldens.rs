//! Byte-pinned prompt rendering: one golden file per setting and chain task.
//!
//! Regenerate with `GOLDEN_WRITE=1 cargo test --test prompt_goldens`; the
//! bless run writes the files and fails on purpose so a normal run always
//! compares strictly.

use pointer_suite::prompts::Setting;
use pointer_suite::sample::TaskId;
use pointer_suite::suite::{build_prompts, PromptPlan, SuiteConfig};
use std::path::PathBuf;

const MASTER_SEED: u64 = 7;

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/goldens")
        .join(name)
}

fn rendered(setting: Setting, task: TaskId) -> String {
    // Narrated chain-task shots come from the trap-free generator, matching
    // how those worked examples are meant to be produced.
    let traps_removed =
        task == TaskId::Pen && matches!(setting, Setting::FewShotCot | Setting::SubtaskCot);
    let plan = PromptPlan {
        setting,
        task,
        shots: None,
        count: 1,
        traps_removed,
    };
    let records = build_prompts(&plan, &SuiteConfig::default(), MASTER_SEED).unwrap();
    records.into_iter().next().unwrap().prompt
}

/// Returns true when the golden file was (re)written instead of compared.
fn check(setting: Setting, task: TaskId) -> bool {
    let name = format!("{}_{}.txt", setting.name(), task.name().to_lowercase());
    let path = golden_path(&name);
    let actual = rendered(setting, task);
    if std::env::var_os("GOLDEN_WRITE").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &actual).unwrap();
        return true;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("missing golden file {}: {e}", path.display()));
    assert_eq!(
        actual, expected,
        "rendered {} prompt for {} drifted from its golden file",
        setting, task
    );
    false
}

fn check_both(setting: Setting) {
    let blessed = check(setting, TaskId::Pen) | check(setting, TaskId::Perm);
    assert!(
        !blessed,
        "golden files rewritten; rerun without GOLDEN_WRITE to compare"
    );
}

#[test]
fn fewshot_prompts_are_pinned() {
    check_both(Setting::FewShot);
}

#[test]
fn fewshot_description_prompts_are_pinned() {
    check_both(Setting::FewShotDescription);
}

#[test]
fn cot_prompts_are_pinned() {
    check_both(Setting::Cot);
}

#[test]
fn fewshot_cot_prompts_are_pinned() {
    check_both(Setting::FewShotCot);
}

#[test]
fn subtask_cot_prompts_are_pinned() {
    check_both(Setting::SubtaskCot);
}

#[test]
fn analogical_cot_prompts_are_pinned() {
    check_both(Setting::AnalogicalCot);
}

#[test]
fn code_interpreter_prompts_are_pinned() {
    check_both(Setting::CodeInterpreter);
}
