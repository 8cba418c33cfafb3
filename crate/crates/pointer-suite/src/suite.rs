//! One roof over the per-family generators: a combined configuration with a
//! flat key=value encoding, task-id dispatch, target recomputation,
//! structural validation, mixed datasets, and prompt-set assembly.

use crate::error::{Error, Result};
use crate::numeric::{
    gen_add, gen_dmul, gen_hss, gen_mul, gen_sse, numbers_from_input, operands_from_input,
    oracle_add, oracle_dmul, oracle_hss, oracle_mul, oracle_sse, HssConfig, MulConfig,
};
use crate::pen::{
    gen_cpy, gen_pe, gen_pen, gen_pev, gen_rcpy, oracle_pe, oracle_pen, oracle_pev, validate_pen,
    FreeGreenCount, PenConfig, VocabMode,
};
use crate::perm::{
    gen_pem, gen_per, gen_perm, oracle_pem, oracle_per, oracle_perm, split_perm_input,
    validate_perm, DistractorKind, PermConfig, PermInstance,
};
use crate::prompts::{render_prompt, PromptOptions, PromptRecord, Setting};
use crate::sample::{Sample, TaskId};
use crate::seed::{derive_seed, rng_for};
use crate::solver::SearchConfig;
use crate::word::Seq;
use rand::seq::SliceRandom;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Every tunable the tool exposes, one nested struct per family plus the
/// program-search settings. Encodes to and from flat `section.key=value`
/// entries so a manifest can echo the full configuration.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SuiteConfig {
    pub pen: PenConfig,
    pub perm: PermConfig,
    pub hss: HssConfig,
    pub mul: MulConfig,
    pub search: SearchConfig,
}

fn range_entries<T: std::fmt::Display>(
    out: &mut BTreeMap<String, String>,
    key_min: &str,
    key_max: &str,
    range: &std::ops::RangeInclusive<T>,
) {
    out.insert(key_min.to_string(), range.start().to_string());
    out.insert(key_max.to_string(), range.end().to_string());
}

impl SuiteConfig {
    /// Every setting as `section.key=value` strings, alphabetically keyed.
    pub fn to_flat(&self) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        range_entries(
            &mut out,
            "pen.chain_len_min",
            "pen.chain_len_max",
            &self.pen.chain_len_range,
        );
        out.insert(
            "pen.digits".to_string(),
            self.pen.digits.iter().map(u8::to_string).collect::<Vec<_>>().join(","),
        );
        out.insert("pen.traps".to_string(), self.pen.traps.to_string());
        out.insert(
            "pen.free_greens".to_string(),
            match self.pen.free_green_count {
                FreeGreenCount::Auto => "auto".to_string(),
                FreeGreenCount::Fixed(n) => n.to_string(),
            },
        );
        out.insert(
            "pen.vocab".to_string(),
            match self.pen.vocab_mode {
                VocabMode::Synthetic => "synthetic".to_string(),
                VocabMode::Natural => "natural".to_string(),
            },
        );
        range_entries(
            &mut out,
            "perm.chain_len_min",
            "perm.chain_len_max",
            &self.perm.chain_len_range,
        );
        out.insert(
            "perm.distractors".to_string(),
            self.perm
                .distractors
                .iter()
                .map(|d| distractor_name(*d))
                .collect::<Vec<_>>()
                .join(","),
        );
        out.insert("perm.digit".to_string(), self.perm.digit.to_string());
        range_entries(&mut out, "hss.len_min", "hss.len_max", &self.hss.length_range);
        range_entries(
            &mut out,
            "hss.value_min",
            "hss.value_max",
            &self.hss.value_range,
        );
        range_entries(
            &mut out,
            "mul.digits_a_min",
            "mul.digits_a_max",
            &self.mul.digits_a_range,
        );
        range_entries(
            &mut out,
            "mul.digits_b_min",
            "mul.digits_b_max",
            &self.mul.digits_b_range,
        );
        range_entries(
            &mut out,
            "mul.digits_min",
            "mul.digits_max",
            &self.mul.digits_range,
        );
        range_entries(
            &mut out,
            "mul.addends_min",
            "mul.addends_max",
            &self.mul.addend_count_range,
        );
        range_entries(
            &mut out,
            "mul.addend_digits_min",
            "mul.addend_digits_max",
            &self.mul.addend_digits_range,
        );
        out.insert(
            "search.restarts".to_string(),
            self.search.restarts.to_string(),
        );
        out.insert(
            "search.steps".to_string(),
            self.search.steps_per_restart.to_string(),
        );
        out.insert(
            "search.accept_equal".to_string(),
            self.search.accept_equal.to_string(),
        );
        out.insert(
            "search.weight".to_string(),
            self.search.repeat_penalty_weight.to_string(),
        );
        out
    }

    /// Apply one `key=value` entry; `line` is echoed into errors.
    pub fn apply_entry(&mut self, line: usize, key: &str, value: &str) -> Result<()> {
        let bad = |reason: String| Error::BadConfig { line, reason };
        let parse_usize = |v: &str| {
            v.parse::<usize>()
                .map_err(|_| bad(format!("{key}: not a non-negative integer: {v:?}")))
        };
        let parse_u64 = |v: &str| {
            v.parse::<u64>()
                .map_err(|_| bad(format!("{key}: not a non-negative integer: {v:?}")))
        };
        let parse_bool = |v: &str| match v {
            "true" => Ok(true),
            "false" => Ok(false),
            _ => Err(bad(format!("{key}: expected true or false, got {v:?}"))),
        };
        match key {
            "pen.chain_len_min" => {
                self.pen.chain_len_range =
                    parse_usize(value)?..=*self.pen.chain_len_range.end();
            }
            "pen.chain_len_max" => {
                self.pen.chain_len_range =
                    *self.pen.chain_len_range.start()..=parse_usize(value)?;
            }
            "pen.digits" => {
                let mut digits = Vec::new();
                for part in value.split(',').filter(|p| !p.is_empty()) {
                    let d = part
                        .parse::<u8>()
                        .ok()
                        .filter(|d| *d <= 9)
                        .ok_or_else(|| bad(format!("{key}: not a digit: {part:?}")))?;
                    digits.push(d);
                }
                self.pen.digits = digits;
            }
            "pen.traps" => self.pen.traps = parse_bool(value)?,
            "pen.free_greens" => {
                self.pen.free_green_count = if value == "auto" {
                    FreeGreenCount::Auto
                } else {
                    FreeGreenCount::Fixed(parse_usize(value)?)
                };
            }
            "pen.vocab" => {
                self.pen.vocab_mode = match value {
                    "synthetic" => VocabMode::Synthetic,
                    "natural" => VocabMode::Natural,
                    _ => return Err(bad(format!("{key}: unknown vocabulary {value:?}"))),
                };
            }
            "perm.chain_len_min" => {
                self.perm.chain_len_range =
                    parse_usize(value)?..=*self.perm.chain_len_range.end();
            }
            "perm.chain_len_max" => {
                self.perm.chain_len_range =
                    *self.perm.chain_len_range.start()..=parse_usize(value)?;
            }
            "perm.distractors" => {
                let mut kinds = Vec::new();
                for part in value.split(',').filter(|p| !p.is_empty()) {
                    kinds.push(
                        parse_distractor(part)
                            .ok_or_else(|| bad(format!("{key}: unknown decoy {part:?}")))?,
                    );
                }
                self.perm.distractors = kinds;
            }
            "perm.digit" => {
                self.perm.digit = value
                    .parse::<u8>()
                    .ok()
                    .filter(|d| *d <= 9)
                    .ok_or_else(|| bad(format!("{key}: not a digit: {value:?}")))?;
            }
            "hss.len_min" => {
                self.hss.length_range = parse_usize(value)?..=*self.hss.length_range.end();
            }
            "hss.len_max" => {
                self.hss.length_range = *self.hss.length_range.start()..=parse_usize(value)?;
            }
            "hss.value_min" => {
                self.hss.value_range = parse_u64(value)?..=*self.hss.value_range.end();
            }
            "hss.value_max" => {
                self.hss.value_range = *self.hss.value_range.start()..=parse_u64(value)?;
            }
            "mul.digits_a_min" => {
                self.mul.digits_a_range = parse_usize(value)?..=*self.mul.digits_a_range.end();
            }
            "mul.digits_a_max" => {
                self.mul.digits_a_range = *self.mul.digits_a_range.start()..=parse_usize(value)?;
            }
            "mul.digits_b_min" => {
                self.mul.digits_b_range = parse_usize(value)?..=*self.mul.digits_b_range.end();
            }
            "mul.digits_b_max" => {
                self.mul.digits_b_range = *self.mul.digits_b_range.start()..=parse_usize(value)?;
            }
            "mul.digits_min" => {
                self.mul.digits_range = parse_usize(value)?..=*self.mul.digits_range.end();
            }
            "mul.digits_max" => {
                self.mul.digits_range = *self.mul.digits_range.start()..=parse_usize(value)?;
            }
            "mul.addends_min" => {
                self.mul.addend_count_range =
                    parse_usize(value)?..=*self.mul.addend_count_range.end();
            }
            "mul.addends_max" => {
                self.mul.addend_count_range =
                    *self.mul.addend_count_range.start()..=parse_usize(value)?;
            }
            "mul.addend_digits_min" => {
                self.mul.addend_digits_range =
                    parse_usize(value)?..=*self.mul.addend_digits_range.end();
            }
            "mul.addend_digits_max" => {
                self.mul.addend_digits_range =
                    *self.mul.addend_digits_range.start()..=parse_usize(value)?;
            }
            "search.restarts" => self.search.restarts = parse_usize(value)?,
            "search.steps" => self.search.steps_per_restart = parse_usize(value)?,
            "search.accept_equal" => self.search.accept_equal = parse_bool(value)?,
            "search.weight" => {
                self.search.repeat_penalty_weight = value
                    .parse::<f64>()
                    .map_err(|_| bad(format!("{key}: not a number: {value:?}")))?;
            }
            _ => return Err(bad(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Parse a whole config file body: one `key=value` per line, `#`
    /// comments and blank lines ignored.
    pub fn load_flat(&mut self, text: &str) -> Result<()> {
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, value) = trimmed.split_once('=').ok_or(Error::BadConfig {
                line,
                reason: format!("expected key=value, got {trimmed:?}"),
            })?;
            self.apply_entry(line, key.trim(), value.trim())?;
        }
        Ok(())
    }
}

fn distractor_name(kind: DistractorKind) -> &'static str {
    match kind {
        DistractorKind::Cycle => "cycle",
        DistractorKind::SelfLoop => "self-loop",
        DistractorKind::DeadEnd => "dead-end",
    }
}

fn parse_distractor(name: &str) -> Option<DistractorKind> {
    match name {
        "cycle" => Some(DistractorKind::Cycle),
        "self-loop" => Some(DistractorKind::SelfLoop),
        "dead-end" => Some(DistractorKind::DeadEnd),
        _ => None,
    }
}

/// Generate one sample of any task id.
pub fn generate_sample(task: TaskId, config: &SuiteConfig, seed: u64) -> Result<Sample> {
    match task {
        TaskId::Pen => gen_pen(&config.pen, seed),
        TaskId::Cpy => gen_cpy(&config.pen, seed),
        TaskId::Rcpy => gen_rcpy(&config.pen, seed),
        TaskId::Pe => gen_pe(&config.pen, seed),
        TaskId::Pev => gen_pev(&config.pen, seed),
        TaskId::Perm => gen_perm(&config.perm, seed),
        TaskId::Per => gen_per(&config.perm, seed),
        TaskId::Pem => gen_pem(&config.perm, seed),
        TaskId::Hss => gen_hss(&config.hss, seed),
        TaskId::Sse => gen_sse(&config.hss, seed),
        TaskId::Mul => gen_mul(&config.mul, seed),
        TaskId::Dmul => gen_dmul(&config.mul, seed),
        TaskId::Add => gen_add(&config.mul, seed),
    }
}

/// Recompute the answer for any task id from the input text alone.
pub fn expected_target(task: TaskId, input: &str) -> Result<String> {
    let join = |tokens: Vec<String>| tokens.join(" ");
    match task {
        TaskId::Pen => Ok(join(oracle_pen(&Seq::parse(input)?)?)),
        TaskId::Pe => Ok(join(oracle_pe(&Seq::parse(input)?)?)),
        TaskId::Pev => Ok(join(oracle_pev(&Seq::parse(input)?)?)),
        TaskId::Cpy => Ok(join(
            input.split_whitespace().map(str::to_string).collect(),
        )),
        TaskId::Rcpy => Ok(join(
            input.split_whitespace().rev().map(str::to_string).collect(),
        )),
        TaskId::Perm => {
            let (list, start) = split_perm_input(input)?;
            Ok(join(oracle_perm(&list, &start)?))
        }
        TaskId::Per => {
            let (list, start) = split_perm_input(input)?;
            Ok(join(oracle_per(&list, &start)?))
        }
        TaskId::Pem => {
            let (list, start) = split_perm_input(input)?;
            Ok(join(oracle_pem(&list, &start)?))
        }
        TaskId::Hss => Ok(oracle_hss(&numbers_from_input(input)?).to_string()),
        TaskId::Sse => Ok(oracle_sse(&numbers_from_input(input)?)),
        TaskId::Mul => {
            let ops = two_operands(task, input)?;
            Ok(oracle_mul(ops[0], ops[1]).to_string())
        }
        TaskId::Dmul => {
            let ops = two_operands(task, input)?;
            let d = u8::try_from(ops[1]).ok().filter(|d| *d <= 9).ok_or(
                Error::MalformedRecord {
                    line: 0,
                    reason: format!("second factor must be a single digit, got {}", ops[1]),
                },
            )?;
            Ok(oracle_dmul(ops[0], d).to_string())
        }
        TaskId::Add => Ok(oracle_add(&operands_from_input(input)?).to_string()),
    }
}

fn two_operands(task: TaskId, input: &str) -> Result<Vec<u64>> {
    let ops = operands_from_input(input)?;
    if ops.len() != 2 {
        return Err(Error::MalformedRecord {
            line: 0,
            reason: format!("{task} input needs exactly two operands, got {}", ops.len()),
        });
    }
    Ok(ops)
}

/// Check one sample: recompute its target and, for the structured word
/// tasks, run the family validator. Returns human-readable findings; an
/// empty list means the sample is clean.
pub fn validate_sample(sample: &Sample) -> Result<Vec<String>> {
    let mut findings = Vec::new();
    let expected = expected_target(sample.task, &sample.input)?;
    if expected != sample.target {
        findings.push(format!(
            "target mismatch: expected {expected:?}, found {:?}",
            sample.target
        ));
    }
    match sample.task {
        TaskId::Pen | TaskId::Pe | TaskId::Pev => {
            let seq = Seq::parse(&sample.input)?;
            findings.extend(validate_pen(&seq).into_iter().map(|v| v.to_string()));
        }
        TaskId::Perm | TaskId::Per | TaskId::Pem => {
            let (list, start) = split_perm_input(&sample.input)?;
            let instance: Option<PermInstance> = sample
                .meta
                .get("instance")
                .and_then(|v| serde_json::from_value(v.clone()).ok());
            findings.extend(
                validate_perm(&list, &start, instance.as_ref())
                    .into_iter()
                    .map(|v| v.to_string()),
            );
        }
        _ => {}
    }
    Ok(findings)
}

fn task_seed(master: u64, task: TaskId, index: u64) -> u64 {
    derive_seed(derive_seed(master, task.seed_namespace()), index)
}

/// Generate `n` samples of one task. Work is sharded across cores; the
/// output order and content depend only on the seed.
pub fn generate_task(
    task: TaskId,
    config: &SuiteConfig,
    master: u64,
    n: usize,
) -> Result<Vec<Sample>> {
    (0..n as u64)
        .into_par_iter()
        .map(|i| generate_sample(task, config, task_seed(master, task, i)))
        .collect()
}

/// Parse a mix description like `pen=5,cpy=2` into per-task counts.
pub fn parse_mix(text: &str) -> Result<Vec<(TaskId, usize)>> {
    let mut out = Vec::new();
    for part in text.split(',').filter(|p| !p.is_empty()) {
        let (name, count) = part.split_once('=').ok_or_else(|| {
            Error::malformed_token(part, "expected task=count")
        })?;
        let task: TaskId = name.trim().parse()?;
        let count = count
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::malformed_token(part, "count is not a non-negative integer"))?;
        if out.iter().any(|(t, _)| *t == task) {
            return Err(Error::malformed_token(part, "task listed twice"));
        }
        out.push((task, count));
    }
    if out.is_empty() {
        return Err(Error::infeasible("mix lists no tasks"));
    }
    Ok(out)
}

/// Generate a mixed dataset: each task draws from its own seed stream (the
/// same stream single-task generation uses), then the combined list is
/// shuffled once under the master seed.
pub fn generate_mix(
    mix: &[(TaskId, usize)],
    config: &SuiteConfig,
    master: u64,
) -> Result<Vec<Sample>> {
    let mut samples = Vec::new();
    for (task, n) in mix {
        samples.extend(generate_task(*task, config, master, *n)?);
    }
    let mut rng = rng_for(master, 0);
    samples.shuffle(&mut rng);
    Ok(samples)
}

/// How many shots and queries a prompt set uses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromptPlan {
    pub setting: Setting,
    pub task: TaskId,
    /// Worked examples per prompt; `None` uses the setting's default.
    pub shots: Option<usize>,
    /// Number of prompts (one query sample each).
    pub count: usize,
    /// Draw shot samples from a trap-free generator.
    pub traps_removed: bool,
}

/// Build `plan.count` prompt records. Shots are drawn once from a stream
/// disjoint from the query stream and shared by every record.
pub fn build_prompts(
    plan: &PromptPlan,
    config: &SuiteConfig,
    master: u64,
) -> Result<Vec<PromptRecord>> {
    if plan.task != TaskId::Pen && plan.task != TaskId::Perm {
        return Err(Error::UnsupportedCombination {
            setting: plan.setting.name().to_string(),
            task: plan.task.name().to_string(),
        });
    }
    let shots = plan.shots.unwrap_or_else(|| plan.setting.default_shots());
    let mut shot_config = config.clone();
    if plan.traps_removed {
        shot_config.pen.traps = false;
    }
    let task_master = derive_seed(master, plan.task.seed_namespace());
    let query_root = derive_seed(task_master, 0);
    let shot_root = derive_seed(task_master, 1);
    let shot_samples: Vec<Sample> = (0..shots as u64)
        .map(|j| generate_sample(plan.task, &shot_config, derive_seed(shot_root, j)))
        .collect::<Result<_>>()?;
    let options = PromptOptions {
        traps_removed: plan.traps_removed,
    };
    (0..plan.count as u64)
        .map(|i| {
            let query = generate_sample(plan.task, config, derive_seed(query_root, i))?;
            let prompt = render_prompt(plan.setting, &shot_samples, &query, &options)?;
            Ok(PromptRecord {
                prompt,
                gold: query.target,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_task_generates_and_revalidates() {
        let config = SuiteConfig::default();
        for task in TaskId::ALL {
            for seed in 0..5 {
                let sample = generate_sample(task, &config, seed).unwrap();
                assert_eq!(sample.task, task);
                assert_eq!(
                    expected_target(task, &sample.input).unwrap(),
                    sample.target,
                    "{task} seed {seed}"
                );
                assert!(
                    validate_sample(&sample).unwrap().is_empty(),
                    "{task} seed {seed}"
                );
            }
        }
    }

    #[test]
    fn corrupted_target_is_flagged() {
        let config = SuiteConfig::default();
        let mut sample = generate_sample(TaskId::Hss, &config, 3).unwrap();
        sample.target.push('7');
        let findings = validate_sample(&sample).unwrap();
        assert_eq!(findings.len(), 1);
        assert!(findings[0].contains("target mismatch"));
    }

    #[test]
    fn flat_config_round_trips() {
        let mut config = SuiteConfig::default();
        config.pen.traps = false;
        config.pen.chain_len_range = 4..=9;
        config.perm.digit = 3;
        config.search.restarts = 17;
        let flat = config.to_flat();
        assert_eq!(flat["pen.traps"], "false");
        assert_eq!(flat["pen.chain_len_max"], "9");

        let mut rebuilt = SuiteConfig::default();
        for (key, value) in &flat {
            rebuilt.apply_entry(0, key, value).unwrap();
        }
        assert_eq!(rebuilt, config);
    }

    #[test]
    fn config_file_text_round_trips() {
        let config = SuiteConfig::default();
        let text = config
            .to_flat()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join("\n");
        let mut rebuilt = SuiteConfig::default();
        rebuilt
            .load_flat(&format!("# header comment\n\n{text}\n"))
            .unwrap();
        assert_eq!(rebuilt, config);
    }

    #[test]
    fn unknown_and_malformed_config_entries_are_rejected() {
        let mut config = SuiteConfig::default();
        let err = config.load_flat("pen.traps=false\nmystery.key=1\n").unwrap_err();
        match err {
            Error::BadConfig { line, reason } => {
                assert_eq!(line, 2);
                assert!(reason.contains("mystery.key"));
            }
            other => panic!("unexpected error {other:?}"),
        }
        assert!(config.load_flat("pen.traps").is_err());
        assert!(config.load_flat("pen.traps=maybe").is_err());
        assert!(config.load_flat("perm.digit=12").is_err());
    }

    #[test]
    fn mix_parsing() {
        let mix = parse_mix("pen=5,cpy=2").unwrap();
        assert_eq!(mix, vec![(TaskId::Pen, 5), (TaskId::Cpy, 2)]);
        assert!(parse_mix("pen=5,pen=2").is_err());
        assert!(parse_mix("pen").is_err());
        assert!(parse_mix("pen=x").is_err());
        assert!(parse_mix("").is_err());
        assert!(parse_mix("xyz=1").is_err());
    }

    #[test]
    fn mixed_generation_is_deterministic_and_interleaved() {
        let config = SuiteConfig::default();
        let mix = parse_mix("pen=5,cpy=2").unwrap();
        let a = generate_mix(&mix, &config, 7).unwrap();
        let b = generate_mix(&mix, &config, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 7);
        assert_eq!(a.iter().filter(|s| s.task == TaskId::Pen).count(), 5);
        assert_eq!(a.iter().filter(|s| s.task == TaskId::Cpy).count(), 2);
        // The shuffle should not leave the blocks in generation order.
        let tasks: Vec<TaskId> = a.iter().map(|s| s.task).collect();
        let blocked: Vec<TaskId> = [TaskId::Pen; 5]
            .into_iter()
            .chain([TaskId::Cpy; 2])
            .collect();
        assert_ne!(tasks, blocked);

        // Per-task streams line up with single-task generation.
        let solo = generate_task(TaskId::Pen, &config, 7, 5).unwrap();
        for sample in solo {
            assert!(a.contains(&sample));
        }
    }

    #[test]
    fn prompt_sets_share_shots_and_vary_queries() {
        let config = SuiteConfig::default();
        let plan = PromptPlan {
            setting: Setting::FewShot,
            task: TaskId::Pen,
            shots: None,
            count: 3,
            traps_removed: false,
        };
        let records = build_prompts(&plan, &config, 11).unwrap();
        assert_eq!(records.len(), 3);
        for record in &records {
            assert_eq!(record.prompt.matches("Example: ").count(), 8);
        }
        // Same shot block, different queries.
        let head = |r: &PromptRecord| r.prompt.split("Your question:").next().unwrap().to_string();
        assert_eq!(head(&records[0]), head(&records[1]));
        assert_ne!(records[0].gold, records[1].gold);

        let again = build_prompts(&plan, &config, 11).unwrap();
        assert_eq!(records, again);
    }

    #[test]
    fn trap_free_shots_for_narrated_settings() {
        let config = SuiteConfig::default();
        assert!(config.pen.traps);
        let plan = PromptPlan {
            setting: Setting::FewShotCot,
            task: TaskId::Pen,
            shots: Some(2),
            count: 1,
            traps_removed: true,
        };
        let records = build_prompts(&plan, &config, 11).unwrap();
        assert_eq!(records.len(), 1);
        assert!(records[0].prompt.contains("The leftmost word is"));

        // Without the flag the same plan keeps trapped shots and still renders.
        let trapped = PromptPlan {
            traps_removed: false,
            ..plan
        };
        assert!(build_prompts(&trapped, &config, 11).is_ok());
    }

    #[test]
    fn prompt_plan_rejects_unsupported_tasks() {
        let plan = PromptPlan {
            setting: Setting::FewShot,
            task: TaskId::Mul,
            shots: None,
            count: 1,
            traps_removed: false,
        };
        let err = build_prompts(&plan, &SuiteConfig::default(), 1).unwrap_err();
        assert!(matches!(err, Error::UnsupportedCombination { .. }));
    }
}
