//! Chain-permutation task: follow a word chain hidden in a shuffled list,
//! then emit it reversed, each word annotated with a running count.
//!
//! Words have the shape `c_j 0 c_{j+1}`, so each word's suffix names the
//! prefix of its successor. The input lists the shuffled words, a literal
//! ` | ` separator, and the start word. Step `j`'s annotation is
//! `j * left(j)`, where `left(j)` counts the hops so far that landed at a
//! strictly smaller list position. Decoy words (a closed cycle, a self-loop,
//! a dead end) are unreachable from the chain.

use crate::error::{Error, Result};
use crate::sample::{Sample, TaskId};
use crate::seed::rng_for;
use crate::word::{find_matches_from, parse_word, Seq, TwoGram, Word};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::ops::RangeInclusive;

/// Shape of one decoy structure mixed into the shuffled list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DistractorKind {
    /// A closed ring of 2-8 words matching each other.
    Cycle,
    /// One word whose prefix and suffix coincide (`vu0vu`).
    SelfLoop,
    /// One word whose suffix matches nothing (`gy0do`).
    DeadEnd,
}

/// Generation settings for the chain-permutation family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PermConfig {
    /// Inclusive range for the number of matches `L` after the start word.
    pub chain_len_range: RangeInclusive<usize>,
    /// Decoy structures to add (a multiset; duplicates allowed).
    pub distractors: Vec<DistractorKind>,
    /// Fixed middle digit of every word.
    pub digit: u8,
}

impl Default for PermConfig {
    fn default() -> Self {
        PermConfig {
            chain_len_range: 4..=8,
            distractors: vec![
                DistractorKind::Cycle,
                DistractorKind::SelfLoop,
                DistractorKind::DeadEnd,
            ],
            digit: 0,
        }
    }
}

impl PermConfig {
    pub fn validate(&self) -> Result<()> {
        if self.chain_len_range.is_empty() {
            return Err(Error::infeasible("empty chain length range"));
        }
        if *self.chain_len_range.start() < 1 {
            return Err(Error::infeasible("chain length must be at least 1"));
        }
        if self.digit > 9 {
            return Err(Error::infeasible("middle digit must be 0-9"));
        }
        Ok(())
    }
}

/// Structural description of one generated instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PermInstance {
    /// Chain grams `c_0..c_{L+1}`; word `W_j = c_j d c_{j+1}`.
    pub chain_nodes: Vec<String>,
    /// `positions[j]` = slot of `W_j` in the shuffled list.
    pub positions: Vec<usize>,
    pub distractor_words: Vec<String>,
}

impl PermInstance {
    pub fn chain_len(&self) -> usize {
        self.positions.len().saturating_sub(1)
    }

    pub fn chain_word(&self, j: usize, digit: u8) -> String {
        format!("{}{}{}", self.chain_nodes[j], digit, self.chain_nodes[j + 1])
    }
}

/// Running counts along a matched chain, derived from list positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multicount {
    /// `left[j]` = hops among the first `j` that landed further left.
    pub left: Vec<usize>,
    /// `values[j] = j * left[j]`, the annotation of step `j`.
    pub values: Vec<usize>,
}

/// Compute the running counts for a chain laid out at `positions`.
pub fn multicount(positions: &[usize]) -> Multicount {
    let mut left = Vec::with_capacity(positions.len());
    let mut values = Vec::with_capacity(positions.len());
    let mut l = 0usize;
    for j in 0..positions.len() {
        if j > 0 && positions[j] < positions[j - 1] {
            l += 1;
        }
        left.push(l);
        values.push(j * l);
    }
    Multicount { left, values }
}

/// One structural defect found by [`validate_perm`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermViolation {
    DuplicateToken { token: String },
    StartMissing { word: String },
    AmbiguousStep { word: String, positions: Vec<usize> },
    CycleDetected { position: usize },
    ChainMismatch { step: usize, expected: String, found: String },
    WrongLength { expected: usize, found: usize },
    TerminalReachable { suffix: String, positions: Vec<usize> },
    DistractorReachable { word: String },
}

impl fmt::Display for PermViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermViolation::DuplicateToken { token } => write!(f, "duplicate token {token:?}"),
            PermViolation::StartMissing { word } => {
                write!(f, "start word {word:?} not in the list")
            }
            PermViolation::AmbiguousStep { word, positions } => {
                write!(f, "matching from {word:?} is ambiguous: positions {positions:?}")
            }
            PermViolation::CycleDetected { position } => {
                write!(f, "matching revisits position {position}")
            }
            PermViolation::ChainMismatch { step, expected, found } => {
                write!(f, "step {step} reached {found:?}, expected {expected:?}")
            }
            PermViolation::WrongLength { expected, found } => {
                write!(f, "chain has {found} matches, expected {expected}")
            }
            PermViolation::TerminalReachable { suffix, positions } => {
                write!(f, "terminal suffix {suffix:?} still matches positions {positions:?}")
            }
            PermViolation::DistractorReachable { word } => {
                write!(f, "decoy {word:?} is reachable from the chain")
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Input plumbing and oracles
// ---------------------------------------------------------------------------

/// Split a rendered input of the form `words | start` into the word list and
/// the start word.
pub fn split_perm_input(input: &str) -> Result<(Seq, Word)> {
    let (list, start) = input.rsplit_once(" | ").ok_or(Error::MalformedRecord {
        line: 0,
        reason: "missing \" | \" separator before the start word".to_string(),
    })?;
    Ok((Seq::parse(list)?, parse_word(start.trim())?))
}

/// Walk the chain from `start`, returning the visited list positions
/// (`W_0` first). Errors on a missing start, ambiguity, or a revisit.
fn walk_positions(seq: &Seq, start: &Word) -> Result<Vec<usize>> {
    let p0 = seq
        .position_of(start)
        .ok_or_else(|| Error::StartNotFound {
            word: start.render(),
        })?;
    let mut positions = vec![p0];
    let mut visited: HashSet<usize> = HashSet::from([p0]);
    let mut current = p0;
    loop {
        let cands = find_matches_from(seq, current);
        match cands.len() {
            0 => break,
            1 => {
                let q = cands[0];
                if !visited.insert(q) {
                    return Err(Error::MalformedRecord {
                        line: 0,
                        reason: format!("matching chain revisits position {q}"),
                    });
                }
                positions.push(q);
                current = q;
            }
            _ => {
                return Err(Error::AmbiguousMatch {
                    word: seq.words()[current].render(),
                    positions: cands,
                })
            }
        }
    }
    Ok(positions)
}

fn annotated(seq: &Seq, positions: &[usize]) -> Vec<String> {
    let counts = multicount(positions);
    positions
        .iter()
        .zip(&counts.values)
        .map(|(&p, v)| format!("{}.{v}", seq.words()[p].render()))
        .collect()
}

/// Reversed chain, each word annotated with its running-count value.
pub fn oracle_perm(seq: &Seq, start: &Word) -> Result<Vec<String>> {
    let positions = walk_positions(seq, start)?;
    let mut out = annotated(seq, &positions);
    out.reverse();
    Ok(out)
}

/// Reversed chain without annotations.
pub fn oracle_per(seq: &Seq, start: &Word) -> Result<Vec<String>> {
    let positions = walk_positions(seq, start)?;
    Ok(positions
        .iter()
        .rev()
        .map(|&p| seq.words()[p].render())
        .collect())
}

/// Forward chain with annotations.
pub fn oracle_pem(seq: &Seq, start: &Word) -> Result<Vec<String>> {
    let positions = walk_positions(seq, start)?;
    Ok(annotated(seq, &positions))
}

/// Strip a `.value` annotation from a token, returning the bare word part.
pub fn strip_value(token: &str) -> &str {
    match token.rsplit_once('.') {
        Some((word, value)) if !value.is_empty() && value.chars().all(|c| c.is_ascii_digit()) => {
            word
        }
        _ => token,
    }
}

/// Split a token into word part and numeric annotation, if present.
pub fn parse_annotated(token: &str) -> (&str, Option<usize>) {
    match token.rsplit_once('.') {
        Some((word, value)) if !value.is_empty() && value.chars().all(|c| c.is_ascii_digit()) => {
            (word, value.parse().ok())
        }
        _ => (token, None),
    }
}

// ---------------------------------------------------------------------------
// Validator
// ---------------------------------------------------------------------------

/// Check a word list against the chain contract. With an expected instance
/// the chain must reproduce it exactly, terminate at its terminal word, and
/// keep every decoy unreachable; without one, only walkability is checked.
pub fn validate_perm(
    seq: &Seq,
    start: &Word,
    expected: Option<&PermInstance>,
) -> Vec<PermViolation> {
    let mut out = Vec::new();

    let mut counts: std::collections::BTreeMap<String, usize> = std::collections::BTreeMap::new();
    for w in seq.words() {
        *counts.entry(w.render()).or_insert(0) += 1;
    }
    for (token, n) in counts {
        if n > 1 {
            out.push(PermViolation::DuplicateToken { token });
        }
    }

    let Some(p0) = seq.position_of(start) else {
        out.push(PermViolation::StartMissing {
            word: start.render(),
        });
        return out;
    };

    let mut positions = vec![p0];
    let mut visited: HashSet<usize> = HashSet::from([p0]);
    let mut current = p0;
    loop {
        let cands = find_matches_from(seq, current);
        if cands.is_empty() {
            break;
        }
        if cands.len() > 1 {
            out.push(PermViolation::AmbiguousStep {
                word: seq.words()[current].render(),
                positions: cands,
            });
            break;
        }
        let q = cands[0];
        if !visited.insert(q) {
            out.push(PermViolation::CycleDetected { position: q });
            break;
        }
        positions.push(q);
        current = q;
    }

    let Some(inst) = expected else {
        return out;
    };

    let l = inst.chain_len();
    if positions.len() != l + 1 {
        out.push(PermViolation::WrongLength {
            expected: l,
            found: positions.len() - 1,
        });
    }
    for (j, &p) in positions.iter().enumerate() {
        let found = seq.words()[p].render();
        let expected_prefix = inst.chain_nodes.get(j);
        let expected_suffix = inst.chain_nodes.get(j + 1);
        let matches_expected = match (expected_prefix, expected_suffix) {
            (Some(pre), Some(suf)) => {
                seq.words()[p].prefix_key() == pre && seq.words()[p].suffix_key() == suf
            }
            _ => false,
        };
        if !matches_expected {
            out.push(PermViolation::ChainMismatch {
                step: j,
                expected: match (expected_prefix, expected_suffix) {
                    (Some(pre), Some(suf)) => format!("{pre}?{suf}"),
                    _ => "<none>".to_string(),
                },
                found,
            });
        }
    }

    // The intended terminal word must match nothing, even if the walk above
    // ran past it through an interloper.
    if let Some(terminal_suffix) = inst.chain_nodes.last() {
        let reachable: Vec<usize> = seq
            .words()
            .iter()
            .enumerate()
            .filter(|(_, w)| w.prefix_key() == terminal_suffix)
            .map(|(p, _)| p)
            .collect();
        if !reachable.is_empty() {
            out.push(PermViolation::TerminalReachable {
                suffix: terminal_suffix.clone(),
                positions: reachable,
            });
        }
    }

    let chain_suffixes: HashSet<&str> = inst
        .chain_nodes
        .iter()
        .skip(1)
        .map(String::as_str)
        .collect();
    for d in &inst.distractor_words {
        if let Ok(w) = parse_word(d) {
            if chain_suffixes.contains(w.prefix_key()) {
                out.push(PermViolation::DistractorReachable { word: d.clone() });
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

struct Built {
    list: Seq,
    start: Word,
    instance: PermInstance,
    l: usize,
}

fn gram_word(prefix: &str, digit: u8, suffix: &str) -> Word {
    Word::chain(
        prefix.parse::<TwoGram>().expect("pool gram"),
        digit,
        suffix.parse::<TwoGram>().expect("pool gram"),
    )
}

fn build_instance(config: &PermConfig, rng: &mut impl Rng) -> Result<Built> {
    let l = rng.gen_range(*config.chain_len_range.start()..=*config.chain_len_range.end());
    let cycle_lens: Vec<usize> = config
        .distractors
        .iter()
        .map(|d| match d {
            DistractorKind::Cycle => rng.gen_range(2..=8),
            DistractorKind::SelfLoop => 1,
            DistractorKind::DeadEnd => 2,
        })
        .collect();
    let need = l + 2 + cycle_lens.iter().sum::<usize>();
    if need > 676 {
        return Err(Error::infeasible(format!(
            "vocabulary exhausted: {need} grams needed, 676 available"
        )));
    }
    let mut grams: Vec<String> = (0..676).map(|i| TwoGram::from_index(i).to_string()).collect();
    grams.shuffle(rng);
    let mut grams = grams.into_iter();
    let mut take = |n: usize| -> Vec<String> { grams.by_ref().take(n).collect() };

    let chain_nodes = take(l + 2);
    let chain_words: Vec<Word> = (0..=l)
        .map(|j| gram_word(&chain_nodes[j], config.digit, &chain_nodes[j + 1]))
        .collect();

    let mut distractor_words: Vec<Word> = Vec::new();
    for (kind, &n) in config.distractors.iter().zip(&cycle_lens) {
        match kind {
            DistractorKind::Cycle => {
                let ring = take(n);
                for i in 0..n {
                    distractor_words.push(gram_word(&ring[i], config.digit, &ring[(i + 1) % n]));
                }
            }
            DistractorKind::SelfLoop => {
                let g = take(1);
                distractor_words.push(gram_word(&g[0], config.digit, &g[0]));
            }
            DistractorKind::DeadEnd => {
                let g = take(2);
                distractor_words.push(gram_word(&g[0], config.digit, &g[1]));
            }
        }
    }

    let mut all: Vec<Word> = chain_words.iter().chain(&distractor_words).cloned().collect();
    all.shuffle(rng);
    let list = Seq::new(all);
    let positions: Vec<usize> = chain_words
        .iter()
        .map(|w| list.position_of(w).expect("chain word placed"))
        .collect();

    Ok(Built {
        start: chain_words[0].clone(),
        instance: PermInstance {
            chain_nodes,
            positions,
            distractor_words: distractor_words.iter().map(Word::render).collect(),
        },
        list,
        l,
    })
}

fn gen_built(config: &PermConfig, seed: u64) -> Result<Built> {
    config.validate()?;
    let mut last_err = None;
    for attempt in 0..32u64 {
        let mut rng = rng_for(seed, attempt);
        let built = build_instance(config, &mut rng)?;
        let violations = validate_perm(&built.list, &built.start, Some(&built.instance));
        if violations.is_empty() {
            return Ok(built);
        }
        last_err = Some(Error::infeasible(format!(
            "generated list failed validation: {}",
            violations[0]
        )));
    }
    Err(last_err.unwrap_or_else(|| Error::infeasible("generation kept producing violations")))
}

fn render_input(built: &Built) -> String {
    format!("{} | {}", built.list.render(), built.start.render())
}

fn finish(task: TaskId, built: Built, target: Vec<String>, seed: u64) -> Sample {
    Sample::new(task, render_input(&built), target.join(" "))
        .with_meta("chain_len", built.l as u64)
        .with_meta("seed", seed)
        .with_meta(
            "instance",
            serde_json::to_value(&built.instance).expect("serializable"),
        )
}

/// Generate a reversed-chain sample with running-count annotations.
pub fn gen_perm(config: &PermConfig, seed: u64) -> Result<Sample> {
    let built = gen_built(config, seed)?;
    let target = oracle_perm(&built.list, &built.start)?;
    Ok(finish(TaskId::Perm, built, target, seed))
}

/// Generate a reversed-chain sample without annotations.
pub fn gen_per(config: &PermConfig, seed: u64) -> Result<Sample> {
    let built = gen_built(config, seed)?;
    let target = oracle_per(&built.list, &built.start)?;
    Ok(finish(TaskId::Per, built, target, seed))
}

/// Generate a forward-chain sample with annotations.
pub fn gen_pem(config: &PermConfig, seed: u64) -> Result<Sample> {
    let built = gen_built(config, seed)?;
    let target = oracle_pem(&built.list, &built.start)?;
    Ok(finish(TaskId::Pem, built, target, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testdata::*;

    fn parts(input: &str) -> (Seq, Word) {
        split_perm_input(input).unwrap()
    }

    #[test]
    fn oracle_perm_goldens() {
        for (input, answer) in [
            (PERM_A_INPUT, PERM_A_ANSWER),
            (PERM_B_INPUT, PERM_B_ANSWER),
            (PERM_C_INPUT, PERM_C_ANSWER),
        ] {
            let (list, start) = parts(input);
            assert_eq!(oracle_perm(&list, &start).unwrap().join(" "), answer);
        }
    }

    #[test]
    fn oracle_per_golden() {
        let (list, start) = parts(PERM_A_INPUT);
        assert_eq!(
            oracle_per(&list, &start).unwrap().join(" "),
            "hy0jm gg0hy vl0gg bn0vl tq0bn pk0tq ar0pk"
        );
    }

    #[test]
    fn oracle_pem_golden() {
        let (list, start) = parts(PERM_A_INPUT);
        assert_eq!(
            oracle_pem(&list, &start).unwrap().join(" "),
            "ar0pk.0 pk0tq.1 tq0bn.2 bn0vl.6 vl0gg.12 gg0hy.20 hy0jm.24"
        );
    }

    #[test]
    fn per_and_pem_mirror_perm() {
        for input in [PERM_A_INPUT, PERM_B_INPUT, PERM_C_INPUT] {
            let (list, start) = parts(input);
            let perm = oracle_perm(&list, &start).unwrap();
            let per = oracle_per(&list, &start).unwrap();
            let pem = oracle_pem(&list, &start).unwrap();
            let stripped: Vec<&str> = perm.iter().map(|t| strip_value(t)).collect();
            assert_eq!(stripped, per);
            let forward: Vec<String> = perm.iter().rev().cloned().collect();
            assert_eq!(forward, pem);
        }
    }

    #[test]
    fn multicount_values_match_definition() {
        // Layout of the first golden: derived by locating each chain word.
        let positions = [10, 2, 11, 9, 8, 1, 13];
        let counts = multicount(&positions);
        assert_eq!(counts.left, vec![0, 1, 1, 2, 3, 4, 4]);
        assert_eq!(counts.values, vec![0, 1, 2, 6, 12, 20, 24]);
    }

    #[test]
    fn multicount_invariants() {
        let counts = multicount(&[3, 7, 2, 9, 1]);
        assert_eq!(counts.values[0], 0);
        for w in counts.values.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn strip_and_parse_annotations() {
        assert_eq!(strip_value("hy0jm.24"), "hy0jm");
        assert_eq!(strip_value("hy0jm"), "hy0jm");
        assert_eq!(parse_annotated("ar0pk.0"), ("ar0pk", Some(0)));
        assert_eq!(parse_annotated("ar0pk"), ("ar0pk", None));
    }

    fn golden_instance() -> PermInstance {
        let (list, start) = parts(PERM_A_INPUT);
        let positions = walk_positions(&list, &start).unwrap();
        let mut chain_nodes: Vec<String> = positions
            .iter()
            .map(|&p| list.words()[p].prefix_key().to_string())
            .collect();
        chain_nodes.push(list.words()[*positions.last().unwrap()].suffix_key().to_string());
        let chain_set: HashSet<usize> = positions.iter().copied().collect();
        let distractor_words: Vec<String> = (0..list.len())
            .filter(|p| !chain_set.contains(p))
            .map(|p| list.words()[p].render())
            .collect();
        PermInstance {
            chain_nodes,
            positions,
            distractor_words,
        }
    }

    #[test]
    fn validator_accepts_golden() {
        let (list, start) = parts(PERM_A_INPUT);
        assert_eq!(validate_perm(&list, &start, None), vec![]);
        let inst = golden_instance();
        assert_eq!(validate_perm(&list, &start, Some(&inst)), vec![]);
    }

    #[test]
    fn validator_flags_reachable_terminal() {
        let inst = golden_instance();
        let extended = PERM_A_INPUT.replace(" | ", " jm0zz | ");
        let (list, start) = parts(&extended);
        let violations = validate_perm(&list, &start, Some(&inst));
        assert!(
            violations
                .iter()
                .any(|v| matches!(v, PermViolation::TerminalReachable { .. })),
            "got {violations:?}"
        );
    }

    #[test]
    fn validator_flags_ambiguous_prefix() {
        let (list, start) = parts("ar0pk pk0tq pk0xx tq0bn | ar0pk");
        let violations = validate_perm(&list, &start, None);
        assert!(violations
            .iter()
            .any(|v| matches!(v, PermViolation::AmbiguousStep { .. })));
    }

    #[test]
    fn validator_flags_missing_start() {
        let (list, _) = parts("ar0pk pk0tq | ar0pk");
        let stray = parse_word("zz9zz").unwrap();
        let violations = validate_perm(&list, &stray, None);
        assert!(matches!(violations[0], PermViolation::StartMissing { .. }));
    }

    fn check_generated(config: &PermConfig, seed: u64) -> Sample {
        let sample = gen_perm(config, seed).unwrap();
        let (list, start) = parts(&sample.input);
        let inst: PermInstance =
            serde_json::from_value(sample.meta["instance"].clone()).unwrap();
        assert_eq!(validate_perm(&list, &start, Some(&inst)), vec![], "seed {seed}");
        assert_eq!(
            oracle_perm(&list, &start).unwrap().join(" "),
            sample.target,
            "seed {seed}"
        );
        sample
    }

    #[test]
    fn generated_instances_are_clean() {
        let config = PermConfig::default();
        for seed in 0..60 {
            let sample = check_generated(&config, seed);
            let inst: PermInstance =
                serde_json::from_value(sample.meta["instance"].clone()).unwrap();
            // Decoys never reach the target.
            for d in &inst.distractor_words {
                assert!(!sample.target.contains(d.as_str()), "seed {seed}");
            }
            // Zero-valued tail tokens = 1 + leading rightward hops.
            let counts = multicount(&inst.positions);
            let leading_right = inst
                .positions
                .windows(2)
                .take_while(|w| w[1] > w[0])
                .count();
            let zeros = counts.values.iter().filter(|v| **v == 0).count();
            assert_eq!(zeros, 1 + leading_right, "seed {seed}");
        }
    }

    #[test]
    fn length_one_chain_all_rightward_is_all_zero() {
        let config = PermConfig {
            chain_len_range: 1..=1,
            distractors: vec![],
            digit: 0,
        };
        for seed in 0..30 {
            let sample = gen_perm(&config, seed).unwrap();
            let inst: PermInstance =
                serde_json::from_value(sample.meta["instance"].clone()).unwrap();
            if inst.positions[1] > inst.positions[0] {
                let tokens: Vec<&str> = sample.target.split(' ').collect();
                assert_eq!(tokens.len(), 2);
                assert!(tokens.iter().all(|t| t.ends_with(".0")), "seed {seed}");
                return;
            }
        }
        panic!("no all-rightward layout in 30 seeds");
    }

    #[test]
    fn generation_is_deterministic() {
        let config = PermConfig::default();
        assert_eq!(gen_perm(&config, 11).unwrap(), gen_perm(&config, 11).unwrap());
        assert_ne!(
            gen_perm(&config, 11).unwrap().input,
            gen_perm(&config, 12).unwrap().input
        );
    }

    #[test]
    fn sub_task_targets_are_consistent() {
        let config = PermConfig::default();
        let perm = gen_perm(&config, 4).unwrap();
        let per = gen_per(&config, 4).unwrap();
        let pem = gen_pem(&config, 4).unwrap();
        assert_eq!(perm.input, per.input);
        assert_eq!(perm.input, pem.input);
        let stripped: Vec<&str> = perm.target.split(' ').map(strip_value).collect();
        assert_eq!(stripped.join(" "), per.target);
        let forward: Vec<&str> = perm.target.split(' ').rev().collect();
        assert_eq!(forward.join(" "), pem.target);
    }

    #[test]
    fn distractor_structures_present() {
        let config = PermConfig::default();
        let sample = gen_perm(&config, 21).unwrap();
        let inst: PermInstance = serde_json::from_value(sample.meta["instance"].clone()).unwrap();
        // Self-loop: prefix == suffix.
        assert!(inst
            .distractor_words
            .iter()
            .any(|d| { let w = parse_word(d).unwrap(); w.prefix_key() == w.suffix_key() }));
        // Dead end: some decoy's suffix matches no word's prefix.
        let (list, _) = parts(&sample.input);
        assert!(inst.distractor_words.iter().any(|d| {
            let w = parse_word(d).unwrap();
            w.prefix_key() != w.suffix_key()
                && list
                    .words()
                    .iter()
                    .all(|o| o.prefix_key() != w.suffix_key())
        }));
    }

    #[test]
    fn start_word_repeats_after_separator() {
        let config = PermConfig::default();
        let sample = gen_perm(&config, 9).unwrap();
        let (list, start) = parts(&sample.input);
        assert!(list.position_of(&start).is_some());
        assert!(sample.input.contains(" | "));
    }
}
