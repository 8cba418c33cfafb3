//! Scoring: pull a marked answer out of a model transcript, then compute
//! exact-match accuracy plus two partial-credit metrics for the chain tasks
//! (per-step matching correctness and termination correctness).

use crate::error::{Error, Result};
use crate::perm::{split_perm_input, strip_value};
use crate::sample::{Sample, TaskId};
use crate::word::{find_matches, left_neighbor, parse_word, right_neighbor, Seq, Word};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::Path;

// ---------------------------------------------------------------------------
// Answer extraction
// ---------------------------------------------------------------------------

fn clean_answer_text(text: &str) -> String {
    let mut t = text.trim();
    // A bare trailing period is closing punctuation, not content; value
    // annotations like `.24` still end in a digit and are unaffected.
    if t.ends_with('.') {
        t = &t[..t.len() - 1];
    }
    let t = t.trim();
    let t = if t.len() >= 2 && t.starts_with('"') && t.ends_with('"') {
        &t[1..t.len() - 1]
    } else {
        t
    };
    t.trim().to_string()
}

/// Pull the marked answer out of a transcript: the last line starting with
/// `Answer:` (case-insensitive), or failing that the last line containing
/// `answer is:`. Surrounding quotes and a trailing period are stripped; the
/// remainder is split on whitespace.
pub fn extract_answer(transcript: &str) -> Result<Vec<String>> {
    let mut marked: Option<&str> = None;
    let mut fallback: Option<&str> = None;
    for line in transcript.lines() {
        let lower = line.trim_start().to_ascii_lowercase();
        if lower.starts_with("answer:") {
            let idx = line.to_ascii_lowercase().find("answer:").unwrap();
            marked = Some(&line[idx + "answer:".len()..]);
        }
        if let Some(idx) = lower.find("answer is:") {
            let idx = line.to_ascii_lowercase().find("answer is:").unwrap_or(idx);
            fallback = Some(&line[idx + "answer is:".len()..]);
        }
    }
    let raw = marked.or(fallback).ok_or(Error::NoAnswerLine)?;
    Ok(clean_answer_text(raw)
        .split_whitespace()
        .map(str::to_string)
        .collect())
}

// ---------------------------------------------------------------------------
// Per-sample metrics
// ---------------------------------------------------------------------------

/// Exact token-list equality.
pub fn task_accuracy(pred: &[String], gold: &[String]) -> bool {
    pred == gold
}

fn locate(input: &Seq, token: &str) -> Option<usize> {
    let word = parse_word(token).ok()?;
    input.position_of(&word)
}

/// Fraction of consecutive prediction pairs that are a correct
/// left-match-right step: the word left of `p_i` must match exactly one
/// word, whose right neighbor is `p_{i+1}`. Predictions of length 0 or 1
/// score 0. Tokens that cannot be found count their step as wrong.
pub fn pen_match_accuracy(pred: &[String], input: &Seq) -> f64 {
    if pred.len() <= 1 {
        return 0.0;
    }
    let steps = pred.len() - 1;
    let mut correct = 0usize;
    for pair in pred.windows(2) {
        let ok = (|| -> Option<bool> {
            let p = locate(input, &pair[0])?;
            let left = left_neighbor(input, p)?;
            let matches = find_matches(input, left);
            if matches.len() != 1 {
                return Some(false);
            }
            let next = right_neighbor(input, matches[0])?;
            Some(next.render() == pair[1])
        })()
        .unwrap_or(false);
        if ok {
            correct += 1;
        }
    }
    correct as f64 / steps as f64
}

/// Whether the prediction's final word sits where the chain genuinely ends:
/// its left neighbor exists and matches nothing further.
pub fn pen_termination_accuracy(pred: &[String], input: &Seq) -> bool {
    let Some(last) = pred.last() else {
        return false;
    };
    let Some(p) = locate(input, last) else {
        return false;
    };
    match left_neighbor(input, p) {
        Some(g) => find_matches(input, g).is_empty(),
        None => false,
    }
}

/// Fraction of consecutive prediction pairs that are genuine chain
/// adjacencies: one of the two words must match exactly one word, namely the
/// other. Orientation is not checked, so a locally consistent but unreversed
/// chain still earns match credit. Value annotations are ignored.
pub fn perm_match_accuracy(pred: &[String], list: &Seq, _start: &Word) -> f64 {
    if pred.len() <= 1 {
        return 0.0;
    }
    let unique_match_is = |from: &str, to: &str| -> bool {
        let Some(q) = locate(list, from) else {
            return false;
        };
        let cands = crate::word::find_matches_from(list, q);
        cands.len() == 1 && list.words()[cands[0]].render() == to
    };
    let steps = pred.len() - 1;
    let mut correct = 0usize;
    for pair in pred.windows(2) {
        let a = strip_value(&pair[0]);
        let b = strip_value(&pair[1]);
        if unique_match_is(b, a) || unique_match_is(a, b) {
            correct += 1;
        }
    }
    correct as f64 / steps as f64
}

/// Whether the prediction's first word (reverse order puts the terminal
/// first) matches nothing further.
pub fn perm_termination_accuracy(pred: &[String], list: &Seq, _start: &Word) -> bool {
    let Some(first) = pred.first() else {
        return false;
    };
    let Some(p) = locate(list, strip_value(first)) else {
        return false;
    };
    crate::word::find_matches_from(list, p).is_empty()
}

// ---------------------------------------------------------------------------
// Dataset-level evaluation
// ---------------------------------------------------------------------------

/// Scores of one prediction. `None` metric values mean "not applicable":
/// extraction failed, or the task has no chain metrics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerSample {
    pub task: TaskId,
    pub extracted: bool,
    pub task_ok: Option<bool>,
    pub match_frac: Option<f64>,
    pub term_ok: Option<bool>,
}

/// Aggregated scores over a prediction file. Aggregates are plain means of
/// the per-sample values, computed over successfully extracted answers only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub n: usize,
    pub extraction_failures: usize,
    pub task_acc: f64,
    pub match_acc: Option<f64>,
    pub term_acc: Option<f64>,
    pub per_sample: Vec<PerSample>,
}

impl EvalReport {
    /// Recompute the aggregate fields from `per_sample`; used by tests to
    /// confirm the stored aggregates are exactly the means.
    pub fn recompute(per_sample: Vec<PerSample>) -> EvalReport {
        let n = per_sample.len();
        let extraction_failures = per_sample.iter().filter(|p| !p.extracted).count();
        let mean = |values: Vec<f64>| -> Option<f64> {
            if values.is_empty() {
                None
            } else {
                Some(values.iter().sum::<f64>() / values.len() as f64)
            }
        };
        let task_acc = mean(
            per_sample
                .iter()
                .filter_map(|p| p.task_ok.map(|b| b as u8 as f64))
                .collect(),
        )
        .unwrap_or(0.0);
        let match_acc = mean(per_sample.iter().filter_map(|p| p.match_frac).collect());
        let term_acc = mean(
            per_sample
                .iter()
                .filter_map(|p| p.term_ok.map(|b| b as u8 as f64))
                .collect(),
        );
        EvalReport {
            n,
            extraction_failures,
            task_acc,
            match_acc,
            term_acc,
            per_sample,
        }
    }
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "samples               {:>8}", self.n)?;
        writeln!(f, "extraction failures   {:>8}", self.extraction_failures)?;
        writeln!(f, "task accuracy         {:>8.4}", self.task_acc)?;
        match self.match_acc {
            Some(v) => writeln!(f, "match accuracy        {v:>8.4}")?,
            None => writeln!(f, "match accuracy             n/a")?,
        }
        match self.term_acc {
            Some(v) => writeln!(f, "termination accuracy  {v:>8.4}")?,
            None => writeln!(f, "termination accuracy       n/a")?,
        }
        Ok(())
    }
}

/// Score one transcript against one gold sample.
pub fn score_sample(transcript: &str, sample: &Sample) -> Result<PerSample> {
    let tokens = match extract_answer(transcript) {
        Ok(t) => t,
        Err(Error::NoAnswerLine) => {
            return Ok(PerSample {
                task: sample.task,
                extracted: false,
                task_ok: None,
                match_frac: None,
                term_ok: None,
            })
        }
        Err(e) => return Err(e),
    };
    let task_ok = task_accuracy(&tokens, &sample.target_tokens());
    let (match_frac, term_ok) = match sample.task {
        TaskId::Pen => {
            let input = Seq::parse(&sample.input)?;
            (
                Some(pen_match_accuracy(&tokens, &input)),
                Some(pen_termination_accuracy(&tokens, &input)),
            )
        }
        TaskId::Perm | TaskId::Per => {
            let (list, start) = split_perm_input(&sample.input)?;
            (
                Some(perm_match_accuracy(&tokens, &list, &start)),
                Some(perm_termination_accuracy(&tokens, &list, &start)),
            )
        }
        _ => (None, None),
    };
    Ok(PerSample {
        task: sample.task,
        extracted: true,
        task_ok: Some(task_ok),
        match_frac,
        term_ok,
    })
}

/// Score an index-aligned prediction list against gold samples, optionally
/// restricted to one task id.
pub fn evaluate_dataset(
    predictions: &[String],
    gold: &[Sample],
    task_filter: Option<TaskId>,
) -> Result<EvalReport> {
    if predictions.len() != gold.len() {
        return Err(Error::LengthMismatch {
            predictions: predictions.len(),
            gold: gold.len(),
        });
    }
    let mut per_sample = Vec::new();
    for (pred, sample) in predictions.iter().zip(gold) {
        if let Some(task) = task_filter {
            if sample.task != task {
                continue;
            }
        }
        per_sample.push(score_sample(pred, sample)?);
    }
    Ok(EvalReport::recompute(per_sample))
}

// ---------------------------------------------------------------------------
// Prediction files
// ---------------------------------------------------------------------------

fn unescape_line(line: &str) -> String {
    let mut out = String::with_capacity(line.len());
    let mut chars = line.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            match chars.next() {
                Some('n') => out.push('\n'),
                Some('\\') => out.push('\\'),
                Some(other) => {
                    out.push('\\');
                    out.push(other);
                }
                None => out.push('\\'),
            }
        } else {
            out.push(c);
        }
    }
    out
}

/// Read one transcript per line. `.jsonl` files hold `{"prediction": text}`
/// objects; anything else is raw text with literal `\n` escapes.
pub fn read_predictions(path: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let jsonl = path.extension().and_then(|e| e.to_str()) == Some("jsonl");
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.is_empty() {
            continue;
        }
        if jsonl {
            let value: serde_json::Value =
                serde_json::from_str(line).map_err(|e| Error::MalformedRecord {
                    line: idx + 1,
                    reason: e.to_string(),
                })?;
            let pred = value
                .get("prediction")
                .and_then(|v| v.as_str())
                .ok_or(Error::MalformedRecord {
                    line: idx + 1,
                    reason: "missing string field \"prediction\"".to_string(),
                })?;
            out.push(pred.to_string());
        } else {
            out.push(unescape_line(line));
        }
    }
    Ok(out)
}
