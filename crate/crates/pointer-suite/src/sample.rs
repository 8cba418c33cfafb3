//! Task identifiers and labeled samples.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Every task id the suite can generate, label, and score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TaskId {
    /// Pointer chain over words; emit the right neighbor of each matched word.
    #[serde(rename = "PEN")]
    Pen,
    /// Emit the matched words themselves, start word first.
    #[serde(rename = "PE")]
    Pe,
    /// Emit matched word and neighbor interleaved.
    #[serde(rename = "PEV")]
    Pev,
    /// Copy the input word list.
    #[serde(rename = "CPY")]
    Cpy,
    /// Copy the input word list reversed.
    #[serde(rename = "RCPY")]
    Rcpy,
    /// Follow a word chain, then emit it reversed with multicount values.
    #[serde(rename = "PERM")]
    Perm,
    /// Reversed chain without values.
    #[serde(rename = "PER")]
    Per,
    /// Forward chain with multicount values.
    #[serde(rename = "PEM")]
    Pem,
    /// Highest sum of non-adjacent numbers.
    #[serde(rename = "HSS")]
    Hss,
    /// The same dynamic program, emitting every dp value and take/skip flag.
    #[serde(rename = "SSE")]
    Sse,
    /// Multi-digit multiplication.
    #[serde(rename = "MUL")]
    Mul,
    /// Multi-digit times single digit.
    #[serde(rename = "DMUL")]
    Dmul,
    /// Sum of several numbers.
    #[serde(rename = "ADD")]
    Add,
}

impl TaskId {
    pub const ALL: [TaskId; 13] = [
        TaskId::Pen,
        TaskId::Pe,
        TaskId::Pev,
        TaskId::Cpy,
        TaskId::Rcpy,
        TaskId::Perm,
        TaskId::Per,
        TaskId::Pem,
        TaskId::Hss,
        TaskId::Sse,
        TaskId::Mul,
        TaskId::Dmul,
        TaskId::Add,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TaskId::Pen => "PEN",
            TaskId::Pe => "PE",
            TaskId::Pev => "PEV",
            TaskId::Cpy => "CPY",
            TaskId::Rcpy => "RCPY",
            TaskId::Perm => "PERM",
            TaskId::Per => "PER",
            TaskId::Pem => "PEM",
            TaskId::Hss => "HSS",
            TaskId::Sse => "SSE",
            TaskId::Mul => "MUL",
            TaskId::Dmul => "DMUL",
            TaskId::Add => "ADD",
        }
    }

    /// Stable per-task offset used to namespace seed derivation streams.
    pub fn seed_namespace(&self) -> u64 {
        1 + Self::ALL.iter().position(|t| t == self).unwrap() as u64
    }
}

impl fmt::Display for TaskId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for TaskId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let upper = s.to_ascii_uppercase();
        TaskId::ALL
            .iter()
            .copied()
            .find(|t| t.name() == upper)
            .ok_or(Error::UnsupportedTask {
                name: s.to_string(),
            })
    }
}

/// Free-form structural metadata attached to a sample (seed, chain length,
/// flags); kept ordered so serialization is byte-deterministic.
pub type Meta = BTreeMap<String, serde_json::Value>;

/// One labeled datapoint: input text and the oracle's target for it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub task: TaskId,
    pub input: String,
    pub target: String,
    #[serde(default)]
    pub meta: Meta,
}

impl Sample {
    pub fn new(task: TaskId, input: String, target: String) -> Self {
        Sample {
            task,
            input,
            target,
            meta: Meta::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.meta.insert(key.to_string(), value.into());
        self
    }

    /// The target split into whitespace tokens.
    pub fn target_tokens(&self) -> Vec<String> {
        self.target.split_whitespace().map(str::to_string).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn task_names_round_trip() {
        for t in TaskId::ALL {
            assert_eq!(t.name().parse::<TaskId>().unwrap(), t);
        }
        assert_eq!("pen".parse::<TaskId>().unwrap(), TaskId::Pen);
        assert!("XYZ".parse::<TaskId>().is_err());
    }

    #[test]
    fn seed_namespaces_distinct() {
        let mut seen = std::collections::HashSet::new();
        for t in TaskId::ALL {
            assert!(seen.insert(t.seed_namespace()));
        }
    }
}
