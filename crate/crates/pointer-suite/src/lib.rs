//! Deterministic generator, oracle, and evaluator suite for compositional
//! text tasks (pointer chains over words, chain permutations with counts,
//! non-adjacent-sum dynamic programs, and long-hand arithmetic), plus a
//! table-driven program-induction solver for the pointer task and a prompt
//! renderer for several prompting styles.

pub mod cli;
pub mod dataset;
pub mod error;
pub mod metrics;
pub mod numeric;
pub mod pen;
pub mod perm;
pub mod prompts;
pub mod sample;
pub mod seed;
pub mod solver;
pub mod suite;
pub mod trace;
pub mod word;

#[cfg(test)]
mod testdata;

pub use error::{Error, Result};
pub use sample::{Meta, Sample, TaskId};
