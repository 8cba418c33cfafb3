//! A 121-parameter discrete program machine for the neighbor-chain task and
//! a restart hill climber that learns a program from one worked example.
//!
//! A program maps the last two action outcomes to the next action. Forward
//! passes each emit at most one answer word; a hand-written reference
//! program reproduces the chain-following oracle exactly, and random-restart
//! hill climbing over the 8^121 table space recovers behaviorally equivalent
//! programs from a single (input, answer) pair.

pub mod machine;
pub mod search;

pub use machine::{
    reference_program, run_compiled, run_program, Action, CompiledInput, MachineLimits, Outcome,
    ProgramTable, RunResult, TraceStep, TABLE_SIZE,
};
pub use search::{fitness, hill_climb, holdout_accuracy, Fitness, SearchConfig, SearchStats};
