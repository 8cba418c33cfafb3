//! Learning a program table from a single worked example by hill climbing
//! with random restarts.

use super::machine::{
    run_compiled, Action, CompiledInput, MachineLimits, ProgramTable, TABLE_SIZE,
};
use crate::error::{Error, Result};
use crate::sample::Sample;
use crate::seed::derive_seed;
use crate::word::Seq;
use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Search budget and acceptance policy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub restarts: usize,
    pub steps_per_restart: usize,
    pub accept_equal: bool,
    pub repeat_penalty_weight: f64,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            restarts: 200,
            steps_per_restart: 5000,
            accept_equal: true,
            repeat_penalty_weight: 1.0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::infeasible("restarts must be at least 1"));
        }
        if self.steps_per_restart == 0 {
            return Err(Error::infeasible("steps_per_restart must be at least 1"));
        }
        if !self.repeat_penalty_weight.is_finite() || self.repeat_penalty_weight < 0.0 {
            return Err(Error::infeasible(
                "repeat_penalty_weight must be a non-negative finite number",
            ));
        }
        Ok(())
    }
}

/// Positional score of a program's output against the gold answer, plus
/// whether the output reproduced the answer exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fitness {
    pub score: usize,
    pub perfect: bool,
}

/// Count positions where the generated answer agrees with the gold answer.
/// `perfect` additionally requires equal lengths.
pub fn fitness(
    table: &ProgramTable,
    input: &CompiledInput,
    gold: &[String],
    limits: &MachineLimits,
) -> Fitness {
    let result = run_compiled(table, input, limits);
    let score = result
        .words
        .iter()
        .zip(gold)
        .filter(|(got, want)| got == want)
        .count();
    Fitness {
        score,
        perfect: result.words.len() == gold.len() && score == gold.len(),
    }
}

/// What the search did and how well it ended up.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub restarts_used: usize,
    pub total_steps: u64,
    pub best_restart: usize,
    pub best_fitness: usize,
    pub perfect: bool,
    /// Accepted strict improvements within the winning restart, starting
    /// from its initial score; never decreasing.
    pub trajectory: Vec<usize>,
}

struct RestartResult {
    table: ProgramTable,
    fit: Fitness,
    steps_used: u64,
    trajectory: Vec<usize>,
}

fn run_restart(
    input: &CompiledInput,
    gold: &[String],
    limits: &MachineLimits,
    config: &SearchConfig,
    seed: u64,
) -> RestartResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut table = ProgramTable::random(&mut rng);
    let mut fit = fitness(&table, input, gold, limits);
    let mut change_counts = [0u64; TABLE_SIZE];
    let mut trajectory = vec![fit.score];
    let mut steps_used = 0;

    for _ in 0..config.steps_per_restart {
        if fit.perfect {
            break;
        }
        steps_used += 1;

        // Parameters mutated often become proportionally less likely.
        let weights: Vec<f64> = change_counts
            .iter()
            .map(|c| 1.0 / (1.0 + config.repeat_penalty_weight * *c as f64))
            .collect();
        let param = WeightedIndex::new(&weights)
            .expect("weights are positive")
            .sample(&mut rng);
        change_counts[param] += 1;

        let old = table.entry_at(param);
        // Uniform draw over the seven other actions.
        let draw = rng.gen_range(0..Action::ALL.len() - 1);
        let new = Action::ALL[draw + usize::from(draw >= old as usize)];
        table.set_index(param, new);

        let candidate = fitness(&table, input, gold, limits);
        let accept = candidate.score > fit.score
            || (config.accept_equal && candidate.score == fit.score);
        if accept {
            if candidate.score > fit.score {
                trajectory.push(candidate.score);
            }
            fit = candidate;
        } else {
            table.set_index(param, old);
        }
    }

    RestartResult {
        table,
        fit,
        steps_used,
        trajectory,
    }
}

/// Learn a program that reproduces `sample.target` from `sample.input`.
/// Restarts run in parallel waves but the result depends only on the seed:
/// the first perfect restart (by index) wins, otherwise the best-scoring one
/// with the lowest index after the full budget. Exhausting the budget is not
/// an error; the best table found is returned with `perfect` unset.
pub fn hill_climb(
    sample: &Sample,
    config: &SearchConfig,
    seed: u64,
) -> Result<(ProgramTable, SearchStats)> {
    config.validate()?;
    let input = CompiledInput::new(&Seq::parse(&sample.input)?);
    let gold = sample.target_tokens();
    let limits = MachineLimits::default();

    let wave = rayon::current_num_threads().max(1);
    let mut results: Vec<RestartResult> = Vec::with_capacity(config.restarts);
    let mut start = 0;
    while start < config.restarts {
        let end = (start + wave).min(config.restarts);
        let mut batch: Vec<RestartResult> = (start..end)
            .into_par_iter()
            .map(|r| {
                run_restart(&input, &gold, &limits, config, derive_seed(seed, r as u64))
            })
            .collect();
        results.append(&mut batch);
        if results.iter().any(|r| r.fit.perfect) {
            break;
        }
        start = end;
    }

    let winner = match results.iter().position(|r| r.fit.perfect) {
        Some(idx) => idx,
        None => {
            results
                .iter()
                .enumerate()
                .max_by_key(|(idx, r)| (r.fit.score, std::cmp::Reverse(*idx)))
                .expect("at least one restart ran")
                .0
        }
    };
    // Restarts past the winner (same wave stragglers) are excluded so the
    // stats do not depend on the thread count.
    let counted = if results[winner].fit.perfect {
        winner + 1
    } else {
        results.len()
    };
    let stats = SearchStats {
        restarts_used: counted,
        total_steps: results[..counted].iter().map(|r| r.steps_used).sum(),
        best_restart: winner,
        best_fitness: results[winner].fit.score,
        perfect: results[winner].fit.perfect,
        trajectory: results[winner].trajectory.clone(),
    };
    Ok((results.swap_remove(winner).table, stats))
}

/// Fraction of samples whose full answer the program reproduces exactly.
pub fn holdout_accuracy(table: &ProgramTable, samples: &[Sample]) -> Result<f64> {
    if samples.is_empty() {
        return Ok(0.0);
    }
    let limits = MachineLimits::default();
    let mut hits = 0usize;
    for sample in samples {
        let input = Seq::parse(&sample.input)?;
        let result = super::machine::run_program(table, &input, &limits);
        if result.words == sample.target_tokens() {
            hits += 1;
        }
    }
    Ok(hits as f64 / samples.len() as f64)
}
