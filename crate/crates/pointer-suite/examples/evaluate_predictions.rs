//! Score predicted answers against gold samples: exact-match task accuracy
//! plus, for the chain tasks, per-step match accuracy and a termination
//! check that grade partially-correct answers.
//!
//! Run with: `cargo run --example evaluate_predictions`

use pointer_suite::metrics::{evaluate_dataset, extract_answer};
use pointer_suite::suite::{generate_task, SuiteConfig};
use pointer_suite::TaskId;

fn main() -> pointer_suite::Result<()> {
    let config = SuiteConfig::default();
    let gold = generate_task(TaskId::Pen, &config, 9, 6)?;

    // Simulated model transcripts: four perfect, one that loses the final
    // chain step, one that never marks an answer line.
    let mut predictions: Vec<String> = gold
        .iter()
        .take(4)
        .map(|s| format!("Reasoning about the chain...\nAnswer: {}", s.target))
        .collect();
    let mut tokens = gold[4].target_tokens();
    tokens.pop();
    predictions.push(format!("Answer: {}", tokens.join(" ")));
    predictions.push("I could not find the chain.".to_string());

    let report = evaluate_dataset(&predictions, &gold, None)?;
    print!("{report}");

    println!("\nper sample:");
    for (idx, row) in report.per_sample.iter().enumerate() {
        println!(
            "  {idx}: extracted={} task_ok={:?} match={:?} termination={:?}",
            row.extracted, row.task_ok, row.match_frac, row.term_ok
        );
    }

    // The extraction rule itself: last Answer: line wins, quotes and a
    // trailing period are stripped.
    let tokens = extract_answer(
        "Answer: not this one\nmore text\nanswer: \"xy wv7ql xy5wv\".",
    )?;
    println!("\nextracted from a noisy transcript: {tokens:?}");
    Ok(())
}
