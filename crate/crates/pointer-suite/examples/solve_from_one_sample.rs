//! Learn a chain-following program from a single training sample with
//! restarted hill climbing over a 121-entry action table, then check that
//! the found program generalizes to fresh samples.
//!
//! Run with: `cargo run --release --example solve_from_one_sample`

use pointer_suite::pen::{gen_pen, PenConfig};
use pointer_suite::solver::{
    hill_climb, holdout_accuracy, run_program, MachineLimits, SearchConfig,
};
use pointer_suite::word::Seq;

fn main() -> pointer_suite::Result<()> {
    let pen = PenConfig::default();
    let train = gen_pen(&pen, 2024)?;
    println!("training input:  {}", train.input);
    println!("training target: {}\n", train.target);

    let search = SearchConfig::default();
    println!(
        "searching: up to {} restarts x {} steps...",
        search.restarts, search.steps_per_restart
    );
    let (program, stats) = hill_climb(&train, &search, 7)?;
    println!(
        "perfect: {} after {} restarts, {} total steps",
        stats.perfect, stats.restarts_used, stats.total_steps
    );
    println!(
        "fitness trajectory in the winning restart: {:?}\n",
        stats.trajectory
    );

    // Watch the learned program run: one pass per output word.
    let result = run_program(&program, &Seq::parse(&train.input)?, &MachineLimits::default());
    print!("{}", result.render_trace());
    println!("program output: {}\n", result.words.join(" "));

    // One sample was enough: score the program on unseen inputs.
    let holdout: Vec<_> = (0..100)
        .map(|i| gen_pen(&pen, 500_000 + i))
        .collect::<pointer_suite::Result<_>>()?;
    println!(
        "holdout task accuracy on 100 fresh samples: {}",
        holdout_accuracy(&program, &holdout)?
    );

    println!("\nlearned table as JSON (first lines):");
    for line in program.to_json_string().lines().take(6) {
        println!("  {line}");
    }
    println!("  ...");
    Ok(())
}
