//! Render the prompt families for the chain tasks: plain few-shot blocks,
//! task descriptions, and fully worked step-by-step narrations.
//!
//! Run with: `cargo run --example render_prompts`

use pointer_suite::prompts::Setting;
use pointer_suite::suite::{build_prompts, PromptPlan, SuiteConfig};
use pointer_suite::TaskId;

fn main() -> pointer_suite::Result<()> {
    let config = SuiteConfig::default();

    // One worked-example prompt for the neighbor-chain task. The narrated
    // shots come from the trap-free generator; the query keeps its decoys.
    let narrated = build_prompts(
        &PromptPlan {
            setting: Setting::FewShotCot,
            task: TaskId::Pen,
            shots: Some(2),
            count: 1,
            traps_removed: true,
        },
        &config,
        7,
    )?;
    println!("== fewshot-cot / pen (2 shots) ==\n");
    println!("{}\n", narrated[0].prompt);
    println!("gold answer: {}\n", narrated[0].gold);

    // The same query under every other setting, sizes only.
    println!("== all settings at their default shot counts ==");
    for setting in Setting::ALL {
        let records = build_prompts(
            &PromptPlan {
                setting,
                task: TaskId::Perm,
                shots: None,
                count: 1,
                traps_removed: false,
            },
            &config,
            7,
        )?;
        let prompt = &records[0].prompt;
        println!(
            "  {:<20} {} shots, {} chars, closes with {:?}",
            setting.name(),
            setting.default_shots(),
            prompt.len(),
            prompt.lines().last().unwrap_or("")
        );
    }
    Ok(())
}
