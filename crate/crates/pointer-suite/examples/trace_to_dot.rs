//! Export the pointer structure of samples as Graphviz DOT: which word
//! matches which, where the decoys sit, and how the answer path runs.
//!
//! Run with: `cargo run --example trace_to_dot`
//! Render with e.g.: `cargo run --example trace_to_dot | dot -Tsvg > trace.svg`

use pointer_suite::suite::{generate_task, SuiteConfig};
use pointer_suite::trace::export_trace_graph;
use pointer_suite::TaskId;

fn main() -> pointer_suite::Result<()> {
    let config = SuiteConfig::default();
    for task in [TaskId::Pen, TaskId::Perm, TaskId::Hss] {
        let sample = generate_task(task, &config, 4, 1)?.remove(0);
        let graph = export_trace_graph(&sample)?;
        graph.validate()?;
        eprintln!(
            "# {task}: {} nodes, {} edges (DOT below)",
            graph.nodes.len(),
            graph.edges.len()
        );
        println!("{}", graph.to_dot());
    }
    Ok(())
}
