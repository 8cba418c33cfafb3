//! Step-graph export: each sample can be expanded into a small labeled DAG
//! tracing how the answer is derived from the input.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};

/// A node in the derivation graph. `label` is the value carried at that
/// point of the computation; `id` is unique within the graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceNode {
    pub id: usize,
    pub label: String,
}

/// A directed labeled edge; the label names the operation that produced the
/// destination node from the source node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEdge {
    pub from: usize,
    pub to: usize,
    pub label: String,
}

/// A derivation graph with exactly one source (the input) and one sink (the
/// answer). Construction is append-only; [`TraceGraph::validate`] checks the
/// structural invariants.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceGraph {
    pub nodes: Vec<TraceNode>,
    pub edges: Vec<TraceEdge>,
}

impl TraceGraph {
    pub fn new() -> Self {
        TraceGraph::default()
    }

    pub fn add_node(&mut self, label: impl Into<String>) -> usize {
        let id = self.nodes.len();
        self.nodes.push(TraceNode {
            id,
            label: label.into(),
        });
        id
    }

    pub fn add_edge(&mut self, from: usize, to: usize, label: impl Into<String>) {
        self.edges.push(TraceEdge {
            from,
            to,
            label: label.into(),
        });
    }

    fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let mut indeg = vec![0usize; self.nodes.len()];
        let mut outdeg = vec![0usize; self.nodes.len()];
        for e in &self.edges {
            outdeg[e.from] += 1;
            indeg[e.to] += 1;
        }
        (indeg, outdeg)
    }

    /// Nodes with no incoming edges.
    pub fn sources(&self) -> Vec<usize> {
        let (indeg, _) = self.degrees();
        (0..self.nodes.len()).filter(|&i| indeg[i] == 0).collect()
    }

    /// Nodes with no outgoing edges.
    pub fn sinks(&self) -> Vec<usize> {
        let (_, outdeg) = self.degrees();
        (0..self.nodes.len()).filter(|&i| outdeg[i] == 0).collect()
    }

    /// Check the structural contract: non-empty, edge endpoints in range,
    /// acyclic, exactly one source, exactly one sink, and weakly connected.
    pub fn validate(&self) -> Result<()> {
        let fail = |reason: &str| {
            Err(Error::MalformedRecord {
                line: 0,
                reason: format!("trace graph: {reason}"),
            })
        };
        if self.nodes.is_empty() {
            return fail("no nodes");
        }
        for e in &self.edges {
            if e.from >= self.nodes.len() || e.to >= self.nodes.len() {
                return fail("edge endpoint out of range");
            }
        }

        // Kahn's algorithm; leftovers mean a cycle.
        let (mut indeg, _) = self.degrees();
        let mut queue: VecDeque<usize> = (0..self.nodes.len()).filter(|&i| indeg[i] == 0).collect();
        let mut visited = 0usize;
        let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in &self.edges {
            adjacency.entry(e.from).or_default().push(e.to);
        }
        while let Some(n) = queue.pop_front() {
            visited += 1;
            if let Some(next) = adjacency.get(&n) {
                for &m in next {
                    indeg[m] -= 1;
                    if indeg[m] == 0 {
                        queue.push_back(m);
                    }
                }
            }
        }
        if visited != self.nodes.len() {
            return fail("cycle detected");
        }

        if self.sources().len() != 1 {
            return fail("expected exactly one node with no incoming edges");
        }
        if self.sinks().len() != 1 {
            return fail("expected exactly one node with no outgoing edges");
        }

        // Weak connectivity over the undirected skeleton.
        let mut undirected: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            undirected[e.from].push(e.to);
            undirected[e.to].push(e.from);
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(n) = stack.pop() {
            for &m in &undirected[n] {
                if !seen[m] {
                    seen[m] = true;
                    stack.push(m);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return fail("graph is not connected");
        }
        Ok(())
    }

    /// Render to Graphviz DOT with node labels and edge operation labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph trace {\n  rankdir=LR;\n");
        for n in &self.nodes {
            out.push_str(&format!(
                "  n{} [label=\"{}\"];\n",
                n.id,
                escape_dot(&n.label)
            ));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  n{} -> n{} [label=\"{}\"];\n",
                e.from,
                e.to,
                escape_dot(&e.label)
            ));
        }
        out.push_str("}\n");
        out
    }
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

// ---------------------------------------------------------------------------
// Per-task graph builders
// ---------------------------------------------------------------------------

use crate::sample::{Sample, TaskId};
use crate::word::{find_matches_from, right_neighbor, Seq};

/// Expand a sample into the labeled derivation graph of its oracle: one
/// source node holding the input, one sink holding the answer, and edges
/// named after the primitive that produced each intermediate value.
pub fn export_trace_graph(sample: &Sample) -> Result<TraceGraph> {
    let g = match sample.task {
        TaskId::Pen | TaskId::Pe | TaskId::Pev => pointer_graph(sample)?,
        TaskId::Cpy | TaskId::Rcpy => copy_graph(sample),
        TaskId::Perm | TaskId::Per | TaskId::Pem => chain_count_graph(sample)?,
        TaskId::Hss | TaskId::Sse => dp_graph(sample)?,
        TaskId::Mul => mul_graph(sample)?,
        TaskId::Dmul => dmul_graph(sample),
        TaskId::Add => add_graph(sample)?,
    };
    g.validate()?;
    Ok(g)
}

fn pointer_graph(sample: &Sample) -> Result<TraceGraph> {
    let seq = Seq::parse(&sample.input)?;
    let mut g = TraceGraph::new();
    let input = g.add_node(sample.input.clone());
    let answer_label = sample.target.clone();

    let start = g.add_node(seq.words()[0].render());
    g.add_edge(input, start, "first");
    let mut outputs = Vec::new();
    match sample.task {
        TaskId::Pen | TaskId::Pev => {
            let w0 = g.add_node(seq.words()[1].render());
            g.add_edge(start, w0, "right");
            if sample.task == TaskId::Pev {
                outputs.push(start);
            }
            outputs.push(w0);
        }
        _ => outputs.push(start),
    }

    let mut current = 0usize;
    let mut prev_node = start;
    loop {
        let cands = find_matches_from(&seq, current);
        if cands.len() != 1 {
            break;
        }
        let q = cands[0];
        let green = g.add_node(seq.words()[q].render());
        g.add_edge(prev_node, green, "match");
        match sample.task {
            TaskId::Pen | TaskId::Pev => {
                let n = right_neighbor(&seq, q).expect("generated chain word has a neighbor");
                let neighbor = g.add_node(n.render());
                g.add_edge(green, neighbor, "right");
                if sample.task == TaskId::Pev {
                    outputs.push(green);
                }
                outputs.push(neighbor);
            }
            _ => outputs.push(green),
        }
        prev_node = green;
        current = q;
    }

    let answer = g.add_node(answer_label);
    for n in outputs {
        g.add_edge(n, answer, "output");
    }
    Ok(g)
}

fn copy_graph(sample: &Sample) -> TraceGraph {
    let mut g = TraceGraph::new();
    let input = g.add_node(sample.input.clone());
    let mut prev = input;
    for token in sample.target.split_whitespace() {
        let n = g.add_node(token.to_string());
        g.add_edge(prev, n, "copy");
        prev = n;
    }
    let answer = g.add_node(sample.target.clone());
    g.add_edge(prev, answer, "output");
    g
}

fn chain_count_graph(sample: &Sample) -> Result<TraceGraph> {
    use crate::perm::{multicount, split_perm_input};
    let (list, start) = split_perm_input(&sample.input)?;
    let mut g = TraceGraph::new();
    let input = g.add_node(sample.input.clone());

    let p0 = list.position_of(&start).ok_or(Error::StartNotFound {
        word: start.render(),
    })?;
    let mut positions = vec![p0];
    let mut current = p0;
    loop {
        let cands = find_matches_from(&list, current);
        if cands.len() != 1 {
            break;
        }
        positions.push(cands[0]);
        current = cands[0];
    }
    let counts = multicount(&positions);

    let mut word_nodes = Vec::new();
    let mut prev = input;
    for (j, &p) in positions.iter().enumerate() {
        let n = g.add_node(list.words()[p].render());
        g.add_edge(prev, n, if j == 0 { "first" } else { "match" });
        word_nodes.push(n);
        prev = n;
    }

    let answer = g.add_node(sample.target.clone());
    match sample.task {
        TaskId::Per => {
            for &n in word_nodes.iter() {
                g.add_edge(n, answer, "reverse");
            }
        }
        _ => {
            let final_edge = if sample.task == TaskId::Perm {
                "reverse"
            } else {
                "output"
            };
            for (j, &n) in word_nodes.iter().enumerate() {
                let a = g.add_node(format!(
                    "{}.{}",
                    g.nodes[n].label.clone(),
                    counts.values[j]
                ));
                g.add_edge(n, a, "multicount");
                g.add_edge(a, answer, final_edge);
            }
        }
    }
    Ok(g)
}

fn dp_graph(sample: &Sample) -> Result<TraceGraph> {
    use crate::numeric::{dp_trace, numbers_from_input};
    let numbers = numbers_from_input(&sample.input)?;
    let trace = dp_trace(&numbers);
    let mut g = TraceGraph::new();
    let input = g.add_node(sample.input.clone());
    let mut prev = input;
    for (dp, taken) in trace.dp.iter().zip(&trace.taken) {
        let label = match sample.task {
            TaskId::Sse => format!("{dp}:{}", if *taken { 'T' } else { 'S' }),
            _ => dp.to_string(),
        };
        let n = g.add_node(label);
        g.add_edge(prev, n, "dp_step");
        prev = n;
    }
    let answer = g.add_node(sample.target.clone());
    g.add_edge(prev, answer, "output");
    Ok(g)
}

fn mul_graph(sample: &Sample) -> Result<TraceGraph> {
    use crate::numeric::{operands_from_input, oracle_dmul};
    let ops = operands_from_input(&sample.input)?;
    let (a, b) = (ops[0], ops[1]);
    let mut g = TraceGraph::new();
    let input = g.add_node(sample.input.clone());
    let answer = g.add_node(sample.target.clone());
    let mut shift = String::new();
    for ch in b.to_string().chars().rev().collect::<String>().chars() {
        let d = ch.to_digit(10).unwrap() as u8;
        let partial = format!("{}{shift}", oracle_dmul(a, d));
        let n = g.add_node(partial);
        g.add_edge(input, n, "digit_mul");
        g.add_edge(n, answer, "add");
        shift.push('0');
    }
    Ok(g)
}

fn dmul_graph(sample: &Sample) -> TraceGraph {
    let mut g = TraceGraph::new();
    let input = g.add_node(sample.input.clone());
    let answer = g.add_node(sample.target.clone());
    g.add_edge(input, answer, "digit_mul");
    g
}

fn add_graph(sample: &Sample) -> Result<TraceGraph> {
    use crate::numeric::operands_from_input;
    let ops = operands_from_input(&sample.input)?;
    let mut g = TraceGraph::new();
    let input = g.add_node(sample.input.clone());
    let mut prev = input;
    let mut running = 0u128;
    for &a in &ops {
        running += a as u128;
        let n = g.add_node(running.to_string());
        g.add_edge(prev, n, "add");
        prev = n;
    }
    let answer = g.add_node(sample.target.clone());
    g.add_edge(prev, answer, "output");
    Ok(g)
}
