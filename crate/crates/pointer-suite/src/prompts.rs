//! Prompt rendering for the two flagship chain tasks: few-shot blocks,
//! task descriptions, and worked step-by-step narrations generated from the
//! same chain walks the oracles use.

use crate::error::{Error, Result};
use crate::perm::{multicount, split_perm_input};
use crate::sample::{Sample, TaskId};
use crate::word::{find_matches_from, right_neighbor, Seq};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

const PEN_DESCRIPTION: &str = "I give you a sequence of words. Each word has four characters \
plus a middle, words are separated by spaces. Start with the leftmost word. Output its \
neighbor. Then, match the last two characters of the current word (i.e. not the neighbor) to \
the word starting with those two characters. Again, output the neighbor. Do this until your \
current word (not the neighbor) has no match anymore.";

const PERM_DESCRIPTION: &str = "I give you a sequence of words. The last word (after the \
\"|\") is the word to start with. Now match match the last two characters of the current word \
to the word starting with those two characters. If this match was going to the left, i.e. the \
matched word is left of the current word in the sequence, increase a variable counting the \
number of left matchings. Do this until your current word has no match anymore.\nFinally, \
output this sequence of words, in reverse order in the format word.x where x is the number of \
left matchings until the output word times the number of matchings until the output word. \
Example answer: abcd.4 efab.1 ghef.0";

const CLOSING: &str =
    "Clearly mark your answer by writing 'Answer: <your answer>' as last line.";

const COT_CLOSING: &str = "Reason step by step. \
Clearly mark your answer by writing 'Answer: <your answer>' as last line.";

const CODE_CLOSING: &str = "Reason step by step. Then, use the code interpreter to solve the \
task. Clearly mark your answer by writing 'Answer: <your answer>' as last line.";

const ANALOGICAL_INTRO: &str = "Your task is to tackle algorithmic problems. When presented \
with an algorithmic problem, recall relevant problems as examples. Afterward, proceed to \
solve the initial problem.";

const ANALOGICAL_INSTRUCTIONS: &str = "# Instructions:\n\
## Relevant Problems:\n\
Recall three examples of algorithmic problems that are relevant to the initial problem. Your \
problems should be distinct from each other and from the initial problem (e.g., involving \
different numbers and names and instructions). For each problem:\n \
- After \"Q: \", describe the problem\n \
- After \"A: \", explain the solution and enclose the ultimate answer in \\boxed{}.\n\
## Solve the Initial Problem:\n\
Q: Copy and paste the initial problem here.\n\
A: Explain the solution and enclose the ultimate answer in \\boxed{} here.";

/// The prompt families rendered for the chain tasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Setting {
    FewShot,
    FewShotDescription,
    Cot,
    FewShotCot,
    SubtaskCot,
    AnalogicalCot,
    CodeInterpreter,
}

impl Setting {
    pub const ALL: [Setting; 7] = [
        Setting::FewShot,
        Setting::FewShotDescription,
        Setting::Cot,
        Setting::FewShotCot,
        Setting::SubtaskCot,
        Setting::AnalogicalCot,
        Setting::CodeInterpreter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Setting::FewShot => "fewshot",
            Setting::FewShotDescription => "fewshot-description",
            Setting::Cot => "cot",
            Setting::FewShotCot => "fewshot-cot",
            Setting::SubtaskCot => "subtask-cot",
            Setting::AnalogicalCot => "analogical-cot",
            Setting::CodeInterpreter => "code-interpreter",
        }
    }

    /// Shot count each setting was run with.
    pub fn default_shots(self) -> usize {
        match self {
            Setting::CodeInterpreter => 1,
            Setting::AnalogicalCot => 0,
            _ => 8,
        }
    }
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Setting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Setting> {
        Setting::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::MalformedToken {
                token: s.to_string(),
                reason: "unknown prompt setting".to_string(),
            })
    }
}

/// Rendering options.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PromptOptions {
    /// Caller asserts the shot samples come from a trap-free generator
    /// configuration; rendering fails if their metadata disagrees.
    pub traps_removed: bool,
}

fn description_for(task: TaskId) -> &'static str {
    match task {
        TaskId::Pen => PEN_DESCRIPTION,
        TaskId::Perm => PERM_DESCRIPTION,
        _ => unreachable!("callers check the task first"),
    }
}

fn check_task(setting: Setting, task: TaskId) -> Result<()> {
    if task == TaskId::Pen || task == TaskId::Perm {
        Ok(())
    } else {
        Err(Error::UnsupportedCombination {
            setting: setting.name().to_string(),
            task: task.name().to_string(),
        })
    }
}

fn check_shots(setting: Setting, shots: &[Sample], query: &Sample) -> Result<()> {
    if shots.iter().any(|s| s.task != query.task) {
        return Err(Error::infeasible("shot samples must share the query's task"));
    }
    match setting {
        Setting::AnalogicalCot if !shots.is_empty() => Err(Error::infeasible(
            "the analogical setting takes no shot samples",
        )),
        Setting::CodeInterpreter if shots.len() != 1 => Err(Error::infeasible(
            "the code-interpreter setting takes exactly one shot sample",
        )),
        Setting::FewShot
        | Setting::FewShotDescription
        | Setting::Cot
        | Setting::FewShotCot
        | Setting::SubtaskCot
            if shots.is_empty() =>
        {
            Err(Error::infeasible("few-shot settings need at least one shot"))
        }
        _ => Ok(()),
    }
}

fn check_traps_removed(shots: &[Sample]) -> Result<()> {
    for shot in shots {
        let trap_free = shot
            .meta
            .get("traps")
            .and_then(|v| v.as_bool())
            .map(|b| !b)
            .unwrap_or(false);
        if !trap_free {
            return Err(Error::infeasible(
                "traps_removed requires shot samples generated without traps",
            ));
        }
    }
    Ok(())
}

/// Render the full prompt text for one query sample.
pub fn render_prompt(
    setting: Setting,
    shots: &[Sample],
    query: &Sample,
    options: &PromptOptions,
) -> Result<String> {
    check_task(setting, query.task)?;
    check_shots(setting, shots, query)?;
    if options.traps_removed {
        if query.task != TaskId::Pen {
            return Err(Error::infeasible(
                "traps_removed only applies to the neighbor-chain task",
            ));
        }
        check_traps_removed(shots)?;
    }
    let description = description_for(query.task);

    let mut blocks: Vec<String> = Vec::new();
    match setting {
        Setting::FewShot => {
            for shot in shots {
                blocks.push(format!("Example: {}\nAnswer: {}", shot.input, shot.target));
            }
            blocks.push(format!("Your question: {}\n{CLOSING}", query.input));
        }
        Setting::FewShotDescription => {
            blocks.push(description.to_string());
            for shot in shots {
                blocks.push(format!("Example: {}\nAnswer: {}", shot.input, shot.target));
            }
            blocks.push(format!("Your question: {}\n{CLOSING}", query.input));
        }
        Setting::Cot => {
            blocks.push(description.to_string());
            for shot in shots {
                blocks.push(format!("Example: {}\nAnswer: {}", shot.input, shot.target));
            }
            blocks.push(format!("Your question: {}\n{COT_CLOSING}", query.input));
        }
        Setting::FewShotCot | Setting::SubtaskCot => {
            blocks.push(description.to_string());
            for shot in shots {
                let narration = match (setting, query.task) {
                    (Setting::FewShotCot, TaskId::Pen) => narrate_pen_fewshot_cot(shot)?,
                    (Setting::SubtaskCot, TaskId::Pen) => narrate_pen_subtask_cot(shot)?,
                    (Setting::FewShotCot, TaskId::Perm) => narrate_perm_fewshot_cot(shot)?,
                    (Setting::SubtaskCot, TaskId::Perm) => narrate_perm_subtask_cot(shot)?,
                    _ => unreachable!(),
                };
                // The chain-task worked examples put a blank line before the
                // narration; the multicount ones run straight on.
                let separator = if query.task == TaskId::Pen { "\n\n" } else { "\n" };
                blocks.push(format!("Example: {}{separator}{narration}", shot.input));
            }
            blocks.push(format!("Your question: {}\n{COT_CLOSING}", query.input));
        }
        Setting::AnalogicalCot => {
            blocks.push(format!(
                "{ANALOGICAL_INTRO}\n# Problem: {description}\nSequence: {}\n\
                 {ANALOGICAL_INSTRUCTIONS}\n{CLOSING}",
                query.input
            ));
        }
        Setting::CodeInterpreter => {
            blocks.push(description.to_string());
            let shot = &shots[0];
            blocks.push(format!("Example: {}\nAnswer: {}", shot.input, shot.target));
            blocks.push(format!("Your question: {}\n{CODE_CLOSING}", query.input));
        }
    }
    Ok(blocks.join("\n\n"))
}

// ---------------------------------------------------------------------------
// Chain walks shared by the narrations
// ---------------------------------------------------------------------------

/// Positions of the matched words, walked exactly like the oracle: unique
/// match per step, stop at the first word with no match.
fn walk_matches(seq: &Seq, from: usize) -> Result<Vec<usize>> {
    let mut positions = Vec::new();
    let mut seen = vec![false; seq.len()];
    seen[from] = true;
    let mut q = from;
    loop {
        let cands = find_matches_from(seq, q);
        match cands.as_slice() {
            [] => return Ok(positions),
            [next] => {
                if seen[*next] {
                    return Err(Error::MalformedRecord {
                        line: 0,
                        reason: format!(
                            "matching loops back to {}",
                            seq.words()[*next].render()
                        ),
                    });
                }
                seen[*next] = true;
                positions.push(*next);
                q = *next;
            }
            _ => {
                return Err(Error::AmbiguousMatch {
                    word: seq.words()[q].render(),
                    positions: cands,
                })
            }
        }
    }
}

fn neighbor_of(seq: &Seq, position: usize) -> Result<String> {
    right_neighbor(seq, position)
        .map(|w| w.render())
        .ok_or_else(|| Error::MissingNeighbor {
            word: seq.words()[position].render(),
            position,
        })
}

// ---------------------------------------------------------------------------
// Narrations
// ---------------------------------------------------------------------------

/// Worked chain-task example narrating match and output in lock-step.
pub fn narrate_pen_fewshot_cot(sample: &Sample) -> Result<String> {
    let seq = Seq::parse(&sample.input)?;
    if seq.len() < 2 {
        return Err(Error::MalformedRecord {
            line: 0,
            reason: "input needs a start word and its neighbor".to_string(),
        });
    }
    let start = seq.words()[0].render();
    let first_out = seq.words()[1].render();
    let mut lines = vec![format!(
        "The leftmost word is \"{start}\". Its right neighbor is \"{first_out}\", so the \
         first output word is \"{first_out}\"."
    )];
    let chain = walk_matches(&seq, 0)?;
    let mut gram = seq.words()[0].suffix_key().to_string();
    for &p in &chain {
        let word = seq.words()[p].render();
        let neighbor = neighbor_of(&seq, p)?;
        lines.push(format!(
            "Now, we need to find a word that starts with \"{gram}\". The word is \
             \"{word}\". Its right neighbor is \"{neighbor}\", so the next output word is \
             \"{neighbor}\"."
        ));
        gram = seq.words()[p].suffix_key().to_string();
    }
    lines.push(format!(
        "There is no word that starts with \"{gram}\", so we are done with the matching."
    ));
    lines.push(format!("Therefore the answer is: \"{}\"", sample.target));
    Ok(lines.join("\n"))
}

/// Worked chain-task example in two phases: match the whole chain first,
/// then read off every right neighbor.
pub fn narrate_pen_subtask_cot(sample: &Sample) -> Result<String> {
    let seq = Seq::parse(&sample.input)?;
    if seq.len() < 2 {
        return Err(Error::MalformedRecord {
            line: 0,
            reason: "input needs a start word and its neighbor".to_string(),
        });
    }
    let start = seq.words()[0].render();
    let mut lines = vec![
        "First we find the matching sequence of words, then we find the neighbors.".to_string(),
        format!("The first word is \"{start}\"."),
    ];
    let chain = walk_matches(&seq, 0)?;
    let mut gram = seq.words()[0].suffix_key().to_string();
    for &p in &chain {
        let word = seq.words()[p].render();
        lines.push(format!(
            "Now we need to find a word that starts with \"{gram}\". The word is \"{word}\"."
        ));
        gram = seq.words()[p].suffix_key().to_string();
    }
    lines.push(format!(
        "There is no word that starts with \"{gram}\", so we are done with the matching."
    ));
    lines.push("Now we need to find the neighbors of the matched words.".to_string());
    lines.push(format!(
        "The right neighbor of \"{start}\" is \"{}\".",
        seq.words()[1].render()
    ));
    for &p in &chain {
        lines.push(format!(
            "The right neighbor of \"{}\" is \"{}\".",
            seq.words()[p].render(),
            neighbor_of(&seq, p)?
        ));
    }
    lines.push(format!("Therefore the answer is: \"{}\"", sample.target));
    Ok(lines.join("\n"))
}

struct PermWalk {
    /// Chain positions in forward order, starting word included.
    positions: Vec<usize>,
    words: Vec<String>,
    left: Vec<usize>,
    values: Vec<usize>,
}

fn perm_walk(sample: &Sample) -> Result<PermWalk> {
    let (list, start) = split_perm_input(&sample.input)?;
    let p0 = list
        .position_of(&start)
        .ok_or_else(|| Error::StartNotFound {
            word: start.render(),
        })?;
    let mut positions = vec![p0];
    positions.extend(walk_matches(&list, p0)?);
    let words = positions
        .iter()
        .map(|&p| list.words()[p].render())
        .collect();
    let counts = multicount(&positions);
    Ok(PermWalk {
        positions,
        words,
        left: counts.left,
        values: counts.values,
    })
}

fn perm_match_lines(walk: &PermWalk, lines: &mut Vec<String>, with_positions: bool) {
    for step in 1..walk.positions.len() {
        let a = &walk.words[step - 1];
        let b = &walk.words[step];
        if with_positions {
            lines.push(format!(
                "\"{a}\" matches with \"{b}\". The word \"{a}\" is {}th and \"{b}\" is \
                 {}th, so {} left matches so far.",
                walk.positions[step - 1] + 1,
                walk.positions[step] + 1,
                walk.left[step]
            ));
        } else {
            let kind = if walk.positions[step] < walk.positions[step - 1] {
                "This is a left match"
            } else {
                "No left match"
            };
            lines.push(format!(
                "\"{a}\" matches with \"{b}\". {kind}, {} left matches so far.",
                walk.left[step]
            ));
        }
    }
    lines.push(format!(
        "There are no further matches for \"{}\", so we end the sequence here.",
        walk.words.last().expect("chain has a start word")
    ));
}

/// Worked multicount example in the style the models narrate on their own:
/// match sentences with a running left count, then the reversed, annotated
/// sequence.
pub fn narrate_perm_fewshot_cot(sample: &Sample) -> Result<String> {
    let walk = perm_walk(sample)?;
    let mut lines = vec![format!(
        "Starting with \"{}\", let's match and calculate:",
        walk.words[0]
    )];
    perm_match_lines(&walk, &mut lines, false);
    lines.push("Reversing the sequence and formatting it as per the instructions, we get:"
        .to_string());
    for step in (0..walk.words.len()).rev() {
        lines.push(format!("{}.{}", walk.words[step], walk.values[step]));
    }
    lines.push(format!("Thus, the answer is: \"{}\".", sample.target));
    Ok(lines.join("\n"))
}

/// Worked multicount example with every sub-task spelled out: enumerated
/// positions, match sentences with ordinals, and per-word product lines.
pub fn narrate_perm_subtask_cot(sample: &Sample) -> Result<String> {
    let (list, _) = split_perm_input(&sample.input)?;
    let walk = perm_walk(sample)?;
    let mut lines = vec!["First, let's enumerate the words:".to_string()];
    for (idx, word) in list.words().iter().enumerate() {
        lines.push(format!("{}:{}", idx + 1, word.render()));
    }
    lines.push(format!(
        "Starting with \"{}\", let's match and calculate:",
        walk.words[0]
    ));
    perm_match_lines(&walk, &mut lines, true);
    lines.push(
        "Finally, we calculate the number of left matches times the number of matches for \
         each word and get:"
            .to_string(),
    );
    for step in 0..walk.words.len() {
        lines.push(format!(
            "{}: {}*{}={}",
            walk.words[step], walk.left[step], step, walk.values[step]
        ));
    }
    lines.push(format!("Thus, the answer is: \"{}\".", sample.target));
    Ok(lines.join("\n"))
}

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

/// One rendered prompt with the answer it should elicit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptRecord {
    pub prompt: String,
    pub gold: String,
}

/// Write records as JSON objects, one per line.
pub fn write_prompt_records(path: &Path, records: &[PromptRecord]) -> Result<()> {
    let mut out = String::new();
    for record in records {
        out.push_str(&serde_json::to_string(record).expect("record serialization cannot fail"));
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Read records written by [`write_prompt_records`].
pub fn read_prompt_records(path: &Path) -> Result<Vec<PromptRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.is_empty())
        .map(|(idx, line)| {
            serde_json::from_str(line).map_err(|e| Error::MalformedRecord {
                line: idx + 1,
                reason: e.to_string(),
            })
        })
        .collect()
}
