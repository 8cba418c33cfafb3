//! A tiny word-pointer machine. A program is a total table from the last two
//! action outcomes to the next action; running it against a word sequence
//! produces an answer one word per forward pass.

use crate::error::{Error, Result};
use crate::word::{find_matches_from, Seq};
use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// What executing an action reported back; the machine branches on the last
/// two of these. `Bos` never results from an action — it only pads the
/// history at the start of a pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Eos = 0,
    LastOutput = 1,
    Match = 2,
    Left = 3,
    Right = 4,
    IsStartTrue = 5,
    IsStartFalse = 6,
    IsErrorTrue = 7,
    IsErrorFalse = 8,
    Output = 9,
    Bos = 10,
}

impl Outcome {
    pub const ALL: [Outcome; 11] = [
        Outcome::Eos,
        Outcome::LastOutput,
        Outcome::Match,
        Outcome::Left,
        Outcome::Right,
        Outcome::IsStartTrue,
        Outcome::IsStartFalse,
        Outcome::IsErrorTrue,
        Outcome::IsErrorFalse,
        Outcome::Output,
        Outcome::Bos,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Outcome::Eos => "EOS",
            Outcome::LastOutput => "LAST_OUTPUT",
            Outcome::Match => "MATCH",
            Outcome::Left => "LEFT",
            Outcome::Right => "RIGHT",
            Outcome::IsStartTrue => "IS_START_TRUE",
            Outcome::IsStartFalse => "IS_START_FALSE",
            Outcome::IsErrorTrue => "IS_ERROR_TRUE",
            Outcome::IsErrorFalse => "IS_ERROR_FALSE",
            Outcome::Output => "OUTPUT",
            Outcome::Bos => "BOS",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Outcome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Outcome> {
        Outcome::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| Error::MalformedToken {
                token: s.to_string(),
                reason: "not an outcome name".to_string(),
            })
    }
}

/// One of the eight things the machine can do in a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    Eos = 0,
    LastOutput = 1,
    Match = 2,
    Left = 3,
    Right = 4,
    IsStart = 5,
    IsError = 6,
    Output = 7,
}

impl Action {
    pub const ALL: [Action; 8] = [
        Action::Eos,
        Action::LastOutput,
        Action::Match,
        Action::Left,
        Action::Right,
        Action::IsStart,
        Action::IsError,
        Action::Output,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Action::Eos => "EOS",
            Action::LastOutput => "LAST_OUTPUT",
            Action::Match => "MATCH",
            Action::Left => "LEFT",
            Action::Right => "RIGHT",
            Action::IsStart => "IS_START",
            Action::IsError => "IS_ERROR",
            Action::Output => "OUTPUT",
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Action {
    type Err = Error;

    fn from_str(s: &str) -> Result<Action> {
        Action::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::MalformedToken {
                token: s.to_string(),
                reason: "not an action name".to_string(),
            })
    }
}

/// Number of (history, history) keys a program must cover.
pub const TABLE_SIZE: usize = 11 * 11;

/// A complete program: one action for each of the 121 possible outcome
/// histories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgramTable {
    entries: [Action; TABLE_SIZE],
}

fn pair_index(older: Outcome, newer: Outcome) -> usize {
    older as usize * 11 + newer as usize
}

impl ProgramTable {
    /// Table with every entry set to the same action.
    pub fn uniform(action: Action) -> ProgramTable {
        ProgramTable {
            entries: [action; TABLE_SIZE],
        }
    }

    /// Table with independently uniform random entries.
    pub fn random(rng: &mut impl Rng) -> ProgramTable {
        let mut entries = [Action::Eos; TABLE_SIZE];
        for slot in entries.iter_mut() {
            *slot = Action::ALL[rng.gen_range(0..Action::ALL.len())];
        }
        ProgramTable { entries }
    }

    pub fn get(&self, older: Outcome, newer: Outcome) -> Action {
        self.entries[pair_index(older, newer)]
    }

    pub fn set(&mut self, older: Outcome, newer: Outcome, action: Action) {
        self.entries[pair_index(older, newer)] = action;
    }

    pub fn entry_at(&self, index: usize) -> Action {
        self.entries[index]
    }

    pub fn set_index(&mut self, index: usize, action: Action) {
        self.entries[index] = action;
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serialization cannot fail")
    }

    pub fn from_json_str(text: &str) -> Result<ProgramTable> {
        serde_json::from_str(text).map_err(|e| Error::MalformedRecord {
            line: 0,
            reason: e.to_string(),
        })
    }
}

impl Serialize for ProgramTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = BTreeMap::new();
        for older in Outcome::ALL {
            for newer in Outcome::ALL {
                map.insert(
                    format!("{},{}", older.name(), newer.name()),
                    self.get(older, newer).name().to_string(),
                );
            }
        }
        map.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ProgramTable {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<ProgramTable, D::Error> {
        let map = BTreeMap::<String, String>::deserialize(deserializer)?;
        let mut entries = [None::<Action>; TABLE_SIZE];
        for (key, value) in &map {
            let (older, newer) = key
                .split_once(',')
                .ok_or_else(|| D::Error::custom(format!("bad key {key:?}")))?;
            let older: Outcome = older.parse().map_err(D::Error::custom)?;
            let newer: Outcome = newer.parse().map_err(D::Error::custom)?;
            let action: Action = value.parse().map_err(D::Error::custom)?;
            entries[pair_index(older, newer)] = Some(action);
        }
        let mut table = ProgramTable::uniform(Action::Eos);
        for (idx, entry) in entries.iter().enumerate() {
            let action = entry.ok_or_else(|| {
                D::Error::custom(format!(
                    "table covers {} of {TABLE_SIZE} histories",
                    map.len()
                ))
            })?;
            table.set_index(idx, action);
        }
        Ok(table)
    }
}

/// Execution caps. `max_output_words` of `None` resolves to twice the input
/// length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineLimits {
    pub max_actions_per_pass: usize,
    pub max_output_words: Option<usize>,
}

impl Default for MachineLimits {
    fn default() -> MachineLimits {
        MachineLimits {
            max_actions_per_pass: 12,
            max_output_words: None,
        }
    }
}

impl MachineLimits {
    pub fn output_cap(&self, input_len: usize) -> usize {
        self.max_output_words.unwrap_or(2 * input_len)
    }
}

/// An input sequence preprocessed for fast execution: the leftmost match of
/// every position is resolved once up front.
#[derive(Debug, Clone)]
pub struct CompiledInput {
    words: Vec<String>,
    match_target: Vec<Option<usize>>,
}

impl CompiledInput {
    pub fn new(seq: &Seq) -> CompiledInput {
        let words = seq.words().iter().map(|w| w.render()).collect();
        let match_target = (0..seq.len())
            .map(|p| find_matches_from(seq, p).first().copied())
            .collect();
        CompiledInput {
            words,
            match_target,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// One executed action, for trace dumps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub pass: usize,
    pub action: Action,
    pub outcome: Outcome,
    pub emitted: Option<String>,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pass {:>3}  {:<11} -> {}", self.pass, self.action, self.outcome)?;
        if let Some(word) = &self.emitted {
            write!(f, "  emit {word}")?;
        }
        Ok(())
    }
}

/// Everything a run produced: the emitted words plus the full action trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub words: Vec<String>,
    pub trace: Vec<TraceStep>,
    pub passes: usize,
}

impl RunResult {
    pub fn render_trace(&self) -> String {
        let mut out = String::new();
        for step in &self.trace {
            out.push_str(&step.to_string());
            out.push('\n');
        }
        out
    }

    /// Longest single pass, in actions; tests pin this against the cap.
    pub fn max_actions_in_a_pass(&self) -> usize {
        let mut best = 0;
        let mut pass = 0;
        let mut count = 0;
        for step in &self.trace {
            if step.pass != pass {
                pass = step.pass;
                count = 0;
            }
            count += 1;
            best = best.max(count);
        }
        best
    }
}

/// Run `table` against a preprocessed input. Each pass starts from an error
/// state with a fresh `(BOS, BOS)` history and may emit at most one word;
/// generation ends on EOS, on emitting from the error state, on an
/// exhausted pass, or at the output cap.
pub fn run_compiled(
    table: &ProgramTable,
    input: &CompiledInput,
    limits: &MachineLimits,
) -> RunResult {
    let cap = limits.output_cap(input.len());
    let mut words: Vec<String> = Vec::new();
    let mut trace = Vec::new();
    let mut last_output: Option<usize> = None;
    let mut passes = 0;

    'generation: while words.len() < cap {
        passes += 1;
        let mut current: Option<usize> = None;
        let mut history = (Outcome::Bos, Outcome::Bos);
        for _ in 0..limits.max_actions_per_pass {
            let action = table.get(history.0, history.1);
            let outcome = match action {
                Action::Eos => {
                    trace.push(TraceStep {
                        pass: passes,
                        action,
                        outcome: Outcome::Eos,
                        emitted: None,
                    });
                    break 'generation;
                }
                Action::Output => {
                    let emitted = current.map(|p| input.words[p].clone());
                    trace.push(TraceStep {
                        pass: passes,
                        action,
                        outcome: Outcome::Output,
                        emitted: emitted.clone(),
                    });
                    match emitted {
                        Some(word) => {
                            words.push(word);
                            last_output = current;
                            continue 'generation;
                        }
                        // Emitting the error state ends generation.
                        None => break 'generation,
                    }
                }
                Action::LastOutput => {
                    current = match last_output {
                        Some(p) => Some(p),
                        None if !input.is_empty() => Some(0),
                        None => None,
                    };
                    Outcome::LastOutput
                }
                Action::Match => {
                    current = current.and_then(|p| input.match_target[p]);
                    Outcome::Match
                }
                Action::Left => {
                    current = current.and_then(|p| p.checked_sub(1));
                    Outcome::Left
                }
                Action::Right => {
                    current = current.filter(|p| p + 1 < input.len()).map(|p| p + 1);
                    Outcome::Right
                }
                Action::IsStart => {
                    if words.is_empty() {
                        Outcome::IsStartTrue
                    } else {
                        Outcome::IsStartFalse
                    }
                }
                Action::IsError => {
                    if current.is_none() {
                        Outcome::IsErrorTrue
                    } else {
                        Outcome::IsErrorFalse
                    }
                }
            };
            trace.push(TraceStep {
                pass: passes,
                action,
                outcome,
                emitted: None,
            });
            history = (history.1, outcome);
        }
        // Only an emission continues the outer loop, so reaching this point
        // means the pass burned its action budget: end generation rather
        // than retrying forever.
        break 'generation;
    }

    RunResult {
        words,
        trace,
        passes,
    }
}

/// Run `table` against a raw word sequence.
pub fn run_program(table: &ProgramTable, input: &Seq, limits: &MachineLimits) -> RunResult {
    run_compiled(table, &CompiledInput::new(input), limits)
}

/// The hand-written program for the neighbor-chain task: emit the word right
/// of the start, then repeatedly step left, match, check for a dead end, and
/// emit the right neighbor of the match.
pub fn reference_program() -> ProgramTable {
    use Outcome as O;
    let mut table = ProgramTable::uniform(Action::Eos);
    table.set(O::Bos, O::Bos, Action::LastOutput);
    table.set(O::Bos, O::LastOutput, Action::IsStart);
    table.set(O::LastOutput, O::IsStartTrue, Action::Right);
    table.set(O::IsStartTrue, O::Right, Action::Output);
    table.set(O::LastOutput, O::IsStartFalse, Action::Left);
    table.set(O::IsStartFalse, O::Left, Action::Match);
    table.set(O::Left, O::Match, Action::IsError);
    table.set(O::Match, O::IsErrorTrue, Action::Eos);
    table.set(O::Match, O::IsErrorFalse, Action::Right);
    table.set(O::IsErrorFalse, O::Right, Action::Output);
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testdata::*;

    fn run_on(table: &ProgramTable, input: &str) -> RunResult {
        let seq = Seq::parse(input).unwrap();
        run_program(table, &seq, &MachineLimits::default())
    }

    #[test]
    fn reference_solves_the_worked_example() {
        let result = run_on(&reference_program(), SMALL_PEN_INPUT);
        assert_eq!(result.words.join(" "), SMALL_PEN_ANSWER);
        assert!(result.max_actions_in_a_pass() <= 7);
    }

    #[test]
    fn reference_solves_the_large_example() {
        let result = run_on(&reference_program(), BIG_PEN_INPUT);
        assert_eq!(result.words.join(" "), BIG_PEN_ANSWER);
        assert!(result.max_actions_in_a_pass() <= 7);
    }

    #[test]
    fn reference_agrees_with_the_oracle_on_generated_inputs() {
        for traps in [false, true] {
            let config = crate::pen::PenConfig {
                traps,
                ..crate::pen::PenConfig::default()
            };
            for seed in 0..300 {
                let sample = crate::pen::gen_pen(&config, seed).unwrap();
                let result = run_on(&reference_program(), &sample.input);
                assert_eq!(
                    result.words.join(" "),
                    sample.target,
                    "traps={traps} seed={seed}"
                );
                assert!(result.max_actions_in_a_pass() <= 12);
            }
        }
    }

    #[test]
    fn immediate_eos_emits_nothing() {
        let table = ProgramTable::uniform(Action::Eos);
        let result = run_on(&table, SMALL_PEN_INPUT);
        assert!(result.words.is_empty());
        assert_eq!(result.passes, 1);
    }

    #[test]
    fn outputting_the_error_state_halts() {
        let table = ProgramTable::uniform(Action::Output);
        let result = run_on(&table, SMALL_PEN_INPUT);
        assert!(result.words.is_empty());
        assert_eq!(result.trace.len(), 1);
    }

    #[test]
    fn emission_cap_stops_a_looping_program() {
        // Emits the start word every pass, forever if allowed.
        let mut table = ProgramTable::uniform(Action::Eos);
        table.set(Outcome::Bos, Outcome::Bos, Action::LastOutput);
        table.set(Outcome::Bos, Outcome::LastOutput, Action::Output);
        let seq = Seq::parse(TINY_PEN_INPUT).unwrap();
        let result = run_program(&table, &seq, &MachineLimits::default());
        assert_eq!(result.words.len(), 2 * seq.len());
        assert!(result.words.iter().all(|w| w == "ab"));

        let capped = run_program(
            &table,
            &seq,
            &MachineLimits {
                max_actions_per_pass: 12,
                max_output_words: Some(3),
            },
        );
        assert_eq!(capped.words.len(), 3);
    }

    #[test]
    fn a_pass_without_progress_ends_generation() {
        // LEFT from the error state stays in the error state; the pass
        // exhausts its 12 actions and the run stops.
        let table = ProgramTable::uniform(Action::Left);
        let result = run_on(&table, SMALL_PEN_INPUT);
        assert!(result.words.is_empty());
        assert_eq!(result.trace.len(), 12);
        assert_eq!(result.max_actions_in_a_pass(), 12);
    }

    #[test]
    fn table_json_round_trips() {
        let table = reference_program();
        let json = table.to_json_string();
        assert_eq!(json.matches(':').count(), TABLE_SIZE);
        let back = ProgramTable::from_json_str(&json).unwrap();
        assert_eq!(back, table);
        assert!(json.contains("\"BOS,BOS\": \"LAST_OUTPUT\""));
    }

    #[test]
    fn partial_tables_are_rejected() {
        assert!(ProgramTable::from_json_str("{\"BOS,BOS\": \"EOS\"}").is_err());
        assert!(ProgramTable::from_json_str("{\"BOS;BOS\": \"EOS\"}").is_err());
        assert!(ProgramTable::from_json_str("not json").is_err());
    }

    #[test]
    fn trace_dump_is_line_per_action() {
        let result = run_on(&reference_program(), TINY_PEN_INPUT);
        let dump = result.render_trace();
        assert_eq!(dump.lines().count(), result.trace.len());
        assert!(dump.contains("LAST_OUTPUT"));
        assert!(dump.contains("emit xy"));
    }

    #[test]
    fn name_tables_are_exhaustive() {
        assert_eq!(Outcome::ALL.len(), 11);
        assert_eq!(Action::ALL.len(), 8);
        for o in Outcome::ALL {
            assert_eq!(o.name().parse::<Outcome>().unwrap(), o);
        }
        for a in Action::ALL {
            assert_eq!(a.name().parse::<Action>().unwrap(), a);
        }
    }
}
