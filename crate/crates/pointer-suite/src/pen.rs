//! Pointer-chain word task: generator, oracles, and structural validator.
//!
//! An instance is a flat word sequence hiding two interleaved chains. The
//! *green* chain starts at the first word and links suffix 2-gram to prefix
//! 2-gram; solving the task means walking that chain and emitting the right
//! neighbor of every matched word. The right neighbors themselves form a
//! second (*yellow*) chain in scrambled order, and optional decoy words
//! (doppelgangers, differing from a true neighbor only in the middle digit)
//! sit next to a third chain of free words to punish prefix-matching
//! shortcuts.

use crate::error::{Error, Result};
use crate::sample::{Sample, TaskId};
use crate::seed::rng_for;
use crate::word::{find_matches_from, right_neighbor, Seq, TwoGram, Word};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::ops::RangeInclusive;

/// Number of free (non-answer) green chain words to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FreeGreenCount {
    /// One free green per decoy word: chain length minus one.
    Auto,
    Fixed(usize),
}

/// Vocabulary the word sides are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VocabMode {
    /// Random two-letter grams (`ab`, `xy`, ...), pool of 676.
    Synthetic,
    /// Short English nouns (`cat4dog` style words).
    Natural,
}

/// Generation settings for the pointer-chain family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PenConfig {
    /// Inclusive range for the matched-chain length `m` (start word excluded).
    pub chain_len_range: RangeInclusive<usize>,
    /// Digits allowed as word middles.
    pub digits: Vec<u8>,
    /// Whether to plant doppelganger decoys next to free green words.
    pub traps: bool,
    pub free_green_count: FreeGreenCount,
    pub vocab_mode: VocabMode,
    /// Custom noun pool for natural mode; `None` uses the built-in list.
    pub natural_words: Option<Vec<String>>,
}

impl Default for PenConfig {
    fn default() -> Self {
        PenConfig {
            chain_len_range: 3..=6,
            digits: (0..=9).collect(),
            traps: true,
            free_green_count: FreeGreenCount::Auto,
            vocab_mode: VocabMode::Synthetic,
            natural_words: None,
        }
    }
}

impl PenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.chain_len_range.is_empty() {
            return Err(Error::infeasible("empty chain length range"));
        }
        if *self.chain_len_range.start() < 2 {
            return Err(Error::infeasible("chain length must be at least 2"));
        }
        if self.digits.is_empty() || self.digits.iter().any(|d| *d > 9) {
            return Err(Error::infeasible("digit set must be non-empty digits 0-9"));
        }
        if self.traps && self.digits.len() < 2 {
            return Err(Error::infeasible(
                "decoys need at least two distinct digits",
            ));
        }
        if let Some(words) = &self.natural_words {
            check_word_list(words)?;
        }
        Ok(())
    }
}

/// Validate a natural-mode noun pool: lowercase letters only, at least
/// three per word, no duplicates.
pub fn check_word_list(words: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for w in words {
        if w.len() < 3 {
            return Err(Error::infeasible(format!(
                "word list entry {w:?} is shorter than 3 letters"
            )));
        }
        if !w.chars().all(|c| c.is_ascii_lowercase()) {
            return Err(Error::infeasible(format!(
                "word list entry {w:?} must be lowercase a-z"
            )));
        }
        if !seen.insert(w.as_str()) {
            return Err(Error::infeasible(format!("duplicate word list entry {w:?}")));
        }
    }
    Ok(())
}

/// Read a natural-mode word list: one lowercase word per line, blank lines
/// ignored.
pub fn load_word_list(path: &std::path::Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let words: Vec<String> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect();
    check_word_list(&words)?;
    Ok(words)
}

/// Full structural description of one generated instance, kept in sample
/// meta so tools can reconstruct or audit the layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PenInstance {
    /// Green chain grams `g_0..g_m`; `g_0` is the bare start word.
    pub green_nodes: Vec<String>,
    /// Free chain grams `u_0..u_f` (empty when no free words).
    pub free_nodes: Vec<String>,
    /// Yellow chain grams `w_0..w_m`; `w_0` is the bare second word.
    pub yellow_nodes: Vec<String>,
    /// Middle digits of green chain words `G_1..G_m`.
    pub green_digits: Vec<u8>,
    /// Middle digits of true yellow words `Y_1..Y_m`.
    pub yellow_digits: Vec<u8>,
    /// Middle digits of decoys for links `1..m-1` (empty with traps off).
    pub doppel_digits: Vec<u8>,
    /// Middle digits of free chain words `F_1..F_f`.
    pub free_digits: Vec<u8>,
    /// Fresh gram pairs backing inert filler neighbors of extra free words.
    pub filler_grams: Vec<(String, String)>,
    pub filler_digits: Vec<u8>,
    /// `pi[i-1]` = index of the green word whose right neighbor is `Y_i`.
    pub pi: Vec<usize>,
    /// `partner_assignment[j]` = which decoy/filler sits right of `F_{j+1}`
    /// (indices into decoys-then-fillers order).
    pub partner_assignment: Vec<usize>,
    /// `placement[k]` = which green/yellow pair occupies slot pair `k`
    /// (green pairs `0..m`, then free pairs `m..m+f`).
    pub placement: Vec<usize>,
}

/// One structural defect found by [`validate_pen`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PenViolation {
    DuplicateToken { token: String },
    TooShort { len: usize, min: usize },
    NotBare { position: usize },
    AmbiguousStep { word: String, positions: Vec<usize> },
    CycleDetected { position: usize },
    OddLength { len: usize },
    Misaligned { word: String, position: usize },
    BrokenYellowChain { link: usize },
    MalformedTrap { link: usize, detail: String },
    MissingDoppelganger { link: usize, prefix: String },
    Unterminated { suffix: String },
}

impl fmt::Display for PenViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PenViolation::DuplicateToken { token } => write!(f, "duplicate token {token:?}"),
            PenViolation::TooShort { len, min } => {
                write!(f, "sequence length {len} below minimum {min}")
            }
            PenViolation::NotBare { position } => {
                write!(f, "word at slot {position} should be a bare gram")
            }
            PenViolation::AmbiguousStep { word, positions } => {
                write!(f, "matching from {word:?} is ambiguous: positions {positions:?}")
            }
            PenViolation::CycleDetected { position } => {
                write!(f, "matching revisits position {position}")
            }
            PenViolation::OddLength { len } => write!(f, "sequence length {len} is odd"),
            PenViolation::Misaligned { word, position } => {
                write!(f, "chain word {word:?} at odd position {position}")
            }
            PenViolation::BrokenYellowChain { link } => {
                write!(f, "neighbor chain link {link} does not continue uniquely")
            }
            PenViolation::MalformedTrap { link, detail } => {
                write!(f, "bad decoy at link {link}: {detail}")
            }
            PenViolation::MissingDoppelganger { link, prefix } => {
                write!(f, "link {link} (prefix {prefix:?}) lacks its decoy")
            }
            PenViolation::Unterminated { suffix } => {
                write!(f, "terminal suffix {suffix:?} still matches a word")
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

fn require_two_words(seq: &Seq) -> Result<()> {
    if seq.len() < 2 {
        return Err(Error::MalformedRecord {
            line: 0,
            reason: "pointer-chain input needs at least two words".to_string(),
        });
    }
    Ok(())
}

/// Walk the matching chain from the start word. Returns the positions of the
/// matched words, start excluded. Errors on ambiguity or a revisit.
fn walk_chain(seq: &Seq) -> Result<Vec<usize>> {
    let mut matched = Vec::new();
    let mut visited: HashSet<usize> = HashSet::from([0]);
    let mut current = 0usize;
    loop {
        let cands = find_matches_from(seq, current);
        match cands.len() {
            0 => break,
            1 => {
                let q = cands[0];
                if !visited.insert(q) {
                    return Err(Error::MalformedRecord {
                        line: 0,
                        reason: format!("matching chain revisits position {q}"),
                    });
                }
                matched.push(q);
                current = q;
            }
            _ => {
                return Err(Error::AmbiguousMatch {
                    word: seq.words()[current].render(),
                    positions: cands,
                })
            }
        }
    }
    Ok(matched)
}

fn neighbor_of(seq: &Seq, q: usize) -> Result<String> {
    right_neighbor(seq, q)
        .map(Word::render)
        .ok_or_else(|| Error::MissingNeighbor {
            word: seq.words()[q].render(),
            position: q,
        })
}

/// Right neighbors of the matched chain words, led by the start's own right
/// neighbor.
pub fn oracle_pen(seq: &Seq) -> Result<Vec<String>> {
    require_two_words(seq)?;
    let mut out = vec![seq.words()[1].render()];
    for q in walk_chain(seq)? {
        out.push(neighbor_of(seq, q)?);
    }
    Ok(out)
}

/// The matched chain words themselves, led by the start word.
pub fn oracle_pe(seq: &Seq) -> Result<Vec<String>> {
    if seq.is_empty() {
        return Err(Error::MalformedRecord {
            line: 0,
            reason: "empty input".to_string(),
        });
    }
    let mut out = vec![seq.words()[0].render()];
    for q in walk_chain(seq)? {
        out.push(seq.words()[q].render());
    }
    Ok(out)
}

/// Matched words and their right neighbors interleaved, beginning with the
/// start word and its neighbor.
pub fn oracle_pev(seq: &Seq) -> Result<Vec<String>> {
    require_two_words(seq)?;
    let mut out = vec![seq.words()[0].render(), seq.words()[1].render()];
    for q in walk_chain(seq)? {
        out.push(seq.words()[q].render());
        out.push(neighbor_of(seq, q)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Validator
// ---------------------------------------------------------------------------

/// Check the structural contract of a pointer-chain input and report every
/// defect found. An empty list means the sequence is well formed.
///
/// Decoy checks adapt to the instance: if no link carries a decoy anywhere,
/// the sequence is treated as a decoy-free variant and absent decoys are not
/// flagged; otherwise each non-terminal link must have exactly one.
pub fn validate_pen(seq: &Seq) -> Vec<PenViolation> {
    let mut out = Vec::new();

    let mut counts: std::collections::BTreeMap<String, usize> = std::collections::BTreeMap::new();
    for w in seq.words() {
        *counts.entry(w.render()).or_insert(0) += 1;
    }
    for (token, n) in counts {
        if n > 1 {
            out.push(PenViolation::DuplicateToken { token });
        }
    }

    if seq.len() < 2 {
        out.push(PenViolation::TooShort {
            len: seq.len(),
            min: 2,
        });
        return out;
    }
    for p in [0usize, 1] {
        if seq.words()[p].digit().is_some() {
            out.push(PenViolation::NotBare { position: p });
        }
    }
    if seq.len() % 2 != 0 {
        out.push(PenViolation::OddLength { len: seq.len() });
    }

    // Walk the matching chain, tolerating defects so later checks still run.
    let mut matched = Vec::new();
    let mut visited: HashSet<usize> = HashSet::from([0]);
    let mut current = 0usize;
    loop {
        let cands = find_matches_from(seq, current);
        if cands.is_empty() {
            break;
        }
        if cands.len() > 1 {
            out.push(PenViolation::AmbiguousStep {
                word: seq.words()[current].render(),
                positions: cands,
            });
            break;
        }
        let q = cands[0];
        if !visited.insert(q) {
            out.push(PenViolation::CycleDetected { position: q });
            break;
        }
        matched.push(q);
        current = q;
    }
    let m = matched.len();

    let min_len = 2 * (m + 1);
    if seq.len() < min_len {
        out.push(PenViolation::TooShort {
            len: seq.len(),
            min: min_len,
        });
    }
    for &q in &matched {
        if q % 2 != 0 {
            out.push(PenViolation::Misaligned {
                word: seq.words()[q].render(),
                position: q,
            });
        }
    }

    // Follow the neighbor chain link by link and audit decoy structure.
    let true_yellows: HashSet<usize> = matched.iter().map(|q| q + 1).collect();
    let mut link_sharers: Vec<(usize, usize)> = Vec::new();
    let mut ypos = 1usize;
    let mut broken = false;
    for link in 1..=m {
        let sharers = find_matches_from(seq, ypos);
        let true_next: Vec<usize> = sharers
            .iter()
            .copied()
            .filter(|p| true_yellows.contains(p))
            .collect();
        if true_next.len() != 1 {
            out.push(PenViolation::BrokenYellowChain { link });
            broken = true;
            break;
        }
        let t = true_next[0];
        if sharers.len() > 2 {
            out.push(PenViolation::MalformedTrap {
                link,
                detail: format!("{} words share the link prefix", sharers.len()),
            });
        }
        for &s in &sharers {
            if s == t {
                continue;
            }
            let (tw, sw) = (&seq.words()[t], &seq.words()[s]);
            if sw.suffix_key() != tw.suffix_key() || sw.digit() == tw.digit() {
                out.push(PenViolation::MalformedTrap {
                    link,
                    detail: format!(
                        "decoy {:?} is not a digit variant of {:?}",
                        sw.render(),
                        tw.render()
                    ),
                });
            }
        }
        link_sharers.push((link, sharers.len()));
        ypos = t;
    }
    if !broken {
        let trailing = find_matches_from(seq, ypos);
        if !trailing.is_empty() {
            out.push(PenViolation::Unterminated {
                suffix: seq.words()[ypos].suffix_key().to_string(),
            });
        }
    }
    let decoys_present = link_sharers.iter().any(|&(_, n)| n >= 2);
    if decoys_present {
        for &(link, n) in &link_sharers {
            if link < m && n == 1 {
                out.push(PenViolation::MissingDoppelganger {
                    link,
                    prefix: seq.words()[matched[link - 1] + 1].prefix_key().to_string(),
                });
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

/// Short English nouns used in natural vocabulary mode.
pub const NATURAL_VOCAB: [&str; 162] = [
    "ant", "arch", "arm", "axe", "badge", "bag", "ball", "bank", "barn", "bat", "beach", "bead",
    "bean", "bear", "bell", "belt", "bird", "boat", "bone", "book", "boot", "bowl", "box", "brick",
    "bridge", "broom", "brush", "bus", "cake", "camp", "cane", "cap", "car", "card", "cart", "cat",
    "cave", "chair", "chalk", "chest", "chin", "city", "clam", "cliff", "clock", "cloud", "coal",
    "coast", "coat", "coin", "comb", "cone", "cork", "corn", "crab", "crane", "crow", "crown",
    "cup", "deer", "desk", "dish", "dog", "door", "dove", "drum", "duck", "dust", "eagle", "ear",
    "egg", "elm", "face", "fan", "farm", "fence", "fern", "fig", "fish", "flag", "flute", "foal",
    "fog", "fork", "fox", "frog", "gate", "gem", "glass", "glove", "goat", "goose", "grape",
    "grass", "hat", "hawk", "hen", "hill", "hoof", "horn", "horse", "house", "iron", "ivy", "jar",
    "jug", "kite", "knee", "knife", "lake", "lamb", "lamp", "leaf", "lemon", "lion", "lock",
    "log", "loom", "map", "mast", "mat", "maze", "mill", "mole", "moon", "moss", "moth", "mouse",
    "mule", "nail", "nest", "net", "oak", "oar", "owl", "pail", "palm", "pan", "pear", "pen",
    "pig", "pine", "pipe", "plum", "pond", "pony", "rain", "rake", "ram", "rat", "raven", "reed",
    "ring", "road", "rock", "roof", "rope", "rose", "sail", "salt", "sand", "seal",
];

struct GramPool {
    grams: Vec<String>,
}

impl GramPool {
    fn new(config: &PenConfig, rng: &mut impl Rng) -> Self {
        let mut grams: Vec<String> = match (&config.vocab_mode, &config.natural_words) {
            (VocabMode::Synthetic, _) => {
                (0..676).map(|i| TwoGram::from_index(i).to_string()).collect()
            }
            (VocabMode::Natural, Some(words)) => words.clone(),
            (VocabMode::Natural, None) => NATURAL_VOCAB.iter().map(|s| s.to_string()).collect(),
        };
        grams.shuffle(rng);
        GramPool { grams }
    }

    fn take(&mut self, n: usize) -> Result<Vec<String>> {
        if n > self.grams.len() {
            return Err(Error::infeasible(format!(
                "vocabulary exhausted: {n} more grams requested, {} left",
                self.grams.len()
            )));
        }
        Ok(self.grams.drain(..n).collect())
    }
}

fn bare_word(mode: VocabMode, gram: &str) -> Word {
    match mode {
        VocabMode::Synthetic => Word::Bare(gram.parse::<TwoGram>().expect("pool gram")),
        VocabMode::Natural => Word::NaturalBare(gram.to_string()),
    }
}

fn chain_word(mode: VocabMode, prefix: &str, digit: u8, suffix: &str) -> Word {
    match mode {
        VocabMode::Synthetic => Word::chain(
            prefix.parse::<TwoGram>().expect("pool gram"),
            digit,
            suffix.parse::<TwoGram>().expect("pool gram"),
        ),
        VocabMode::Natural => Word::NaturalChain {
            prefix: prefix.to_string(),
            digit,
            suffix: suffix.to_string(),
        },
    }
}

fn pick_digit(digits: &[u8], rng: &mut impl Rng) -> u8 {
    digits[rng.gen_range(0..digits.len())]
}

fn pick_digit_except(digits: &[u8], not: u8, rng: &mut impl Rng) -> u8 {
    loop {
        let d = pick_digit(digits, rng);
        if d != not {
            return d;
        }
    }
}

struct Built {
    seq: Seq,
    target: Vec<String>,
    instance: PenInstance,
    m: usize,
}

fn build_instance(config: &PenConfig, rng: &mut impl Rng) -> Result<Built> {
    let m = rng.gen_range(*config.chain_len_range.start()..=*config.chain_len_range.end());
    let decoy_count = if config.traps { m - 1 } else { 0 };
    let f = match config.free_green_count {
        FreeGreenCount::Auto => m - 1,
        FreeGreenCount::Fixed(f) => f,
    };
    if f < decoy_count {
        return Err(Error::infeasible(format!(
            "{decoy_count} decoys need at least as many free words, got {f}"
        )));
    }
    let filler_count = f - decoy_count;

    let mode = config.vocab_mode;
    let mut pool = GramPool::new(config, rng);
    let green_nodes = pool.take(m + 1)?;
    let yellow_nodes = pool.take(m + 1)?;
    let free_nodes = pool.take(if f == 0 { 0 } else { f + 1 })?;
    let filler_flat = pool.take(2 * filler_count)?;
    let filler_grams: Vec<(String, String)> = filler_flat
        .chunks(2)
        .map(|c| (c[0].clone(), c[1].clone()))
        .collect();

    let green_digits: Vec<u8> = (0..m).map(|_| pick_digit(&config.digits, rng)).collect();
    let yellow_digits: Vec<u8> = (0..m).map(|_| pick_digit(&config.digits, rng)).collect();
    let doppel_digits: Vec<u8> = (0..decoy_count)
        .map(|i| pick_digit_except(&config.digits, yellow_digits[i], rng))
        .collect();
    let free_digits: Vec<u8> = (0..f).map(|_| pick_digit(&config.digits, rng)).collect();
    let filler_digits: Vec<u8> = (0..filler_count)
        .map(|_| pick_digit(&config.digits, rng))
        .collect();

    // pi[i-1] = green index (1-based) whose right neighbor is true yellow i.
    let mut pi: Vec<usize> = (1..=m).collect();
    pi.shuffle(rng);
    let mut hosted_yellow = vec![0usize; m];
    for (i, &g) in pi.iter().enumerate() {
        hosted_yellow[g - 1] = i + 1;
    }

    let green_word = |j: usize| {
        chain_word(
            mode,
            &green_nodes[j - 1],
            green_digits[j - 1],
            &green_nodes[j],
        )
    };
    let yellow_word = |i: usize| {
        chain_word(
            mode,
            &yellow_nodes[i - 1],
            yellow_digits[i - 1],
            &yellow_nodes[i],
        )
    };

    // Decoy for link i is the digit variant of true yellow i; fillers use
    // fresh grams and can match nothing.
    let mut partners: Vec<Word> = (1..=decoy_count)
        .map(|i| {
            chain_word(
                mode,
                &yellow_nodes[i - 1],
                doppel_digits[i - 1],
                &yellow_nodes[i],
            )
        })
        .collect();
    partners.extend(
        filler_grams
            .iter()
            .zip(&filler_digits)
            .map(|((a, b), &d)| chain_word(mode, a, d, b)),
    );
    let mut partner_assignment: Vec<usize> = (0..f).collect();
    partner_assignment.shuffle(rng);

    let mut pairs: Vec<(Word, Word)> = (1..=m)
        .map(|j| (green_word(j), yellow_word(hosted_yellow[j - 1])))
        .collect();
    pairs.extend((1..=f).map(|j| {
        (
            chain_word(mode, &free_nodes[j - 1], free_digits[j - 1], &free_nodes[j]),
            partners[partner_assignment[j - 1]].clone(),
        )
    }));
    let mut placement: Vec<usize> = (0..pairs.len()).collect();
    placement.shuffle(rng);

    let mut words = vec![bare_word(mode, &green_nodes[0]), bare_word(mode, &yellow_nodes[0])];
    for &k in &placement {
        words.push(pairs[k].0.clone());
        words.push(pairs[k].1.clone());
    }
    let seq = Seq::new(words);

    let mut target = vec![seq.words()[1].render()];
    target.extend((1..=m).map(|j| yellow_word(hosted_yellow[j - 1]).render()));

    Ok(Built {
        seq,
        target,
        instance: PenInstance {
            green_nodes,
            free_nodes,
            yellow_nodes,
            green_digits,
            yellow_digits,
            doppel_digits,
            free_digits,
            filler_grams,
            filler_digits,
            pi,
            partner_assignment,
            placement,
        },
        m,
    })
}

fn gen_built(config: &PenConfig, seed: u64) -> Result<Built> {
    config.validate()?;
    let mut last_err = None;
    for attempt in 0..32u64 {
        let mut rng = rng_for(seed, attempt);
        let built = build_instance(config, &mut rng)?;
        let violations = validate_pen(&built.seq);
        let oracle = oracle_pen(&built.seq);
        match oracle {
            Ok(tokens) if violations.is_empty() && tokens == built.target => return Ok(built),
            Ok(_) => last_err = Some(Error::infeasible("constructed chain disagrees with oracle")),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::infeasible("generation kept producing violations")))
}

fn attach_meta(mut sample: Sample, built: &Built, config: &PenConfig, seed: u64) -> Sample {
    sample = sample
        .with_meta("m", built.m as u64)
        .with_meta("traps", config.traps)
        .with_meta("seed", seed)
        .with_meta(
            "pi",
            serde_json::to_value(&built.instance.pi).expect("serializable"),
        )
        .with_meta(
            "instance",
            serde_json::to_value(&built.instance).expect("serializable"),
        );
    sample
}

/// Generate one pointer-chain sample: input sequence plus neighbor-chain
/// answer.
pub fn gen_pen(config: &PenConfig, seed: u64) -> Result<Sample> {
    let built = gen_built(config, seed)?;
    let sample = Sample::new(TaskId::Pen, built.seq.render(), built.target.join(" "));
    Ok(attach_meta(sample, &built, config, seed))
}

/// Same input distribution as [`gen_pen`], but the target lists the matched
/// words themselves.
pub fn gen_pe(config: &PenConfig, seed: u64) -> Result<Sample> {
    let built = gen_built(config, seed)?;
    let target = oracle_pe(&built.seq)?.join(" ");
    let sample = Sample::new(TaskId::Pe, built.seq.render(), target);
    Ok(attach_meta(sample, &built, config, seed))
}

/// Same input distribution as [`gen_pen`], with the interleaved
/// matched-word/neighbor target.
pub fn gen_pev(config: &PenConfig, seed: u64) -> Result<Sample> {
    let built = gen_built(config, seed)?;
    let target = oracle_pev(&built.seq)?.join(" ");
    let sample = Sample::new(TaskId::Pev, built.seq.render(), target);
    Ok(attach_meta(sample, &built, config, seed))
}

fn gen_word_list(config: &PenConfig, seed: u64) -> Result<(Vec<String>, usize)> {
    config.validate()?;
    let mut rng = rng_for(seed, 0);
    let m = rng.gen_range(*config.chain_len_range.start()..=*config.chain_len_range.end());
    let count = 2 * (m + 1);
    let mut pool = GramPool::new(config, &mut rng);
    let grams = pool.take(2 * count)?;
    let words: Vec<String> = grams
        .chunks(2)
        .map(|c| chain_word(config.vocab_mode, &c[0], pick_digit(&config.digits, &mut rng), &c[1]).render())
        .collect();
    Ok((words, m))
}

/// Generate a copy task: the target repeats the input word list.
pub fn gen_cpy(config: &PenConfig, seed: u64) -> Result<Sample> {
    let (words, m) = gen_word_list(config, seed)?;
    let input = words.join(" ");
    Ok(Sample::new(TaskId::Cpy, input.clone(), input).with_meta("m", m as u64))
}

/// Generate a reverse-copy task: the target is the input word list reversed.
pub fn gen_rcpy(config: &PenConfig, seed: u64) -> Result<Sample> {
    let (words, m) = gen_word_list(config, seed)?;
    let input = words.join(" ");
    let reversed = words.iter().rev().cloned().collect::<Vec<_>>().join(" ");
    Ok(Sample::new(TaskId::Rcpy, input, reversed).with_meta("m", m as u64))
}
