//! Words, sequences, and the suffix→prefix matching primitive.
//!
//! A word is one of four shapes: a bare 2-gram (`xv`), a chain word
//! `prefix-digit-suffix` built from two 2-grams (`ab4fq`), or the analogous
//! shapes over natural-vocabulary words of three or more letters (`cat`,
//! `cat4dog`). Matching connects a word whose suffix equals another word's
//! prefix; all task chains in this crate are built from that single relation.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Exactly two lowercase ASCII letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoGram([u8; 2]);

impl TwoGram {
    pub fn new(a: u8, b: u8) -> Result<Self> {
        if a.is_ascii_lowercase() && b.is_ascii_lowercase() {
            Ok(TwoGram([a, b]))
        } else {
            Err(Error::malformed_token(
                String::from_utf8_lossy(&[a, b]).into_owned(),
                "2-gram characters must be a-z",
            ))
        }
    }

    /// The i-th of the 676 possible 2-grams, in lexicographic order.
    pub fn from_index(i: usize) -> Self {
        assert!(i < 676, "2-gram index out of range");
        TwoGram([b'a' + (i / 26) as u8, b'a' + (i % 26) as u8])
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("2-grams are ASCII")
    }
}

impl std::str::FromStr for TwoGram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let b = s.as_bytes();
        if b.len() != 2 {
            return Err(Error::malformed_token(s, "2-gram must have length 2"));
        }
        TwoGram::new(b[0], b[1])
    }
}

impl fmt::Display for TwoGram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A single surface token.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Word {
    /// Two letters, e.g. `xv`. Prefix and suffix are both the gram itself.
    Bare(TwoGram),
    /// Letter-letter-digit-letter-letter, e.g. `ab4fq`.
    Chain {
        prefix: TwoGram,
        digit: u8,
        suffix: TwoGram,
    },
    /// A natural-vocabulary word of three or more letters, e.g. `cat`.
    NaturalBare(String),
    /// Two natural words joined by a digit, e.g. `cat4dog`.
    NaturalChain {
        prefix: String,
        digit: u8,
        suffix: String,
    },
}

impl Word {
    pub fn chain(prefix: TwoGram, digit: u8, suffix: TwoGram) -> Self {
        debug_assert!(digit <= 9);
        Word::Chain {
            prefix,
            digit,
            suffix,
        }
    }

    /// The match key other words must end with to match into this word.
    pub fn prefix_key(&self) -> &str {
        match self {
            Word::Bare(g) => g.as_str(),
            Word::Chain { prefix, .. } => prefix.as_str(),
            Word::NaturalBare(w) => w,
            Word::NaturalChain { prefix, .. } => prefix,
        }
    }

    /// The match key this word uses to find its successor.
    pub fn suffix_key(&self) -> &str {
        match self {
            Word::Bare(g) => g.as_str(),
            Word::Chain { suffix, .. } => suffix.as_str(),
            Word::NaturalBare(w) => w,
            Word::NaturalChain { suffix, .. } => suffix,
        }
    }

    pub fn digit(&self) -> Option<u8> {
        match self {
            Word::Chain { digit, .. } | Word::NaturalChain { digit, .. } => Some(*digit),
            _ => None,
        }
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Bare(g) => write!(f, "{g}"),
            Word::Chain {
                prefix,
                digit,
                suffix,
            } => write!(f, "{prefix}{digit}{suffix}"),
            Word::NaturalBare(w) => f.write_str(w),
            Word::NaturalChain {
                prefix,
                digit,
                suffix,
            } => write!(f, "{prefix}{digit}{suffix}"),
        }
    }
}

/// Parses a single whitespace-free token into a [`Word`].
///
/// Accepted shapes: two letters (bare), five characters letter-letter-digit-
/// letter-letter (chain), three or more letters (natural bare), or
/// letters-digit-letters with at least three letters on each side (natural
/// chain). Anything else is rejected.
pub fn parse_word(token: &str) -> Result<Word> {
    if token.is_empty() {
        return Err(Error::malformed_token(token, "empty token"));
    }
    let bytes = token.as_bytes();
    if !bytes
        .iter()
        .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit())
    {
        return Err(Error::malformed_token(
            token,
            "tokens may only contain a-z and 0-9",
        ));
    }
    let digit_positions: Vec<usize> = bytes
        .iter()
        .enumerate()
        .filter(|(_, b)| b.is_ascii_digit())
        .map(|(i, _)| i)
        .collect();
    match digit_positions.len() {
        0 => match bytes.len() {
            2 => Ok(Word::Bare(TwoGram::new(bytes[0], bytes[1])?)),
            n if n >= 3 => Ok(Word::NaturalBare(token.to_string())),
            _ => Err(Error::malformed_token(token, "letter run of length 1")),
        },
        1 => {
            let d = digit_positions[0];
            let (left, right) = (&token[..d], &token[d + 1..]);
            let digit = bytes[d] - b'0';
            if left.len() == 2 && right.len() == 2 {
                Ok(Word::chain(left.parse()?, digit, right.parse()?))
            } else if left.len() >= 3 && right.len() >= 3 {
                Ok(Word::NaturalChain {
                    prefix: left.to_string(),
                    digit,
                    suffix: right.to_string(),
                })
            } else {
                Err(Error::malformed_token(
                    token,
                    "letter runs around the digit must both have length 2, or both 3+",
                ))
            }
        }
        _ => Err(Error::malformed_token(token, "more than one digit")),
    }
}

/// An ordered sequence of words; positions are 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Seq {
    words: Vec<Word>,
}

impl Seq {
    pub fn new(words: Vec<Word>) -> Self {
        Seq { words }
    }

    /// Parses whitespace-separated tokens. Duplicate surface tokens are
    /// accepted here so that validators can report them as violations.
    pub fn parse(text: &str) -> Result<Self> {
        let words = text
            .split_whitespace()
            .map(parse_word)
            .collect::<Result<Vec<_>>>()?;
        Ok(Seq { words })
    }

    pub fn render(&self) -> String {
        self.words
            .iter()
            .map(Word::render)
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn get(&self, p: usize) -> Option<&Word> {
        self.words.get(p)
    }

    /// First position whose word equals `w`, if any.
    pub fn position_of(&self, w: &Word) -> Option<usize> {
        self.words.iter().position(|x| x == w)
    }

    /// True when no two words render to the same text.
    pub fn all_tokens_distinct(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.words.iter().all(|w| seen.insert(w.render()))
    }
}

impl TryFrom<String> for Seq {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        Seq::parse(&s)
    }
}

impl From<Seq> for String {
    fn from(s: Seq) -> String {
        s.render()
    }
}

/// Every position `p != position(w)` whose word starts with the suffix of
/// `w`, in ascending order. `w` need not occur in the sequence (the excluded
/// position is then absent).
pub fn find_matches(seq: &Seq, w: &Word) -> Vec<usize> {
    let own = seq.position_of(w);
    let key = w.suffix_key();
    seq.words()
        .iter()
        .enumerate()
        .filter(|(p, cand)| Some(*p) != own && cand.prefix_key() == key)
        .map(|(p, _)| p)
        .collect()
}

/// Like [`find_matches`] but excluding an explicit position instead of
/// searching for the word's own occurrence.
pub fn find_matches_from(seq: &Seq, pos: usize) -> Vec<usize> {
    let key = seq.words()[pos].suffix_key();
    seq.words()
        .iter()
        .enumerate()
        .filter(|(p, cand)| *p != pos && cand.prefix_key() == key)
        .map(|(p, _)| p)
        .collect()
}

/// The word left of position `p`, or `None` at the boundary.
pub fn left_neighbor(seq: &Seq, p: usize) -> Option<&Word> {
    if p == 0 {
        None
    } else {
        seq.get(p - 1)
    }
}

/// The word right of position `p`, or `None` at the boundary.
pub fn right_neighbor(seq: &Seq, p: usize) -> Option<&Word> {
    seq.get(p + 1)
}
