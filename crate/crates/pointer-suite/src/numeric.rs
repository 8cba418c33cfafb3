//! Numeric task families: best non-adjacent sum (with and without an
//! explicit dp trace) and long-hand arithmetic (multiplication, digit
//! multiplication, addition).

use crate::error::{Error, Result};
use crate::sample::{Sample, TaskId};
use crate::seed::rng_for;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::ops::RangeInclusive;

// ---------------------------------------------------------------------------
// Best non-adjacent sum
// ---------------------------------------------------------------------------

/// Generation settings for the non-adjacent-sum family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HssConfig {
    pub length_range: RangeInclusive<usize>,
    /// Values are non-negative so the empty subsequence (sum 0) is always
    /// admissible and the recurrence base cases are zero.
    pub value_range: RangeInclusive<u64>,
}

impl Default for HssConfig {
    fn default() -> Self {
        HssConfig {
            length_range: 5..=10,
            value_range: 0..=99,
        }
    }
}

impl HssConfig {
    pub fn validate(&self) -> Result<()> {
        if self.length_range.is_empty() || *self.length_range.start() < 1 {
            return Err(Error::infeasible("length range must start at 1 or more"));
        }
        if self.value_range.is_empty() {
            return Err(Error::infeasible("empty value range"));
        }
        Ok(())
    }
}

/// Per-position record of the dp run: the running best sum and whether the
/// position's number was taken.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DpTrace {
    pub dp: Vec<u64>,
    pub taken: Vec<bool>,
}

/// Run the recurrence `dp(i) = max(dp(i-2) + n_i, dp(i-1))` with zero base
/// cases, recording each step. Ties count as skips.
pub fn dp_trace(numbers: &[u64]) -> DpTrace {
    let mut dp = Vec::with_capacity(numbers.len());
    let mut taken = Vec::with_capacity(numbers.len());
    let (mut two_back, mut one_back) = (0u64, 0u64);
    for &n in numbers {
        let take = two_back + n;
        let step_taken = take > one_back;
        let best = take.max(one_back);
        dp.push(best);
        taken.push(step_taken);
        two_back = one_back;
        one_back = best;
    }
    DpTrace { dp, taken }
}

/// Best sum of a subsequence with no two adjacent elements.
pub fn oracle_hss(numbers: &[u64]) -> u64 {
    dp_trace(numbers).dp.last().copied().unwrap_or(0)
}

/// Exhaustive reference: recursively try skipping or taking each position
/// (taking jumps two ahead). Kept deliberately different in shape from the
/// iterative recurrence so the two can cross-check each other.
pub fn brute_force_hss(numbers: &[u64]) -> Result<u64> {
    const LIMIT: usize = 24;
    if numbers.len() > LIMIT {
        return Err(Error::InstanceTooLarge {
            n: numbers.len(),
            limit: LIMIT,
        });
    }
    fn best_from(numbers: &[u64], i: usize) -> u64 {
        if i >= numbers.len() {
            return 0;
        }
        let skip = best_from(numbers, i + 1);
        let take = numbers[i] + best_from(numbers, i + 2);
        skip.max(take)
    }
    Ok(best_from(numbers, 0))
}

/// Render the dp run as one `value:flag` token per position, `T` when the
/// number was taken and `S` when skipped.
pub fn oracle_sse(numbers: &[u64]) -> String {
    let trace = dp_trace(numbers);
    trace
        .dp
        .iter()
        .zip(&trace.taken)
        .map(|(d, t)| format!("{d}:{}", if *t { 'T' } else { 'S' }))
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_numbers(text: &str) -> Result<Vec<u64>> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<u64>().map_err(|_| Error::MalformedRecord {
                line: 0,
                reason: format!("not a non-negative integer: {t:?}"),
            })
        })
        .collect()
}

/// Parse a space-separated number list, as used by the sum-family inputs.
pub fn numbers_from_input(input: &str) -> Result<Vec<u64>> {
    parse_numbers(input)
}

fn gen_numbers(config: &HssConfig, seed: u64) -> Result<Vec<u64>> {
    config.validate()?;
    let mut rng = rng_for(seed, 0);
    let n = rng.gen_range(config.length_range.clone());
    Ok((0..n)
        .map(|_| rng.gen_range(config.value_range.clone()))
        .collect())
}

/// Generate a best-sum sample; the target is the single final value.
pub fn gen_hss(config: &HssConfig, seed: u64) -> Result<Sample> {
    let numbers = gen_numbers(config, seed)?;
    let input = numbers
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    let target = oracle_hss(&numbers).to_string();
    Ok(Sample::new(TaskId::Hss, input, target)
        .with_meta("n", numbers.len() as u64)
        .with_meta("seed", seed))
}

/// Generate a traced-sum sample; the target walks through every dp step.
pub fn gen_sse(config: &HssConfig, seed: u64) -> Result<Sample> {
    let numbers = gen_numbers(config, seed)?;
    let input = numbers
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    let target = oracle_sse(&numbers);
    Ok(Sample::new(TaskId::Sse, input, target)
        .with_meta("n", numbers.len() as u64)
        .with_meta("seed", seed))
}

// ---------------------------------------------------------------------------
// Long-hand arithmetic
// ---------------------------------------------------------------------------

/// Generation settings for the arithmetic family. One struct covers all
/// three tasks; each generator reads only its own ranges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MulConfig {
    /// Digit counts of the two multiplication operands.
    pub digits_a_range: RangeInclusive<usize>,
    pub digits_b_range: RangeInclusive<usize>,
    /// Digit count of the multi-digit operand in digit multiplication.
    pub digits_range: RangeInclusive<usize>,
    /// How many numbers an addition adds, and their digit counts.
    pub addend_count_range: RangeInclusive<usize>,
    pub addend_digits_range: RangeInclusive<usize>,
}

impl Default for MulConfig {
    fn default() -> Self {
        MulConfig {
            digits_a_range: 2..=4,
            digits_b_range: 2..=4,
            digits_range: 2..=5,
            addend_count_range: 2..=4,
            addend_digits_range: 1..=5,
        }
    }
}

impl MulConfig {
    pub fn validate(&self) -> Result<()> {
        let ranges = [
            ("digits_a", &self.digits_a_range),
            ("digits_b", &self.digits_b_range),
            ("digits", &self.digits_range),
            ("addend_count", &self.addend_count_range),
            ("addend_digits", &self.addend_digits_range),
        ];
        for (name, r) in ranges {
            if r.is_empty() || *r.start() < 1 {
                return Err(Error::infeasible(format!("{name} range must start at 1")));
            }
        }
        for (name, r) in [
            ("digits_a", &self.digits_a_range),
            ("digits_b", &self.digits_b_range),
            ("digits", &self.digits_range),
            ("addend_digits", &self.addend_digits_range),
        ] {
            if *r.end() > 19 {
                return Err(Error::infeasible(format!(
                    "{name} range exceeds 19 digits"
                )));
            }
        }
        Ok(())
    }
}

/// Base-10 digits, least significant first. Zero is a single digit.
fn to_digits(mut n: u128) -> Vec<u8> {
    if n == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    while n > 0 {
        out.push((n % 10) as u8);
        n /= 10;
    }
    out
}

fn from_digits(digits: &[u8]) -> u128 {
    digits
        .iter()
        .rev()
        .fold(0u128, |acc, &d| acc * 10 + d as u128)
}

/// Multiply a digit vector by one digit, carrying in base 10.
fn digit_mul(a: &[u8], d: u8) -> Vec<u8> {
    let mut out = Vec::with_capacity(a.len() + 1);
    let mut carry = 0u16;
    for &x in a {
        let v = x as u16 * d as u16 + carry;
        out.push((v % 10) as u8);
        carry = v / 10;
    }
    while carry > 0 {
        out.push((carry % 10) as u8);
        carry /= 10;
    }
    out
}

/// Digit-wise addition with carries.
fn add_digits(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(a.len().max(b.len()) + 1);
    let mut carry = 0u8;
    for i in 0..a.len().max(b.len()) {
        let v = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0) + carry;
        out.push(v % 10);
        carry = v / 10;
    }
    if carry > 0 {
        out.push(carry);
    }
    out
}

/// Append `k` zeros below the low digit (a decimal left shift).
fn shifted(mut a: Vec<u8>, k: usize) -> Vec<u8> {
    let mut out = vec![0u8; k];
    out.append(&mut a);
    out
}

/// Long multiplication: one digit-multiplication per digit of `b`, each
/// shifted into place, then summed.
pub fn oracle_mul(a: u64, b: u64) -> u128 {
    let da = to_digits(a as u128);
    let mut acc = vec![0u8];
    for (i, &d) in to_digits(b as u128).iter().enumerate() {
        acc = add_digits(&acc, &shifted(digit_mul(&da, d), i));
    }
    from_digits(&acc)
}

/// Multiply a number by a single digit.
pub fn oracle_dmul(a: u64, d: u8) -> u128 {
    debug_assert!(d <= 9);
    from_digits(&digit_mul(&to_digits(a as u128), d))
}

/// Sum a list of numbers by repeated digit-wise addition.
pub fn oracle_add(addends: &[u64]) -> u128 {
    let mut acc = vec![0u8];
    for &a in addends {
        acc = add_digits(&acc, &to_digits(a as u128));
    }
    from_digits(&acc)
}

fn random_number(digit_count: usize, rng: &mut impl Rng) -> u64 {
    if digit_count == 1 {
        return rng.gen_range(0..=9);
    }
    let mut n = rng.gen_range(1..=9u64);
    for _ in 1..digit_count {
        n = n * 10 + rng.gen_range(0..=9u64);
    }
    n
}

/// Generate a multiplication sample, `a * b`.
pub fn gen_mul(config: &MulConfig, seed: u64) -> Result<Sample> {
    config.validate()?;
    let mut rng = rng_for(seed, 0);
    let a = random_number(rng.gen_range(config.digits_a_range.clone()), &mut rng);
    let b = random_number(rng.gen_range(config.digits_b_range.clone()), &mut rng);
    Ok(
        Sample::new(TaskId::Mul, format!("{a} * {b}"), oracle_mul(a, b).to_string())
            .with_meta("seed", seed),
    )
}

/// Generate a digit-multiplication sample, `a * d`.
pub fn gen_dmul(config: &MulConfig, seed: u64) -> Result<Sample> {
    config.validate()?;
    let mut rng = rng_for(seed, 0);
    let a = random_number(rng.gen_range(config.digits_range.clone()), &mut rng);
    let d = rng.gen_range(0..=9u8);
    Ok(Sample::new(
        TaskId::Dmul,
        format!("{a} * {d}"),
        oracle_dmul(a, d).to_string(),
    )
    .with_meta("seed", seed))
}

/// Generate an addition sample, `a + b + ...`.
pub fn gen_add(config: &MulConfig, seed: u64) -> Result<Sample> {
    config.validate()?;
    let mut rng = rng_for(seed, 0);
    let count = rng.gen_range(config.addend_count_range.clone());
    let addends: Vec<u64> = (0..count)
        .map(|_| random_number(rng.gen_range(config.addend_digits_range.clone()), &mut rng))
        .collect();
    let input = addends
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" + ");
    Ok(Sample::new(TaskId::Add, input, oracle_add(&addends).to_string()).with_meta("seed", seed))
}

/// Parse `a * b` or `a + b + c` back into operands.
pub fn operands_from_input(input: &str) -> Result<Vec<u64>> {
    input
        .split(['*', '+'])
        .map(|t| {
            t.trim().parse::<u64>().map_err(|_| Error::MalformedRecord {
                line: 0,
                reason: format!("not a non-negative integer: {:?}", t.trim()),
            })
        })
        .collect()
}
