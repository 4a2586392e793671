//! The shortlex injective code on admissible strings.
//!
//! Admissible strings are enumerated by increasing information cost, then
//! increasing length, then lexicographically; nonempty binary words are
//! enumerated in shortlex order (length first, then lexicographic). The code
//! pairs the two enumerations, so encoding is rank arithmetic on one side and
//! unranking on the other -- no table is ever materialized. A brute-force
//! enumeration codebook doubles as the test oracle.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use num::{BigInt, One, Zero};
use thiserror::Error;

use crate::combinatorics::{binomial_coefficient, cumulative_below, shorter_in_class, slice_count};
use crate::source::{AdmissibleString, Symbol, SymbolClass};

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum CodecError {
    #[error("empty word: codewords are nonempty")]
    EmptyWord,
    #[error("invalid bit {0:?}: expected '0' or '1'")]
    InvalidBit(char),
    #[error("ranks are 1-based, got {0}")]
    RankBelowOne(BigInt),
}

/// A nonempty bit string. `Ord` is the shortlex order: length first, then
/// lexicographic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinaryWord(Vec<bool>);

impl BinaryWord {
    pub fn new(bits: Vec<bool>) -> Result<Self, CodecError> {
        if bits.is_empty() {
            return Err(CodecError::EmptyWord);
        }
        Ok(BinaryWord(bits))
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = CodecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(CodecError::InvalidBit(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        BinaryWord::new(bits)
    }
}

impl PartialOrd for BinaryWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BinaryWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// 1-based shortlex rank: `(2^L - 2) + (index within length L) + 1`.
pub fn binary_rank(word: &BinaryWord) -> BigInt {
    let mut index = BigInt::zero();
    for &bit in word.bits() {
        index = (index << 1) + u8::from(bit);
    }
    (BigInt::one() << word.len() as u64) - 2 + index + 1
}

/// Inverse of [`binary_rank`].
pub fn binary_unrank(rank: &BigInt) -> Result<BinaryWord, CodecError> {
    if rank < &BigInt::one() {
        return Err(CodecError::RankBelowOne(rank.clone()));
    }
    // rank + 2 lies in (2^L, 2^(L+1)] exactly for the word length L.
    let len = (rank + BigInt::one()).bits() - 1;
    let index: BigInt = rank + 1u32 - (BigInt::one() << len);
    let magnitude = index.magnitude();
    let bits = (0..len).rev().map(|pos| magnitude.bit(pos)).collect();
    Ok(BinaryWord(bits))
}

/// Incrementally maintained binomial `binom(m, j)` along steps that lower `m`
/// by one and optionally lower `j` with it. The value may sit one row above
/// the triangle (`j = m + 1`, value zero); cells further out are unreachable
/// from valid walks.
struct BinomialWindow {
    m: i64,
    j: i64,
    value: BigInt,
}

impl BinomialWindow {
    fn new(m: i64, j: i64) -> Self {
        let value = if (0..=m).contains(&j) {
            binomial_coefficient(m as u64, j as u64)
        } else {
            BigInt::zero()
        };
        BinomialWindow { m, j, value }
    }

    /// `binom(m, j - 1)`.
    fn below(&self) -> BigInt {
        if self.j - 1 < 0 || self.j - 1 > self.m {
            return BigInt::zero();
        }
        if self.value.is_zero() {
            // The only zero cell with a triangle neighbour below is j = m + 1,
            // whose neighbour is binom(m, m) = 1.
            debug_assert_eq!(self.j, self.m + 1);
            BigInt::one()
        } else {
            &self.value * self.j / (self.m - self.j + 1)
        }
    }

    /// Step to `(m - 1, j - 1)` when `with_j` is set, else to `(m - 1, j)`.
    fn step(&mut self, with_j: bool) {
        debug_assert!(self.m >= 1);
        if with_j {
            if !self.value.is_zero() {
                self.value = &self.value * self.j / self.m;
            }
            self.j -= 1;
        } else if !self.value.is_zero() {
            self.value = &self.value * (self.m - self.j) / self.m;
        }
        self.m -= 1;
    }
}

/// Completions of a fixed prefix inside a (cost, length) slice: with `after`
/// symbols still to place and `rem` interior `{C,D}` symbols still owed, a
/// candidate of the given class at the current position contributes
/// `2 * mult * binom(after-1, b) * 2^b` completions, where `b` subtracts the
/// candidate's own weight and `mult` is 1 out of `{A,B}` and 2 out of
/// `{C,D}`. Both cases collapse to a single shift by `rem + 1`.
fn candidate_count(class: SymbolClass, after: usize, rem: i64, window: &BinomialWindow) -> BigInt {
    debug_assert!(rem >= 0);
    if after == 0 {
        // Final position: one completion, already on budget.
        return if rem == 0 { BigInt::one() } else { BigInt::zero() };
    }
    let base = match class {
        SymbolClass::Ab => window.value.clone(),
        SymbolClass::Cd => {
            if rem == 0 {
                return BigInt::zero();
            }
            window.below()
        }
    };
    base << (rem as u64 + 1)
}

/// 0-based lexicographic rank of `syms` within its own (cost, length) slice.
fn rank_in_slice(syms: &[Symbol]) -> BigInt {
    let n = syms.len();
    let mut rem = syms[..n - 1]
        .iter()
        .filter(|s| s.class() == SymbolClass::Cd)
        .count() as i64;
    let mut window = BinomialWindow::new(n as i64 - 2, rem);
    let mut rank = BigInt::zero();
    for (i, &actual) in syms.iter().enumerate() {
        let after = n - 1 - i;
        let candidates: &[Symbol] = if i == 0 {
            &Symbol::ALL
        } else {
            syms[i - 1].successors()
        };
        for &s in candidates {
            if s >= actual {
                break;
            }
            rank += candidate_count(s.class(), after, rem, &window);
        }
        if after >= 1 {
            let took_cd = actual.class() == SymbolClass::Cd;
            if after > 1 {
                window.step(took_cd);
            }
            if took_cd {
                rem -= 1;
            }
        }
    }
    rank
}

/// Symbols of the string at 0-based index `index` within the (cost `k`,
/// length `n`) slice, in lexicographic order.
fn unrank_in_slice(k: u64, n: usize, mut index: BigInt) -> Vec<Symbol> {
    let mut rem = (k - n as u64 - 1) as i64;
    let mut window = BinomialWindow::new(n as i64 - 2, rem);
    let mut out: Vec<Symbol> = Vec::with_capacity(n);
    for i in 0..n {
        let after = n - 1 - i;
        let candidates: &[Symbol] = if i == 0 {
            &Symbol::ALL
        } else {
            out[i - 1].successors()
        };
        let mut chosen = None;
        for &s in candidates {
            let count = candidate_count(s.class(), after, rem, &window);
            if index < count {
                chosen = Some(s);
                break;
            }
            index -= count;
        }
        let s = chosen.expect("index exceeds slice size");
        out.push(s);
        if after >= 1 {
            let took_cd = s.class() == SymbolClass::Cd;
            if after > 1 {
                window.step(took_cd);
            }
            if took_cd {
                rem -= 1;
            }
        }
    }
    debug_assert!(index.is_zero());
    out
}

/// 1-based rank of `u` in the source order (cost, then length, then lex):
/// all cheaper classes, plus the shorter slices of its own class, plus the
/// lexicographic position inside its slice.
pub fn source_rank(u: &AdmissibleString) -> BigInt {
    let n = u.len() as u64;
    let k = u.information_cost();
    cumulative_below(k) + shorter_in_class(n, k as i64) + rank_in_slice(u.symbols()) + 1
}

/// Inverse of [`source_rank`]: every positive rank names exactly one
/// admissible string.
pub fn source_unrank(rank: &BigInt) -> Result<AdmissibleString, CodecError> {
    if rank < &BigInt::one() {
        return Err(CodecError::RankBelowOne(rank.clone()));
    }
    // Locate the cost class by rolling the class-size recurrence.
    let mut k = 2u64;
    let mut below = BigInt::zero(); // T_(<k)
    let mut prev = BigInt::from(4); // S_(k-1), dummy at k = 2
    let mut cur = BigInt::from(4); // S_k
    while rank > &(&below + &cur) {
        below += &cur;
        k += 1;
        let next = if k == 3 { BigInt::from(4) } else { &cur + 2 * &prev };
        prev = std::mem::replace(&mut cur, next);
    }
    let mut index = rank - below - 1; // 0-based within class k
    // Locate the length slice.
    let mut len = k.div_ceil(2);
    let mut slice = slice_count(k as i64, len);
    while index >= slice {
        index -= &slice;
        // N(k, len+1) = N(k, len) * len (k-len-1) / (2 (2len-k+1) (2len-k+2))
        slice = slice * (len * (k - len - 1)) / (2 * (2 * len - k + 1) * (2 * len - k + 2));
        len += 1;
        debug_assert!(len < k);
    }
    let symbols = unrank_in_slice(k, len as usize, index);
    Ok(AdmissibleString::new(symbols).expect("slice reconstruction is admissible"))
}

/// The shortlex code: the `j`-th admissible string maps to the `j`-th
/// nonempty binary word.
pub fn encode(u: &AdmissibleString) -> BinaryWord {
    binary_unrank(&source_rank(u)).expect("source ranks are positive")
}

/// Total inverse of [`encode`]; every nonempty word names a unique admissible
/// string, so there is no invalid-codeword state.
pub fn decode(word: &BinaryWord) -> AdmissibleString {
    source_unrank(&binary_rank(word)).expect("binary ranks are positive")
}

/// `|encode(u)|` without materializing the codeword: within cost class `k`
/// ranks up to `2^k - 2` fall in the length-`(k-1)` half, the rest in the
/// length-`k` half.
pub fn code_length(u: &AdmissibleString) -> u64 {
    let k = u.information_cost();
    let boundary = (BigInt::one() << k) - 2;
    if source_rank(u) <= boundary {
        k - 1
    } else {
        k
    }
}

/// An explicit (source string, codeword) table in source order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Codebook {
    entries: Vec<(AdmissibleString, BinaryWord)>,
    max_cost: u64,
}

impl Codebook {
    pub fn entries(&self) -> &[(AdmissibleString, BinaryWord)] {
        &self.entries
    }

    pub fn max_cost(&self) -> u64 {
        self.max_cost
    }

    /// Codeword lookup by binary search over the source order.
    pub fn codeword(&self, u: &AdmissibleString) -> Option<&BinaryWord> {
        self.entries
            .binary_search_by(|(s, _)| s.cmp(u))
            .ok()
            .map(|i| &self.entries[i].1)
    }

    /// Lines of `SOURCE<TAB>CODEWORD` in source order.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (u, w) in &self.entries {
            writeln!(out, "{u}\t{w}")?;
        }
        Ok(())
    }
}

/// Enumeration oracle: list every admissible string of cost at most
/// `max_cost`, sort by the source order, and pair with directly enumerated
/// shortlex words. Independent of the rank arithmetic above.
pub fn brute_force_codebook(max_cost: u64) -> Codebook {
    assert!((2..=30).contains(&max_cost), "enumeration oracle range");
    let mut strings = Vec::new();
    let mut prefix = Vec::new();
    for &s in &Symbol::ALL {
        prefix.push(s);
        collect_up_to_cost(&mut prefix, 2, max_cost, &mut strings);
        prefix.pop();
    }
    strings.sort();
    let words = shortlex_words(strings.len());
    Codebook {
        entries: strings.into_iter().zip(words).collect(),
        max_cost,
    }
}

fn collect_up_to_cost(
    prefix: &mut Vec<Symbol>,
    cost: u64,
    max_cost: u64,
    out: &mut Vec<AdmissibleString>,
) {
    out.push(AdmissibleString::new(prefix.clone()).expect("prefix is admissible"));
    let last = *prefix.last().unwrap();
    // Appending a symbol raises the cost by the bit weight of the old last
    // symbol: one bit out of {A, B}, two out of {C, D}.
    let step = match last.class() {
        SymbolClass::Ab => 1,
        SymbolClass::Cd => 2,
    };
    if cost + step > max_cost {
        return;
    }
    for &s in last.successors() {
        prefix.push(s);
        collect_up_to_cost(prefix, cost + step, max_cost, out);
        prefix.pop();
    }
}

/// The first `count` nonempty binary words in shortlex order.
fn shortlex_words(count: usize) -> Vec<BinaryWord> {
    let mut words = Vec::with_capacity(count);
    let mut len = 1u32;
    'outer: loop {
        for value in 0u64..(1 << len) {
            if words.len() == count {
                break 'outer;
            }
            let bits = (0..len).rev().map(|pos| (value >> pos) & 1 == 1).collect();
            words.push(BinaryWord(bits));
        }
        len += 1;
    }
    words
}
