//! The four-symbol constrained Markov source.
//!
//! Symbols are `{A, B, C, D}` with a uniform initial law. From `A` the chain
//! moves to `{A, C}` with probability 1/2 each, from `B` to `{B, D}` with
//! probability 1/2 each, and from `C` or `D` to any symbol with probability
//! 1/4 each. Every transition probability is dyadic, so each admissible block
//! has probability exactly `2^-K` for an integer cost `K`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One};
use thiserror::Error;

/// Source alphabet, totally ordered `A < B < C < D`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Symbol {
    A,
    B,
    C,
    D,
}

/// Transition class of a symbol: `A` and `B` branch two ways (one fair bit),
/// `C` and `D` branch four ways (two fair bits).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SymbolClass {
    Ab,
    Cd,
}

impl Symbol {
    /// All symbols in ascending order.
    pub const ALL: [Symbol; 4] = [Symbol::A, Symbol::B, Symbol::C, Symbol::D];

    pub fn class(self) -> SymbolClass {
        match self {
            Symbol::A | Symbol::B => SymbolClass::Ab,
            Symbol::C | Symbol::D => SymbolClass::Cd,
        }
    }

    /// Allowed successors in ascending order.
    pub fn successors(self) -> &'static [Symbol] {
        match self {
            Symbol::A => &[Symbol::A, Symbol::C],
            Symbol::B => &[Symbol::B, Symbol::D],
            Symbol::C | Symbol::D => &Symbol::ALL,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Symbol::A => 'A',
            Symbol::B => 'B',
            Symbol::C => 'C',
            Symbol::D => 'D',
        }
    }

    pub fn from_char(c: char) -> Result<Self, SourceError> {
        match c {
            'A' => Ok(Symbol::A),
            'B' => Ok(Symbol::B),
            'C' => Ok(Symbol::C),
            'D' => Ok(Symbol::D),
            other => Err(SourceError::InvalidSymbol(other)),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// Errors for string construction and parsing.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum SourceError {
    #[error("empty string: admissible strings are nonempty")]
    Empty,
    #[error("forbidden transition {from}->{to} at position {position}")]
    ForbiddenTransition {
        /// 1-based index of the left symbol of the offending pair.
        position: usize,
        from: Symbol,
        to: Symbol,
    },
    #[error("invalid symbol {0:?}: expected one of A, B, C, D")]
    InvalidSymbol(char),
}

/// True iff `y` is an allowed successor of `x`.
pub fn transition_allowed(x: Symbol, y: Symbol) -> bool {
    x.successors().contains(&y)
}

/// True iff `s` is nonempty and every adjacent transition is allowed.
pub fn is_admissible(s: &[Symbol]) -> bool {
    !s.is_empty() && s.windows(2).all(|w| transition_allowed(w[0], w[1]))
}

/// A nonempty symbol sequence whose adjacent transitions are all allowed.
///
/// The `Ord` implementation is the source order used by the codec: first by
/// increasing information cost, then by increasing length, then
/// lexicographically over `A < B < C < D`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AdmissibleString(Vec<Symbol>);

impl AdmissibleString {
    /// Validates the transition structure; rejects empty or forbidden input.
    pub fn new(symbols: Vec<Symbol>) -> Result<Self, SourceError> {
        if symbols.is_empty() {
            return Err(SourceError::Empty);
        }
        for (i, w) in symbols.windows(2).enumerate() {
            if !transition_allowed(w[0], w[1]) {
                return Err(SourceError::ForbiddenTransition {
                    position: i + 1,
                    from: w[0],
                    to: w[1],
                });
            }
        }
        Ok(AdmissibleString(symbols))
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    /// Number of `{C, D}` symbols among all positions except the last.
    pub fn cd_count(&self) -> u64 {
        self.0[..self.0.len() - 1]
            .iter()
            .filter(|s| s.class() == SymbolClass::Cd)
            .count() as u64
    }

    /// Information cost `K = (len + 1) + cd_count`; equals `-log2` of the
    /// block probability.
    pub fn information_cost(&self) -> u64 {
        self.0.len() as u64 + 1 + self.cd_count()
    }

    /// Exact block probability: 1/4 for the first symbol times one factor
    /// per transition (1/2 out of `{A, B}`, 1/4 out of `{C, D}`).
    pub fn block_probability(&self) -> BigRational {
        let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut p = quarter.clone();
        for w in self.0.windows(2) {
            p *= match w[0].class() {
                SymbolClass::Ab => &half,
                SymbolClass::Cd => &quarter,
            };
        }
        p
    }

    pub fn dyadic_probability(&self) -> DyadicProbability {
        DyadicProbability {
            exponent: self.information_cost(),
        }
    }
}

impl fmt::Display for AdmissibleString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for AdmissibleString {
    type Err = SourceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let symbols = s
            .chars()
            .map(Symbol::from_char)
            .collect::<Result<Vec<_>, _>>()?;
        AdmissibleString::new(symbols)
    }
}

impl PartialOrd for AdmissibleString {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AdmissibleString {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.information_cost()
            .cmp(&other.information_cost())
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// A probability of the form `2^-exponent`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DyadicProbability {
    exponent: u64,
}

impl DyadicProbability {
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::one() << self.exponent)
    }
}

/// SplitMix64 bit source.
///
/// State update per 64-bit word: `state = state + 0x9E3779B97F4A7C15`, then
/// the output is `z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
/// z = (z ^ (z >> 27)) * 0x94D049BB133111EB; z ^ (z >> 31)`. Bits are served
/// most-significant first from each word. The generator is fixed so that
/// identical seeds reproduce identical draws on every platform.
#[derive(Clone, Debug)]
pub struct BitSource {
    state: u64,
    word: u64,
    remaining: u32,
}

impl BitSource {
    pub fn new(seed: u64) -> Self {
        BitSource {
            state: seed,
            word: 0,
            remaining: 0,
        }
    }

    fn next_word(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// One fair bit.
    pub fn next_bit(&mut self) -> bool {
        if self.remaining == 0 {
            self.word = self.next_word();
            self.remaining = 64;
        }
        self.remaining -= 1;
        (self.word >> self.remaining) & 1 == 1
    }

    /// `count <= 64` fair bits as an integer, most significant bit first.
    pub fn next_bits(&mut self, count: u32) -> u64 {
        debug_assert!(count <= 64);
        let mut v = 0u64;
        for _ in 0..count {
            v = (v << 1) | self.next_bit() as u64;
        }
        v
    }
}

/// Draws a length-`n` block from the exact source law, deterministic per
/// `(seed, n)`. The initial symbol consumes two fair bits; each transition
/// consumes one bit out of `{A, B}` and two bits out of `{C, D}`.
pub fn sample_block(n: u64, seed: u64) -> AdmissibleString {
    assert!(n >= 1, "block length must be positive");
    let mut bits = BitSource::new(seed);
    let mut symbols = Vec::with_capacity(n as usize);
    symbols.push(Symbol::ALL[bits.next_bits(2) as usize]);
    for _ in 1..n {
        let prev = *symbols.last().unwrap();
        let next = match prev.class() {
            SymbolClass::Ab => prev.successors()[bits.next_bit() as usize],
            SymbolClass::Cd => Symbol::ALL[bits.next_bits(2) as usize],
        };
        symbols.push(next);
    }
    AdmissibleString(symbols)
}

/// A sampled block together with the draw that produced it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SourceSample {
    block: AdmissibleString,
    seed: u64,
    length: u64,
}

impl SourceSample {
    /// Draws a length-`n` block; identical `(seed, n)` yields an identical
    /// sample.
    pub fn draw(n: u64, seed: u64) -> Self {
        SourceSample {
            block: sample_block(n, seed),
            seed,
            length: n,
        }
    }

    pub fn block(&self) -> &AdmissibleString {
        &self.block
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn length(&self) -> u64 {
        self.length
    }
}

/// Exact marginal law of the `i`-th symbol, obtained by propagating the
/// uniform initial law through the transition matrix `i - 1` times.
pub fn marginal_distribution(i: u64) -> BTreeMap<Symbol, BigRational> {
    assert!(i >= 1, "positions are 1-based");
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut law: BTreeMap<Symbol, BigRational> = Symbol::ALL
        .iter()
        .map(|&s| (s, quarter.clone()))
        .collect();
    for _ in 1..i {
        let mut next: BTreeMap<Symbol, BigRational> = Symbol::ALL
            .iter()
            .map(|&s| (s, BigRational::new(BigInt::from(0), BigInt::one())))
            .collect();
        for (&s, mass) in &law {
            let share = match s.class() {
                SymbolClass::Ab => mass * &half,
                SymbolClass::Cd => mass * &quarter,
            };
            for &t in s.successors() {
                *next.get_mut(&t).unwrap() += &share;
            }
        }
        law = next;
    }
    law
}

/// All admissible strings of exactly length `n`, in lexicographic order.
/// There are `4 * 3^(n-1)` of them.
pub fn all_blocks(n: usize) -> Vec<AdmissibleString> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn extend(current: &mut Vec<Symbol>, n: usize, out: &mut Vec<AdmissibleString>) {
        if current.len() == n {
            out.push(AdmissibleString(current.clone()));
            return;
        }
        let candidates: &[Symbol] = match current.last() {
            None => &Symbol::ALL,
            Some(&s) => s.successors(),
        };
        for &s in candidates {
            current.push(s);
            extend(current, n, out);
            current.pop();
        }
    }
    extend(&mut current, n, &mut out);
    out
}
