//! Exact-arithmetic implementation of a shortlex injective source code for a
//! four-symbol constrained Markov source.
//!
//! The source emits symbols from `{A, B, C, D}`: from `A` only `{A, C}` can
//! follow, from `B` only `{B, D}`, and from `C` or `D` anything, all
//! transitions fair. Every admissible block then has probability `2^-K` for
//! an integer information cost `K`. The code lists admissible strings by
//! increasing cost, then length, then lexicographic order, and pairs them
//! with nonempty binary words in shortlex order. Encoding and decoding are
//! rank arithmetic over big integers, so blocks of thousands of symbols are
//! handled without enumerating anything.
//!
//! Module map:
//!
//! - [`source`]: the Markov source, admissibility, exact block probabilities,
//!   deterministic sampling.
//! - [`combinatorics`]: cost-class sizes, slice counts, the gap identity,
//!   central alternating sums, and the prefix-completion counting kernel.
//! - [`series`]: exact power-series oracle for the generating-function
//!   identities.
//! - [`codec`]: rank/unrank on both sides, `encode`/`decode`, and the
//!   brute-force enumeration codebook.
//! - [`analysis`]: exact saving probabilities, expected code lengths, the
//!   `3n/2` benchmark comparison, and Monte Carlo estimation.
//! - [`verify`]: the named check suites behind the CLI.

pub mod analysis;
pub mod codec;
pub mod combinatorics;
pub mod decimal;
pub mod series;
pub mod source;
pub mod verify;

pub use analysis::{expected_length, gap_table, saving_probability, SavingReport};
pub use codec::{decode, encode, BinaryWord, CodecError};
pub use source::{AdmissibleString, SourceError, Symbol};
