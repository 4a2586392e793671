//! Exact saving probabilities, expected code lengths, and benchmark
//! comparisons.
//!
//! The block cost is `K_n = (n + 1) + X` with `X ~ Bin(n-1, 1/2)`, the code
//! length is `L_n = K_n - I_n` where `I_n` flags a one-bit saving, and
//! `E[L_n] = 3n/2 + 1/2 - P(I_n = 1)`. Every quantity here is an exact
//! rational; decimals appear only in presentation columns.

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codec::code_length;
use crate::combinatorics::{
    binomial_coefficient, central_c, central_d, short_codewords_left, slice_count,
};
use crate::decimal::to_f64;
use crate::source::{all_blocks, sample_block, BitSource};

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum AnalysisError {
    #[error("conditional index x = {x} outside 0..={max} for n = {n}", max = n - 1)]
    ConditionalIndexOutOfRange { n: u64, x: u64 },
    #[error("brute force is guarded to n in 1..=8, got n = {n}")]
    BruteForceRangeExceeded { n: u64 },
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// `p_n(x) = binom(n-1, x) 2^(-(n-1))`, zero outside `0..=n-1`.
pub fn binomial_weight(n: u64, x: i64) -> BigRational {
    assert!(n >= 1);
    if x < 0 || x as u64 > n - 1 {
        return BigRational::zero();
    }
    BigRational::new(
        binomial_coefficient(n - 1, x as u64),
        BigInt::one() << (n - 1),
    )
}

/// `g_n(x) = min(1, max(0, V_n(k) / N(k, n)))` with `k = n + 1 + x`: the
/// probability of a one-bit saving given `x` interior `{C,D}` symbols.
pub fn conditional_saving(n: u64, x: u64) -> Result<BigRational, AnalysisError> {
    assert!(n >= 2);
    if x > n - 1 {
        return Err(AnalysisError::ConditionalIndexOutOfRange { n, x });
    }
    let k = n + 1 + x;
    let available = short_codewords_left(n, k);
    if !available.is_positive() {
        return Ok(BigRational::zero());
    }
    let slice = slice_count(k as i64, n);
    if available >= slice {
        return Ok(BigRational::one());
    }
    Ok(BigRational::new(available, slice))
}

/// `P(I_n = 1) = sum_x p_n(x) g_n(x)`, computed exactly.
///
/// Each product `p_n(x) g_n(x)` is the dyadic rational
/// `clamp(V_n(k), 0, N(k, n)) / 2^(n+x+1)`, so the whole sum is assembled as
/// one integer over the common denominator `2^(2n)`. Saturated tail terms
/// (`x >= (n+1)/2`, where the saving is certain) are folded in as a plain
/// binomial tail. The clamped counts come from the rolling recurrence
/// `S(x+1) = S(x) + 2 S(x-1) + G(x+1) + 2 G(x)` for the partial sums
/// `S(x) = sum_(j<=x) U(n-1+x, j)`, with `G(x) = binom(n-2, x) 2^x`, which
/// keeps the sweep linear in `n`.
pub fn saving_probability(n: u64) -> BigRational {
    assert!(n >= 1);
    if n == 1 {
        // The binomial reduction degenerates at n = 1: two of the four
        // single symbols get the short codeword.
        return half();
    }
    let tail_start = (n + 2) / 2; // ceil((n+1)/2)
    let mut numer = BigInt::zero();

    let mut s_prev = BigInt::zero(); // S(x-1)
    let mut s_cur = BigInt::one(); // S(0) = U(n-1, 0)
    let mut g_cur = BigInt::one(); // binom(n-2, x) 2^x at x = 0
    let mut cap = BigInt::from(4); // N(k, n) = 4 binom(n-1, x) 2^x at x = 0
    let mut pow = BigInt::one() << n; // 2^(m+1) with m = n - 1 + x

    for x in 0..tail_start {
        let m = n - 1 + x;
        let usum = if m.is_multiple_of(2) { (&pow + 1) / 3 } else { (&pow - 1) / 3 };
        let v: BigInt = 4 * &s_cur - 2 * usum; // V_n(n + 1 + x), signed
        if v.is_positive() {
            let clamped = if v >= cap { &cap } else { &v };
            numer += clamped << (n - 1 - x);
        }
        // Advance the rolling state to x + 1.
        let g_next = if x <= n - 2 {
            &g_cur * (2 * (n - 2 - x)) / (x + 1)
        } else {
            BigInt::zero()
        };
        let s_next = &s_cur + 2 * &s_prev + &g_next + 2 * &g_cur;
        cap = cap * (2 * (n - 1 - x)) / (x + 1);
        s_prev = std::mem::replace(&mut s_cur, s_next);
        g_cur = g_next;
        pow <<= 1;
    }

    // Saturated tail: g_n(x) = 1, so the terms reduce to binomial masses.
    let mut tail = BigInt::zero();
    let mut weight = binomial_coefficient(n - 1, tail_start);
    for x in tail_start..n {
        tail += &weight;
        weight = weight * (n - 1 - x) / (x + 1);
    }
    numer += tail << (n + 1);

    BigRational::new(numer, BigInt::one() << (2 * n))
}

/// `E[L_n] = 3n/2 + 1/2 - P(I_n = 1)`, exact.
pub fn expected_length(n: u64) -> BigRational {
    assert!(n >= 1);
    BigRational::new(BigInt::from(3 * n + 1), BigInt::from(2)) - saving_probability(n)
}

/// Brute-force route for `E[L_n]`: enumerate every admissible length-`n`
/// block and weigh the enumeration codebook's codeword lengths by the exact
/// block probabilities. Guarded to `n <= 8` against combinatorial blowup.
pub fn expected_length_bruteforce(n: u64) -> Result<BigRational, AnalysisError> {
    if !(1..=8).contains(&n) {
        return Err(AnalysisError::BruteForceRangeExceeded { n });
    }
    let codebook = crate::codec::brute_force_codebook(2 * n);
    let mut total = BigRational::zero();
    for block in all_blocks(n as usize) {
        let word = codebook
            .codeword(&block)
            .expect("codebook covers all costs up to 2n");
        total += block.block_probability() * BigInt::from(word.len());
    }
    Ok(total)
}

/// Lower bound on the saving probability that keeps only the central
/// binomial term and discards the rest:
/// `1/2 + p_n(t) D_t / (2 C_t)` for odd `n = 2t + 1` and
/// `1/2 + p_n(t) D_t / C_t` for even `n = 2t`.
pub fn saving_lower_bound(n: u64) -> BigRational {
    assert!(n >= 2);
    let t = n / 2;
    let d = central_d(t);
    let c = central_c(t);
    let excess = if n % 2 == 1 {
        BigRational::new(d, 2 * c)
    } else {
        BigRational::new(d, c)
    };
    half() + binomial_weight(n, t as i64) * excess
}

/// The three central conditional savings in closed form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CentralConditionals {
    /// `g_(2t+1)(t) = 1/2 + D_t / (2 C_t)`.
    pub odd_center: BigRational,
    /// `g_(2t)(t) = 1 - D_t / C_t`.
    pub even_center: BigRational,
    /// `g_(2t)(t-1) = 2 D_t / C_t`.
    pub even_left: BigRational,
}

pub fn central_conditionals(t: u64) -> CentralConditionals {
    assert!(t >= 1);
    let d = central_d(t);
    let c = central_c(t);
    CentralConditionals {
        odd_center: half() + BigRational::new(d.clone(), 2 * &c),
        even_center: BigRational::one() - BigRational::new(d.clone(), c.clone()),
        even_left: BigRational::new(2 * d, c),
    }
}

/// True iff `g_n(x) = 1` for every `x >= (n+1)/2` (vacuously for `n = 2`).
pub fn tail_saturation_check(n: u64) -> bool {
    assert!(n >= 2);
    let one = BigRational::one();
    ((n + 2) / 2..n).all(|x| conditional_saving(n, x).expect("x in range") == one)
}

/// Per-blocklength comparison against the `3n/2` benchmark.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SavingReport {
    pub n: u64,
    /// `P(I_n = 1)`.
    pub saving_prob: BigRational,
    /// `E[L_n]`.
    pub expected_length: BigRational,
    /// `H(X_1^n) = 3n/2 + 1/2`.
    pub entropy: BigRational,
    /// `3n/2`.
    pub benchmark: BigRational,
    /// `3n/2 - E[L_n] = P(I_n = 1) - 1/2`.
    pub gap: BigRational,
}

impl SavingReport {
    pub fn new(n: u64) -> Self {
        let saving_prob = saving_probability(n);
        let entropy = BigRational::new(BigInt::from(3 * n + 1), BigInt::from(2));
        let expected_length = &entropy - &saving_prob;
        let benchmark = BigRational::new(BigInt::from(3 * n), BigInt::from(2));
        let gap = &benchmark - &expected_length;
        SavingReport {
            n,
            saving_prob,
            expected_length,
            entropy,
            benchmark,
            gap,
        }
    }

    /// `gap * sqrt(n)` as a double, for asymptotic inspection.
    pub fn gap_times_sqrt_n(&self) -> f64 {
        to_f64(&self.gap) * (self.n as f64).sqrt()
    }
}

/// Reports for `n = 1..=n_max`.
pub fn gap_table(n_max: u64) -> Vec<SavingReport> {
    assert!(n_max >= 1);
    (1..=n_max).map(SavingReport::new).collect()
}

/// Monte Carlo estimate of the mean code length.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct McEstimate {
    pub n: u64,
    pub samples: u64,
    pub seed: u64,
    pub mean: f64,
    pub std_error: f64,
}

/// Samples `samples` independent blocks of length `n` and averages their
/// exact code lengths. Per-block seeds are drawn from a SplitMix64 stream
/// seeded with `seed`, so the estimate is deterministic per
/// `(n, samples, seed)`.
pub fn monte_carlo_length(n: u64, samples: u64, seed: u64) -> McEstimate {
    assert!(n >= 1 && samples >= 1);
    let mut seeder = BitSource::new(seed);
    let mut sum = 0u128;
    let mut sum_sq = 0u128;
    for _ in 0..samples {
        let block_seed = seeder.next_bits(64);
        let len = code_length(&sample_block(n, block_seed)) as u128;
        sum += len;
        sum_sq += len * len;
    }
    let count = samples as f64;
    let mean = sum as f64 / count;
    let std_error = if samples > 1 {
        let variance = (sum_sq as f64 - count * mean * mean) / (count - 1.0);
        (variance.max(0.0) / count).sqrt()
    } else {
        0.0
    };
    McEstimate {
        n,
        samples,
        seed,
        mean,
        std_error,
    }
}
