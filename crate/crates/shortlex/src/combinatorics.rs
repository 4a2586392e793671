//! Exact big-integer counting of admissible strings by cost, length, and
//! prefix.
//!
//! Cost classes satisfy `S_k = (2^(k+1) + 4(-1)^k) / 3` with the recurrence
//! `S_k = S_(k-1) + 2 S_(k-2)`, and the shortlex gap identity
//! `(2^k - 2) - T_(<k) = S_k / 2` governs how many short codewords remain for
//! each class. Slice counts reduce to `U(m, j) = binom(m-j, j) 2^j`, whose
//! central alternating sums drive the saving-probability bounds.

use std::collections::HashMap;

use num::{BigInt, One, Zero};
use thiserror::Error;

use crate::source::SymbolClass;

/// `binom(n, k)` as an exact big integer, by the incremental product
/// `binom(n, i+1) = binom(n, i) (n - i) / (i + 1)`. Every division is exact,
/// so each step is one small multiply and one small divide.
pub fn binomial_coefficient(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut value = BigInt::one();
    for i in 0..k {
        value = value * (n - i) / (i + 1);
    }
    value
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum CombinatoricsError {
    #[error("cost classes start at k = 2, got k = {k}")]
    CostBelowMinimum { k: u64 },
}

/// `S_k`, the number of admissible strings of information cost `k`, by the
/// closed form `(2^(k+1) + 4(-1)^k) / 3`. The recurrence serves as a test
/// oracle, not the implementation.
pub fn class_size(k: u64) -> Result<BigInt, CombinatoricsError> {
    if k < 2 {
        return Err(CombinatoricsError::CostBelowMinimum { k });
    }
    let sign: i64 = if k.is_multiple_of(2) { 4 } else { -4 };
    Ok(((BigInt::one() << (k + 1)) + sign) / 3)
}

/// `T_(<k)`, the number of admissible strings of cost strictly below `k`,
/// accumulated through the class-size recurrence so that the gap identity
/// remains a genuine cross-check against the closed form.
pub fn cumulative_below(k: u64) -> BigInt {
    let mut total = BigInt::zero();
    let mut prev = BigInt::from(4); // S_(j-1)
    let mut cur = BigInt::from(4); // S_j, starting at j = 2
    let mut j = 2u64;
    while j < k {
        total += &cur;
        j += 1;
        let next = if j == 3 {
            BigInt::from(4)
        } else {
            &cur + 2 * &prev
        };
        prev = std::mem::replace(&mut cur, next);
    }
    total
}

/// Per-class bookkeeping behind the length dichotomy.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CostProfile {
    pub k: u64,
    /// `S_k`, always even.
    pub class_size: BigInt,
    /// `T_(<k)`.
    pub cumulative_below: BigInt,
    /// `S_k / 2`, the short codewords available to the class.
    pub short_quota: BigInt,
}

impl CostProfile {
    pub fn new(k: u64) -> Result<Self, CombinatoricsError> {
        let size = class_size(k)?;
        Ok(CostProfile {
            k,
            short_quota: &size / 2,
            class_size: size,
            cumulative_below: cumulative_below(k),
        })
    }
}

/// `U(m, j) = binom(m-j, j) 2^j`, zero when `j < 0` or `2j > m`.
pub fn u_count(m: i64, j: i64) -> BigInt {
    if j < 0 || 2 * j > m {
        return BigInt::zero();
    }
    binomial_coefficient((m - j) as u64, j as u64) << (j as u64)
}

/// `N(k, len)`: admissible strings of length `len` and cost `k`; equals
/// `4 U(k-2, k-len-1)` and vanishes outside the support.
pub fn slice_count(k: i64, len: u64) -> BigInt {
    assert!(len >= 1, "lengths are positive");
    4 * u_count(k - 2, k - 1 - len as i64)
}

/// `W_(<n)(k)`: cost-`k` strings of length strictly below `n`.
pub fn shorter_in_class(n: u64, k: i64) -> BigInt {
    assert!(n >= 1);
    if k < 2 {
        return BigInt::zero();
    }
    let k = k as u64;
    let lmin = k.div_ceil(2); // first length with a nonempty slice
    let lmax = (k - 1).min(n - 1);
    if lmin > lmax {
        return BigInt::zero();
    }
    let mut slice = slice_count(k as i64, lmin);
    let mut total = BigInt::zero();
    for len in lmin..=lmax {
        total += &slice;
        if len < lmax {
            // N(k, len+1) = N(k, len) * len * (k-len-1) / (2 (2len-k+1) (2len-k+2))
            slice = slice * (len * (k - len - 1)) / (2 * (2 * len - k + 1) * (2 * len - k + 2));
        }
    }
    total
}

/// `V_n(k) = S_k / 2 - W_(<n)(k)`: signed count of short codewords left when
/// the length-`n` slice of class `k` begins. Clamping to `[0, N(k, n)]` is
/// the analysis layer's job.
pub fn short_codewords_left(n: u64, k: u64) -> BigInt {
    assert!(n >= 1 && k >= 2);
    let quota = class_size(k).expect("k >= 2") / 2;
    quota - shorter_in_class(n, k as i64)
}

/// `C_t = U(3t, t) = binom(2t, t) 2^t`.
pub fn central_c(t: u64) -> BigInt {
    binomial_coefficient(2 * t, t) << t
}

/// `D_t = C_(t-1) - C_(t-2) + ... + (-1)^(t-1) C_0`, evaluated through the
/// equivalent recurrence `D_t = C_(t-1) - D_(t-1)`.
pub fn central_d(t: u64) -> BigInt {
    assert!(t >= 1);
    let mut c = BigInt::one(); // C_0
    let mut d = BigInt::zero(); // D_0 (empty sum)
    for j in 1..=t {
        d = &c - d;
        if j < t {
            // C_j = C_(j-1) * 4 (2j - 1) / j
            c = c * (4 * (2 * j - 1)) / j;
        }
    }
    d
}

/// The defining double sum for `D_t`: the left tail of `U(3t, .)` below the
/// center minus the right tail above it. Kept as an independent route for the
/// alternating closed form.
pub fn central_d_from_sums(t: u64) -> BigInt {
    assert!(t >= 1);
    let m = 3 * t as i64;
    let below: BigInt = (0..t as i64).map(|j| u_count(m, j)).sum();
    let above: BigInt = (t as i64 + 1..=m / 2).map(|j| u_count(m, j)).sum();
    below - above
}

/// `B_t = C_t / 2 - D_t`.
pub fn central_b(t: u64) -> BigInt {
    assert!(t >= 1);
    central_c(t) / 2 - central_d(t)
}

/// The defining sum for `B_t` over `U(3t-1, .)`.
pub fn central_b_from_sums(t: u64) -> BigInt {
    assert!(t >= 1);
    let m = 3 * t as i64 - 1;
    let below: BigInt = (0..t as i64).map(|j| u_count(m, j)).sum();
    let above: BigInt = (t as i64 + 1..=m / 2).map(|j| u_count(m, j)).sum();
    below - above
}

/// `A_t`, the defining sum over `U(3t-2, .)`; satisfies `D_t = 2 A_t + B_t`.
pub fn central_a(t: u64) -> BigInt {
    assert!(t >= 1);
    let m = 3 * t as i64 - 2;
    let below: BigInt = (0..=t as i64 - 2).map(|j| u_count(m, j)).sum();
    let above: BigInt = (t as i64..=m / 2).map(|j| u_count(m, j)).sum();
    below - above
}

/// Number of admissible continuations of length `remaining` from a prefix
/// whose last symbol lies in `state` (`None` means no prefix yet), such that
/// the `{C, D}` symbols among all non-final positions -- the current one, if
/// non-final, included -- total exactly `cd_budget`.
///
/// From `{A, B}` each target class is reached by one forced symbol; from
/// `{C, D}` by two choices; from the start both classes offer two symbols.
/// Memoized per invocation; this is the counting kernel behind lexicographic
/// ranking.
pub fn prefix_completions(state: Option<SymbolClass>, remaining: u64, cd_budget: i64) -> BigInt {
    let mut memo = HashMap::new();
    completions(state, remaining, cd_budget, &mut memo)
}

type Memo = HashMap<(u8, u64, i64), BigInt>;

fn completions(state: Option<SymbolClass>, remaining: u64, budget: i64, memo: &mut Memo) -> BigInt {
    if remaining == 0 {
        return if budget == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    // The current symbol is non-final, so it owes its own weight now.
    let budget = budget - i64::from(state == Some(SymbolClass::Cd));
    if budget < 0 {
        return BigInt::zero();
    }
    let key = (
        match state {
            None => 0,
            Some(SymbolClass::Ab) => 1,
            Some(SymbolClass::Cd) => 2,
        },
        remaining,
        budget,
    );
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let choices_per_class: i64 = match state {
        Some(SymbolClass::Ab) => 1,
        None | Some(SymbolClass::Cd) => 2,
    };
    let value = (completions(Some(SymbolClass::Ab), remaining - 1, budget, memo)
        + completions(Some(SymbolClass::Cd), remaining - 1, budget, memo))
        * choices_per_class;
    memo.insert(key, value.clone());
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::all_blocks;
    use num::integer::binomial;
    use num::Signed;

    #[test]
    fn binomial_matches_reference_implementation() {
        for n in 0..=40u64 {
            for k in 0..=n + 2 {
                assert_eq!(
                    binomial_coefficient(n, k),
                    binomial(BigInt::from(n), BigInt::from(k)),
                    "binom({n}, {k})"
                );
            }
        }
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn class_size_examples() {
        assert_eq!(class_size(2).unwrap(), big(4));
        assert_eq!(class_size(3).unwrap(), big(4));
        assert_eq!(class_size(4).unwrap(), big(12));
        assert_eq!(class_size(7).unwrap(), big(84));
        assert!(class_size(1).is_err());
        assert!(class_size(0).is_err());
    }

    #[test]
    fn class_size_recurrence_and_parity() {
        for k in 4..=64u64 {
            let lhs = class_size(k).unwrap();
            let rhs = class_size(k - 1).unwrap() + 2 * class_size(k - 2).unwrap();
            assert_eq!(lhs, rhs, "recurrence at k={k}");
        }
        for k in 2..=64u64 {
            assert!((class_size(k).unwrap() % BigInt::from(2)).is_zero());
        }
    }

    #[test]
    fn class_size_matches_enumeration() {
        // Brute-force count of admissible strings with a given cost.
        let max_k = 12u64;
        let mut counts = vec![0u64; max_k as usize + 1];
        for len in 1..max_k as usize {
            for u in all_blocks(len) {
                let k = u.information_cost();
                if k <= max_k {
                    counts[k as usize] += 1;
                }
            }
        }
        for k in 2..=max_k {
            assert_eq!(BigInt::from(counts[k as usize]), class_size(k).unwrap());
        }
    }

    #[test]
    fn cumulative_below_examples() {
        assert_eq!(cumulative_below(2), big(0));
        assert_eq!(cumulative_below(4), big(8));
        assert_eq!(cumulative_below(6), big(40));
    }

    #[test]
    fn gap_identity() {
        for k in 2..=64u64 {
            let profile = CostProfile::new(k).unwrap();
            let gap = (BigInt::one() << k) - 2 - &profile.cumulative_below;
            assert_eq!(gap, profile.short_quota, "gap identity at k={k}");
            assert_eq!(&profile.class_size, &(2 * &profile.short_quota));
        }
    }

    #[test]
    fn u_count_examples() {
        assert_eq!(u_count(3, 1), big(4));
        assert_eq!(u_count(1, 1), big(0));
        assert_eq!(u_count(0, 0), big(1));
        assert_eq!(u_count(5, -1), big(0));
        assert_eq!(u_count(-1, 0), big(0));
    }

    #[test]
    fn u_recurrence() {
        // U(m+1, j) = U(m, j) + 2 U(m-1, j-1)
        for m in 0..=60i64 {
            for j in -1..=m / 2 + 2 {
                let lhs = u_count(m + 1, j);
                let rhs = u_count(m, j) + 2 * u_count(m - 1, j - 1);
                assert_eq!(lhs, rhs, "m={m} j={j}");
            }
        }
    }

    #[test]
    fn slice_count_examples() {
        assert_eq!(slice_count(3, 2), big(4));
        assert_eq!(slice_count(4, 2), big(8));
        assert_eq!(slice_count(4, 1), big(0));
    }

    #[test]
    fn slice_counts_decompose_class_sizes() {
        for k in 2..=40i64 {
            let total: BigInt = (1..=k as u64 - 1).map(|len| slice_count(k, len)).sum();
            assert_eq!(total, class_size(k as u64).unwrap(), "k={k}");
        }
    }

    #[test]
    fn slice_count_matches_enumeration() {
        for len in 1..=7usize {
            let blocks = all_blocks(len);
            for k in 2..=(2 * len as i64) {
                let expected = blocks
                    .iter()
                    .filter(|u| u.information_cost() as i64 == k)
                    .count();
                assert_eq!(slice_count(k, len as u64), big(expected as i64));
            }
        }
    }

    #[test]
    fn shorter_in_class_examples() {
        assert_eq!(shorter_in_class(2, 3), big(0));
        assert_eq!(shorter_in_class(3, 4), big(8));
        assert_eq!(shorter_in_class(1, 9), big(0));
        // Incremental accumulation agrees with direct slice sums.
        for k in 2..=30i64 {
            for n in 1..=40u64 {
                let direct: BigInt = (1..n).map(|len| slice_count(k, len)).sum();
                assert_eq!(shorter_in_class(n, k), direct, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn short_codewords_left_examples() {
        assert_eq!(short_codewords_left(2, 3), big(2));
        assert_eq!(short_codewords_left(3, 4), big(-2));
        assert_eq!(short_codewords_left(2, 4), big(6));
    }

    #[test]
    fn central_values() {
        assert_eq!(central_c(0), big(1));
        assert_eq!(central_c(1), big(4));
        assert_eq!(central_c(2), big(24));
        assert_eq!(central_d(1), big(1));
        assert_eq!(central_d(2), big(3));
        assert_eq!(central_d(3), big(21));
        assert_eq!(central_b(1), big(1));
        assert_eq!(central_b(2), big(9));
        assert_eq!(central_b(3), big(59));
        assert_eq!(central_a(1), big(0));
        assert_eq!(central_a(2), big(-3));
        assert_eq!(central_a(3), big(-19));
    }

    #[test]
    fn central_identities() {
        for t in 1..=40u64 {
            let c = central_c(t);
            let d = central_d(t);
            let b = central_b(t);
            let a = central_a(t);
            assert_eq!(d, central_d_from_sums(t), "D sums t={t}");
            assert_eq!(b, central_b_from_sums(t), "B sums t={t}");
            assert_eq!(d, 2 * &a + &b, "D = 2A + B t={t}");
            assert!(d.is_positive() && 2 * &d < c, "0 < D < C/2 t={t}");
            assert!(b.is_positive() && 2 * &b < c, "0 < B < C/2 t={t}");
        }
    }

    #[test]
    fn central_ratio_envelope() {
        // |D_t/C_t - 1/9| < 1/(12 t); the error decays like Theta(1/t).
        for t in 2..=200u64 {
            let c = central_c(t);
            let d = central_d(t);
            // |9 D - C| * 12 t < 9 C
            let err: BigInt = 9 * &d - &c;
            let lhs = err.abs() * (12 * t);
            assert!(lhs < 9 * &c, "envelope fails at t={t}");
        }
    }

    #[test]
    fn prefix_completion_examples() {
        assert_eq!(prefix_completions(None, 1, 0), big(4));
        assert_eq!(prefix_completions(None, 2, 0), big(4));
        assert_eq!(prefix_completions(None, 2, 0), slice_count(3, 2));
        assert_eq!(prefix_completions(None, 1, 1), big(0));
        assert_eq!(prefix_completions(None, 3, -1), big(0));
    }

    #[test]
    fn prefix_completions_match_slice_counts() {
        for len in 1..=10u64 {
            for j in 0..len as i64 {
                let count = prefix_completions(None, len, j);
                assert_eq!(count, slice_count(len as i64 + 1 + j, len), "len={len} j={j}");
                let closed = (4 * binomial(BigInt::from(len as i64 - 1), BigInt::from(j))) << (j as u64);
                assert_eq!(count, closed);
            }
        }
    }

    #[test]
    fn prefix_completions_from_symbol_classes() {
        // From {A,B}: one symbol per class; from {C,D}: two per class.
        assert_eq!(prefix_completions(Some(SymbolClass::Ab), 1, 0), big(2));
        assert_eq!(prefix_completions(Some(SymbolClass::Cd), 1, 0), big(0));
        assert_eq!(prefix_completions(Some(SymbolClass::Cd), 1, 1), big(4));
        // A CD symbol followed by two more positions owes its own weight:
        // two ways into {A,B}, then two final choices.
        assert_eq!(prefix_completions(Some(SymbolClass::Cd), 2, 1), big(4));
    }
}
