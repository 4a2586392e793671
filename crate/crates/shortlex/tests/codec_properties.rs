//! Property-based and sampled roundtrip coverage for the codec.

use num::BigInt;
use proptest::prelude::*;

use shortlex::codec::{
    binary_rank, binary_unrank, code_length, decode, encode, source_rank, source_unrank,
};
use shortlex::source::{all_blocks, sample_block, AdmissibleString, Symbol};
use shortlex::BinaryWord;

/// Builds an admissible string by walking the transition graph with the given
/// successor choices.
fn admissible_from_choices(first: u8, choices: &[u8]) -> AdmissibleString {
    let mut symbols = vec![Symbol::ALL[(first % 4) as usize]];
    for &c in choices {
        let succ = symbols.last().unwrap().successors();
        symbols.push(succ[c as usize % succ.len()]);
    }
    AdmissibleString::new(symbols).expect("walk follows the transition graph")
}

fn admissible_strategy(max_len: usize) -> impl Strategy<Value = AdmissibleString> {
    (any::<u8>(), proptest::collection::vec(any::<u8>(), 0..max_len))
        .prop_map(|(first, choices)| admissible_from_choices(first, &choices))
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = BinaryWord> {
    proptest::collection::vec(any::<bool>(), 1..=max_len)
        .prop_map(|bits| BinaryWord::new(bits).expect("nonempty"))
}

proptest! {
    #[test]
    fn roundtrip_random_blocks(u in admissible_strategy(60)) {
        prop_assert_eq!(decode(&encode(&u)), u);
    }

    #[test]
    fn reverse_roundtrip_random_words(w in word_strategy(48)) {
        prop_assert_eq!(encode(&decode(&w)), w);
    }

    #[test]
    fn rank_unrank_inverse(u in admissible_strategy(40)) {
        let rank = source_rank(&u);
        prop_assert_eq!(source_unrank(&rank).unwrap(), u);
    }

    #[test]
    fn binary_rank_unrank_inverse(w in word_strategy(40)) {
        let rank = binary_rank(&w);
        prop_assert_eq!(binary_unrank(&rank).unwrap(), w);
    }

    #[test]
    fn order_preserved(a in admissible_strategy(30), b in admissible_strategy(30)) {
        // The source order and the shortlex order of the codewords agree.
        let (ra, rb) = (binary_rank(&encode(&a)), binary_rank(&encode(&b)));
        prop_assert_eq!(a.cmp(&b), ra.cmp(&rb));
    }

    #[test]
    fn length_dichotomy(u in admissible_strategy(50)) {
        let k = u.information_cost();
        let len = code_length(&u);
        prop_assert!(len == k - 1 || len == k);
        prop_assert_eq!(len as usize, encode(&u).len());
    }

    #[test]
    fn probability_matches_cost(u in admissible_strategy(50)) {
        let p = u.block_probability();
        prop_assert_eq!(p.denom(), &(BigInt::from(1) << u.information_cost()));
        prop_assert_eq!(p.numer(), &BigInt::from(1));
    }
}

#[test]
fn codewords_exhaust_shortlex_prefix() {
    // The first 4 * 3^(n-1) ranks of each length slice are hit exactly once:
    // encoding all blocks of lengths 1..=6 and the matching unranks agree.
    for n in 1..=6usize {
        for u in all_blocks(n) {
            let rank = source_rank(&u);
            assert_eq!(source_unrank(&rank).unwrap(), u);
        }
    }
}

#[test]
fn sampled_roundtrips_at_production_lengths() {
    // 10^4 sampled blocks at each length.
    for &n in &[50u64, 200, 1000] {
        for seed in 0..10_000u64 {
            let u = sample_block(n, seed.wrapping_mul(0x9E37_79B9).wrapping_add(n));
            let word = encode(&u);
            assert_eq!(word.len() as u64, code_length(&u), "length at n={n} seed={seed}");
            assert_eq!(decode(&word), u, "roundtrip at n={n} seed={seed}");
        }
    }
}
