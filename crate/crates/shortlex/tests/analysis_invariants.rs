//! Range invariants of the analysis layer beyond the acceptance criteria.

use num::{BigInt, BigRational, One, Zero};

use shortlex::analysis::{binomial_weight, central_conditionals, conditional_saving};
use shortlex::combinatorics::{binomial_coefficient, central_c, central_d};

#[test]
fn binomial_masses_normalize_up_to_2000() {
    // sum_x p_n(x) = 1 exactly; over the common denominator 2^(n-1) this is
    // the integer identity sum_x binom(n-1, x) = 2^(n-1), swept with rolling
    // binomials so the whole range stays cheap.
    for n in 1..=2000u64 {
        let mut total = BigInt::zero();
        let mut weight = BigInt::one(); // binom(n-1, 0)
        for x in 0..n {
            total += &weight;
            weight = weight * (n - 1 - x) / (x + 1);
        }
        assert_eq!(total, BigInt::one() << (n - 1), "n={n}");
    }
    // Spot-check the rational form against the rolling route.
    for n in [1u64, 2, 17, 256, 2000] {
        let x = (n / 3) as i64;
        let direct = BigRational::new(
            binomial_coefficient(n - 1, x as u64),
            BigInt::one() << (n - 1),
        );
        assert_eq!(binomial_weight(n, x), direct);
    }
}

#[test]
fn conditional_savings_stay_in_unit_interval() {
    let one = BigRational::one();
    for n in 2..=150u64 {
        for x in 0..n {
            let g = conditional_saving(n, x).unwrap();
            assert!(g >= BigRational::zero() && g <= one, "g_{n}({x}) = {g}");
        }
    }
}

#[test]
fn central_closed_forms_hold_to_t_200() {
    for t in 1..=200u64 {
        let closed = central_conditionals(t);
        assert_eq!(
            closed.odd_center,
            conditional_saving(2 * t + 1, t).unwrap(),
            "odd center at t={t}"
        );
        assert_eq!(
            closed.even_center,
            conditional_saving(2 * t, t).unwrap(),
            "even center at t={t}"
        );
        assert_eq!(
            closed.even_left,
            conditional_saving(2 * t, t - 1).unwrap(),
            "even left at t={t}"
        );
        // g_2t(t-1) + g_2t(t) = 1 + D_t / C_t
        let pair = closed.even_left + closed.even_center;
        let rhs = BigRational::one() + BigRational::new(central_d(t), central_c(t));
        assert_eq!(pair, rhs, "pair identity at t={t}");
    }
}
