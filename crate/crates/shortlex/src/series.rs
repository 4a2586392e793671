//! Truncated formal power series with exact rational coefficients.
//!
//! This is the oracle for the generating-function identities: the named
//! closed forms are expanded through exact arithmetic (products, reciprocals,
//! and binomial-series powers of `1 - 8z`) and compared coefficient by
//! coefficient against the direct combinatorial sums.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};

/// A power series truncated at a fixed order; coefficient `t` is the exact
/// rational multiplier of `z^t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn from_coefficients(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty());
        PowerSeries { coeffs }
    }

    pub fn zero(order: u64) -> Self {
        PowerSeries {
            coeffs: vec![BigRational::zero(); order as usize + 1],
        }
    }

    pub fn one(order: u64) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// `c * z^degree`, truncated at `order`.
    pub fn monomial(c: BigRational, degree: u64, order: u64) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree as usize] = c;
        }
        s
    }

    pub fn order(&self) -> u64 {
        self.coeffs.len() as u64 - 1
    }

    pub fn coefficient(&self, t: u64) -> &BigRational {
        &self.coeffs[t as usize]
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// True iff every coefficient has denominator one.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let len = self.coeffs.len().min(other.coeffs.len());
        PowerSeries {
            coeffs: (0..len).map(|i| f(&self.coeffs[i], &other.coeffs[i])).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let len = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn reciprocal(&self) -> Self {
        assert!(!self.coeffs[0].is_zero(), "no reciprocal: zero constant term");
        let len = self.coeffs.len();
        let mut coeffs = vec![BigRational::zero(); len];
        let inv0 = self.coeffs[0].recip();
        coeffs[0] = inv0.clone();
        for t in 1..len {
            let mut acc = BigRational::zero();
            for i in 1..=t {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &coeffs[t - i];
                }
            }
            coeffs[t] = -acc * &inv0;
        }
        PowerSeries { coeffs }
    }

    /// Divide by `z^k`; the low-order coefficients must vanish.
    pub fn shift_down(&self, k: u64) -> Self {
        let k = k as usize;
        assert!(k < self.coeffs.len());
        assert!(
            self.coeffs[..k].iter().all(|c| c.is_zero()),
            "shift_down would drop nonzero coefficients"
        );
        PowerSeries {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// `(1 + c z)^alpha` through the binomial series
    /// `sum_t binom(alpha, t) (c z)^t` with exact rational terms.
    pub fn binomial_power(alpha: &BigRational, c: &BigRational, order: u64) -> Self {
        let mut coeffs = Vec::with_capacity(order as usize + 1);
        let mut term = BigRational::one();
        coeffs.push(term.clone());
        for t in 0..order {
            let factor = (alpha - BigRational::from(BigInt::from(t))) * c
                / BigRational::from(BigInt::from(t + 1));
            term *= factor;
            coeffs.push(term.clone());
        }
        PowerSeries { coeffs }
    }
}

/// The named generating functions of the central count families.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesKind {
    /// `C(z) = 1/sqrt(1-8z) - 1`, coefficients `C_t`.
    C,
    /// `D(z) = z / ((1+z) sqrt(1-8z))`, coefficients `D_t`.
    D,
    /// `B(z) = ((1-z)/((1+z) sqrt(1-8z)) - 1) / 2`, coefficients `B_t`.
    B,
    /// `T(z) = (16z/(1-8z) - z/(1+z)) / 3`, coefficients `S_(3t+2) / 4`.
    T,
    /// `P(z) = (1 - sqrt(1-8z) - 2z) / (2 (1+z) (1-8z))`, coefficients
    /// `sum_(j<t) U(3t, j)`.
    P,
    /// `X(z) = (1 - 4z - sqrt(1-8z)) / (4z)`, the solution of
    /// `X = 2z (1+X)^2` with `X(0) = 0`.
    X,
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 6] = [
        SeriesKind::C,
        SeriesKind::D,
        SeriesKind::B,
        SeriesKind::T,
        SeriesKind::P,
        SeriesKind::X,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::C => "C",
            SeriesKind::D => "D",
            SeriesKind::B => "B",
            SeriesKind::T => "T",
            SeriesKind::P => "P",
            SeriesKind::X => "X",
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "C" => Ok(SeriesKind::C),
            "D" => Ok(SeriesKind::D),
            "B" => Ok(SeriesKind::B),
            "T" => Ok(SeriesKind::T),
            "P" => Ok(SeriesKind::P),
            "X" => Ok(SeriesKind::X),
            other => Err(format!("unknown series {other:?}: expected one of C, D, B, T, P, X")),
        }
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Expand the named closed form to the requested truncation order.
pub fn series(kind: SeriesKind, order: u64) -> PowerSeries {
    assert!(order >= 1, "order must be positive");
    // X needs one extra coefficient before its shift by z.
    let work = order + 1;
    let inv_sqrt = PowerSeries::binomial_power(&ratio(-1, 2), &rat(-8), work);
    let sqrt = PowerSeries::binomial_power(&ratio(1, 2), &rat(-8), work);
    let inv_one_plus = PowerSeries::binomial_power(&rat(-1), &rat(1), work);
    let inv_one_minus8 = PowerSeries::binomial_power(&rat(-1), &rat(-8), work);
    let one = PowerSeries::one(work);
    let z = PowerSeries::monomial(BigRational::one(), 1, work);
    let truncate = |s: PowerSeries| PowerSeries::from_coefficients(s.coefficients()[..=order as usize].to_vec());
    match kind {
        SeriesKind::C => truncate(inv_sqrt.sub(&one)),
        SeriesKind::D => truncate(z.mul(&inv_sqrt).mul(&inv_one_plus)),
        SeriesKind::B => {
            let one_minus_z = one.sub(&z);
            truncate(
                one_minus_z
                    .mul(&inv_one_plus)
                    .mul(&inv_sqrt)
                    .sub(&one)
                    .scale(&ratio(1, 2)),
            )
        }
        SeriesKind::T => {
            let left = PowerSeries::monomial(rat(16), 1, work).mul(&inv_one_minus8);
            let right = z.mul(&inv_one_plus);
            truncate(left.sub(&right).scale(&ratio(1, 3)))
        }
        SeriesKind::P => {
            let numer = one.sub(&sqrt).sub(&PowerSeries::monomial(rat(2), 1, work));
            let denom = one
                .add(&z)
                .mul(&one.sub(&PowerSeries::monomial(rat(8), 1, work)))
                .scale(&rat(2));
            truncate(numer.mul(&denom.reciprocal()))
        }
        SeriesKind::X => {
            let numer = one.sub(&PowerSeries::monomial(rat(4), 1, work)).sub(&sqrt);
            numer.shift_down(1).scale(&ratio(1, 4))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{
        central_b, central_c, central_d, class_size, u_count,
    };

    fn int_coeffs(s: &PowerSeries) -> Vec<BigInt> {
        assert!(s.is_integral());
        s.coefficients().iter().map(|c| c.numer().clone()).collect()
    }

    #[test]
    fn named_series_examples() {
        assert_eq!(
            int_coeffs(&series(SeriesKind::D, 3)),
            vec![0, 1, 3, 21].into_iter().map(BigInt::from).collect::<Vec<_>>()
        );
        assert_eq!(
            int_coeffs(&series(SeriesKind::C, 2)),
            vec![0, 4, 24].into_iter().map(BigInt::from).collect::<Vec<_>>()
        );
        assert_eq!(
            int_coeffs(&series(SeriesKind::X, 2)),
            vec![0, 2, 8].into_iter().map(BigInt::from).collect::<Vec<_>>()
        );
    }

    #[test]
    fn series_match_direct_sums() {
        let order = 40u64;
        let c = series(SeriesKind::C, order);
        let d = series(SeriesKind::D, order);
        let b = series(SeriesKind::B, order);
        let t_series = series(SeriesKind::T, order);
        let p = series(SeriesKind::P, order);
        for s in [&c, &d, &b, &t_series, &p] {
            assert!(s.is_integral());
            assert!(s.coefficient(0).is_zero());
        }
        for t in 1..=order {
            assert_eq!(c.coefficient(t).numer(), &central_c(t), "C at {t}");
            assert_eq!(d.coefficient(t).numer(), &central_d(t), "D at {t}");
            assert_eq!(b.coefficient(t).numer(), &central_b(t), "B at {t}");
            assert_eq!(
                t_series.coefficient(t).numer(),
                &(class_size(3 * t + 2).unwrap() / 4),
                "T at {t}"
            );
            let partial: BigInt = (0..t as i64).map(|j| u_count(3 * t as i64, j)).sum();
            assert_eq!(p.coefficient(t).numer(), &partial, "P at {t}");
        }
    }

    #[test]
    fn b_series_equals_half_c_minus_two_d() {
        let order = 30u64;
        let c = series(SeriesKind::C, order);
        let d = series(SeriesKind::D, order);
        let b = series(SeriesKind::B, order);
        let derived = c.sub(&d.scale(&rat(2))).scale(&ratio(1, 2));
        assert_eq!(b, derived);
    }

    #[test]
    fn x_satisfies_functional_equation() {
        // X = 2z (1 + X)^2
        let order = 25u64;
        let x = series(SeriesKind::X, order);
        let one_plus = PowerSeries::one(order).add(&x);
        let rhs = PowerSeries::monomial(rat(2), 1, order).mul(&one_plus.mul(&one_plus));
        assert_eq!(x, rhs);
    }

    #[test]
    fn reciprocal_inverts() {
        let s = PowerSeries::binomial_power(&ratio(-1, 2), &rat(-8), 20);
        let product = s.mul(&s.reciprocal());
        assert_eq!(product, PowerSeries::one(20));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("d".parse::<SeriesKind>().unwrap(), SeriesKind::D);
        assert_eq!("X".parse::<SeriesKind>().unwrap(), SeriesKind::X);
        assert!("Q".parse::<SeriesKind>().is_err());
    }
}
