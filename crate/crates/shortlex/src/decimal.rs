//! Decimal presentation of exact rationals.
//!
//! All probabilities and expectations in this crate are exact; decimals exist
//! only in presentation columns. The default precision is 12 significant
//! digits, rounded half-up.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

pub const DEFAULT_SIG_DIGITS: usize = 12;

/// Positional decimal rendering with `sig_digits` significant digits,
/// rounded half-up, trailing zeros kept.
pub fn decimal_string(value: &BigRational, sig_digits: usize) -> String {
    assert!(sig_digits >= 1);
    if value.is_zero() {
        return "0".to_string();
    }
    let sign = if value.is_negative() { "-" } else { "" };
    let numer = value.numer().abs();
    let denom = value.denom().clone();
    let int_part = &numer / &denom;
    let frac_digits = if int_part.is_zero() {
        // Count the zeros between the point and the first significant digit.
        let mut scaled = numer.clone();
        let mut leading = 0usize;
        loop {
            scaled *= 10;
            if scaled >= denom {
                break;
            }
            leading += 1;
        }
        leading + sig_digits
    } else {
        sig_digits.saturating_sub(int_part.to_string().len())
    };
    // round(numer * 10^f / denom), half away from zero
    let mut scale = BigInt::one();
    for _ in 0..frac_digits {
        scale *= 10;
    }
    let rounded: BigInt = (2u32 * numer * scale + &denom) / (2u32 * denom);
    let digits = rounded.to_string();
    if frac_digits == 0 {
        return format!("{sign}{digits}");
    }
    let padded = if digits.len() <= frac_digits {
        format!("{}{}", "0".repeat(frac_digits - digits.len() + 1), digits)
    } else {
        digits
    };
    let split = padded.len() - frac_digits;
    format!("{sign}{}.{}", &padded[..split], &padded[split..])
}

/// Nearest-double approximation, safe for arbitrarily large numerators and
/// denominators of moderate ratio.
pub fn to_f64(value: &BigRational) -> f64 {
    if value.is_zero() {
        return 0.0;
    }
    let negative = value.is_negative();
    let numer = value.numer().abs();
    let denom = value.denom().clone();
    // Scale so the integer quotient carries ~64 significant bits.
    let shift = 64 + denom.bits() as i64 - numer.bits() as i64;
    let quotient = if shift >= 0 {
        (numer << shift as u64) / denom
    } else {
        numer / (denom << (-shift) as u64)
    };
    let magnitude = quotient.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-shift as i32);
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn renders_simple_fractions() {
        assert_eq!(decimal_string(&r(5, 8), 12), "0.625000000000");
        assert_eq!(decimal_string(&r(23, 8), 12), "2.87500000000");
        assert_eq!(decimal_string(&r(71, 16), 12), "4.43750000000");
        assert_eq!(decimal_string(&r(0, 1), 12), "0");
        assert_eq!(decimal_string(&r(3, 1), 4), "3.000");
        assert_eq!(decimal_string(&r(-1, 16), 6), "-0.0625000");
    }

    #[test]
    fn rounds_half_up() {
        assert_eq!(decimal_string(&r(1, 3), 4), "0.3333");
        assert_eq!(decimal_string(&r(2, 3), 4), "0.6667");
        assert_eq!(decimal_string(&r(9999, 10000), 2), "1.00");
    }

    #[test]
    fn renders_small_magnitudes() {
        assert_eq!(decimal_string(&r(1, 1024), 5), "0.00097656");
    }

    #[test]
    fn f64_conversion() {
        assert_eq!(to_f64(&r(5, 8)), 0.625);
        assert_eq!(to_f64(&r(-3, 2)), -1.5);
        let huge = BigRational::new(
            BigInt::one() << 2000,
            (BigInt::one() << 2001) + BigInt::one(),
        );
        assert!((to_f64(&huge) - 0.5).abs() < 1e-12);
    }
}
