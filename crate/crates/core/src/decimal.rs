//! Decimal rendering of exact rationals with directed rounding.
//!
//! JSON exports carry every number as a decimal string. Interval endpoints
//! are rounded outward (lo down, hi up) so the exported pair still encloses
//! the underlying real; point values use round-to-nearest.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    /// Toward minus infinity.
    Down,
    /// Toward plus infinity.
    Up,
    /// To nearest, ties away from zero.
    Nearest,
}

fn pow10(e: u64) -> BigInt {
    num_traits::pow::pow(BigInt::from(10), e as usize)
}

/// Exact decimal exponent: the unique `e` with `10^e <= m < 10^(e+1)`
/// for positive rational `m`.
fn decimal_exponent(a: &BigInt, b: &BigInt) -> i64 {
    // first guess from bit lengths, then correct exactly
    let mut e = ((a.bits() as f64 - b.bits() as f64) * std::f64::consts::LOG10_2).floor() as i64;
    loop {
        // compare m = a/b against 10^e
        let ge = if e >= 0 { *a >= b * pow10(e as u64) } else { a * pow10((-e) as u64) >= *b };
        if !ge {
            e -= 1;
            continue;
        }
        let lt_next =
            if e + 1 >= 0 { *a < b * pow10((e + 1) as u64) } else { a * pow10((-(e + 1)) as u64) < *b };
        if !lt_next {
            e += 1;
            continue;
        }
        return e;
    }
}

/// Render `x` to `sig` significant decimal digits with the given rounding.
///
/// Output format: plain decimal when the exponent is moderate, otherwise
/// normalized scientific (`d.dddddde+E`). Deterministic for fixed inputs.
pub fn to_decimal_string(x: &BigRational, sig: u32, rounding: Rounding) -> String {
    assert!(sig >= 1);
    if x.is_zero() {
        return "0".to_string();
    }
    let negative = x.is_negative();
    // directed rounding acts on the signed value; translate to an action on
    // the magnitude
    let round_mag_up = match (rounding, negative) {
        (Rounding::Down, false) | (Rounding::Up, true) => false,
        (Rounding::Up, false) | (Rounding::Down, true) => true,
        (Rounding::Nearest, _) => false, // handled separately
    };

    let a = x.numer().magnitude().clone().into();
    let b: BigInt = x.denom().magnitude().clone().into();
    let mut e = decimal_exponent(&a, &b);

    // digits = rounded(a/b * 10^(sig-1-e)), an integer in [10^(sig-1), 10^sig]
    let k = sig as i64 - 1 - e;
    let (num, den) = if k >= 0 { (&a * pow10(k as u64), b.clone()) } else { (a.clone(), &b * pow10((-k) as u64)) };
    let (mut digits, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        match rounding {
            Rounding::Nearest => {
                if &rem * BigInt::from(2) >= den {
                    digits += BigInt::one();
                }
            }
            _ => {
                if round_mag_up {
                    digits += BigInt::one();
                }
            }
        }
    }
    if digits == pow10(sig as u64) {
        digits = pow10((sig - 1) as u64);
        e += 1;
    }

    let ds = digits.to_string();
    debug_assert_eq!(ds.len(), sig as usize);
    let body = if (0..=14).contains(&e) {
        let e = e as usize;
        if e + 1 >= ds.len() {
            // integer with trailing zeros
            format!("{}{}", ds, "0".repeat(e + 1 - ds.len()))
        } else {
            format!("{}.{}", &ds[..=e], trim_zeros(&ds[e + 1..]))
        }
    } else if (-4..0).contains(&e) {
        format!("0.{}{}", "0".repeat((-e - 1) as usize), trim_zeros(&ds))
    } else {
        let mantissa = if ds.len() > 1 {
            format!("{}.{}", &ds[..1], trim_zeros(&ds[1..]))
        } else {
            ds.clone()
        };
        format!("{}e{}{}", mantissa, if e >= 0 { "+" } else { "-" }, e.abs())
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_zeros(s: &str) -> String {
    let t = s.trim_end_matches('0');
    if t.is_empty() {
        "0".to_string()
    } else {
        t.to_string()
    }
}

/// Nearest-rounded rendering at 12 significant digits, the report default.
pub fn report_decimal(x: &BigRational) -> String {
    to_decimal_string(x, 12, Rounding::Nearest)
}

/// Number of decimal digits of a positive integer, exact below the size
/// guard and derived from the bit length (within +/-1) above it. Table
/// summaries never pay for full base-10 conversion of megabit integers.
pub fn digit_count_estimate(n: &BigInt) -> (u64, bool) {
    debug_assert!(n.is_positive());
    let bits = n.bits();
    if bits <= 1 << 16 {
        (n.to_string().len() as u64, true)
    } else {
        let est = (bits as f64 * std::f64::consts::LOG10_2).floor() as u64 + 1;
        (est, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn rat(s: &str) -> BigRational {
        match s.split_once('/') {
            Some((n, d)) => {
                BigRational::new(BigInt::from_str(n).unwrap(), BigInt::from_str(d).unwrap())
            }
            None => BigRational::from_integer(BigInt::from_str(s).unwrap()),
        }
    }

    #[test]
    fn basic_renderings() {
        assert_eq!(report_decimal(&rat("0")), "0");
        assert_eq!(report_decimal(&rat("1")), "1");
        assert_eq!(report_decimal(&rat("-3/2")), "-1.5");
        assert_eq!(report_decimal(&rat("1/3")), "0.333333333333");
        assert_eq!(report_decimal(&rat("40/27")), "1.48148148148");
        assert_eq!(report_decimal(&rat("731")), "731");
    }

    #[test]
    fn scientific_for_extreme_exponents() {
        assert_eq!(report_decimal(&rat("1/534386")), "1.87131100179e-6");
        let s = report_decimal(&rat("123456789123456789123456789"));
        assert_eq!(s, "1.23456789123e+26");
    }

    #[test]
    fn directed_rounding_brackets() {
        let x = rat("1/3");
        let lo = to_decimal_string(&x, 4, Rounding::Down);
        let hi = to_decimal_string(&x, 4, Rounding::Up);
        assert_eq!(lo, "0.3333");
        assert_eq!(hi, "0.3334");
        let y = rat("-1/3");
        assert_eq!(to_decimal_string(&y, 4, Rounding::Down), "-0.3334");
        assert_eq!(to_decimal_string(&y, 4, Rounding::Up), "-0.3333");
    }

    #[test]
    fn carry_at_all_nines() {
        let x = rat("9999999999995/10000000000000"); // 0.9999999999995
        assert_eq!(to_decimal_string(&x, 12, Rounding::Up), "1");
        assert_eq!(to_decimal_string(&x, 12, Rounding::Down), "0.999999999999");
    }

    #[test]
    fn exact_values_roundtrip_unchanged() {
        // values exactly representable in 12 digits are rendered exactly
        assert_eq!(report_decimal(&rat("75/2")), "37.5");
        assert_eq!(report_decimal(&rat("2030")), "2030");
    }

    #[test]
    fn digit_count_small_exact() {
        assert_eq!(digit_count_estimate(&BigInt::from(534386)), (6, true));
        assert_eq!(digit_count_estimate(&BigInt::from(1)), (1, true));
    }
}
