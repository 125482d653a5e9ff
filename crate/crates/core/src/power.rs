//! Exact rational exponents and the floor of `(s^beta - sub) / div`.
//!
//! Integer `beta` stays in exact integer arithmetic. Fractional `beta = n/d`
//! first tries exact d-th-root extraction (the only case where escalation
//! could not terminate), then brackets `s^(n/d)` by integer d-th roots of
//! `s^n * 2^(d*p)` at doubling precision `p` until the floor of the full
//! expression is pinned down.

use crate::error::{Error, Result};
use crate::interval::RatInterval;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Exact rational exponent `beta = num/den > 1` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BetaSpec {
    num: BigInt,
    den: BigInt,
}

impl BetaSpec {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidParameter("beta denominator is zero".into()));
        }
        let (mut num, mut den) = if den.is_negative() { (-num, -den) } else { (num, den) };
        let g = num.gcd(&den);
        num /= &g;
        den /= &g;
        if num <= den {
            return Err(Error::InvalidParameter("beta must exceed 1".into()));
        }
        Ok(Self { num, den })
    }

    pub fn from_u64(n: u64) -> Result<Self> {
        Self::new(BigInt::from(n), BigInt::one())
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), self.den.clone())
    }

    /// `(beta - 1/beta) / 2`, the weak-uniform exponent this beta realizes.
    pub fn weak_uniform_target(&self) -> BigRational {
        let b = self.as_rational();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        (&b - b.recip()) * half
    }
}

impl fmt::Display for BetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for BetaSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_int = |t: &str| {
            BigInt::from_str(t.trim())
                .map_err(|_| Error::InvalidParameter(format!("bad integer in beta: {t:?}")))
        };
        match s.split_once('/') {
            Some((n, d)) => Self::new(parse_int(n)?, parse_int(d)?),
            None => Self::new(parse_int(s)?, BigInt::one()),
        }
    }
}

impl TryFrom<String> for BetaSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BetaSpec> for String {
    fn from(b: BetaSpec) -> String {
        b.to_string()
    }
}

/// Escalation budget for fractional-power enclosures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionBudget {
    /// Hard cap on working fractional bits; escalation starts at 128 and
    /// doubles. Default 2^20.
    pub max_bits: u64,
}

impl Default for PrecisionBudget {
    fn default() -> Self {
        Self { max_bits: 1 << 20 }
    }
}

/// Numerator of the exponent as `u32` (table exponents are small).
pub(crate) fn exponent_as_u32(beta: &BetaSpec) -> Result<u32> {
    beta.num
        .to_u32()
        .ok_or_else(|| Error::InvalidParameter("beta numerator too large for exponentiation".into()))
}

/// Denominator of the exponent as `u32`.
pub(crate) fn denominator_as_u32(beta: &BetaSpec) -> Result<u32> {
    beta.den
        .to_u32()
        .ok_or_else(|| Error::InvalidParameter("beta denominator too large for exponentiation".into()))
}

/// floor of the d-th root, plus whether the root is exact.
fn nth_root_floor(x: &BigInt, d: u32) -> (BigInt, bool) {
    debug_assert!(!x.is_negative());
    let r = x.nth_root(d);
    let exact = num_traits::pow::pow(r.clone(), d as usize) == *x;
    (r, exact)
}

/// Shrinking rational enclosure of `s^(n/d)` at `bits` fractional bits:
/// `[m, m+1] / 2^bits` with `m = floor((s^n * 2^(d*bits))^(1/d))`.
fn pow_enclosure_at(s_pow_n: &BigInt, d: u32, bits: u64) -> RatInterval {
    let shifted = s_pow_n << (d as u64 * bits);
    let (m, _) = nth_root_floor(&shifted, d);
    let den = BigInt::one() << bits;
    RatInterval::new(
        BigRational::new(m.clone(), den.clone()),
        BigRational::new(m + BigInt::one(), den),
    )
}

/// Rigorous enclosure of `s^beta` for `s >= 1`, escalating until the width
/// drops below `2^-min_frac_bits` or the budget is exhausted. Integer beta
/// and exact d-th powers come back as point intervals.
pub fn pow_enclosure(
    s: &BigInt,
    beta: &BetaSpec,
    min_frac_bits: u64,
    budget: PrecisionBudget,
) -> Result<RatInterval> {
    assert!(s.is_positive(), "power base must be >= 1");
    let n: u32 = beta
        .num
        .to_u32()
        .ok_or_else(|| Error::InvalidParameter("beta numerator too large for exponentiation".into()))?;
    let s_pow_n = num_traits::pow::pow(s.clone(), n as usize);
    if beta.is_integer() {
        return Ok(RatInterval::point(BigRational::from_integer(s_pow_n)));
    }
    let d: u32 = beta
        .den
        .to_u32()
        .ok_or_else(|| Error::InvalidParameter("beta denominator too large for exponentiation".into()))?;
    let (root, exact) = nth_root_floor(&s_pow_n, d);
    if exact {
        return Ok(RatInterval::point(BigRational::from_integer(root)));
    }
    let mut bits = 128u64;
    loop {
        if bits > budget.max_bits {
            return Err(Error::PrecisionExhausted { max_bits: budget.max_bits });
        }
        let enc = pow_enclosure_at(&s_pow_n, d, bits);
        if bits >= min_frac_bits {
            return Ok(enc);
        }
        bits = bits.saturating_mul(2);
    }
}

/// `floor((s^beta - sub) / div)` exactly.
///
/// Requires `s >= 1`, `div >= 1`. For fractional beta the value
/// `(s^beta - sub)/div` is irrational, so doubling the enclosure precision
/// eventually separates it from every integer; the budget caps that loop.
pub fn pow_floor_div(
    s: &BigInt,
    beta: &BetaSpec,
    sub: &BigInt,
    div: &BigInt,
    budget: PrecisionBudget,
) -> Result<BigInt> {
    assert!(s.is_positive(), "base must be >= 1");
    assert!(div.is_positive(), "divisor must be >= 1");
    let n: u32 = beta
        .num
        .to_u32()
        .ok_or_else(|| Error::InvalidParameter("beta numerator too large for exponentiation".into()))?;

    if beta.is_integer() {
        let s_pow = num_traits::pow::pow(s.clone(), n as usize);
        return Ok((s_pow - sub).div_floor(div));
    }
    let d: u32 = beta
        .den
        .to_u32()
        .ok_or_else(|| Error::InvalidParameter("beta denominator too large for exponentiation".into()))?;
    let s_pow_n = num_traits::pow::pow(s.clone(), n as usize);
    let (root, exact) = nth_root_floor(&s_pow_n, d);
    if exact {
        return Ok((root - sub).div_floor(div));
    }

    let sub_rat = BigRational::from_integer(sub.clone());
    let div_rat = BigRational::from_integer(div.clone());
    let mut bits = 128u64;
    loop {
        if bits > budget.max_bits {
            return Err(Error::PrecisionExhausted { max_bits: budget.max_bits });
        }
        let enc = pow_enclosure_at(&s_pow_n, d, bits);
        let lo = (enc.lo() - &sub_rat) / &div_rat;
        let hi = (enc.hi() - &sub_rat) / &div_rat;
        let f_lo = lo.floor().to_integer();
        let f_hi = hi.floor().to_integer();
        if f_lo == f_hi {
            return Ok(f_lo);
        }
        bits = bits.saturating_mul(2);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn beta(n: i64, d: i64) -> BetaSpec {
        BetaSpec::new(bi(n), bi(d)).unwrap()
    }

    #[test]
    fn beta_validation() {
        assert!(BetaSpec::new(bi(1), bi(1)).is_err());
        assert!(BetaSpec::new(bi(3), bi(3)).is_err());
        assert!(BetaSpec::new(bi(2), bi(3)).is_err());
        assert!(BetaSpec::new(bi(2), bi(0)).is_err());
        let b = BetaSpec::new(bi(6), bi(4)).unwrap();
        assert_eq!((b.num().clone(), b.den().clone()), (bi(3), bi(2)));
        assert_eq!("7/5".parse::<BetaSpec>().unwrap().to_string(), "7/5");
        assert_eq!("3".parse::<BetaSpec>().unwrap().to_string(), "3");
    }

    #[test]
    fn weak_uniform_targets() {
        assert_eq!(beta(2, 1).weak_uniform_target(), BigRational::new(bi(3), bi(4)));
        assert_eq!(beta(3, 2).weak_uniform_target(), BigRational::new(bi(5), bi(12)));
        assert_eq!(beta(3, 1).weak_uniform_target(), BigRational::new(bi(4), bi(3)));
    }

    #[test]
    fn floor_div_beta2_recursion_values() {
        let budget = PrecisionBudget::default();
        // a2 step: floor((5^2 - 1)/2) = 12
        assert_eq!(pow_floor_div(&bi(5), &beta(2, 1), &bi(1), &bi(2), budget).unwrap(), bi(12));
        // b2 step: floor((27^2 - 1)/5) = 145
        assert_eq!(pow_floor_div(&bi(27), &beta(2, 1), &bi(1), &bi(5), budget).unwrap(), bi(145));
    }

    #[test]
    fn exact_power_path() {
        let budget = PrecisionBudget::default();
        // 4^(3/2) = 8 exactly
        assert_eq!(pow_floor_div(&bi(4), &beta(3, 2), &bi(0), &bi(1), budget).unwrap(), bi(8));
        let enc = pow_enclosure(&bi(4), &beta(3, 2), 128, budget).unwrap();
        assert!(enc.is_point());
        assert_eq!(enc.lo(), &BigRational::from_integer(bi(8)));
    }

    #[test]
    fn fractional_power_floor() {
        let budget = PrecisionBudget::default();
        // 3^(3/2) = 5.196...; floor((3^1.5 - 1)/2) = floor(2.098) = 2
        assert_eq!(pow_floor_div(&bi(3), &beta(3, 2), &bi(1), &bi(2), budget).unwrap(), bi(2));
        // 2^(3/2) = 2.828...; floor = 2
        assert_eq!(pow_floor_div(&bi(2), &beta(3, 2), &bi(0), &bi(1), budget).unwrap(), bi(2));
    }

    #[test]
    fn tiny_cap_reports_exhaustion() {
        let tiny = PrecisionBudget { max_bits: 64 };
        let err = pow_floor_div(&bi(3), &beta(3, 2), &bi(0), &bi(1), tiny).unwrap_err();
        assert!(matches!(err, Error::PrecisionExhausted { max_bits: 64 }));
    }

    #[test]
    fn perfect_powers_match_integer_arithmetic() {
        let budget = PrecisionBudget::default();
        // s = t^den makes s^(num/den) = t^num exactly; compare both routes
        for t in 2i64..12 {
            for (n, d) in [(3i64, 2i64), (5, 3), (7, 2)] {
                let s = num_traits::pow::pow(bi(t), d as usize);
                let via_float_path =
                    pow_floor_div(&s, &beta(n, d), &bi(0), &bi(1), budget).unwrap();
                let exact = num_traits::pow::pow(bi(t), n as usize);
                assert_eq!(via_float_path, exact, "t={t} beta={n}/{d}");
            }
        }
    }

    #[test]
    fn enclosure_contains_true_power() {
        let budget = PrecisionBudget::default();
        // s^(3/2) for s=5: 11.18033988749894...; check f64 value lies inside
        let enc = pow_enclosure(&bi(5), &beta(3, 2), 128, budget).unwrap();
        let f = num_traits::FromPrimitive::from_f64(11.180339887498949).unwrap();
        assert!(enc.contains(&f));
        assert!(!enc.is_point());
    }

    #[test]
    fn determinism() {
        let budget = PrecisionBudget::default();
        let x = pow_floor_div(&bi(801), &beta(3, 2), &bi(7), &bi(86), budget).unwrap();
        let y = pow_floor_div(&bi(801), &beta(3, 2), &bi(7), &bi(86), budget).unwrap();
        assert_eq!(x, y);
        // from the beta=3/2 recursion: a4 = floor((801^1.5 - 7)/86) + 1 = 264
        assert_eq!(x, bi(263));
    }
}
