//! Natural logarithms of big rationals with certified error bounds.
//!
//! `log_magnitude` must handle arguments whose numerator and denominator
//! run to millions of bits, so it never works on the full operands. It
//! reduces `x = N/D` to `m * 2^g` where `m` is a 128-bit-quotient rational
//! in `[1, 2)`, takes `ln m` from the inverse-hyperbolic-tangent series
//! with an exact rational tail bound, and adds `g * ln 2` from a cached
//! rational enclosure of `ln 2`. Everything is exact rational arithmetic;
//! the reported error bound is sound, not heuristic.

use crate::error::{Error, Result};
use crate::interval::RatInterval;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

/// A logarithm value with a certified absolute error bound.
///
/// The true logarithm lies in `[value - abs_err, value + abs_err]`; both
/// fields are exact rationals so downstream error propagation stays exact.
#[derive(Clone, Debug, PartialEq)]
pub struct LogApprox {
    pub value: BigRational,
    pub abs_err: BigRational,
}

impl LogApprox {
    pub fn enclosure(&self) -> RatInterval {
        RatInterval::new(&self.value - &self.abs_err, &self.value + &self.abs_err)
    }

    pub fn from_enclosure(iv: &RatInterval) -> Self {
        let two = BigRational::from_integer(BigInt::from(2));
        LogApprox {
            value: iv.midpoint(),
            abs_err: iv.width() / two,
        }
    }

    /// Midpoint as `f64`, for display only.
    pub fn value_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }
}

/// Mantissa quotient bits used in the reduction. Large enough that the
/// reduction error (~2^-126) is negligible against the 1e-6 contract.
const MANTISSA_BITS: u64 = 128;

fn big_rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// atanh series enclosure: returns an interval containing
/// `2 * atanh(u) = ln((1+u)/(1-u))` for exact rational `0 <= u < 1/2`.
///
/// Terms: 2 * sum_{j>=0} u^(2j+1)/(2j+1); the dropped tail is bounded by
/// the geometric series 2*u^(2J+1)/((2J+1)(1-u^2)).
fn atanh2_enclosure(u: &BigRational, terms: usize) -> RatInterval {
    assert!(!u.is_negative() && u < &big_rat(1, 2));
    let u2 = u * u;
    let mut sum = BigRational::zero();
    let mut power = u.clone(); // u^(2j+1)
    for j in 0..terms {
        let denom = BigRational::from_integer(BigInt::from(2 * j as i64 + 1));
        sum += &power / denom;
        power *= &u2;
    }
    // power = u^(2*terms+1)
    let tail_den = BigRational::from_integer(BigInt::from(2 * terms as i64 + 1));
    let one = BigRational::one();
    let tail = &power / (tail_den * (&one - &u2));
    let two = BigRational::from_integer(BigInt::from(2));
    RatInterval::new(&two * &sum, &two * (&sum + &tail))
}

/// Cached rational enclosure of `ln 2`, width below 2^-120.
fn ln2_enclosure() -> &'static RatInterval {
    static LN2: OnceLock<RatInterval> = OnceLock::new();
    LN2.get_or_init(|| {
        // ln 2 = 2 atanh(1/3); 40 terms push the tail under 3^-81 < 2^-128
        atanh2_enclosure(&big_rat(1, 3), 40)
    })
}

/// Enclosure of `ln m` for an exact rational `m` in `[1, 2)`.
///
/// Uses `ln m = 2 atanh((m-1)/(m+1))` with `(m-1)/(m+1) in [0, 1/3)`.
/// The operand must already be small (mantissa-sized), not a full-size
/// table entry.
fn ln_mantissa(m: &BigRational) -> RatInterval {
    let one = BigRational::one();
    debug_assert!(*m >= one && *m < big_rat(2, 1));
    let u = (m - &one) / (m + &one);
    // u < 1/3, so 44 terms bound the tail by ~3^-89
    atanh2_enclosure(&u, 44)
}

/// Rigorous enclosure of `ln x` for a positive big rational `x`.
///
/// Works in time polynomial in `log log x`-ish plus one short division of
/// the operands: huge numerators/denominators are handled through their
/// leading bits only.
pub fn log_enclosure(x: &BigRational) -> Result<RatInterval> {
    if !x.is_positive() {
        return Err(Error::NonPositiveInput);
    }
    let n = x.numer();
    let d = x.denom();
    if n == d {
        return Ok(RatInterval::point(BigRational::zero()));
    }
    // g aligns N/D to [1, 2): N/D = m * 2^g with m in [1, 2)
    let g: i64 = n.bits() as i64 - d.bits() as i64;

    // Q = floor(N * 2^(MANTISSA_BITS - g) / D)  (shift moved to whichever
    // side keeps both operands integral). Q has MANTISSA_BITS or
    // MANTISSA_BITS+1 bits, and N/D lies in [Q, Q+1] * 2^(g - MANTISSA_BITS).
    let shift = MANTISSA_BITS as i64 - g;
    let (num, den) = if shift >= 0 {
        (n << shift as u64, d.clone())
    } else {
        (n.clone(), d << (-shift) as u64)
    };
    let q = num / &den;

    // ln x in [ln Q_lo_part] + (g - MANTISSA_BITS + s)*ln2 pieces:
    // write Q = m * 2^s with m = Q / 2^s in [1, 2).
    let enclose_scaled = |q: &BigInt| -> RatInterval {
        let s = q.bits() as i64 - 1;
        let m = BigRational::new(q.clone(), BigInt::one() << s as u64);
        let ln_m = ln_mantissa(&m);
        let exp2 = g - MANTISSA_BITS as i64 + s;
        let ln2_scaled = ln2_enclosure().scale(&BigRational::from_integer(BigInt::from(exp2)));
        ln_m.add(&ln2_scaled)
    };
    let lo_part = enclose_scaled(&q);
    let hi_part = enclose_scaled(&(&q + BigInt::one()));
    Ok(RatInterval::new(lo_part.lo().clone(), hi_part.hi().clone()))
}

/// `ln x` with certified absolute error at most 1e-6 (in practice far
/// smaller: the enclosure width is around 2^-120 plus `|g|` times the
/// ln-2 cache width).
pub fn log_magnitude(x: &BigRational) -> Result<LogApprox> {
    let enc = log_enclosure(x)?;
    let approx = LogApprox::from_enclosure(&enc);
    debug_assert!(approx.abs_err < big_rat(1, 1_000_000));
    Ok(approx)
}

/// Enclosure of `ln` over a positive interval: `[ln lo, ln hi]` with the
/// endpoint enclosures folded in.
pub fn log_interval(iv: &RatInterval) -> Result<RatInterval> {
    if !iv.is_positive() {
        return Err(Error::NonPositiveInput);
    }
    let lo = log_enclosure(iv.lo())?;
    let hi = log_enclosure(iv.hi())?;
    Ok(RatInterval::new(lo.lo().clone(), hi.hi().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;
    use proptest::prelude::*;

    fn rat_u(n: u64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn ln_one_is_zero() {
        let l = log_magnitude(&rat_u(1)).unwrap();
        assert!(l.value.is_zero());
        assert!(l.abs_err < big_rat(1, 1_000_000));
    }

    #[test]
    fn ln_27() {
        // independent value: 3.29583686600432907...
        let l = log_magnitude(&rat_u(27)).unwrap();
        let expected = BigRational::from_f64(3.295836866004329).unwrap();
        assert!((l.value - expected).abs() < big_rat(1, 1_000_000));
    }

    #[test]
    fn ln_534386() {
        // independent value: 13.18887370325661936...
        let l = log_magnitude(&rat_u(534_386)).unwrap();
        let expected = BigRational::from_f64(13.188873703256619).unwrap();
        assert!((l.value - expected).abs() < big_rat(1, 1_000_000));
    }

    #[test]
    fn ln_of_huge_power_of_two() {
        // ln(2^1_000_000) = 1_000_000 * ln 2; both sides computed
        // independently of each other's code path magnitude-wise.
        let big = BigRational::from_integer(BigInt::one() << 1_000_000u32);
        let l = log_magnitude(&big).unwrap();
        let ln2 = log_magnitude(&rat_u(2)).unwrap();
        let expected = &ln2.value * BigRational::from_integer(BigInt::from(1_000_000));
        assert!((&l.value - &expected).abs() < big_rat(1, 1_000));
        assert!(l.abs_err < big_rat(1, 1_000_000));
    }

    #[test]
    fn nonpositive_rejected() {
        assert_eq!(log_magnitude(&BigRational::zero()), Err(Error::NonPositiveInput));
        assert_eq!(log_magnitude(&big_rat(-3, 7)), Err(Error::NonPositiveInput));
    }

    #[test]
    fn enclosure_brackets_f64_ln() {
        for x in [2u64, 3, 10, 97, 1_000_003, u64::MAX] {
            let enc = log_enclosure(&rat_u(x)).unwrap();
            let f = (x as f64).ln();
            // f64 ln is correct to ~1e-13 relative here; the enclosure is
            // far tighter, so containment up to that slack is the check.
            let f_rat = BigRational::from_f64(f).unwrap();
            let slack = big_rat(1, 1_000_000_000);
            assert!(enc.lo() - &slack <= f_rat && f_rat <= enc.hi() + &slack, "x={x}");
        }
    }

    proptest! {
        /// log(x*y) = log(x) + log(y) within the documented 3e-6 budget.
        #[test]
        fn log_additivity(a in 1u64..u64::MAX, b in 1u64..u64::MAX, c in 1u64..u64::MAX, d in 1u64..u64::MAX) {
            let x = BigRational::new(BigInt::from(a), BigInt::from(b));
            let y = BigRational::new(BigInt::from(c), BigInt::from(d));
            let lx = log_magnitude(&x).unwrap();
            let ly = log_magnitude(&y).unwrap();
            let lxy = log_magnitude(&(&x * &y)).unwrap();
            let diff = (&lxy.value - &lx.value - &ly.value).abs();
            prop_assert!(diff < big_rat(3, 1_000_000));
        }

        /// Determinism: same input gives identical output.
        #[test]
        fn deterministic(a in 1u64..u64::MAX, b in 1u64..u64::MAX) {
            let x = BigRational::new(BigInt::from(a), BigInt::from(b));
            prop_assert_eq!(log_magnitude(&x).unwrap(), log_magnitude(&x).unwrap());
        }
    }
}
