//! Exact floor division tuned for very unbalanced huge operands.
//!
//! The generators divide numbers in the hundreds of megabits by divisors in
//! the megabits. The built-in long division costs roughly quotient-limbs x
//! divisor-limbs, which is prohibitive there, so past a size threshold the
//! quotient is formed from a Newton-refined reciprocal (a few Toom-sized
//! multiplications) and then made exact by a remainder correction. The
//! correction makes the result unconditionally correct: if the approximation
//! were ever off by more than a few units the code falls back to the
//! built-in division rather than trusting the error analysis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Engage the reciprocal path when quotient-bits x divisor-bits exceeds
/// this; below it the built-in division is already fast.
const NEWTON_THRESHOLD: u128 = 1 << 46;

/// Approximate `floor(2^(bits(d)+p) / d)` within a few units, by precision
/// doubling. Guard bits keep the Newton error contracting; the caller
/// corrects the final quotient anyway.
fn recip_approx(d: &BigInt, p: u64) -> BigInt {
    let b = d.bits();
    if p <= 32 {
        // seed from the top (up to) 64 bits of d: with dt = floor(d / 2^(b-t)),
        // floor(2^(t+p)/dt) approximates floor(2^(b+p)/d) within ~2 units
        let t = b.min(64);
        let dt_big: BigInt = d >> (b - t);
        let dt = dt_big.to_u128().expect("top bits fit u128").max(1);
        debug_assert!(t + p < 127);
        return BigInt::from((1u128 << (t + p)) / dt);
    }
    let h = p / 2 + 3;
    let y = recip_approx(d, h);
    // lift to precision p and take one Newton step:
    // x' = 2x - floor(x^2 * d / 2^(b+p))
    let x: BigInt = y << (p - h);
    let x2 = &x * &x;
    let correction: BigInt = (x2 * d) >> (b + p);
    (x << 1) - correction
}

fn floor_div_with_threshold(n: &BigInt, d: &BigInt, threshold: u128) -> BigInt {
    assert!(!n.is_negative() && d.is_positive());
    if n < d {
        return BigInt::zero();
    }
    let nb = n.bits();
    let db = d.bits();
    let qb = nb - db + 1;
    if (qb as u128) * (db as u128) < threshold {
        return n.div_floor(d);
    }

    let p = qb + 6;
    let r = recip_approx(d, p);
    let mut q: BigInt = (n * r) >> (db + p);
    let mut rem = n - &q * d;
    let mut steps = 0;
    loop {
        if rem.is_negative() {
            q -= BigInt::one();
            rem += d;
        } else if rem >= *d {
            q += BigInt::one();
            rem -= d;
        } else {
            return q;
        }
        steps += 1;
        if steps > 16 {
            // approximation was worse than the analysis allows; stay exact
            return n.div_floor(d);
        }
    }
}

/// Exact `floor(n / d)` for `n >= 0`, `d >= 1`.
pub(crate) fn floor_div_exact(n: &BigInt, d: &BigInt) -> BigInt {
    floor_div_with_threshold(n, d, NEWTON_THRESHOLD)
}

/// Exact `floor(n / d)` with floor semantics for negative `n` too.
pub(crate) fn floor_div_exact_signed(n: &BigInt, d: &BigInt) -> BigInt {
    assert!(d.is_positive());
    if n.is_negative() {
        // floor(n/d) = -ceil(-n/d) = -floor((-n + d - 1)/d)
        let m = -n + d - BigInt::one();
        -floor_div_exact(&m, d)
    } else {
        floor_div_exact(n, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn matches_builtin_on_structured_cases() {
        let cases: Vec<(BigInt, BigInt)> = vec![
            (BigInt::from(0), BigInt::from(7)),
            (BigInt::from(6), BigInt::from(7)),
            (BigInt::from(7), BigInt::from(7)),
            (BigInt::from(8), BigInt::from(7)),
            ((BigInt::one() << 200u32) - 1, (BigInt::one() << 100u32) + 12345),
            ((BigInt::one() << 999u32) + 17, (BigInt::one() << 31u32) - 1),
        ];
        for (n, d) in cases {
            assert_eq!(floor_div_exact(&n, &d), n.div_floor(&d));
        }
    }

    // deterministic pseudo-random bigints; no rand dependency
    struct XorShift(u64);
    impl XorShift {
        fn next_u64(&mut self) -> u64 {
            let mut x = self.0;
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            self.0 = x;
            x
        }
        fn next_big(&mut self, bits: u64) -> BigInt {
            let words = (bits / 32 + 1) as usize;
            let digits: Vec<u32> = (0..words).map(|_| self.next_u64() as u32).collect();
            let v = BigInt::from_slice(num_bigint::Sign::Plus, &digits);
            (v % (BigInt::one() << bits)) + (BigInt::one() << bits)
        }
    }

    #[test]
    fn newton_path_matches_builtin() {
        // force the reciprocal path with a zero threshold on operands of
        // assorted shapes, including exact multiples and off-by-one cases
        let mut rng = XorShift(0x9E37_79B9_7F4A_7C15);
        for round in 0..8 {
            let d = rng.next_big(900 + 137 * round);
            let q_true = rng.next_big(4_000 + 911 * round);
            let r = rng.next_big(100);
            let r = &r % &d;
            for n in [&q_true * &d + &r, &q_true * &d, &q_true * &d + &d - BigInt::one()] {
                assert_eq!(
                    floor_div_with_threshold(&n, &d, 0),
                    n.div_floor(&d),
                    "round {round}"
                );
            }
        }
    }

    #[test]
    fn newton_path_megabit_smoke() {
        let mut rng = XorShift(42);
        let d = rng.next_big(200_000);
        let q_true = rng.next_big(1_500_000);
        let n = &q_true * &d + (&d >> 1u32);
        assert_eq!(floor_div_with_threshold(&n, &d, 0), q_true);
    }

    #[test]
    fn signed_floor_semantics() {
        let d = BigInt::from(7);
        assert_eq!(floor_div_exact_signed(&BigInt::from(-1), &d), BigInt::from(-1));
        assert_eq!(floor_div_exact_signed(&BigInt::from(-7), &d), BigInt::from(-1));
        assert_eq!(floor_div_exact_signed(&BigInt::from(-8), &d), BigInt::from(-2));
        assert_eq!(floor_div_exact_signed(&BigInt::from(13), &d), BigInt::from(1));
    }

    proptest! {
        #[test]
        fn agrees_with_builtin(n in 0u128..u128::MAX, d in 1u128..u128::MAX) {
            let n = BigInt::from(n);
            let d = BigInt::from(d);
            prop_assert_eq!(floor_div_exact(&n, &d), n.div_floor(&d));
        }

        #[test]
        fn forced_newton_agrees_with_builtin(n in 0u128..u128::MAX, d in 1u128..u128::MAX) {
            let n = BigInt::from(n) << 64u32;
            let d = BigInt::from(d);
            prop_assert_eq!(floor_div_with_threshold(&n, &d, 0), n.div_floor(&d));
        }
    }
}
