//! Closed intervals with big-rational endpoints.
//!
//! Every irrational quantity in this crate (the continued-fraction values
//! θ and η, the linear-form magnitudes, sup-norms, products) is represented
//! by a [`RatInterval`] guaranteed to contain it. All endpoint arithmetic is
//! exact, so interval comparisons that resolve are proofs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Outcome of comparing two intervals.
///
/// `Less`/`Greater` are certain (the intervals are disjoint); `Overlap`
/// means the order of the underlying reals is not decided at the current
/// enclosure width. Touching endpoints count as `Overlap`: a shared point
/// could be both values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalOrder {
    Less,
    Greater,
    Overlap,
}

/// A closed interval `[lo, hi]` with exact rational endpoints, `lo <= hi`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatInterval {
    lo: BigRational,
    hi: BigRational,
}

impl fmt::Debug for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl RatInterval {
    /// Interval from ordered endpoints. Panics if `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    /// Interval from endpoints in either order.
    pub fn from_endpoints(a: BigRational, b: BigRational) -> Self {
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    /// Degenerate (point) interval.
    pub fn point(x: BigRational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Self::point(BigRational::from_integer(n.clone()))
    }

    /// `num/den` as a point interval. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::point(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// The whole interval is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    /// Product interval: the min/max over endpoint products, which covers
    /// `{x*y : x in self, y in other}` for every sign configuration.
    pub fn mul(&self, other: &Self) -> Self {
        let mut products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        products.sort();
        let [min, _, _, max] = products;
        Self { lo: min, hi: max }
    }

    /// Division by an interval not containing zero.
    pub fn div(&self, other: &Self) -> Self {
        assert!(
            other.lo.is_positive() || other.hi.is_negative(),
            "division by an interval containing zero"
        );
        let recip = Self {
            lo: other.hi.recip(),
            hi: other.lo.recip(),
        };
        self.mul(&recip)
    }

    /// Image of the interval under `|.|`.
    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            // straddles zero
            let hi = if -&self.lo > self.hi { -self.lo.clone() } else { self.hi.clone() };
            Self {
                lo: BigRational::zero(),
                hi,
            }
        }
    }

    /// Pointwise max: encloses `max(x, y)` over members of the operands.
    pub fn max(&self, other: &Self) -> Self {
        let lo = if self.lo >= other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi >= other.hi { self.hi.clone() } else { other.hi.clone() };
        Self { lo, hi }
    }

    /// Exact comparison; `Overlap` when the intervals share at least a point.
    pub fn compare(&self, other: &Self) -> IntervalOrder {
        if self.hi < other.lo {
            IntervalOrder::Less
        } else if self.lo > other.hi {
            IntervalOrder::Greater
        } else {
            IntervalOrder::Overlap
        }
    }

    /// Intersection, when nonempty. Intersecting two enclosures of the same
    /// quantity tightens it.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = if self.lo >= other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi <= other.hi { self.hi.clone() } else { other.hi.clone() };
        if lo <= hi {
            Some(Self { lo, hi })
        } else {
            None
        }
    }

    /// Scale by an exact rational.
    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_negative() {
            Self {
                lo: &self.hi * factor,
                hi: &self.lo * factor,
            }
        } else {
            Self {
                lo: &self.lo * factor,
                hi: &self.hi * factor,
            }
        }
    }

    /// Translate by an exact rational.
    pub fn shift(&self, offset: &BigRational) -> Self {
        Self {
            lo: &self.lo + offset,
            hi: &self.hi + offset,
        }
    }
}

/// Convenience: interval spanned by the reciprocals `[1/b, 1/a]` for
/// positive integers `a <= b`... callers pass `(a, b)` as denominators.
pub fn recip_interval(small_den: &BigInt, large_den: &BigInt) -> RatInterval {
    assert!(small_den.is_positive() && large_den.is_positive());
    RatInterval::new(
        BigRational::new(BigInt::one(), large_den.clone()),
        BigRational::new(BigInt::one(), small_den.clone()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn iv(a: (i64, i64), b: (i64, i64)) -> RatInterval {
        RatInterval::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn mul_monotone_positive_case() {
        let a = iv((1, 1), (2, 1));
        let b = iv((3, 1), (4, 1));
        assert_eq!(a.mul(&b), iv((3, 1), (8, 1)));
    }

    #[test]
    fn abs_straddling_case() {
        let a = iv((-2, 1), (1, 1));
        assert_eq!(a.abs(), iv((0, 1), (2, 1)));
    }

    #[test]
    fn add_exact_rationals() {
        let a = iv((1, 3), (1, 3));
        let b = iv((1, 6), (1, 6));
        assert_eq!(a.add(&b), iv((1, 2), (1, 2)));
    }

    #[test]
    fn compare_cases() {
        assert_eq!(iv((1, 1), (2, 1)).compare(&iv((3, 1), (4, 1))), IntervalOrder::Less);
        assert_eq!(iv((1, 1), (3, 1)).compare(&iv((2, 1), (4, 1))), IntervalOrder::Overlap);
        // touching point intervals overlap
        assert_eq!(iv((5, 2), (5, 2)).compare(&iv((5, 2), (5, 2))), IntervalOrder::Overlap);
        assert_eq!(iv((3, 1), (4, 1)).compare(&iv((1, 1), (2, 1))), IntervalOrder::Greater);
    }

    fn small_rat() -> impl Strategy<Value = BigRational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d))
    }

    fn interval() -> impl Strategy<Value = RatInterval> {
        (small_rat(), small_rat()).prop_map(|(a, b)| RatInterval::from_endpoints(a, b))
    }

    /// An interval together with a member point, so containment properties
    /// can quantify over members.
    fn interval_with_member() -> impl Strategy<Value = (RatInterval, BigRational)> {
        (interval(), 0u32..=16).prop_map(|(ivl, t)| {
            let t = BigRational::new(BigInt::from(t), BigInt::from(16));
            let x = ivl.lo() + ivl.width() * t;
            (ivl, x)
        })
    }

    proptest! {
        #[test]
        fn ops_contain_pointwise_results(
            (a, x) in interval_with_member(),
            (b, y) in interval_with_member(),
        ) {
            prop_assert!(a.add(&b).contains(&(&x + &y)));
            prop_assert!(a.sub(&b).contains(&(&x - &y)));
            prop_assert!(a.mul(&b).contains(&(&x * &y)));
            prop_assert!(a.abs().contains(&x.abs()));
        }

        #[test]
        fn inclusion_monotonicity(
            (a, _) in interval_with_member(),
            (b, _) in interval_with_member(),
            pad in 1i64..10,
        ) {
            // widen both operands and check the result widens too
            let pad = rat(pad, 7);
            let a_wide = RatInterval::new(a.lo() - &pad, a.hi() + &pad);
            let b_wide = RatInterval::new(b.lo() - &pad, b.hi() + &pad);
            prop_assert!(a_wide.mul(&b_wide).contains_interval(&a.mul(&b)));
            prop_assert!(a_wide.add(&b_wide).contains_interval(&a.add(&b)));
            prop_assert!(a_wide.abs().contains_interval(&a.abs()));
        }

        #[test]
        fn compare_is_consistent_with_members(
            (a, x) in interval_with_member(),
            (b, y) in interval_with_member(),
        ) {
            match a.compare(&b) {
                IntervalOrder::Less => prop_assert!(x < y),
                IntervalOrder::Greater => prop_assert!(x > y),
                IntervalOrder::Overlap => {}
            }
        }
    }
}
