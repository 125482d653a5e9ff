//! Continued-fraction tables: partial quotients, convergents, and the
//! exact enclosures they induce.
//!
//! A [`ConvergentTable`] holds `a_k` and the convergents `p_k/q_k` of
//! `[a_0; a_1, a_2, ...]` under the standard recurrence with seeds
//! `p_{-1} = 1, p_{-2} = 0, q_{-1} = 0, q_{-2} = 1`. The value of the
//! continued fraction is always manipulated through enclosures:
//! consecutive convergents bracket it, and `|q_k θ - p_k|` is bracketed by
//! the exact sandwich `1/(q_{k+1} + q_k) <= |q_k θ - p_k| <= 1/q_{k+1}`.

use crate::error::{Error, Result};
use crate::interval::RatInterval;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentTable {
    a: Vec<BigInt>,
    p: Vec<BigInt>,
    q: Vec<BigInt>,
}

impl ConvergentTable {
    /// Start a table from `a_0 >= 1`.
    pub fn new(a0: BigInt) -> Result<Self> {
        if a0 < BigInt::one() {
            return Err(Error::InvalidParameter("a_0 must be >= 1".into()));
        }
        Ok(Self {
            a: vec![a0.clone()],
            p: vec![a0],
            q: vec![BigInt::one()],
        })
    }

    /// Append one partial quotient `a_next >= 1`, extending the convergents
    /// by the recurrence.
    pub fn extend(&mut self, a_next: BigInt) -> Result<()> {
        if a_next < BigInt::one() {
            return Err(Error::InvalidParameter("partial quotients must be >= 1".into()));
        }
        let k = self.a.len();
        // seeds: p_{-1} = 1, q_{-1} = 0
        let (pm1, pm2) = (&self.p[k - 1], if k >= 2 { self.p[k - 2].clone() } else { BigInt::one() });
        let (qm1, qm2) = (&self.q[k - 1], if k >= 2 { self.q[k - 2].clone() } else { BigInt::zero() });
        self.p.push(&a_next * pm1 + pm2);
        self.q.push(&a_next * qm1 + qm2);
        self.a.push(a_next);
        debug_assert!(self.determinant_ok(k));
        Ok(())
    }

    fn determinant_ok(&self, k: usize) -> bool {
        // p_k q_{k-1} - p_{k-1} q_k = (-1)^(k-1)
        let det = &self.p[k] * &self.q[k - 1] - &self.p[k - 1] * &self.q[k];
        det.magnitude().is_one()
    }

    /// Highest available index (depth K means indices `0..=K` exist).
    pub fn depth(&self) -> usize {
        self.a.len() - 1
    }

    pub fn partial_quotient(&self, k: usize) -> &BigInt {
        &self.a[k]
    }

    pub fn numerator(&self, k: usize) -> &BigInt {
        &self.p[k]
    }

    pub fn denominator(&self, k: usize) -> &BigInt {
        &self.q[k]
    }

    pub fn partial_quotients(&self) -> &[BigInt] {
        &self.a
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.p
    }

    pub fn denominators(&self) -> &[BigInt] {
        &self.q
    }

    pub fn convergent(&self, k: usize) -> BigRational {
        BigRational::new(self.p[k].clone(), self.q[k].clone())
    }

    fn require_depth(&self, k: usize) -> Result<()> {
        if k > self.depth() {
            Err(Error::DepthUnavailable { requested: k, available: self.depth() })
        } else {
            Ok(())
        }
    }

    /// Interval with endpoints `p_k/q_k` and `p_{k+1}/q_{k+1}`; contains the
    /// value of the continued fraction by the alternating property. Width
    /// is exactly `1/(q_k q_{k+1})`.
    pub fn value_enclosure(&self, k: usize) -> Result<RatInterval> {
        self.require_depth(k + 1)?;
        Ok(RatInterval::from_endpoints(self.convergent(k), self.convergent(k + 1)))
    }

    /// Enclosure of the value at the deepest available index.
    pub fn best_value_enclosure(&self) -> Result<RatInterval> {
        self.value_enclosure(self.depth() - 1)
    }

    /// Exact sandwich for `|q_k θ - p_k|`:
    /// `[1/(q_{k+1} + q_k), 1/q_{k+1}]`.
    pub fn remainder_enclosure(&self, k: usize) -> Result<RatInterval> {
        self.require_depth(k + 1)?;
        let qk = &self.q[k];
        let qk1 = &self.q[k + 1];
        Ok(RatInterval::new(
            BigRational::new(BigInt::one(), qk1 + qk),
            BigRational::new(BigInt::one(), qk1.clone()),
        ))
    }

    /// Signed enclosure of `q_k θ - p_k`: the sandwich with the sign forced
    /// by parity (positive for even `k`), intersected with the value-based
    /// enclosure `q_k * [θ] - p_k` at enclosure index `j` when available.
    /// The intersection can only tighten; both enclose the same real.
    pub fn signed_remainder_enclosure(&self, k: usize, j: usize) -> Result<RatInterval> {
        let sandwich = self.remainder_enclosure(k)?;
        let signed = if k % 2 == 0 { sandwich } else { sandwich.neg() };
        if j > k && j + 1 <= self.depth() {
            let theta = self.value_enclosure(j)?;
            let value_based = theta
                .scale(&BigRational::from_integer(self.q[k].clone()))
                .shift(&BigRational::from_integer(-self.p[k].clone()));
            if let Some(tight) = signed.intersect(&value_based) {
                return Ok(tight);
            }
        }
        Ok(signed)
    }
}
