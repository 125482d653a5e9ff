//! Candidate lattice points with rigorous coordinate enclosures.

use crate::construct::PairConstruction;
use crate::error::{Error, Result};
use crate::interval::RatInterval;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Which orbit of the vertex classification a point belongs to.
///
/// `V`/`W` index the convergent families of θ and η; `E1`/`E2` are the
/// images of the unit vectors (the `k = -1` boundary points of the two
/// families).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    V,
    W,
    E1,
    E2,
}

impl Family {
    /// V-like or W-like, for alternation bookkeeping.
    pub(crate) fn is_v_like(self) -> bool {
        matches!(self, Family::V | Family::E1)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::V => write!(f, "V"),
            Family::W => write!(f, "W"),
            Family::E1 => write!(f, "E1"),
            Family::E2 => write!(f, "E2"),
        }
    }
}

/// A candidate minimum: one `±`-representative with certified enclosures.
///
/// `coord1` encloses `θx - y` and `coord2` encloses `x + ηy` for the
/// integer preimage `(x, y)`; `supnorm` and `pi2` enclose
/// `max(|coord1|, |coord2|)` and `|coord1| * |coord2|`.
#[derive(Clone, Debug)]
pub struct LatticePoint {
    pub family: Family,
    /// Convergent index; `-1` for the unit-vector points.
    pub index: i64,
    pub preimage: (BigInt, BigInt),
    pub coord1: RatInterval,
    pub coord2: RatInterval,
    pub supnorm: RatInterval,
    pub pi2: RatInterval,
}

impl LatticePoint {
    pub fn label(&self) -> String {
        match self.family {
            Family::E1 | Family::E2 => self.family.to_string(),
            _ => format!("{}{}", self.family, self.index),
        }
    }

    fn finish(
        family: Family,
        index: i64,
        preimage: (BigInt, BigInt),
        coord1: RatInterval,
        coord2: RatInterval,
    ) -> Self {
        let a1 = coord1.abs();
        let a2 = coord2.abs();
        let supnorm = a1.max(&a2);
        let pi2 = a1.mul(&a2);
        debug_assert!(pi2.lo().is_positive(), "candidate with product touching zero");
        Self { family, index, preimage, coord1, coord2, supnorm, pi2 }
    }
}

/// Enclosure depths for the two tables (index of `value_enclosure`).
#[derive(Clone, Copy, Debug)]
pub(crate) struct EncDepths {
    pub theta: usize,
    pub eta: usize,
}

impl EncDepths {
    /// Deepest usable enclosures of a construction.
    pub(crate) fn deepest(c: &PairConstruction) -> Self {
        EncDepths { theta: c.theta_depth() - 1, eta: c.depth() - 1 }
    }
}

/// Shallow enclosure depths for mass point evaluation: the smallest index
/// whose enclosure width `1/(q_j q_{j+1})` already certifies comparisons
/// (denominator product beyond 2^96), keeping the rationals small.
pub(crate) fn cheap_enclosure_depths(c: &PairConstruction) -> EncDepths {
    let pick = |t: &crate::cfcore::ConvergentTable, max_j: usize| {
        let threshold = BigInt::one() << 96u32;
        for j in 1..max_j {
            if t.denominator(j) * t.denominator(j + 1) > threshold {
                return j;
            }
        }
        max_j
    };
    EncDepths {
        theta: pick(c.theta(), c.theta_depth() - 1),
        eta: pick(c.eta(), c.depth() - 1),
    }
}

/// Build one candidate point at the given enclosure depths.
pub(crate) fn build_point(
    c: &PairConstruction,
    family: Family,
    k: i64,
    depths: EncDepths,
) -> Result<LatticePoint> {
    let theta = c.theta();
    let eta = c.eta();
    match family {
        Family::E1 => {
            // A(1,0) = (θ, 1)
            let coord1 = theta.value_enclosure(depths.theta)?;
            let coord2 = RatInterval::from_int(1);
            Ok(LatticePoint::finish(family, -1, (BigInt::one(), BigInt::from(0)), coord1, coord2))
        }
        Family::E2 => {
            // A(0,1) = (-1, η)
            let coord1 = RatInterval::from_int(-1);
            let coord2 = eta.value_enclosure(depths.eta)?;
            Ok(LatticePoint::finish(family, -1, (BigInt::from(0), BigInt::one()), coord1, coord2))
        }
        Family::V => {
            let k = usize::try_from(k)
                .map_err(|_| Error::InvalidParameter("V index must be >= 0".into()))?;
            let q = theta.denominator(k).clone();
            let p = theta.numerator(k).clone();
            // θ q_k - p_k through the parity-signed sandwich
            let coord1 = theta.signed_remainder_enclosure(k, depths.theta)?;
            // q_k + p_k η
            let coord2 = eta
                .value_enclosure(depths.eta)?
                .scale(&BigRational::from_integer(p.clone()))
                .shift(&BigRational::from_integer(q.clone()));
            Ok(LatticePoint::finish(family, k as i64, (q, p), coord1, coord2))
        }
        Family::W => {
            let k = usize::try_from(k)
                .map_err(|_| Error::InvalidParameter("W index must be >= 0".into()))?;
            let r = eta.numerator(k).clone();
            let s = eta.denominator(k).clone();
            // θ r_k + s_k
            let coord1 = theta
                .value_enclosure(depths.theta)?
                .scale(&BigRational::from_integer(r.clone()))
                .shift(&BigRational::from_integer(s.clone()));
            // r_k - s_k η = -(η s_k - r_k)
            let coord2 = eta.signed_remainder_enclosure(k, depths.eta)?.neg();
            Ok(LatticePoint::finish(family, k as i64, (r, -s), coord1, coord2))
        }
    }
}

/// All candidate minima up to convergent index `depth`: `E1`, `E2`, then
/// `V_k` and `W_k` for `0 <= k <= depth`, each with certified `supnorm`
/// and `pi2` enclosures.
///
/// Requires the construction to reach `depth + 2` (one index for the
/// remainder sandwiches, one for the value enclosures).
pub fn candidates(c: &PairConstruction, depth: usize) -> Result<Vec<LatticePoint>> {
    if c.depth() < depth + 2 {
        return Err(Error::DepthUnavailable { requested: depth + 2, available: c.depth() });
    }
    let depths = EncDepths::deepest(c);
    let mut out = Vec::with_capacity(2 * depth + 4);
    out.push(build_point(c, Family::E1, -1, depths)?);
    out.push(build_point(c, Family::E2, -1, depths)?);
    for k in 0..=depth {
        out.push(build_point(c, Family::V, k as i64, depths)?);
        out.push(build_point(c, Family::W, k as i64, depths)?);
    }
    Ok(out)
}

/// Sup-norm enclosures of the first V and W points *beyond* the given
/// indices, used by the filter as its completeness horizon: every verdict
/// is final only below the smaller of these.
pub fn sup_enclosure_of_next(
    c: &PairConstruction,
    last_v: usize,
    last_w: usize,
) -> Result<(RatInterval, RatInterval)> {
    let depths = EncDepths::deepest(c);
    let theta = c.theta();
    let eta = c.eta();
    // sup(V_{k}) for k = last_v + 1: max(|θ q_k - p_k|, q_k + p_k η);
    // the second coordinate dominates vastly, but only the max is claimed
    let kv = last_v + 1;
    if kv > c.theta_depth() || last_w + 1 > c.depth() {
        return Err(Error::DepthUnavailable {
            requested: kv.max(last_w + 1),
            available: c.depth(),
        });
    }
    let v_sup = {
        let q = theta.denominator(kv).clone();
        let p = theta.numerator(kv).clone();
        // |θ q - p| <= 1 here (k >= 1), so the affine coordinate dominates;
        // still, take the interval max with a crude [0, 1] for the first
        let c2 = eta
            .value_enclosure(depths.eta)?
            .scale(&BigRational::from_integer(p))
            .shift(&BigRational::from_integer(q));
        let c1_bound = RatInterval::new(BigRational::from_integer(BigInt::from(0)), BigRational::one());
        c1_bound.max(&c2)
    };
    let kw = last_w + 1;
    let w_sup = {
        let r = eta.numerator(kw).clone();
        let s = eta.denominator(kw).clone();
        let c1 = theta
            .value_enclosure(depths.theta)?
            .scale(&BigRational::from_integer(r))
            .shift(&BigRational::from_integer(s));
        let c2_bound = RatInterval::new(BigRational::from_integer(BigInt::from(0)), BigRational::one());
        c1.max(&c2_bound)
    };
    Ok((v_sup, w_sup))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::power::{BetaSpec, PrecisionBudget};
    use num_traits::ToPrimitive;

    fn beta2_run(depth: usize) -> PairConstruction {
        PairConstruction::generate_beta(BetaSpec::from_u64(2).unwrap(), depth, PrecisionBudget::default())
            .unwrap()
    }

    fn approx(iv: &RatInterval) -> (f64, f64) {
        (iv.lo().to_f64().unwrap(), iv.hi().to_f64().unwrap())
    }

    #[test]
    fn candidate_enclosures_beta2() {
        let c = beta2_run(4);
        let cands = candidates(&c, 2).unwrap();
        assert_eq!(cands.len(), 8);

        // E1 = (θ, 1): supnorm is the θ enclosure, inside (1, 2)
        let e1 = &cands[0];
        let (lo, hi) = approx(&e1.supnorm);
        assert!(1.0 < lo && hi < 2.0);

        // V2: preimage (27, 40); supnorm ⊂ [74.9, 75.1]; pi2 ⊂ [1.39e-4, 1.41e-4]
        let v2 = cands.iter().find(|p| p.family == Family::V && p.index == 2).unwrap();
        assert_eq!(v2.preimage, (BigInt::from(27), BigInt::from(40)));
        let (lo, hi) = approx(&v2.supnorm);
        assert!(74.9 < lo && hi < 75.1, "sup(V2) = [{lo}, {hi}]");
        let (plo, phi) = approx(&v2.pi2);
        assert!(1.39e-4 < plo && phi < 1.41e-4, "pi2(V2) = [{plo}, {phi}]");

        // W2: preimage (877, -731); supnorm ⊂ [2030, 2031]
        let w2 = cands.iter().find(|p| p.family == Family::W && p.index == 2).unwrap();
        assert_eq!(w2.preimage, (BigInt::from(877), BigInt::from(-731)));
        let (lo, hi) = approx(&w2.supnorm);
        assert!(2030.0 < lo && hi < 2031.0, "sup(W2) = [{lo}, {hi}]");

        // every candidate's product enclosure stays strictly positive
        for p in &cands {
            assert!(p.pi2.lo().is_positive(), "{}", p.label());
        }
    }

    #[test]
    fn signs_follow_parity() {
        let c = beta2_run(5);
        let cands = candidates(&c, 3).unwrap();
        for p in &cands {
            match p.family {
                Family::V => {
                    // θ q_k - p_k has sign (-1)^k
                    assert_eq!(p.coord1.lo().is_positive(), p.index % 2 == 0, "{}", p.label());
                    assert!(p.coord2.lo().is_positive());
                }
                Family::W => {
                    assert!(p.coord1.lo().is_positive());
                    // r_k - s_k η has sign (-1)^(k+1)
                    assert_eq!(p.coord2.lo().is_positive(), p.index % 2 == 1, "{}", p.label());
                }
                _ => {}
            }
        }
    }

    #[test]
    fn lookahead_contract_enforced() {
        let c = beta2_run(4);
        assert!(candidates(&c, 2).is_ok());
        assert!(matches!(candidates(&c, 3), Err(Error::DepthUnavailable { .. })));
    }

    #[test]
    fn cheap_depths_are_shallow_but_certifying(){
        let c = beta2_run(6);
        let d = cheap_enclosure_depths(&c);
        assert!(d.theta <= 3 && d.eta <= 3);
        let deep = EncDepths::deepest(&c);
        assert!(deep.theta == 5 && deep.eta == 5);
    }
}
