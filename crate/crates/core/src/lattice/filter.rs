//! The certified hyperbolic-minima filter.

use super::point::{build_point, sup_enclosure_of_next, EncDepths, Family, LatticePoint};
use crate::construct::PairConstruction;
use crate::error::{Error, Result};
use crate::interval::{IntervalOrder, RatInterval};
use std::cmp::Ordering;

/// Maximum refinement rounds before giving up on an interval comparison;
/// each round extends the convergent lookahead by two indices.
const MAX_REFINE_ROUNDS: usize = 5;

/// Successive hyperbolic minima with certification metadata.
///
/// Entries are in strictly increasing sup-norm and strictly decreasing
/// product order (both interval-certified). `certified_from` is the index
/// of the first certified entry — the filter only emits certified entries,
/// so it is 0 whenever the sequence is nonempty. `alternation_from` is the
/// empirical start of the regular regime where families strictly
/// alternate `..., V_k, W_k, V_{k+1}, ...`.
#[derive(Clone, Debug)]
pub struct MinimaSequence {
    pub points: Vec<LatticePoint>,
    pub certified_from: usize,
    pub alternation_from: Option<usize>,
}

impl MinimaSequence {
    pub fn certified(&self) -> &[LatticePoint] {
        &self.points[self.certified_from..]
    }
}

/// Shared refinement state: a locally extendable copy of the construction.
struct RefineCtx {
    construction: PairConstruction,
    rounds_used: usize,
}

impl RefineCtx {
    fn refine(&mut self) -> Result<()> {
        if self.rounds_used >= MAX_REFINE_ROUNDS {
            return Err(Error::UnresolvableOrder { rounds: self.rounds_used });
        }
        self.rounds_used += 1;
        self.construction = self.construction.extended(self.construction.depth() + 2)?;
        Ok(())
    }

    fn rebuild(&self, p: &LatticePoint) -> Result<LatticePoint> {
        build_point(&self.construction, p.family, p.index, EncDepths::deepest(&self.construction))
    }
}

/// Compare two enclosures, refining both points until the order resolves.
/// Exact ties between point intervals resolve as `Equal`.
fn compare_refining(
    a: &mut LatticePoint,
    b: &mut LatticePoint,
    ctx: &mut RefineCtx,
    key: fn(&LatticePoint) -> &RatInterval,
) -> Result<Ordering> {
    loop {
        match key(a).compare(key(b)) {
            IntervalOrder::Less => return Ok(Ordering::Less),
            IntervalOrder::Greater => return Ok(Ordering::Greater),
            IntervalOrder::Overlap => {
                if key(a).is_point() && key(b).is_point() {
                    return Ok(Ordering::Equal);
                }
                ctx.refine()?;
                *a = ctx.rebuild(a)?;
                *b = ctx.rebuild(b)?;
            }
        }
    }
}

fn sup_key(p: &LatticePoint) -> &RatInterval {
    &p.supnorm
}

fn pi2_key(p: &LatticePoint) -> &RatInterval {
    &p.pi2
}

/// Filter the candidate list down to the certified successive hyperbolic
/// minima.
///
/// Steps: sort by sup-norm (interval-strict, refining on overlap), emit the
/// strict running minima of the product enclosure (product ties keep the
/// earlier, smaller point), then truncate any trailing entries at or beyond
/// the sup-norm of the first candidate *not* in the list — beyond that
/// horizon the candidate set no longer vouches for completeness.
pub fn hyperbolic_filter(
    c: &PairConstruction,
    cands: &[LatticePoint],
) -> Result<MinimaSequence> {
    let mut ctx = RefineCtx { construction: c.clone(), rounds_used: 0 };
    let mut pts: Vec<LatticePoint> = cands.to_vec();

    // insertion sort with refine-on-overlap comparisons; candidate lists
    // are short, and overlaps are rare enough that sort cost is irrelevant
    for i in 1..pts.len() {
        let mut j = i;
        while j > 0 {
            let (left, right) = pts.split_at_mut(j);
            let ord = compare_refining(&mut left[j - 1], &mut right[0], &mut ctx, sup_key)?;
            if ord == Ordering::Greater {
                pts.swap(j - 1, j);
                j -= 1;
            } else {
                break;
            }
        }
    }

    // strict running minima of pi2
    let mut minima: Vec<LatticePoint> = Vec::new();
    for mut p in pts {
        let keep = match minima.last_mut() {
            None => true,
            Some(best) => compare_refining(&mut p, best, &mut ctx, pi2_key)? == Ordering::Less,
        };
        if keep {
            minima.push(p);
        }
    }

    // completeness horizon: sup-norms of the first V and W beyond the list
    let last_v = cands.iter().filter(|p| p.family == Family::V).map(|p| p.index as usize).max();
    let last_w = cands.iter().filter(|p| p.family == Family::W).map(|p| p.index as usize).max();
    if let (Some(lv), Some(lw)) = (last_v, last_w) {
        let (v_next, w_next) = sup_enclosure_of_next(&ctx.construction, lv, lw)?;
        let horizon = if v_next.lo() <= w_next.lo() { v_next.lo().clone() } else { w_next.lo().clone() };
        while let Some(last) = minima.last() {
            if last.supnorm.hi() < &horizon {
                break;
            }
            minima.pop();
        }
    }

    let alternation_from = alternation_start(&minima);
    Ok(MinimaSequence { points: minima, certified_from: 0, alternation_from })
}

/// First index from which families strictly alternate
/// `(V, k), (W, k), (V, k+1), ...` through the end (E1/E2 act as the
/// `k = -1` members of their families). `None` when even the final entry
/// has no alternating predecessor relationship, or the list is empty.
fn alternation_start(minima: &[LatticePoint]) -> Option<usize> {
    if minima.is_empty() {
        return None;
    }
    let mut start = minima.len() - 1;
    for i in (1..minima.len()).rev() {
        let prev = &minima[i - 1];
        let cur = &minima[i];
        let steps = match (prev.family.is_v_like(), cur.family.is_v_like()) {
            // V_k -> W_k
            (true, false) => prev.index == cur.index,
            // W_k -> V_{k+1}
            (false, true) => prev.index + 1 == cur.index,
            _ => false,
        };
        if steps {
            start = i - 1;
        } else {
            break;
        }
    }
    Some(start)
}
