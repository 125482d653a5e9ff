//! Paired partial-quotient generators.
//!
//! Three modes produce the coupled expansions `θ = [1; a_1, a_2, ...]`,
//! `η = [1; b_1, b_2, ...]`:
//!
//! - **Beta**: `a_1 = 2`, `b_1 = [2^β] + 1`, then for `k >= 2`
//!   `a_k = [(s_{k-1}^β - q_{k-2})/q_{k-1}] + 1` and
//!   `b_k = [(q_k^β - s_{k-2})/s_{k-1}] + 1`, interleaved so that `q_k`
//!   exists before `b_k` needs it. Realizes weak-uniform exponent
//!   `(β - β^{-1})/2`.
//! - **SuperExp**: same seeds, but the exponent at step `k` is `k` itself;
//!   denominators then grow super-exponentially (the `∞` endpoint).
//! - **Bounded**: both quotient sequences repeat fixed patterns (the `0`
//!   endpoint; partial quotients stay bounded).

use crate::cfcore::ConvergentTable;
use crate::error::{Error, Result};
use crate::fastdiv::floor_div_exact_signed;
use crate::interval::IntervalOrder;
use crate::power::{pow_floor_div, BetaSpec, PrecisionBudget};
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Generation mode, carrying its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Mode {
    Beta(BetaSpec),
    SuperExp,
    Bounded { a_pattern: Vec<BigInt>, b_pattern: Vec<BigInt> },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Beta(b) => write!(f, "beta({b})"),
            Mode::SuperExp => write!(f, "superexp"),
            Mode::Bounded { .. } => write!(f, "bounded"),
        }
    }
}

/// Verified order of the two values, from exact interval comparison at the
/// deepest common enclosure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ValueOrder {
    EtaBelowTheta,
    ThetaBelowEta,
    Unresolved,
}

/// How the tables came to be: generated by a mode recursion (extendable) or
/// assembled from explicit quotients (perturbation hook, deserialization).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Origin {
    Generated,
    Assembled,
}

/// A pair of coupled convergent tables, immutable after generation.
///
/// `depth` is the deepest index present in *both* tables; the θ-side may
/// run one index ahead (see [`PairConstruction::extend_theta_once`]), which
/// the deep super-exponential analyses use to bound one more minimum
/// without paying for the enormous matching `s`-entry.
#[derive(Clone, Debug)]
pub struct PairConstruction {
    mode: Mode,
    theta: ConvergentTable,
    eta: ConvergentTable,
    budget: PrecisionBudget,
    value_order: ValueOrder,
    origin: Origin,
}

/// Exponent used at step `k` of the recursion.
fn step_exponent(mode: &Mode, k: usize) -> Result<BetaSpec> {
    match mode {
        Mode::Beta(b) => Ok(b.clone()),
        Mode::SuperExp => BetaSpec::new(BigInt::from(k as u64), BigInt::one()),
        Mode::Bounded { .. } => unreachable!("bounded mode uses patterns, not exponents"),
    }
}

/// `[(base^e - sub)/div] + 1`, the next partial quotient.
fn next_quotient(
    base: &BigInt,
    e: &BetaSpec,
    sub: &BigInt,
    div: &BigInt,
    budget: PrecisionBudget,
) -> Result<BigInt> {
    if e.is_integer() {
        // exact integer power; route the division through the size-aware path
        let n = crate::power::exponent_as_u32(e)?;
        let powed = num_traits::pow::pow(base.clone(), n as usize);
        Ok(floor_div_exact_signed(&(powed - sub), div) + BigInt::one())
    } else {
        Ok(pow_floor_div(base, e, sub, div, budget)? + BigInt::one())
    }
}

/// Cross-power check `lhs^(n/d) < rhs`, exact: `lhs^n < rhs^d`.
fn pow_less(lhs: &BigInt, e: &BetaSpec, rhs: &BigInt) -> Result<bool> {
    let n = crate::power::exponent_as_u32(e)? as usize;
    let d = crate::power::denominator_as_u32(e)? as usize;
    Ok(num_traits::pow::pow(lhs.clone(), n) < num_traits::pow::pow(rhs.clone(), d))
}

/// Exact check `rhs < 2 * lhs^(n/d)`: `rhs^d < 2^d * lhs^n`.
fn below_double_power(rhs: &BigInt, e: &BetaSpec, lhs: &BigInt) -> Result<bool> {
    let n = crate::power::exponent_as_u32(e)? as usize;
    let d = crate::power::denominator_as_u32(e)? as usize;
    let scaled = num_traits::pow::pow(lhs.clone(), n) << d;
    Ok(num_traits::pow::pow(rhs.clone(), d) < scaled)
}

/// Skip the (tautological but bug-catching) growth verification once the
/// operands get enormous; the audit module re-proves these exactly for the
/// runs that matter.
const VERIFY_BITS_CAP: u64 = 1 << 18;

impl PairConstruction {
    /// The β-mode generator. `depth >= 2`.
    pub fn generate_beta(beta: BetaSpec, depth: usize, budget: PrecisionBudget) -> Result<Self> {
        Self::generate_power_mode(Mode::Beta(beta), depth, budget)
    }

    /// The super-exponential generator (exponent at step `k` is `k`); seeds
    /// are shared with β = 2 so the two modes agree through index 2.
    pub fn generate_superexp(depth: usize, budget: PrecisionBudget) -> Result<Self> {
        Self::generate_power_mode(Mode::SuperExp, depth, budget)
    }

    fn generate_power_mode(mode: Mode, depth: usize, budget: PrecisionBudget) -> Result<Self> {
        if depth < 2 {
            return Err(Error::InvalidParameter("depth must be at least 2".into()));
        }
        let seed_beta = match &mode {
            Mode::Beta(b) => b.clone(),
            _ => BetaSpec::from_u64(2)?,
        };
        // a0 = b0 = 1, a1 = 2, b1 = [2^beta] + 1
        let mut theta = ConvergentTable::new(BigInt::one())?;
        theta.extend(BigInt::from(2))?;
        let mut eta = ConvergentTable::new(BigInt::one())?;
        let b1 = pow_floor_div(&BigInt::from(2), &seed_beta, &BigInt::from(0), &BigInt::one(), budget)?
            + BigInt::one();
        eta.extend(b1)?;

        let mut c = Self {
            mode,
            theta,
            eta,
            budget,
            value_order: ValueOrder::Unresolved,
            origin: Origin::Generated,
        };
        c.advance_to(depth)?;
        c.value_order = c.compare_values();
        Ok(c)
    }

    /// Bounded mode: `a_k`/`b_k` repeat the given patterns for `k >= 1`
    /// (with `a_0 = b_0 = 1` forced, keeping both values in `(1, 2)`).
    pub fn generate_bounded(
        a_pattern: &[BigInt],
        b_pattern: &[BigInt],
        depth: usize,
        budget: PrecisionBudget,
    ) -> Result<Self> {
        if depth < 2 {
            return Err(Error::InvalidParameter("depth must be at least 2".into()));
        }
        if a_pattern.is_empty() || b_pattern.is_empty() {
            return Err(Error::InvalidParameter("patterns must be nonempty".into()));
        }
        for x in a_pattern.iter().chain(b_pattern) {
            if x < &BigInt::one() {
                return Err(Error::InvalidParameter("pattern entries must be >= 1".into()));
            }
        }
        // equal periodic sequences define equal numbers
        let l = num_integer::lcm(a_pattern.len(), b_pattern.len());
        if (0..l).all(|i| a_pattern[i % a_pattern.len()] == b_pattern[i % b_pattern.len()]) {
            return Err(Error::DegenerateEqualValues);
        }

        let mut c = Self {
            mode: Mode::Bounded { a_pattern: a_pattern.to_vec(), b_pattern: b_pattern.to_vec() },
            theta: ConvergentTable::new(BigInt::one())?,
            eta: ConvergentTable::new(BigInt::one())?,
            budget,
            value_order: ValueOrder::Unresolved,
            origin: Origin::Generated,
        };
        c.advance_to(depth)?;
        c.value_order = c.compare_values();
        Ok(c)
    }

    /// Build directly from explicit partial quotients (no recursion). Used
    /// by deserialization and by the audit's failure-injection hook; the
    /// result cannot be extended.
    pub fn from_partial_quotients(
        mode: Mode,
        a: &[BigInt],
        b: &[BigInt],
        budget: PrecisionBudget,
    ) -> Result<Self> {
        if a.len() != b.len() && a.len() != b.len() + 1 {
            return Err(Error::InvalidParameter(
                "quotient sequences must have equal length (theta may lead by one)".into(),
            ));
        }
        if a.len() < 2 {
            return Err(Error::InvalidParameter("need at least indices 0 and 1".into()));
        }
        let mut theta = ConvergentTable::new(a[0].clone())?;
        for x in &a[1..] {
            theta.extend(x.clone())?;
        }
        let mut eta = ConvergentTable::new(b[0].clone())?;
        for x in &b[1..] {
            eta.extend(x.clone())?;
        }
        let mut c = Self {
            mode,
            theta,
            eta,
            budget,
            value_order: ValueOrder::Unresolved,
            origin: Origin::Assembled,
        };
        c.value_order = c.compare_values();
        Ok(c)
    }

    /// Copy with `a_k` (or `b_k` when `on_eta`) bumped by one and the
    /// convergents rebuilt from the modified sequence. Downstream quotients
    /// are kept frozen, so the defining floor identities break at `k`:
    /// the audit must notice.
    pub fn perturbed(&self, on_eta: bool, k: usize, delta: u64) -> Result<Self> {
        let mut a: Vec<BigInt> = self.theta.partial_quotients().to_vec();
        let mut b: Vec<BigInt> = self.eta.partial_quotients().to_vec();
        let target = if on_eta { &mut b } else { &mut a };
        if k >= target.len() {
            return Err(Error::DepthUnavailable { requested: k, available: target.len() - 1 });
        }
        target[k] += BigInt::from(delta);
        Self::from_partial_quotients(self.mode.clone(), &a, &b, self.budget)
    }

    /// Advance the interleaved recursion so both tables reach `depth`.
    fn advance_to(&mut self, depth: usize) -> Result<()> {
        while self.eta.depth() < depth {
            let k = self.eta.depth() + 1;
            if self.theta.depth() < k {
                self.step_theta(k)?;
            }
            self.step_eta(k)?;
        }
        Ok(())
    }

    fn step_theta(&mut self, k: usize) -> Result<()> {
        debug_assert_eq!(self.theta.depth() + 1, k);
        if let Mode::Bounded { a_pattern, .. } = &self.mode {
            let a_k = a_pattern[(k - 1) % a_pattern.len()].clone();
            return self.theta.extend(a_k);
        }
        let e = step_exponent(&self.mode, k)?;
        let s_prev = self.eta.denominator(k - 1).clone();
        let a_k = next_quotient(
            &s_prev,
            &e,
            self.theta.denominator(k - 2),
            self.theta.denominator(k - 1),
            self.budget,
        )?;
        self.theta.extend(a_k)?;
        // fail fast on the growth inequalities s_{k-1}^e < q_k < 2 s_{k-1}^e
        // (skipped above the size cap, where the audit re-proves them for
        // the runs that use them)
        if s_prev.bits() <= VERIFY_BITS_CAP {
            let q_k = self.theta.denominator(k);
            if !(pow_less(&s_prev, &e, q_k)? && below_double_power(q_k, &e, &s_prev)?) {
                return Err(Error::InvalidParameter(format!(
                    "denominator growth invariant failed at theta step {k}"
                )));
            }
        }
        Ok(())
    }

    fn step_eta(&mut self, k: usize) -> Result<()> {
        debug_assert_eq!(self.eta.depth() + 1, k);
        if let Mode::Bounded { b_pattern, .. } = &self.mode {
            let b_k = b_pattern[(k - 1) % b_pattern.len()].clone();
            return self.eta.extend(b_k);
        }
        let e = step_exponent(&self.mode, k)?;
        let q_k = self.theta.denominator(k).clone();
        let b_k = next_quotient(
            &q_k,
            &e,
            self.eta.denominator(k - 2),
            self.eta.denominator(k - 1),
            self.budget,
        )?;
        self.eta.extend(b_k)?;
        if q_k.bits() <= VERIFY_BITS_CAP {
            let s_k = self.eta.denominator(k);
            if !(pow_less(&q_k, &e, s_k)? && below_double_power(s_k, &e, &q_k)?) {
                return Err(Error::InvalidParameter(format!(
                    "denominator growth invariant failed at eta step {k}"
                )));
            }
        }
        Ok(())
    }

    /// New construction of the same mode extended to `new_depth`. Only
    /// generated constructions can extend (assembled ones carry no
    /// recurrence to continue).
    pub fn extended(&self, new_depth: usize) -> Result<Self> {
        if new_depth <= self.depth() {
            return Ok(self.clone());
        }
        if self.origin == Origin::Assembled {
            return Err(Error::InvalidParameter(
                "assembled constructions cannot be extended".into(),
            ));
        }
        let mut c = self.clone();
        c.advance_to(new_depth)?;
        c.value_order = c.compare_values();
        Ok(c)
    }

    /// Advance only the θ-side by one index (`a_{K+1}`, `q_{K+1}`), the
    /// natural half step of the interleaved recursion. The matching
    /// `b_{K+1}` would need `q_{K+1}^e`, vastly larger; deep
    /// super-exponential probes stop here.
    pub fn extend_theta_once(&self) -> Result<Self> {
        if self.origin == Origin::Assembled {
            return Err(Error::InvalidParameter(
                "assembled constructions cannot be extended".into(),
            ));
        }
        if self.theta.depth() > self.eta.depth() {
            return Ok(self.clone());
        }
        let mut c = self.clone();
        c.step_theta(self.depth() + 1)?;
        Ok(c)
    }

    fn compare_values(&self) -> ValueOrder {
        let j = self.depth().saturating_sub(1);
        if j == 0 {
            return ValueOrder::Unresolved;
        }
        match (self.theta.value_enclosure(j), self.eta.value_enclosure(j)) {
            (Ok(t), Ok(e)) => match e.compare(&t) {
                IntervalOrder::Less => ValueOrder::EtaBelowTheta,
                IntervalOrder::Greater => ValueOrder::ThetaBelowEta,
                IntervalOrder::Overlap => ValueOrder::Unresolved,
            },
            _ => ValueOrder::Unresolved,
        }
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    /// Deepest index present in both tables.
    pub fn depth(&self) -> usize {
        self.eta.depth()
    }

    /// Deepest index on the θ side (equals `depth()` or `depth() + 1`).
    pub fn theta_depth(&self) -> usize {
        self.theta.depth()
    }

    pub fn theta(&self) -> &ConvergentTable {
        &self.theta
    }

    pub fn eta(&self) -> &ConvergentTable {
        &self.eta
    }

    pub fn budget(&self) -> PrecisionBudget {
        self.budget
    }

    /// Exact-comparison verdict on η < θ recorded at generation time.
    pub fn value_order(&self) -> ValueOrder {
        self.value_order
    }
}

// ---------------------------------------------------------------------------
// JSON document form: every integer as a decimal string, exact round-trip.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct PairConstructionDoc {
    mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a_pattern: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b_pattern: Option<Vec<String>>,
    depth: usize,
    theta_depth: usize,
    value_order: ValueOrder,
    a: Vec<String>,
    b: Vec<String>,
    p: Vec<String>,
    q: Vec<String>,
    r: Vec<String>,
    s: Vec<String>,
}

fn ints_to_strings(xs: &[BigInt]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn strings_to_ints(xs: &[String]) -> Result<Vec<BigInt>> {
    xs.iter()
        .map(|x| x.parse().map_err(|_| Error::InvalidParameter(format!("bad integer {x:?}"))))
        .collect()
}

impl Serialize for PairConstruction {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let (mode, beta, a_pattern, b_pattern) = match &self.mode {
            Mode::Beta(b) => ("beta", Some(b.to_string()), None, None),
            Mode::SuperExp => ("superexp", None, None, None),
            Mode::Bounded { a_pattern, b_pattern } => (
                "bounded",
                None,
                Some(ints_to_strings(a_pattern)),
                Some(ints_to_strings(b_pattern)),
            ),
        };
        PairConstructionDoc {
            mode: mode.to_string(),
            beta,
            a_pattern,
            b_pattern,
            depth: self.depth(),
            theta_depth: self.theta_depth(),
            value_order: self.value_order,
            a: ints_to_strings(self.theta.partial_quotients()),
            b: ints_to_strings(self.eta.partial_quotients()),
            p: ints_to_strings(self.theta.numerators()),
            q: ints_to_strings(self.theta.denominators()),
            r: ints_to_strings(self.eta.numerators()),
            s: ints_to_strings(self.eta.denominators()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PairConstruction {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DError;
        let doc = PairConstructionDoc::deserialize(deserializer)?;
        let mode = match doc.mode.as_str() {
            "beta" => {
                let b = doc.beta.ok_or_else(|| DError::custom("beta mode without beta"))?;
                Mode::Beta(b.parse().map_err(DError::custom)?)
            }
            "superexp" => Mode::SuperExp,
            "bounded" => Mode::Bounded {
                a_pattern: strings_to_ints(
                    &doc.a_pattern.ok_or_else(|| DError::custom("bounded mode without a_pattern"))?,
                )
                .map_err(DError::custom)?,
                b_pattern: strings_to_ints(
                    &doc.b_pattern.ok_or_else(|| DError::custom("bounded mode without b_pattern"))?,
                )
                .map_err(DError::custom)?,
            },
            other => return Err(DError::custom(format!("unknown mode {other:?}"))),
        };
        let a = strings_to_ints(&doc.a).map_err(DError::custom)?;
        let b = strings_to_ints(&doc.b).map_err(DError::custom)?;
        let c = PairConstruction::from_partial_quotients(mode, &a, &b, PrecisionBudget::default())
            .map_err(DError::custom)?;
        // the convergent arrays are redundant; verify they match exactly
        let check = |name: &str, got: &[BigInt], want: &[String]| -> std::result::Result<(), D::Error> {
            if ints_to_strings(got) != want {
                return Err(DError::custom(format!("{name} array inconsistent with quotients")));
            }
            Ok(())
        };
        check("p", c.theta.numerators(), &doc.p)?;
        check("q", c.theta.denominators(), &doc.q)?;
        check("r", c.eta.numerators(), &doc.r)?;
        check("s", c.eta.denominators(), &doc.s)?;
        Ok(c)
    }
}
