//! Exact-arithmetic study of two-dimensional lattices built from paired
//! continued fractions.
//!
//! The crate constructs pairs of numbers `θ = [1; a_1, a_2, ...]` and
//! `η = [1; b_1, b_2, ...]` whose partial quotients are coupled through a
//! power recursion, realizes the lattice `Λ = A Z^2` for
//! `A = [[θ, -1], [1, η]]`, certifies its successive hyperbolic minima with
//! rational interval arithmetic, and estimates the Diophantine exponents the
//! construction is designed to pin down. Everything that feeds a verdict is
//! exact: big-rational interval endpoints, integer power comparisons, and
//! logarithms carrying certified error bounds.
//!
//! Module map:
//!
//! - [`interval`]: rational intervals, the universal enclosure type
//! - [`logs`]: logarithms of huge rationals with certified errors
//! - [`power`]: rational exponents and exact power floors
//! - [`cfcore`]: convergent tables and remainder sandwiches
//! - [`construct`]: the paired partial-quotient generators (three modes)
//! - [`lattice`]: candidate minima, the hyperbolic filter, brute-force oracles
//! - [`exponents`]: finite-depth exponent estimators
//! - [`audit`]: mechanical verification of the construction's inequality chains

pub mod audit;
pub mod cfcore;
pub mod construct;
pub mod decimal;
mod error;
pub mod exponents;
mod fastdiv;
pub mod interval;
pub mod lattice;
pub mod logs;
pub mod power;

pub use error::{Error, Result};
pub use interval::{IntervalOrder, RatInterval};
pub use power::{BetaSpec, PrecisionBudget};
