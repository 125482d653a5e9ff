//! The lattice `Λ = A Z^2`, `A = [[θ, -1], [1, η]]`, its relative-minima
//! candidates, the certified hyperbolic-minima filter, and brute-force
//! oracles that re-derive the same verdicts by exhaustive search.
//!
//! Candidate points come from the convergents of θ and η: the images of
//! `(1,0)`, `(0,1)`, `(q_k, p_k)` and `(r_k, -s_k)` (one representative per
//! `±` pair) are exactly the relative minima of the lattice. A point is a
//! hyperbolic minimum when no lattice point of sup-norm at most its own has
//! a strictly smaller coordinate-product; since every lattice point
//! dominates a relative minimum componentwise, scanning candidates in
//! sup-norm order and keeping the strict running minima of the product is
//! a sound filter once the candidate list is complete for the sup-norm
//! range — the filter enforces that with an explicit tail bound.

mod filter;
mod oracle;
mod point;

pub use filter::{hyperbolic_filter, MinimaSequence};
pub use oracle::{oracle_hyperbolic, oracle_relative, OracleReport};
pub use point::{candidates, sup_enclosure_of_next, Family, LatticePoint};

pub(crate) use point::{build_point, cheap_enclosure_depths, EncDepths};
