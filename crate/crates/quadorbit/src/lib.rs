//! Workbench for plane quadratic maps that preserve a cuspidal cubic curve.
//!
//! The pipeline goes from combinatorial orbit data (three orbit lengths and
//! a permutation) through characteristic polynomials and dynamical degrees,
//! to a realization as marked points on the cubic, the induced action on
//! the real part of the blown-up surface, fixed point counts on the real
//! slice, and finally an explicit quadratic map that can be iterated
//! numerically.

pub mod mpfloat;
pub mod orbitspec;
pub mod polylab;
pub mod realhomology;
pub mod realization;

pub use orbitspec::{OrbitData, Permutation3};
pub use polylab::{FieldElem, IntPoly, NfCtx, RatPoly, RootBracket};
pub use realhomology::{EntropyStatus, GrowthClass, HomologyAction};
pub use realization::{MarkedConfig, Verdict};

#[derive(thiserror::Error, Debug)]
pub enum Error {
    #[error("zero polynomial passed to {0}")]
    ZeroPoly(&'static str),
    #[error("polynomial is not monic up to sign")]
    NotMonic,
    #[error("division by an element vanishing at the root (shared factor {gcd})")]
    DivisionByZero { gcd: String },
    #[error("failed to separate roots at {prec_bits} bits of working precision")]
    RootSeparation { prec_bits: u32 },
    #[error("{0}")]
    Msg(String),
}
