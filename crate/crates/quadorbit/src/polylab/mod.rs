//! Exact polynomial utilities: integer/rational polynomials, Sturm chains
//! and certified real-root isolation, cyclotomic factor peeling, Newton
//! power sums, certified complex root finding, and arithmetic in Q(delta).

pub mod aberth;
pub mod cyclotomic;
pub mod fieldelem;
pub mod intpoly;
pub mod linalg;
pub mod powersums;
pub mod sturm;

pub use aberth::{all_complex_roots, CertifiedRoot};
pub use cyclotomic::{cyclotomic_poly, cyclotomic_split, euler_phi, CyclotomicSplit};
pub use fieldelem::{FieldElem, NfCtx};
pub use intpoly::{IntPoly, RatPoly};
pub use powersums::power_sums;
pub use sturm::{largest_real_root, largest_real_root_above, sturm_count, RootBracket, SturmChain};

use crate::Error;

/// Coefficient reversal: t^deg p * p(1/t).
pub fn reverse(p: &IntPoly) -> Result<IntPoly, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPoly("reverse"));
    }
    Ok(p.reverse())
}

/// Exact zero test for an element of Q(delta).
pub fn nf_is_zero(x: &FieldElem) -> bool {
    x.is_zero_at_root()
}
