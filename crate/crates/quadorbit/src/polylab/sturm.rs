//! Sturm chains, certified root counting, and isolating brackets for real
//! roots with refinement to a requested decimal precision.

use super::intpoly::{IntPoly, RatPoly};
use crate::mpfloat::{digits_to_bits, MpF};
use crate::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Sturm chain of a squarefree primitive polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(squarefree: &IntPoly) -> Self {
        let mut polys = vec![squarefree.clone()];
        let d = squarefree.derivative();
        if !d.is_zero() {
            polys.push(d.primitive());
        }
        while polys.last().map_or(false, |p| p.deg().map_or(false, |d| d > 0)) {
            let n = polys.len();
            let a = RatPoly::from_int(&polys[n - 2]);
            let b = RatPoly::from_int(&polys[n - 1]);
            let (_, r) = a.divrem(&b);
            if r.is_zero() {
                break;
            }
            // Scaling by a positive rational preserves all signs.
            polys.push(r.neg().clear_denominators().primitive_signed());
        }
        SturmChain { polys }
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in &self.polys {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    fn variations_at_pos_inf(&self) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in &self.polys {
            let s = super::intpoly::sign_of(&p.lc());
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in the half-open interval (a, b],
    /// with b = None meaning +infinity.
    pub fn count(&self, a: &BigRational, b: Option<&BigRational>) -> usize {
        let va = self.variations_at(a);
        let vb = match b {
            Some(b) => self.variations_at(b),
            None => self.variations_at_pos_inf(),
        };
        va.saturating_sub(vb)
    }
}

trait PrimitiveSigned {
    fn primitive_signed(&self) -> IntPoly;
}

impl PrimitiveSigned for IntPoly {
    /// Divide by content but keep the sign of the leading coefficient.
    fn primitive_signed(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let c = self.content();
        IntPoly::new(self.coeffs().iter().map(|a| a / &c).collect())
    }
}

/// Number of distinct real roots of p in (a, b]; b = None means +infinity.
pub fn sturm_count(p: &IntPoly, a: &BigRational, b: Option<&BigRational>) -> Result<usize, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPoly("sturm_count"));
    }
    if p.deg() == Some(0) {
        return Ok(0);
    }
    let q = p.squarefree_part();
    Ok(SturmChain::new(&q).count(a, b))
}

/// An isolating interval (lo, hi] containing exactly one real root of a
/// squarefree polynomial, refinable to any requested width.
#[derive(Clone, Debug)]
pub struct RootBracket {
    poly: IntPoly,
    chain: SturmChain,
    lo: BigRational,
    hi: BigRational,
}

impl RootBracket {
    /// `poly` must be squarefree with exactly one root in (lo, hi].
    pub fn new(poly: IntPoly, lo: BigRational, hi: BigRational) -> Result<Self, Error> {
        let poly = poly.squarefree_part();
        let chain = SturmChain::new(&poly);
        if chain.count(&lo, Some(&hi)) != 1 {
            return Err(Error::Msg(format!(
                "interval ({}, {}] does not isolate exactly one root",
                lo, hi
            )));
        }
        Ok(RootBracket { poly, chain, lo, hi })
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
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

    pub fn contains(&self, x: &BigRational) -> bool {
        *x > self.lo && *x <= self.hi
    }

    /// Exactly one root of `other` sits in this bracket. When `other`
    /// divides `poly`, that root must be the bracketed one.
    pub fn count_roots_of(&self, other: &IntPoly) -> usize {
        let q = other.squarefree_part();
        if q.deg().unwrap_or(0) == 0 {
            return 0;
        }
        SturmChain::new(&q).count(&self.lo, Some(&self.hi))
    }

    /// Bisect until the width is strictly below `w`.
    pub fn refine_width(&mut self, w: &BigRational) {
        let two = BigRational::from_integer(BigInt::from(2));
        while self.width() >= *w {
            let mid = (&self.lo + &self.hi) / &two;
            if self.chain.count(&mid, Some(&self.hi)) >= 1 {
                self.lo = mid;
            } else {
                self.hi = mid;
            }
        }
    }

    /// Shrink until the bracket lies strictly inside (a, b); requires the
    /// root to be strictly inside, which the caller must know.
    pub fn refine_inside(&mut self, a: &BigRational, b: &BigRational) {
        let two = BigRational::from_integer(BigInt::from(2));
        while self.lo < *a || self.hi > *b {
            let mid = (&self.lo + &self.hi) / &two;
            if self.chain.count(&mid, Some(&self.hi)) >= 1 {
                self.lo = mid;
            } else {
                self.hi = mid;
            }
        }
    }

    /// Refine so the width is below 10^-digits, using bisection for
    /// isolation and Newton steps for the fine phase, then certify the
    /// final interval with the Sturm chain.
    pub fn refine_decimal(&mut self, digits: u32) {
        let ten = BigInt::from(10u8);
        let target = BigRational::new(BigInt::one(), num_traits::pow(ten, digits as usize));
        if self.width() < target {
            return;
        }
        // Coarse isolation.
        let coarse = BigRational::new(BigInt::one(), BigInt::from(1u64) << 40);
        let w0 = self.width();
        self.refine_width(if w0 < coarse { &w0 } else { &coarse });
        if self.width() < target {
            return;
        }
        // Newton phase at 3.3*digits + margin bits.
        let prec = digits_to_bits(digits) + 32;
        let dp = self.poly.derivative();
        let mut x = MpF::from_ratio(&((&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))), prec);
        let mut ok = true;
        for _ in 0..(64 + digits / 8) {
            let fx = self.poly.eval_mpf(&x, prec);
            if fx.is_zero() {
                break;
            }
            let dfx = dp.eval_mpf(&x, prec);
            if dfx.is_zero() {
                ok = false;
                break;
            }
            let step = fx.div(&dfx, prec);
            x = x.sub(&step, prec);
            if !step.is_zero() && step.abs().mag_exp() < -(digits_to_bits(digits) as i64) - 8 {
                break;
            }
        }
        if ok {
            // Certify x +- target/2 as the new bracket.
            let xr = x.to_rational();
            let half = &target / BigRational::from_integer(BigInt::from(2));
            let a = &xr - &half;
            let b = &xr + &half;
            if a > self.lo && b <= self.hi && self.chain.count(&a, Some(&b)) == 1 {
                self.lo = a;
                self.hi = b;
                return;
            }
            // Newton may have landed at the exact root near an endpoint of
            // the current bracket; widen the certificate attempt once.
            let a2 = if &a < &self.lo { self.lo.clone() } else { a };
            let b2 = if &b > &self.hi { self.hi.clone() } else { b };
            if a2 < b2 && self.chain.count(&a2, Some(&b2)) == 1 && (&b2 - &a2) < target {
                self.lo = a2;
                self.hi = b2;
                return;
            }
        }
        // Fall back to plain bisection.
        self.refine_width(&target);
    }

    /// Midpoint after refining to the requested decimal precision.
    pub fn approx(&mut self, digits: u32) -> MpF {
        self.refine_decimal(digits);
        let two = BigRational::from_integer(BigInt::from(2));
        let mid = (&self.lo + &self.hi) / &two;
        MpF::from_ratio(&mid, digits_to_bits(digits))
    }

    pub fn to_f64(&mut self) -> f64 {
        self.approx(17).to_f64()
    }
}

/// Bracket for the largest real root of p, refined below 10^-digits width.
/// None when p has no real root.
pub fn largest_real_root(p: &IntPoly, digits: u32) -> Result<Option<RootBracket>, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPoly("largest_real_root"));
    }
    if p.deg() == Some(0) {
        return Ok(None);
    }
    let q = p.squarefree_part();
    let chain = SturmChain::new(&q);
    let bound = q.cauchy_bound();
    let mut lo = -bound.clone();
    let mut hi = bound;
    let total = chain.count(&lo, Some(&hi));
    if total == 0 {
        return Ok(None);
    }
    let two = BigRational::from_integer(BigInt::from(2));
    while chain.count(&lo, Some(&hi)) > 1 {
        let mid = (&lo + &hi) / &two;
        if chain.count(&mid, Some(&hi)) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut bracket = RootBracket { poly: q, chain, lo, hi };
    bracket.refine_decimal(digits);
    Ok(Some(bracket))
}

/// Largest real root strictly greater than `floor`, refined below
/// 10^-digits width; None when no root exceeds `floor`.
pub fn largest_real_root_above(
    p: &IntPoly,
    floor: &BigRational,
    digits: u32,
) -> Result<Option<RootBracket>, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPoly("largest_real_root"));
    }
    if p.deg() == Some(0) {
        return Ok(None);
    }
    let q = p.squarefree_part();
    let chain = SturmChain::new(&q);
    if chain.count(floor, None) == 0 {
        return Ok(None);
    }
    let bound = q.cauchy_bound();
    let mut lo = floor.clone();
    let mut hi = if bound > *floor { bound } else { floor + BigRational::one() };
    let two = BigRational::from_integer(BigInt::from(2));
    while chain.count(&lo, Some(&hi)) > 1 {
        let mid = (&lo + &hi) / &two;
        if chain.count(&mid, Some(&hi)) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut bracket = RootBracket { poly: q, chain, lo, hi };
    bracket.refine_decimal(digits);
    Ok(Some(bracket))
}
