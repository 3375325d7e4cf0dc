//! Power sums of polynomial roots via Newton's identities, exact over the
//! integers. Only monic-up-to-sign inputs are accepted.

use super::intpoly::IntPoly;
use crate::Error;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// P_0..P_m where P_n is the sum of n-th powers of the roots of p
/// (with multiplicity). Requires |leading coefficient| = 1.
pub fn power_sums(p: &IntPoly, m: usize) -> Result<Vec<BigInt>, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPoly("power_sums"));
    }
    if !p.lc().abs().is_one() {
        return Err(Error::NotMonic);
    }
    // Negating a polynomial does not change its roots.
    let q = if p.lc().is_negative() { p.neg() } else { p.clone() };
    let d = q.deg().unwrap();
    let a = |j: i64| -> BigInt {
        if j < 0 {
            BigInt::zero()
        } else {
            q.coeff(j as usize)
        }
    };
    let mut ps: Vec<BigInt> = Vec::with_capacity(m + 1);
    ps.push(BigInt::from(d));
    for k in 1..=m {
        let mut s = BigInt::zero();
        for i in 1..k.min(d + 1) {
            s += a(d as i64 - i as i64) * &ps[k - i];
        }
        if k <= d {
            s += BigInt::from(k) * a(d as i64 - k as i64);
        }
        ps.push(-s);
    }
    Ok(ps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn quadratic_with_roots_two_and_three() {
        let f = p(&[6, -5, 1]);
        let ps = power_sums(&f, 4).unwrap();
        let want: Vec<BigInt> = [2, 5, 13, 35, 97].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(ps, want);
    }

    #[test]
    fn roots_of_unity_power_sums() {
        // t^4 - 1: power sums are 4,0,0,0,4,0,...
        let f = p(&[-1, 0, 0, 0, 1]);
        let ps = power_sums(&f, 8).unwrap();
        for (n, v) in ps.iter().enumerate() {
            let want = if n % 4 == 0 { 4 } else { 0 };
            assert_eq!(*v, BigInt::from(want), "n = {}", n);
        }
    }

    #[test]
    fn negated_leading_coefficient_allowed() {
        let f = p(&[6, -5, 1]).neg();
        assert_eq!(power_sums(&f, 2).unwrap(), power_sums(&f.neg(), 2).unwrap());
    }

    #[test]
    fn non_monic_rejected() {
        let f = p(&[1, 0, 2]);
        assert!(matches!(power_sums(&f, 3), Err(Error::NotMonic)));
    }

    #[test]
    fn repeated_roots_weighted() {
        // (t-1)^2 (t+2): P_1 = 0, P_2 = 6, P_3 = -6
        let f = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 1]));
        let ps = power_sums(&f, 3).unwrap();
        assert_eq!(ps[1], BigInt::zero());
        assert_eq!(ps[2], BigInt::from(6));
        assert_eq!(ps[3], BigInt::from(-6));
    }
}
