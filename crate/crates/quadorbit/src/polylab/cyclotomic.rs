//! Cyclotomic polynomials and peeling of cyclotomic factors.

use super::intpoly::IntPoly;
use crate::Error;
use std::collections::HashMap;

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    let mut v = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            v.push(d);
            if d != n / d {
                v.push(n / d);
            }
        }
        d += 1;
    }
    v.sort_unstable();
    v
}

/// The k-th cyclotomic polynomial, computed by exact division of t^k - 1
/// by the cyclotomic polynomials of the proper divisors of k.
pub fn cyclotomic_poly(k: u64, memo: &mut HashMap<u64, IntPoly>) -> IntPoly {
    if let Some(p) = memo.get(&k) {
        return p.clone();
    }
    let mut f = IntPoly::power(k as usize).sub(&IntPoly::one());
    for d in divisors(k) {
        if d == k {
            continue;
        }
        let phi_d = cyclotomic_poly(d, memo);
        f = f.div_exact(&phi_d).expect("cyclotomic division is exact");
    }
    memo.insert(k, f.clone());
    f
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicSplit {
    /// (k, multiplicity) for each cyclotomic factor present, ascending in k.
    pub factors: Vec<(u64, u32)>,
    /// What remains after all cyclotomic factors are divided out; carries
    /// the content and sign of the input.
    pub residual: IntPoly,
}

impl CyclotomicSplit {
    /// Multiply the split back together.
    pub fn reassemble(&self) -> IntPoly {
        let mut memo = HashMap::new();
        let mut p = self.residual.clone();
        for &(k, m) in &self.factors {
            let phi = cyclotomic_poly(k, &mut memo);
            for _ in 0..m {
                p = p.mul(&phi);
            }
        }
        p
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Degree of the non-cyclotomic residual.
    pub fn residual_deg(&self) -> usize {
        self.residual.deg().unwrap_or(0)
    }
}

/// Peel off every cyclotomic factor of p with multiplicity. Candidate
/// indices k satisfy phi(k) <= deg p and are scanned up to 3 deg^2 + 1.
pub fn cyclotomic_split(p: &IntPoly) -> Result<CyclotomicSplit, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPoly("cyclotomic_split"));
    }
    let deg = p.deg().unwrap() as u64;
    let mut residual = p.clone();
    let mut factors = Vec::new();
    let mut memo = HashMap::new();
    let bound = 3 * deg * deg + 1;
    for k in 1..=bound {
        let d = residual.deg().unwrap_or(0) as u64;
        if d == 0 {
            break;
        }
        if euler_phi(k) > d {
            continue;
        }
        let phi = cyclotomic_poly(k, &mut memo);
        let mut mult = 0u32;
        while let Some(q) = residual.div_exact(&phi) {
            residual = q;
            mult += 1;
        }
        if mult > 0 {
            factors.push((k, mult));
        }
    }
    Ok(CyclotomicSplit { factors, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn first_cyclotomic_polynomials() {
        let mut memo = HashMap::new();
        assert_eq!(cyclotomic_poly(1, &mut memo), p(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2, &mut memo), p(&[1, 1]));
        assert_eq!(cyclotomic_poly(3, &mut memo), p(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(4, &mut memo), p(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6, &mut memo), p(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12, &mut memo), p(&[1, 0, -1, 0, 1]));
        // first index with a coefficient of magnitude 2
        assert_eq!(cyclotomic_poly(105, &mut memo).coeff(7), BigInt::from(-2));
    }

    #[test]
    fn split_product_with_multiplicity() {
        let mut memo = HashMap::new();
        let phi1 = cyclotomic_poly(1, &mut memo);
        let phi4 = cyclotomic_poly(4, &mut memo);
        let res = p(&[-2, 0, 0, 1]); // t^3 - 2, no cyclotomic factor
        let f = phi1.mul(&phi1).mul(&phi4).mul(&res);
        let split = cyclotomic_split(&f).unwrap();
        assert_eq!(split.factors, vec![(1, 2), (4, 1)]);
        assert_eq!(split.residual, res);
        assert_eq!(split.reassemble(), f);
    }

    #[test]
    fn split_of_pure_power_minus_one() {
        let f = IntPoly::power(6).sub(&IntPoly::one());
        let split = cyclotomic_split(&f).unwrap();
        assert_eq!(split.factors, vec![(1, 1), (2, 1), (3, 1), (6, 1)]);
        assert_eq!(split.residual, IntPoly::one());
    }

    #[test]
    fn residual_keeps_content_and_sign() {
        let f = p(&[2, 2]).neg(); // -2 (t + 1)
        let split = cyclotomic_split(&f).unwrap();
        assert_eq!(split.factors, vec![(2, 1)]);
        assert_eq!(split.residual, IntPoly::constant(BigInt::from(-2)));
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(97), 96);
        assert_eq!(euler_phi(360), 96);
    }
}
