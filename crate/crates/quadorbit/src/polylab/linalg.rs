//! Exact linear algebra over the integers and rationals: fraction-free
//! determinants, characteristic polynomials by interpolation, and dense
//! rational solves.

use super::intpoly::{interpolate, IntPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Determinant by Bareiss fraction-free elimination. Consumes the matrix.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let mut found = false;
            for i in k + 1..n {
                if !m[i][k].is_zero() {
                    m.swap(i, k);
                    sign = -sign;
                    found = true;
                    break;
                }
            }
            if !found {
                return BigInt::zero();
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Characteristic polynomial det(tI - M) of an integer matrix, exact.
/// Evaluates the determinant at n+1 integer points and interpolates.
pub fn charpoly_int(m: &[Vec<i64>]) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mut xs = Vec::with_capacity(n + 1);
    let mut ys = Vec::with_capacity(n + 1);
    for k in 0..=n as i64 {
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(-m[i][j])).collect())
            .collect();
        for i in 0..n {
            a[i][i] += BigInt::from(k);
        }
        xs.push(BigRational::from_integer(BigInt::from(k)));
        ys.push(BigRational::from_integer(bareiss_det(a)));
    }
    interpolate(&xs, &ys)
        .to_int_exact()
        .expect("characteristic polynomial has integer coefficients")
}

pub fn identity_i64(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = 1;
    }
    m
}

pub fn mat_mul_big(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let p = b[0].len();
    let mut c = vec![vec![BigInt::zero(); p]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..p {
                let add = aik * &b[k][j];
                c[i][j] += add;
            }
        }
    }
    c
}

pub fn mat_from_i64(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn is_identity_big(m: &[Vec<BigInt>]) -> bool {
    let n = m.len();
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { BigInt::one() } else { BigInt::zero() };
            if m[i][j] != want {
                return false;
            }
        }
    }
    true
}

pub fn is_zero_big(m: &[Vec<BigInt>]) -> bool {
    m.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

/// M^k by repeated squaring, exact.
pub fn mat_pow_big(m: &[Vec<BigInt>], mut k: u64) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let mut result: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut base = m.to_vec();
    while k > 0 {
        if k & 1 == 1 {
            result = mat_mul_big(&result, &base);
        }
        k >>= 1;
        if k > 0 {
            base = mat_mul_big(&base, &base);
        }
    }
    result
}

/// Solve A x = b over the rationals. None when A is singular.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for k in 0..n {
        let piv = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, piv);
        let inv = m[k][k].clone().recip();
        for j in k..=n {
            let v = &m[k][j] * &inv;
            m[k][j] = v;
        }
        for i in 0..n {
            if i == k || m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k].clone();
            for j in k..=n {
                let delta = &f * &m[k][j];
                m[i][j] -= delta;
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}
