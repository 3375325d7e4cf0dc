//! Dense integer and rational polynomials in one variable.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros.

use crate::mpfloat::{MpC, MpF};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly{:?}", self.coeffs)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                if i == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial c * t^k.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// t^k + 0.
    pub fn power(k: usize) -> Self {
        Self::monomial(BigInt::one(), k)
    }

    pub fn t() -> Self {
        Self::power(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + other.coeff(i));
        }
        Self::new(v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) - other.coeff(i));
        }
        Self::new(v)
    }

    pub fn neg(&self) -> Self {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn mul_scalar(&self, s: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiply by t^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: v }
    }

    /// Coefficient reversal: t^deg * p(1/t).
    pub fn reverse(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }

    /// p(-t).
    pub fn compose_neg(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        Self::new(v)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        Self::new(v)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Exact sign of p(x) for rational x, avoiding rational arithmetic:
    /// sign(p(n/d)) = sign(sum coeff_i n^i d^(deg-i)) for d > 0.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let n = x.numer();
        let d = x.denom(); // always positive in num-rational
        let deg = self.coeffs.len() - 1;
        let mut npow = BigInt::one();
        let mut acc = BigInt::zero();
        let mut dpows = Vec::with_capacity(deg + 1);
        let mut dp = BigInt::one();
        for _ in 0..=deg {
            dpows.push(dp.clone());
            dp *= d;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * &npow * &dpows[deg - i];
            }
            npow *= n;
        }
        sign_of(&acc)
    }

    pub fn eval_mpf(&self, x: &MpF, prec: u32) -> MpF {
        let mut acc = MpF::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x, prec).add(&MpF::from_bigint(c.clone()), prec);
        }
        acc
    }

    pub fn eval_mpc(&self, x: &MpC, prec: u32) -> MpC {
        let mut acc = MpC::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x, prec).add(&MpC::real(MpF::from_bigint(c.clone())), prec);
        }
        acc
    }

    /// Positive gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Divide by content and normalize the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        let mut v: Vec<BigInt> = self.coeffs.iter().map(|a| a / &c).collect();
        if v.last().unwrap().is_negative() {
            for a in v.iter_mut() {
                *a = -(a.clone());
            }
        }
        IntPoly { coeffs: v }
    }

    /// Exact division; None when the division has a remainder or is not
    /// integral.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (q, r) = RatPoly::from_int(self).divrem(&RatPoly::from_int(other));
        if !r.is_zero() {
            return None;
        }
        q.to_int_exact()
    }

    /// Pseudo-remainder: lc(b)^(da-db+1) * a mod b, exact over the integers.
    pub fn pseudo_rem(&self, other: &Self) -> Self {
        let da = match self.deg() {
            None => return Self::zero(),
            Some(d) => d,
        };
        let db = other.deg().expect("pseudo_rem by zero");
        if da < db {
            return self.clone();
        }
        let lcb = other.lc();
        let mut rem = self.coeffs.clone();
        for k in (0..=da - db).rev() {
            let lead = rem[k + db].clone();
            for c in rem.iter_mut() {
                *c *= &lcb;
            }
            if !lead.is_zero() {
                for j in 0..=db {
                    let delta = &lead * &other.coeffs[j];
                    rem[k + j] -= delta;
                }
            }
            debug_assert!(rem[k + db].is_zero());
        }
        rem.truncate(db);
        Self::new(rem)
    }

    /// Primitive gcd with positive leading coefficient, computed with a
    /// primitive pseudo-remainder sequence to keep coefficients bounded.
    pub fn gcd_poly(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.deg() == Some(0) {
                return Self::one();
            }
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// p divided by gcd(p, p'): same roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.deg().unwrap_or(0) == 0 {
            return self.primitive();
        }
        let g = self.gcd_poly(&self.derivative());
        if g.deg() == Some(0) {
            return self.primitive();
        }
        self.div_exact(&g)
            .expect("gcd must divide")
            .primitive()
    }

    /// Squarefree decomposition: list of (factor, multiplicity) with the
    /// factors pairwise coprime, primitive, and squarefree. Content dropped.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, u32)> {
        // Yun's algorithm over Q, results made primitive.
        let mut out = Vec::new();
        let f = self.primitive();
        if f.deg().unwrap_or(0) == 0 {
            return out;
        }
        let df = f.derivative();
        let mut a = f.gcd_poly(&df);
        let mut b = f.div_exact(&a).unwrap();
        let mut c = df.div_exact(&a).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut mult = 1u32;
        loop {
            if b.deg() == Some(0) {
                break;
            }
            a = b.gcd_poly(&d);
            if a.deg().map_or(false, |dg| dg > 0) {
                out.push((a.primitive(), mult));
            }
            b = b.div_exact(&a).unwrap();
            c = d.div_exact(&a).unwrap();
            d = c.sub(&b.derivative());
            mult += 1;
        }
        out
    }

    pub fn is_palindromic(&self) -> bool {
        !self.is_zero() && self.reverse() == *self
    }

    pub fn is_antipalindromic(&self) -> bool {
        !self.is_zero() && self.reverse() == self.neg()
    }

    /// Power-of-two rational B with all real roots in (-B, B).
    pub fn cauchy_bound(&self) -> BigRational {
        assert!(!self.is_zero());
        let lc = self.lc().abs();
        let mut maxc = BigInt::zero();
        for c in &self.coeffs {
            let a = c.abs();
            if a > maxc {
                maxc = a;
            }
        }
        // 1 + max|c|/|lc| <= 2^k
        let mut bound = BigInt::from(2u8);
        while &bound * &lc < &lc + &maxc {
            bound <<= 1;
        }
        BigRational::from_integer(bound)
    }

    pub fn to_string_coeffs(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_string_coeffs(v: &[String]) -> Option<Self> {
        let mut coeffs = Vec::with_capacity(v.len());
        for s in v {
            coeffs.push(s.parse().ok()?);
        }
        Some(Self::new(coeffs))
    }
}

pub fn sign_of(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

/// Dense polynomial over the rationals; used for remainder sequences,
/// interpolation, and fraction-field manipulations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RatPoly::new(vec![BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        RatPoly::new(vec![c])
    }

    pub fn from_int(p: &IntPoly) -> Self {
        RatPoly::new(
            p.coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn lc(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        RatPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        RatPoly { coeffs: v }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.lc();
        self.scale(&lc.recip())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_mpf(&self, x: &MpF, prec: u32) -> MpF {
        let mut acc = MpF::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x, prec).add(&MpF::from_ratio(c, prec), prec);
        }
        acc
    }

    pub fn divrem(&self, other: &Self) -> (Self, Self) {
        assert!(!other.is_zero(), "polynomial division by zero");
        let dd = match self.deg() {
            None => return (Self::zero(), Self::zero()),
            Some(d) => d,
        };
        let dv = other.deg().unwrap();
        if dd < dv {
            return (Self::zero(), self.clone());
        }
        let lcr = other.lc().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); dd - dv + 1];
        for k in (0..=dd - dv).rev() {
            let q = &rem[k + dv] * &lcr;
            if !q.is_zero() {
                for j in 0..=dv {
                    let delta = &q * &other.coeffs[j];
                    rem[k + j] -= delta;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dv);
        (Self::new(quot), Self::new(rem))
    }

    pub fn gcd_monic(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        if a.is_zero() {
            return b.monic();
        }
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiply through by the lcm of denominators.
    pub fn clear_denominators(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.numer() * (&l / c.denom()))
                .collect(),
        )
    }

    /// Exact conversion; None when some denominator is not 1.
    pub fn to_int_exact(&self) -> Option<IntPoly> {
        let mut v = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.denom().is_one() {
                return None;
            }
            v.push(c.numer().clone());
        }
        Some(IntPoly::new(v))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c < &BigRational::zero() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < &BigRational::zero() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                if i == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

/// Newton divided-difference interpolation through (x_i, y_i).
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> RatPoly {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut coef: Vec<BigRational> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = &xs[i] - &xs[i - j];
            coef[i] = num / den;
        }
    }
    // Horner expansion of the Newton form.
    let mut p = RatPoly::zero();
    for i in (0..n).rev() {
        let lin = RatPoly::new(vec![-&xs[i], BigRational::one()]);
        p = p.mul(&lin).add(&RatPoly::constant(coef[i].clone()));
    }
    p
}
