//! Arbitrary precision dyadic floats and complex numbers.
//!
//! A value is `man * 2^exp` with a `BigInt` mantissa. Operations take an
//! explicit precision in bits and round the mantissa to that many bits.
//! Comparisons are exact (no rounding), so sign decisions made through
//! [`MpF::cmp_exact`] are reliable regardless of the working precision.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Convert a decimal digit count to a binary precision with guard bits.
pub fn digits_to_bits(digits: u32) -> u32 {
    // 10^d < 2^(3.33 d); keep a margin of 32 guard bits.
    (digits as f64 * 3.3219280948873626).ceil() as u32 + 32
}

#[derive(Clone, Debug)]
pub struct MpF {
    man: BigInt,
    exp: i64,
}

impl MpF {
    pub fn zero() -> Self {
        MpF { man: BigInt::zero(), exp: 0 }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        MpF { man: n, exp: 0 }.strip()
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            return Self::zero();
        }
        assert!(x.is_finite(), "cannot convert non-finite f64");
        let (m, e, s) = num_traits::Float::integer_decode(x);
        let man = BigInt::from(m) * BigInt::from(s as i64);
        MpF { man, exp: e as i64 }.strip()
    }

    /// Round a rational to `prec` bits.
    pub fn from_ratio(r: &BigRational, prec: u32) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self::div_bigint(r.numer().clone(), r.denom().clone(), prec)
    }

    fn div_bigint(num: BigInt, den: BigInt, prec: u32) -> Self {
        assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let nb = num.bits() as i64;
        let db = den.bits() as i64;
        let shift = prec as i64 + 2 + (db - nb).max(0);
        let q = (num << shift) / den;
        MpF { man: q, exp: -shift }.round(prec)
    }

    fn strip(mut self) -> Self {
        if self.man.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = self.man.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.man >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    /// Round to `prec` bits of mantissa (round half away from zero).
    pub fn round(mut self, prec: u32) -> Self {
        if self.man.is_zero() {
            return Self::zero();
        }
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return self.strip();
        }
        let k = bits - prec as u64;
        let neg = self.man.is_negative();
        let mut mag = self.man.abs();
        mag += BigInt::from(1u8) << (k - 1);
        mag >>= k;
        self.man = if neg { -mag } else { mag };
        self.exp += k as i64;
        self.strip()
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.man.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn neg(&self) -> Self {
        MpF { man: -self.man.clone(), exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        MpF { man: self.man.abs(), exp: self.exp }
    }

    /// Multiply by 2^k.
    pub fn shl(&self, k: i64) -> Self {
        if self.man.is_zero() {
            return Self::zero();
        }
        MpF { man: self.man.clone(), exp: self.exp + k }
    }

    /// Exponent of the leading bit: value has magnitude in [2^(e-1), 2^e).
    pub fn mag_exp(&self) -> i64 {
        assert!(!self.man.is_zero());
        self.man.bits() as i64 + self.exp
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        if self.man.is_zero() {
            return other.clone().round(prec);
        }
        if other.man.is_zero() {
            return self.clone().round(prec);
        }
        let (hi, lo) = if self.exp >= other.exp { (self, other) } else { (other, self) };
        let diff = hi.exp - lo.exp;
        // Beyond this gap the low part cannot affect the rounded result
        // by more than one ulp at the target precision.
        let cap = prec as i64 + 64 + lo.man.bits() as i64 + hi.man.bits() as i64;
        if diff > cap {
            return hi.clone().round(prec);
        }
        let man = (hi.man.clone() << diff) + &lo.man;
        MpF { man, exp: lo.exp }.round(prec)
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        if self.man.is_zero() || other.man.is_zero() {
            return Self::zero();
        }
        MpF { man: &self.man * &other.man, exp: self.exp + other.exp }.round(prec)
    }

    pub fn mul_i64(&self, k: i64, prec: u32) -> Self {
        MpF { man: &self.man * BigInt::from(k), exp: self.exp }.round(prec)
    }

    pub fn div(&self, other: &Self, prec: u32) -> Self {
        assert!(!other.man.is_zero(), "division by zero");
        if self.man.is_zero() {
            return Self::zero();
        }
        let r = Self::div_bigint(self.man.clone(), other.man.clone(), prec);
        MpF { man: r.man, exp: r.exp + self.exp - other.exp }
    }

    /// Nonnegative square root rounded to `prec` bits.
    pub fn sqrt(&self, prec: u32) -> Self {
        assert!(!self.man.is_negative(), "sqrt of negative value");
        if self.man.is_zero() {
            return Self::zero();
        }
        let bits = self.man.bits() as i64;
        let want = 2 * (prec as i64 + 2);
        let mut k = (want - bits).max(0);
        if (self.exp - k) % 2 != 0 {
            k += 1;
        }
        let m = self.man.clone() << k;
        let e = self.exp - k;
        let r = m.sqrt();
        MpF { man: r, exp: e / 2 }.round(prec)
    }

    /// Exact comparison, no rounding.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        let ss = self.signum();
        let os = other.signum();
        if ss != os {
            return ss.cmp(&os);
        }
        if ss == 0 {
            return Ordering::Equal;
        }
        let me = self.mag_exp();
        let oe = other.mag_exp();
        if me != oe {
            let mag = me.cmp(&oe);
            return if ss > 0 { mag } else { mag.reverse() };
        }
        // Same leading-bit position: align and compare exactly.
        let diff = self.exp - other.exp;
        if diff >= 0 {
            (self.man.clone() << diff).cmp(&other.man)
        } else {
            self.man.cmp(&(other.man.clone() << (-diff)))
        }
    }

    pub fn lt(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Less
    }

    pub fn to_f64(&self) -> f64 {
        if self.man.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits();
        if bits <= 64 {
            return self.man.to_f64().unwrap() * 2f64.powi(self.exp as i32);
        }
        let shift = bits - 56;
        let top = (self.man.clone() >> shift).to_f64().unwrap();
        top * 2f64.powi((self.exp + shift as i64) as i32)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(self.man.clone() << self.exp)
        } else {
            BigRational::new(self.man.clone(), BigInt::from(1u8) << (-self.exp))
        }
    }

    /// Decimal rendering with `digits` significant digits, scientific form.
    pub fn to_decimal(&self, digits: u32) -> String {
        if self.man.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1) as i64;
        let neg = self.man.is_negative();
        // |v| in [2^(e-1), 2^e) gives log10 |v| in [(e-1)*c, e*c], c = log10 2.
        let e = self.mag_exp();
        let mut e10 = (e as f64 * 0.30102999566398114).floor() as i64;
        loop {
            let s = digits - 1 - e10;
            let mag = self.man.abs();
            let scaled: BigInt = if s >= 0 {
                let num = mag * BigInt::from(10u8).pow(s as u32);
                shift_round(num, -self.exp)
            } else {
                let den = BigInt::from(10u8).pow((-s) as u32);
                let num = mag;
                if self.exp >= 0 {
                    div_round(num << self.exp, den)
                } else {
                    div_round(num, den << (-self.exp))
                }
            };
            let ds = scaled.to_string();
            let nd = ds.len() as i64;
            if nd > digits {
                e10 += nd - digits;
                continue;
            }
            if nd < digits && !scaled.is_zero() {
                e10 -= digits - nd;
                continue;
            }
            let mut out = String::new();
            if neg {
                out.push('-');
            }
            out.push_str(&ds[..1]);
            if ds.len() > 1 {
                out.push('.');
                out.push_str(&ds[1..]);
            }
            out.push('e');
            out.push_str(&e10.to_string());
            return out;
        }
    }
}

fn shift_round(num: BigInt, k: i64) -> BigInt {
    if k <= 0 {
        return num << (-k);
    }
    let half = BigInt::from(1u8) << (k - 1);
    (num + half) >> k
}

fn div_round(num: BigInt, den: BigInt) -> BigInt {
    (num * 2 + &den) / (den * 2)
}

#[derive(Clone, Debug)]
pub struct MpC {
    pub re: MpF,
    pub im: MpF,
}

impl MpC {
    pub fn new(re: MpF, im: MpF) -> Self {
        MpC { re, im }
    }

    pub fn zero() -> Self {
        MpC { re: MpF::zero(), im: MpF::zero() }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        MpC { re: MpF::from_f64(re), im: MpF::from_f64(im) }
    }

    pub fn real(re: MpF) -> Self {
        MpC { re, im: MpF::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        MpC { re: self.re.add(&o.re, prec), im: self.im.add(&o.im, prec) }
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        MpC { re: self.re.sub(&o.re, prec), im: self.im.sub(&o.im, prec) }
    }

    pub fn neg(&self) -> Self {
        MpC { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> Self {
        MpC { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        let re = self.re.mul(&o.re, prec).sub(&self.im.mul(&o.im, prec), prec);
        let im = self.re.mul(&o.im, prec).add(&self.im.mul(&o.re, prec), prec);
        MpC { re, im }
    }

    pub fn norm_sqr(&self, prec: u32) -> MpF {
        self.re.mul(&self.re, prec).add(&self.im.mul(&self.im, prec), prec)
    }

    pub fn abs(&self, prec: u32) -> MpF {
        self.norm_sqr(prec + 2).sqrt(prec)
    }

    pub fn div(&self, o: &Self, prec: u32) -> Self {
        let n2 = o.norm_sqr(prec + 8);
        assert!(!n2.is_zero(), "complex division by zero");
        let num = self.mul(&o.conj(), prec + 8);
        MpC { re: num.re.div(&n2, prec), im: num.im.div(&n2, prec) }
    }

    pub fn scale(&self, s: &MpF, prec: u32) -> Self {
        MpC { re: self.re.mul(s, prec), im: self.im.mul(s, prec) }
    }

    /// Principal square root.
    pub fn sqrt(&self, prec: u32) -> Self {
        let wp = prec + 8;
        if self.im.is_zero() {
            if self.re.signum() >= 0 {
                return MpC::real(self.re.sqrt(prec));
            }
            return MpC { re: MpF::zero(), im: self.re.neg().sqrt(prec) };
        }
        let r = self.abs(wp);
        let half = MpF::from_i64(1).shl(-1);
        let u = r.add(&self.re, wp).mul(&half, wp).sqrt(prec);
        let v = r.sub(&self.re, wp).mul(&half, wp).sqrt(prec);
        let v = if self.im.signum() < 0 { v.neg() } else { v };
        MpC { re: u, im: v }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn mpf_str(s: &str, prec: u32) -> MpF {
        // parse "p/q" as a rational
        let parts: Vec<&str> = s.split('/').collect();
        let num: BigInt = parts[0].parse().unwrap();
        let den: BigInt = if parts.len() > 1 { parts[1].parse().unwrap() } else { BigInt::from(1) };
        MpF::from_ratio(&BigRational::new(num, den), prec)
    }

    #[test]
    fn arithmetic_round_trip() {
        let p = 200;
        let a = mpf_str("355/113", p);
        let b = mpf_str("-7/3", p);
        let s = a.add(&b, p);
        let back = s.sub(&b, p);
        let diff = back.sub(&a, p);
        assert!(diff.is_zero() || diff.mag_exp() < a.mag_exp() - 190);
    }

    #[test]
    fn sqrt_two_squared() {
        let p = 400;
        let two = MpF::from_i64(2);
        let r = two.sqrt(p);
        let sq = r.mul(&r, p);
        let err = sq.sub(&two, p).abs();
        assert!(err.is_zero() || err.mag_exp() < -390);
    }

    #[test]
    fn sqrt_known_digits() {
        // sqrt(2) = 1.41421356237309504880168872420969807856967187537694...
        let p = digits_to_bits(50);
        let r = MpF::from_i64(2).sqrt(p);
        let s = r.to_decimal(45);
        assert!(s.starts_with("1.41421356237309504880168872420969807856967"));
    }

    #[test]
    fn exact_comparison_close_values() {
        let a = MpF { man: BigInt::from(3), exp: -1 }; // 1.5
        let b = MpF { man: BigInt::from(3 << 20) + 1, exp: -21 };
        assert_eq!(a.cmp_exact(&b), Ordering::Less);
        assert_eq!(b.cmp_exact(&a), Ordering::Greater);
        assert_eq!(a.cmp_exact(&a.clone()), Ordering::Equal);
    }

    #[test]
    fn division_accuracy() {
        let p = 300;
        let a = MpF::from_i64(1);
        let b = MpF::from_i64(7);
        let q = a.div(&b, p);
        let prod = q.mul(&b, p);
        let err = prod.sub(&a, p).abs();
        assert!(err.is_zero() || err.mag_exp() < -290);
    }

    #[test]
    fn decimal_rendering() {
        let p = 200;
        let x = mpf_str("1/8", p);
        assert!(x.to_decimal(3).starts_with("1.25e-1"));
        let y = MpF::from_i64(-1000);
        assert!(y.to_decimal(4).starts_with("-1.000e3"));
        assert_eq!(MpF::zero().to_decimal(5), "0");
    }

    #[test]
    fn complex_sqrt_squares_back() {
        let p = 250;
        let z = MpC::from_f64(-3.25, 4.75);
        let r = z.sqrt(p);
        let sq = r.mul(&r, p);
        let err = sq.sub(&z, p);
        let mag = err.norm_sqr(p);
        assert!(mag.is_zero() || mag.mag_exp() < -400);
    }

    #[test]
    fn complex_division() {
        let p = 200;
        let a = MpC::from_f64(1.0, 2.0);
        let b = MpC::from_f64(-0.5, 3.0);
        let q = a.div(&b, p);
        let back = q.mul(&b, p);
        let err = back.sub(&a, p).norm_sqr(p);
        assert!(err.is_zero() || err.mag_exp() < -350);
    }
}
