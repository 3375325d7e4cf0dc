//! Simultaneous root finding (Ehrlich-Aberth) with a posteriori
//! certification by disjoint Weierstrass disks.

use super::intpoly::IntPoly;
use crate::mpfloat::{digits_to_bits, MpC, MpF};
use crate::Error;
use num_traits::Zero;
use std::cmp::Ordering;

#[derive(Clone, Debug)]
pub struct CertifiedRoot {
    pub value: MpC,
    /// Radius of a disk around `value` certified to contain exactly one
    /// root of the squarefree part.
    pub radius: MpF,
    pub multiplicity: u32,
}

impl CertifiedRoot {
    pub fn to_f64(&self) -> (f64, f64) {
        self.value.to_f64()
    }

    pub fn abs_f64(&self) -> f64 {
        let (re, im) = self.value.to_f64();
        re.hypot(im)
    }
}

fn horner_pair(coeffs: &[MpC], z: &MpC, prec: u32) -> (MpC, MpC) {
    let mut p = MpC::zero();
    let mut dp = MpC::zero();
    for c in coeffs.iter().rev() {
        dp = dp.mul(z, prec).add(&p, prec);
        p = p.mul(z, prec).add(c, prec);
    }
    (p, dp)
}

/// Ehrlich-Aberth iteration on arbitrary complex coefficients (ascending
/// degree). Returns approximations to all roots; no certification.
pub fn aberth_iterate(coeffs: &[MpC], digits: u32) -> Result<Vec<MpC>, Error> {
    let d = coeffs.len() - 1;
    if d == 0 {
        return Ok(vec![]);
    }
    let prec = digits_to_bits(digits) + 64;
    // Root bound from coefficient magnitudes (f64 estimate is enough for
    // the starting circle).
    let lc_mag = {
        let (re, im) = coeffs[d].to_f64();
        re.hypot(im)
    };
    if lc_mag == 0.0 {
        return Err(Error::Msg("leading coefficient is zero".into()));
    }
    let mut bound: f64 = 0.0;
    for c in &coeffs[..d] {
        let (re, im) = c.to_f64();
        bound = bound.max(re.hypot(im) / lc_mag);
    }
    let radius = 1.0 + bound;
    let mut zs: Vec<MpC> = (0..d)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64) / (d as f64) + 0.3721;
            MpC::from_f64(radius * ang.cos(), radius * ang.sin())
        })
        .collect();
    let tol_exp = -(digits_to_bits(digits) as i64) - 16;
    for _iter in 0..400 {
        let mut done = true;
        for i in 0..d {
            let (p, dp) = horner_pair(coeffs, &zs[i], prec);
            if p.is_zero() {
                continue;
            }
            let newton = if dp.is_zero() {
                // Flat spot: nudge.
                MpC::from_f64(1e-3, 1e-3)
            } else {
                p.div(&dp, prec)
            };
            let mut s = MpC::zero();
            for j in 0..d {
                if j == i {
                    continue;
                }
                let diff = zs[i].sub(&zs[j], prec);
                if diff.is_zero() {
                    continue;
                }
                let one = MpC::real(MpF::from_i64(1));
                s = s.add(&one.div(&diff, prec), prec);
            }
            let one = MpC::real(MpF::from_i64(1));
            let den = one.sub(&newton.mul(&s, prec), prec);
            let step = if den.is_zero() { newton.clone() } else { newton.div(&den, prec) };
            zs[i] = zs[i].sub(&step, prec);
            if !step.is_zero() {
                let znorm = zs[i].norm_sqr(prec);
                let scale = if znorm.is_zero() { 0 } else { znorm.mag_exp().max(0) };
                if step.norm_sqr(prec).mag_exp() > 2 * tol_exp + scale {
                    done = false;
                }
            }
        }
        if done {
            return Ok(zs);
        }
    }
    Err(Error::RootSeparation { prec_bits: prec })
}

/// Weierstrass certification radii: for each approximation, a disk radius
/// such that disjoint disks each contain exactly one root.
pub fn weierstrass_radii(coeffs: &[MpC], zs: &[MpC], prec: u32) -> Vec<MpF> {
    let d = zs.len();
    let lc = &coeffs[coeffs.len() - 1];
    zs.iter()
        .enumerate()
        .map(|(i, z)| {
            let (p, _) = horner_pair(coeffs, z, prec);
            let mut denom = lc.clone();
            for (j, w) in zs.iter().enumerate() {
                if j != i {
                    denom = denom.mul(&z.sub(w, prec), prec);
                }
            }
            if denom.is_zero() {
                return MpF::from_i64(i64::MAX);
            }
            p.div(&denom, prec).abs(prec).mul_i64(d as i64, prec)
        })
        .collect()
}

fn disks_disjoint(zs: &[MpC], radii: &[MpF], prec: u32) -> bool {
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            let dist = zs[i].sub(&zs[j], prec).abs(prec);
            let rsum = radii[i].add(&radii[j], prec);
            if dist.cmp_exact(&rsum) != Ordering::Greater {
                return false;
            }
        }
    }
    true
}

/// All complex roots of an integer polynomial with multiplicities and
/// certified disjoint error disks. Zero roots are exact. Precision is
/// raised up to 16x the request before giving up.
pub fn all_complex_roots(p: &IntPoly, digits: u32) -> Result<Vec<CertifiedRoot>, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPoly("all_complex_roots"));
    }
    if p.deg() == Some(0) {
        return Ok(vec![]);
    }
    // Deflate exact zero roots.
    let mut coeffs = p.coeffs().to_vec();
    let mut zero_mult = 0u32;
    while coeffs.first().map_or(false, |c| c.is_zero()) {
        coeffs.remove(0);
        zero_mult += 1;
    }
    let q = IntPoly::new(coeffs);
    let mut out = Vec::new();
    if zero_mult > 0 {
        out.push(CertifiedRoot {
            value: MpC::zero(),
            radius: MpF::zero(),
            multiplicity: zero_mult,
        });
    }
    let mut attempt_digits = digits.max(10);
    let cap = digits.max(10) * 16;
    loop {
        let mut roots = out.clone();
        let mut ok = true;
        for (factor, mult) in q.squarefree_decomposition() {
            let prec = digits_to_bits(attempt_digits) + 64;
            let cf: Vec<MpC> = factor
                .coeffs()
                .iter()
                .map(|c| MpC::real(MpF::from_bigint(c.clone())))
                .collect();
            let zs = match aberth_iterate(&cf, attempt_digits) {
                Ok(z) => z,
                Err(_) => {
                    ok = false;
                    break;
                }
            };
            let radii = weierstrass_radii(&cf, &zs, prec);
            if !disks_disjoint(&zs, &radii, prec) {
                ok = false;
                break;
            }
            // Radii must also meet the requested precision.
            let tol = MpF::from_ratio(
                &num_rational::BigRational::new(
                    num_bigint::BigInt::from(1),
                    num_traits::pow(num_bigint::BigInt::from(10), digits as usize),
                ),
                prec,
            );
            if radii.iter().any(|r| r.cmp_exact(&tol) == Ordering::Greater) {
                ok = false;
                break;
            }
            for (z, r) in zs.into_iter().zip(radii) {
                roots.push(CertifiedRoot { value: z, radius: r, multiplicity: mult });
            }
        }
        if ok {
            // Cross-factor and zero-root disks must be pairwise disjoint too.
            let prec = digits_to_bits(attempt_digits) + 64;
            let zs: Vec<MpC> = roots.iter().map(|r| r.value.clone()).collect();
            let radii: Vec<MpF> = roots.iter().map(|r| r.radius.clone()).collect();
            if roots.len() <= 1 || disks_disjoint(&zs, &radii, prec) {
                roots.sort_by(|a, b| {
                    a.value
                        .re
                        .cmp_exact(&b.value.re)
                        .then(a.value.im.cmp_exact(&b.value.im))
                });
                let total: u32 = roots.iter().map(|r| r.multiplicity).sum();
                debug_assert_eq!(total as usize, p.deg().unwrap());
                return Ok(roots);
            }
        }
        if attempt_digits >= cap {
            return Err(Error::RootSeparation { prec_bits: digits_to_bits(attempt_digits) });
        }
        attempt_digits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn quadratic_with_imaginary_roots() {
        let f = p(&[1, 0, 1]);
        let roots = all_complex_roots(&f, 30).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            let (re, im) = r.to_f64();
            assert!(re.abs() < 1e-25);
            assert!((im.abs() - 1.0).abs() < 1e-25);
        }
    }

    #[test]
    fn cubic_real_roots_ordered() {
        let f = p(&[-6, 11, -6, 1]); // (t-1)(t-2)(t-3)
        let roots = all_complex_roots(&f, 25).unwrap();
        let vals: Vec<f64> = roots.iter().map(|r| r.to_f64().0).collect();
        assert!((vals[0] - 1.0).abs() < 1e-20);
        assert!((vals[1] - 2.0).abs() < 1e-20);
        assert!((vals[2] - 3.0).abs() < 1e-20);
    }

    #[test]
    fn multiplicities_and_zero_roots() {
        // t^2 (t-1)^3 (t^2+t+1)
        let f = IntPoly::power(2)
            .mul(&p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[-1, 1])))
            .mul(&p(&[1, 1, 1]));
        let roots = all_complex_roots(&f, 20).unwrap();
        let total: u32 = roots.iter().map(|r| r.multiplicity).sum();
        assert_eq!(total, 7);
        let zero = roots.iter().find(|r| r.value.is_zero()).unwrap();
        assert_eq!(zero.multiplicity, 2);
        let one = roots
            .iter()
            .find(|r| (r.to_f64().0 - 1.0).abs() < 1e-15 && r.to_f64().1.abs() < 1e-15)
            .unwrap();
        assert_eq!(one.multiplicity, 3);
    }

    #[test]
    fn close_roots_get_separated() {
        // (t - 1)(t - 1 - 1/2^20): very close pair, integer-scaled
        let m = 1i64 << 20;
        // (m t - m)(m t - (m+1)) = m^2 t^2 - m(2m+1) t + m(m+1)
        let f = IntPoly::new(vec![
            num_bigint::BigInt::from(m) * (m + 1),
            num_bigint::BigInt::from(-m) * (2 * m + 1),
            num_bigint::BigInt::from(m) * m,
        ]);
        let roots = all_complex_roots(&f, 30).unwrap();
        assert_eq!(roots.len(), 2);
        let d = (roots[1].to_f64().0 - roots[0].to_f64().0).abs();
        assert!((d - 1.0 / m as f64).abs() < 1e-12);
    }

    #[test]
    fn salem_poly_root_moduli() {
        let f = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let roots = all_complex_roots(&f, 25).unwrap();
        assert_eq!(roots.len(), 10);
        let mut big = 0;
        let mut small = 0;
        let mut unit = 0;
        for r in &roots {
            let m = r.abs_f64();
            if m > 1.0 + 1e-9 {
                big += 1;
            } else if m < 1.0 - 1e-9 {
                small += 1;
            } else {
                unit += 1;
            }
        }
        assert_eq!((big, small, unit), (1, 1, 8));
    }
}
