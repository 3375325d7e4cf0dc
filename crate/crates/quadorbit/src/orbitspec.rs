//! Orbit data: three orbit lengths and a permutation of the orbit labels,
//! its canonical form, the associated characteristic polynomial, and the
//! dynamical degree.

use crate::polylab::{
    cyclotomic_split, largest_real_root_above, sturm_count, CyclotomicSplit, IntPoly, RootBracket,
};
use crate::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// A permutation of {1, 2, 3}, stored 0-based: `map[i]` is the image of i.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Permutation3 {
    map: [usize; 3],
}

impl Permutation3 {
    pub fn identity() -> Self {
        Permutation3 { map: [0, 1, 2] }
    }

    pub fn from_map(map: [usize; 3]) -> Result<Self, Error> {
        let mut seen = [false; 3];
        for &m in &map {
            if m > 2 || seen[m] {
                return Err(Error::Msg(format!("invalid permutation map {:?}", map)));
            }
            seen[m] = true;
        }
        Ok(Permutation3 { map })
    }

    /// Image of a 0-based index.
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// self after other: (self * other)(i) = self(other(i)).
    pub fn compose(&self, other: &Self) -> Self {
        Permutation3 { map: [self.map[other.map[0]], self.map[other.map[1]], self.map[other.map[2]]] }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = [0; 3];
        for i in 0..3 {
            inv[self.map[i]] = i;
        }
        Permutation3 { map: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.map == [0, 1, 2]
    }

    /// The canonical representatives: id, the swap of labels 1 and 2, and
    /// the forward 3-cycle 1 -> 2 -> 3 -> 1.
    pub fn is_canonical(&self) -> bool {
        matches!(self.map, [0, 1, 2] | [1, 0, 2] | [1, 2, 0])
    }

    pub fn swap12() -> Self {
        Permutation3 { map: [1, 0, 2] }
    }

    pub fn cycle123() -> Self {
        Permutation3 { map: [1, 2, 0] }
    }

    /// Cycle notation on labels 1..3, e.g. "id", "12", "123".
    pub fn cycle_string(&self) -> String {
        match self.map {
            [0, 1, 2] => "id".into(),
            [1, 0, 2] => "12".into(),
            [0, 2, 1] => "23".into(),
            [2, 1, 0] => "13".into(),
            [1, 2, 0] => "123".into(),
            [2, 0, 1] => "132".into(),
            _ => unreachable!(),
        }
    }
}

impl FromStr for Permutation3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let trimmed: String = s.chars().filter(|c| !"() ".contains(*c)).collect();
        let map = match trimmed.as_str() {
            "id" | "e" | "" => [0, 1, 2],
            "12" | "21" => [1, 0, 2],
            "23" | "32" => [0, 2, 1],
            "13" | "31" => [2, 1, 0],
            "123" | "231" | "312" => [1, 2, 0],
            "132" | "321" | "213" => [2, 0, 1],
            other => return Err(Error::Msg(format!("unrecognized permutation '{}'", other))),
        };
        Ok(Permutation3 { map })
    }
}

impl fmt::Display for Permutation3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

/// Orbit data: lengths (n1, n2, n3) with a permutation sending the end of
/// orbit i to the start of orbit sigma(i).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct OrbitData {
    pub n: [u32; 3],
    pub sigma: Permutation3,
}

impl OrbitData {
    pub fn new(n: [u32; 3], sigma: Permutation3) -> Result<Self, Error> {
        if n.iter().any(|&x| x == 0) {
            return Err(Error::Msg("orbit lengths must be positive".into()));
        }
        Ok(OrbitData { n, sigma })
    }

    /// Total number of orbit points.
    pub fn total(&self) -> u32 {
        self.n.iter().sum()
    }

    pub fn is_canonical(&self) -> bool {
        if !self.sigma.is_canonical() {
            return false;
        }
        match self.sigma.map {
            [0, 1, 2] => self.n[0] <= self.n[1] && self.n[1] <= self.n[2],
            [1, 0, 2] => self.n[0] <= self.n[1],
            [1, 2, 0] => {
                let r0 = self.n;
                let r1 = [self.n[1], self.n[2], self.n[0]];
                let r2 = [self.n[2], self.n[0], self.n[1]];
                r0 <= r1 && r0 <= r2
            }
            _ => unreachable!(),
        }
    }

    /// Relabel the orbits by `pi`: orbit i becomes orbit pi(i). Lengths move
    /// with their orbit and the permutation is conjugated.
    pub fn relabel(&self, pi: &Permutation3) -> Self {
        let mut n = [0u32; 3];
        for i in 0..3 {
            n[pi.apply(i)] = self.n[i];
        }
        let sigma = pi.compose(&self.sigma).compose(&pi.inverse());
        OrbitData { n, sigma }
    }

    /// Canonical form together with the relabeling that produces it.
    pub fn canonicalize(&self) -> (OrbitData, Permutation3) {
        let all: [[usize; 3]; 6] =
            [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let mut best: Option<(OrbitData, Permutation3)> = None;
        for map in all {
            let pi = Permutation3 { map };
            let cand = self.relabel(&pi);
            if !cand.is_canonical() {
                continue;
            }
            let better = match &best {
                None => true,
                Some((cur, _)) => {
                    (sigma_rank(&cand.sigma), cand.n) < (sigma_rank(&cur.sigma), cur.n)
                }
            };
            if better {
                best = Some((cand, pi));
            }
        }
        best.expect("every orbit data has a canonical form")
    }

    /// The characteristic polynomial of the induced action on the blown-up
    /// cohomology lattice, for canonical orbit data. Non-canonical input is
    /// canonicalized first; the polynomial is a relabeling invariant.
    pub fn charpoly_complex(&self) -> IntPoly {
        let (od, _) = self.canonicalize();
        let [n1, n2, n3] = od.n;
        let nn = od.total();
        let t = |k: u32| IntPoly::power(k as usize);
        let one = IntPoly::one();
        let tm1 = t(1).sub(&one);
        match od.sigma.map {
            [1, 2, 0] => {
                // t - t^N + (t - 1)(t^n1 + 1)(t^n2 + 1)(t^n3 + 1)
                let prod = t(n1).add(&one).mul(&t(n2).add(&one)).mul(&t(n3).add(&one));
                t(1).sub(&t(nn)).add(&tm1.mul(&prod))
            }
            [0, 1, 2] => {
                // (t-1)(t^N - t^n1 - t^n2 - t^n3 + 2) - (t^n1-1)(t^n2-1)(t^n3-1)
                let inner = t(nn)
                    .sub(&t(n1))
                    .sub(&t(n2))
                    .sub(&t(n3))
                    .add(&IntPoly::constant(BigInt::from(2)));
                let prod = t(n1).sub(&one).mul(&t(n2).sub(&one)).mul(&t(n3).sub(&one));
                tm1.mul(&inner).sub(&prod)
            }
            [1, 0, 2] => {
                // (t-1)(t^n3 (t^n1+1)(t^n2+1) - t^n1 - t^n2 - 2)
                //   - (t^(n1+n2) - 1)(t^n3 - 1)
                let inner = t(n3)
                    .mul(&t(n1).add(&one))
                    .mul(&t(n2).add(&one))
                    .sub(&t(n1))
                    .sub(&t(n2))
                    .sub(&IntPoly::constant(BigInt::from(2)));
                let prod = t(n1 + n2).sub(&one).mul(&t(n3).sub(&one));
                tm1.mul(&inner).sub(&prod)
            }
            _ => unreachable!("canonical form"),
        }
    }

    /// Cyclotomic factors and non-cyclotomic residual of the
    /// characteristic polynomial.
    pub fn charpoly_split(&self) -> CyclotomicSplit {
        cyclotomic_split(&self.charpoly_complex()).expect("charpoly is nonzero")
    }

    /// Bracket for the dynamical degree: the unique root of the
    /// characteristic polynomial beyond 1. None when the spectrum stays on
    /// the unit circle.
    pub fn dynamical_degree(&self, digits: u32) -> Option<RootBracket> {
        let chi = self.charpoly_complex();
        largest_real_root_above(&chi, &BigRational::one(), digits)
            .expect("charpoly is nonzero")
    }

    /// Number of characteristic roots strictly beyond 1 (0 or 1).
    pub fn has_dynamical_degree(&self) -> bool {
        let chi = self.charpoly_complex();
        sturm_count(&chi, &BigRational::one(), None).unwrap() > 0
    }

    /// Topological entropy: natural log of the dynamical degree, or zero.
    pub fn entropy(&self) -> f64 {
        match self.dynamical_degree(20) {
            Some(mut b) => b.to_f64().ln(),
            None => 0.0,
        }
    }
}

fn sigma_rank(s: &Permutation3) -> u8 {
    match s.map {
        [0, 1, 2] => 0,
        [1, 0, 2] => 1,
        [1, 2, 0] => 2,
        _ => 3,
    }
}

impl fmt::Display for OrbitData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}:{}", self.n[0], self.n[1], self.n[2], self.sigma)
    }
}

impl FromStr for OrbitData {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (nums, sig) = match s.split_once(':') {
            Some((a, b)) => (a, b.trim()),
            None => (s, "id"),
        };
        let parts: Vec<&str> = nums.split(',').map(|p| p.trim()).collect();
        if parts.len() != 3 {
            return Err(Error::Msg(format!(
                "expected 'n1,n2,n3:sigma', got '{}'",
                s
            )));
        }
        let mut n = [0u32; 3];
        for (i, p) in parts.iter().enumerate() {
            n[i] = p
                .parse()
                .map_err(|_| Error::Msg(format!("bad orbit length '{}'", p)))?;
        }
        OrbitData::new(n, sig.parse()?)
    }
}

/// All canonical orbit data with total length between 3 and `max_total`.
pub fn enumerate_canonical(max_total: u32) -> Vec<OrbitData> {
    let mut out = Vec::new();
    let sigmas = [
        Permutation3::identity(),
        Permutation3::swap12(),
        Permutation3::cycle123(),
    ];
    for total in 3..=max_total {
        for n1 in 1..=total {
            for n2 in 1..=total {
                if n1 + n2 >= total {
                    continue;
                }
                let n3 = total - n1 - n2;
                for sigma in sigmas {
                    let od = OrbitData { n: [n1, n2, n3], sigma };
                    if od.is_canonical() {
                        out.push(od);
                    }
                }
            }
        }
    }
    out
}
