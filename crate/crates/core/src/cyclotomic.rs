//! Cyclotomic polynomials and symbolic orders `q^N Π Φ_d(q)^{a_d}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer polynomial, coefficients from the constant term upward.
pub type Poly = Vec<BigInt>;

pub fn trim(p: &mut Poly) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Exact division by a monic divisor; `None` if the remainder is nonzero.
pub fn poly_div_exact(a: &Poly, b: &Poly) -> Option<Poly> {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    assert!(b[db].is_one(), "divisor must be monic");
    if r.len() < b.len() {
        return if r.iter().all(|c| c.is_zero()) { Some(vec![BigInt::zero()]) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        trim(&mut q);
        Some(q)
    } else {
        None
    }
}

pub fn poly_eval(p: &Poly, x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// The d-th cyclotomic polynomial.
pub fn cyclotomic(d: u32) -> Poly {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, Poly>>> = OnceLock::new();
    assert!(d >= 1);
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(p) = cache.lock().expect("cyclotomic cache").get(&d) {
        return p.clone();
    }
    let mut p: Poly = vec![BigInt::zero(); d as usize + 1];
    p[0] = -BigInt::one();
    p[d as usize] = BigInt::one();
    for k in 1..d {
        if d % k == 0 {
            p = poly_div_exact(&p, &cyclotomic(k)).expect("cyclotomic division");
        }
    }
    cache.lock().expect("cyclotomic cache").insert(d, p.clone());
    p
}

pub fn phi_eval(d: u32, q: &BigInt) -> BigInt {
    poly_eval(&cyclotomic(d), q)
}

/// 2-adic valuation of a nonzero integer.
pub fn v2(x: &BigInt) -> u64 {
    assert!(!x.is_zero(), "valuation of zero");
    x.trailing_zeros().unwrap_or(0)
}

/// Largest power of two dividing x.
pub fn two_part(x: &BigInt) -> BigInt {
    BigInt::one() << v2(x)
}

/// Symbolic order `q^N Π Φ_d(q)^{a_d}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicOrder {
    pub q_power: u32,
    pub factors: BTreeMap<u32, u32>,
}

impl CyclotomicOrder {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn phi(d: u32, a: u32) -> Self {
        let mut c = Self::default();
        if a > 0 {
            c.factors.insert(d, a);
        }
        c
    }

    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        let mut c = Self::default();
        for &(d, a) in pairs {
            if a > 0 {
                *c.factors.entry(d).or_insert(0) += a;
            }
        }
        c
    }

    pub fn multiplicity(&self, d: u32) -> u32 {
        self.factors.get(&d).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u64 {
        let mut n = u64::from(self.q_power);
        for (&d, &a) in &self.factors {
            n += u64::from(a) * (cyclotomic(d).len() as u64 - 1);
        }
        n
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut c = self.clone();
        c.q_power += other.q_power;
        for (&d, &a) in &other.factors {
            *c.factors.entry(d).or_insert(0) += a;
        }
        c
    }

    /// Quotient if `other` divides `self` as a multiset.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut c = self.clone();
        c.q_power = c.q_power.checked_sub(other.q_power)?;
        for (&d, &a) in &other.factors {
            let e = c.factors.get_mut(&d)?;
            *e = e.checked_sub(a)?;
            if *e == 0 {
                c.factors.remove(&d);
            }
        }
        Some(c)
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        let mut acc: BigInt = Pow::pow(q, self.q_power);
        for (&d, &a) in &self.factors {
            acc *= Pow::pow(phi_eval(d, q), a);
        }
        acc
    }

    pub fn polynomial(&self) -> Poly {
        let mut p: Poly = vec![BigInt::zero(); self.q_power as usize + 1];
        p[self.q_power as usize] = BigInt::one();
        for (&d, &a) in &self.factors {
            for _ in 0..a {
                p = poly_mul(&p, &cyclotomic(d));
            }
        }
        p
    }

    /// Substitution q ↦ −q on cyclotomic indices.
    pub fn ennola(&self) -> Self {
        let mut c = CyclotomicOrder { q_power: self.q_power, factors: BTreeMap::new() };
        for (&d, &a) in &self.factors {
            *c.factors.entry(ennola_index(d)).or_insert(0) += a;
        }
        c
    }

    /// Factor a monic integer polynomial with only cyclotomic roots.
    pub fn from_polynomial(p: &Poly) -> Result<Self> {
        let mut rest = p.clone();
        trim(&mut rest);
        let mut c = CyclotomicOrder::default();
        while rest.len() > 1 && rest[0].is_zero() {
            rest.remove(0);
            c.q_power += 1;
        }
        let mut d = 1u32;
        while rest.len() > 1 {
            if d > 420 {
                return Err(Error::Inexact("cyclotomic factorization"));
            }
            let phi = cyclotomic(d);
            if phi.len() <= rest.len() {
                if let Some(q) = poly_div_exact(&rest, &phi) {
                    rest = q;
                    *c.factors.entry(d).or_insert(0) += 1;
                    continue;
                }
            }
            d += 1;
        }
        if !rest[0].is_one() {
            return Err(Error::Inexact("cyclotomic factorization"));
        }
        Ok(c)
    }
}

pub fn ennola_index(d: u32) -> u32 {
    if d % 2 == 1 {
        2 * d
    } else if d % 4 == 2 {
        d / 2
    } else {
        d
    }
}

impl fmt::Display for CyclotomicOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.q_power {
            0 => {}
            1 => parts.push("q".to_string()),
            n => parts.push(format!("q^{n}")),
        }
        for (&d, &a) in &self.factors {
            if a == 1 {
                parts.push(format!("Φ{d}"));
            } else {
                parts.push(format!("Φ{d}^{a}"));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("."))
        }
    }
}

impl FromStr for CyclotomicOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut c = CyclotomicOrder::default();
        if s == "1" || s.is_empty() {
            return Ok(c);
        }
        let bad = || Error::Parse(format!("cyclotomic order `{s}`"));
        for part in s.split('.') {
            let (base, exp) = match part.split_once('^') {
                Some((b, e)) => (b, e.parse::<u32>().map_err(|_| bad())?),
                None => (part, 1),
            };
            if base == "q" {
                c.q_power += exp;
                continue;
            }
            let idx = base
                .strip_prefix('Φ')
                .or_else(|| base.strip_prefix("Phi"))
                .ok_or_else(bad)?
                .parse::<u32>()
                .map_err(|_| bad())?;
            if idx == 0 {
                return Err(bad());
            }
            *c.factors.entry(idx).or_insert(0) += exp;
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        let as_i64 = |p: Poly| p.iter().map(|x| i64::try_from(x).unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i64(cyclotomic(1)), vec![-1, 1]);
        assert_eq!(as_i64(cyclotomic(2)), vec![1, 1]);
        assert_eq!(as_i64(cyclotomic(6)), vec![1, -1, 1]);
        assert_eq!(as_i64(cyclotomic(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn render_and_parse() {
        let c = CyclotomicOrder::from_pairs(&[(1, 3), (2, 3)]);
        assert_eq!(c.to_string(), "Φ1^3.Φ2^3");
        assert_eq!("Phi1^3.Phi2^3".parse::<CyclotomicOrder>().unwrap(), c);
        assert_eq!("Φ1.Φ2".parse::<CyclotomicOrder>().unwrap().to_string(), "Φ1.Φ2");
        let g: CyclotomicOrder = "q^3.Φ1^2.Φ2.Φ3".parse().unwrap();
        assert_eq!(g.eval(&BigInt::from(2)), BigInt::from(8 * 3 * 7));
    }

    #[test]
    fn ennola_examples() {
        assert_eq!(CyclotomicOrder::phi(3, 1).ennola(), CyclotomicOrder::phi(6, 1));
        assert_eq!(CyclotomicOrder::phi(1, 6).ennola(), CyclotomicOrder::phi(2, 6));
        let c = CyclotomicOrder::from_pairs(&[(1, 3), (2, 3)]);
        assert_eq!(c.ennola(), c);
    }

    #[test]
    fn factor_polynomial() {
        let c = CyclotomicOrder::from_pairs(&[(1, 2), (3, 1), (4, 2)]);
        assert_eq!(CyclotomicOrder::from_polynomial(&c.polynomial()).unwrap(), c);
    }
}
