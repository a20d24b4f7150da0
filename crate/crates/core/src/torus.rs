//! Finite tori as cokernels of twisted Frobenius maps on a lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{phi_eval, two_part, v2, CyclotomicOrder};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::rootsys::{CartanType, RootSystemLabel};
use crate::weyl::WeylGroup;
use crate::snf::{self, BigMatrix};

const ORDER_BOUND: u64 = 840;

pub fn is_prime_power(q: &BigInt) -> bool {
    if q < &BigInt::from(2) {
        return false;
    }
    let Some(mut n) = q.to_u64() else { return false };
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            return n == 1;
        }
        p += 1;
    }
    true
}

/// The order of q modulo 4.
pub fn e_of(q: &BigInt) -> u8 {
    if q.mod_floor(&BigInt::from(4)).is_one() {
        1
    } else {
        2
    }
}

/// Lattice automorphism `M` together with the prime power `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusTwist {
    matrix: IntMatrix,
    q: BigInt,
    epsilon: i8,
    e: u8,
    order: u64,
}

impl FrobeniusTwist {
    pub fn new(matrix: IntMatrix, q: BigInt, epsilon: i8) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::BadTwist("matrix not square".into()));
        }
        if q < BigInt::from(3) || q.is_even() || !is_prime_power(&q) {
            return Err(Error::BadTwist(format!("q = {q} is not an odd prime power ≥ 3")));
        }
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::BadTwist("epsilon must be ±1".into()));
        }
        let order = matrix.order(ORDER_BOUND).ok_or_else(|| Error::BadTwist("matrix of infinite order".into()))?;
        let e = e_of(&q);
        Ok(FrobeniusTwist { matrix, q, epsilon, e, order })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn epsilon(&self) -> i8 {
        self.epsilon
    }

    pub fn e(&self) -> u8 {
        self.e
    }

    pub fn matrix_order(&self) -> u64 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    /// `q·M − I` over the integers.
    pub fn frobenius_minus_one(&self) -> BigMatrix {
        let r = self.rank();
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let x = &self.q * BigInt::from(self.matrix[(i, j)]);
                        if i == j {
                            x - 1
                        } else {
                            x
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn polynomial_order(&self) -> CyclotomicOrder {
        polynomial_order(&self.matrix).expect("finite-order matrix has cyclotomic characteristic polynomial")
    }
}

/// Characteristic polynomial of a finite-order matrix as a cyclotomic multiset.
pub fn polynomial_order(m: &IntMatrix) -> Result<CyclotomicOrder> {
    CyclotomicOrder::from_polynomial(&m.charpoly())
}

pub fn big_det(a: &BigMatrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `Y / (qM − I) Y` with its cyclic decomposition.
#[derive(Clone, Debug)]
pub struct FiniteTorus {
    invariant_factors: Vec<BigInt>,
    u: BigMatrix,
    u_inv: BigMatrix,
    twist: FrobeniusTwist,
}

impl FiniteTorus {
    pub fn new(twist: FrobeniusTwist) -> Result<Self> {
        let a = twist.frobenius_minus_one();
        let s = snf::smith(&a);
        if s.diag.iter().any(Zero::is_zero) {
            return Err(Error::BadTwist("q·M − I is singular".into()));
        }
        Ok(FiniteTorus { invariant_factors: s.diag, u: s.u, u_inv: s.u_inv, twist })
    }

    pub fn twist(&self) -> &FrobeniusTwist {
        &self.twist
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// All diagonal entries, including trivial ones, in divisibility order.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn nontrivial_factors(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn two_parts(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().map(two_part).collect()
    }

    pub fn two_part_order(&self) -> BigInt {
        self.two_parts().iter().product()
    }

    /// Exponent of the 2-part.
    pub fn two_exponent(&self) -> BigInt {
        self.two_parts().into_iter().max().unwrap_or_else(BigInt::one)
    }

    pub fn det_order(&self) -> BigInt {
        big_det(&self.twist.frobenius_minus_one()).abs()
    }

    /// Coordinates of a lattice vector in `⊕ ℤ/d_i`.
    pub fn coordinates(&self, y: &[i64]) -> Vec<BigInt> {
        let yb: BigMatrix = y.iter().map(|&x| vec![BigInt::from(x)]).collect();
        let z = snf::mat_mul(&self.u, &yb);
        z.iter().zip(&self.invariant_factors).map(|(r, d)| r[0].mod_floor(d)).collect()
    }

    /// Endomorphism of `⊕ ℤ/d_i` induced by a lattice map commuting with the twist.
    pub fn induced_action(&self, g: &IntMatrix) -> Result<TorusEndomorphism> {
        let m = self.twist.matrix();
        if g.rows() != m.rows() || g.mul_mat(m) != m.mul_mat(g) {
            return Err(Error::NotCommuting);
        }
        let gb: BigMatrix = g.to_rows().iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let e = snf::mat_mul(&snf::mat_mul(&self.u, &gb), &self.u_inv);
        Ok(TorusEndomorphism::new(e, self.invariant_factors.clone()))
    }
}

/// Endomorphism of a finite abelian group `⊕ ℤ/d_i`; row `i` is read modulo `d_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusEndomorphism {
    matrix: BigMatrix,
    moduli: Vec<BigInt>,
}

impl TorusEndomorphism {
    pub fn new(mut matrix: BigMatrix, moduli: Vec<BigInt>) -> Self {
        for (row, d) in matrix.iter_mut().zip(&moduli) {
            for x in row.iter_mut() {
                *x = x.mod_floor(d);
            }
        }
        TorusEndomorphism { matrix, moduli }
    }

    pub fn identity(moduli: Vec<BigInt>) -> Self {
        Self::new(snf::identity(moduli.len()), moduli)
    }

    pub fn matrix(&self) -> &BigMatrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.moduli.clone())
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self::new(snf::mat_mul(&self.matrix, &other.matrix), self.moduli.clone())
    }

    /// `self − c·I`.
    pub fn minus_scalar(&self, c: i64) -> Self {
        let mut m = self.matrix.clone();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] -= c;
        }
        Self::new(m, self.moduli.clone())
    }

    pub fn scale(&self, c: i64) -> Self {
        let m = self.matrix.iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
        Self::new(m, self.moduli.clone())
    }

    pub fn apply(&self, z: &[BigInt]) -> Vec<BigInt> {
        self.matrix
            .iter()
            .zip(&self.moduli)
            .map(|(row, d)| row.iter().zip(z).map(|(a, b)| a * b).sum::<BigInt>().mod_floor(d))
            .collect()
    }

    pub fn order(&self, bound: u64) -> Option<u64> {
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_identity() {
                return Some(k);
            }
            p = p.compose(self);
        }
        None
    }

    /// Generators of the 2-part: `(d_j / 2^{v_j}) e_j`.
    pub fn two_part_generators(&self) -> Vec<Vec<BigInt>> {
        let n = self.moduli.len();
        (0..n)
            .filter(|&j| self.moduli[j].is_even())
            .map(|j| {
                let mut v = vec![BigInt::zero(); n];
                v[j] = &self.moduli[j] / two_part(&self.moduli[j]);
                v
            })
            .collect()
    }

    /// True iff the map vanishes on the 2-part.
    pub fn kills_two_part(&self) -> bool {
        self.two_part_generators().iter().all(|v| self.apply(v).iter().all(Zero::is_zero))
    }

    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }
}

/// Additive order of an element of `⊕ ℤ/d_i`.
pub fn element_order(z: &[BigInt], moduli: &[BigInt]) -> BigInt {
    let mut o = BigInt::one();
    for (x, d) in z.iter().zip(moduli) {
        let g = x.gcd(d);
        let oi = if x.is_zero() { BigInt::one() } else { d / g };
        o = o.lcm(&oi);
    }
    o
}

/// Generic order `q^N Π (q^{d_i} − 1)` from the degrees.
pub fn order_from_degrees(num_positive: u32, degrees: &[u32]) -> CyclotomicOrder {
    let mut c = CyclotomicOrder { q_power: num_positive, ..Default::default() };
    for &d in degrees {
        for k in 1..=d {
            if d % k == 0 {
                *c.factors.entry(k).or_insert(0) += 1;
            }
        }
    }
    c
}

/// Degrees from the Poincaré polynomial `Σ t^{l(w)} = Π (t^{d}−1)/(t−1)`.
pub fn degrees_from_poincare(coeffs: &[u64], rank: usize) -> Result<Vec<u32>> {
    let p: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    let mut full = p;
    for _ in 0..rank {
        full = crate::cyclotomic::poly_mul(&full, &vec![-BigInt::one(), BigInt::one()]);
    }
    let mut mult = CyclotomicOrder::from_polynomial(&full)?.factors;
    let mut degrees = Vec::new();
    while let Some((&d, _)) = mult.iter().rev().find(|(_, &a)| a > 0) {
        for k in 1..=d {
            if d % k == 0 {
                let e = mult.get_mut(&k).ok_or(Error::Inexact("degree extraction"))?;
                if *e == 0 {
                    return Err(Error::Inexact("degree extraction"));
                }
                *e -= 1;
            }
        }
        mult.retain(|_, a| *a > 0);
        degrees.push(d);
    }
    degrees.sort_unstable();
    if degrees.len() != rank {
        return Err(Error::Inexact("degree extraction"));
    }
    Ok(degrees)
}

/// Largest Weyl group whose degrees are read off an explicit enumeration.
pub const POINCARE_LIMIT: u128 = 100_000;

/// Degrees of one irreducible type: from the Poincaré polynomial when enumerable, else tabulated.
pub fn degrees(ty: &CartanType) -> Vec<u32> {
    if ty.weyl_order() <= POINCARE_LIMIT {
        if let Ok(w) = WeylGroup::shared(&ty.to_string()) {
            if let Ok(d) = degrees_from_poincare(&w.length_distribution(), ty.rank) {
                return d;
            }
        }
    }
    ty.degrees()
}

/// Generic order of the untwisted group of the given type.
pub fn group_order(label: &RootSystemLabel) -> CyclotomicOrder {
    let mut c = CyclotomicOrder::one();
    for ty in &label.0 {
        let npos = (ty.root_count() / 2) as u32;
        c = c.mul(&order_from_degrees(npos, &degrees(ty)));
    }
    c
}

/// Outcome of the 2-adic sweeps.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct TwoAdicReport {
    pub cyclotomic_checks: u64,
    pub cyclotomic_failures: Vec<(u64, u32)>,
    pub a2_checks: u64,
    pub a2_failures: Vec<u64>,
}

impl TwoAdicReport {
    pub fn passed(&self) -> bool {
        self.cyclotomic_failures.is_empty() && self.a2_failures.is_empty()
    }
}

/// `Φ_i(q)_2 ≥ Φ_i(1)_2` and `|A₂(q³)|_2 = |A₂(q)|_2` over odd q in the range.
pub fn two_adic_checks(q_range: std::ops::Range<u64>, i_max: u32) -> TwoAdicReport {
    let a2: RootSystemLabel = "A2".parse().expect("A2 label");
    let a2_order = group_order(&a2);
    let one = BigInt::one();
    let phi_at_one: Vec<u64> = (0..=i_max).map(|i| if i < 2 { 0 } else { v2(&phi_eval(i, &one)) }).collect();
    let mut rep = TwoAdicReport::default();
    for q in q_range.filter(|q| q % 2 == 1 && *q >= 3) {
        let qb = BigInt::from(q);
        for i in 2..=i_max {
            rep.cyclotomic_checks += 1;
            if v2(&phi_eval(i, &qb)) < phi_at_one[i as usize] {
                rep.cyclotomic_failures.push((q, i));
            }
        }
        rep.a2_checks += 1;
        let q3 = &qb * &qb * &qb;
        if v2(&a2_order.eval(&q3)) != v2(&a2_order.eval(&qb)) {
            rep.a2_failures.push(q);
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_torus() {
        let t = FiniteTorus::new(FrobeniusTwist::new(IntMatrix::identity(6), BigInt::from(7), 1).unwrap()).unwrap();
        assert!(t.invariant_factors().iter().all(|d| *d == BigInt::from(6)));
        assert_eq!(t.order(), BigInt::from(6).pow(6));
        assert_eq!(t.det_order(), t.order());
    }

    #[test]
    fn bad_q() {
        assert!(FrobeniusTwist::new(IntMatrix::identity(2), BigInt::from(15), 1).is_err());
        assert!(FrobeniusTwist::new(IntMatrix::identity(2), BigInt::from(4), 1).is_err());
        assert!(FrobeniusTwist::new(IntMatrix::identity(2), BigInt::from(9), 1).is_ok());
    }

    #[test]
    fn a2_degrees() {
        let d = degrees_from_poincare(&[1, 2, 2, 1], 2).unwrap();
        assert_eq!(d, vec![2, 3]);
        let c = group_order(&"A2".parse().unwrap());
        let q = BigInt::from(5);
        assert_eq!(c.eval(&q), BigInt::from(125 * 24 * 124));
    }
}
