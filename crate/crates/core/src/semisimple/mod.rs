//! Finite-order elements of the dual torus, their centralizers and the block data built from them.

mod levi;
mod torsion;

pub use levi::{
    cyclotomic_matrix, d_kernel, levi_roots, normalize_twist, rational_type, relative_weyl_block, restricted_charpoly,
    torus_part, verify_minimal_d_split, MinimalSplitReport, RationalComponent, RationalType, RelativeWeyl,
};
pub use torsion::{centralizer, classify_torsion, fixed_space_dim, orbit, CentralizerData, TorsionClass};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::RootSystem;
use crate::weyl::{WeylElement, WeylGroup};

/// Element `s` of the adjoint dual torus with `sⁿ = 1`, stored through `n·⟨α_i, s⟩ mod n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualTorusElement {
    n: i64,
    pairing: Vec<i64>,
}

impl DualTorusElement {
    pub fn new(n: i64, pairing: Vec<i64>) -> Result<Self> {
        if n < 1 {
            return Err(Error::Precondition(format!("torsion order {n} must be positive")));
        }
        let pairing = pairing.iter().map(|a| a.rem_euclid(n)).collect();
        Ok(DualTorusElement { n, pairing })
    }

    pub fn identity(rank: usize) -> Self {
        DualTorusElement { n: 1, pairing: vec![0; rank] }
    }

    /// `Π h_{α_i}(ζ^{e_i})` with `ζ` of order `n`, i.e. the coroot vector `Σ (e_i/n) α_i∨`.
    pub fn from_h_expression(phi: &RootSystem, terms: &[(usize, i64)], n: i64) -> Result<Self> {
        let r = phi.rank();
        let mut coroot = vec![0i64; r];
        for &(i, e) in terms {
            if i >= r {
                return Err(Error::OutOfRange(i));
            }
            coroot[i] += e;
        }
        Self::from_coroot_vector(phi, &coroot, n)
    }

    /// Element with coroot-lattice coordinates `x / n`.
    pub fn from_coroot_vector(phi: &RootSystem, x: &[i64], n: i64) -> Result<Self> {
        let r = phi.rank();
        let c = phi.cartan();
        // <α_j, Σ x_i α_i∨> = Σ x_i c[i][j]
        let pairing = (0..r).map(|j| (0..r).map(|i| x[i] * c[(i, j)]).sum()).collect();
        Self::new(n, pairing)
    }

    pub fn modulus(&self) -> i64 {
        self.n
    }

    pub fn pairing(&self) -> &[i64] {
        &self.pairing
    }

    pub fn rank(&self) -> usize {
        self.pairing.len()
    }

    pub fn order(&self) -> i64 {
        let g = self.pairing.iter().fold(self.n, |g, &a| g.gcd(&a));
        self.n / g
    }

    pub fn is_identity(&self) -> bool {
        self.pairing.iter().all(|&a| a == 0)
    }

    /// `n·⟨β, s⟩ mod n` for a root given in simple-root coordinates.
    pub fn pair(&self, beta: &[i64]) -> i64 {
        beta.iter().zip(&self.pairing).map(|(c, a)| c * a).sum::<i64>().rem_euclid(self.n)
    }

    /// `s^k`.
    pub fn power(&self, k: i64) -> Self {
        DualTorusElement { n: self.n, pairing: self.pairing.iter().map(|a| (a * k).rem_euclid(self.n)).collect() }
    }

    pub fn inverse(&self) -> Self {
        self.power(-1)
    }

    /// `ʷs`, with `<α, ʷs> = <w⁻¹α, s>`.
    pub fn act(&self, phi: &RootSystem, w: &WeylElement) -> Self {
        let inv = w.inverse(phi);
        let pairing = (0..phi.rank())
            .map(|j| self.pair(phi.root(inv.apply(phi.simple_index(j)))))
            .collect();
        DualTorusElement { n: self.n, pairing }
    }

    /// Image under a diagram symmetry `α_i ↦ α_{σ(i)}`.
    pub fn apply_symmetry(&self, sigma: &[usize]) -> Self {
        let mut pairing = vec![0; self.pairing.len()];
        for (i, &j) in sigma.iter().enumerate() {
            pairing[j] = self.pairing[i];
        }
        DualTorusElement { n: self.n, pairing }
    }

    /// Roots with `<α, s> ≡ 0`.
    pub fn root_indices(&self, phi: &RootSystem) -> Vec<usize> {
        (0..phi.len()).filter(|&k| self.pair(phi.root(k)) == 0).collect()
    }

    /// `F(s) = s` for `F = q·w`: `q · ʷs = s`.
    pub fn is_stable(&self, phi: &RootSystem, w: &WeylElement, q: i64) -> bool {
        self.act(phi, w).power(q) == *self
    }

    /// Stabilizer of `s` in an enumerated Weyl group, as element indices.
    pub fn stabilizer(&self, weyl: &WeylGroup) -> Vec<usize> {
        let phi = weyl.root_system();
        weyl.elements().iter().enumerate().filter(|(_, w)| self.act(phi, w) == *self).map(|(i, _)| i).collect()
    }
}

/// The element `s₀ = h_{α₁}(ω²) h_{α₃}(ω) h_{α₅}(ω) h_{α₆}(ω²)` of the E6 dual torus.
pub fn s0(phi: &RootSystem) -> Result<DualTorusElement> {
    if phi.label().to_string() != "E6" {
        return Err(Error::Unsupported(phi.label().to_string(), "s0 lives in E6"));
    }
    DualTorusElement::from_h_expression(phi, &[(0, 2), (2, 1), (4, 1), (5, 2)], 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s0_pairings() {
        let phi = RootSystem::of_type("E6").unwrap();
        let s = s0(&phi).unwrap();
        assert_eq!(s.pairing(), &[0, 0, 0, 1, 0, 0]);
        assert_eq!(s.order(), 3);
        let z = DualTorusElement::from_h_expression(&phi, &[(0, 1), (2, 2), (4, 1), (5, 2)], 3).unwrap();
        assert!(z.is_identity());
    }

    #[test]
    fn action_is_a_left_action() {
        let phi = RootSystem::of_type("D4").unwrap();
        let s = DualTorusElement::new(4, vec![1, 2, 3, 1]).unwrap();
        let a = WeylElement::from_word(&phi, &[0, 1]).unwrap();
        let b = WeylElement::from_word(&phi, &[2, 1, 3]).unwrap();
        assert_eq!(s.act(&phi, &b).act(&phi, &a), s.act(&phi, &a.compose(&phi, &b)));
    }
}
