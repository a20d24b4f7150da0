//! Faithful model of the extended Weyl group of the simply connected group.
//!
//! An element `t · r(w)` is stored as the image of `t ∈ T[2]` in `Y / 2Y` (a bitmask over simple coroots)
//! together with `w`.

use crate::rootsys::RootSystem;
use crate::weyl::{longest_element, WeylElement};

use super::adjoint::principal_parity;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TitsModelElement {
    pub torus: u64,
    pub weyl: WeylElement,
}

fn mask(bits: impl IntoIterator<Item = bool>) -> u64 {
    bits.into_iter().enumerate().fold(0, |m, (i, b)| if b { m | (1 << i) } else { m })
}

impl TitsModelElement {
    pub fn identity(phi: &RootSystem) -> Self {
        TitsModelElement { torus: 0, weyl: WeylElement::identity(phi) }
    }

    /// Right multiplication by `n_i = n_{α_i}(1)`.
    pub fn mul_simple(&self, phi: &RootSystem, i: usize) -> Self {
        let img = self.weyl.apply(phi.simple_index(i));
        let weyl = self.weyl.compose(phi, &WeylElement::simple_reflection(phi, i));
        let torus = if phi.is_positive(img) {
            self.torus
        } else {
            self.torus ^ mask(phi.coroot(phi.root(img)).iter().map(|c| c.rem_euclid(2) == 1))
        };
        TitsModelElement { torus, weyl }
    }

    pub fn mul_word(&self, phi: &RootSystem, word: &[usize]) -> Self {
        word.iter().fold(self.clone(), |acc, &i| acc.mul_simple(phi, i))
    }

    /// `r(w)` along a reduced word of `w`.
    pub fn section(phi: &RootSystem, w: &WeylElement) -> Self {
        Self::identity(phi).mul_word(phi, &w.reduced_word(phi))
    }
}

/// `r(w_I)² = z_I` in the model.
pub fn check_adams_he(phi: &RootSystem, subset: &[usize]) -> bool {
    let w = longest_element(phi, subset);
    let word = w.reduced_word(phi);
    let sq = TitsModelElement::identity(phi).mul_word(phi, &word).mul_word(phi, &word);
    sq.weyl.is_identity() && sq.torus == mask(principal_parity(phi, subset))
}

/// Every subset of simple indices (including the empty one), as sorted vectors.
pub fn all_subsets(rank: usize) -> Vec<Vec<usize>> {
    (0u64..(1 << rank)).map(|m| (0..rank).filter(|&i| m >> i & 1 == 1).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_simple() {
        let phi = RootSystem::of_type("A2").unwrap();
        let n = TitsModelElement::identity(&phi).mul_word(&phi, &[0, 0]);
        assert!(n.weyl.is_identity());
        assert_eq!(n.torus, 1);
    }

    #[test]
    fn adams_he_small_types() {
        for label in ["A3", "D4", "B3", "G2"] {
            let phi = RootSystem::of_type(label).unwrap();
            for s in all_subsets(phi.rank()) {
                assert!(check_adams_he(&phi, &s), "{label} {s:?}");
            }
        }
    }
}
