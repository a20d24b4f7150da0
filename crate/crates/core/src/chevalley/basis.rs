//! Chevalley basis of a simply laced Lie algebra with signs from an asymmetry cocycle.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::rootsys::RootSystem;

/// Sparse vector in the adjoint basis: `(index, coefficient)`.
pub type SparseVec = Vec<(usize, i64)>;

/// Basis `e_α` (one per root, in root order) followed by `h_1, …, h_r`.
#[derive(Clone, Debug)]
pub struct ChevalleyBasis {
    phi: Arc<RootSystem>,
    /// `sum[a * n + b]` is the index of `α_a + α_b` or `usize::MAX`.
    sum: Vec<usize>,
    /// `N(α_a, α_b)` where the sum is a root, else 0.
    sign: Vec<i8>,
}

/// Bimultiplicative cocycle: `ε(α_i, α_i) = −1`, `ε(α_i, α_j) = −1` for adjacent `i < j`, else `+1`.
pub fn cocycle(phi: &RootSystem, a: &[i64], b: &[i64]) -> i64 {
    let r = phi.rank();
    let c = phi.cartan();
    let mut e = 0i64;
    for i in 0..r {
        if a[i] == 0 {
            continue;
        }
        for j in 0..r {
            let f = i == j || (i < j && c[(i, j)] != 0);
            if f {
                e += a[i] * b[j];
            }
        }
    }
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl ChevalleyBasis {
    pub fn new(phi: Arc<RootSystem>) -> Result<Self> {
        if !phi.is_simply_laced() {
            return Err(Error::Unsupported(phi.label().to_string(), "structure constants need a simply laced type"));
        }
        let n = phi.len();
        let mut sum = vec![usize::MAX; n * n];
        let mut sign = vec![0i8; n * n];
        let sgn = |k: usize| if phi.is_positive(k) { 1 } else { -1 };
        for a in 0..n {
            for b in 0..n {
                let s: Vec<i64> = phi.root(a).iter().zip(phi.root(b)).map(|(x, y)| x + y).collect();
                if let Some(c) = phi.index_of(&s) {
                    sum[a * n + b] = c;
                    let e = cocycle(&phi, phi.root(a), phi.root(b));
                    sign[a * n + b] = (sgn(a) * sgn(b) * sgn(c) * e) as i8;
                }
            }
        }
        Ok(ChevalleyBasis { phi, sum, sign })
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.phi
    }

    pub fn dim(&self) -> usize {
        self.phi.len() + self.phi.rank()
    }

    pub fn num_roots(&self) -> usize {
        self.phi.len()
    }

    /// `N(α, β)` or `None` when `α + β` is not a root.
    pub fn structure_constant(&self, a: usize, b: usize) -> Option<i64> {
        let n = self.phi.len();
        (self.sum[a * n + b] != usize::MAX).then(|| i64::from(self.sign[a * n + b]))
    }

    /// Index of `α + β` if it is a root.
    pub fn root_sum(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.phi.len();
        let c = self.sum[a * n + b];
        (c != usize::MAX).then_some(c)
    }

    /// Bracket of two basis vectors.
    pub fn bracket_basis(&self, x: usize, y: usize) -> SparseVec {
        let n = self.phi.len();
        match (x < n, y < n) {
            (true, true) => {
                if let Some(c) = self.root_sum(x, y) {
                    vec![(c, i64::from(self.sign[x * n + y]))]
                } else if self.phi.neg_index(x) == y {
                    self.coroot_vector(x)
                } else {
                    Vec::new()
                }
            }
            (true, false) => {
                let p = self.phi.simple_pairing(self.phi.root(x), y - n);
                if p == 0 {
                    Vec::new()
                } else {
                    vec![(x, -p)]
                }
            }
            (false, true) => {
                let p = self.phi.simple_pairing(self.phi.root(y), x - n);
                if p == 0 {
                    Vec::new()
                } else {
                    vec![(y, p)]
                }
            }
            (false, false) => Vec::new(),
        }
    }

    /// `h_α` in the `h_i` coordinates.
    pub fn coroot_vector(&self, k: usize) -> SparseVec {
        let n = self.phi.len();
        self.phi
            .coroot(self.phi.root(k))
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != 0)
            .map(|(i, c)| (n + i, c))
            .collect()
    }

    pub fn bracket(&self, u: &[(usize, i64)], v: &[(usize, i64)]) -> Vec<i64> {
        let mut out = vec![0i64; self.dim()];
        for &(x, a) in u {
            for &(y, b) in v {
                for (z, c) in self.bracket_basis(x, y) {
                    out[z] += a * b * c;
                }
            }
        }
        out
    }

    /// Matrix of `ad(e_α)`; column `j` is `[e_α, b_j]`.
    pub fn ad_root(&self, k: usize) -> IntMatrix {
        let d = self.dim();
        let mut m = IntMatrix::zeros(d, d);
        for j in 0..d {
            for (i, c) in self.bracket_basis(k, j) {
                m[(i, j)] += c;
            }
        }
        m
    }

    /// Antisymmetry and the sign rule under negation, for every addable pair.
    pub fn check_sign_rules(&self) -> Result<()> {
        let n = self.phi.len();
        for a in 0..n {
            for b in 0..n {
                let Some(nab) = self.structure_constant(a, b) else { continue };
                if self.structure_constant(b, a) != Some(-nab) {
                    return Err(Error::LemmaViolation(format!("N not antisymmetric at ({a},{b})")));
                }
                let (na, nb) = (self.phi.neg_index(a), self.phi.neg_index(b));
                if self.structure_constant(na, nb) != Some(-nab) {
                    return Err(Error::LemmaViolation(format!("N(-a,-b) != -N(a,b) at ({a},{b})")));
                }
            }
        }
        // α + β + γ = 0 ⇒ N(α,β) = N(β,γ) = N(γ,α)
        for a in 0..n {
            for b in 0..n {
                let Some(c) = self.root_sum(a, b) else { continue };
                let g = self.phi.neg_index(c);
                let x = self.structure_constant(a, b);
                if x != self.structure_constant(b, g) || x != self.structure_constant(g, a) {
                    return Err(Error::LemmaViolation(format!("cyclic rule fails at ({a},{b})")));
                }
            }
        }
        Ok(())
    }

    /// Jacobi identity on basis triples; every triple when `stride == 1`, otherwise every `stride`-th one.
    pub fn check_jacobi(&self, stride: usize) -> Result<usize> {
        let d = self.dim();
        let stride = stride.max(1);
        let mut checked = 0usize;
        let mut counter = 0usize;
        let mut acc = vec![0i64; d];
        for x in 0..d {
            for y in (x + 1)..d {
                let xy = self.bracket_basis(x, y);
                for z in (y + 1)..d {
                    counter += 1;
                    if counter % stride != 0 {
                        continue;
                    }
                    acc.iter_mut().for_each(|v| *v = 0);
                    for (w, c) in &xy {
                        for (t, e) in self.bracket_basis(z, *w) {
                            acc[t] += c * e;
                        }
                    }
                    for (w, c) in self.bracket_basis(y, z) {
                        for (t, e) in self.bracket_basis(x, w) {
                            acc[t] += c * e;
                        }
                    }
                    for (w, c) in self.bracket_basis(z, x) {
                        for (t, e) in self.bracket_basis(y, w) {
                            acc[t] += c * e;
                        }
                    }
                    if acc.iter().any(|&v| v != 0) {
                        return Err(Error::LemmaViolation(format!("Jacobi fails on ({x},{y},{z})")));
                    }
                    checked += 1;
                }
            }
        }
        Ok(checked)
    }

    /// Full scan up to rank 6, strided sample beyond.
    pub fn check_invariants(&self) -> Result<()> {
        self.check_sign_rules()?;
        let stride = if self.phi.rank() <= 6 { 1 } else { 97 };
        self.check_jacobi(stride)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_constants() {
        let phi = RootSystem::shared("A2").unwrap();
        let b = ChevalleyBasis::new(phi).unwrap();
        let n = b.structure_constant(0, 1).unwrap();
        assert_eq!(n.abs(), 1);
        assert_eq!(b.structure_constant(1, 0), Some(-n));
        b.check_invariants().unwrap();
    }

    #[test]
    fn d4_invariants() {
        let b = ChevalleyBasis::new(RootSystem::shared("D4").unwrap()).unwrap();
        b.check_invariants().unwrap();
    }

    #[test]
    fn rejects_non_simply_laced() {
        assert!(ChevalleyBasis::new(RootSystem::shared("B3").unwrap()).is_err());
    }
}
