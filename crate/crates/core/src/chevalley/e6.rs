//! Named elements of the extended Weyl group of E6 and the checks built on them.
//!
//! Labels follow Bourbaki: `α_i` is internal simple index `i − 1`, `α_0` is the negative highest root.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grouptool::{perm_order, wreath_recognize, SmallGroup, Subgroup};
use crate::rootsys::RootSystem;
use crate::weyl::longest_element;

use super::adjoint::{Adjoint, TitsElement};

/// Diagram symmetry of E6 on internal indices.
pub const E6_SYMMETRY: [usize; 6] = [5, 1, 4, 3, 2, 0];

const GROUP_CAP: u64 = 100_000;

/// Root index of `α_i` for `i ∈ 0..=6`.
pub fn e6_root(phi: &RootSystem, i: usize) -> usize {
    if i == 0 {
        let neg: Vec<i64> = phi.highest_root().iter().map(|c| -c).collect();
        phi.index_of(&neg).expect("negative highest root")
    } else {
        phi.simple_index(i - 1)
    }
}

/// The element table of the E6 construction.
#[derive(Debug)]
pub struct E6Elements {
    pub adj: Adjoint,
    pub v1: TitsElement,
    pub v2: TitsElement,
    pub v3: TitsElement,
    pub v: TitsElement,
    pub w0_tilde: TitsElement,
    pub w0_prime_tilde: TitsElement,
    pub x: TitsElement,
    pub v_prime: TitsElement,
    pub m: TitsElement,
    pub n: TitsElement,
    pub gamma: TitsElement,
    pub gamma0: TitsElement,
}

impl E6Elements {
    pub fn build() -> Result<Self> {
        let adj = Adjoint::new(RootSystem::shared("E6")?)?;
        let phi = Arc::clone(adj.phi());
        let root = |i| e6_root(&phi, i);
        let v1 = adj.n(root(1), 1)?;
        let v2 = adj.n(root(0), 1)?;
        let v3 = adj.n(root(6), 1)?;
        let v = v1.mul(&v2).mul(&v3);
        let all: Vec<usize> = (0..6).collect();
        let w0_tilde = adj.section(&longest_element(&phi, &all))?;
        let w0_prime_tilde = adj.section(&longest_element(&phi, &[1, 2, 3, 4, 5]))?;
        let x = w0_tilde.mul(&w0_prime_tilde);
        let v_prime = match x.order() {
            Some(6) => x.pow(4),
            Some(3) => x.clone(),
            other => return Err(Error::LemmaViolation(format!("x has order {other:?}, expected 3 or 6"))),
        };
        let v_prime_sq = v_prime.mul(&v_prime);
        let v_prime_inv = v_prime.inverse()?;
        let v_prime_sq_inv = v_prime_inv.mul(&v_prime_inv);
        let orbit_product = |k: usize| -> Result<TitsElement> {
            let a = adj.n(k, 1)?;
            let b = v_prime.mul(&a).mul(&v_prime_inv);
            let c = v_prime_sq.mul(&a).mul(&v_prime_sq_inv);
            Ok(a.mul(&b).mul(&c))
        };
        let m = orbit_product(root(0))?;
        let n = orbit_product(root(2))?;
        let gamma = adj.diagram_automorphism(&E6_SYMMETRY)?;
        let gamma0 = gamma.mul(&w0_tilde);
        Ok(E6Elements { adj, v1, v2, v3, v, w0_tilde, w0_prime_tilde, x, v_prime, m, n, gamma, gamma0 })
    }

    pub fn phi(&self) -> &Arc<RootSystem> {
        self.adj.phi()
    }

    /// `h_{α_i}(−1)`.
    pub fn h(&self, i: usize) -> Result<TitsElement> {
        self.adj.h(e6_root(self.phi(), i), -1)
    }

    fn h_product(&self, labels: &[usize]) -> Result<TitsElement> {
        let mut out = self.adj.identity();
        for &i in labels {
            out = out.mul(&self.h(i)?);
        }
        Ok(out)
    }

    /// `γ g γ⁻¹`; `γ` is an involution.
    pub fn apply_gamma(&self, g: &TitsElement) -> TitsElement {
        self.gamma.mul(g).mul(&self.gamma)
    }

    /// Permutation of `{α_0, …, α_6}` induced by `v′`, if it preserves that set.
    pub fn extended_diagram_action(&self) -> Result<Option<Vec<usize>>> {
        let phi = self.phi();
        let w = self.adj.weyl_image(&self.v_prime)?;
        let ext: Vec<usize> = (0..=6).map(|i| e6_root(phi, i)).collect();
        Ok(ext.iter().map(|&k| ext.iter().position(|&t| t == w.apply(k))).collect())
    }

    /// The group `⟨v₁, v₂, v₃, v′⟩`.
    pub fn v_group(&self) -> Result<SmallGroup> {
        self.adj.generate(&[self.v1.clone(), self.v2.clone(), self.v3.clone(), self.v_prime.clone()], GROUP_CAP)
    }
}

fn h_subgroup(g: &SmallGroup, adj: &Adjoint) -> Subgroup {
    Subgroup::from_mask((0..g.order()).map(|i| adj.perm_in_h(g.element(i))).collect())
}

fn subgroup_of(g: &SmallGroup, adj: &Adjoint, gens: &[TitsElement]) -> Result<Option<Subgroup>> {
    let mut idx = Vec::new();
    for e in gens {
        match g.index_of(&adj.signed_perm(e)?) {
            Some(i) => idx.push(i),
            None => return Ok(None),
        }
    }
    Ok(Some(g.subgroup(&idx)))
}

fn weyl_image_order(g: &SmallGroup, adj: &Adjoint) -> usize {
    g.elements().iter().map(|p| adj.root_perm(p)).collect::<HashSet<_>>().len()
}

fn is_elementary_abelian_2(g: &SmallGroup, s: &Subgroup) -> bool {
    g.is_abelian_subgroup(s) && s.members().iter().all(|&i| g.pow(i, 2) == 0)
}

/// Outcome of the checks on `⟨v₁, v₂, v₃, v′⟩`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Chevalley2Report {
    pub x_order: u64,
    pub v_prime_order: u64,
    pub extended_diagram_order: Option<u64>,
    pub gamma_inverts_x: bool,
    pub m_n_centralize_v_prime: bool,
    pub alpha4_sign: i64,
    pub generators_commute: bool,
    pub gamma_stable: bool,
    pub order: usize,
    pub wreath_recognized: bool,
    pub wreath_permutation: Vec<usize>,
    pub h_intersection_order: usize,
    pub h_intersection_elementary_abelian: bool,
    /// Equals `⟨h_{α₁}(−1), h_{α₄}(−1), h_{α₆}(−1)⟩`.
    pub matches_alpha4_generators: bool,
    /// Equals `⟨h_{α₁}(−1), h_{α₀}(−1), h_{α₆}(−1)⟩`.
    pub matches_alpha0_generators: bool,
    pub fixes_alpha4_vectors: bool,
}

impl Chevalley2Report {
    pub fn passed(&self) -> bool {
        self.v_prime_order == 3
            && self.extended_diagram_order == Some(3)
            && self.gamma_inverts_x
            && self.m_n_centralize_v_prime
            && self.alpha4_sign == 1
            && self.generators_commute
            && self.gamma_stable
            && self.order == 192
            && self.wreath_recognized
            && self.h_intersection_order == 8
            && self.h_intersection_elementary_abelian
            && self.matches_alpha4_generators
            && self.matches_alpha0_generators
            && self.fixes_alpha4_vectors
    }
}

pub fn verify_chevalley2(el: &E6Elements) -> Result<Chevalley2Report> {
    let adj = &el.adj;
    let phi = el.phi();
    let x_order = el.x.order().unwrap_or(0);
    let v_prime_order = el.v_prime.order().unwrap_or(0);
    let extended_diagram_order = el.extended_diagram_action()?.map(|p| {
        let p32: Vec<u32> = p.iter().map(|&i| i as u32).collect();
        perm_order(&p32)
    });
    let gamma_inverts_x = el.apply_gamma(&el.x) == el.x.inverse()?;
    let m_n_centralize_v_prime = el.m.commutes_with(&el.v_prime) && el.n.commutes_with(&el.v_prime);
    let alpha4 = e6_root(phi, 4);
    let (img, alpha4_sign) = adj.conjugation_sign(&el.v_prime, alpha4)?;
    let alpha4_sign = if img == alpha4 { alpha4_sign } else { 0 };
    let vs = [&el.v1, &el.v2, &el.v3];
    let generators_commute = (0..3).all(|i| (i + 1..3).all(|j| vs[i].commutes_with(vs[j])));

    let g = el.v_group()?;
    let gens: Vec<TitsElement> = vec![el.v1.clone(), el.v2.clone(), el.v3.clone(), el.v_prime.clone()];
    let mut gamma_stable = true;
    for e in &gens {
        if g.index_of(&adj.signed_perm(&el.apply_gamma(e))?).is_none() {
            gamma_stable = false;
        }
    }
    let idx = |e: &TitsElement| -> Result<usize> {
        g.index_of(&adj.signed_perm(e)?).ok_or(Error::Precondition("element outside the group".into()))
    };
    let components = vec![vec![idx(&el.v1)?], vec![idx(&el.v2)?], vec![idx(&el.v3)?]];
    let (wreath_recognized, wreath_permutation) = match wreath_recognize(&g, &components, idx(&el.v_prime)?) {
        Ok(w) => (w.recognized, w.permutation),
        Err(_) => (false, Vec::new()),
    };
    let hs = h_subgroup(&g, adj);
    let h_intersection_elementary_abelian = is_elementary_abelian_2(&g, &hs);
    let with4 = subgroup_of(&g, adj, &[el.h(1)?, el.h(4)?, el.h(6)?])?;
    let with0 = subgroup_of(&g, adj, &[el.h(1)?, el.h(0)?, el.h(6)?])?;
    let plus = alpha4 as u32;
    let minus = phi.neg_index(alpha4) as u32;
    let fixes_alpha4_vectors = g.elements().iter().all(|p| p[plus as usize] == plus && p[minus as usize] == minus);
    Ok(Chevalley2Report {
        x_order,
        v_prime_order,
        extended_diagram_order,
        gamma_inverts_x,
        m_n_centralize_v_prime,
        alpha4_sign,
        generators_commute,
        gamma_stable,
        order: g.order(),
        wreath_recognized,
        wreath_permutation,
        h_intersection_order: hs.order(),
        h_intersection_elementary_abelian,
        matches_alpha4_generators: with4.as_ref() == Some(&hs),
        matches_alpha0_generators: with0.as_ref() == Some(&hs),
        fixes_alpha4_vectors,
    })
}

/// Outcome of the checks on `⟨m, n^{d²}⟩`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Chevalley3Report {
    pub d: u32,
    pub order: usize,
    pub weyl_image_order: usize,
    pub h_intersection_order: usize,
    /// Equals `⟨h₀h₁h₆(−1), (h₂h₃h₅(−1))^d⟩`.
    pub h_intersection_matches: bool,
    pub n_power_in_h: bool,
    pub n_power_trivial: bool,
    pub notation_flag: Option<String>,
}

impl Chevalley3Report {
    /// Literal statement: the intersection matches and `W`-image has the expected order.
    pub fn passed(&self, expected_weyl_image: usize) -> bool {
        self.h_intersection_matches && self.weyl_image_order == expected_weyl_image
    }
}

pub fn verify_chevalley3(el: &E6Elements, d: u32) -> Result<Chevalley3Report> {
    if d != 1 && d != 2 {
        return Err(Error::Precondition(format!("d must be 1 or 2, got {d}")));
    }
    let adj = &el.adj;
    let np = el.n.pow(u64::from(d * d));
    let g = adj.generate(&[el.m.clone(), np.clone()], GROUP_CAP)?;
    let hs = h_subgroup(&g, adj);
    let a = el.h_product(&[0, 1, 6])?;
    let b = el.h_product(&[2, 3, 5])?.pow(u64::from(d));
    let claimed = subgroup_of(&g, adj, &[a, b])?;
    let n_power_in_h = adj.in_h(&np);
    let n_power_trivial = np.is_identity();
    let notation_flag = (d == 2).then(|| {
        format!(
            "n^4 is {} so the second generator contributes nothing to the Weyl image",
            if n_power_trivial { "trivial" } else { "a torus element" }
        )
    });
    Ok(Chevalley3Report {
        d,
        order: g.order(),
        weyl_image_order: weyl_image_order(&g, adj),
        h_intersection_order: hs.order(),
        h_intersection_matches: claimed.as_ref() == Some(&hs),
        n_power_in_h,
        n_power_trivial,
        notation_flag,
    })
}

/// Permutation of the extended diagram, rendered with Bourbaki labels.
pub fn render_extended_action(p: &[usize]) -> String {
    p.iter().enumerate().map(|(i, j)| format!("a{i}->a{j}")).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha0_is_negative_highest_root() {
        let phi = RootSystem::of_type("E6").unwrap();
        let k = e6_root(&phi, 0);
        assert!(!phi.is_positive(k));
        assert_eq!(phi.root(k), &vec![-1, -2, -2, -3, -2, -1]);
    }

    #[test]
    fn e6_construction_checks() {
        let el = E6Elements::build().unwrap();
        let r = verify_chevalley2(&el).unwrap();
        assert!(r.passed(), "{r:?}");
        let c1 = verify_chevalley3(&el, 1).unwrap();
        assert!(c1.passed(6), "{c1:?}");
        let c2 = verify_chevalley3(&el, 2).unwrap();
        assert!(c2.passed(2), "{c2:?}");
    }
}
