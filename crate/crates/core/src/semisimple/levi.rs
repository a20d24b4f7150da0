//! d-split Levi subsystems, rational forms and relative Weyl groups of twisted centralizers.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{cyclotomic, poly_div_exact, CyclotomicOrder, Poly};
use crate::error::{Error, Result};
use crate::grouptool::{Fingerprint, Perm, SmallGroup};
use crate::matrix::IntMatrix;
use crate::rootsys::{classify_subsystem, CartanType, RootSystem, SubSystem};
use crate::weyl::{WeylElement, WeylGroup};

use super::DualTorusElement;

/// `Φ_d(M)` for a square integer matrix.
pub fn cyclotomic_matrix(m: &IntMatrix, d: u32) -> IntMatrix {
    let p = cyclotomic(d);
    let n = m.rows();
    let mut acc = IntMatrix::zeros(n, n);
    for c in p.iter().rev() {
        let c = i64::try_from(c).expect("small cyclotomic coefficient");
        acc = acc.mul_mat(m).add(&IntMatrix::identity(n).scale(c));
    }
    acc
}

/// Rational kernel of `Φ_d(M)`.
pub fn d_kernel(m: &IntMatrix, d: u32) -> Vec<Vec<i64>> {
    cyclotomic_matrix(m, d).kernel()
}

/// Roots orthogonal to every vector of `kernel`.
pub fn levi_roots(phi: &RootSystem, kernel: &[Vec<i64>]) -> Vec<usize> {
    (0..phi.len()).filter(|&k| kernel.iter().all(|v| phi.inner(phi.root(k), v) == 0)).collect()
}

/// Coordinates of `v` in the columns of `basis`, if `v` lies in their span with integral coordinates.
fn solve_in_basis(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let k = basis.len();
    let r = v.len();
    let mut rows: Vec<Vec<Ratio<i64>>> =
        (0..r).map(|i| (0..k).map(|j| Ratio::from(basis[j][i])).chain([Ratio::from(v[i])]).collect()).collect();
    let mut piv = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..r).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(row, p);
        let inv = Ratio::one() / rows[row][col];
        for x in rows[row].iter_mut() {
            *x *= inv;
        }
        for i in 0..r {
            if i != row && !rows[i][col].is_zero() {
                let f = rows[i][col];
                for j in 0..=k {
                    let t = rows[row][j] * f;
                    rows[i][j] -= t;
                }
            }
        }
        piv.push(col);
        row += 1;
    }
    if piv.len() != k || rows[row..].iter().any(|x| !x[k].is_zero()) {
        return None;
    }
    let mut out = vec![0i64; k];
    for (i, &c) in piv.iter().enumerate() {
        if !rows[i][k].is_integer() {
            return None;
        }
        out[c] = rows[i][k].to_integer();
    }
    Some(out)
}

/// Characteristic polynomial of `w` on the span of the given roots; the span must be `w`-stable.
pub fn restricted_charpoly(phi: &RootSystem, w: &WeylElement, base: &[usize]) -> Result<Poly> {
    if base.is_empty() {
        return Ok(vec![BigInt::one()]);
    }
    let cols: Vec<Vec<i64>> = base.iter().map(|&b| phi.root(b).clone()).collect();
    let mut a = Vec::with_capacity(base.len());
    for &b in base {
        let img = phi.root(w.apply(b));
        a.push(solve_in_basis(&cols, img).ok_or_else(|| Error::BadTwist("span is not stable".into()))?);
    }
    Ok(IntMatrix::from_cols(&a).charpoly())
}

/// Polynomial order of the twist on the complement of `span(sub)`.
pub fn torus_part(phi: &RootSystem, w: &WeylElement, sub: &SubSystem) -> Result<CyclotomicOrder> {
    let full = w.matrix().charpoly();
    let part = restricted_charpoly(phi, w, &sub.base)?;
    let quo = poly_div_exact(&full, &part).ok_or(Error::Inexact("restricted characteristic polynomial"))?;
    CyclotomicOrder::from_polynomial(&quo)
}

fn stabilizes(w: &WeylElement, set: &[usize]) -> bool {
    let s: HashSet<usize> = set.iter().copied().collect();
    set.iter().all(|&k| s.contains(&w.apply(k)))
}

/// `u·w` with `u ∈ W(sub)` such that `u·w` maps the positive roots of `sub` to themselves.
pub fn normalize_twist(phi: &RootSystem, sub: &SubSystem, w: &WeylElement) -> Result<WeylElement> {
    if !stabilizes(w, &sub.roots) {
        return Err(Error::BadTwist("twist does not stabilize the subsystem".into()));
    }
    let mut cur = w.clone();
    loop {
        let bad = sub.base.iter().copied().find(|&b| {
            // some simple root of sub is the image of a negative root of sub
            let pre = cur.inverse(phi).apply(b);
            !phi.is_positive(pre)
        });
        match bad {
            None => return Ok(cur),
            Some(b) => cur = WeylElement::reflection(phi, b).compose(phi, &cur),
        }
    }
}

/// One orbit of components under a twist.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalComponent {
    pub cartan: CartanType,
    /// Orbit length: the component is defined over `q^degree`.
    pub degree: u32,
    /// Order of the diagram automorphism induced by the return map.
    pub twist: u32,
}

impl fmt::Display for RationalComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twist > 1 {
            write!(f, "{}", self.twist)?;
        }
        if self.degree == 1 {
            write!(f, "{}(q)", self.cartan)
        } else {
            write!(f, "{}(q^{})", self.cartan, self.degree)
        }
    }
}

/// Rational form: central torus part and component orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalType {
    pub torus: CyclotomicOrder,
    pub components: Vec<RationalComponent>,
}

impl fmt::Display for RationalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.torus != CyclotomicOrder::one() {
            parts.push(self.torus.to_string());
        }
        let mut i = 0;
        while i < self.components.len() {
            let c = &self.components[i];
            let mut j = i;
            while j < self.components.len() && self.components[j] == *c {
                j += 1;
            }
            if j - i > 1 {
                parts.push(format!("{c}^{}", j - i));
            } else {
                parts.push(c.to_string());
            }
            i = j;
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("."))
        }
    }
}

/// Rational type of the subsystem `sub` under the Frobenius twist `w`.
pub fn rational_type(phi: &RootSystem, sub: &SubSystem, w: &WeylElement) -> Result<RationalType> {
    let torus = torus_part(phi, w, sub)?;
    let m = normalize_twist(phi, sub, w)?;
    let comps = &sub.components;
    let which = |k: usize| comps.iter().position(|c| c.1.contains(&k));
    let target: Vec<usize> = comps
        .iter()
        .map(|c| which(m.apply(c.1[0])).ok_or_else(|| Error::BadTwist("twist does not permute components".into())))
        .collect::<Result<_>>()?;
    let mut done = vec![false; comps.len()];
    let mut out = Vec::new();
    for start in 0..comps.len() {
        if done[start] {
            continue;
        }
        let mut len = 0u32;
        let mut k = start;
        loop {
            done[k] = true;
            len += 1;
            k = target[k];
            if k == start {
                break;
            }
        }
        // return map on the base of the component
        let ret = m.pow(phi, u64::from(len));
        let base = &comps[start].1;
        let perm: Vec<u32> = base
            .iter()
            .map(|&b| base.iter().position(|&c| c == ret.apply(b)).map(|p| p as u32))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::BadTwist("return map does not fix the base".into()))?;
        out.push(RationalComponent { cartan: comps[start].0, degree: len, twist: crate::grouptool::perm_order(&perm) as u32 });
    }
    out.sort_by(|a, b| b.degree.cmp(&a.degree).then(a.twist.cmp(&b.twist)).then(b.cartan.cmp(&a.cartan)));
    Ok(RationalType { torus, components: out })
}

/// Outcome of the minimal d-split Levi check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MinimalSplitReport {
    pub d: u32,
    pub kernel_dim: usize,
    pub levi_roots: Vec<usize>,
    pub levi_label: String,
    pub twist_stabilizes_levi: bool,
    pub matches_candidate: Option<bool>,
    /// `Φ_L ∩ Φ(s) = ∅`.
    pub centralizer_is_torus: bool,
    pub torus_part: CyclotomicOrder,
}

impl MinimalSplitReport {
    pub fn passed(&self) -> bool {
        self.twist_stabilizes_levi && self.centralizer_is_torus && self.matches_candidate != Some(false)
    }
}

pub fn verify_minimal_d_split(
    phi: &RootSystem,
    s: &DualTorusElement,
    twist: &WeylElement,
    d: u32,
    candidate: Option<&[usize]>,
) -> Result<MinimalSplitReport> {
    let kernel = d_kernel(twist.matrix(), d);
    let roots = levi_roots(phi, &kernel);
    let sub = classify_subsystem(phi, &roots)?;
    let phi_s: HashSet<usize> = s.root_indices(phi).into_iter().collect();
    let matches_candidate = candidate.map(|c| {
        let mut c = c.to_vec();
        c.sort_unstable();
        c.dedup();
        c == roots
    });
    Ok(MinimalSplitReport {
        d,
        kernel_dim: kernel.len(),
        levi_label: sub.label().to_string(),
        twist_stabilizes_levi: stabilizes(twist, &roots),
        matches_candidate,
        centralizer_is_torus: roots.iter().all(|k| !phi_s.contains(k)),
        torus_part: torus_part(phi, twist, &sub)?,
        levi_roots: roots,
    })
}

/// `C_{W(s)}(M) / C_{W(s) ∩ W_L}(M)`.
#[derive(Clone, Debug)]
pub struct RelativeWeyl {
    pub group: SmallGroup,
    pub centralizer_order: usize,
    pub levi_part_order: usize,
}

impl RelativeWeyl {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn fingerprint(&self) -> Fingerprint {
        self.group.fingerprint()
    }
}

/// Relative Weyl group of `(L, s)` under the twist; `s` must be stable up to inversion.
pub fn relative_weyl_block(
    weyl: &WeylGroup,
    s: &DualTorusElement,
    levi: &[usize],
    twist: &WeylElement,
) -> Result<RelativeWeyl> {
    let phi = weyl.root_system();
    let ts = s.act(phi, twist);
    if ts != *s && ts != s.inverse() {
        return Err(Error::BadTwist("twist moves s outside {s, s⁻¹}".into()));
    }
    if !stabilizes(twist, levi) {
        return Err(Error::BadTwist("twist does not stabilize the Levi subsystem".into()));
    }
    let levi_set: HashSet<usize> = levi.iter().copied().collect();
    let lsub = classify_subsystem(phi, levi)?;
    let mut elems: Vec<Perm> = Vec::new();
    let mut in_levi: Vec<bool> = Vec::new();
    for w in weyl.elements() {
        if w.compose(phi, twist) != twist.compose(phi, w) || s.act(phi, w) != *s {
            continue;
        }
        elems.push(w.perm().iter().map(|&x| u32::from(x)).collect());
        in_levi.push(in_reflection_subgroup(phi, w, &lsub, &levi_set));
    }
    let g = SmallGroup::from_elements(elems.clone())?;
    let normal_idx: Vec<usize> =
        elems.iter().zip(&in_levi).filter(|(_, &b)| b).map(|(p, _)| g.index_of(p).expect("member")).collect();
    let n = g.subgroup(&normal_idx);
    if n.order() != normal_idx.len() {
        return Err(Error::LemmaViolation("Levi part is not a subgroup".into()));
    }
    let centralizer_order = g.order();
    let levi_part_order = n.order();
    let group = g.quotient(&n)?;
    Ok(RelativeWeyl { group, centralizer_order, levi_part_order })
}

/// Membership in `W_L = ⟨s_α : α ∈ Φ_L⟩`: reduce by reflections in the base of `Φ_L`; the result is trivial iff `w ∈ W_L`.
fn in_reflection_subgroup(phi: &RootSystem, w: &WeylElement, lsub: &SubSystem, levi: &HashSet<usize>) -> bool {
    if !lsub.roots.iter().all(|&k| levi.contains(&w.apply(k))) {
        return false;
    }
    normalize_twist(phi, lsub, w).is_ok_and(|u| u.is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_identity() {
        let m = IntMatrix::identity(3);
        assert_eq!(d_kernel(&m, 1).len(), 3);
        assert!(d_kernel(&m, 2).is_empty());
    }

    #[test]
    fn solve_roots() {
        assert_eq!(solve_in_basis(&[vec![1, 0], vec![1, 1]], &[2, 1]), Some(vec![1, 1]));
        assert_eq!(solve_in_basis(&[vec![1, 0]], &[0, 1]), None);
    }
}
