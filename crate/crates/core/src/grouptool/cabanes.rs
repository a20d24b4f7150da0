//! Abelian normal subgroups, quadratic action, wreath recognition.

use std::collections::HashSet;

use super::{perm_identity, Fingerprint, Perm, SmallGroup, Subgroup};
use crate::error::{Error, Result};

const SCAN_LIMIT: usize = 10_000;

/// All abelian normal subgroups.
pub fn abelian_normal_subgroups(g: &SmallGroup) -> Result<Vec<Subgroup>> {
    if g.order() > SCAN_LIMIT {
        return Err(Error::CapExceeded { cap: SCAN_LIMIT as u64, needed: g.order() as u64 });
    }
    let mut found: Vec<Subgroup> = vec![g.trivial()];
    let mut seen: HashSet<Vec<usize>> = HashSet::from([g.trivial().members().to_vec()]);
    for cls in g.conjugacy_classes() {
        let n = g.normal_closure(&cls[..1]);
        if g.is_abelian_subgroup(&n) && seen.insert(n.members().to_vec()) {
            found.push(n);
        }
    }
    let mut start = 0;
    loop {
        let len = found.len();
        let mut fresh = Vec::new();
        for i in 0..len {
            for j in (i + 1).max(start)..len {
                if found[i].is_subset(&found[j]) || found[j].is_subset(&found[i]) {
                    continue;
                }
                let joined = g.join(&found[i], &found[j]);
                if g.is_abelian_subgroup(&joined) && seen.insert(joined.members().to_vec()) {
                    fresh.push(joined);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        start = len;
        found.extend(fresh);
    }
    found.sort_by_key(|s| (s.order(), s.members().to_vec()));
    Ok(found)
}

#[derive(Clone, Debug)]
pub struct CabanesVerdict {
    pub is_cabanes: bool,
    pub maximal: Vec<Subgroup>,
}

/// Cabanes iff there is exactly one maximal abelian normal subgroup.
pub fn is_cabanes(g: &SmallGroup) -> Result<CabanesVerdict> {
    let all = abelian_normal_subgroups(g)?;
    let maximal: Vec<Subgroup> = all
        .iter()
        .filter(|a| !all.iter().any(|b| b.order() > a.order() && a.is_subset(b)))
        .cloned()
        .collect();
    Ok(CabanesVerdict { is_cabanes: maximal.len() == 1, maximal })
}

/// Cosets of `A` acting quadratically, with the involution-only filters.
#[derive(Clone, Debug)]
pub struct QuadraticReport {
    /// Representatives of nontrivial cosets `hA` with `[h,[h,A]] = 1`.
    pub quadratic: Vec<usize>,
    /// Representatives of cosets of order 2 in `G/A` with `(ʰt t⁻¹)² = 1` on `A`.
    pub involution_filter: Vec<usize>,
    /// Elements `h ∉ A` with `h² = 1` and `(ʰt t⁻¹)² = 1` on `A`.
    pub literal_involutions: Vec<usize>,
    pub quotient_is_two_group: bool,
}

impl QuadraticReport {
    /// The general scan and the quotient-involution scan agree (required when `G/A` is a 2-group).
    pub fn filters_agree(&self) -> bool {
        !self.quotient_is_two_group || self.quadratic.is_empty() == self.involution_filter.is_empty()
    }
}

fn acts_quadratically(g: &SmallGroup, h: usize, a: &Subgroup) -> bool {
    a.members().iter().all(|&t| {
        let c = g.commutator(h, t);
        g.commutator(h, c) == 0
    })
}

fn square_condition(g: &SmallGroup, h: usize, a: &Subgroup) -> bool {
    a.members().iter().all(|&t| {
        let x = g.mul(g.conj(h, t), g.inv(t));
        g.mul(x, x) == 0
    })
}

pub fn quadratic_elements(g: &SmallGroup, a: &Subgroup) -> Result<QuadraticReport> {
    if !g.is_normal(a) || !g.is_abelian_subgroup(a) {
        return Err(Error::Precondition("A must be an abelian normal subgroup".into()));
    }
    let (_, reps) = g.coset_labels(a);
    let mut quadratic = Vec::new();
    let mut involution_filter = Vec::new();
    for &h in reps.iter().skip(1) {
        if acts_quadratically(g, h, a) {
            quadratic.push(h);
        }
        if a.contains(g.mul(h, h)) && square_condition(g, h, a) {
            involution_filter.push(h);
        }
    }
    let literal_involutions = (0..g.order())
        .filter(|&h| !a.contains(h) && g.mul(h, h) == 0 && square_condition(g, h, a))
        .collect();
    let index = reps.len();
    Ok(QuadraticReport {
        quadratic,
        involution_filter,
        literal_involutions,
        quotient_is_two_group: index.is_power_of_two(),
    })
}

/// Output of the wreath recognition.
#[derive(Clone, Debug)]
pub struct WreathWitness {
    pub recognized: bool,
    /// Permutation of the components induced by conjugation with `x`.
    pub permutation: Vec<usize>,
    /// `y = f(a)⁻¹ x` with `y^r = 1`.
    pub y: Option<usize>,
    pub fingerprint_match: bool,
    pub fingerprint: Option<Fingerprint>,
}

/// Recognize `G ≅ A ≀ C_r` from a normal `A^r` and an element permuting its factors.
pub fn wreath_recognize(g: &SmallGroup, components: &[Vec<usize>], x: usize) -> Result<WreathWitness> {
    let r = components.len();
    if r == 0 {
        return Err(Error::Precondition("no components".into()));
    }
    let comps: Vec<Subgroup> = components.iter().map(|c| g.subgroup(c)).collect();
    let all: Vec<usize> = components.iter().flatten().copied().collect();
    let n = g.subgroup(&all);
    let expected: usize = comps.iter().map(Subgroup::order).product();
    if n.order() != expected || comps.iter().any(|c| c.order() != comps[0].order()) {
        return Err(Error::Precondition("components do not form a direct power".into()));
    }
    if !g.is_normal(&n) || g.order() != n.order() * r {
        return Err(Error::Precondition("A^r must be normal of index r".into()));
    }
    if r > 1 && n.contains(x) {
        return Err(Error::Precondition("x lies in A^r".into()));
    }
    let base = g.subgroup_as_group(&comps[0])?;
    if r == 1 {
        return Ok(WreathWitness {
            recognized: true,
            permutation: vec![0],
            y: Some(0),
            fingerprint_match: true,
            fingerprint: Some(g.fingerprint()),
        });
    }
    let mut permutation = Vec::with_capacity(r);
    for c in &comps {
        let img: Vec<usize> = {
            let mut v: Vec<usize> = c.members().iter().map(|&t| g.conj(x, t)).collect();
            v.sort_unstable();
            v
        };
        match comps.iter().position(|d| d.members() == img.as_slice()) {
            Some(j) => permutation.push(j),
            None => {
                return Ok(WreathWitness {
                    recognized: false,
                    permutation,
                    y: None,
                    fingerprint_match: false,
                    fingerprint: None,
                })
            }
        }
    }
    let mut orbit = 1;
    let mut k = permutation[0];
    while k != 0 {
        orbit += 1;
        k = permutation[k];
    }
    if orbit != r {
        return Ok(WreathWitness { recognized: false, permutation, y: None, fingerprint_match: false, fingerprint: None });
    }
    let xr = g.pow(x, r as u64);
    let xi = g.inv(x);
    let mut y = None;
    for &a in comps[0].members() {
        // f(a) · ˣf(a) ⋯ ˣ^{r−1}f(a)
        let mut prod = 0;
        let mut term = a;
        for _ in 0..r {
            prod = g.mul(prod, term);
            term = g.mul(g.mul(x, term), xi);
        }
        if prod == xr {
            let cand = g.mul(g.inv(a), x);
            if g.pow(cand, r as u64) == 0 {
                y = Some(cand);
                break;
            }
        }
    }
    let fp = g.fingerprint();
    let reference = wreath_product(&base, r)?.fingerprint();
    let fingerprint_match = fp == reference;
    Ok(WreathWitness { recognized: y.is_some() && fingerprint_match, permutation, y, fingerprint_match, fingerprint: Some(fp) })
}

/// `A ≀ C_r` acting on `r` copies of the points of `A`.
pub fn wreath_product(a: &SmallGroup, r: usize) -> Result<SmallGroup> {
    let d = a.degree();
    let n = d * r;
    let mut gens: Vec<Perm> = Vec::new();
    for &g in a.generators() {
        let mut p = perm_identity(n);
        for (i, &v) in a.element(g).iter().enumerate() {
            p[i] = v;
        }
        gens.push(p);
    }
    let shift: Perm = (0..n).map(|i| ((i + d) % n) as u32).collect();
    gens.push(shift);
    let order = (a.order() as u64).pow(r as u32) * r as u64;
    SmallGroup::generate(&gens, order)
}

#[derive(Clone, Debug)]
pub struct CharacteristicReport {
    pub derived_order: usize,
    pub a_order: usize,
    pub derived_index_two: bool,
    pub centralizer_is_a: bool,
}

impl CharacteristicReport {
    pub fn passed(&self) -> bool {
        self.derived_index_two && self.centralizer_is_a
    }
}

/// `(C_a × C_a) ⋊ (C₂ × C₂)` with one involution inverting and one swapping, plus the subgroup `A`.
pub fn characteristic_example(a: u64) -> Result<(SmallGroup, Subgroup)> {
    if a % 4 != 0 || a == 0 {
        return Err(Error::Precondition(format!("4 must divide a (got {a})")));
    }
    let a = a as usize;
    let n = 2 * a;
    let t1: Perm = (0..n).map(|i| if i < a { ((i + 1) % a) as u32 } else { i as u32 }).collect();
    let t2: Perm = (0..n).map(|i| if i >= a { (a + (i - a + 1) % a) as u32 } else { i as u32 }).collect();
    let inv: Perm = (0..n).map(|i| if i < a { ((a - i) % a) as u32 } else { (a + (a - (i - a)) % a) as u32 }).collect();
    let swap: Perm = (0..n).map(|i| ((i + a) % n) as u32).collect();
    let h = SmallGroup::generate(&[t1.clone(), t2.clone(), inv, swap], (4 * a * a) as u64)?;
    let sub = h.subgroup(&[h.index_of(&t1).expect("t1"), h.index_of(&t2).expect("t2")]);
    Ok((h, sub))
}

/// Checks `[H,H]` has index 2 in `A` and `C_H([H,H]) = A`.
pub fn characteristic_check(h: &SmallGroup, a: &Subgroup) -> Result<CharacteristicReport> {
    if !h.is_normal(a) || !h.is_abelian_subgroup(a) || h.order() != 4 * a.order() {
        return Err(Error::Precondition("A must be abelian normal of index 4".into()));
    }
    let q = h.quotient(a)?;
    if q.order_histogram().get(&2).copied() != Some(3) {
        return Err(Error::Precondition("H/A must be a Klein four-group".into()));
    }
    let d = h.derived_subgroup();
    let c = h.centralizer(d.members());
    Ok(CharacteristicReport {
        derived_order: d.order(),
        a_order: a.order(),
        derived_index_two: d.is_subset(a) && 2 * d.order() == a.order(),
        centralizer_is_a: c == *a,
    })
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;

    #[test]
    fn d8_and_q8_not_cabanes() {
        for g in [dihedral(4), quaternion()] {
            let v = is_cabanes(&g).unwrap();
            assert!(!v.is_cabanes);
            assert_eq!(v.maximal.len(), 3);
            assert!(v.maximal.iter().all(|m| m.order() == 4));
        }
    }

    #[test]
    fn abelian_is_cabanes() {
        let g = direct_product(&cyclic(4), &cyclic(2));
        let v = is_cabanes(&g).unwrap();
        assert!(v.is_cabanes);
        assert_eq!(v.maximal[0].order(), 8);
    }

    #[test]
    fn characteristic_gate() {
        assert!(characteristic_example(2).is_err());
        assert!(characteristic_example(6).is_err());
        let (h, a) = characteristic_example(4).unwrap();
        assert!(characteristic_check(&h, &a).unwrap().passed());
    }
}
