//! Weyl orbits of torsion points, stabilizer orders and fixed spaces.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::rootsys::{classify_subsystem, RootSystem, SubSystem};

use super::DualTorusElement;

const ORBIT_CAP: usize = 5_000_000;
const SCHREIER_CAP: usize = 100_000;

/// Centralizer data of a torsion point.
#[derive(Clone, Debug)]
pub struct CentralizerData {
    pub subsystem: SubSystem,
    pub label: String,
    pub orbit_size: u64,
    /// `|W(s)|`.
    pub stabilizer_order: u128,
    /// `|W°(s)|`.
    pub reflection_order: u128,
    /// `|A(s)| = |W(s)| / |W°(s)|`.
    pub component_order: u128,
    pub isolated: bool,
    /// `None` when the orbit is too large for the Schreier computation.
    pub quasi_isolated: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct TorsionClass {
    pub representative: DualTorusElement,
    pub centralizer: CentralizerData,
}

fn encode(a: &[i64], n: i64) -> u64 {
    a.iter().rev().fold(0u64, |acc, &x| acc * n as u64 + x as u64)
}

fn decode(mut idx: u64, n: i64, r: usize) -> Vec<i64> {
    (0..r)
        .map(|_| {
            let x = (idx % n as u64) as i64;
            idx /= n as u64;
            x
        })
        .collect()
}

fn reflect_point(phi: &RootSystem, a: &[i64], i: usize, n: i64) -> Vec<i64> {
    let c = phi.cartan();
    (0..a.len()).map(|j| (a[j] - c[(i, j)] * a[i]).rem_euclid(n)).collect()
}

/// W-orbit of `s` as pairing vectors, in BFS order, with the BFS tree `(parent, generator)`.
fn orbit_tree(phi: &RootSystem, s: &DualTorusElement, cap: usize) -> Result<(Vec<Vec<i64>>, Vec<(usize, usize)>)> {
    let n = s.modulus();
    let mut pts = vec![s.pairing().to_vec()];
    let mut tree = vec![(usize::MAX, usize::MAX)];
    let mut seen: HashMap<u64, usize> = HashMap::from([(encode(s.pairing(), n), 0)]);
    let mut head = 0;
    while head < pts.len() {
        for i in 0..phi.rank() {
            let y = reflect_point(phi, &pts[head], i, n);
            let key = encode(&y, n);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                if pts.len() >= cap {
                    return Err(Error::CapExceeded { cap: cap as u64, needed: pts.len() as u64 + 1 });
                }
                e.insert(pts.len());
                pts.push(y);
                tree.push((head, i));
            }
        }
        head += 1;
    }
    Ok((pts, tree))
}

/// W-orbit of `s`.
pub fn orbit(phi: &RootSystem, s: &DualTorusElement) -> Result<Vec<DualTorusElement>> {
    let (pts, _) = orbit_tree(phi, s, ORBIT_CAP)?;
    pts.into_iter().map(|p| DualTorusElement::new(s.modulus(), p)).collect()
}

/// `s_i · u` on root coordinates.
fn left_reflect(phi: &RootSystem, u: &IntMatrix, i: usize) -> IntMatrix {
    let c = phi.cartan();
    let r = phi.rank();
    let mut out = u.clone();
    for col in 0..r {
        let p: i64 = (0..r).map(|j| c[(i, j)] * u[(j, col)]).sum();
        out[(i, col)] -= p;
    }
    out
}

/// Dimension of the fixed space of `Stab_W(s)` on the reflection representation, from Schreier generators.
pub fn fixed_space_dim(phi: &RootSystem, s: &DualTorusElement) -> Result<usize> {
    let r = phi.rank();
    let (pts, tree) = orbit_tree(phi, s, SCHREIER_CAP)?;
    let n = s.modulus();
    let index: HashMap<u64, usize> = pts.iter().enumerate().map(|(k, p)| (encode(p, n), k)).collect();
    let mut u: Vec<IntMatrix> = Vec::with_capacity(pts.len());
    for (k, &(parent, i)) in tree.iter().enumerate() {
        if k == 0 {
            u.push(IntMatrix::identity(r));
        } else {
            let m = left_reflect(phi, &u[parent], i);
            u.push(m);
        }
    }
    // fixed vectors as columns
    let mut basis: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    for (x, p) in pts.iter().enumerate() {
        for i in 0..r {
            if basis.is_empty() {
                return Ok(0);
            }
            let y = index[&encode(&reflect_point(phi, p, i, n), n)];
            if tree[y] == (x, i) {
                continue;
            }
            // g = u_y⁻¹ s_i u_x fixes f iff (s_i u_x − u_y) f = 0
            let h = left_reflect(phi, &u[x], i).sub(&u[y]);
            if basis.iter().all(|f| h.mul_vec(f).iter().all(|&v| v == 0)) {
                continue;
            }
            let b = IntMatrix::from_cols(&basis);
            let ker = h.mul_mat(&b).kernel();
            basis = ker.iter().map(|c| b.mul_vec(c)).collect();
        }
    }
    Ok(basis.len())
}

fn centralizer_with_orbit(phi: &RootSystem, s: &DualTorusElement, orbit_size: u64) -> Result<CentralizerData> {
    let subsystem = classify_subsystem(phi, &s.root_indices(phi))?;
    let label = subsystem.label().to_string();
    let weyl_order = phi.label().weyl_order();
    let stabilizer_order = weyl_order / u128::from(orbit_size);
    let reflection_order = subsystem.label().weyl_order();
    if stabilizer_order % reflection_order != 0 {
        return Err(Error::LemmaViolation(format!("|W°(s)| = {reflection_order} does not divide |W(s)| = {stabilizer_order}")));
    }
    let isolated = subsystem.rank() == phi.rank();
    let quasi_isolated = if isolated {
        Some(true)
    } else {
        match fixed_space_dim(phi, s) {
            Ok(d) => Some(d == 0),
            Err(Error::CapExceeded { .. }) => None,
            Err(e) => return Err(e),
        }
    };
    Ok(CentralizerData {
        label,
        orbit_size,
        stabilizer_order,
        reflection_order,
        component_order: stabilizer_order / reflection_order,
        isolated,
        quasi_isolated,
        subsystem,
    })
}

pub fn centralizer(phi: &RootSystem, s: &DualTorusElement) -> Result<CentralizerData> {
    if s.rank() != phi.rank() {
        return Err(Error::Precondition("rank mismatch".into()));
    }
    let (pts, _) = orbit_tree(phi, s, ORBIT_CAP)?;
    centralizer_with_orbit(phi, s, pts.len() as u64)
}

/// All `n`-torsion points of the adjoint dual torus up to W-conjugacy; representatives have minimal encoding.
pub fn classify_torsion(phi: &RootSystem, n: i64) -> Result<Vec<TorsionClass>> {
    if n < 1 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let r = phi.rank();
    let total = (n as u64).checked_pow(r as u32).filter(|&t| t <= ORBIT_CAP as u64).ok_or(Error::CapExceeded {
        cap: ORBIT_CAP as u64,
        needed: u64::MAX,
    })?;
    let mut seen = vec![false; total as usize];
    let mut out = Vec::new();
    for idx in 0..total {
        if seen[idx as usize] {
            continue;
        }
        let s = DualTorusElement::new(n, decode(idx, n, r))?;
        let (pts, _) = orbit_tree(phi, &s, ORBIT_CAP)?;
        for p in &pts {
            seen[encode(p, n) as usize] = true;
        }
        let centralizer = centralizer_with_orbit(phi, &s, pts.len() as u64)?;
        out.push(TorsionClass { representative: s, centralizer });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_class() {
        let phi = RootSystem::of_type("A2").unwrap();
        let classes = classify_torsion(&phi, 1).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].centralizer.component_order, 1);
        assert!(classes[0].centralizer.isolated);
    }

    #[test]
    fn a1_two_torsion() {
        let phi = RootSystem::of_type("A1").unwrap();
        let classes = classify_torsion(&phi, 2).unwrap();
        let sizes: Vec<u64> = classes.iter().map(|c| c.centralizer.orbit_size).collect();
        assert_eq!(sizes, vec![1, 1]);
        assert_eq!(classes[1].centralizer.label, "∅");
        assert_eq!(classes[1].centralizer.quasi_isolated, Some(true));
        assert!(!classes[1].centralizer.isolated);
    }
}
