//! Weyl group elements, enumeration, parabolic longest elements and involution classes.

use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::grouptool::SmallGroup;
use crate::matrix::IntMatrix;
use crate::rootsys::{Root, RootSystem, SubSystem};

pub const DEFAULT_CAP: u64 = 10_000_000;

/// An automorphism of a root system: a Weyl group element or a lattice symmetry.
#[derive(Clone, Debug)]
pub struct WeylElement {
    perm: Vec<u16>,
    matrix: IntMatrix,
    length: u32,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.perm.hash(state);
    }
}

impl WeylElement {
    pub fn identity(phi: &RootSystem) -> Self {
        let perm: Vec<u16> = (0..phi.len() as u16).collect();
        Self::from_perm(phi, perm)
    }

    pub fn from_perm(phi: &RootSystem, perm: Vec<u16>) -> Self {
        let r = phi.rank();
        let cols: Vec<Vec<i64>> = (0..r).map(|j| phi.root(perm[j] as usize).clone()).collect();
        let matrix = IntMatrix::from_cols(&cols);
        let npos = phi.num_positive();
        let length = perm[..npos].iter().filter(|&&k| k as usize >= npos).count() as u32;
        WeylElement { perm, matrix, length }
    }

    pub fn simple_reflection(phi: &RootSystem, i: usize) -> Self {
        Self::from_perm(phi, phi.simple_reflection(i).to_vec())
    }

    pub fn reflection(phi: &RootSystem, k: usize) -> Self {
        Self::from_perm(phi, phi.root_reflection(k))
    }

    /// `s_{i1} s_{i2} ⋯ s_{ik}`.
    pub fn from_word(phi: &RootSystem, word: &[usize]) -> Result<Self> {
        let mut perm: Vec<u16> = (0..phi.len() as u16).collect();
        for &i in word {
            if i >= phi.rank() {
                return Err(Error::OutOfRange(i));
            }
            let s = phi.simple_reflection(i);
            perm = s.iter().map(|&k| perm[k as usize]).collect();
        }
        Ok(Self::from_perm(phi, perm))
    }

    /// Element from its action on the root lattice; fails unless it permutes the roots.
    pub fn from_matrix(phi: &RootSystem, m: &IntMatrix) -> Result<Self> {
        if m.rows() != phi.rank() || m.cols() != phi.rank() {
            return Err(Error::NotAutomorphism);
        }
        let mut perm = Vec::with_capacity(phi.len());
        for b in phi.roots() {
            let c = m.mul_vec(b);
            perm.push(phi.index_of(&c).ok_or(Error::NotAutomorphism)? as u16);
        }
        Ok(Self::from_perm(phi, perm))
    }

    /// Lattice map induced by a permutation of the simple roots preserving the Cartan matrix.
    pub fn diagram_symmetry(phi: &RootSystem, sigma: &[usize]) -> Result<Self> {
        let r = phi.rank();
        if sigma.len() != r {
            return Err(Error::NotAutomorphism);
        }
        let mut m = IntMatrix::zeros(r, r);
        for (i, &j) in sigma.iter().enumerate() {
            m[(j, i)] = 1;
        }
        Self::from_matrix(phi, &m)
    }

    pub fn perm(&self) -> &[u16] {
        &self.perm
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn apply(&self, k: usize) -> usize {
        self.perm[k] as usize
    }

    pub fn apply_vec(&self, v: &[i64]) -> Vec<i64> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, phi: &RootSystem, other: &WeylElement) -> WeylElement {
        let perm = other.perm.iter().map(|&k| self.perm[k as usize]).collect();
        Self::from_perm(phi, perm)
    }

    pub fn inverse(&self, phi: &RootSystem) -> WeylElement {
        let mut perm = vec![0u16; self.perm.len()];
        for (k, &j) in self.perm.iter().enumerate() {
            perm[j as usize] = k as u16;
        }
        Self::from_perm(phi, perm)
    }

    pub fn pow(&self, phi: &RootSystem, e: u64) -> WeylElement {
        let mut acc = WeylElement::identity(phi);
        for _ in 0..e {
            acc = acc.compose(phi, self);
        }
        acc
    }

    pub fn conjugate_by(&self, phi: &RootSystem, g: &WeylElement) -> WeylElement {
        g.compose(phi, self).compose(phi, &g.inverse(phi))
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &j)| k == j as usize)
    }

    pub fn order(&self) -> u64 {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut ord: u64 = 1;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0u64;
            let mut k = s;
            while !seen[k] {
                seen[k] = true;
                k = self.perm[k] as usize;
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.perm.iter().enumerate().all(|(k, &j)| self.perm[j as usize] as usize == k)
    }

    /// Right descent: `w(α_i) < 0`.
    pub fn has_right_descent(&self, phi: &RootSystem, i: usize) -> bool {
        !phi.is_positive(self.perm[i] as usize)
    }

    /// Reduced word and residual `u` with `self = u · s_{i1}⋯s_{ik}`; `u` fixes the positive roots.
    pub fn reduced_word_with_residual(&self, phi: &RootSystem) -> (Vec<usize>, WeylElement) {
        let mut w = self.clone();
        let mut word = Vec::new();
        'outer: loop {
            for i in 0..phi.rank() {
                if w.has_right_descent(phi, i) {
                    w = w.compose(phi, &WeylElement::simple_reflection(phi, i));
                    word.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        word.reverse();
        (word, w)
    }

    pub fn reduced_word(&self, phi: &RootSystem) -> Vec<usize> {
        self.reduced_word_with_residual(phi).0
    }

    pub fn is_in_weyl_group(&self, phi: &RootSystem) -> bool {
        self.reduced_word_with_residual(phi).1.is_identity()
    }

    /// Action on the coroot lattice in simple-coroot coordinates.
    pub fn coroot_matrix(&self, phi: &RootSystem) -> IntMatrix {
        let r = phi.rank();
        let cols: Vec<Vec<i64>> = (0..r)
            .map(|j| {
                let img = phi.root(self.perm[j] as usize);
                phi.coroot(img)
            })
            .collect();
        IntMatrix::from_cols(&cols)
    }

    /// Maps a set of root indices.
    pub fn image_set(&self, set: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = set.iter().map(|&k| self.perm[k] as usize).collect();
        v.sort_unstable();
        v
    }
}

/// Longest element of the parabolic subgroup on `subset`.
pub fn longest_element(phi: &RootSystem, subset: &[usize]) -> WeylElement {
    let mut w = WeylElement::identity(phi);
    'outer: loop {
        for &i in subset {
            if !w.has_right_descent(phi, i) {
                w = w.compose(phi, &WeylElement::simple_reflection(phi, i));
                continue 'outer;
            }
        }
        return w;
    }
}

/// A simple root moved by `w_I` to a different positive root.
pub fn check_longest_element_lemma(phi: &RootSystem, subset: &[usize]) -> Result<usize> {
    if subset.is_empty() || subset.len() >= phi.rank() {
        return Err(Error::Precondition("subset must be nonempty and proper".into()));
    }
    let w = longest_element(phi, subset);
    (0..phi.rank())
        .find(|&b| {
            let c = w.apply(b);
            c != b && phi.is_positive(c)
        })
        .ok_or_else(|| Error::LemmaViolation(format!("no simple root moved positively by w_I for I = {subset:?}")))
}

/// Full element list with lookup, built by BFS over right multiplication by simple reflections.
#[derive(Debug)]
pub struct WeylGroup {
    phi: Arc<RootSystem>,
    elements: Vec<WeylElement>,
    index: HashMap<Vec<u16>, u32>,
}

impl WeylGroup {
    pub fn enumerate(phi: Arc<RootSystem>, cap: u64) -> Result<Self> {
        let expected: u128 = phi.label().weyl_order();
        if expected > u128::from(cap) {
            return Err(Error::CapExceeded { cap, needed: u64::try_from(expected).unwrap_or(u64::MAX) });
        }
        let id: Vec<u16> = (0..phi.len() as u16).collect();
        let mut index: HashMap<Vec<u16>, u32> = HashMap::new();
        let mut perms: Vec<Vec<u16>> = vec![id.clone()];
        index.insert(id, 0);
        let mut head = 0;
        while head < perms.len() {
            for i in 0..phi.rank() {
                let s = phi.simple_reflection(i);
                let w = &perms[head];
                let p: Vec<u16> = s.iter().map(|&k| w[k as usize]).collect();
                if !index.contains_key(&p) {
                    if perms.len() as u64 >= cap {
                        return Err(Error::CapExceeded { cap, needed: perms.len() as u64 + 1 });
                    }
                    index.insert(p.clone(), perms.len() as u32);
                    perms.push(p);
                }
            }
            head += 1;
        }
        let elements = perms.into_iter().map(|p| WeylElement::from_perm(&phi, p)).collect();
        Ok(WeylGroup { phi, elements, index })
    }

    /// Rebuild from stored root permutations, re-checking that they form exactly `W`.
    pub fn from_perms(phi: Arc<RootSystem>, perms: Vec<Vec<u16>>) -> Result<Self> {
        let n = phi.len();
        let bad = |why: String| Error::Cache(why);
        if perms.len() as u128 != phi.label().weyl_order() {
            return Err(bad(format!("{} elements, expected {}", perms.len(), phi.label().weyl_order())));
        }
        let id: Vec<u16> = (0..n as u16).collect();
        if perms.first() != Some(&id) {
            return Err(bad("first element is not the identity".into()));
        }
        let mut index: HashMap<Vec<u16>, u32> = HashMap::with_capacity(perms.len());
        for (k, p) in perms.iter().enumerate() {
            let mut seen = vec![false; n];
            if p.len() != n || !p.iter().all(|&x| (x as usize) < n && !std::mem::replace(&mut seen[x as usize], true)) {
                return Err(bad(format!("entry {k} is not a permutation of the roots")));
            }
            if index.insert(p.clone(), k as u32).is_some() {
                return Err(bad(format!("entry {k} is repeated")));
            }
        }
        // closed under the simple reflections and containing 1, with |W| elements: exactly W
        for p in &perms {
            for i in 0..phi.rank() {
                let q: Vec<u16> = phi.simple_reflection(i).iter().map(|&k| p[k as usize]).collect();
                if !index.contains_key(&q) {
                    return Err(bad("set is not closed under simple reflections".into()));
                }
            }
        }
        let elements = perms.into_iter().map(|p| WeylElement::from_perm(&phi, p)).collect();
        Ok(WeylGroup { phi, elements, index })
    }

    fn registry() -> &'static Mutex<HashMap<String, Arc<WeylGroup>>> {
        static CACHE: OnceLock<Mutex<HashMap<String, Arc<WeylGroup>>>> = OnceLock::new();
        CACHE.get_or_init(|| Mutex::new(HashMap::new()))
    }

    /// Make `w` the process-wide enumeration for its type.
    pub fn install_shared(w: Arc<WeylGroup>) {
        let key = w.phi.label().to_string();
        Self::registry().lock().expect("weyl cache").insert(key, w);
    }

    /// Process-wide enumeration per type label.
    pub fn shared(label: &str) -> Result<Arc<WeylGroup>> {
        let phi = RootSystem::shared(label)?;
        let key = phi.label().to_string();
        let cache = Self::registry();
        if let Some(w) = cache.lock().expect("weyl cache").get(&key) {
            return Ok(w.clone());
        }
        let w = Arc::new(WeylGroup::enumerate(phi, DEFAULT_CAP)?);
        cache.lock().expect("weyl cache").insert(key, w.clone());
        Ok(w)
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.phi
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(w.perm()).map(|&i| i as usize)
    }

    /// Poincaré polynomial coefficients.
    pub fn length_distribution(&self) -> Vec<u64> {
        let max = self.elements.iter().map(|w| w.length()).max().unwrap_or(0) as usize;
        let mut c = vec![0u64; max + 1];
        for w in &self.elements {
            c[w.length() as usize] += 1;
        }
        c
    }
}

/// Enumerate the elements of the subgroup generated by `gens` (cap-guarded).
pub fn generate_subgroup(phi: &RootSystem, gens: &[WeylElement], cap: u64) -> Result<Vec<WeylElement>> {
    let id = WeylElement::identity(phi);
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    seen.insert(id.perm().to_vec());
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        for g in gens {
            let w = out[head].compose(phi, g);
            if seen.insert(w.perm().to_vec()) {
                if out.len() as u64 >= cap {
                    return Err(Error::CapExceeded { cap, needed: out.len() as u64 + 1 });
                }
                out.push(w);
            }
        }
        head += 1;
    }
    Ok(out)
}

/// An involution class represented by a parabolic longest element.
#[derive(Clone, Debug)]
pub struct InvolutionClass {
    pub subset: Vec<usize>,
    pub representative: WeylElement,
    pub acts_as_minus_one: bool,
    pub class_size: Option<u64>,
}

/// Orbits of a diagram symmetry on the simple roots.
pub fn symmetry_orbits(sigma: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; sigma.len()];
    let mut out = Vec::new();
    for s in 0..sigma.len() {
        if seen[s] {
            continue;
        }
        let mut orb = Vec::new();
        let mut k = s;
        while !seen[k] {
            seen[k] = true;
            orb.push(k);
            k = sigma[k];
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out
}

/// Generators `s_ω` of the fixed subgroup W^σ, one per σ-orbit on simple roots.
pub fn twisted_generators(phi: &RootSystem, sigma: &[usize]) -> Vec<WeylElement> {
    symmetry_orbits(sigma).iter().map(|o| longest_element(phi, o)).collect()
}

fn identity_sigma(phi: &RootSystem) -> Vec<usize> {
    (0..phi.rank()).collect()
}

/// σ-stable subsets I whose longest element acts by −1 on the σ-fixed part of span(I).
pub fn richardson_candidates(phi: &RootSystem, sigma: Option<&[usize]>) -> Vec<InvolutionClass> {
    let id = identity_sigma(phi);
    let sigma = sigma.unwrap_or(&id);
    let orbits = symmetry_orbits(sigma);
    let mut out = Vec::new();
    for mask in 1u64..(1 << orbits.len()) {
        let subset: Vec<usize> = {
            let mut s: Vec<usize> =
                (0..orbits.len()).filter(|&o| mask >> o & 1 == 1).flat_map(|o| orbits[o].iter().copied()).collect();
            s.sort_unstable();
            s
        };
        let w = longest_element(phi, &subset);
        let ok = orbits
            .iter()
            .enumerate()
            .filter(|&(o, _)| mask >> o & 1 == 1)
            .all(|(_, orb)| {
                let mut v: Root = vec![0; phi.rank()];
                for &i in orb {
                    v[i] += 1;
                }
                let img = w.apply_vec(&v);
                img.iter().zip(&v).all(|(a, b)| *a == -b)
            });
        if ok {
            out.push(InvolutionClass { subset, representative: w, acts_as_minus_one: true, class_size: None });
        }
    }
    out
}

/// Conjugacy class of `w` under the group generated by `gens`.
pub fn conjugacy_orbit(phi: &RootSystem, w: &WeylElement, gens: &[WeylElement], cap: u64) -> Result<HashSet<Vec<u16>>> {
    let ginv: Vec<WeylElement> = gens.iter().map(|g| g.inverse(phi)).collect();
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    seen.insert(w.perm().to_vec());
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(x) = queue.pop_front() {
        for (g, gi) in gens.iter().zip(&ginv) {
            let y = g.compose(phi, &x).compose(phi, gi);
            if seen.insert(y.perm().to_vec()) {
                if seen.len() as u64 > cap {
                    return Err(Error::CapExceeded { cap, needed: seen.len() as u64 });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// Involution classes of W (or W^σ), deduplicated, with class sizes.
pub fn richardson_classes(phi: &RootSystem, sigma: Option<&[usize]>, cap: u64) -> Result<Vec<InvolutionClass>> {
    let id = identity_sigma(phi);
    let gens = twisted_generators(phi, sigma.unwrap_or(&id));
    let mut classes: Vec<InvolutionClass> = Vec::new();
    let mut orbits: Vec<HashSet<Vec<u16>>> = Vec::new();
    for mut cand in richardson_candidates(phi, sigma) {
        if orbits.iter().any(|o| o.contains(cand.representative.perm())) {
            continue;
        }
        let orb = conjugacy_orbit(phi, &cand.representative, &gens, cap)?;
        cand.class_size = Some(orb.len() as u64);
        orbits.push(orb);
        classes.push(cand);
    }
    Ok(classes)
}

/// Elements of W preserving the positive system of a subsystem; isomorphic to N_W(W_J)/W_J.
pub fn relative_weyl(weyl: &WeylGroup, sub: &SubSystem) -> Result<SmallGroup> {
    let phi = weyl.root_system();
    let pos: Vec<usize> = sub.positive_roots(phi);
    let perms: Vec<Vec<u32>> = weyl
        .elements()
        .iter()
        .filter(|w| w.image_set(&pos) == pos)
        .map(|w| w.perm().iter().map(|&x| u32::from(x)).collect())
        .collect();
    SmallGroup::from_elements(perms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_enumeration() {
        let phi = Arc::new(RootSystem::of_type("A2").unwrap());
        let w = WeylGroup::enumerate(phi.clone(), DEFAULT_CAP).unwrap();
        assert_eq!(w.len(), 6);
        assert_eq!(w.length_distribution(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn words_round_trip() {
        let phi = RootSystem::of_type("D4").unwrap();
        let w = WeylElement::from_word(&phi, &[0, 1, 3, 2, 1]).unwrap();
        let word = w.reduced_word(&phi);
        assert_eq!(WeylElement::from_word(&phi, &word).unwrap(), w);
        assert_eq!(word.len() as u32, w.length());
    }

    #[test]
    fn cap_guard() {
        let phi = Arc::new(RootSystem::of_type("E6").unwrap());
        assert!(matches!(WeylGroup::enumerate(phi, 1000), Err(Error::CapExceeded { .. })));
    }
}
