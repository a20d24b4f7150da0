//! Small permutation groups: closure, subgroups, quotients and fingerprints.

mod cabanes;
mod sweep;

pub use cabanes::{
    abelian_normal_subgroups, characteristic_check, characteristic_example, is_cabanes, quadratic_elements, wreath_product,
    wreath_recognize, CabanesVerdict, CharacteristicReport, QuadraticReport, WreathWitness,
};
pub use sweep::{cabanes_sweep, quadratic_on_torus, CabanesReport, ClassVerdict, SweepOutcome};

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_GROUP_CAP: u64 = 100_000;

/// A permutation of `0..n`; `(a·b)(x) = a(b(x))`.
pub type Perm = Vec<u32>;

pub fn perm_identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

pub fn perm_mul(a: &[u32], b: &[u32]) -> Perm {
    b.iter().map(|&x| a[x as usize]).collect()
}

pub fn perm_inv(a: &[u32]) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j as usize] = i as u32;
    }
    out
}

pub fn perm_order(a: &[u32]) -> u64 {
    let mut seen = vec![false; a.len()];
    let mut ord = 1u64;
    for s in 0..a.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0u64;
        let mut k = s;
        while !seen[k] {
            seen[k] = true;
            k = a[k] as usize;
            len += 1;
        }
        ord = num_integer::lcm(ord, len);
    }
    ord
}

pub fn perm_is_identity(a: &[u32]) -> bool {
    a.iter().enumerate().all(|(i, &j)| i as u32 == j)
}

/// A subgroup given by membership flags.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    mask: Vec<bool>,
    members: Vec<usize>,
}

impl Subgroup {
    pub fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
        Subgroup { mask, members }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask[i]
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&i| other.mask[i])
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_mask(self.mask.iter().zip(&other.mask).map(|(a, b)| *a && *b).collect())
    }
}

/// Isomorphism invariants used for recognition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: u64,
    pub abelian_invariants: Vec<u64>,
    pub center_order: u64,
    pub order_histogram: BTreeMap<u64, u64>,
}

impl std::fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let hist: Vec<String> = self.order_histogram.iter().map(|(o, c)| format!("{o}:{c}")).collect();
        write!(
            f,
            "order={} ab={:?} center={} orders=[{}]",
            self.order,
            self.abelian_invariants,
            self.center_order,
            hist.join(",")
        )
    }
}

/// A finite permutation group with explicit element list; element 0 is the identity.
#[derive(Clone, Debug)]
pub struct SmallGroup {
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    generators: Vec<usize>,
    table: Option<Vec<u32>>,
}

const TABLE_LIMIT: usize = 1024;

impl SmallGroup {
    /// BFS closure of the generators.
    pub fn generate(gens: &[Perm], cap: u64) -> Result<Self> {
        let degree = gens.first().map_or(0, |g| g.len());
        if gens.iter().any(|g| g.len() != degree) {
            return Err(Error::Precondition("generators of different degrees".into()));
        }
        let id = perm_identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut head = 0;
        while head < elements.len() {
            for g in gens {
                let p = perm_mul(&elements[head], g);
                if !index.contains_key(&p) {
                    if elements.len() as u64 >= cap {
                        return Err(Error::CapExceeded { cap, needed: elements.len() as u64 + 1 });
                    }
                    index.insert(p.clone(), elements.len());
                    elements.push(p);
                }
            }
            head += 1;
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(Self::finish(degree, elements, index, generators))
    }

    /// Group from a complete element list; a generating set is extracted greedily.
    pub fn from_elements(mut elements: Vec<Perm>) -> Result<Self> {
        let degree = elements.first().map_or(0, |g| g.len());
        let id = perm_identity(degree);
        match elements.iter().position(|p| *p == id) {
            Some(0) => {}
            Some(k) => elements.swap(0, k),
            None => return Err(Error::Precondition("element list lacks the identity".into())),
        }
        let index: HashMap<Perm, usize> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        if index.len() != elements.len() {
            return Err(Error::Precondition("duplicate elements".into()));
        }
        let n = elements.len();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut sub = vec![0usize];
        let mut generators = Vec::new();
        for cand in 0..n {
            if inside[cand] {
                continue;
            }
            generators.push(cand);
            let mut head = 0;
            while head < sub.len() {
                for &g in &generators {
                    let p = perm_mul(&elements[sub[head]], &elements[g]);
                    let k = *index.get(&p).ok_or_else(|| Error::Precondition("element list not closed".into()))?;
                    if !inside[k] {
                        inside[k] = true;
                        sub.push(k);
                    }
                }
                head += 1;
            }
        }
        Ok(Self::finish(degree, elements, index, generators))
    }

    fn finish(degree: usize, elements: Vec<Perm>, index: HashMap<Perm, usize>, generators: Vec<usize>) -> Self {
        let mut g = SmallGroup { degree, elements, index, generators, table: None };
        let n = g.elements.len();
        if n <= TABLE_LIMIT {
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    t[i * n + j] = g.index[&perm_mul(&g.elements[i], &g.elements[j])] as u32;
                }
            }
            g.table = Some(t);
        }
        g
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn index_of(&self, p: &[u32]) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        match &self.table {
            Some(t) => t[i * self.order() + j] as usize,
            None => self.index[&perm_mul(&self.elements[i], &self.elements[j])],
        }
    }

    pub fn inv(&self, i: usize) -> usize {
        self.index[&perm_inv(&self.elements[i])]
    }

    pub fn pow(&self, i: usize, e: u64) -> usize {
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, i);
        }
        acc
    }

    /// `g h g⁻¹`.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn element_order(&self, i: usize) -> u64 {
        perm_order(&self.elements[i])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_mask(vec![true; self.order()])
    }

    pub fn trivial(&self) -> Subgroup {
        let mut m = vec![false; self.order()];
        m[0] = true;
        Subgroup::from_mask(m)
    }

    /// Subgroup generated by the given elements.
    pub fn subgroup(&self, gens: &[usize]) -> Subgroup {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut list = vec![0usize];
        let mut head = 0;
        while head < list.len() {
            for &g in gens {
                let k = self.mul(list[head], g);
                if !mask[k] {
                    mask[k] = true;
                    list.push(k);
                }
            }
            head += 1;
        }
        Subgroup::from_mask(mask)
    }

    /// Smallest normal subgroup containing the given elements.
    pub fn normal_closure(&self, elems: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = elems.to_vec();
        loop {
            let s = self.subgroup(&gens);
            let mut extra = Vec::new();
            for &x in &gens {
                for &g in &self.generators {
                    let c = self.conj(g, x);
                    if !s.contains(c) && !extra.contains(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return s;
            }
            gens.extend(extra);
        }
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens: Vec<usize> = a.members().to_vec();
        gens.extend_from_slice(b.members());
        self.subgroup(&gens)
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        s.members().iter().all(|&x| self.generators.iter().all(|&g| s.contains(self.conj(g, x))))
    }

    pub fn is_abelian_subgroup(&self, s: &Subgroup) -> bool {
        let m = s.members();
        m.iter().enumerate().all(|(i, &a)| m[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn centralizer(&self, of: &[usize]) -> Subgroup {
        let mask = (0..self.order()).map(|g| of.iter().all(|&x| self.mul(g, x) == self.mul(x, g))).collect();
        Subgroup::from_mask(mask)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.generators.clone())
    }

    /// `[A, B]` for subgroups normalized by each other.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = Vec::new();
        for &x in a.members() {
            for &y in b.members() {
                let c = self.commutator(x, y);
                if c != 0 {
                    gens.push(c);
                }
            }
        }
        gens.sort_unstable();
        gens.dedup();
        self.normal_closure(&gens)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let g = &self.generators;
        let mut gens = Vec::new();
        for &a in g {
            for &b in g {
                let c = self.commutator(a, b);
                if c != 0 {
                    gens.push(c);
                }
            }
        }
        self.normal_closure(&gens)
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut cls = vec![x];
            seen[x] = true;
            let mut head = 0;
            while head < cls.len() {
                for &g in &self.generators {
                    let y = self.conj(g, cls[head]);
                    if !seen[y] {
                        seen[y] = true;
                        cls.push(y);
                    }
                }
                head += 1;
            }
            cls.sort_unstable();
            out.push(cls);
        }
        out
    }

    /// Coset label of every element modulo a normal subgroup.
    pub fn coset_labels(&self, normal: &Subgroup) -> (Vec<usize>, Vec<usize>) {
        let n = self.order();
        let mut label = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if label[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &h in normal.members() {
                label[self.mul(h, g)] = id;
            }
        }
        (label, reps)
    }

    /// `G/N` acting regularly on its cosets.
    pub fn quotient(&self, normal: &Subgroup) -> Result<SmallGroup> {
        if !self.is_normal(normal) {
            return Err(Error::Precondition("quotient by a non-normal subgroup".into()));
        }
        let (label, reps) = self.coset_labels(normal);
        let gens: Vec<Perm> = self
            .generators
            .iter()
            .map(|&g| reps.iter().map(|&r| label[self.mul(r, g)] as u32).collect::<Perm>())
            .map(|p| perm_inv(&p))
            .collect();
        if reps.len() == 1 {
            return SmallGroup::generate(&[vec![0]], 1);
        }
        SmallGroup::generate(&gens, reps.len() as u64)
    }

    /// Order histogram of the whole group.
    pub fn order_histogram(&self) -> BTreeMap<u64, u64> {
        let mut h = BTreeMap::new();
        for i in 0..self.order() {
            *h.entry(self.element_order(i)).or_insert(0) += 1;
        }
        h
    }

    /// Invariant factors of G/G'.
    pub fn abelianization(&self) -> Vec<u64> {
        let d = self.derived_subgroup();
        let (_, reps) = self.coset_labels(&d);
        let mut orders = Vec::with_capacity(reps.len());
        for &r in &reps {
            let mut k = 1u64;
            let mut x = r;
            while !d.contains(x) {
                x = self.mul(x, r);
                k += 1;
            }
            orders.push(k);
        }
        abelian_invariants_from_orders(&orders)
    }

    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint {
            order: self.order() as u64,
            abelian_invariants: self.abelianization(),
            center_order: self.center().order() as u64,
            order_histogram: self.order_histogram(),
        }
    }

    /// Restrict to a subgroup as a standalone group.
    pub fn subgroup_as_group(&self, s: &Subgroup) -> Result<SmallGroup> {
        SmallGroup::from_elements(s.members().iter().map(|&i| self.elements[i].clone()).collect())
    }
}

/// Invariant factors of an abelian group from the multiset of its element orders.
pub fn abelian_invariants_from_orders(orders: &[u64]) -> Vec<u64> {
    let n = orders.len() as u64;
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            primes.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    // per prime: exponents of the cyclic p-factors, descending
    let mut per_prime: Vec<Vec<u64>> = Vec::new();
    for &p in &primes {
        let mut c = vec![0u32];
        let mut pk = 1u64;
        loop {
            pk *= p;
            let count = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
            let mut e = 0u32;
            let mut x = count;
            while x > 1 {
                x /= p;
                e += 1;
            }
            c.push(e);
            if c[c.len() - 1] == c[c.len() - 2] {
                break;
            }
        }
        let mut factors = Vec::new();
        for k in 1..c.len() {
            let at_least_k = c[k] - c[k - 1];
            let at_least_next = if k + 1 < c.len() { c[k + 1] - c[k] } else { 0 };
            for _ in 0..(at_least_k - at_least_next) {
                factors.push(p.pow(k as u32));
            }
        }
        factors.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push(factors);
    }
    let len = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut inv: Vec<u64> = (0..len).map(|i| per_prime.iter().map(|f| f.get(i).copied().unwrap_or(1)).product()).collect();
    inv.sort_unstable();
    inv
}

/// Standard small groups as permutation groups.
pub mod examples {
    use super::{Perm, SmallGroup};

    fn cycle(n: usize, pts: &[usize]) -> Perm {
        let mut p: Perm = (0..n as u32).collect();
        for i in 0..pts.len() {
            p[pts[i]] = pts[(i + 1) % pts.len()] as u32;
        }
        p
    }

    pub fn cyclic(n: usize) -> SmallGroup {
        let pts: Vec<usize> = (0..n).collect();
        SmallGroup::generate(&[cycle(n.max(1), &pts)], n as u64).expect("cyclic group")
    }

    /// Dihedral group of order 2n on n points.
    pub fn dihedral(n: usize) -> SmallGroup {
        let r = cycle(n, &(0..n).collect::<Vec<_>>());
        let s: Perm = (0..n).map(|i| ((n - i) % n) as u32).collect();
        SmallGroup::generate(&[r, s], 2 * n as u64).expect("dihedral group")
    }

    /// Quaternion group via its regular representation.
    pub fn quaternion() -> SmallGroup {
        // elements ±1, ±i, ±j, ±k indexed 0..8 as (sign, unit)
        let idx = |sign: usize, unit: usize| sign * 4 + unit;
        let mul_unit = |a: usize, b: usize| -> (usize, usize) {
            // units: 0=1, 1=i, 2=j, 3=k
            match (a, b) {
                (0, x) | (x, 0) => (0, x),
                (x, y) if x == y => (1, 0),
                (1, 2) => (0, 3),
                (2, 3) => (0, 1),
                (3, 1) => (0, 2),
                (2, 1) => (1, 3),
                (3, 2) => (1, 1),
                (1, 3) => (1, 2),
                _ => unreachable!(),
            }
        };
        let left = |g: (usize, usize)| -> Perm {
            (0..8)
                .map(|x| {
                    let (s, u) = (x / 4, x % 4);
                    let (s2, u2) = mul_unit(g.1, u);
                    idx((g.0 + s + s2) % 2, u2) as u32
                })
                .collect()
        };
        SmallGroup::generate(&[left((0, 1)), left((0, 2))], 8).expect("quaternion group")
    }

    pub fn symmetric(n: usize) -> SmallGroup {
        let c = cycle(n, &(0..n).collect::<Vec<_>>());
        let t = cycle(n, &[0, 1]);
        SmallGroup::generate(&[c, t], u64::MAX).expect("symmetric group")
    }

    /// Direct product acting on the disjoint union of the point sets.
    pub fn direct_product(a: &SmallGroup, b: &SmallGroup) -> SmallGroup {
        let (da, db) = (a.degree(), b.degree());
        let mut gens = Vec::new();
        for &g in a.generators() {
            let mut p: Perm = a.element(g).clone();
            p.extend((da..da + db).map(|x| x as u32));
            gens.push(p);
        }
        for &g in b.generators() {
            let mut p: Perm = (0..da as u32).collect();
            p.extend(b.element(g).iter().map(|&x| x + da as u32));
            gens.push(p);
        }
        if gens.is_empty() {
            gens.push((0..(da + db) as u32).collect());
        }
        SmallGroup::generate(&gens, (a.order() * b.order()) as u64).expect("direct product")
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn basic_orders() {
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(quaternion().order(), 8);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(cyclic(6).order(), 6);
    }

    #[test]
    fn fingerprints() {
        let d8 = dihedral(4).fingerprint();
        assert_eq!(d8.abelian_invariants, vec![2, 2]);
        assert_eq!(d8.center_order, 2);
        let q8 = quaternion().fingerprint();
        assert_eq!(q8.order_histogram, BTreeMap::from([(1, 1), (2, 1), (4, 6)]));
        let c6 = cyclic(6).fingerprint();
        assert_eq!(c6.abelian_invariants, vec![6]);
        let s3 = symmetric(3).fingerprint();
        assert_eq!(s3.abelian_invariants, vec![2]);
        assert_eq!(s3.center_order, 1);
    }

    #[test]
    fn abelian_invariants_mixed() {
        let g = direct_product(&cyclic(4), &direct_product(&cyclic(2), &cyclic(3)));
        assert_eq!(g.abelianization(), vec![2, 12]);
    }

    #[test]
    fn quotient_of_s4_by_klein() {
        let s4 = symmetric(4);
        let v4: Vec<usize> = s4
            .elements()
            .iter()
            .enumerate()
            .filter(|(_, p)| perm_order(p) <= 2 && p.iter().enumerate().all(|(i, &j)| i as u32 != j || perm_is_identity(p)))
            .map(|(i, _)| i)
            .collect();
        let k = s4.subgroup(&v4);
        assert_eq!(k.order(), 4);
        assert!(s4.is_normal(&k));
        let q = s4.quotient(&k).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(q.fingerprint(), symmetric(3).fingerprint());
    }
}
