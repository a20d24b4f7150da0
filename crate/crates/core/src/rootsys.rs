//! Root systems from Cartan matrices, subsystems and their recognition.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::snf;

pub type Root = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// An irreducible Cartan type such as `E6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub series: Series,
    pub rank: usize,
}

impl CartanType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B => rank >= 2,
            Series::C => rank >= 3,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(CartanType { series, rank })
        } else {
            Err(Error::BadLabel(format!("{series:?}{rank}")))
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.series, Series::A | Series::D | Series::E)
    }

    /// Number of roots.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1),
            Series::B | Series::C => 2 * n * n,
            Series::D => 2 * n * (n - 1),
            Series::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Series::F => 48,
            Series::G => 12,
        }
    }

    /// Degrees of the basic invariants.
    pub fn degrees(&self) -> Vec<u32> {
        let n = self.rank as u32;
        match self.series {
            Series::A => (2..=n + 1).collect(),
            Series::B | Series::C => (1..=n).map(|i| 2 * i).collect(),
            Series::D => {
                let mut d: Vec<u32> = (1..n).map(|i| 2 * i).collect();
                d.push(n);
                d.sort_unstable();
                d
            }
            Series::E => match n {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
            Series::F => vec![2, 6, 8, 12],
            Series::G => vec![2, 6],
        }
    }

    pub fn weyl_order(&self) -> u128 {
        self.degrees().iter().map(|&d| u128::from(d)).product()
    }

    /// Cartan matrix with `a[i][j] = <α_j, α_i∨>`.
    pub fn cartan(&self) -> IntMatrix {
        let n = self.rank;
        let mut a = IntMatrix::identity(n).scale(2);
        let mut link = |i: usize, j: usize| {
            a[(i, j)] = -1;
            a[(j, i)] = -1;
        };
        match self.series {
            Series::A | Series::B | Series::C => (0..n - 1).for_each(|i| link(i, i + 1)),
            Series::D => {
                (0..n - 2).for_each(|i| link(i, i + 1));
                link(n - 3, n - 1);
            }
            Series::E => {
                link(0, 2);
                link(1, 3);
                (2..n - 1).for_each(|i| link(i, i + 1));
            }
            Series::F => (0..3).for_each(|i| link(i, i + 1)),
            Series::G => link(0, 1),
        }
        match self.series {
            Series::B => a[(n - 1, n - 2)] = -2,
            Series::C => a[(n - 2, n - 1)] = -2,
            Series::F => a[(2, 1)] = -2,
            Series::G => a[(0, 1)] = -3,
            _ => {}
        }
        a
    }

    /// Half squared lengths of the simple roots (short roots have 1).
    pub fn half_norms(&self) -> Vec<i64> {
        let n = self.rank;
        match self.series {
            Series::B => (0..n).map(|i| if i == n - 1 { 1 } else { 2 }).collect(),
            Series::C => (0..n).map(|i| if i == n - 1 { 2 } else { 1 }).collect(),
            Series::F => vec![2, 2, 1, 1],
            Series::G => vec![1, 3],
            _ => vec![1; n],
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::BadLabel(s.to_string());
        let mut chars = s.chars();
        let series = match chars.next().ok_or_else(bad)?.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanType::new(series, rank).map_err(|_| bad())
    }
}

/// A possibly reducible type, e.g. `A2+A2+A2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootSystemLabel(pub Vec<CartanType>);

impl RootSystemLabel {
    pub fn rank(&self) -> usize {
        self.0.iter().map(|c| c.rank).sum()
    }

    /// Components sorted for comparison.
    pub fn canonical(&self) -> RootSystemLabel {
        let mut v = self.0.clone();
        v.sort_by(|a, b| b.cmp(a));
        RootSystemLabel(v)
    }

    pub fn weyl_order(&self) -> u128 {
        self.0.iter().map(CartanType::weyl_order).product()
    }
}

impl fmt::Display for RootSystemLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for RootSystemLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(RootSystemLabel(Vec::new()));
        }
        s.split('+').map(str::parse).collect::<Result<Vec<_>>>().map(RootSystemLabel)
    }
}

/// A crystallographic root system with a fixed base.
#[derive(Clone, Debug)]
pub struct RootSystem {
    label: RootSystemLabel,
    cartan: IntMatrix,
    half_norms: Vec<i64>,
    roots: Vec<Root>,
    npos: usize,
    index: HashMap<Root, usize>,
    reflections: Vec<Vec<u16>>,
    negation: Vec<u16>,
}

impl RootSystem {
    pub fn new(label: RootSystemLabel) -> Result<Self> {
        let blocks: Vec<IntMatrix> = label.0.iter().map(CartanType::cartan).collect();
        let cartan = IntMatrix::block_diag(&blocks);
        let half_norms: Vec<i64> = label.0.iter().flat_map(|c| c.half_norms()).collect();
        let r = cartan.rows();
        let mut seen: HashSet<Root> = HashSet::new();
        let mut queue: VecDeque<Root> = VecDeque::new();
        for i in 0..r {
            let mut a = vec![0; r];
            a[i] = 1;
            seen.insert(a.clone());
            queue.push_back(a);
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..r {
                let p: i64 = (0..r).map(|j| b[j] * cartan[(i, j)]).sum();
                if p == 0 {
                    continue;
                }
                let mut c = b.clone();
                c[i] -= p;
                if seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }
        let mut pos: Vec<Root> = seen.into_iter().filter(|b| b.iter().all(|&x| x >= 0)).collect();
        pos.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let npos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|b| b.iter().map(|x| -x).collect::<Root>()));
        let index: HashMap<Root, usize> = roots.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        let expected: usize = label.0.iter().map(CartanType::root_count).sum();
        if roots.len() != expected {
            return Err(Error::LemmaViolation(format!(
                "root count {} differs from {expected} for {label}",
                roots.len()
            )));
        }
        let mut rs = RootSystem {
            label,
            cartan,
            half_norms,
            roots,
            npos,
            index,
            reflections: Vec::new(),
            negation: Vec::new(),
        };
        rs.reflections = (0..r).map(|i| rs.reflection_perm(i)).collect();
        rs.negation = (0..rs.roots.len()).map(|k| rs.neg_index(k) as u16).collect();
        if rs.label.0.len() == 1 && rs.label.0[0] == (CartanType { series: Series::E, rank: 6 }) {
            let hr = rs.highest_root();
            if hr != vec![1, 2, 2, 3, 2, 1] {
                return Err(Error::LemmaViolation(format!("unexpected E6 highest root {hr:?}")));
            }
        }
        Ok(rs)
    }

    pub fn of_type(s: &str) -> Result<Self> {
        RootSystem::new(s.parse()?)
    }

    /// Shared instance per label.
    pub fn shared(s: &str) -> Result<Arc<RootSystem>> {
        static CACHE: OnceLock<Mutex<HashMap<String, Arc<RootSystem>>>> = OnceLock::new();
        let label: RootSystemLabel = s.parse()?;
        let key = label.to_string();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(rs) = cache.lock().expect("root system cache").get(&key) {
            return Ok(rs.clone());
        }
        let rs = Arc::new(RootSystem::new(label)?);
        cache.lock().expect("root system cache").insert(key, rs.clone());
        Ok(rs)
    }

    pub fn label(&self) -> &RootSystemLabel {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.cartan.rows()
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, k: usize) -> &Root {
        &self.roots[k]
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn is_positive(&self, k: usize) -> bool {
        k < self.npos
    }

    pub fn is_simply_laced(&self) -> bool {
        self.label.0.iter().all(CartanType::is_simply_laced)
    }

    pub fn is_irreducible(&self) -> bool {
        self.label.0.len() == 1
    }

    pub fn index_of(&self, b: &[i64]) -> Option<usize> {
        self.index.get(b).copied()
    }

    pub fn simple_index(&self, i: usize) -> usize {
        i
    }

    pub fn neg_index(&self, k: usize) -> usize {
        if k < self.npos {
            k + self.npos
        } else {
            k - self.npos
        }
    }

    pub fn negation_perm(&self) -> &[u16] {
        &self.negation
    }

    pub fn height(&self, k: usize) -> i64 {
        self.roots[k].iter().sum()
    }

    pub fn highest_root(&self) -> Root {
        self.roots[self.npos - 1].clone()
    }

    /// Gram matrix of the invariant form, `(α_i, α_i) = 2 · half_norm_i`.
    pub fn gram(&self) -> IntMatrix {
        let r = self.rank();
        let mut g = IntMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                g[(i, j)] = self.half_norms[i] * self.cartan[(i, j)];
            }
        }
        g
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let r = self.rank();
        let mut s = 0;
        for i in 0..r {
            if a[i] == 0 {
                continue;
            }
            for j in 0..r {
                s += a[i] * b[j] * self.half_norms[i] * self.cartan[(i, j)];
            }
        }
        s
    }

    /// `<β, γ∨>`.
    pub fn pairing(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let num = 2 * self.inner(beta, gamma);
        let den = self.inner(gamma, gamma);
        assert!(den != 0 && num % den == 0, "non-integral pairing");
        num / den
    }

    /// `<β, α_i∨>`.
    pub fn simple_pairing(&self, beta: &[i64], i: usize) -> i64 {
        (0..self.rank()).map(|j| beta[j] * self.cartan[(i, j)]).sum()
    }

    pub fn reflect(&self, alpha: &[i64], beta: &[i64]) -> Root {
        let p = self.pairing(beta, alpha);
        beta.iter().zip(alpha).map(|(b, a)| b - p * a).collect()
    }

    /// Coroot of a root in simple-coroot coordinates.
    pub fn coroot(&self, beta: &[i64]) -> Vec<i64> {
        let nb = self.inner(beta, beta) / 2;
        (0..self.rank())
            .map(|i| {
                let c = beta[i] * self.half_norms[i];
                assert!(c % nb == 0, "non-integral coroot");
                c / nb
            })
            .collect()
    }

    fn reflection_perm(&self, i: usize) -> Vec<u16> {
        let mut a = vec![0; self.rank()];
        a[i] = 1;
        self.roots
            .iter()
            .map(|b| {
                let c = self.reflect(&a, b);
                self.index[&c] as u16
            })
            .collect()
    }

    pub fn simple_reflection(&self, i: usize) -> &[u16] {
        &self.reflections[i]
    }

    /// Permutation of root indices induced by the reflection in root `k`.
    pub fn root_reflection(&self, k: usize) -> Vec<u16> {
        let a = &self.roots[k];
        self.roots.iter().map(|b| self.index[&self.reflect(a, b)] as u16).collect()
    }

    /// Invariant factors of the coweight lattice modulo the coroot lattice.
    pub fn fundamental_group(&self) -> Vec<u64> {
        let a: snf::BigMatrix = self
            .cartan
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        snf::smith(&a)
            .diag
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| u64::try_from(d).expect("small invariant factor"))
            .collect()
    }

    /// Returns a positive non-simple root with fewer than two unit coordinates, scanning from the top.
    pub fn check_coefficient_lemma(&self) -> (bool, Option<Root>) {
        for k in (self.rank()..self.npos).rev() {
            let ones = self.roots[k].iter().filter(|&&x| x == 1).count();
            if ones < 2 {
                return (false, Some(self.roots[k].clone()));
            }
        }
        (true, None)
    }

    /// Diagram symmetries of an irreducible system as permutations of simple indices.
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        let r = self.rank();
        let mut out = Vec::new();
        let mut perm = vec![usize::MAX; r];
        let mut used = vec![false; r];
        fn rec(
            c: &IntMatrix,
            k: usize,
            perm: &mut Vec<usize>,
            used: &mut Vec<bool>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let r = c.rows();
            if k == r {
                out.push(perm.clone());
                return;
            }
            for t in 0..r {
                if used[t] {
                    continue;
                }
                if (0..k).all(|j| c[(k, j)] == c[(t, perm[j])] && c[(j, k)] == c[(perm[j], t)]) {
                    perm[k] = t;
                    used[t] = true;
                    rec(c, k + 1, perm, used, out);
                    used[t] = false;
                }
            }
        }
        rec(&self.cartan, 0, &mut perm, &mut used, &mut out);
        out
    }

    /// Roots whose coordinates are supported on `subset` of simple indices.
    pub fn parabolic_roots(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| self.roots[k].iter().enumerate().all(|(i, &x)| x == 0 || subset.contains(&i)))
            .collect()
    }
}

/// A closed subsystem of an ambient root system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubSystem {
    /// Sorted root indices in the ambient system.
    pub roots: Vec<usize>,
    /// Base, ordered component by component in standard numbering.
    pub base: Vec<usize>,
    pub components: Vec<(CartanType, Vec<usize>)>,
}

impl SubSystem {
    pub fn label(&self) -> RootSystemLabel {
        RootSystemLabel(self.components.iter().map(|c| c.0).collect())
    }

    pub fn rank(&self) -> usize {
        self.base.len()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.roots.binary_search(&k).is_ok()
    }

    pub fn positive_roots(&self, phi: &RootSystem) -> Vec<usize> {
        self.roots.iter().copied().filter(|&k| phi.is_positive(k)).collect()
    }
}

/// Closure of a set of roots under reflections and negation.
pub fn reflection_closure(phi: &RootSystem, gens: &[usize]) -> Vec<usize> {
    let mut set: HashSet<usize> = gens.iter().copied().collect();
    for &g in gens {
        set.insert(phi.neg_index(g));
    }
    let mut refl: HashMap<usize, Vec<u16>> = HashMap::new();
    loop {
        let cur: Vec<usize> = set.iter().copied().collect();
        let mut grew = false;
        for &a in &cur {
            let p = refl.entry(a).or_insert_with(|| phi.root_reflection(a)).clone();
            for &b in &cur {
                if set.insert(p[b] as usize) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut v: Vec<usize> = set.into_iter().collect();
    v.sort_unstable();
    v
}

/// Decompose a symmetric reflection-closed subset into irreducible components.
pub fn classify_subsystem(phi: &RootSystem, subset: &[usize]) -> Result<SubSystem> {
    let mut roots: Vec<usize> = subset.to_vec();
    roots.sort_unstable();
    roots.dedup();
    let set: HashSet<usize> = roots.iter().copied().collect();
    for &a in &roots {
        if a >= phi.len() {
            return Err(Error::OutOfRange(a));
        }
        if !set.contains(&phi.neg_index(a)) {
            return Err(Error::NotClosed(format!("{:?} lacks its negative", phi.root(a))));
        }
        for &b in &roots {
            let c = phi.reflect(phi.root(a), phi.root(b));
            if !set.contains(&phi.index_of(&c).expect("reflection of a root")) {
                return Err(Error::NotClosed(format!("s_{:?} moves {:?} outside", phi.root(a), phi.root(b))));
            }
        }
    }
    let pos: Vec<usize> = roots.iter().copied().filter(|&k| phi.is_positive(k)).collect();
    // simple roots: those whose reflection permutes the other positive roots
    let base: Vec<usize> = pos
        .iter()
        .copied()
        .filter(|&b| {
            let p = phi.root_reflection(b);
            pos.iter().all(|&c| c == b || phi.is_positive(p[c] as usize))
        })
        .collect();
    let n = base.len();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            adj[i][j] = i != j && phi.inner(phi.root(base[i]), phi.root(base[j])) != 0;
        }
    }
    let mut comp_id = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp_id[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![s];
        comp_id[s] = id;
        let mut members = Vec::new();
        while let Some(x) = stack.pop() {
            members.push(x);
            for y in 0..n {
                if adj[x][y] && comp_id[y] == usize::MAX {
                    comp_id[y] = id;
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    let mut components = Vec::new();
    for members in comps {
        let k = members.len();
        let mut c = IntMatrix::zeros(k, k);
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                c[(i, j)] = phi.pairing(phi.root(base[b]), phi.root(base[a]));
            }
        }
        let (ty, order) = recognize_cartan(&c)
            .ok_or_else(|| Error::NotClosed(format!("unrecognized component Cartan matrix {c:?}")))?;
        let ordered: Vec<usize> = order.iter().map(|&i| base[members[i]]).collect();
        components.push((ty, ordered));
    }
    components.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    let base: Vec<usize> = components.iter().flat_map(|c| c.1.iter().copied()).collect();
    let expected: usize = components.iter().map(|c| c.0.root_count()).sum();
    if expected != roots.len() {
        return Err(Error::NotClosed(format!("root count {} vs type count {expected}", roots.len())));
    }
    Ok(SubSystem { roots, base, components })
}

/// Identify a connected Cartan matrix; returns the type and the ordering matching standard numbering.
pub fn recognize_cartan(c: &IntMatrix) -> Option<(CartanType, Vec<usize>)> {
    let n = c.rows();
    let candidates: Vec<CartanType> = [Series::A, Series::B, Series::C, Series::D, Series::E, Series::F, Series::G]
        .into_iter()
        .filter_map(|s| CartanType::new(s, n).ok())
        .collect();
    for ty in candidates {
        let std = ty.cartan();
        if let Some(order) = match_cartan(c, &std) {
            return Some((ty, order));
        }
    }
    None
}

/// Find `order` with `c[order[i]][order[j]] == std[i][j]`.
fn match_cartan(c: &IntMatrix, std: &IntMatrix) -> Option<Vec<usize>> {
    let n = c.rows();
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(c: &IntMatrix, s: &IntMatrix, order: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let k = order.len();
        if k == c.rows() {
            return true;
        }
        for t in 0..c.rows() {
            if used[t] {
                continue;
            }
            if (0..k).all(|j| c[(t, order[j])] == s[(k, j)] && c[(order[j], t)] == s[(j, k)]) {
                order.push(t);
                used[t] = true;
                if rec(c, s, order, used) {
                    return true;
                }
                used[t] = false;
                order.pop();
            }
        }
        false
    }
    if rec(c, std, &mut order, &mut used) {
        Some(order)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (s, n) in [("A1", 2), ("A3", 12), ("B3", 18), ("C3", 18), ("D4", 24), ("E6", 72), ("F4", 48), ("G2", 12)] {
            assert_eq!(RootSystem::of_type(s).unwrap().len(), n, "{s}");
        }
    }

    #[test]
    fn labels_round_trip() {
        let l: RootSystemLabel = "A2+A2+A2".parse().unwrap();
        assert_eq!(l.to_string(), "A2+A2+A2");
        assert!("X3".parse::<RootSystemLabel>().is_err());
        assert!("D3".parse::<CartanType>().is_err());
    }

    #[test]
    fn simple_roots_first() {
        let e6 = RootSystem::of_type("E6").unwrap();
        for i in 0..6 {
            let mut a = vec![0; 6];
            a[i] = 1;
            assert_eq!(e6.index_of(&a), Some(i));
        }
        assert_eq!(e6.highest_root(), vec![1, 2, 2, 3, 2, 1]);
    }

    #[test]
    fn non_simply_laced_pairings() {
        let g2 = RootSystem::of_type("G2").unwrap();
        assert_eq!(g2.pairing(&[0, 1], &[1, 0]), -3);
        assert_eq!(g2.pairing(&[1, 0], &[0, 1]), -1);
        assert_eq!(g2.highest_root(), vec![3, 2]);
        let b2 = RootSystem::of_type("B2").unwrap();
        assert_eq!(b2.highest_root(), vec![1, 2]);
    }
}
