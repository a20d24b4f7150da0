use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use reductive_core::grouptool::examples::{cyclic, dihedral, direct_product, quaternion, symmetric};
use reductive_core::grouptool::{
    cabanes_sweep, characteristic_check, characteristic_example, is_cabanes, quadratic_elements, quadratic_on_torus,
    wreath_product, wreath_recognize, SweepOutcome,
};
use reductive_core::weyl::{longest_element, richardson_candidates};
use reductive_core::{FiniteTorus, FrobeniusTwist, IntMatrix, RootSystem, SmallGroup, WeylElement};

/// Maximal abelian normal subgroups, from closures of all element triples.
fn maximal_abelian_normal_oracle(g: &SmallGroup) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    let mut subs = BTreeSet::new();
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                let s = g.subgroup(&[a, b, c]);
                if g.is_normal(&s) && g.is_abelian_subgroup(&s) {
                    subs.insert(s.members().to_vec());
                }
            }
        }
    }
    let is_sub = |x: &Vec<usize>, y: &Vec<usize>| x.len() < y.len() && x.iter().all(|e| y.contains(e));
    subs.iter().filter(|x| !subs.iter().any(|y| is_sub(x, y))).cloned().collect()
}

fn cycle(n: usize, pts: &[usize]) -> Vec<u32> {
    let mut p: Vec<u32> = (0..n as u32).collect();
    for i in 0..pts.len() {
        p[pts[i]] = pts[(i + 1) % pts.len()] as u32;
    }
    p
}

/// `C₄ ≀ C₃` on 12 points, its base components and the shift.
fn c4_wr_c3() -> (SmallGroup, Vec<Vec<usize>>, usize) {
    let cs: Vec<Vec<u32>> = (0..3).map(|k| cycle(12, &[4 * k, 4 * k + 1, 4 * k + 2, 4 * k + 3])).collect();
    let shift: Vec<u32> = (0..12).map(|i| ((i + 4) % 12) as u32).collect();
    let mut gens = cs.clone();
    gens.push(shift.clone());
    let g = SmallGroup::generate(&gens, 1000).unwrap();
    let comps = cs.iter().map(|c| vec![g.index_of(c).unwrap()]).collect();
    let x = g.index_of(&shift).unwrap();
    (g, comps, x)
}

#[test]
fn generation() {
    let t = vec![1u32, 0, 2];
    assert_eq!(SmallGroup::generate(&[t], 10).unwrap().order(), 2);
    assert_eq!(dihedral(4).order(), 8);
    assert_eq!(quaternion().order(), 8);
    assert_eq!(symmetric(4).order(), 24);
    assert!(SmallGroup::generate(&[cycle(6, &[0, 1, 2, 3, 4, 5]), cycle(6, &[0, 1])], 100).is_err());
}

#[test]
fn cabanes_small_groups_match_oracle() {
    let groups = [
        ("D8", dihedral(4)),
        ("Q8", quaternion()),
        ("C8", cyclic(8)),
        ("D8xC2", direct_product(&dihedral(4), &cyclic(2))),
        ("Q8xC2", direct_product(&quaternion(), &cyclic(2))),
        ("D16", dihedral(8)),
        ("S4", symmetric(4)),
    ];
    for (name, g) in groups {
        let v = is_cabanes(&g).unwrap();
        let ours: BTreeSet<Vec<usize>> = v.maximal.iter().map(|s| s.members().to_vec()).collect();
        let oracle = maximal_abelian_normal_oracle(&g);
        assert_eq!(ours, oracle, "{name}");
        assert_eq!(v.is_cabanes, oracle.len() == 1, "{name}");
    }
    for g in [dihedral(4), quaternion()] {
        let v = is_cabanes(&g).unwrap();
        assert!(!v.is_cabanes);
        assert_eq!(v.maximal.len(), 3);
    }
}

#[test]
fn c4_wreath_c3_is_cabanes() {
    let (g, comps, x) = c4_wr_c3();
    assert_eq!(g.order(), 192);
    let v = is_cabanes(&g).unwrap();
    assert!(v.is_cabanes);
    assert_eq!(v.maximal[0].order(), 64);
    let base = g.subgroup(&comps.concat());
    assert_eq!(v.maximal[0], base);
    let q = quadratic_elements(&g, &base).unwrap();
    assert!(q.quadratic.is_empty());
    let w = wreath_recognize(&g, &comps, x).unwrap();
    assert!(w.recognized);
    assert_eq!(w.fingerprint.unwrap(), wreath_product(&cyclic(4), 3).unwrap().fingerprint());
}

#[test]
fn quadratic_examples() {
    let d8 = dihedral(4);
    let r = d8.index_of(&cycle(4, &[0, 1, 2, 3])).unwrap();
    let a = d8.subgroup(&[r]);
    let q = quadratic_elements(&d8, &a).unwrap();
    assert_eq!(q.quadratic.len(), 1);
    assert!(!a.contains(q.quadratic[0]));
    assert!(q.filters_agree());
    for g in [d8.clone(), cyclic(4)] {
        if g.is_abelian() {
            assert!(quadratic_elements(&g, &g.whole()).unwrap().quadratic.is_empty());
        }
    }
    assert!(quadratic_elements(&d8, &d8.whole()).is_err());
}

#[test]
fn wreath_degenerate_and_negative() {
    let c4 = cyclic(4);
    let w = wreath_recognize(&c4, &[vec![1]], 0).unwrap();
    assert!(w.recognized);

    let c2 = |k: usize| -> Vec<u32> { (0..6).map(|i| if i / 2 == k { (i ^ 1) as u32 } else { i as u32 }).collect() };
    let g = SmallGroup::generate(&[c2(0), c2(1), c2(2)], 8).unwrap();
    let comps = vec![vec![g.index_of(&c2(0)).unwrap()], vec![g.index_of(&c2(1)).unwrap()]];
    let w = wreath_recognize(&g, &comps, g.index_of(&c2(2)).unwrap()).unwrap();
    assert!(!w.recognized);
}

#[test]
fn characteristic_subgroups() {
    for a in [4, 8, 16] {
        let (h, sub) = characteristic_example(a).unwrap();
        assert!(characteristic_check(&h, &sub).unwrap().passed(), "a = {a}");
    }
    assert!(characteristic_example(2).is_err());
}

fn split_e7(q: i64) -> (RootSystem, FiniteTorus) {
    let phi = RootSystem::of_type("E7").unwrap();
    let t = FiniteTorus::new(FrobeniusTwist::new(IntMatrix::identity(7), BigInt::from(q), 1).unwrap()).unwrap();
    (phi, t)
}

#[test]
fn quadratic_on_split_e7() {
    let (phi, t5) = split_e7(5);
    let w0 = longest_element(&phi, &(0..7).collect::<Vec<_>>()).coroot_matrix(&phi);
    assert!(quadratic_on_torus(&t5, &w0, true).unwrap());
    let (_, t17) = split_e7(17);
    assert!(!quadratic_on_torus(&t17, &w0, true).unwrap());
    assert!(quadratic_on_torus(&t17, &IntMatrix::identity(7), true).unwrap());
}

#[test]
fn sweeps() {
    let r = cabanes_sweep("E6", 1, &BigInt::from(13)).unwrap();
    assert_eq!(r.outcome, SweepOutcome::Pass);
    assert!(r.hypothesis_holds);
    let r = cabanes_sweep("E7", 1, &BigInt::from(17)).unwrap();
    assert_eq!(r.outcome, SweepOutcome::Pass);
    let r = cabanes_sweep("E7", 1, &BigInt::from(5)).unwrap();
    assert_eq!(r.outcome, SweepOutcome::ExpectedFail);
    assert!(!r.hypothesis_holds);
    assert!(r.quadratic_classes().iter().any(|c| c.subset.len() == 7));
    assert!(r.ennola_consistent);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn quadratic_verdict_is_a_class_function(
        u in prop::collection::vec(0usize..6, 0..30),
        c in 0usize..16,
        q in prop::sample::select(vec![5i64, 9, 13, 17]),
    ) {
        let phi = RootSystem::shared("E6").unwrap();
        let t = FiniteTorus::new(FrobeniusTwist::new(IntMatrix::identity(6), BigInt::from(q), 1).unwrap()).unwrap();
        let classes = richardson_candidates(&phi, None);
        let rep = &classes[c % classes.len()].representative;
        let g = WeylElement::from_word(&phi, &u).unwrap();
        let conj = rep.conjugate_by(&phi, &g);
        prop_assert!(conj.is_involution());
        prop_assert_eq!(
            quadratic_on_torus(&t, &rep.coroot_matrix(&phi), true).unwrap(),
            quadratic_on_torus(&t, &conj.coroot_matrix(&phi), true).unwrap()
        );
    }

    #[test]
    fn quadratic_filters_agree_on_wreaths(k in 1usize..4, r in 2usize..4) {
        let base = cyclic(1 << k);
        let g = wreath_product(&base, r).unwrap();
        prop_assume!(g.order() <= 4096);
        let v = is_cabanes(&g).unwrap();
        for a in &v.maximal {
            let rep = quadratic_elements(&g, a).unwrap();
            if rep.quotient_is_two_group {
                prop_assert!(rep.filters_agree());
                prop_assert_eq!(v.is_cabanes, rep.quadratic.is_empty());
            }
        }
    }
}
