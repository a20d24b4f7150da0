use std::collections::HashSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use reductive_core::chevalley::{
    all_subsets, check_adams_he, e6_root, verify_adams_he, verify_chevalley2, verify_chevalley3, Adjoint, ChevalleyBasis,
    E6Elements, TitsModelElement,
};
use reductive_core::{RootSystem, WeylElement};

fn adjoint(label: &str) -> &'static Adjoint {
    static A3: OnceLock<Adjoint> = OnceLock::new();
    static D4: OnceLock<Adjoint> = OnceLock::new();
    static E6: OnceLock<Adjoint> = OnceLock::new();
    let cell = match label {
        "A3" => &A3,
        "D4" => &D4,
        "E6" => &E6,
        _ => unreachable!(),
    };
    cell.get_or_init(|| Adjoint::of_type(label).unwrap())
}

fn e6() -> &'static E6Elements {
    static EL: OnceLock<E6Elements> = OnceLock::new();
    EL.get_or_init(|| E6Elements::build().unwrap())
}

#[test]
fn structure_constant_symmetries() {
    for label in ["A2", "D4", "E6"] {
        let phi = RootSystem::shared(label).unwrap();
        let basis = ChevalleyBasis::new(phi.clone()).unwrap();
        let n = phi.len();
        for a in 0..n {
            for b in 0..n {
                let Some(nab) = basis.structure_constant(a, b) else { continue };
                assert_eq!(nab.abs(), 1, "simply laced constants are ±1");
                assert_eq!(basis.structure_constant(b, a), Some(-nab));
                let (ma, mb) = (phi.neg_index(a), phi.neg_index(b));
                assert_eq!(basis.structure_constant(ma, mb), Some(-nab));
                let c = phi.neg_index(basis.root_sum(a, b).unwrap());
                assert_eq!(basis.structure_constant(b, c), Some(nab));
                assert_eq!(basis.structure_constant(c, a), Some(nab));
            }
        }
        basis.check_invariants().unwrap();
        assert!(basis.check_jacobi(1).unwrap() > 0);
    }
}

#[test]
fn n_and_h_relations() {
    let adj = adjoint("E6");
    let phi = adj.phi();
    for k in 0..phi.len() {
        let n = adj.n(k, 1).unwrap();
        let h = adj.h(k, -1).unwrap();
        assert_eq!(n.mul(&n), h);
        assert_eq!(h, adj.h_minus_one_formula(k));
        assert!(h.mul(&h).is_identity());
        let det = n.det();
        assert!(det == 1.into() || det == (-1).into());
    }
}

/// In the adjoint group `H` loses the 2-torsion of the center.
#[test]
fn h_is_elementary_abelian_of_rank_r() {
    for label in ["A2", "A3", "D4", "E6"] {
        let adj = Adjoint::of_type(label).unwrap();
        let phi = adj.phi();
        let gens: Vec<_> = (0..phi.rank()).map(|i| adj.h(phi.simple_index(i), -1).unwrap()).collect();
        let g = adj.generate(&gens, 1 << 12).unwrap();
        let central: u64 = phi.fundamental_group().iter().map(|f| if f % 2 == 0 { 2 } else { 1 }).product();
        assert_eq!(g.order() as u64, (1 << phi.rank()) / central, "{label}");
        assert!(g.is_abelian());
        assert!((0..g.order()).all(|i| g.pow(i, 2) == 0));
        assert!(g.elements().iter().all(|p| adj.perm_in_h(p)));
    }
}

#[test]
fn section_maps_onto_weyl_element() {
    let adj = adjoint("D4");
    let phi = adj.phi();
    let w = WeylElement::from_word(phi, &[0, 1, 2, 1, 3]).unwrap();
    let r = adj.section(&w).unwrap();
    assert_eq!(adj.weyl_image(&r).unwrap(), w);
    adj.check_automorphism(&r).unwrap();
}

#[test]
fn adams_he_all_subsets() {
    for (label, rank) in [("A3", 3), ("D4", 4), ("E6", 6)] {
        let phi = RootSystem::shared(label).unwrap();
        let subsets = all_subsets(rank);
        assert_eq!(subsets.len(), 1 << rank);
        let distinct: HashSet<&Vec<usize>> = subsets.iter().collect();
        assert_eq!(distinct.len(), subsets.len());
        for s in &subsets {
            assert!(check_adams_he(&phi, s), "{label} {s:?}");
        }
    }
    let adj = adjoint("D4");
    for s in all_subsets(4) {
        let c = verify_adams_he(adj, &s).unwrap();
        assert!(c.passed(), "{s:?}");
        assert!(c.model_equal);
    }
}

#[test]
fn rank_one_adams_he() {
    let adj = adjoint("A3");
    let k = adj.phi().simple_index(1);
    let n = adj.n(k, 1).unwrap();
    assert_eq!(n.mul(&n), adj.principal_involution(&[1]).unwrap());
}

#[test]
fn conjugation_signs() {
    let adj = adjoint("E6");
    let phi = adj.phi();
    let a1 = phi.simple_index(0);
    let h = adj.h(a1, -1).unwrap();
    for b in 0..phi.len() {
        let odd = phi.pairing(phi.root(b), phi.root(a1)).rem_euclid(2) == 1;
        assert_eq!(adj.conjugation_sign(&h, b).unwrap(), (b, if odd { -1 } else { 1 }));
        assert_eq!(adj.conjugation_sign(&adj.identity(), b).unwrap(), (b, 1));
    }
    let el = e6();
    let a4 = e6_root(el.phi(), 4);
    assert_eq!(el.adj.conjugation_sign(&el.v_prime, a4).unwrap(), (a4, 1));
}

#[test]
fn gamma_is_an_automorphism() {
    let el = e6();
    el.adj.check_automorphism(&el.gamma).unwrap();
    assert!(el.gamma.mul(&el.gamma).is_identity());
}

#[test]
fn chevalley2_and_chevalley3() {
    let el = e6();
    let r = verify_chevalley2(el).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.order, 192);
    assert_eq!(r.h_intersection_order, 8);
    let r1 = verify_chevalley3(el, 1).unwrap();
    assert!(r1.h_intersection_matches);
    let r2 = verify_chevalley3(el, 2).unwrap();
    assert!(r2.n_power_in_h);
    assert!(r2.notation_flag.is_some());
    assert!(verify_chevalley3(el, 3).is_err());
}

fn word(rank: usize, max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..rank, 0..max)
}

fn labelled_word() -> impl Strategy<Value = (&'static str, Vec<usize>, Vec<usize>)> {
    prop_oneof![Just(("A3", 3usize)), Just(("D4", 4)), Just(("E6", 6))]
        .prop_flat_map(|(label, r)| (Just(label), word(r, 24), word(r, 24)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn section_is_word_independent((label, u, _) in labelled_word()) {
        let adj = adjoint(label);
        let phi = adj.phi();
        let w = WeylElement::from_word(phi, &u).unwrap();
        let mut other = w.inverse(phi).reduced_word(phi);
        other.reverse();
        prop_assert_eq!(adj.section_word(&other).unwrap(), adj.section(&w).unwrap());
        prop_assert_eq!(
            TitsModelElement::identity(phi).mul_word(phi, &other),
            TitsModelElement::section(phi, &w)
        );
    }

    #[test]
    fn section_is_length_additive((label, u, v) in labelled_word()) {
        let adj = adjoint(label);
        let phi = adj.phi();
        let w1 = WeylElement::from_word(phi, &u).unwrap();
        let w2 = WeylElement::from_word(phi, &v).unwrap();
        let w12 = w1.compose(phi, &w2);
        if w1.length() + w2.length() == w12.length() {
            let lhs = adj.section(&w1).unwrap().mul(&adj.section(&w2).unwrap());
            prop_assert_eq!(lhs, adj.section(&w12).unwrap());
        }
        let lw = w12.reduced_word(phi);
        let k = v.len() % (lw.len() + 1);
        let (head, tail) = lw.split_at(k);
        let lhs = adj.section_word(head).unwrap().mul(&adj.section_word(tail).unwrap());
        prop_assert_eq!(lhs, adj.section(&w12).unwrap());
    }

    #[test]
    fn sections_are_integral_unimodular((label, u, _) in labelled_word()) {
        let adj = adjoint(label);
        let w = WeylElement::from_word(adj.phi(), &u).unwrap();
        let det = adj.section(&w).unwrap().det();
        prop_assert!(det == 1.into() || det == (-1).into());
    }
}
