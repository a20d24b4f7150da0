use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use reductive_core::chevalley::E6Elements;
use reductive_core::torus::{degrees, group_order, polynomial_order};
use reductive_core::weyl::longest_element;
use reductive_core::{CyclotomicOrder, FiniteTorus, FrobeniusTwist, IntMatrix, RootSystem, WeylElement};

/// `det(qM − I)` by cofactor-free Bareiss elimination in `i128`.
fn det_oracle(m: &IntMatrix, q: i128) -> i128 {
    let n = m.rows();
    let mut a: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| q * m[(i, j)] as i128 - i128::from(i == j)).collect())
        .collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn torus(m: &IntMatrix, q: i64) -> FiniteTorus {
    FiniteTorus::new(FrobeniusTwist::new(m.clone(), BigInt::from(q), 1).unwrap()).unwrap()
}

fn three_way(m: &IntMatrix, q: i64) {
    let t = torus(m, q);
    let oracle = BigInt::from(det_oracle(m, q as i128).abs());
    assert_eq!(t.order(), oracle, "q = {q}");
    assert_eq!(t.det_order(), oracle);
    assert_eq!(polynomial_order(m).unwrap().eval(&BigInt::from(q)), oracle);
}

#[test]
fn split_torus_factors() {
    for q in [3, 5, 9, 25] {
        let t = torus(&IntMatrix::identity(6), q);
        assert_eq!(t.invariant_factors(), vec![BigInt::from(q - 1); 6].as_slice());
        assert_eq!(polynomial_order(&IntMatrix::identity(4)).unwrap(), CyclotomicOrder::phi(1, 4));
    }
}

#[test]
fn e6_constructions() {
    let el = E6Elements::build().unwrap();
    let v = el.adj.weyl_image(&el.v).unwrap();
    assert_eq!(polynomial_order(v.matrix()).unwrap(), CyclotomicOrder::from_pairs(&[(1, 3), (2, 3)]));
    let vp = el.adj.weyl_image(&el.v_prime).unwrap();
    assert_eq!(vp.order(), 3);
    // an order-3 matrix has only Φ1 and Φ3 factors
    let c = polynomial_order(vp.matrix()).unwrap();
    assert!(c.factors.keys().all(|&d| d == 1 || d == 3));
    for q in [5, 7, 13] {
        three_way(v.matrix(), q);
        three_way(vp.matrix(), q);
    }
}

#[test]
fn triality_torus() {
    let phi = RootSystem::of_type("D4").unwrap();
    let sigma = WeylElement::diagram_symmetry(&phi, &[3, 1, 0, 2]).unwrap();
    let w0 = longest_element(&phi, &[0, 1, 2, 3]);
    assert_eq!(polynomial_order(sigma.matrix()).unwrap(), CyclotomicOrder::from_pairs(&[(1, 2), (3, 1)]));
    let twisted = w0.compose(&phi, &sigma);
    assert_eq!(polynomial_order(twisted.matrix()).unwrap(), CyclotomicOrder::from_pairs(&[(2, 2), (6, 1)]));
    three_way(sigma.matrix(), 7);
    three_way(twisted.matrix(), 7);
}

#[test]
fn w0_twist_is_ennola_of_split() {
    let phi = RootSystem::of_type("E6").unwrap();
    let w0 = longest_element(&phi, &(0..6).collect::<Vec<_>>());
    let c = polynomial_order(w0.matrix()).unwrap();
    assert_eq!(c.degree(), 6);
    assert!(c.factors.keys().all(|&d| d == 1 || d == 2));
    assert!(c.multiplicity(2) > c.multiplicity(1));
    assert_eq!(CyclotomicOrder::phi(1, 6).ennola(), CyclotomicOrder::phi(2, 6));
    let minus = polynomial_order(&IntMatrix::identity(6).neg()).unwrap();
    assert_eq!(minus, CyclotomicOrder::phi(1, 6).ennola());
}

#[test]
fn generic_group_orders() {
    let q = BigInt::from(5);
    let a2 = group_order(&"A2".parse().unwrap()).eval(&q);
    assert_eq!(a2, BigInt::from(125 * 24 * 124));
    let a1 = group_order(&"A1".parse().unwrap()).eval(&q);
    assert_eq!(a1, BigInt::from(5 * 24));
    let e6: reductive_core::RootSystemLabel = "E6".parse().unwrap();
    assert_eq!(degrees(&e6.0[0]), vec![2, 5, 6, 8, 9, 12]);
}

#[test]
fn ennola_examples() {
    let c = CyclotomicOrder::from_pairs(&[(1, 3), (2, 3)]);
    assert_eq!(c.ennola(), c);
    assert_eq!(CyclotomicOrder::phi(3, 1).ennola(), CyclotomicOrder::phi(6, 1));
}

#[test]
fn induced_actions() {
    let phi = RootSystem::of_type("E6").unwrap();
    let id = IntMatrix::identity(6);
    let t = torus(&id, 7);
    assert!(t.induced_action(&id).unwrap().is_identity());
    let w0 = longest_element(&phi, &(0..6).collect::<Vec<_>>());
    let act = t.induced_action(w0.matrix()).unwrap();
    let gamma = WeylElement::diagram_symmetry(&phi, &[5, 1, 4, 3, 2, 0]).unwrap();
    // on the split torus w0 = -γ, so w0 composed with γ is negation
    let neg = act.compose(&t.induced_action(gamma.matrix()).unwrap());
    assert!(neg.scale(-1).is_identity());

    let el = E6Elements::build().unwrap();
    let vp = el.adj.weyl_image(&el.v_prime).unwrap();
    let tv = torus(vp.matrix(), 7);
    assert_eq!(tv.induced_action(vp.matrix()).unwrap().order(12), Some(3));
    assert!(t.induced_action(vp.matrix()).is_ok());
    for i in 0..6 {
        let s = WeylElement::simple_reflection(&phi, i);
        let commutes = s.matrix().mul_mat(vp.matrix()) == vp.matrix().mul_mat(s.matrix());
        assert_eq!(tv.induced_action(s.matrix()).is_ok(), commutes);
    }
}

fn cyclotomic_order() -> impl Strategy<Value = CyclotomicOrder> {
    prop::collection::btree_map(1u32..40, 1u32..4, 0..5).prop_map(|factors: BTreeMap<u32, u32>| CyclotomicOrder {
        q_power: 0,
        factors,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ennola_is_an_involution(c in cyclotomic_order()) {
        prop_assert_eq!(c.ennola().ennola(), c.clone());
        prop_assert_eq!(c.ennola().degree(), c.degree());
    }

    #[test]
    fn ennola_evaluates_at_minus_q(c in cyclotomic_order(), q in 3i64..40) {
        let q = BigInt::from(q);
        let minus = c.eval(&-q.clone());
        let plus = c.ennola().eval(&q);
        prop_assert_eq!(minus.magnitude(), plus.magnitude());
    }

    #[test]
    fn weyl_tori_are_three_way_consistent(u in prop::collection::vec(0usize..6, 0..30), q in prop::sample::select(vec![3i64, 5, 7, 9, 11, 13, 25, 27])) {
        let phi = RootSystem::shared("E6").unwrap();
        let w = WeylElement::from_word(&phi, &u).unwrap();
        three_way(w.matrix(), q);
    }

    #[test]
    fn polynomial_order_is_a_class_function(u in prop::collection::vec(0usize..6, 0..30), g in prop::collection::vec(0usize..6, 0..30)) {
        let phi = RootSystem::shared("E6").unwrap();
        let w = WeylElement::from_word(&phi, &u).unwrap();
        let g = WeylElement::from_word(&phi, &g).unwrap();
        prop_assert_eq!(polynomial_order(w.matrix()).unwrap(), polynomial_order(w.conjugate_by(&phi, &g).matrix()).unwrap());
    }

    #[test]
    fn induced_order_divides_matrix_order(u in prop::collection::vec(0usize..6, 0..30), q in prop::sample::select(vec![5i64, 7, 9])) {
        let phi = RootSystem::shared("E6").unwrap();
        let w = WeylElement::from_word(&phi, &u).unwrap();
        let t = torus(w.matrix(), q);
        let act = t.induced_action(w.matrix()).unwrap();
        let o = act.order(w.order()).unwrap();
        prop_assert_eq!(w.order() % o, 0);
    }
}
