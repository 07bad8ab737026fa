use g2_unramified::adjoint::{AdjointModel, Matrix};
use g2_unramified::localmodels::{weil_apply_word, JacobiGen, WeilState};
use g2_unramified::relations::{commutator_rule, commutator_terms, commuting_pairs, torus_exponents};
use g2_unramified::rootsys::*;
use g2_unramified::scalar::q;
use g2_unramified::words::{normal_order, pr, v_coordinates, v_element, Gen, Heisenberg, Word};
use g2_unramified::{Field, Q};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn model() -> &'static AdjointModel {
    AdjointModel::shared().expect("adjoint model")
}

fn rat() -> impl Strategy<Value = Q> {
    (-12i64..=12, 1i64..=7).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| q(n, d))
}

fn any_root() -> impl Strategy<Value = Root> {
    (0usize..12).prop_map(|i| all_roots()[i])
}

fn positive_root() -> impl Strategy<Value = Root> {
    (0usize..6).prop_map(|i| POSITIVE_ROOTS[i])
}

fn xm(g: Root, t: &Q) -> Matrix<Q> {
    model().x(g, t)
}

#[test]
fn root_system_closure() {
    let roots = all_roots();
    for a in roots {
        assert_eq!(-(-a), a);
        assert!(roots.contains(&-a));
        assert_eq!(pairing(a, a).unwrap(), 2);
        for b in roots {
            let r = reflect(b, a).unwrap();
            assert!(roots.contains(&r), "s_{a}({b})");
            assert_eq!(reflect(r, a).unwrap(), b);
        }
    }
    assert_eq!(weyl_group().len(), 12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn one_parameter_law(g in any_root(), s in rat(), t in rat()) {
        prop_assert_eq!(xm(g, &s).matmul(&xm(g, &t)), xm(g, &(s.clone() + t.clone())));
        prop_assert!(xm(g, &s).matmul(&xm(g, &-s)).is_identity());
    }

    #[test]
    fn torus_is_multiplicative(a in rat(), b in rat(), c in rat(), d in rat()) {
        let m = model();
        let lhs = m.h(&a, &b).unwrap().matmul(&m.h(&c, &d).unwrap());
        prop_assert_eq!(lhs, m.h(&(a * c), &(b * d)).unwrap());
    }

    #[test]
    fn torus_acts_by_characters(g in any_root(), t1 in rat(), t2 in rat(), r in rat()) {
        let m = model();
        let h = m.h(&t1, &t2).unwrap();
        let hinv = m.h(&t1.try_inv().unwrap(), &t2.try_inv().unwrap()).unwrap();
        let (e1, e2) = torus_exponents(g);
        let c = t1.pow_i(e1 as i64).unwrap() * t2.pow_i(e2 as i64).unwrap();
        prop_assert_eq!(h.matmul(&xm(g, &r)).matmul(&hinv), xm(g, &(c * r)));
    }

    #[test]
    fn commutators_follow_the_table(i in 0usize..6, j in 0usize..6, s in rat(), t in rat()) {
        let (a, b) = (POSITIVE_ROOTS[i], POSITIVE_ROOTS[j]);
        prop_assume!(a != b);
        let lhs = model().group_commutator(a, &s, b, &t);
        match commutator_rule(a, b) {
            Some(rule) => {
                let mut rhs = Matrix::<Q>::identity(14);
                for (root, v) in commutator_terms(rule, &s, &t) {
                    rhs = rhs.matmul(&xm(root, &v));
                }
                prop_assert_eq!(lhs, rhs);
            }
            None => {
                if commuting_pairs().contains(&(a, b)) || commuting_pairs().contains(&(b, a)) {
                    prop_assert!(lhs.is_identity());
                }
            }
        }
    }

    #[test]
    fn elements_preserve_killing_form(g in any_root(), t in rat(), a in rat(), b in rat()) {
        let m = model();
        let x = xm(g, &t);
        prop_assert!(x.det().is_one());
        prop_assert!(m.preserves_killing(&x));
        let h = m.h(&a, &b).unwrap();
        prop_assert!(h.det().is_one());
        prop_assert!(m.preserves_killing(&h));
        let w = m.w(g, &t).unwrap();
        prop_assert!(m.preserves_killing(&w));
    }

    #[test]
    fn normal_order_is_idempotent_and_exact(
        gens in prop::collection::vec((positive_root(), rat()), 1..7)
    ) {
        let w = Word::from_gens(gens.into_iter().map(|(r, t)| Gen::X(r, t)).collect());
        let n = normal_order(&w).unwrap();
        prop_assert_eq!(normal_order(&n).unwrap(), n.clone());
        prop_assert_eq!(n.eval(model()).unwrap(), w.eval(model()).unwrap());
        let idx: Vec<usize> = n.gens.iter().map(|g| match g {
            Gen::X(r, _) => normal_index(*r).unwrap(),
            _ => usize::MAX,
        }).collect();
        prop_assert!(idx.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn pr_is_a_homomorphism(
        u in prop::array::uniform5(rat()),
        v in prop::array::uniform5(rat()),
    ) {
        let a = v_element(u.clone());
        let b = v_element(v.clone());
        let ab = pr(&(a.clone() * b.clone())).unwrap();
        prop_assert_eq!(ab, pr(&a).unwrap() * pr(&b).unwrap());
        // The centre of V is the kernel.
        let z = Q::zero();
        let central = v_element([z.clone(), z.clone(), z, u[3].clone(), u[4].clone()]);
        prop_assert_eq!(pr(&central).unwrap(), Heisenberg::identity());
    }

    #[test]
    fn v_coordinates_round_trip(u in prop::array::uniform5(rat())) {
        prop_assert_eq!(v_coordinates(&v_element(u.clone())).unwrap(), u);
    }
}

#[test]
fn normal_order_over_many_words() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..25 {
        let len = rng.gen_range(2..9);
        let gens = (0..len)
            .map(|_| {
                let r = POSITIVE_ROOTS[rng.gen_range(0..6)];
                let n: i64 = rng.gen_range(1..10) * if rng.gen_bool(0.5) { 1 } else { -1 };
                Gen::X(r, q(n, rng.gen_range(1..5)))
            })
            .collect();
        let w = Word::from_gens(gens);
        let n = normal_order(&w).unwrap();
        assert_eq!(n.eval(model()).unwrap(), w.eval(model()).unwrap(), "{w}");
    }
}

// Jacobi group inside G2: N(b) = x_b(b), T(a) = h(a, 1/a),
// Heis(r1, r2, r3) = [r1, r2, r3 + r1 r2, 0, 0].
#[derive(Clone, Debug)]
enum Jac {
    N(Q),
    T(Q),
    Heis(Q, Q, Q),
}

fn jac() -> impl Strategy<Value = Jac> {
    prop_oneof![
        rat().prop_map(Jac::N),
        rat().prop_map(Jac::T),
        (rat(), rat(), rat()).prop_map(|(a, b, c)| Jac::Heis(a, b, c)),
    ]
}

fn jac_matrix(j: &Jac) -> Matrix<Q> {
    let m = model();
    match j {
        Jac::N(b) => m.x(BETA, b),
        Jac::T(a) => m.h(a, &a.try_inv().unwrap()).unwrap(),
        Jac::Heis(r1, r2, r3) => {
            let z = Q::zero();
            v_element([r1.clone(), r2.clone(), r3.clone() + r1.clone() * r2.clone(), z.clone(), z])
                .eval(m)
                .unwrap()
        }
    }
}

fn jac_gen(j: &Jac) -> JacobiGen<Q> {
    match j {
        Jac::N(b) => JacobiGen::N(b.clone()),
        Jac::T(a) => JacobiGen::T(a.clone()),
        Jac::Heis(a, b, c) => JacobiGen::Heis(a.clone(), b.clone(), c.clone()),
    }
}

/// Write `g = h(a, 1/a) x_b(b) v` with `v` in V.
fn jacobi_factor(g: &Matrix<Q>) -> (Q, Q, [Q; 5]) {
    let m = model();
    let two = Q::from_i64(2);
    let probe = m.h(&two, &two.try_inv().unwrap()).unwrap();
    let k = (0..14).find(|&i| *probe.get(i, i) == two).expect("a weight with character a");
    let a = g.get(k, k).clone();
    let rest = m.h(&a.try_inv().unwrap(), &a).unwrap().matmul(g);
    let mut order = vec![BETA];
    order.extend(V_ROOTS);
    let t = m.decompose_ordered(&rest, &order).expect("Borel element");
    let v: [Q; 5] = std::array::from_fn(|i| t[i + 1].clone());
    (a, t[0].clone(), v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn weil_action_matches_group_law(word in prop::collection::vec(jac(), 1..6)) {
        let mut g = Matrix::<Q>::identity(14);
        for j in &word {
            g = g.matmul(&jac_matrix(j));
        }
        let (a, b, v) = jacobi_factor(&g);
        let h = pr(&v_element(v)).unwrap();
        let heis_r3 = h.z.clone();
        let folded = vec![
            JacobiGen::T(a),
            JacobiGen::N(b),
            JacobiGen::Heis(h.x.clone(), h.y.clone(), heis_r3),
        ];
        let phi = WeilState::<Q>::test_function();
        let direct = weil_apply_word(&word.iter().map(jac_gen).collect::<Vec<_>>(), &phi).unwrap();
        let via_group = weil_apply_word(&folded, &phi).unwrap();
        prop_assert!(direct.same_action(&via_group), "{:?}\n{:?}", direct, via_group);
    }
}
