use g2_unramified::ratfunc::text::parse_ratfunc;
use g2_unramified::ratfunc::{geom_sum, Monomial, Var, NVARS};
use g2_unramified::scalar::{q, qi};
use g2_unramified::{ExpPoly, LaurentPoly, RatFunc, Q};
use proptest::prelude::*;

fn coef() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=4).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| q(n, d))
}

fn monomial() -> impl Strategy<Value = Monomial> {
    (prop::array::uniform5(-3i16..=3), 0i16..=1).prop_map(|(e, s)| {
        let mut m = [0i16; NVARS];
        m[..5].copy_from_slice(&e);
        m[Var::Eps as usize] = s;
        Monomial(m)
    })
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((monomial(), coef()), 0..5).prop_map(LaurentPoly::from_terms)
}

fn nonzero_laurent() -> impl Strategy<Value = LaurentPoly> {
    laurent().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (laurent(), nonzero_laurent()).prop_map(|(n, d)| RatFunc::from_parts(n, d).unwrap())
}

/// A ratio `c * monomial` different from 1.
fn ratio() -> impl Strategy<Value = RatFunc> {
    (monomial(), coef())
        .prop_filter("not one", |(m, c)| !(m.is_one() && *c == qi(1)))
        .prop_map(|(m, c)| RatFunc::from_poly(LaurentPoly::term(m, c)))
}

fn exppoly() -> impl Strategy<Value = ExpPoly> {
    (prop::collection::vec((ratfunc(), ratio()), 0..3), prop::collection::vec(ratfunc(), 0..3))
        .prop_map(|(g, o)| ExpPoly::new(g, o).unwrap())
}

fn eps() -> RatFunc {
    RatFunc::var(Var::Eps)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.add(&LaurentPoly::zero()), a.clone());
        let ab = a.checked_mul(&b).unwrap();
        prop_assert_eq!(ab.clone(), b.checked_mul(&a).unwrap());
        prop_assert_eq!(ab.checked_mul(&c).unwrap(), a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.checked_mul(&b.add(&c)).unwrap(),
            ab.add(&a.checked_mul(&c).unwrap())
        );
        prop_assert_eq!(a.checked_mul(&LaurentPoly::one()).unwrap(), a);
    }

    #[test]
    fn ratfunc_field_laws(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        let ab = a.checked_mul(&b).unwrap();
        prop_assert_eq!(ab.clone(), b.checked_mul(&a).unwrap());
        prop_assert_eq!(
            a.checked_mul(&b.checked_add(&c).unwrap()).unwrap(),
            ab.checked_add(&a.checked_mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.checked_sub(&a).unwrap().is_zero());
        if !b.is_zero() {
            prop_assert_eq!(a.checked_div(&b).unwrap().checked_mul(&b).unwrap(), a);
        }
    }

    #[test]
    fn equality_is_an_equivalence(a in ratfunc(), k in ratfunc().prop_filter("nonzero", |k| !k.is_zero())) {
        // b and c are the same function written with different denominators.
        let b = a.checked_mul(&k).unwrap().checked_div(&k).unwrap();
        let c = a.checked_add(&k).unwrap().checked_sub(&k).unwrap();
        prop_assert!(a.equals(&a).unwrap());
        prop_assert_eq!(a.equals(&b).unwrap(), b.equals(&a).unwrap());
        prop_assert!(a.equals(&b).unwrap() && b.equals(&c).unwrap() && a.equals(&c).unwrap());
    }

    #[test]
    fn eps_squares_to_one(f in ratfunc(), g in ratfunc()) {
        let lhs = eps().checked_mul(&f).unwrap().checked_mul(&eps().checked_mul(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, f.checked_mul(&g).unwrap());
        for s in [-1i8, 1] {
            let e = RatFunc::int(s as i64);
            let lhs = f.checked_mul(&eps()).unwrap().specialize_eps(s).unwrap();
            prop_assert_eq!(lhs, f.specialize_eps(s).unwrap().checked_mul(&e).unwrap());
        }
    }

    #[test]
    fn display_parse_round_trip(f in ratfunc()) {
        let text = f.to_string();
        let back = parse_ratfunc(&text).unwrap();
        prop_assert_eq!(back, f, "{}", text);
    }

    #[test]
    fn geometric_sum_shift(c in ratfunc(), r in ratio(), n0 in -3i64..4) {
        let head = c.checked_mul(&r.checked_pow(n0 as i32).unwrap()).unwrap();
        let lhs = geom_sum(&c, &r, n0).unwrap();
        let rhs = head.checked_add(&geom_sum(&c, &r, n0 + 1).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exppoly_pointwise(f in exppoly(), g in exppoly()) {
        let sum = f.add(&g).unwrap();
        let diff = f.sub(&g).unwrap();
        let prod = f.mul(&g).unwrap();
        for n in 0..6 {
            let (a, b) = (f.eval(n).unwrap(), g.eval(n).unwrap());
            prop_assert_eq!(sum.eval(n).unwrap(), a.checked_add(&b).unwrap());
            prop_assert_eq!(diff.eval(n).unwrap(), a.checked_sub(&b).unwrap());
            prop_assert_eq!(prod.eval(n).unwrap(), a.checked_mul(&b).unwrap());
        }
    }

    #[test]
    fn exppoly_shift_and_twist(f in exppoly(), t in ratio(), k in 0usize..3) {
        let shifted = f.shift(k).unwrap();
        let twisted = f.twist(&t).unwrap();
        for n in 0..6i64 {
            let expect = if n < k as i64 { RatFunc::zero() } else { f.eval(n - k as i64).unwrap() };
            prop_assert_eq!(shifted.eval(n).unwrap(), expect);
            let tw = f.eval(n).unwrap().checked_mul(&t.checked_pow(n as i32).unwrap()).unwrap();
            prop_assert_eq!(twisted.eval(n).unwrap(), tw);
        }
    }
}

#[test]
fn weighted_sum_of_shift() {
    // sum_n f(n - 1) t^n = t sum_n f(n) t^n
    let z = RatFunc::var(Var::Z);
    let a = RatFunc::var(Var::A);
    let f = ExpPoly::new(
        vec![(RatFunc::int(3), a.clone()), (RatFunc::one(), a.checked_inv().unwrap())],
        vec![RatFunc::int(7)],
    )
    .unwrap();
    let lhs = f.shift(1).unwrap().weighted_sum(&z).unwrap();
    let rhs = z.checked_mul(&f.weighted_sum(&z).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
}
