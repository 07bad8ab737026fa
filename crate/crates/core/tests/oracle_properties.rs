use g2_unramified::localmodels::EpsChoice;
use g2_unramified::oracle::*;
use g2_unramified::zeta::{self, JMutation};
use g2_unramified::{ExpPoly, RatFunc};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn points() -> Vec<NumericPoint> {
    suite_points(&OracleConfig::default())
}

fn eps_of(pt: &NumericPoint) -> RatFunc {
    RatFunc::int(pt.eps as i64)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).norm() / a.norm().max(b.norm())
    }
}

#[test]
fn exact_identities_agree_numerically() {
    let pts = points();
    for (name, _, lhs, rhs) in zeta::lemma_identities(8, 6) {
        for n in 0..=6 {
            let (l, r) = (lhs(n).unwrap(), rhs(n).unwrap());
            for pt in &pts {
                let e = rel(eval_ratfunc(&l, pt).unwrap(), eval_ratfunc(&r, pt).unwrap());
                assert!(e <= 1e-10, "{name} n={n} seed={}: {e:e}", pt.seed);
            }
        }
    }
    for pt in &pts {
        let e = eps_of(pt);
        let lf = zeta::local_factor(&e).unwrap();
        let target = zeta::l_ratio_target(&e).unwrap();
        let err = rel(eval_ratfunc(&lf, pt).unwrap(), eval_ratfunc(&target, pt).unwrap());
        assert!(err <= 1e-10, "seed={}: {err:e}", pt.seed);
    }
}

fn summand(eps: &RatFunc) -> ExpPoly {
    zeta::bfh_exp(eps)
        .unwrap()
        .mul(&zeta::j_exp().unwrap())
        .unwrap()
        .twist(&zeta::final_weight(eps).unwrap())
        .unwrap()
}

#[test]
fn weighted_sums_match_truncated_sums() {
    let t = zeta::x_var();
    let pts = points();
    assert!(pts.len() >= 10);
    for pt in &pts {
        let e = eps_of(pt);
        let tv = eval_ratfunc(&t, pt).unwrap();
        for (name, f) in [("I", zeta::i_exp().unwrap()), ("J", zeta::j_exp().unwrap()), ("W", zeta::bfh_exp(&e).unwrap())] {
            let closed = eval_ratfunc(&f.weighted_sum(&t).unwrap(), pt).unwrap();
            let num = NumericExp::new(&f, pt).unwrap();
            let rho = num.spectral_radius().max(1.0) * tv.norm();
            let s = truncated_series(|n| num.eval(n) * tv.powi(n as i32), 200, rho).unwrap();
            assert!(rel(closed, s.sum) <= 1e-10, "{name} seed={}", pt.seed);
        }
        // The final series itself, with unit weight.
        let f = summand(&e);
        let closed = eval_ratfunc(&f.weighted_sum(&RatFunc::one()).unwrap(), pt).unwrap();
        let num = NumericExp::new(&f, pt).unwrap();
        let s = truncated_series(|n| num.eval(n), 200, num.spectral_radius()).unwrap();
        assert!(rel(closed, s.sum) <= 1e-10, "final seed={}", pt.seed);
        assert!(rel(closed, eval_ratfunc(&zeta::local_factor(&e).unwrap(), pt).unwrap()) <= 1e-10);
    }
}

#[test]
fn summation_order_does_not_matter() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for pt in points() {
        let f = summand(&eps_of(&pt));
        let num = NumericExp::new(&f, &pt).unwrap();
        let mut terms: Vec<Complex64> = (0..200).map(|n| num.eval(n)).collect();
        let forward = neumaier_sum(terms.iter().copied());
        let backward = neumaier_sum(terms.iter().rev().copied());
        terms.shuffle(&mut rng);
        let shuffled = neumaier_sum(terms.iter().copied());
        assert!(rel(forward, backward) <= 1e-12);
        assert!(rel(forward, shuffled) <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn truncation_error_within_tail_bound(
        r in 0.05f64..0.95, arg in 0.0f64..std::f64::consts::TAU, c in 0.1f64..10.0, n in 5usize..200,
    ) {
        let ratio = Complex64::from_polar(r, arg);
        let exact = Complex64::new(c, 0.0) / (Complex64::new(1.0, 0.0) - ratio);
        let s = truncated_series(|k| c * ratio.powi(k as i32), n, r).unwrap();
        let err = (s.sum - exact).norm();
        prop_assert!(err <= s.tail_bound * (1.0 + 1e-9) + 1e-14 * exact.norm(), "{} > {}", err, s.tail_bound);
    }
}

#[test]
fn default_suite_passes() {
    let cfg = OracleConfig::default();
    let reports = run_suite(&suite_points(&cfg), &cfg).unwrap();
    assert!(!reports.is_empty());
    for r in &reports {
        assert!(r.pass, "{} seed={} {:?} rel={:e} tail={:e}", r.label, r.seed, r.verdict, r.relative_error, r.tail_bound);
        assert!(r.relative_error <= cfg.tol);
    }
    let finals: Vec<_> = reports.iter().filter(|r| r.label == FINAL_LABEL).collect();
    assert_eq!(finals.len(), 10);
    assert!(finals.iter().any(|r| r.eps == 1) && finals.iter().any(|r| r.eps == -1));
    assert!(finals.iter().all(|r| r.tail_bound < 1e-12 && r.terms_used == 200));
}

#[test]
fn slow_convergence_is_inconclusive() {
    let cfg = OracleConfig { s: 0.3, points: 2, ..OracleConfig::default() };
    let reports = run_suite(&suite_points(&cfg), &cfg).unwrap();
    let finals: Vec<_> = reports.iter().filter(|r| r.label == FINAL_LABEL).collect();
    assert!(!finals.is_empty());
    for r in finals {
        assert_eq!(r.verdict, Verdict::Inconclusive, "{r:?}");
        assert!(!r.pass);
    }
}

#[test]
fn branch_mutations_are_caught() {
    let cfg = OracleConfig::default();
    let pts = suite_points(&cfg);
    for m in JMutation::ALL {
        let exact_broken = [EpsChoice::Minus, EpsChoice::Plus, EpsChoice::Symbolic]
            .into_iter()
            .all(|e| !zeta::verify_main_identity_mutated(e, Some(m)).unwrap().equal);
        assert!(exact_broken, "{m:?}");
        let bundle = SymbolicBundle::new(Some(m)).unwrap();
        let numeric_broken = run_suite_with(&pts, &bundle, &cfg).iter().any(|r| r.verdict == Verdict::Fail);
        match m {
            JMutation::ZeroBranch | JMutation::OneBranch => assert!(numeric_broken, "{m:?}"),
            // The change has relative size about Y^2 = q^(-12s+4), far below double precision.
            JMutation::MiddleTerm | JMutation::TailTerm => {}
        }
    }
}
