//! The local zeta integral: the auxiliary integrals `I, J1, R1, R2, R, J`
//! in closed form and from their defining sums, the assembled local factor
//! and its comparison with the expected ratio of L-factors.
//!
//! Internal variables: `H = q^(1/2)`, `Z = q^(-3s)`, so that
//! `X = q^(-(3s-3/2)) = Z H^3` and `Y = q^(-6s+2) b1 b2 = Z^2 H^4 b1 b2`.

use rayon::prelude::*;
use serde::Serialize;

use crate::localmodels::{additive_integral, bfh_whittaker, central_twist, gauss_unit, shintani, EpsChoice};
use crate::ratfunc::{geom_sum, ExpPoly, RatFunc, RatFuncError, Var};
use crate::scalar::qi;

type R<T> = Result<T, RatFuncError>;

fn mono(exps: &[(Var, i32)]) -> RatFunc {
    RatFunc::monomial(qi(1), exps)
}

fn h_pow(k: i64) -> R<RatFunc> {
    RatFunc::var(Var::H).checked_pow(k as i32)
}

pub fn x_var() -> RatFunc {
    mono(&[(Var::Z, 1), (Var::H, 3)])
}

pub fn y_var() -> RatFunc {
    mono(&[(Var::Z, 2), (Var::H, 4), (Var::B1, 1), (Var::B2, 1)])
}

fn q_inv() -> RatFunc {
    mono(&[(Var::H, -2)])
}

fn one_minus(f: &RatFunc) -> R<RatFunc> {
    RatFunc::one().checked_sub(f)
}

/// `-q^(-6s(n+1)+n+2) (b1 b2)^(n+1)`, split as `-(Z^2 H^4 b1 b2) (Z^2 H^2 b1 b2)^n`.
fn r1_boundary(n: i64) -> R<RatFunc> {
    let head = y_var();
    let ratio = mono(&[(Var::Z, 2), (Var::H, 2), (Var::B1, 1), (Var::B2, 1)]);
    Ok(-head.checked_mul(&ratio.checked_pow(n as i32)?)?)
}

/// `q^(-12s+3) (b1 b2)^2`.
fn r1_prefactor() -> R<RatFunc> {
    h_pow(6)?.checked_mul(&central_twist(2)?)
}

/// `I(n)` from its defining sum over shells `|r| = q^m`.
pub fn i_defining(n: i64) -> R<RatFunc> {
    let mut acc = shintani(0, n)?.checked_mul(&additive_integral(0))?;
    // shintani(m, n - m) vanishes for m > n.
    for m in 1..=n {
        let shell = gauss_unit(0).checked_mul(&h_pow(2 * m)?)?;
        acc = acc.checked_add(&shell.checked_mul(&shintani(m, n - m)?)?)?;
    }
    Ok(acc)
}

/// The closed form of `I(n)` written out directly.
pub fn i_display(n: i64) -> R<RatFunc> {
    let (b1, b2, x) = (RatFunc::var(Var::B1), RatFunc::var(Var::B2), x_var());
    let k = n as i32;
    let b12x = b1.checked_mul(&b2)?.checked_mul(&x)?;
    let big_k = gauss_unit(0)
        .checked_mul(&b12x)?
        .checked_div(&one_minus(&b1.checked_mul(&x)?)?.checked_mul(&one_minus(&b2.checked_mul(&x)?)?)?)?;
    let inner = b1.checked_pow(k)? - b2.checked_pow(k)? - b1.checked_pow(k + 1)? * x.clone()
        + b2.checked_pow(k + 1)? * x.clone()
        + b1.clone() * x.clone() * b12x.checked_pow(k)?
        - b2.clone() * x.clone() * b12x.checked_pow(k)?;
    let bracket = b1.checked_pow(k + 1)? - b2.checked_pow(k + 1)? + big_k * inner;
    mono(&[(Var::Z, 1), (Var::H, -1)])
        .checked_pow(k)?
        .checked_mul(&bracket)?
        .checked_div(&b1.checked_sub(&b2)?)
}

/// The closed form of `I` as an exponential sum in `n`, with ratios
/// `b1 P`, `b2 P` and `b1 b2 X P` where `P = q^(-(3s+1/2)) = Z/H`.
pub fn i_exp() -> R<ExpPoly> {
    let (b1, b2, x) = (RatFunc::var(Var::B1), RatFunc::var(Var::B2), x_var());
    let b12x = b1.checked_mul(&b2)?.checked_mul(&x)?;
    let big_k = gauss_unit(0)
        .checked_mul(&b12x)?
        .checked_div(&one_minus(&b1.checked_mul(&x)?)?.checked_mul(&one_minus(&b2.checked_mul(&x)?)?)?)?;
    let geo = |c: RatFunc, r: &RatFunc| ExpPoly::geometric(c, r.clone());
    let leading = geo(b1.clone(), &b1).sub(&geo(b2.clone(), &b2))?;
    let inner = geo(RatFunc::one(), &b1)
        .sub(&geo(RatFunc::one(), &b2))?
        .sub(&geo(b1.checked_mul(&x)?, &b1))?
        .add(&geo(b2.checked_mul(&x)?, &b2))?
        .add(&geo(b1.checked_mul(&x)?, &b12x))?
        .sub(&geo(b2.checked_mul(&x)?, &b12x))?;
    let bracket = leading.add(&inner.scale(&big_k)?)?;
    let outer = geo(RatFunc::one().checked_div(&b1.checked_sub(&b2)?)?, &mono(&[(Var::Z, 1), (Var::H, -1)]));
    outer.mul(&bracket)
}

pub fn i_closed(n: i64) -> R<RatFunc> {
    i_exp()?.eval(n)
}

pub fn j1_lemma(n: i64) -> R<RatFunc> {
    let y = y_var();
    one_minus(&q_inv().checked_mul(&y)?)?.checked_div(&one_minus(&y)?)?.checked_mul(&i_closed(n)?)
}

/// `J11 + J12 = I(n) + sum_{m >= 1} (1 - q^-1) Y^m I(n)`.
pub fn j1_decomposition(n: i64) -> R<RatFunc> {
    let i = i_defining(n)?;
    i.checked_add(&geom_sum(&gauss_unit(0).checked_mul(&i)?, &y_var(), 1)?)
}

pub fn r1_closed(n: i64) -> R<RatFunc> {
    if n <= 1 {
        return Ok(RatFunc::zero());
    }
    r1_prefactor()?.checked_mul(&i_closed(n - 1)?)?.checked_add(&r1_boundary(n)?)
}

/// The shell sum for `R1(n)` with the additive and unit-group integrals
/// taken from the tables.
pub fn r1_defining(n: i64) -> R<RatFunc> {
    let mut inner = shintani(0, n - 1)?.checked_mul(&additive_integral(n - 2))?;
    // Beyond m = n the Whittaker value vanishes.
    for m in 1..=n + 1 {
        let term = shintani(m, n - m - 1)?.checked_mul(&h_pow(2 * m)?)?.checked_mul(&gauss_unit(n - m - 2))?;
        inner = inner.checked_add(&term)?;
    }
    r1_prefactor()?.checked_mul(&inner)
}

pub fn r2_closed(n: i64) -> R<RatFunc> {
    let y = y_var();
    let tail = gauss_unit(0).checked_mul(&y)?.checked_div(&one_minus(&y)?)?;
    if n == 0 {
        let i0 = i_closed(0)?;
        i0.checked_mul(&y)?.checked_mul(&(-q_inv()).checked_add(&tail)?)
    } else {
        i_closed(n)?.checked_mul(&tail)
    }
}

/// `I(n) sum_{m >= 1} Y^m int_{o^x} psi(p^(m+n-2) u) du`.
pub fn r2_defining(n: i64) -> R<RatFunc> {
    let y = y_var();
    let stable = (2 - n).max(1);
    let mut sum = RatFunc::zero();
    for m in 1..stable {
        sum = sum.checked_add(&y.checked_pow(m as i32)?.checked_mul(&gauss_unit(m + n - 2))?)?;
    }
    sum = sum.checked_add(&geom_sum(&gauss_unit(0), &y, stable)?)?;
    i_defining(n)?.checked_mul(&sum)
}

/// The three-branch closed form of `R(n)`.
pub fn r_lemma(n: i64) -> R<RatFunc> {
    let y = y_var();
    let tail = gauss_unit(0).checked_mul(&y)?.checked_div(&one_minus(&y)?)?;
    match n {
        0 => {
            let q = mono(&[(Var::H, 2)]);
            let v = i_closed(0)?
                .checked_mul(&q_inv())?
                .checked_mul(&y)?
                .checked_mul(&one_minus(&q.checked_mul(&y)?)?)?
                .checked_div(&one_minus(&y)?)?;
            Ok(-v)
        }
        1 => i_closed(1)?.checked_mul(&tail),
        _ => r1_prefactor()?
            .checked_mul(&i_closed(n - 1)?)?
            .checked_add(&r1_boundary(n)?)?
            .checked_add(&i_closed(n)?.checked_mul(&tail)?),
    }
}

/// `J2(n)` from the shells `|r3| = q^m`: only `m = 1` survives the
/// unit-group integral.
pub fn j2_defining(n: i64) -> R<RatFunc> {
    let r = r1_defining(n)?.checked_add(&r2_defining(n)?)?;
    let mut acc = RatFunc::zero();
    for m in 1..=3 {
        let w = h_pow(2 * m)?.checked_mul(&gauss_unit(-m))?;
        acc = acc.checked_add(&w.checked_mul(&r)?)?;
    }
    Ok(acc)
}

/// A single sign flip in the branch formula for `J(n)`, used to check that
/// the verification would notice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum JMutation {
    /// `1 - Y` at `n = 0`.
    ZeroBranch,
    /// `-I(1)` at `n = 1`.
    OneBranch,
    /// `+q^-1 Y^2 I(n-1)` for `n >= 2`.
    MiddleTerm,
    /// `-q^-n Y^(n+1)` for `n >= 2`.
    TailTerm,
}

impl JMutation {
    pub const ALL: [JMutation; 4] =
        [JMutation::ZeroBranch, JMutation::OneBranch, JMutation::MiddleTerm, JMutation::TailTerm];
}

fn flip(m: Option<JMutation>, which: JMutation) -> RatFunc {
    RatFunc::int(if m == Some(which) { -1 } else { 1 })
}

/// Branch values of `J(n)`, optionally mutated.
pub fn j_branch_mutated(n: i64, m: Option<JMutation>) -> R<RatFunc> {
    let y = y_var();
    match n {
        0 => RatFunc::one().checked_add(&flip(m, JMutation::ZeroBranch).checked_mul(&y)?),
        1 => flip(m, JMutation::OneBranch).checked_mul(&i_closed(1)?),
        _ => {
            let middle = q_inv().checked_mul(&y.checked_pow(2)?)?.checked_mul(&i_closed(n - 1)?)?;
            let tail = h_pow(-2 * n)?.checked_mul(&y.checked_pow(n as i32 + 1)?)?;
            i_closed(n)?
                .checked_sub(&flip(m, JMutation::MiddleTerm).checked_mul(&middle)?)?
                .checked_add(&flip(m, JMutation::TailTerm).checked_mul(&tail)?)
        }
    }
}

pub fn j_branch(n: i64) -> R<RatFunc> {
    j_branch_mutated(n, None)
}

pub fn j_from_parts(n: i64) -> R<RatFunc> {
    j1_lemma(n)?.checked_sub(&r1_closed(n)?)?.checked_sub(&r2_closed(n)?)
}

pub fn j_defining(n: i64) -> R<RatFunc> {
    j1_decomposition(n)?.checked_add(&j2_defining(n)?)
}

/// `J` as an exponential sum with explicit values at `n = 0, 1`.
pub fn j_exp_mutated(m: Option<JMutation>) -> R<ExpPoly> {
    let y = y_var();
    let i = i_exp()?;
    let middle = i.shift(1)?.scale(&q_inv().checked_mul(&y.checked_pow(2)?)?)?;
    let tail = ExpPoly::geometric(y.clone(), q_inv().checked_mul(&y)?);
    let generic = i
        .sub(&middle.scale(&flip(m, JMutation::MiddleTerm))?)?
        .add(&tail.scale(&flip(m, JMutation::TailTerm))?)?;
    generic.with_overrides(vec![j_branch_mutated(0, m)?, j_branch_mutated(1, m)?])
}

pub fn j_exp() -> R<ExpPoly> {
    j_exp_mutated(None)
}

/// The metaplectic Whittaker values `n -> W(t(p^n))` with `mu` detached.
pub fn bfh_exp(eps: &RatFunc) -> R<ExpPoly> {
    let a = RatFunc::var(Var::A);
    let a_inv = a.checked_inv()?;
    let h_inv = h_pow(-1)?;
    let denom = a.checked_sub(&a_inv)?;
    let c_plus = one_minus(&eps.checked_mul(&h_inv)?.checked_mul(&a_inv)?)?.checked_mul(&a)?.checked_div(&denom)?;
    let c_minus = one_minus(&eps.checked_mul(&h_inv)?.checked_mul(&a)?)?.checked_mul(&a_inv)?.checked_div(&denom)?;
    let qa = q_inv().checked_mul(&a)?;
    let qa_inv = q_inv().checked_mul(&a_inv)?;
    ExpPoly::new(vec![(c_plus, qa), (-c_minus, qa_inv)], vec![])
}

/// Weight `q^(5n/2) mu(p^n)^2 = (eps H^5)^n` of the `n`-th term after the
/// two `mu` factors pair up.
pub fn final_weight(eps: &RatFunc) -> R<RatFunc> {
    eps.checked_mul(&h_pow(5)?)
}

pub fn local_factor_mutated(eps: &RatFunc, m: Option<JMutation>) -> R<RatFunc> {
    bfh_exp(eps)?.mul(&j_exp_mutated(m)?)?.weighted_sum(&final_weight(eps)?)
}

/// `sum_{n >= 0} W(t(p^n)) q^(5n/2) mu(p^n) J(n)`.
pub fn local_factor(eps: &RatFunc) -> R<RatFunc> {
    local_factor_mutated(eps, None)
}

/// `prod (1 - f_i)` over monomials `f_i`.
fn product_of_one_minus(fs: &[RatFunc]) -> R<RatFunc> {
    fs.iter().try_fold(RatFunc::one(), |acc, f| acc.checked_mul(&one_minus(f)?))
}

/// The expected ratio of L-factors, built from Euler factors.
pub fn l_ratio_target(eps: &RatFunc) -> R<RatFunc> {
    let (a, b1, b2) = (RatFunc::var(Var::A), RatFunc::var(Var::B1), RatFunc::var(Var::B2));
    let a_inv = a.checked_inv()?;
    let b12 = b1.checked_mul(&b2)?;
    let s1 = mono(&[(Var::Z, 1), (Var::H, 2)]); // q^-(3s-1)
    let s2 = mono(&[(Var::Z, 2), (Var::H, 5)]); // q^-(6s-5/2)
    let s3 = mono(&[(Var::Z, 1), (Var::H, 1)]); // q^-(3s-1/2)
    let s4 = mono(&[(Var::Z, 2), (Var::H, 4)]); // q^-(6s-2)
    let s5 = mono(&[(Var::Z, 3), (Var::H, 7)]); // q^-(9s-7/2)
    let mut rs_factors = Vec::new();
    for b in [&b1, &b2] {
        for x in [&a_inv, &a] {
            rs_factors.push(eps.checked_mul(x)?.checked_mul(b)?.checked_mul(&s1)?);
        }
    }
    let twisted = vec![
        eps.checked_mul(&a)?.checked_mul(&b12)?.checked_mul(&s2)?,
        eps.checked_mul(&a_inv)?.checked_mul(&b12)?.checked_mul(&s2)?,
    ];
    let l_tau = vec![b1.checked_mul(&s3)?, b2.checked_mul(&s3)?];
    let l_omega = vec![b12.checked_mul(&s4)?];
    let l_tau_omega = vec![b1.checked_mul(&b12)?.checked_mul(&s5)?, b2.checked_mul(&b12)?.checked_mul(&s5)?];
    let num = product_of_one_minus(&l_tau)?
        .checked_mul(&product_of_one_minus(&l_omega)?)?
        .checked_mul(&product_of_one_minus(&l_tau_omega)?)?;
    let den = product_of_one_minus(&rs_factors)?.checked_mul(&product_of_one_minus(&twisted)?)?;
    num.checked_div(&den)
}

/// The same ratio as the product formula in `X`.
pub fn product_display(eps: &RatFunc) -> R<RatFunc> {
    let (a, b1, b2, x) = (RatFunc::var(Var::A), RatFunc::var(Var::B1), RatFunc::var(Var::B2), x_var());
    let a_inv = a.checked_inv()?;
    let qi1 = q_inv();
    let qh = h_pow(-1)?;
    let x2 = x.checked_pow(2)?;
    let x3 = x.checked_pow(3)?;
    let b12 = b1.checked_mul(&b2)?;
    let num = product_of_one_minus(&[
        b1.checked_mul(&qi1)?.checked_mul(&x)?,
        b2.checked_mul(&qi1)?.checked_mul(&x)?,
        b12.checked_mul(&qi1)?.checked_mul(&x2)?,
        b1.checked_mul(&b12)?.checked_mul(&qi1)?.checked_mul(&x3)?,
        b2.checked_mul(&b12)?.checked_mul(&qi1)?.checked_mul(&x3)?,
    ])?;
    let mut den_fs = vec![
        eps.checked_mul(&a_inv)?.checked_mul(&b12)?.checked_mul(&qh)?.checked_mul(&x2)?,
        eps.checked_mul(&a)?.checked_mul(&b12)?.checked_mul(&qh)?.checked_mul(&x2)?,
    ];
    for b in [&b1, &b2] {
        for s in [&a_inv, &a] {
            den_fs.push(eps.checked_mul(s)?.checked_mul(b)?.checked_mul(&qh)?.checked_mul(&x)?);
        }
    }
    num.checked_div(&product_of_one_minus(&den_fs)?)
}

/// The product formula as text in `X = q^(-(3s-3/2))` and `H = q^(1/2)`.
/// Replacing `X` by `(Z*H^3)` gives input accepted by the parser.
pub fn product_formula_text(eps: EpsChoice) -> String {
    let num = ["b1*H^-2*X", "b2*H^-2*X", "b1*b2*H^-2*X^2", "b1^2*b2*H^-2*X^3", "b1*b2^2*H^-2*X^3"];
    let den = [
        "a^-1*b1*b2*H^-1*X^2",
        "a*b1*b2*H^-1*X^2",
        "a^-1*b1*H^-1*X",
        "a*b1*H^-1*X",
        "a^-1*b2*H^-1*X",
        "a*b2*H^-1*X",
    ];
    let signed = |m: &str| match eps {
        EpsChoice::Plus => format!("(1 - {m})"),
        EpsChoice::Minus => format!("(1 + {m})"),
        EpsChoice::Symbolic => format!("(1 - eps*{m})"),
    };
    let top: Vec<String> = num.iter().map(|m| format!("(1 - {m})")).collect();
    let bottom: Vec<String> = den.iter().map(|m| signed(m)).collect();
    format!("{} / ({})", top.join("*"), bottom.join("*"))
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalFactorReport {
    pub eps: EpsChoice,
    pub computed: String,
    pub target: String,
    pub equal: bool,
    /// Cross-multiplied residue when the two sides differ.
    pub witness: Option<String>,
}

pub fn verify_main_identity_mutated(eps: EpsChoice, m: Option<JMutation>) -> R<LocalFactorReport> {
    let e = eps.to_ratfunc();
    let computed = local_factor_mutated(&e, m)?;
    let target = l_ratio_target(&e)?;
    let residue = computed.residue(&target)?;
    let equal = residue.is_zero();
    Ok(LocalFactorReport {
        eps,
        computed: computed.to_string(),
        target: target.to_string(),
        equal,
        witness: (!equal).then(|| residue.to_string()),
    })
}

pub fn verify_main_identity(eps: EpsChoice) -> R<LocalFactorReport> {
    verify_main_identity_mutated(eps, None)
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub n: i64,
    pub equal: bool,
    pub error: Option<String>,
}

type Pair = fn(i64) -> R<RatFunc>;

fn neg_r_lemma(n: i64) -> R<RatFunc> {
    Ok(-r_lemma(n)?)
}

fn r_from_parts(n: i64) -> R<RatFunc> {
    r1_closed(n)?.checked_add(&r2_closed(n)?)
}

fn j_exp_at(n: i64) -> R<RatFunc> {
    j_exp()?.eval(n)
}

/// Every lemma identity: name, largest `n`, and the two sides.
pub fn lemma_identities(nmax_i: i64, nmax: i64) -> Vec<(&'static str, i64, Pair, Pair)> {
    vec![
        ("I closed = I defining", nmax_i, i_closed as Pair, i_defining as Pair),
        ("I closed = I display", nmax_i, i_closed, i_display),
        ("J1 lemma = J11 + J12", nmax, j1_lemma, j1_decomposition),
        ("R1 closed = R1 defining", nmax, r1_closed, r1_defining),
        ("R2 closed = R2 defining", nmax, r2_closed, r2_defining),
        ("R lemma = R1 + R2", nmax, r_lemma, r_from_parts),
        ("J2 defining = -R", nmax, j2_defining, neg_r_lemma),
        ("J branch = J1 - R1 - R2", nmax, j_branch, j_from_parts),
        ("J branch = J1 + J2 defining", nmax, j_branch, j_defining),
        ("J exponential sum = J branch", nmax, j_exp_at, j_branch),
    ]
}

/// Check every lemma identity for `n = 0..=nmax` (`nmax_i` for `I`).
pub fn lemma_suite(nmax_i: i64, nmax: i64) -> Vec<LemmaCheck> {
    let jobs: Vec<_> = lemma_identities(nmax_i, nmax)
        .into_iter()
        .flat_map(|(name, top, lhs, rhs)| (0..=top).map(move |n| (name, n, lhs, rhs)))
        .collect();
    jobs.into_par_iter()
        .map(|(name, n, lhs, rhs)| {
            let res = lhs(n).and_then(|l| l.equals(&rhs(n)?));
            match res {
                Ok(equal) => LemmaCheck { name, n, equal, error: None },
                Err(e) => LemmaCheck { name, n, equal: false, error: Some(e.to_string()) },
            }
        })
        .collect()
}

/// The `n`-th term of the final sum.
pub fn local_factor_term(n: i64, eps: &RatFunc) -> R<RatFunc> {
    let w = bfh_whittaker(n, eps)?;
    w.value
        .checked_mul(&final_weight(eps)?.checked_pow(n as i32)?)?
        .checked_mul(&j_branch(n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::text::parse_ratfunc;

    fn p(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn i_small_values() {
        assert_eq!(i_defining(0).unwrap(), RatFunc::one());
        assert_eq!(i_closed(0).unwrap(), RatFunc::one());
        let expect = shintani(0, 1).unwrap() + p("(1 - H^-2)*Z^2*H^2*b1*b2");
        assert_eq!(i_defining(1).unwrap(), expect);
        assert_eq!(i_closed(3).unwrap(), i_defining(3).unwrap());
    }

    #[test]
    fn boundary_exponent_split() {
        for n in 0..=5 {
            let direct = RatFunc::monomial(
                qi(-1),
                &[(Var::Z, 2 * (n + 1)), (Var::H, 2 * n + 4), (Var::B1, n + 1), (Var::B2, n + 1)],
            );
            assert_eq!(r1_boundary(n as i64).unwrap(), direct);
        }
    }

    #[test]
    fn lemma_spot_values() {
        assert_eq!(j1_lemma(0).unwrap(), p("(1 - Z^2*H^2*b1*b2)/(1 - Z^2*H^4*b1*b2)"));
        assert!(r1_closed(1).unwrap().is_zero());
        let r1_2 = p("Z^4*H^6*b1^2*b2^2") * i_closed(1).unwrap() - p("Z^6*H^8*b1^3*b2^3");
        assert_eq!(r1_closed(2).unwrap(), r1_2);
        let y = y_var();
        let r2_0 = &y * &(-q_inv() + gauss_unit(0) * y.clone() / (RatFunc::one() - y.clone()));
        assert_eq!(r2_closed(0).unwrap(), r2_0);
        assert_eq!(j_branch(0).unwrap(), RatFunc::one() + y);
        assert_eq!(j_branch(1).unwrap(), i_closed(1).unwrap());
    }

    #[test]
    fn first_term_of_final_sum() {
        let e = EpsChoice::Symbolic.to_ratfunc();
        assert_eq!(local_factor_term(0, &e).unwrap(), RatFunc::one() + y_var());
    }

    #[test]
    fn bfh_exp_matches_values() {
        let e = EpsChoice::Symbolic.to_ratfunc();
        let f = bfh_exp(&e).unwrap();
        for n in 0..5 {
            assert_eq!(f.eval(n).unwrap(), bfh_whittaker(n, &e).unwrap().value);
        }
    }

    #[test]
    fn product_text_parses_to_target() {
        for eps in [EpsChoice::Plus, EpsChoice::Minus, EpsChoice::Symbolic] {
            let text = product_formula_text(eps).replace('X', "(Z*H^3)");
            assert_eq!(p(&text), l_ratio_target(&eps.to_ratfunc()).unwrap(), "{eps:?}");
        }
    }

    #[test]
    fn target_matches_product_display() {
        for eps in [EpsChoice::Plus, EpsChoice::Minus, EpsChoice::Symbolic] {
            let e = eps.to_ratfunc();
            assert_eq!(l_ratio_target(&e).unwrap(), product_display(&e).unwrap());
        }
    }
}
