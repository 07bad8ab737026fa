//! Floating-point cross-checks.
//!
//! Symbolic results are evaluated at numeric points and compared with
//! brute-force truncations of the defining sums. The truncations here are
//! computed directly from the shell decompositions, without the closed forms
//! or the exponential-sum machinery.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::localmodels::{EpsChoice, SatakeParams};
use crate::ratfunc::{ExpPoly, RatFunc, RatFuncError, NVARS};
use crate::zeta::{self, JMutation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Eval(#[from] RatFuncError),
    #[error("ratio bound {0} is not below one; the series may diverge")]
    Divergent(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NumericPoint {
    pub q: f64,
    pub s: f64,
    #[serde(serialize_with = "ser_c")]
    pub a: Complex64,
    #[serde(serialize_with = "ser_c")]
    pub b1: Complex64,
    #[serde(serialize_with = "ser_c")]
    pub b2: Complex64,
    pub eps: i8,
    pub seed: u64,
}

fn ser_c<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

impl NumericPoint {
    /// Tempered Satake parameters drawn from `seed`.
    pub fn seeded(q: f64, s: f64, seed: u64, eps: i8) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = SatakeParams::tempered(&mut rng, eps);
        NumericPoint { q, s, a: p.a, b1: p.b1, b2: p.b2, eps, seed }
    }

    pub fn satake(&self) -> SatakeParams {
        SatakeParams { a: self.a, b1: self.b1, b2: self.b2, eps: self.eps }
    }

    /// Values of `H, Z, a, b1, b2, eps`.
    pub fn values(&self) -> [Complex64; NVARS] {
        [
            Complex64::new(self.q.sqrt(), 0.0),
            Complex64::new(self.q.powf(-3.0 * self.s), 0.0),
            self.a,
            self.b1,
            self.b2,
            Complex64::new(self.eps as f64, 0.0),
        ]
    }
}

/// Denominator factors smaller than this in absolute value are reported
/// instead of divided by.
pub const DENOMINATOR_GUARD: f64 = 1e-12;

pub fn eval_ratfunc(f: &RatFunc, pt: &NumericPoint) -> Result<Complex64, OracleError> {
    let vals = pt.values();
    Ok(f.eval(&vals, |c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0), |v| v.norm(), DENOMINATOR_GUARD)?)
}

/// Numeric coefficients and ratios of an exponential sum.
pub struct NumericExp {
    terms: Vec<(Complex64, Complex64)>,
    overrides: Vec<Complex64>,
}

impl NumericExp {
    pub fn new(f: &ExpPoly, pt: &NumericPoint) -> Result<Self, OracleError> {
        let terms = f
            .terms()
            .iter()
            .map(|(c, r)| Ok((eval_ratfunc(c, pt)?, eval_ratfunc(r, pt)?)))
            .collect::<Result<_, OracleError>>()?;
        let overrides = f.overrides().iter().map(|v| eval_ratfunc(v, pt)).collect::<Result<_, _>>()?;
        Ok(NumericExp { terms, overrides })
    }

    pub fn eval(&self, n: usize) -> Complex64 {
        match self.overrides.get(n) {
            Some(v) => *v,
            None => self.terms.iter().map(|(c, r)| c * r.powi(n as i32)).sum(),
        }
    }

    /// Largest ratio modulus.
    pub fn spectral_radius(&self) -> f64 {
        self.terms.iter().map(|(_, r)| r.norm()).fold(0.0, f64::max)
    }
}

/// Compensated summation of complex terms in the given order.
pub fn neumaier_sum(terms: impl IntoIterator<Item = Complex64>) -> Complex64 {
    let (mut s, mut c) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    let add = |sum: &mut f64, comp: &mut f64, x: f64| {
        let t = *sum + x;
        if sum.abs() >= x.abs() {
            *comp += (*sum - t) + x;
        } else {
            *comp += (x - t) + *sum;
        }
        *sum = t;
    };
    for x in terms {
        add(&mut s.re, &mut c.re, x.re);
        add(&mut s.im, &mut c.im, x.im);
    }
    s + c
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesSum {
    pub sum: Complex64,
    pub tail_bound: f64,
    pub terms: usize,
}

/// Sum of `term(n)` for `n < n_terms` with the bound `C rho^n_terms / (1 - rho)`
/// on the rest, where `C` is the largest `|term(n)| / rho^n` among the last
/// five nonzero computed terms.
pub fn truncated_series(
    term: impl Fn(usize) -> Complex64,
    n_terms: usize,
    ratio_bound: f64,
) -> Result<SeriesSum, OracleError> {
    if !(ratio_bound < 1.0) {
        return Err(OracleError::Divergent(ratio_bound));
    }
    let values: Vec<Complex64> = (0..n_terms).map(&term).collect();
    let sum = neumaier_sum(values.iter().copied());
    let tail_bound = if ratio_bound == 0.0 {
        0.0
    } else {
        let log_rho = ratio_bound.ln();
        let log_c = values
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, v)| v.norm() > 0.0)
            .take(5)
            .map(|(n, v)| v.norm().ln() - n as f64 * log_rho)
            .fold(f64::NEG_INFINITY, f64::max);
        if log_c == f64::NEG_INFINITY {
            0.0
        } else {
            (log_c + n_terms as f64 * log_rho - (1.0 - ratio_bound).ln()).exp()
        }
    };
    Ok(SeriesSum { sum, tail_bound, terms: n_terms })
}

fn gauss(k: i64, q: f64) -> f64 {
    match k {
        k if k >= 0 => 1.0 - 1.0 / q,
        -1 => -1.0 / q,
        _ => 0.0,
    }
}

fn additive(k: i64) -> f64 {
    if k >= 0 {
        1.0
    } else {
        0.0
    }
}

/// Inner geometric sums are truncated after this many terms.
pub const INNER_TERMS: usize = 300;

/// The defining sums evaluated in floating point, each multiplied by
/// `lambda^n` to keep the final series within range.
pub struct DefiningSums {
    q: f64,
    /// `q^(-6s)`.
    q6s: f64,
    b12: Complex64,
    y: Complex64,
    lambda: f64,
    /// `lambda^l W(h(1, p^l))`.
    w: Vec<Complex64>,
    /// `(q^(-6s) b1 b2 lambda)^m q^m`, the central twist with the shell volume.
    shell: Vec<Complex64>,
}

impl DefiningSums {
    pub fn new(pt: &NumericPoint, lambda: f64, nmax: usize) -> Self {
        let q = pt.q;
        let (b1, b2) = (pt.b1, pt.b2);
        let p = q.powf(-3.0 * pt.s - 0.5) * lambda;
        let w = (0..=nmax + 2)
            .map(|l| {
                let schur: Complex64 = (0..=l).map(|i| b1.powi((l - i) as i32) * b2.powi(i as i32)).sum();
                schur * p.powi(l as i32)
            })
            .collect();
        let b12 = b1 * b2;
        let q6s = q.powf(-6.0 * pt.s);
        let twist = b12 * q6s * lambda * q;
        let shell = (0..=nmax + 2).map(|m| twist.powi(m as i32)).collect();
        let y = b12 * q.powf(-6.0 * pt.s + 2.0);
        DefiningSums { q, q6s, b12, y, lambda, w, shell }
    }

    fn w_at(&self, l: i64) -> Complex64 {
        if l < 0 {
            Complex64::new(0.0, 0.0)
        } else {
            self.w[l as usize]
        }
    }

    fn y_series(&self, weight: impl Fn(i64) -> f64) -> Result<SeriesSum, OracleError> {
        let term = |m: usize| if m == 0 { 0.0.into() } else { self.y.powi(m as i32) * weight(m as i64) };
        truncated_series(term, INNER_TERMS, self.y.norm())
    }

    pub fn i(&self, n: i64) -> Complex64 {
        let mut acc = self.w_at(n) * additive(0);
        for m in 1..=n {
            acc += self.shell[m as usize] * gauss(0, self.q) * self.w_at(n - m);
        }
        acc
    }

    /// Value and truncation bound.
    pub fn j1(&self, n: i64) -> Result<(Complex64, f64), OracleError> {
        let inner = self.y_series(|_| gauss(0, self.q))?;
        let i = self.i(n);
        Ok((i * (1.0 + inner.sum), i.norm() * inner.tail_bound))
    }

    /// `lambda^n R1(n) = lambda q^3 (q^-6s b1 b2)^2 [W(n-1) int_o + sum_m shell_m W(n-m-1) int_{o^x}]`.
    pub fn r1(&self, n: i64) -> Complex64 {
        let pre = self.lambda * self.q.powi(3) * (self.b12 * self.q6s).powi(2);
        let mut inner = self.w_at(n - 1) * additive(n - 2);
        // Beyond m = n the Whittaker value vanishes.
        for m in 1..=n + 1 {
            inner += self.shell[m as usize] * self.w_at(n - m - 1) * gauss(n - m - 2, self.q);
        }
        pre * inner
    }

    pub fn r2(&self, n: i64) -> Result<(Complex64, f64), OracleError> {
        let inner = self.y_series(|m| gauss(m + n - 2, self.q))?;
        let i = self.i(n);
        Ok((i * inner.sum, i.norm() * inner.tail_bound))
    }

    /// Shells `|r3| = q^m`; the unit-group integral kills `m >= 2`.
    pub fn j2(&self, n: i64) -> Result<(Complex64, f64), OracleError> {
        let (r2, t2) = self.r2(n)?;
        let r = self.r1(n) + r2;
        let k: f64 = (1..=3).map(|m| self.q.powi(m as i32) * gauss(-m, self.q)).sum();
        Ok((r * k, t2 * k.abs()))
    }

    pub fn j(&self, n: i64) -> Result<(Complex64, f64), OracleError> {
        let (a, ta) = self.j1(n)?;
        let (b, tb) = self.j2(n)?;
        Ok((a + b, ta + tb))
    }
}

/// `q^(-n) ((1 - eps q^-1/2 a^-1) a^(n+1) - (1 - eps q^-1/2 a) a^-(n+1)) / (a - a^-1)`
/// without the `q^(-n)`.
pub fn bfh_core(n: i64, pt: &NumericPoint) -> Complex64 {
    let a = pt.a;
    let e = pt.eps as f64;
    let h = pt.q.sqrt();
    let k = (n + 1) as i32;
    ((1.0 - e / (h * a)) * a.powi(k) - (1.0 - e * a / h) * a.powi(-k)) / (a - 1.0 / a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub label: String,
    pub seed: u64,
    pub eps: i8,
    pub symbolic_value: [f64; 2],
    pub truncated_value: [f64; 2],
    pub terms_used: usize,
    pub tail_bound: f64,
    pub relative_error: f64,
    pub verdict: Verdict,
    pub pass: bool,
    pub note: Option<String>,
}

fn rel_err(a: Complex64, b: Complex64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).norm() / a.norm().max(b.norm())
    }
}

struct Comparison {
    symbolic: Complex64,
    truncated: Complex64,
    terms: usize,
    tail: f64,
    rel: f64,
}

impl Comparison {
    fn single(symbolic: Complex64, truncated: Complex64, terms: usize, tail: f64) -> Self {
        Comparison { symbolic, truncated, terms, tail, rel: rel_err(symbolic, truncated) }
    }

    /// The worst of several comparisons.
    fn worst(items: Vec<Comparison>) -> Self {
        let terms = items.len();
        let mut w = items.into_iter().max_by(|a, b| a.rel.total_cmp(&b.rel)).expect("nonempty");
        w.terms = terms;
        w
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleConfig {
    pub q: f64,
    pub s: f64,
    pub points: usize,
    pub nmax: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { q: 9.0, s: 2.0, points: 10, nmax: 200, tol: 1e-9, seed: 1 }
    }
}

/// Lemma comparisons run over `n = 0..=LEMMA_NMAX`; `I` over `0..=I_NMAX`.
pub const LEMMA_NMAX: i64 = 10;
pub const I_NMAX: i64 = 30;

/// Points with consecutive seeds, alternating `eps = -1, +1`.
pub fn suite_points(cfg: &OracleConfig) -> Vec<NumericPoint> {
    (0..cfg.points)
        .map(|i| {
            let eps = if i % 2 == 0 { -1 } else { 1 };
            NumericPoint::seeded(cfg.q, cfg.s, cfg.seed + i as u64, eps)
        })
        .collect()
}

/// Symbolic objects shared by all points.
pub struct SymbolicBundle {
    i_exp: ExpPoly,
    lemmas: Vec<(&'static str, Vec<RatFunc>)>,
    /// Per sign `-1, +1`: local factor, target, and the summand as an
    /// exponential sum.
    finals: [(RatFunc, RatFunc, ExpPoly); 2],
}

impl SymbolicBundle {
    pub fn new(mutation: Option<JMutation>) -> Result<Self, RatFuncError> {
        let ns: Vec<i64> = (0..=LEMMA_NMAX).collect();
        let table = |f: fn(i64) -> Result<RatFunc, RatFuncError>| ns.iter().map(|&n| f(n)).collect::<Result<Vec<_>, _>>();
        let lemmas = vec![
            ("J1 lemma vs truncated J11 + J12", table(zeta::j1_lemma)?),
            ("R1 lemma vs shell sum", table(zeta::r1_closed)?),
            ("R2 lemma vs truncated shell sum", table(zeta::r2_closed)?),
            ("J branch formula vs truncated J1 + J2", ns.iter().map(|&n| zeta::j_branch_mutated(n, mutation)).collect::<Result<_, _>>()?),
        ];
        let final_for = |eps: EpsChoice| -> Result<(RatFunc, RatFunc, ExpPoly), RatFuncError> {
            let e = eps.to_ratfunc();
            let summand = zeta::bfh_exp(&e)?.mul(&zeta::j_exp_mutated(mutation)?)?.twist(&zeta::final_weight(&e)?)?;
            Ok((zeta::local_factor_mutated(&e, mutation)?, zeta::l_ratio_target(&e)?, summand))
        };
        Ok(SymbolicBundle {
            i_exp: zeta::i_exp()?,
            lemmas,
            finals: [final_for(EpsChoice::Minus)?, final_for(EpsChoice::Plus)?],
        })
    }
}

fn verdict(c: &Comparison, tol: f64) -> (Verdict, Option<String>) {
    let scale = c.symbolic.norm().max(c.truncated.norm());
    if !c.tail.is_finite() || c.tail > tol * scale {
        return (Verdict::Inconclusive, Some(format!("tail bound {:.3e} exceeds the tolerance", c.tail)));
    }
    let abs_err = (c.symbolic - c.truncated).norm();
    let slack = 1e-13 * scale * (c.terms.max(1) as f64);
    if c.rel > tol {
        (Verdict::Fail, None)
    } else if abs_err > c.tail + slack {
        (Verdict::Fail, Some("error exceeds the tail bound".to_string()))
    } else {
        (Verdict::Pass, None)
    }
}

fn report(label: &str, pt: &NumericPoint, c: Result<Comparison, OracleError>, tol: f64) -> ComparisonReport {
    match c {
        Ok(c) => {
            let (v, note) = verdict(&c, tol);
            ComparisonReport {
                label: label.to_string(),
                seed: pt.seed,
                eps: pt.eps,
                symbolic_value: [c.symbolic.re, c.symbolic.im],
                truncated_value: [c.truncated.re, c.truncated.im],
                terms_used: c.terms,
                tail_bound: c.tail,
                relative_error: c.rel,
                verdict: v,
                pass: v == Verdict::Pass,
                note,
            }
        }
        Err(e) => ComparisonReport {
            label: label.to_string(),
            seed: pt.seed,
            eps: pt.eps,
            symbolic_value: [f64::NAN; 2],
            truncated_value: [f64::NAN; 2],
            terms_used: 0,
            tail_bound: f64::INFINITY,
            relative_error: f64::NAN,
            verdict: Verdict::Inconclusive,
            pass: false,
            note: Some(e.to_string()),
        },
    }
}

pub const FINAL_LABEL: &str = "local factor vs truncated final sum";

fn point_reports(pt: &NumericPoint, bundle: &SymbolicBundle, cfg: &OracleConfig) -> Vec<ComparisonReport> {
    let mut out = Vec::new();
    let plain = DefiningSums::new(pt, 1.0, I_NMAX as usize + 2);

    let i_cmp = NumericExp::new(&bundle.i_exp, pt).map(|ie| {
        Comparison::worst((0..=I_NMAX).map(|n| Comparison::single(ie.eval(n as usize), plain.i(n), 1, 0.0)).collect())
    });
    out.push(report("I closed vs shell sum", pt, i_cmp, cfg.tol));

    for (k, (label, values)) in bundle.lemmas.iter().enumerate() {
        let cmp = (|| {
            let mut items = Vec::new();
            for (n, v) in values.iter().enumerate() {
                let n = n as i64;
                let sym = eval_ratfunc(v, pt)?;
                let (num, tail) = match k {
                    0 => plain.j1(n)?,
                    1 => (plain.r1(n), 0.0),
                    2 => plain.r2(n)?,
                    _ => plain.j(n)?,
                };
                items.push(Comparison::single(sym, num, INNER_TERMS, tail));
            }
            Ok(Comparison::worst(items))
        })();
        out.push(report(label, pt, cmp, cfg.tol));
    }

    let (lf, target, summand) = &bundle.finals[if pt.eps < 0 { 0 } else { 1 }];
    let final_cmp = (|| {
        let sym = eval_ratfunc(lf, pt)?;
        let rho = NumericExp::new(summand, pt)?.spectral_radius();
        let lambda = pt.q.powf(1.5);
        let sums = DefiningSums::new(pt, lambda, cfg.nmax);
        let e = pt.eps as f64;
        let js = (0..cfg.nmax).map(|n| sums.j(n as i64)).collect::<Result<Vec<_>, _>>()?;
        let series = truncated_series(|n| e.powi(n as i32) * bfh_core(n as i64, pt) * js[n].0, cfg.nmax, rho)?;
        let inner_tail: f64 = js.iter().enumerate().map(|(n, (_, t))| bfh_core(n as i64, pt).norm() * t).sum();
        Ok(Comparison::single(sym, series.sum, series.terms, series.tail_bound + inner_tail))
    })();
    out.push(report(FINAL_LABEL, pt, final_cmp, cfg.tol));

    let target_cmp = (|| Ok(Comparison::single(eval_ratfunc(lf, pt)?, eval_ratfunc(target, pt)?, 1, 0.0)))();
    out.push(report("local factor vs L-factor ratio", pt, target_cmp, cfg.tol));
    out
}

/// Every comparison at every point, grouped by label (in suite order) and
/// then by point.
pub fn run_suite_with(points: &[NumericPoint], bundle: &SymbolicBundle, cfg: &OracleConfig) -> Vec<ComparisonReport> {
    let per_point: Vec<Vec<ComparisonReport>> = points.par_iter().map(|pt| point_reports(pt, bundle, cfg)).collect();
    let labels = per_point.first().map_or(0, Vec::len);
    let mut columns: Vec<_> = per_point.into_iter().map(Vec::into_iter).collect();
    let mut out = Vec::with_capacity(labels * columns.len());
    for _ in 0..labels {
        out.extend(columns.iter_mut().filter_map(Iterator::next));
    }
    out
}

pub fn run_suite(points: &[NumericPoint], cfg: &OracleConfig) -> Result<Vec<ComparisonReport>, RatFuncError> {
    let bundle = SymbolicBundle::new(None)?;
    Ok(run_suite_with(points, &bundle, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localmodels::shintani;
    use crate::ratfunc::text::parse_ratfunc;

    fn pt(b1: Complex64, b2: Complex64) -> NumericPoint {
        NumericPoint { q: 9.0, s: 2.0, a: Complex64::new(1.0, 0.0), b1, b2, eps: 1, seed: 0 }
    }

    #[test]
    fn constants_and_y() {
        let p = pt(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
        assert_eq!(eval_ratfunc(&RatFunc::one(), &p).unwrap(), Complex64::new(1.0, 0.0));
        let y = eval_ratfunc(&zeta::y_var(), &p).unwrap();
        assert!((y.re / 9f64.powi(-10) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn shintani_l1_value() {
        let p = pt(Complex64::from_polar(1.0, 0.3), Complex64::from_polar(1.0, -0.3));
        let v = eval_ratfunc(&shintani(0, 1).unwrap(), &p).unwrap();
        let expect = 9f64.powf(-6.5) * 2.0 * 0.3f64.cos();
        assert!((v.re - expect).abs() < 1e-14 * expect && v.im.abs() < 1e-20);
    }

    #[test]
    fn geometric_series_and_divergence() {
        let z = 9f64.powi(-6);
        let s = truncated_series(|n| Complex64::new(z.powi(n as i32), 0.0), 50, z).unwrap();
        assert!((s.sum.re - 1.0 / (1.0 - z)).abs() < 1e-14);
        assert!(matches!(truncated_series(|_| 1.0.into(), 10, 1.0), Err(OracleError::Divergent(_))));
    }

    #[test]
    fn vanishing_factor_is_named() {
        let f = parse_ratfunc("1/(b1 - b2)").unwrap();
        let p = pt(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
        assert!(matches!(eval_ratfunc(&f, &p), Err(OracleError::Eval(RatFuncError::VanishingFactor(_)))));
    }

    #[test]
    fn compensated_sum_keeps_small_terms() {
        let terms = [1e16, 1.0, -1e16].map(|x| Complex64::new(x, 0.0));
        assert_eq!(neumaier_sum(terms).re, 1.0);
    }
}
