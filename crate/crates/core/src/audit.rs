//! Audit of the group identities used by the unfolding and the local
//! computation, as exact 14x14 matrix identities.
//!
//! Every identity is checked at random nonzero rational samples and, where
//! it has at most five parameters, once more with the parameters replaced by
//! independent indeterminates. The indeterminate check is a certificate; the
//! samples are a cheap cross-check of the same statement.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::adjoint::{AdjointError, AdjointModel, Matrix, DIM};
use crate::ratfunc::Var;
use crate::relations::{commuting_pairs, commutator_terms, CommutatorRule, COMMUTATOR_TABLE};
use crate::rootsys::{all_roots, Root, ALPHA, ALPHA_BETA, BETA, THREE_ALPHA_BETA,
    THREE_ALPHA_TWO_BETA, TWO_ALPHA_BETA, V_ROOTS};
use crate::scalar::Field;
use crate::{RatFunc, Q};

/// Indeterminates standing in for the parameters of a symbolic check.
const SYMBOLS: [Var; 5] = [Var::A, Var::B1, Var::B2, Var::H, Var::Z];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Expectation {
    Holds,
    /// The literal statement is false; the audit reproduces the failure.
    Fails,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Group {
    Basics,
    Commutator,
    TrivialCommutator,
    Torus,
    WeylTorus,
    Iwasawa,
    Conjugation,
    Extra,
}

impl Group {
    pub fn label(self) -> &'static str {
        match self {
            Group::Basics => "one-parameter and torus laws",
            Group::Commutator => "commutator relations",
            Group::TrivialCommutator => "commuting pairs",
            Group::Torus => "torus action on roots",
            Group::WeylTorus => "Weyl action on the torus",
            Group::Iwasawa => "Iwasawa decompositions",
            Group::Conjugation => "unfolding conjugations",
            Group::Extra => "local computation rewrites",
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Kind {
    OneParameter(Root),
    HMultiplicative,
    Commutator(&'static CommutatorRule),
    Trivial(Root, Root),
    Torus(Root, i32, i32),
    WeylTorusAlpha,
    WeylTorusBeta,
    IwasawaBeta,
    IwasawaAlpha,
    GammaAlphaBeta,
    GammaBeta,
    DeltaBeta(Root),
    DeltaAlphaBeta,
    GammaTorus,
    MoveRight,
    SlUpper,
    SlLower,
    SlTorus,
    SlGeneric,
}

/// One audited statement.
#[derive(Clone, Debug)]
pub struct Identity {
    pub group: Group,
    pub name: String,
    pub statement: String,
    pub expectation: Expectation,
    /// Number of free parameters.
    pub arity: usize,
    kind: Kind,
}

/// Exponents `(a, b)` in `h(t1,t2)^-1 x_g(r) h(t1,t2) = x_g(t1^a t2^b r)`,
/// as displayed in the source relations.
const TORUS_TABLE: [(Root, i32, i32); 6] = [
    (ALPHA, 0, -1),
    (BETA, -1, 1),
    (ALPHA_BETA, -1, 0),
    (TWO_ALPHA_BETA, -1, -1),
    (THREE_ALPHA_BETA, -1, -2),
    (THREE_ALPHA_TWO_BETA, -2, -1),
];

fn monomial_text(coeff: i64, xp: u32, yp: u32) -> String {
    let mut s = match coeff {
        1 => String::new(),
        -1 => "-".to_string(),
        c => c.to_string(),
    };
    s.push_str(&match xp {
        0 => String::new(),
        1 => "x".to_string(),
        k => format!("x^{k}"),
    });
    s.push_str(&match yp {
        0 => String::new(),
        1 => "y".to_string(),
        k => format!("y^{k}"),
    });
    s
}

fn rule_text(rule: &CommutatorRule) -> String {
    let rhs: Vec<String> = rule
        .terms
        .iter()
        .map(|t| format!("x_{}({})", t.root.ascii(), monomial_text(t.coeff, t.x_pow, t.y_pow)))
        .collect();
    format!("[x_{}(x), x_{}(y)] = {}", rule.first.ascii(), rule.second.ascii(), rhs.join(" "))
}

/// The full list of audited identities in a fixed order.
pub fn identities() -> Vec<Identity> {
    let mut out = Vec::new();
    let mut push = |group, name: String, statement: String, arity, kind| {
        out.push(Identity { group, name, statement, expectation: Expectation::Holds, arity, kind });
    };
    for g in all_roots() {
        let a = g.ascii();
        push(Group::Basics, format!("x_{a} one-parameter"), format!("x_{a}(s) x_{a}(t) = x_{a}(s+t)"), 2,
            Kind::OneParameter(g));
    }
    push(Group::Basics, "h multiplicative".into(), "h(t1,t2) h(u1,u2) = h(t1 u1, t2 u2)".into(), 4,
        Kind::HMultiplicative);
    for rule in COMMUTATOR_TABLE.iter() {
        push(Group::Commutator, format!("[{}, {}]", rule.first.ascii(), rule.second.ascii()), rule_text(rule), 2,
            Kind::Commutator(rule));
    }
    for (a, b) in commuting_pairs() {
        push(Group::TrivialCommutator, format!("[{}, {}] = 1", a.ascii(), b.ascii()),
            format!("[x_{}(x), x_{}(y)] = 1", a.ascii(), b.ascii()), 2, Kind::Trivial(a, b));
    }
    for (g, ea, eb) in TORUS_TABLE {
        let a = g.ascii();
        push(Group::Torus, format!("torus on {a}"),
            format!("h(t1,t2)^-1 x_{a}(r) h(t1,t2) = x_{a}(t1^{ea} t2^{eb} r)"), 3, Kind::Torus(g, ea, eb));
    }
    push(Group::WeylTorus, "w_a h w_a^-1".into(), "w_a h(t1,t2) w_a^-1 = h(t1 t2, t2^-1)".into(), 2,
        Kind::WeylTorusAlpha);
    push(Group::WeylTorus, "w_b h w_b^-1".into(), "w_b h(t1,t2) w_b^-1 = h(t2, t1)".into(), 2, Kind::WeylTorusBeta);
    push(Group::Iwasawa, "w_b x_b(r)".into(), "w_b x_b(r) = x_b(-r^-1) h(-r^-1, -r) x_-b(r^-1)".into(), 1,
        Kind::IwasawaBeta);
    push(Group::Iwasawa, "w_a x_a(-p^-1)".into(), "w_a x_a(-p^-1) = x_a(p) h(p^-1, p^2) x_-a(-p)".into(), 1,
        Kind::IwasawaAlpha);
    push(Group::Conjugation, "gamma on a+b".into(), "gamma x_a+b(r) gamma^-1 = x_a(r)".into(), 1,
        Kind::GammaAlphaBeta);
    push(Group::Conjugation, "gamma on b".into(), "gamma x_b(r) gamma^-1 lies in U_3a+b".into(), 1, Kind::GammaBeta);
    push(Group::Conjugation, "delta on b".into(), "delta x_b(r) delta^-1 lies in U_3a+2b".into(), 1,
        Kind::DeltaBeta(THREE_ALPHA_TWO_BETA));
    push(Group::Conjugation, "delta on a+b".into(), "delta x_a+b(r) delta^-1 lies in U_2a+b".into(), 1,
        Kind::DeltaAlphaBeta);
    push(Group::Conjugation, "gamma t(a)".into(), "gamma t(a) gamma^-1 = h(1, a), t(a) = h(a, a^-1)".into(), 1,
        Kind::GammaTorus);
    push(Group::Extra, "move w_a x_a(r1) right".into(),
        "w_a [r1,0,r3,r4,r5] = x_a+b(-r3) x_b(-r4-3 r1 r3) x_3a+2b(r5) w_a x_a(r1)".into(), 4, Kind::MoveRight);
    for (name, kind, arity) in [
        ("SL2 on V: upper", Kind::SlUpper, 4),
        ("SL2 on V: lower", Kind::SlLower, 4),
        ("SL2 on V: torus", Kind::SlTorus, 4),
        ("SL2 on V: product", Kind::SlGeneric, 6),
    ] {
        push(Group::Extra, name.into(),
            "g^-1 [r1,r2,r3,0,0] g = [a r1 - c r2, -b r1 + d r2, r3', *, *] with r3' - r1' r2' = r3 - r1 r2".into(),
            arity, kind);
    }
    // A tempting variant with the wrong target root. The image of U_b under
    // delta = w_b w_a is U_3a+2b, which still lies in V'.
    let at = out.iter().position(|id| id.name == "delta on b").map_or(out.len(), |k| k + 1);
    out.insert(at, Identity {
        group: Group::Conjugation,
        name: "delta on b into U_2a+b".into(),
        statement: "delta x_b(r) delta^-1 lies in U_2a+b".into(),
        expectation: Expectation::Fails,
        arity: 1,
        kind: Kind::DeltaBeta(TWO_ALPHA_BETA),
    });
    out
}

struct Ops<'m> {
    m: &'m AdjointModel,
}

impl Ops<'_> {
    fn x<F: Field>(&self, g: Root, t: F) -> Matrix<F> {
        self.m.x(g, &t)
    }

    fn w<F: Field>(&self, g: Root) -> Result<Matrix<F>, AdjointError> {
        self.m.w(g, &F::one())
    }

    fn w_inv<F: Field>(&self, g: Root) -> Result<Matrix<F>, AdjointError> {
        self.m.w(g, &-F::one())
    }

    fn h<F: Field>(&self, t1: F, t2: F) -> Result<Matrix<F>, AdjointError> {
        self.m.h(&t1, &t2)
    }

    /// `gamma = w_b w_a w_b w_a` and its inverse.
    fn gamma<F: Field>(&self) -> Result<(Matrix<F>, Matrix<F>), AdjointError> {
        let (wa, wb) = (self.w::<F>(ALPHA)?, self.w::<F>(BETA)?);
        let (ia, ib) = (self.w_inv::<F>(ALPHA)?, self.w_inv::<F>(BETA)?);
        Ok((prod(&[&wb, &wa, &wb, &wa]), prod(&[&ia, &ib, &ia, &ib])))
    }

    /// `delta = w_b w_a` and its inverse.
    fn delta<F: Field>(&self) -> Result<(Matrix<F>, Matrix<F>), AdjointError> {
        let (wa, wb) = (self.w::<F>(ALPHA)?, self.w::<F>(BETA)?);
        let (ia, ib) = (self.w_inv::<F>(ALPHA)?, self.w_inv::<F>(BETA)?);
        Ok((wb.matmul(&wa), ia.matmul(&ib)))
    }

    fn v_elem<F: Field>(&self, r: [F; 5]) -> Matrix<F> {
        let mut acc = Matrix::identity(DIM);
        for (g, t) in V_ROOTS.iter().zip(r) {
            acc = acc.matmul(&self.x(*g, t));
        }
        acc
    }
}

fn prod<F: Field>(ms: &[&Matrix<F>]) -> Matrix<F> {
    ms.iter().fold(Matrix::identity(DIM), |acc, m| acc.matmul(m))
}

fn inv<F: Field>(t: &F) -> Result<F, AdjointError> {
    t.try_inv().ok_or(AdjointError::ZeroParameter)
}

/// Check `g^-1 [r1,r2,r3,0,0] g` against the displayed coordinates for a
/// matrix `g` in the SL2 of the Levi, given also as `[[a, b], [c, d]]`.
fn sl_conjugation<F: Field>(
    ops: &Ops,
    g: &Matrix<F>,
    abcd: [F; 4],
    r: [F; 3],
) -> Result<bool, AdjointError> {
    let [a, b, c, d] = abcd;
    let g_inv = g.inverse().ok_or(AdjointError::ZeroParameter)?;
    let [r1, r2, r3] = r;
    let v = ops.v_elem([r1.clone(), r2.clone(), r3.clone(), F::zero(), F::zero()]);
    let conj = prod(&[&g_inv, &v, g]);
    let Some(coords) = ops.m.decompose_ordered(&conj, &V_ROOTS) else { return Ok(false) };
    let r1p = a * r1.clone() - c * r2.clone();
    let r2p = -(b * r1.clone()) + d * r2.clone();
    let z = coords[2].clone() - coords[0].clone() * coords[1].clone();
    Ok(coords[0] == r1p && coords[1] == r2p && z == r3 - r1 * r2)
}

impl Identity {
    /// Whether the statement holds at the parameter values `p`.
    pub fn holds<F: Field>(&self, model: &AdjointModel, p: &[F]) -> Result<bool, AdjointError> {
        assert_eq!(p.len(), self.arity, "parameter count for {}", self.name);
        let ops = Ops { m: model };
        let one = F::one();
        let c = |k: i64| F::from_i64(k);
        Ok(match self.kind {
            Kind::OneParameter(g) => {
                ops.x(g, p[0].clone()).matmul(&ops.x(g, p[1].clone())) == ops.x(g, p[0].clone() + p[1].clone())
            }
            Kind::HMultiplicative => {
                let lhs = ops.h(p[0].clone(), p[1].clone())?.matmul(&ops.h(p[2].clone(), p[3].clone())?);
                lhs == ops.h(p[0].clone() * p[2].clone(), p[1].clone() * p[3].clone())?
            }
            Kind::Commutator(rule) => {
                let lhs = model.group_commutator(rule.first, &p[0], rule.second, &p[1]);
                let rhs = commutator_terms(rule, &p[0], &p[1])
                    .into_iter()
                    .fold(Matrix::identity(DIM), |acc, (g, v)| acc.matmul(&ops.x(g, v)));
                lhs == rhs
            }
            Kind::Trivial(a, b) => model.group_commutator(a, &p[0], b, &p[1]).is_identity(),
            Kind::Torus(g, ea, eb) => {
                let h = ops.h(p[0].clone(), p[1].clone())?;
                let h_inv = ops.h(inv(&p[0])?, inv(&p[1])?)?;
                let f = p[0].pow_i(ea as i64).ok_or(AdjointError::ZeroParameter)?
                    * p[1].pow_i(eb as i64).ok_or(AdjointError::ZeroParameter)?;
                prod(&[&h_inv, &ops.x(g, p[2].clone()), &h]) == ops.x(g, f * p[2].clone())
            }
            Kind::WeylTorusAlpha => {
                let lhs = prod(&[&ops.w(ALPHA)?, &ops.h(p[0].clone(), p[1].clone())?, &ops.w_inv(ALPHA)?]);
                lhs == ops.h(p[0].clone() * p[1].clone(), inv(&p[1])?)?
            }
            Kind::WeylTorusBeta => {
                let lhs = prod(&[&ops.w(BETA)?, &ops.h(p[0].clone(), p[1].clone())?, &ops.w_inv(BETA)?]);
                lhs == ops.h(p[1].clone(), p[0].clone())?
            }
            Kind::IwasawaBeta => {
                let r = p[0].clone();
                let ri = inv(&r)?;
                let lhs = ops.w(BETA)?.matmul(&ops.x(BETA, r.clone()));
                let rhs = prod(&[&ops.x(BETA, -ri.clone()), &ops.h(-ri.clone(), -r)?, &ops.x(-BETA, ri)]);
                lhs == rhs
            }
            Kind::IwasawaAlpha => {
                let pp = p[0].clone();
                let pi = inv(&pp)?;
                let lhs = ops.w(ALPHA)?.matmul(&ops.x(ALPHA, -pi.clone()));
                let rhs = prod(&[&ops.x(ALPHA, pp.clone()), &ops.h(pi, pp.clone() * pp.clone())?, &ops.x(-ALPHA, -pp)]);
                lhs == rhs
            }
            Kind::GammaAlphaBeta => {
                let (g, gi) = ops.gamma::<F>()?;
                prod(&[&g, &ops.x(ALPHA_BETA, p[0].clone()), &gi]) == ops.x(ALPHA, p[0].clone())
            }
            Kind::GammaBeta => {
                let (g, gi) = ops.gamma::<F>()?;
                let m = prod(&[&g, &ops.x(BETA, p[0].clone()), &gi]);
                model.root_subgroup_parameter(&m, THREE_ALPHA_BETA).is_some()
            }
            Kind::DeltaBeta(target) => {
                let (d, di) = ops.delta::<F>()?;
                let m = prod(&[&d, &ops.x(BETA, p[0].clone()), &di]);
                model.root_subgroup_parameter(&m, target).is_some()
            }
            Kind::DeltaAlphaBeta => {
                let (d, di) = ops.delta::<F>()?;
                let m = prod(&[&d, &ops.x(ALPHA_BETA, p[0].clone()), &di]);
                model.root_subgroup_parameter(&m, TWO_ALPHA_BETA).is_some()
            }
            Kind::GammaTorus => {
                let (g, gi) = ops.gamma::<F>()?;
                let t = ops.h(p[0].clone(), inv(&p[0])?)?;
                prod(&[&g, &t, &gi]) == ops.h(one, p[0].clone())?
            }
            Kind::MoveRight => {
                let [r1, r3, r4, r5] = [p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()];
                let wa = ops.w::<F>(ALPHA)?;
                let lhs = wa.matmul(&ops.v_elem([r1.clone(), F::zero(), r3.clone(), r4.clone(), r5.clone()]));
                let rhs = prod(&[
                    &ops.x(ALPHA_BETA, -r3.clone()),
                    &ops.x(BETA, -r4 - c(3) * r1.clone() * r3),
                    &ops.x(THREE_ALPHA_TWO_BETA, r5),
                    &wa,
                    &ops.x(ALPHA, r1),
                ]);
                lhs == rhs
            }
            Kind::SlUpper => {
                let b = p[0].clone();
                let g = ops.x(BETA, b.clone());
                sl_conjugation(&ops, &g, [one.clone(), b, F::zero(), one], [p[1].clone(), p[2].clone(), p[3].clone()])?
            }
            Kind::SlLower => {
                let cc = p[0].clone();
                let g = ops.x(-BETA, cc.clone());
                sl_conjugation(&ops, &g, [one.clone(), F::zero(), cc, one], [p[1].clone(), p[2].clone(), p[3].clone()])?
            }
            Kind::SlTorus => {
                let t = p[0].clone();
                let ti = inv(&t)?;
                let g = ops.h(t.clone(), ti.clone())?;
                sl_conjugation(&ops, &g, [t, F::zero(), F::zero(), ti], [p[1].clone(), p[2].clone(), p[3].clone()])?
            }
            Kind::SlGeneric => {
                // g = n(b) n^-(c) t(t) = [[(1 + b c) t, b / t], [c t, 1 / t]]
                let (b, cc, t) = (p[0].clone(), p[1].clone(), p[2].clone());
                let ti = inv(&t)?;
                let g = prod(&[&ops.x(BETA, b.clone()), &ops.x(-BETA, cc.clone()), &ops.h(t.clone(), ti.clone())?]);
                let abcd = [(one + b.clone() * cc.clone()) * t.clone(), b * ti.clone(), cc * t, ti];
                sl_conjugation(&ops, &g, abcd, [p[3].clone(), p[4].clone(), p[5].clone()])?
            }
        })
    }
}

/// Audit parameters.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AuditConfig {
    pub samples: usize,
    pub seed: u64,
    pub symbolic: bool,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig { samples: 6, seed: 1, symbolic: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub group: Group,
    pub name: String,
    pub statement: String,
    pub expectation: Expectation,
    pub samples: usize,
    /// Sample points at which the statement failed, as text.
    pub failed_samples: Vec<Vec<String>>,
    /// Outcome of the indeterminate check; `None` if it was not run.
    pub symbolic: Option<bool>,
    /// Whether the statement held everywhere it was checked.
    pub holds: bool,
    /// `holds` agrees with the expectation.
    pub pass: bool,
    pub error: Option<String>,
}

/// A nonzero rational with small numerator and denominator.
pub fn random_rational(rng: &mut impl Rng) -> Q {
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-12i64..=12);
    }
    crate::scalar::q(n, rng.gen_range(1i64..=7))
}

/// Deterministic sample points for an identity.
pub fn sample_points(id: &Identity, index: usize, cfg: &AuditConfig) -> Vec<Vec<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(1_000_003).wrapping_add(index as u64));
    (0..cfg.samples).map(|_| (0..id.arity).map(|_| random_rational(&mut rng)).collect()).collect()
}

fn audit_one(model: &AdjointModel, id: &Identity, index: usize, cfg: &AuditConfig) -> IdentityReport {
    let mut failed = Vec::new();
    let mut error = None;
    for pt in sample_points(id, index, cfg) {
        match id.holds(model, &pt) {
            Ok(true) => {}
            Ok(false) => failed.push(pt.iter().map(|v| v.to_string()).collect()),
            Err(e) => {
                error = Some(e.to_string());
                failed.push(pt.iter().map(|v| v.to_string()).collect());
            }
        }
    }
    let symbolic = (cfg.symbolic && id.arity <= SYMBOLS.len()).then(|| {
        let p: Vec<RatFunc> = SYMBOLS[..id.arity].iter().map(|v| RatFunc::var(*v)).collect();
        id.holds(model, &p).unwrap_or_else(|e| {
            error = Some(e.to_string());
            false
        })
    });
    let holds = failed.is_empty() && symbolic != Some(false);
    IdentityReport {
        group: id.group,
        name: id.name.clone(),
        statement: id.statement.clone(),
        expectation: id.expectation,
        samples: cfg.samples,
        failed_samples: failed,
        symbolic,
        holds,
        pass: holds == (id.expectation == Expectation::Holds),
        error,
    }
}

/// Run the whole audit; reports come back in the order of [`identities`].
pub fn run_audit(model: &AdjointModel, cfg: &AuditConfig) -> Vec<IdentityReport> {
    let ids = identities();
    ids.par_iter().enumerate().map(|(i, id)| audit_one(model, id, i, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn audit_passes() {
        let model = AdjointModel::shared().unwrap();
        let reports = run_audit(model, &AuditConfig::default());
        assert!(reports.iter().all(|r| r.pass));
        let wrong = reports.iter().find(|r| r.expectation == Expectation::Fails).unwrap();
        assert_eq!(wrong.symbolic, Some(false));
        assert_eq!(wrong.failed_samples.len(), wrong.samples);
    }
}
