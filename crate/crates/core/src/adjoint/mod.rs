//! Exact 14-dimensional adjoint model of the Chevalley group G2.
//!
//! `x_g(t) = exp(t ad e_g)`, `w_g(t) = x_g(t) x_{-g}(-1/t) x_g(t)`,
//! `h_g(t) = w_g(t) w_g(1)^-1` and `h(t1,t2) = h_alpha(t1 t2) h_beta(t1^2 t2)`.

pub mod basis;
pub mod matrix;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

pub use basis::{BasisError, ChevalleyBasis, DIM};
pub use matrix::Matrix;

use crate::relations::{commuting_pairs, commutator_terms, COMMUTATOR_TABLE};
use crate::rootsys::{all_roots, coroot_coords, reflect, root_index, Root, ALPHA, BETA};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdjointError {
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error("{0} is not a root")]
    NotARoot(Root),
    #[error("torus and Weyl parameters must be nonzero")]
    ZeroParameter,
    #[error("no sign calibration reproduces the commutator table; best assignment satisfies {satisfied:?}")]
    Calibration { satisfied: Vec<String> },
    #[error("w_{0} does not permute root subgroups with a unit sign")]
    WeylSign(Root),
}

/// Outcome of matching structure constant signs against the commutator table.
#[derive(Clone, Debug, Serialize)]
pub struct Calibration {
    /// Sign applied to `e_g` (and `e_{-g}`) for each positive root.
    pub signs: [i64; 6],
    /// Number of the 64 candidate assignments that reproduce every relation.
    pub solutions: usize,
}

fn to_field<F: Field>(x: &Rational64) -> F {
    F::from_i64(*x.numer()) / F::from_i64(*x.denom())
}

/// Nonzero entries `(row, col, value)` of `ad(e_g)^k / k!`, indexed by `k - 1`.
type SparseTerms = Vec<Vec<(usize, usize, i64)>>;

/// Calibrated Chevalley basis together with precomputed exponential terms.
#[derive(Clone, Debug)]
pub struct AdjointModel {
    basis: ChevalleyBasis,
    calibration: Calibration,
    exp: Vec<SparseTerms>,
    weyl_signs: [[i64; 12]; 12],
}

static SHARED: OnceLock<Result<AdjointModel, AdjointError>> = OnceLock::new();

impl AdjointModel {
    /// Build a basis and calibrate it against the commutator table.
    pub fn new() -> Result<Self, AdjointError> {
        let raw = ChevalleyBasis::build()?;
        let mut found: Vec<[i64; 6]> = Vec::new();
        let mut best: (usize, Vec<String>) = (0, Vec::new());
        for mask in 0..64u32 {
            let signs: [i64; 6] =
                std::array::from_fn(|k| if mask >> k & 1 == 1 { -1 } else { 1 });
            let candidate = Self::without_weyl_signs(raw.rescaled(signs)?)?;
            let satisfied = candidate.satisfied_relations();
            if satisfied.len() == COMMUTATOR_TABLE.len() + commuting_pairs().len() {
                found.push(signs);
            } else if satisfied.len() > best.0 {
                best = (satisfied.len(), satisfied);
            }
        }
        let Some(signs) = found.first().copied() else {
            return Err(AdjointError::Calibration { satisfied: best.1 });
        };
        let mut model = Self::uncalibrated(raw.rescaled(signs)?)?;
        model.calibration = Calibration { signs, solutions: found.len() };
        Ok(model)
    }

    /// The calibrated model, built once per process.
    pub fn shared() -> Result<&'static AdjointModel, AdjointError> {
        SHARED.get_or_init(Self::new).as_ref().map_err(Clone::clone)
    }

    /// Model on a given basis with no calibration applied.
    pub fn uncalibrated(basis: ChevalleyBasis) -> Result<Self, AdjointError> {
        let mut model = Self::without_weyl_signs(basis)?;
        model.weyl_signs = model.compute_weyl_signs()?;
        Ok(model)
    }

    fn without_weyl_signs(basis: ChevalleyBasis) -> Result<Self, AdjointError> {
        let mut exp = Vec::with_capacity(12);
        for r in all_roots() {
            let terms = basis.exp_terms(r)?;
            let sparse = terms[1..]
                .iter()
                .map(|m| {
                    let mut entries = Vec::new();
                    for i in 0..DIM {
                        for j in 0..DIM {
                            let v = m.get(i, j);
                            if !v.is_zero() {
                                entries.push((i, j, v.to_integer()));
                            }
                        }
                    }
                    entries
                })
                .collect();
            exp.push(sparse);
        }
        Ok(AdjointModel {
            basis,
            calibration: Calibration { signs: [1; 6], solutions: 0 },
            exp,
            weyl_signs: [[0; 12]; 12],
        })
    }

    pub fn basis(&self) -> &ChevalleyBasis {
        &self.basis
    }

    pub fn calibration(&self) -> &Calibration {
        &self.calibration
    }

    /// Names of the commutator relations (and trivial pairs) that hold exactly
    /// at two fixed rational samples.
    pub fn satisfied_relations(&self) -> Vec<String> {
        let samples = [
            (Rational64::new(2, 1), Rational64::new(3, 1)),
            (Rational64::new(-1, 2), Rational64::new(5, 3)),
        ];
        let mut out = Vec::new();
        for rule in COMMUTATOR_TABLE.iter() {
            let ok = samples.iter().all(|(x, y)| {
                let lhs = self.group_commutator(rule.first, x, rule.second, y);
                let rhs = commutator_terms(rule, x, y)
                    .iter()
                    .fold(Matrix::identity(DIM), |acc, (r, v)| acc.matmul(&self.x(*r, v)));
                lhs == rhs
            });
            if ok {
                out.push(format!("[x_{}, x_{}]", rule.first.ascii(), rule.second.ascii()));
            }
        }
        for (a, b) in commuting_pairs() {
            let ok = samples
                .iter()
                .all(|(x, y)| self.group_commutator(a, x, b, y).is_identity());
            if ok {
                out.push(format!("[x_{}, x_{}] = 1", a.ascii(), b.ascii()));
            }
        }
        out
    }

    /// `x_a(s)^-1 x_b(t)^-1 x_a(s) x_b(t)`.
    pub fn group_commutator<F: Field>(&self, a: Root, s: &F, b: Root, t: &F) -> Matrix<F> {
        self.x(a, &-s.clone())
            .matmul(&self.x(b, &-t.clone()))
            .matmul(&self.x(a, s))
            .matmul(&self.x(b, t))
    }

    /// `x_g(t)`; panics if `g` is not a root.
    pub fn x<F: Field>(&self, g: Root, t: &F) -> Matrix<F> {
        let terms = &self.exp[root_index(g).unwrap_or_else(|| panic!("{g} is not a root"))];
        let mut out: Matrix<F> = Matrix::identity(DIM);
        let mut tp = F::one();
        for term in terms {
            tp = tp * t.clone();
            for &(i, j, v) in term {
                let cur = out.get(i, j).clone();
                out.set(i, j, cur + F::from_i64(v) * tp.clone());
            }
        }
        out
    }

    pub fn try_x<F: Field>(&self, g: Root, t: &F) -> Result<Matrix<F>, AdjointError> {
        if !g.is_root() {
            return Err(AdjointError::NotARoot(g));
        }
        Ok(self.x(g, t))
    }

    /// `w_g(t) = x_g(t) x_{-g}(-1/t) x_g(t)`.
    pub fn w<F: Field>(&self, g: Root, t: &F) -> Result<Matrix<F>, AdjointError> {
        if !g.is_root() {
            return Err(AdjointError::NotARoot(g));
        }
        let inv = t.try_inv().ok_or(AdjointError::ZeroParameter)?;
        let xg = self.x(g, t);
        Ok(xg.matmul(&self.x(-g, &-inv)).matmul(&xg))
    }

    /// `h_g(t) = w_g(t) w_g(1)^-1`, using `w_g(1)^-1 = w_g(-1)`.
    pub fn h_root<F: Field>(&self, g: Root, t: &F) -> Result<Matrix<F>, AdjointError> {
        Ok(self.w(g, t)?.matmul(&self.w(g, &-F::one())?))
    }

    /// `h(t1, t2) = h_alpha(t1 t2) h_beta(t1^2 t2)`.
    pub fn h<F: Field>(&self, t1: &F, t2: &F) -> Result<Matrix<F>, AdjointError> {
        let a = t1.clone() * t2.clone();
        let b = t1.clone() * t1.clone() * t2.clone();
        Ok(self.h_root(ALPHA, &a)?.matmul(&self.h_root(BETA, &b)?))
    }

    /// Recover `t` from a matrix known or suspected to equal `x_g(t)`;
    /// returns `None` if the matrix is not in the root subgroup.
    pub fn root_subgroup_parameter<F: Field>(&self, m: &Matrix<F>, g: Root) -> Option<F> {
        let col = root_index(-g)?;
        let (c1, c2) = coroot_coords(g).ok()?;
        let t = if c1 != 0 {
            m.get(basis::H_ALPHA, col).clone() / F::from_i64(c1 as i64)
        } else {
            m.get(basis::H_BETA, col).clone() / F::from_i64(c2 as i64)
        };
        (self.x(g, &t) == *m).then_some(t)
    }

    /// Coordinates `t_i` with `m = x_{g_1}(t_1) ... x_{g_k}(t_k)`, for positive
    /// roots listed by strictly increasing height; `None` if no such
    /// factorization exists.
    pub fn decompose_ordered<F: Field>(&self, m: &Matrix<F>, roots: &[Root]) -> Option<Vec<F>> {
        // A Cartan element on which every positive root is nonzero.
        let h = (basis::H_ALPHA, F::from_i64(1), basis::H_BETA, F::from_i64(5));
        let root_value = |g: Root| -> F {
            let a = crate::rootsys::pairing(g, ALPHA).expect("root");
            let b = crate::rootsys::pairing(g, BETA).expect("root");
            F::from_i64(a as i64) * h.1.clone() + F::from_i64(b as i64) * h.3.clone()
        };
        let mut rest = m.clone();
        let mut out = Vec::with_capacity(roots.len());
        for g in roots {
            let idx = root_index(*g)?;
            // Coefficient of e_g in rest(h) is -g(h) t at lowest remaining height.
            let coef = rest.get(idx, h.0).clone() * h.1.clone() + rest.get(idx, h.2).clone() * h.3.clone();
            let val = root_value(*g);
            let t = -(coef / val);
            rest = self.x(*g, &-t.clone()).matmul(&rest);
            out.push(t);
        }
        rest.is_identity().then_some(out)
    }

    fn compute_weyl_signs(&self) -> Result<[[i64; 12]; 12], AdjointError> {
        let roots = all_roots();
        let mut out = [[0i64; 12]; 12];
        let one = Rational64::one();
        for (i, d) in roots.iter().enumerate() {
            let w = self.w(*d, &one)?;
            let winv = self.w(*d, &-one)?;
            for (j, g) in roots.iter().enumerate() {
                let conj = w.matmul(&self.x(*g, &one)).matmul(&winv);
                let target = reflect(*g, *d).map_err(|_| AdjointError::NotARoot(*d))?;
                let c = self
                    .root_subgroup_parameter(&conj, target)
                    .ok_or(AdjointError::WeylSign(*d))?;
                if c.abs() != one {
                    return Err(AdjointError::WeylSign(*d));
                }
                out[i][j] = *c.numer();
            }
        }
        Ok(out)
    }

    /// Sign `c` with `w_d x_g(r) w_d^-1 = x_{s_d g}(c r)`.
    pub fn weyl_sign(&self, d: Root, g: Root) -> Option<i64> {
        Some(self.weyl_signs[root_index(d)?][root_index(g)?])
    }

    /// Gram matrix of the Killing form in the chosen basis.
    pub fn killing_gram<F: Field>(&self) -> Matrix<F> {
        self.basis.killing_gram().map(to_field)
    }

    /// `g^T K g = K`: the adjoint action preserves the Killing form.
    pub fn preserves_killing<F: Field>(&self, g: &Matrix<F>) -> bool {
        let k = self.killing_gram::<F>();
        g.transpose().matmul(&k).matmul(g) == k
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{ALPHA_BETA, POSITIVE_ROOTS, THREE_ALPHA_TWO_BETA};
    use crate::scalar::q;
    use num_rational::BigRational;

    fn model() -> &'static AdjointModel {
        AdjointModel::shared().expect("calibration succeeds")
    }

    #[test]
    fn calibration_unique_up_to_characters() {
        let m = model();
        // Torus elements of order two give four equivalent solutions.
        assert_eq!(m.calibration().solutions, 4);
    }

    #[test]
    fn one_parameter_groups() {
        let m = model();
        for g in all_roots() {
            let a = m.x(g, &q(2, 1)).matmul(&m.x(g, &q(3, 1)));
            assert_eq!(a, m.x(g, &q(5, 1)));
            assert!(m.x(g, &q(0, 1)).is_identity());
            assert_eq!(m.x(g, &q(5, 1)).det(), q(1, 1));
        }
    }

    #[test]
    fn torus_relations_examples() {
        let m = model();
        let h = m.h(&q(2, 1), &q(3, 1)).unwrap();
        let hinv = h.inverse().unwrap();
        let lhs = hinv.matmul(&m.x(ALPHA, &q(1, 1))).matmul(&h);
        assert_eq!(lhs, m.x(ALPHA, &q(1, 3)));
        let lhs = hinv.matmul(&m.x(THREE_ALPHA_TWO_BETA, &q(1, 1))).matmul(&h);
        assert_eq!(lhs, m.x(THREE_ALPHA_TWO_BETA, &q(1, 12)));
        assert!(m.h(&q(1, 1), &q(1, 1)).unwrap().is_identity());
    }

    #[test]
    fn h_multiplicative_and_det_one() {
        let m = model();
        let a = m.h(&q(2, 1), &q(-3, 5)).unwrap();
        let b = m.h(&q(7, 2), &q(1, 4)).unwrap();
        assert_eq!(a.matmul(&b), m.h(&q(7, 1), &q(-3, 20)).unwrap());
        assert_eq!(a.det(), q(1, 1));
        assert!(m.preserves_killing(&a));
        assert!(m.preserves_killing(&m.w(BETA, &q(3, 2)).unwrap()));
        assert!(m.preserves_killing(&m.x(ALPHA_BETA, &q(-4, 3))));
    }

    #[test]
    fn zero_torus_parameter_rejected() {
        let m = model();
        assert_eq!(m.h(&q(0, 1), &q(1, 1)), Err(AdjointError::ZeroParameter));
    }

    #[test]
    fn root_subgroup_parameter_roundtrip() {
        let m = model();
        for g in POSITIVE_ROOTS {
            let t: BigRational = q(-7, 3);
            assert_eq!(m.root_subgroup_parameter(&m.x(g, &t), g), Some(t));
        }
        let h = m.h(&q(2, 1), &q(3, 1)).unwrap();
        assert_eq!(m.root_subgroup_parameter(&h, ALPHA), None);
    }

    #[test]
    fn works_over_floats() {
        let m = model();
        let a: Matrix<f64> = m.x(ALPHA, &0.5).matmul(&m.x(ALPHA, &0.25));
        assert_eq!(a, m.x(ALPHA, &0.75));
    }
}
