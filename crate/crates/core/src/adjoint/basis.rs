//! Chevalley basis of the G2 Lie algebra in its adjoint action.
//!
//! Basis order: `e_gamma` for the six positive roots in normal order, the six
//! negative roots in the same order, then the coroots `h_alpha`, `h_beta`.

use num_rational::Rational64;
use num_traits::Zero;
use thiserror::Error;

use super::matrix::Matrix;
use crate::rootsys::{all_roots, coroot_coords, pairing, root_index, Root, ALPHA, BETA};

pub const DIM: usize = 14;
pub const H_ALPHA: usize = 12;
pub const H_BETA: usize = 13;

type Vec14 = [i64; DIM];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisError {
    #[error("no consistent choice of structure constant signs")]
    NoConsistentSigns,
    #[error("ad(e_{0}) is not nilpotent of order at most 6")]
    NotNilpotent(Root),
    #[error("ad(e_{0})^{1}/{1}! is not integral")]
    NotIntegral(Root, usize),
}

/// Structure constants `[e_i, e_j] = n[i][j] e_{i+j}` on root indices, with
/// the adjoint matrices they induce.
#[derive(Clone, Debug)]
pub struct ChevalleyBasis {
    constants: [[i64; 12]; 12],
    e: Vec<Matrix<Rational64>>,
    h: [Matrix<Rational64>; 2],
}

/// `p + 1` where `p` is the largest integer with `delta - p*gamma` a root.
fn string_length(gamma: Root, delta: Root) -> i64 {
    let mut p = 0;
    while (Root::new(delta.m - (p + 1) * gamma.m, delta.n - (p + 1) * gamma.n)).is_root() {
        p += 1;
    }
    (p + 1) as i64
}

fn unit(i: usize) -> Vec14 {
    let mut v = [0; DIM];
    v[i] = 1;
    v
}

/// Bracket of basis elements given (possibly partial) constants; `None` when
/// a needed constant is still undetermined.
fn bracket_basis(c: &[[i64; 12]; 12], i: usize, j: usize) -> Option<Vec14> {
    let roots = all_roots();
    let mut out = [0; DIM];
    match (i < 12, j < 12) {
        (true, true) => {
            let (g, d) = (roots[i], roots[j]);
            let s = g + d;
            if s.m == 0 && s.n == 0 {
                let (c1, c2) = coroot_coords(g).expect("root");
                out[H_ALPHA] = c1 as i64;
                out[H_BETA] = c2 as i64;
            } else if let Some(k) = root_index(s) {
                if c[i][j] == 0 {
                    return None;
                }
                out[k] = c[i][j];
            }
        }
        (false, true) => {
            let simple = if i == H_ALPHA { ALPHA } else { BETA };
            out[j] = pairing(roots[j], simple).expect("simple root") as i64;
        }
        (true, false) => {
            let simple = if j == H_ALPHA { ALPHA } else { BETA };
            out[i] = -pairing(roots[i], simple).expect("simple root") as i64;
        }
        (false, false) => {}
    }
    Some(out)
}

fn bracket_vec(c: &[[i64; 12]; 12], x: &Vec14, y: &Vec14) -> Option<Vec14> {
    let mut out = [0; DIM];
    for (i, xi) in x.iter().enumerate() {
        if *xi == 0 {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if *yj == 0 {
                continue;
            }
            let b = bracket_basis(c, i, j)?;
            for k in 0..DIM {
                out[k] += xi * yj * b[k];
            }
        }
    }
    Some(out)
}

fn jacobi_defect(c: &[[i64; 12]; 12], i: usize, j: usize, k: usize) -> Option<bool> {
    let (x, y, z) = (unit(i), unit(j), unit(k));
    let a = bracket_vec(c, &x, &bracket_vec(c, &y, &z)?)?;
    let b = bracket_vec(c, &y, &bracket_vec(c, &z, &x)?)?;
    let d = bracket_vec(c, &z, &bracket_vec(c, &x, &y)?)?;
    Some((0..DIM).any(|t| a[t] + b[t] + d[t] != 0))
}

impl ChevalleyBasis {
    /// Find structure constant signs satisfying the Jacobi identity by
    /// backtracking; triples are checked as soon as their constants are known.
    pub fn build() -> Result<Self, BasisError> {
        let roots = all_roots();
        let mut pairs = Vec::new();
        for i in 0..12 {
            for j in i + 1..12 {
                if (roots[i] + roots[j]).is_root() {
                    pairs.push((i, j));
                }
            }
        }
        let mut c = [[0i64; 12]; 12];
        if !Self::search(&mut c, &pairs, 0) {
            return Err(BasisError::NoConsistentSigns);
        }
        Self::from_constants(c)
    }

    fn search(c: &mut [[i64; 12]; 12], pairs: &[(usize, usize)], depth: usize) -> bool {
        if depth == pairs.len() {
            return true;
        }
        let roots = all_roots();
        let (i, j) = pairs[depth];
        let mag = string_length(roots[i], roots[j]);
        for sign in [1, -1] {
            c[i][j] = sign * mag;
            c[j][i] = -sign * mag;
            let ok = (0..12).all(|x| {
                (x + 1..12).all(|y| {
                    (y + 1..12).all(|z| jacobi_defect(c, x, y, z) != Some(true))
                })
            });
            if ok && Self::search(c, pairs, depth + 1) {
                return true;
            }
        }
        c[i][j] = 0;
        c[j][i] = 0;
        false
    }

    fn from_constants(constants: [[i64; 12]; 12]) -> Result<Self, BasisError> {
        let ad = |x: usize| -> Matrix<Rational64> {
            let mut m = Matrix::zeros(DIM);
            for j in 0..DIM {
                let col = bracket_basis(&constants, x, j).expect("all constants assigned");
                for (i, v) in col.iter().enumerate() {
                    if *v != 0 {
                        m.set(i, j, Rational64::from_integer(*v));
                    }
                }
            }
            m
        };
        let e = (0..12).map(ad).collect();
        let h = [ad(H_ALPHA), ad(H_BETA)];
        Ok(ChevalleyBasis { constants, e, h })
    }

    /// Rescale `e_gamma` and `e_{-gamma}` by `signs[k]` for the k-th positive
    /// root; this keeps `[e_gamma, e_{-gamma}] = h_gamma`.
    pub fn rescaled(&self, signs: [i64; 6]) -> Result<Self, BasisError> {
        let roots = all_roots();
        let sign_of = |i: usize| signs[i % 6];
        let mut c = self.constants;
        for i in 0..12 {
            for j in 0..12 {
                if c[i][j] == 0 {
                    continue;
                }
                let k = root_index(roots[i] + roots[j]).expect("constant implies root sum");
                c[i][j] *= sign_of(i) * sign_of(j) * sign_of(k);
            }
        }
        Self::from_constants(c)
    }

    pub fn constant(&self, g: Root, d: Root) -> i64 {
        match (root_index(g), root_index(d)) {
            (Some(i), Some(j)) => self.constants[i][j],
            _ => 0,
        }
    }

    pub fn e(&self, g: Root) -> &Matrix<Rational64> {
        &self.e[root_index(g).expect("root")]
    }

    pub fn h_alpha(&self) -> &Matrix<Rational64> {
        &self.h[0]
    }

    pub fn h_beta(&self) -> &Matrix<Rational64> {
        &self.h[1]
    }

    /// Matrix of `ad` of a basis element by index.
    pub fn ad_basis(&self, i: usize) -> &Matrix<Rational64> {
        if i < 12 {
            &self.e[i]
        } else {
            &self.h[i - 12]
        }
    }

    /// `ad(e_gamma)^k / k!` for `k = 0, 1, ...` until the power vanishes.
    pub fn exp_terms(&self, g: Root) -> Result<Vec<Matrix<Rational64>>, BasisError> {
        let e = self.e(g);
        let mut terms = vec![Matrix::identity(DIM)];
        let mut pow = Matrix::identity(DIM);
        let mut fact = 1i64;
        for k in 1..=6 {
            pow = pow.matmul(e);
            if pow.is_zero() {
                return Ok(terms);
            }
            fact *= k as i64;
            let t = pow.scale(&Rational64::new(1, fact));
            for i in 0..DIM {
                for j in 0..DIM {
                    if !t.get(i, j).is_integer() {
                        return Err(BasisError::NotIntegral(g, k));
                    }
                }
            }
            terms.push(t);
        }
        Err(BasisError::NotNilpotent(g))
    }

    /// Killing form Gram matrix `tr(ad b_i ad b_j)`.
    pub fn killing_gram(&self) -> Matrix<Rational64> {
        Matrix::from_fn(DIM, |i, j| {
            let p = self.ad_basis(i).matmul(self.ad_basis(j));
            (0..DIM).fold(Rational64::zero(), |acc, k| acc + *p.get(k, k))
        })
    }

    /// Check `ad[b_i, b_j] = [ad b_i, ad b_j]` for every pair of basis elements.
    pub fn is_homomorphism(&self) -> bool {
        for i in 0..DIM {
            for j in 0..DIM {
                let b = bracket_basis(&self.constants, i, j).expect("assigned");
                let mut lhs = Matrix::zeros(DIM);
                for (k, v) in b.iter().enumerate() {
                    if *v != 0 {
                        lhs = lhs.add(&self.ad_basis(k).scale(&Rational64::from_integer(*v)));
                    }
                }
                if lhs != self.ad_basis(i).commutator(self.ad_basis(j)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn satisfies_jacobi(&self) -> bool {
        (0..DIM).all(|i| {
            (0..DIM).all(|j| (0..DIM).all(|k| jacobi_defect(&self.constants, i, j, k) == Some(false)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::POSITIVE_ROOTS;

    #[test]
    fn basis_is_consistent() {
        let b = ChevalleyBasis::build().unwrap();
        assert!(b.satisfies_jacobi());
        assert!(b.is_homomorphism());
        for r in all_roots() {
            let mut p = Matrix::identity(DIM);
            for _ in 0..6 {
                p = p.matmul(b.e(r));
            }
            assert!(p.is_zero());
            assert!(b.exp_terms(r).unwrap().len() <= 5);
        }
    }

    #[test]
    fn cartan_action() {
        let b = ChevalleyBasis::build().unwrap();
        let comm = b.h_alpha().commutator(b.e(BETA));
        assert_eq!(comm, b.e(BETA).scale(&Rational64::from_integer(-3)));
        for r in all_roots() {
            let c = b.h_beta().commutator(b.e(r));
            let k = pairing(r, BETA).unwrap() as i64;
            assert_eq!(c, b.e(r).scale(&Rational64::from_integer(k)));
        }
    }

    #[test]
    fn magnitudes() {
        let b = ChevalleyBasis::build().unwrap();
        assert_eq!(b.constant(ALPHA, BETA).abs(), 1);
        assert_eq!(b.constant(ALPHA, POSITIVE_ROOTS[2]).abs(), 2);
        assert_eq!(b.constant(ALPHA, POSITIVE_ROOTS[3]).abs(), 3);
        assert_eq!(b.constant(BETA, ALPHA), -b.constant(ALPHA, BETA));
    }

    #[test]
    fn killing_form_nondegenerate() {
        let b = ChevalleyBasis::build().unwrap();
        assert_ne!(b.killing_gram().det(), Rational64::zero());
    }
}
