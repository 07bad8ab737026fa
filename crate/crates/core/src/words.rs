//! Words in the Chevalley generators, normal ordering of unipotent words,
//! conjugation by torus and Weyl elements, and the Heisenberg projection.

use std::fmt;

use thiserror::Error;

use crate::adjoint::{AdjointError, AdjointModel, Matrix, DIM};
use crate::relations::{commutator_rule, commutator_terms, torus_exponents};
use crate::rootsys::{normal_index, pairing, reflect, Root, POSITIVE_ROOTS, V_ROOTS};
use crate::scalar::Field;

/// Upper bound on rewrite steps in [`normal_order`].
pub const MAX_REWRITE_STEPS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WordError {
    #[error("normal ordering only accepts positive root generators, found {0}")]
    UnsupportedGenerator(String),
    #[error("generator {0} lies outside V")]
    NotInV(String),
    #[error("conjugator may only contain torus and Weyl generators, found {0}")]
    BadConjugator(String),
    #[error("conjugation is only defined on root subgroup generators, found {0}")]
    BadConjugand(String),
    #[error("rewriting did not terminate within {0} steps")]
    NonTerminating(usize),
    #[error("zero parameter in an invertible generator")]
    ZeroParameter,
    #[error("{0} is not a root")]
    NotARoot(Root),
    #[error(transparent)]
    Adjoint(#[from] AdjointError),
}

/// An abstract generator.
#[derive(Clone, Debug, PartialEq)]
pub enum Gen<F> {
    /// `x_g(t)`
    X(Root, F),
    /// `h(t1, t2)`
    H(F, F),
    /// `w_g(t)`; the Weyl representative `w_g` is `w_g(1)`.
    W(Root, F),
}

impl<F: Field + fmt::Display> fmt::Display for Gen<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::X(r, t) => write!(f, "x_{}({})", r.ascii(), t),
            Gen::H(a, b) => write!(f, "h({}, {})", a, b),
            Gen::W(r, t) if t.is_one() => write!(f, "w_{}", r.ascii()),
            Gen::W(r, t) => write!(f, "w_{}({})", r.ascii(), t),
        }
    }
}

/// A finite product of generators; the empty word is the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Word<F> {
    pub gens: Vec<Gen<F>>,
}

impl<F: Field> Default for Word<F> {
    fn default() -> Self {
        Self::identity()
    }
}

impl<F: Field> Word<F> {
    pub fn identity() -> Self {
        Word { gens: Vec::new() }
    }

    pub fn from_gens(gens: Vec<Gen<F>>) -> Self {
        Word { gens }
    }

    pub fn x(g: Root, t: F) -> Self {
        Word { gens: vec![Gen::X(g, t)] }
    }

    pub fn h(t1: F, t2: F) -> Self {
        Word { gens: vec![Gen::H(t1, t2)] }
    }

    /// The Weyl representative `w_g = w_g(1)`.
    pub fn w(g: Root) -> Self {
        Word { gens: vec![Gen::W(g, F::one())] }
    }

    pub fn w_t(g: Root, t: F) -> Self {
        Word { gens: vec![Gen::W(g, t)] }
    }

    pub fn is_identity(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Concatenation `self * other`.
    pub fn then(mut self, other: &Word<F>) -> Self {
        self.gens.extend(other.gens.iter().cloned());
        self
    }

    pub fn inverse(&self) -> Result<Self, WordError> {
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in self.gens.iter().rev() {
            gens.push(match g {
                Gen::X(r, t) => Gen::X(*r, -t.clone()),
                Gen::H(a, b) => Gen::H(
                    a.try_inv().ok_or(WordError::ZeroParameter)?,
                    b.try_inv().ok_or(WordError::ZeroParameter)?,
                ),
                Gen::W(r, t) => Gen::W(*r, -t.clone()),
            });
        }
        Ok(Word { gens })
    }

    /// Evaluate in the adjoint model.
    pub fn eval(&self, model: &AdjointModel) -> Result<Matrix<F>, WordError> {
        let mut out = Matrix::identity(DIM);
        for g in &self.gens {
            let m = match g {
                Gen::X(r, t) => model.try_x(*r, t)?,
                Gen::H(a, b) => model.h(a, b)?,
                Gen::W(r, t) => model.w(*r, t)?,
            };
            out = out.matmul(&m);
        }
        Ok(out)
    }

    /// Apply `f` to every coefficient.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Word<G> {
        Word {
            gens: self
                .gens
                .iter()
                .map(|g| match g {
                    Gen::X(r, t) => Gen::X(*r, f(t)),
                    Gen::H(a, b) => Gen::H(f(a), f(b)),
                    Gen::W(r, t) => Gen::W(*r, f(t)),
                })
                .collect(),
        }
    }
}

impl<F: Field> std::ops::Mul for Word<F> {
    type Output = Word<F>;
    fn mul(self, rhs: Word<F>) -> Word<F> {
        self.then(&rhs)
    }
}

impl<F: Field + fmt::Display> fmt::Display for Word<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

fn gen_label<F: Field + fmt::Debug>(g: &Gen<F>) -> String {
    match g {
        Gen::X(r, _) => format!("x_{}", r.ascii()),
        Gen::H(..) => "h".into(),
        Gen::W(r, _) => format!("w_{}", r.ascii()),
    }
}

/// Rewrite a word over positive root generators into the normal order
/// `alpha, beta, alpha+beta, 2alpha+beta, 3alpha+beta, 3alpha+2beta`
/// with at most one generator per root and no trivial generators.
pub fn normal_order<F: Field>(w: &Word<F>) -> Result<Word<F>, WordError> {
    let mut seq: Vec<(usize, F)> = Vec::with_capacity(w.gens.len());
    for g in &w.gens {
        match g {
            Gen::X(r, t) if r.is_positive() && r.is_root() => {
                if !t.is_zero() {
                    seq.push((normal_index(*r).expect("positive root"), t.clone()));
                }
            }
            other => return Err(WordError::UnsupportedGenerator(gen_label(other))),
        }
    }
    let mut steps = 0;
    while let Some(i) = (0..seq.len().saturating_sub(1)).find(|&i| seq[i].0 >= seq[i + 1].0) {
        steps += 1;
        if steps > MAX_REWRITE_STEPS {
            return Err(WordError::NonTerminating(MAX_REWRITE_STEPS));
        }
        let (a, x) = seq[i].clone();
        let (b, y) = seq[i + 1].clone();
        if a == b {
            let s = x + y;
            if s.is_zero() {
                seq.drain(i..i + 2);
            } else {
                seq[i] = (a, s);
                seq.remove(i + 1);
            }
            continue;
        }
        // x_a(x) x_b(y) = x_b(y) x_a(x) [x_b(y), x_a(x)]^-1 with b before a.
        let mut replacement = vec![(b, y.clone()), (a, x.clone())];
        if let Some(rule) = commutator_rule(POSITIVE_ROOTS[b], POSITIVE_ROOTS[a]) {
            for (root, v) in commutator_terms(rule, &y, &x).into_iter().rev() {
                if !v.is_zero() {
                    replacement.push((normal_index(root).expect("positive root"), -v));
                }
            }
        }
        seq.splice(i..i + 2, replacement);
    }
    Ok(Word { gens: seq.into_iter().map(|(k, t)| Gen::X(POSITIVE_ROOTS[k], t)).collect() })
}

/// `[r1, r2, r3, r4, r5] = x_a(r1) x_{a+b}(r2) x_{2a+b}(r3) x_{3a+b}(r4) x_{3a+2b}(r5)`,
/// omitting zero coordinates.
pub fn v_element<F: Field>(r: [F; 5]) -> Word<F> {
    Word {
        gens: V_ROOTS
            .iter()
            .zip(r)
            .filter(|(_, t)| !t.is_zero())
            .map(|(g, t)| Gen::X(*g, t))
            .collect(),
    }
}

/// Bracket coordinates of a word in V.
pub fn v_coordinates<F: Field>(v: &Word<F>) -> Result<[F; 5], WordError> {
    for g in &v.gens {
        match g {
            Gen::X(r, _) if V_ROOTS.contains(r) => {}
            other => return Err(WordError::NotInV(gen_label(other))),
        }
    }
    let ordered = normal_order(v)?;
    let mut out: [F; 5] = std::array::from_fn(|_| F::zero());
    for g in ordered.gens {
        if let Gen::X(r, t) = g {
            let k = V_ROOTS.iter().position(|x| *x == r).expect("V is closed");
            out[k] = t;
        }
    }
    Ok(out)
}

/// Element of the Heisenberg group with law
/// `(x1,y1,z1)(x2,y2,z2) = (x1+x2, y1+y2, z1+z2-x1 y2+y1 x2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Heisenberg<F> {
    pub x: F,
    pub y: F,
    pub z: F,
}

impl<F: Field> Heisenberg<F> {
    pub fn new(x: F, y: F, z: F) -> Self {
        Heisenberg { x, y, z }
    }

    pub fn identity() -> Self {
        Heisenberg { x: F::zero(), y: F::zero(), z: F::zero() }
    }

    pub fn inverse(&self) -> Self {
        Heisenberg { x: -self.x.clone(), y: -self.y.clone(), z: -self.z.clone() }
    }
}

impl<F: Field> std::ops::Mul for &Heisenberg<F> {
    type Output = Heisenberg<F>;
    fn mul(self, o: &Heisenberg<F>) -> Heisenberg<F> {
        Heisenberg {
            x: self.x.clone() + o.x.clone(),
            y: self.y.clone() + o.y.clone(),
            z: self.z.clone() + o.z.clone() - self.x.clone() * o.y.clone()
                + self.y.clone() * o.x.clone(),
        }
    }
}

impl<F: Field> std::ops::Mul for Heisenberg<F> {
    type Output = Heisenberg<F>;
    fn mul(self, o: Heisenberg<F>) -> Heisenberg<F> {
        &self * &o
    }
}

/// `pr([r1,..,r5]) = (r1, r2, r3 - r1 r2)`.
pub fn pr<F: Field>(v: &Word<F>) -> Result<Heisenberg<F>, WordError> {
    let [r1, r2, r3, _, _] = v_coordinates(v)?;
    let z = r3 - r1.clone() * r2.clone();
    Ok(Heisenberg { x: r1, y: r2, z })
}

/// `by * w * by^-1` for `by` a product of torus and Weyl generators and `w` a
/// product of root subgroup generators. Signs of the Weyl action come from
/// the calibrated adjoint model.
pub fn conj<F: Field>(w: &Word<F>, by: &Word<F>, model: &AdjointModel) -> Result<Word<F>, WordError> {
    for g in &by.gens {
        if let Gen::X(..) = g {
            return Err(WordError::BadConjugator(gen_label(g)));
        }
    }
    let mut out = Vec::with_capacity(w.gens.len());
    for g in &w.gens {
        let Gen::X(root, r) = g else {
            return Err(WordError::BadConjugand(gen_label(g)));
        };
        if !root.is_root() {
            return Err(WordError::NotARoot(*root));
        }
        let (mut root, mut r) = (*root, r.clone());
        for c in by.gens.iter().rev() {
            match c {
                Gen::H(t1, t2) => {
                    let (a, b) = torus_exponents(root);
                    let f1 = t1.pow_i(a as i64).ok_or(WordError::ZeroParameter)?;
                    let f2 = t2.pow_i(b as i64).ok_or(WordError::ZeroParameter)?;
                    r = f1 * f2 * r;
                }
                Gen::W(d, t) => {
                    let sign = model.weyl_sign(*d, root).ok_or(WordError::NotARoot(*d))?;
                    root = reflect(root, *d).map_err(|_| WordError::NotARoot(*d))?;
                    let k = pairing(root, *d).map_err(|_| WordError::NotARoot(*d))?;
                    let tk = t.pow_i(k as i64).ok_or(WordError::ZeroParameter)?;
                    r = F::from_i64(sign) * tk * r;
                }
                Gen::X(..) => unreachable!("checked above"),
            }
        }
        out.push(Gen::X(root, r));
    }
    Ok(Word { gens: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{unfolding_representatives, ALPHA, ALPHA_BETA, BETA, THREE_ALPHA_BETA,
        THREE_ALPHA_TWO_BETA, TWO_ALPHA_BETA};
    use crate::scalar::{q, qi};
    use crate::Q;

    fn model() -> &'static AdjointModel {
        AdjointModel::shared().unwrap()
    }

    /// The Weyl element gamma = w_b w_a w_b w_a as a word.
    fn gamma() -> Word<Q> {
        Word::w(BETA) * Word::w(ALPHA) * Word::w(BETA) * Word::w(ALPHA)
    }

    #[test]
    fn swap_alpha_beta() {
        let w = Word::x(BETA, qi(1)) * Word::x(ALPHA, qi(1));
        let n = normal_order(&w).unwrap();
        let expected = Word::from_gens(vec![
            Gen::X(ALPHA, qi(1)),
            Gen::X(BETA, qi(1)),
            Gen::X(ALPHA_BETA, qi(1)),
            Gen::X(TWO_ALPHA_BETA, qi(1)),
            Gen::X(THREE_ALPHA_BETA, qi(-1)),
            Gen::X(THREE_ALPHA_TWO_BETA, qi(-1)),
        ]);
        assert_eq!(n, expected);
        assert_eq!(n.eval(model()).unwrap(), w.eval(model()).unwrap());
    }

    #[test]
    fn merge_and_commuting() {
        let w = Word::x(ALPHA, qi(2)) * Word::x(ALPHA, qi(3));
        assert_eq!(normal_order(&w).unwrap(), Word::x(ALPHA, qi(5)));
        let w = Word::x(THREE_ALPHA_BETA, qi(1)) * Word::x(THREE_ALPHA_TWO_BETA, qi(1));
        assert_eq!(normal_order(&w).unwrap(), w);
        let w = Word::x(ALPHA, qi(2)) * Word::x(ALPHA, qi(-2));
        assert!(normal_order(&w).unwrap().is_identity());
    }

    #[test]
    fn negative_roots_rejected() {
        let w: Word<Q> = Word::x(-ALPHA, qi(1));
        assert!(matches!(normal_order(&w), Err(WordError::UnsupportedGenerator(_))));
    }

    #[test]
    fn v_product() {
        let a = v_element([qi(1), qi(1), qi(0), qi(0), qi(0)]);
        let b = v_element([qi(0), qi(0), qi(1), qi(0), qi(0)]);
        assert_eq!(v_coordinates(&(a * b)).unwrap(), [qi(1), qi(1), qi(1), qi(0), qi(0)]);
        assert!(v_element([qi(0), qi(0), qi(0), qi(0), qi(0)]).is_identity());
    }

    #[test]
    fn pr_values() {
        let v = v_element([qi(1), qi(1), qi(1), qi(0), qi(0)]);
        assert_eq!(pr(&v).unwrap(), Heisenberg::new(qi(1), qi(1), qi(0)));
        let v = v_element([qi(2), qi(3), qi(5), qi(7), qi(11)]);
        let u = v_element([qi(2), qi(3), qi(5), qi(0), qi(0)]);
        assert_eq!(pr(&v).unwrap(), pr(&u).unwrap());
        let bad: Word<Q> = Word::x(BETA, qi(1));
        assert!(matches!(pr(&bad), Err(WordError::NotInV(_))));
    }

    #[test]
    fn conj_examples() {
        let m = model();
        let (t1, t2, r) = (q(2, 1), q(3, 1), q(5, 7));
        // by^-1 x_b(r) by with by = h(t1, t2).
        let by = Word::h(t1.clone(), t2.clone()).inverse().unwrap();
        let c = conj(&Word::x(BETA, r.clone()), &by, m).unwrap();
        assert_eq!(c, Word::x(BETA, r.clone() * t2 / t1));
        let c = conj(&Word::x(ALPHA_BETA, r.clone()), &gamma(), m).unwrap();
        assert_eq!(c, Word::x(ALPHA, r.clone()));
        let c = conj(&Word::x(ALPHA, r.clone()), &Word::identity(), m).unwrap();
        assert_eq!(c, Word::x(ALPHA, r));
    }

    #[test]
    fn conj_agrees_with_matrices() {
        let m = model();
        let by = Word::h(q(2, 3), q(-5, 1)) * Word::w_t(ALPHA_BETA, q(3, 2)) * gamma();
        for root in crate::rootsys::all_roots() {
            let w = Word::x(root, q(7, 5));
            let lhs = conj(&w, &by, m).unwrap().eval(m).unwrap();
            let rhs = by.clone().then(&w).then(&by.inverse().unwrap()).eval(m).unwrap();
            assert_eq!(lhs, rhs, "root {root}");
        }
    }

    #[test]
    fn gamma_is_the_fourth_representative() {
        let g = &unfolding_representatives()[2];
        assert_eq!(g.apply(ALPHA_BETA), ALPHA);
    }
}
