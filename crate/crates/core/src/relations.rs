//! Commutator and torus relations between root subgroups.
//!
//! Convention: `[g1, g2] = g1^-1 g2^-1 g1 g2`.

use crate::rootsys::{pairing, Root, ALPHA, ALPHA_BETA, BETA, POSITIVE_ROOTS, THREE_ALPHA_BETA,
    THREE_ALPHA_TWO_BETA, TWO_ALPHA_BETA};
use crate::scalar::Field;

/// One factor `x_root(coeff * x^x_pow * y^y_pow)` of a commutator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CommutatorTerm {
    pub root: Root,
    pub coeff: i64,
    pub x_pow: u32,
    pub y_pow: u32,
}

/// `[x_first(x), x_second(y)]` as an ordered product of terms.
#[derive(Clone, Copy, Debug)]
pub struct CommutatorRule {
    pub first: Root,
    pub second: Root,
    pub terms: &'static [CommutatorTerm],
}

const fn t(root: Root, coeff: i64, x_pow: u32, y_pow: u32) -> CommutatorTerm {
    CommutatorTerm { root, coeff, x_pow, y_pow }
}

pub const COMMUTATOR_TABLE: [CommutatorRule; 5] = [
    CommutatorRule {
        first: ALPHA,
        second: BETA,
        terms: &[
            t(ALPHA_BETA, -1, 1, 1),
            t(TWO_ALPHA_BETA, -1, 2, 1),
            t(THREE_ALPHA_BETA, 1, 3, 1),
            t(THREE_ALPHA_TWO_BETA, -2, 3, 2),
        ],
    },
    CommutatorRule {
        first: ALPHA,
        second: ALPHA_BETA,
        terms: &[
            t(TWO_ALPHA_BETA, -2, 1, 1),
            t(THREE_ALPHA_BETA, 3, 2, 1),
            t(THREE_ALPHA_TWO_BETA, 3, 1, 2),
        ],
    },
    CommutatorRule { first: ALPHA, second: TWO_ALPHA_BETA, terms: &[t(THREE_ALPHA_BETA, 3, 1, 1)] },
    CommutatorRule { first: BETA, second: THREE_ALPHA_BETA, terms: &[t(THREE_ALPHA_TWO_BETA, 1, 1, 1)] },
    CommutatorRule {
        first: ALPHA_BETA,
        second: TWO_ALPHA_BETA,
        terms: &[t(THREE_ALPHA_TWO_BETA, 3, 1, 1)],
    },
];

/// The rule for an ordered pair of positive roots, if their commutator is
/// nontrivial.
pub fn commutator_rule(first: Root, second: Root) -> Option<&'static CommutatorRule> {
    COMMUTATOR_TABLE.iter().find(|r| r.first == first && r.second == second)
}

/// Pairs of positive roots (in normal order) whose root subgroups commute.
pub fn commuting_pairs() -> Vec<(Root, Root)> {
    let mut out = Vec::new();
    for (i, a) in POSITIVE_ROOTS.iter().enumerate() {
        for b in &POSITIVE_ROOTS[i + 1..] {
            if commutator_rule(*a, *b).is_none() {
                out.push((*a, *b));
            }
        }
    }
    out
}

/// Evaluate the terms of a rule at `(x, y)`.
pub fn commutator_terms<F: Field>(rule: &CommutatorRule, x: &F, y: &F) -> Vec<(Root, F)> {
    rule.terms
        .iter()
        .map(|term| {
            let mut v = F::from_i64(term.coeff);
            for _ in 0..term.x_pow {
                v = v * x.clone();
            }
            for _ in 0..term.y_pow {
                v = v * y.clone();
            }
            (term.root, v)
        })
        .collect()
}

/// Exponents `(a, b)` with `h(t1,t2) x_g(r) h(t1,t2)^-1 = x_g(t1^a t2^b r)`.
pub fn torus_exponents(g: Root) -> (i32, i32) {
    let pa = pairing(g, ALPHA).expect("simple root");
    let pb = pairing(g, BETA).expect("simple root");
    (pa + 2 * pb, pa + pb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_exponents_positive_roots() {
        // h^-1 x_g(r) h = x_g(t1^-a t2^-b r)
        assert_eq!(torus_exponents(ALPHA), (0, 1));
        assert_eq!(torus_exponents(BETA), (1, -1));
        assert_eq!(torus_exponents(ALPHA_BETA), (1, 0));
        assert_eq!(torus_exponents(TWO_ALPHA_BETA), (1, 1));
        assert_eq!(torus_exponents(THREE_ALPHA_BETA), (1, 2));
        assert_eq!(torus_exponents(THREE_ALPHA_TWO_BETA), (2, 1));
    }

    #[test]
    fn ten_commuting_pairs() {
        assert_eq!(commuting_pairs().len(), 10);
    }
}
