//! Exact verification of the unramified local Rankin-Selberg computation on
//! the exceptional group G2.

pub mod adjoint;
pub mod audit;
pub mod localmodels;
pub mod oracle;
pub mod ratfunc;
pub mod relations;
pub mod rootsys;
pub mod scalar;
pub mod words;
pub mod zeta;

pub use scalar::Field;

/// Exact rationals, the default coefficient field.
pub type Q = num_rational::BigRational;
/// The adjoint model of a group element over exact rationals.
pub type AdjointMatrix = adjoint::Matrix<Q>;
/// A group word with exact rational coefficients.
pub type GroupWord = words::Word<Q>;
/// A Heisenberg group element over exact rationals.
pub type HeisenbergElement = words::Heisenberg<Q>;
/// Exact rational function in `H, Z, a, b1, b2, eps`.
pub type RatFunc = ratfunc::RatFunc;
/// Laurent polynomial with rational coefficients.
pub type LaurentPoly = ratfunc::LaurentPoly;
/// Exponential sum in an integer variable with rational-function data.
pub type ExpPoly = ratfunc::ExpPoly;
