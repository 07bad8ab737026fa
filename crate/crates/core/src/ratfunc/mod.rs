//! Exact rational functions in `H = q^(1/2)`, `Z = q^(-3s)`, the Satake
//! symbols `a, b1, b2` and a sign `eps`, together with exponential sums in
//! an integer variable `n`.

pub mod exppoly;
pub mod laurent;
#[allow(clippy::module_inception)]
pub mod ratfunc;
pub mod text;

use thiserror::Error;

pub use exppoly::{geom_sum, ExpPoly};
pub use laurent::{Laurent, Monomial, Var, MAX_EXP, NVARS};
pub use ratfunc::{LaurentPoly, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatFuncError {
    #[error("exponent {exp} of {var} exceeds the supported bound")]
    ExponentOverflow { var: &'static str, exp: i32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is a zero divisor (vanishes at one sign of eps)")]
    ZeroDivisor(String),
    #[error("pole: geometric ratio {0} equals one")]
    Pole(String),
    #[error("negative argument {0} for an exponential sum")]
    NegativeIndex(i64),
    #[error("denominator factor {0} vanishes at the evaluation point")]
    VanishingFactor(String),
    #[error("a variable raised to a negative power is zero")]
    ZeroVariable,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
