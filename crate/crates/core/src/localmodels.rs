//! Local formula layer: the Weil representation on Schwartz functions,
//! unramified Whittaker values and the elementary p-adic integrals.
//!
//! Rational functions use `H = q^(1/2)`, `Z = q^(-3s)`, Satake symbols
//! `a, b1, b2` and the sign `eps = chi(p)`.

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

use crate::ratfunc::{RatFunc, RatFuncError, Var};
use crate::scalar::{qi, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalModelError {
    #[error("t(a) needs an invertible argument")]
    NotInvertible,
    #[error("the Fourier transform is only modeled on the untouched test function")]
    FourierUnsupported,
    #[error(transparent)]
    RatFunc(#[from] RatFuncError),
}

/// Choice of `eps = chi(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum EpsChoice {
    Plus,
    Minus,
    Symbolic,
}

impl EpsChoice {
    pub fn to_ratfunc(self) -> RatFunc {
        match self {
            EpsChoice::Plus => RatFunc::int(1),
            EpsChoice::Minus => RatFunc::int(-1),
            EpsChoice::Symbolic => RatFunc::var(Var::Eps),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            EpsChoice::Plus => "+1",
            EpsChoice::Minus => "-1",
            EpsChoice::Symbolic => "sym",
        }
    }
}

impl std::str::FromStr for EpsChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "+1" | "1" | "plus" => Ok(EpsChoice::Plus),
            "-1" | "minus" => Ok(EpsChoice::Minus),
            "sym" | "symbolic" | "eps" => Ok(EpsChoice::Symbolic),
            _ => Err(format!("expected +1, -1 or sym, got '{s}'")),
        }
    }
}

/// Numeric Satake data: `a` for the metaplectic representation, `b1, b2`
/// for the GL2 representation, and `eps = chi(p)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SatakeParams {
    pub a: Complex64,
    pub b1: Complex64,
    pub b2: Complex64,
    pub eps: i8,
}

impl SatakeParams {
    /// Unit-modulus parameters with independent uniform arguments.
    pub fn tempered(rng: &mut impl Rng, eps: i8) -> Self {
        let mut unit = || Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        SatakeParams { a: unit(), b1: unit(), b2: unit(), eps }
    }

    pub fn is_tempered(&self, tol: f64) -> bool {
        [self.a, self.b1, self.b2].iter().all(|z| (z.norm() - 1.0).abs() <= tol)
            && (self.eps == 1 || self.eps == -1)
    }
}

fn h_pow(k: i32) -> Result<RatFunc, RatFuncError> {
    RatFunc::var(Var::H).checked_pow(k)
}

/// Spherical Whittaker value at `diag(p^(k+l), p^k)` times `q^(-3s(2k+l))`.
pub fn shintani(k: i64, l: i64) -> Result<RatFunc, RatFuncError> {
    if l < 0 {
        return Ok(RatFunc::zero());
    }
    let (b1, b2) = (RatFunc::var(Var::B1), RatFunc::var(Var::B2));
    let mut schur = RatFunc::zero();
    for i in 0..=l {
        schur = schur.checked_add(&b1.checked_pow((l - i) as i32)?.checked_mul(&b2.checked_pow(i as i32)?)?)?;
    }
    central_twist(k)?
        .checked_mul(&RatFunc::var(Var::Z).checked_pow(l as i32)?)?
        .checked_mul(&h_pow(-(l as i32))?)?
        .checked_mul(&schur)
}

/// `q^(-6sm) (b1 b2)^m`, the central character at `diag(p^m, p^m)`.
pub fn central_twist(m: i64) -> Result<RatFunc, RatFuncError> {
    let b = RatFunc::var(Var::B1).checked_mul(&RatFunc::var(Var::B2))?;
    RatFunc::var(Var::Z).checked_pow(2 * m as i32)?.checked_mul(&b.checked_pow(m as i32)?)
}

/// Metaplectic Whittaker value at `t(p^n)` with the factor `mu_psi(p^n)`
/// detached and recorded as `mu_power`.
#[derive(Clone, Debug)]
pub struct BfhValue {
    pub value: RatFunc,
    pub mu_power: i64,
}

pub fn bfh_whittaker(n: i64, eps: &RatFunc) -> Result<BfhValue, RatFuncError> {
    if n < 0 {
        return Err(RatFuncError::NegativeIndex(n));
    }
    let a = RatFunc::var(Var::A);
    let a_inv = a.checked_inv()?;
    let h_inv = h_pow(-1)?;
    let one = RatFunc::one();
    let k = (n + 1) as i32;
    let left = one.checked_sub(&eps.checked_mul(&h_inv)?.checked_mul(&a_inv)?)?.checked_mul(&a.checked_pow(k)?)?;
    let right = one.checked_sub(&eps.checked_mul(&h_inv)?.checked_mul(&a)?)?.checked_mul(&a.checked_pow(-k)?)?;
    let value = h_pow(-2 * n as i32)?
        .checked_mul(&left.checked_sub(&right)?)?
        .checked_div(&a.checked_sub(&a_inv)?)?;
    Ok(BfhValue { value, mu_power: n })
}

/// `int_{o^x} psi(p^k u) du` with `vol(o) = 1`.
pub fn gauss_unit(k: i64) -> RatFunc {
    let q_inv = RatFunc::monomial(qi(1), &[(Var::H, -2)]);
    match k {
        k if k >= 0 => RatFunc::one() - q_inv,
        -1 => -q_inv,
        _ => RatFunc::zero(),
    }
}

/// `int_o psi(p^k r) dr`.
pub fn additive_integral(k: i64) -> RatFunc {
    if k >= 0 {
        RatFunc::one()
    } else {
        RatFunc::zero()
    }
}

/// Generators of `SL2 x| H` acting on Schwartz functions.
#[derive(Clone, Debug, PartialEq)]
pub enum JacobiGen<F> {
    N(F),
    T(F),
    Heis(F, F, F),
    W1,
}

/// The function `x -> |abs_arg|^(1/2) prod mu(mu_args) gamma^gamma_power
/// psi(c0 + c1 x + c2 x^2) phi'(u x + v)`, where `phi'` is `phi` or its
/// Fourier transform.
#[derive(Clone, Debug, PartialEq)]
pub struct WeilState<F> {
    pub abs_arg: F,
    pub mu_args: Vec<F>,
    pub phase: [F; 3],
    pub point: (F, F),
    pub fourier: bool,
    pub gamma_power: u32,
}

impl<F: Field> WeilState<F> {
    /// `phi` itself.
    pub fn test_function() -> Self {
        WeilState {
            abs_arg: F::one(),
            mu_args: Vec::new(),
            phase: [F::zero(), F::zero(), F::zero()],
            point: (F::one(), F::zero()),
            fourier: false,
            gamma_power: 0,
        }
    }

    fn is_untouched(&self) -> bool {
        *self == Self::test_function()
    }

    /// Product of the `mu` arguments. `mu` is only multiplicative up to a
    /// Hilbert symbol, so comparisons use this product.
    pub fn mu_product(&self) -> F {
        self.mu_args.iter().fold(F::one(), |acc, a| acc * a.clone())
    }

    /// Same function up to the Hilbert-symbol cocycle of `mu`.
    pub fn same_action(&self, o: &Self) -> bool {
        self.abs_arg == o.abs_arg
            && self.mu_product() == o.mu_product()
            && self.phase == o.phase
            && self.point == o.point
            && self.fourier == o.fourier
            && self.gamma_power == o.gamma_power
    }
}

pub fn weil_apply<F: Field>(gen: &JacobiGen<F>, state: &WeilState<F>) -> Result<WeilState<F>, LocalModelError> {
    let mut out = state.clone();
    let [c0, c1, c2] = state.phase.clone();
    match gen {
        JacobiGen::N(b) => out.phase[2] = c2 + b.clone(),
        JacobiGen::T(a) => {
            if a.is_zero() {
                return Err(LocalModelError::NotInvertible);
            }
            out.abs_arg = state.abs_arg.clone() * a.clone();
            out.mu_args.push(a.clone());
            out.phase = [c0, c1 * a.clone(), c2 * a.clone() * a.clone()];
            out.point.0 = state.point.0.clone() * a.clone();
        }
        JacobiGen::Heis(r1, r2, r3) => {
            let two = F::from_i64(2);
            // psi(r3 - 2 x r2 - r1 r2) f(x + r1)
            out.phase = [
                c0 + c1.clone() * r1.clone() + c2.clone() * r1.clone() * r1.clone() + r3.clone()
                    - r1.clone() * r2.clone(),
                c1 + two.clone() * c2.clone() * r1.clone() - two * r2.clone(),
                c2,
            ];
            out.point.1 = state.point.1.clone() + state.point.0.clone() * r1.clone();
        }
        JacobiGen::W1 => {
            if !state.is_untouched() {
                return Err(LocalModelError::FourierUnsupported);
            }
            out.fourier = true;
            out.gamma_power += 1;
        }
    }
    Ok(out)
}

/// Act by a word, rightmost generator first.
pub fn weil_apply_word<F: Field>(gens: &[JacobiGen<F>], state: &WeilState<F>) -> Result<WeilState<F>, LocalModelError> {
    gens.iter().rev().try_fold(state.clone(), |s, g| weil_apply(g, &s))
}

/// Can `phi(a + r1)` be nonzero, given the valuations of `a` and `r1`?
/// Equal valuations can cancel, so only unequal ones are decisive.
pub fn phi_can_be_nonzero(val_a: i64, val_r1: i64) -> bool {
    if val_a != val_r1 {
        val_a.min(val_r1) >= 0
    } else {
        true
    }
}

/// Whether `(a, r1)` lies in the integration domain: the metaplectic
/// Whittaker function needs `|a| <= 1`, and then `phi(a + r1)` needs `r1`
/// integral.
pub fn contributes(val_a: i64, val_r1: i64) -> bool {
    val_a >= 0 && phi_can_be_nonzero(val_a, val_r1)
}
