//! Rational functions over Q with a factored denominator.
//!
//! The denominator is kept as a multiset of normalized factors. Monomials and
//! scalars are units of the Laurent ring and are pushed into the numerator.
//! No gcd is ever computed: equality is decided by cross-multiplying over the
//! least common multiple of the two factor multisets.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::{Laurent, Monomial, Var, NVARS};
use super::RatFuncError;
use crate::scalar::Field;
use crate::Q;

pub type LaurentPoly = Laurent<Q>;

/// Split `p` as `c * m * f` with `f` normalized: all exponents nonnegative
/// with minimum zero, no common `eps`, leading coefficient one, and the
/// smaller of the two `eps`-associates. Returns `None` for `f` when `p` is a
/// unit.
fn normalize(p: &LaurentPoly) -> Result<(Q, Monomial, Option<LaurentPoly>), RatFuncError> {
    let (c, m, f) = normalize_once(p)?;
    let Some(f) = f else { return Ok((c, m, None)) };
    if !f.involves(Var::Eps) {
        return Ok((c, m, Some(f)));
    }
    let eps = Monomial::var(Var::Eps, 1);
    let (c2, m2, g) = normalize_once(&f.mul_term(&eps, &Q::one())?)?;
    let g = g.expect("associate of a non-unit is a non-unit");
    if g.to_string() < f.to_string() {
        // f = eps * c2 * m2 * g
        let unit = m.checked_mul(&m2)?.checked_mul(&eps)?;
        Ok((c * c2, unit, Some(g)))
    } else {
        Ok((c, m, Some(f)))
    }
}

fn normalize_once(p: &LaurentPoly) -> Result<(Q, Monomial, Option<LaurentPoly>), RatFuncError> {
    if p.is_zero() {
        return Err(RatFuncError::DivisionByZero);
    }
    if let Some((m, c)) = p.as_monomial() {
        return Ok((c, m, None));
    }
    let mut shift = p.min_exponents();
    // eps content: factor out eps only if every term carries it.
    shift[Var::Eps as usize] = if p.terms().iter().all(|(m, _)| m.exp(Var::Eps) == 1) { 1 } else { 0 };
    let unit = Monomial(shift);
    let q = p.mul_term(&unit.inverse(), &Q::one())?;
    let lead = q.leading().expect("nonzero").1.clone();
    let f = q.scale(&(Q::one() / lead.clone()));
    Ok((lead, unit, Some(f)))
}

/// Nonzero at both specializations of `eps`, so not a zero divisor.
fn is_unit_safe(p: &LaurentPoly) -> bool {
    if !p.involves(Var::Eps) {
        return !p.is_zero();
    }
    !p.specialize_eps(1).is_zero() && !p.specialize_eps(-1).is_zero()
}

#[derive(Clone, Debug)]
pub struct RatFunc {
    num: LaurentPoly,
    /// Sorted by canonical text, distinct.
    den: Vec<(LaurentPoly, u32)>,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc { num: p, den: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(crate::scalar::qi(n))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(LaurentPoly::var(v))
    }

    /// `c * prod v_i^{e_i}`.
    pub fn monomial(c: Q, exps: &[(Var, i32)]) -> Self {
        let mut m = Monomial::ONE;
        for (v, e) in exps {
            m = m.checked_mul(&Monomial::var(*v, *e as i16)).expect("small exponent");
        }
        Self::from_poly(LaurentPoly::term(m, c))
    }

    /// Quotient of two polynomials.
    pub fn from_parts(num: LaurentPoly, den: LaurentPoly) -> Result<Self, RatFuncError> {
        Self::from_poly(num).checked_div(&Self::from_poly(den))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den_factors(&self) -> &[(LaurentPoly, u32)] {
        &self.den
    }

    /// Expanded denominator.
    pub fn denominator(&self) -> Result<LaurentPoly, RatFuncError> {
        let mut d = LaurentPoly::one();
        for (f, k) in &self.den {
            d = d.checked_mul(&f.checked_pow(*k)?)?;
        }
        Ok(d)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    fn with_den(num: LaurentPoly, mut den: Vec<(LaurentPoly, u32)>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        den.retain(|(_, k)| *k > 0);
        den.sort_by_cached_key(|(f, _)| f.to_string());
        RatFunc { num, den }
    }

    /// Multiply a numerator by the factors of `all` missing from `have`.
    fn lift(num: &LaurentPoly, have: &[(LaurentPoly, u32)], all: &[(LaurentPoly, u32)]) -> Result<LaurentPoly, RatFuncError> {
        let mut out = num.clone();
        for (f, k) in all {
            let present = have.iter().find(|(g, _)| g == f).map_or(0, |(_, j)| *j);
            if *k > present {
                out = out.checked_mul(&f.checked_pow(k - present)?)?;
            }
        }
        Ok(out)
    }

    fn lcm(a: &[(LaurentPoly, u32)], b: &[(LaurentPoly, u32)]) -> Vec<(LaurentPoly, u32)> {
        let mut out: Vec<(LaurentPoly, u32)> = a.to_vec();
        for (f, k) in b {
            match out.iter_mut().find(|(g, _)| g == f) {
                Some((_, j)) => *j = (*j).max(*k),
                None => out.push((f.clone(), *k)),
            }
        }
        out
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, RatFuncError> {
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        let l = Self::lcm(&self.den, &o.den);
        let a = Self::lift(&self.num, &self.den, &l)?;
        let b = Self::lift(&o.num, &o.den, &l)?;
        Ok(Self::with_den(a.add(&b), l))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, RatFuncError> {
        self.checked_add(&o.neg_ref())
    }

    fn neg_ref(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, RatFuncError> {
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero());
        }
        let num = self.num.checked_mul(&o.num)?;
        let mut den = self.den.clone();
        for (f, k) in &o.den {
            match den.iter_mut().find(|(g, _)| g == f) {
                Some((_, j)) => *j += k,
                None => den.push((f.clone(), *k)),
            }
        }
        // A factor equal to the whole numerator cancels outright.
        let mut out = Self::with_den(num, den);
        out.cancel_trivial();
        Ok(out)
    }

    /// Remove denominator factors whose normalized form equals the whole
    /// normalized numerator (cheap partial simplification).
    fn cancel_trivial(&mut self) {
        if self.den.is_empty() {
            return;
        }
        if let Ok((c, m, Some(f))) = normalize(&self.num) {
            if let Some(pos) = self.den.iter().position(|(g, _)| *g == f) {
                self.den[pos].1 -= 1;
                self.den.retain(|(_, k)| *k > 0);
                self.num = LaurentPoly::term(m, c);
            }
        }
    }

    pub fn checked_inv(&self) -> Result<Self, RatFuncError> {
        if self.num.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        if !is_unit_safe(&self.num) {
            return Err(RatFuncError::ZeroDivisor(self.num.to_string()));
        }
        let (c, m, f) = normalize(&self.num)?;
        // 1/(c m f) = (1/c) m^-1 * den / f
        let mut num = self.denominator()?;
        num = num.mul_term(&m.inverse(), &(Q::one() / c))?;
        let den = match f {
            Some(f) => vec![(f, 1)],
            None => Vec::new(),
        };
        Ok(Self::with_den(num, den))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, RatFuncError> {
        self.checked_mul(&o.checked_inv()?)
    }

    pub fn checked_pow(&self, k: i32) -> Result<Self, RatFuncError> {
        let base = if k < 0 { self.checked_inv()? } else { self.clone() };
        let n = k.unsigned_abs();
        if n == 0 {
            return Ok(Self::one());
        }
        let num = base.num.checked_pow(n)?;
        let den = base.den.iter().map(|(f, j)| (f.clone(), j * n)).collect();
        Ok(Self::with_den(num, den))
    }

    /// Cross-multiplied difference `self.num * L/self.den - o.num * L/o.den`,
    /// which vanishes exactly when the two functions are equal.
    pub fn residue(&self, o: &Self) -> Result<LaurentPoly, RatFuncError> {
        let l = Self::lcm(&self.den, &o.den);
        let a = Self::lift(&self.num, &self.den, &l)?;
        let b = Self::lift(&o.num, &o.den, &l)?;
        Ok(a.sub(&b))
    }

    pub fn equals(&self, o: &Self) -> Result<bool, RatFuncError> {
        Ok(self.residue(o)?.is_zero())
    }

    /// Replace `eps` by `sign`.
    pub fn specialize_eps(&self, sign: i8) -> Result<Self, RatFuncError> {
        let mut out = Self::from_poly(self.num.specialize_eps(sign));
        for (f, k) in &self.den {
            let g = Self::from_poly(f.specialize_eps(sign)).checked_pow(-(*k as i32))?;
            out = out.checked_mul(&g)?;
        }
        Ok(out)
    }

    /// Is `1 - self` safe to invert?
    pub fn one_minus_is_invertible(&self) -> bool {
        let d = Self::one().checked_sub(self);
        matches!(d, Ok(d) if !d.is_zero() && is_unit_safe(&d.num))
    }

    /// Evaluate at numeric values of `H, Z, a, b1, b2, eps`. Fails naming the
    /// first denominator factor whose value is below `guard` in absolute
    /// value.
    pub fn eval<T: Field>(
        &self,
        vals: &[T; NVARS],
        coef: impl Fn(&Q) -> T + Copy,
        abs: impl Fn(&T) -> f64,
        guard: f64,
    ) -> Result<T, RatFuncError> {
        let num = self.num.eval(vals, coef).ok_or(RatFuncError::ZeroVariable)?;
        let mut den = T::one();
        for (f, k) in &self.den {
            let v = f.eval(vals, coef).ok_or(RatFuncError::ZeroVariable)?;
            if abs(&v) < guard {
                return Err(RatFuncError::VanishingFactor(f.to_string()));
            }
            den = den * v.pow_i(*k as i64).ok_or(RatFuncError::ZeroVariable)?;
        }
        Ok(num / den)
    }

    /// Exact evaluation at rational values.
    pub fn eval_q(&self, vals: &[Q; NVARS]) -> Result<Q, RatFuncError> {
        self.eval(vals, |c| c.clone(), |v| if v.is_zero() { 0.0 } else { 1.0 }, 0.5)
    }

    /// Size measure: numerator terms plus expanded factor terms.
    pub fn size(&self) -> usize {
        self.num.len() + self.den.iter().map(|(f, _)| f.len()).sum::<usize>()
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).expect("exponent overflow while comparing")
    }
}

impl fmt::Display for RatFunc {
    /// Canonical text: `num` or `(num) / (f1^k1*f2*...)` with factors in a
    /// fixed order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let parts: Vec<String> = self
            .den
            .iter()
            .map(|(p, k)| if *k == 1 { format!("({p})") } else { format!("({p})^{k}") })
            .collect();
        if parts.len() == 1 {
            write!(f, "({}) / {}", self.num, parts[0])
        } else {
            write!(f, "({}) / ({})", self.num, parts.join("*"))
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                self.$checked(&o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr for &RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &RatFunc) -> RatFunc {
                self.$checked(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl Field for RatFunc {
    fn from_i64(n: i64) -> Self {
        RatFunc::int(n)
    }

    fn try_inv(&self) -> Option<Self> {
        self.checked_inv().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    fn v(x: Var) -> RatFunc {
        RatFunc::var(x)
    }

    #[test]
    fn difference_of_squares() {
        let (b1, b2) = (v(Var::B1), v(Var::B2));
        let f = (&(&b1 * &b1) - &(&b2 * &b2)) / (&b1 - &b2);
        assert_eq!(f, &b1 + &b2);
    }

    #[test]
    fn inverse_cancels() {
        let y = RatFunc::monomial(qi(1), &[(Var::Z, 2), (Var::H, 4), (Var::B1, 1), (Var::B2, 1)]);
        let one_minus = RatFunc::one() - y;
        let prod = &one_minus * &one_minus.checked_inv().unwrap();
        assert_eq!(prod, RatFunc::one());
        assert!(prod.is_polynomial());
    }

    #[test]
    fn zero_divisor_rejected() {
        let f = RatFunc::one() + v(Var::Eps);
        assert!(matches!(f.checked_inv(), Err(RatFuncError::ZeroDivisor(_))));
        assert!(matches!(RatFunc::zero().checked_inv(), Err(RatFuncError::DivisionByZero)));
    }

    #[test]
    fn eps_associates_share_a_factor() {
        let a = v(Var::A);
        let e = v(Var::Eps);
        let f1 = (RatFunc::one() - &e * &a).checked_inv().unwrap();
        let f2 = (&e - &a).checked_inv().unwrap();
        assert_eq!(f1.den_factors()[0].0, f2.den_factors()[0].0);
        assert_eq!(&f1 * &e, f2);
    }

    #[test]
    fn monomial_denominators_stay_polynomial() {
        let f = RatFunc::one() / (v(Var::H) * v(Var::Z));
        assert!(f.is_polynomial());
        assert_eq!(f.to_string(), "H^-1*Z^-1");
    }

    #[test]
    fn display_with_factors() {
        let f = RatFunc::one() / (RatFunc::one() - v(Var::Z));
        assert_eq!(f.to_string(), "(-1) / (Z - 1)");
        let g = RatFunc::constant(q(1, 2)) * v(Var::B1);
        assert_eq!(g.to_string(), "1/2*b1");
    }

    #[test]
    fn exact_evaluation() {
        let f = (v(Var::A) + RatFunc::one()) / (v(Var::A) - RatFunc::one());
        let mut vals: [Q; NVARS] = std::array::from_fn(|_| qi(1));
        vals[Var::A as usize] = qi(3);
        assert_eq!(f.eval_q(&vals).unwrap(), qi(2));
        vals[Var::A as usize] = qi(1);
        assert!(matches!(f.eval_q(&vals), Err(RatFuncError::VanishingFactor(_))));
    }
}
