//! Laurent polynomials in `H, Z, a, b1, b2` and a sign `eps` with `eps^2 = 1`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;


use super::RatFuncError;
use crate::scalar::Field;

pub const NVARS: usize = 6;
/// Largest absolute exponent allowed in any monomial.
pub const MAX_EXP: i16 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    H = 0,
    Z = 1,
    A = 2,
    B1 = 3,
    B2 = 4,
    Eps = 5,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::H, Var::Z, Var::A, Var::B1, Var::B2, Var::Eps];

    pub fn name(self) -> &'static str {
        ["H", "Z", "a", "b1", "b2", "eps"][self as usize]
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == s)
    }
}

/// Exponent vector; the `eps` slot is always 0 or 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [i16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var, e: i16) -> Self {
        let mut m = [0; NVARS];
        m[v as usize] = e;
        Monomial(m).reduced()
    }

    fn reduced(mut self) -> Self {
        self.0[Var::Eps as usize] = self.0[Var::Eps as usize].rem_euclid(2);
        self
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().map(|&e| e as i32).sum()
    }

    pub fn exp(&self, v: Var) -> i16 {
        self.0[v as usize]
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; NVARS]
    }

    pub fn checked_mul(&self, o: &Monomial) -> Result<Monomial, RatFuncError> {
        let mut out = [0i16; NVARS];
        for i in 0..NVARS {
            let e = self.0[i] as i32 + o.0[i] as i32;
            if e.abs() > MAX_EXP as i32 {
                return Err(RatFuncError::ExponentOverflow { var: Var::ALL[i].name(), exp: e });
            }
            out[i] = e as i16;
        }
        Ok(Monomial(out).reduced())
    }

    pub fn inverse(&self) -> Monomial {
        let mut out = self.0;
        for e in out.iter_mut().take(NVARS - 1) {
            *e = -*e;
        }
        Monomial(out)
    }

    pub fn pow(&self, k: i32) -> Result<Monomial, RatFuncError> {
        let mut out = [0i16; NVARS];
        for i in 0..NVARS {
            let e = self.0[i] as i32 * k;
            if e.abs() > MAX_EXP as i32 && i != Var::Eps as usize {
                return Err(RatFuncError::ExponentOverflow { var: Var::ALL[i].name(), exp: e });
            }
            out[i] = if i == Var::Eps as usize { e.rem_euclid(2) as i16 } else { e as i16 };
        }
        Ok(Monomial(out))
    }
}

/// Graded lexicographic order over `H, Z, a, b1, b2, eps`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for v in Var::ALL {
            match self.exp(v) {
                0 => {}
                1 => parts.push(v.name().to_string()),
                e => parts.push(format!("{}^{}", v.name(), e)),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Sparse Laurent polynomial with terms sorted by ascending monomial and no
/// zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent<C> {
    terms: Vec<(Monomial, C)>,
}

impl<C: Field> Laurent<C> {
    pub fn zero() -> Self {
        Laurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Laurent { terms: vec![(m, c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), C::one())
    }

    /// Build from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut v: Vec<(Monomial, C)> = terms.into_iter().map(|(m, c)| (m.reduced(), c)).collect();
        v.sort_by_key(|a| a.0);
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => {
                    let s = std::mem::replace(lc, C::zero()) + c;
                    *lc = s;
                }
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Laurent { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The constant value if this is a constant polynomial.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// `(monomial, coefficient)` if this is a single term.
    pub fn as_monomial(&self) -> Option<(Monomial, C)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((*m, c.clone())),
            _ => None,
        }
    }

    /// Largest term in the graded lexicographic order.
    pub fn leading(&self) -> Option<&(Monomial, C)> {
        self.terms.last()
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) != 0)
    }

    /// Smallest exponent of each variable over all terms.
    pub fn min_exponents(&self) -> [i16; NVARS] {
        let mut out = [i16::MAX; NVARS];
        for (m, _) in &self.terms {
            for i in 0..NVARS {
                out[i] = out[i].min(m.0[i]);
            }
        }
        if self.terms.is_empty() {
            [0; NVARS]
        } else {
            out
        }
    }

    /// Span `max - min` of the exponent of `v`.
    pub fn degree_span(&self, v: Var) -> i32 {
        let it = self.terms.iter().map(|(m, _)| m.exp(v) as i32);
        match (it.clone().max(), it.min()) {
            (Some(a), Some(b)) => a - b,
            _ => 0,
        }
    }

    pub fn neg(&self) -> Self {
        Laurent { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Laurent { terms: self.terms.iter().map(|(m, c)| (*m, c.clone() * k.clone())).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = a[i].1.clone() + b[j].1.clone();
                    if !s.is_zero() {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Laurent { terms: out }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Product with exponent overflow detection.
    pub fn checked_mul(&self, o: &Self) -> Result<Self, RatFuncError> {
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero());
        }
        if let Some((m, c)) = o.as_monomial() {
            return self.mul_term(&m, &c);
        }
        if let Some((m, c)) = self.as_monomial() {
            return o.mul_term(&m, &c);
        }
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.len() * o.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.checked_mul(mb)?;
                let p = ca.clone() * cb.clone();
                match acc.get_mut(&m) {
                    Some(v) => {
                        let s = std::mem::replace(v, C::zero()) + p;
                        *v = s;
                    }
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|a| a.0);
        Ok(Laurent { terms })
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Result<Self, RatFuncError> {
        if c.is_zero() {
            return Ok(Self::zero());
        }
        let mut terms = Vec::with_capacity(self.len());
        for (mm, cc) in &self.terms {
            terms.push((mm.checked_mul(m)?, cc.clone() * c.clone()));
        }
        if m.exp(Var::Eps) == 0 {
            // Shifting by a monomial without eps preserves the order.
            Ok(Laurent { terms })
        } else {
            Ok(Self::from_terms(terms))
        }
    }

    pub fn checked_pow(&self, k: u32) -> Result<Self, RatFuncError> {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Replace `eps` by `sign`.
    pub fn specialize_eps(&self, sign: i8) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut mm = *m;
            let flip = mm.0[Var::Eps as usize] == 1 && sign < 0;
            mm.0[Var::Eps as usize] = 0;
            (mm, if flip { -c.clone() } else { c.clone() })
        }))
    }

    /// Evaluate at `vals` (indexed by [`Var`]) with a coefficient map;
    /// `None` if a variable with a negative exponent is zero.
    pub fn eval<T: Field>(&self, vals: &[T; NVARS], coef: impl Fn(&C) -> T) -> Option<T> {
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = coef(c);
            for i in 0..NVARS {
                let e = m.0[i];
                if e != 0 {
                    t = t * vals[i].pow_i(e as i64)?;
                }
            }
            acc = acc + t;
        }
        Some(acc)
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Laurent<D> {
        Laurent::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

impl<C: Field + fmt::Display> fmt::Display for Laurent<C> {
    /// Terms in descending graded lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if m.is_one() {
                f.write_str(&body)?;
            } else if body == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{body}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;
    use crate::Q;

    fn v(x: Var) -> Laurent<Q> {
        Laurent::var(x)
    }

    #[test]
    fn eps_squares_to_one() {
        let e = v(Var::Eps);
        assert!(e.checked_mul(&e).unwrap().is_one());
    }

    #[test]
    fn display_order() {
        let p = v(Var::H).checked_mul(&v(Var::H)).unwrap().add(&Laurent::constant(qi(-3))).add(&v(Var::Z));
        assert_eq!(p.to_string(), "H^2 + Z - 3");
        let inv = Laurent::term(Monomial::var(Var::Z, -1), qi(2));
        assert_eq!(inv.to_string(), "2*Z^-1");
    }

    #[test]
    fn overflow_detected() {
        let big = Laurent::<Q>::term(Monomial::var(Var::A, 40), qi(1));
        assert!(matches!(big.checked_mul(&big), Err(RatFuncError::ExponentOverflow { .. })));
    }

    #[test]
    fn specialization() {
        let p = Laurent::one().sub(&v(Var::Eps).checked_mul(&v(Var::A)).unwrap());
        assert_eq!(p.specialize_eps(-1), Laurent::one().add(&v(Var::A)));
        assert_eq!(p.specialize_eps(1), Laurent::one().sub(&v(Var::A)));
    }
}
