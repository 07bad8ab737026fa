//! Exponential sums `n -> sum_i c_i r_i^n` with finitely many explicit values
//! below a threshold.

use super::{RatFunc, RatFuncError};

/// `c * r^n0 / (1 - r)`, the formal value of `sum_{m >= n0} c r^m`.
pub fn geom_sum(c: &RatFunc, r: &RatFunc, n0: i64) -> Result<RatFunc, RatFuncError> {
    if !r.one_minus_is_invertible() {
        return Err(RatFuncError::Pole(r.to_string()));
    }
    let one_minus = RatFunc::one().checked_sub(r)?;
    c.checked_mul(&r.checked_pow(n0 as i32)?)?.checked_div(&one_minus)
}

#[derive(Clone, Debug)]
pub struct ExpPoly {
    generic: Vec<(RatFunc, RatFunc)>,
    threshold: usize,
    overrides: Vec<RatFunc>,
}

impl ExpPoly {
    /// `generic` is valid for `n >= overrides.len()`.
    pub fn new(generic: Vec<(RatFunc, RatFunc)>, overrides: Vec<RatFunc>) -> Result<Self, RatFuncError> {
        let mut out = ExpPoly { generic: Vec::new(), threshold: overrides.len(), overrides };
        for (c, r) in generic {
            out.push_term(c, r)?;
        }
        Ok(out)
    }

    pub fn zero() -> Self {
        ExpPoly { generic: Vec::new(), threshold: 0, overrides: Vec::new() }
    }

    /// `n -> c r^n`.
    pub fn geometric(c: RatFunc, r: RatFunc) -> Self {
        let mut out = Self::zero();
        if !c.is_zero() {
            out.generic.push((c, r));
        }
        out
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::geometric(c, RatFunc::one())
    }

    fn push_term(&mut self, c: RatFunc, r: RatFunc) -> Result<(), RatFuncError> {
        if c.is_zero() {
            return Ok(());
        }
        for (cc, rr) in self.generic.iter_mut() {
            if rr.equals(&r)? {
                *cc = cc.checked_add(&c)?;
                self.generic.retain(|(c, _)| !c.is_zero());
                return Ok(());
            }
        }
        self.generic.push((c, r));
        Ok(())
    }

    pub fn terms(&self) -> &[(RatFunc, RatFunc)] {
        &self.generic
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn overrides(&self) -> &[RatFunc] {
        &self.overrides
    }

    fn eval_generic(&self, n: i64) -> Result<RatFunc, RatFuncError> {
        let mut acc = RatFunc::zero();
        for (c, r) in &self.generic {
            acc = acc.checked_add(&c.checked_mul(&r.checked_pow(n as i32)?)?)?;
        }
        Ok(acc)
    }

    pub fn eval(&self, n: i64) -> Result<RatFunc, RatFuncError> {
        if n < 0 {
            return Err(RatFuncError::NegativeIndex(n));
        }
        match self.overrides.get(n as usize) {
            Some(v) => Ok(v.clone()),
            None => self.eval_generic(n),
        }
    }

    /// Replace the values below `values.len()`.
    pub fn with_overrides(&self, values: Vec<RatFunc>) -> Result<Self, RatFuncError> {
        let mut overrides = values;
        for n in overrides.len()..self.threshold {
            overrides.push(self.eval(n as i64)?);
        }
        Ok(ExpPoly { generic: self.generic.clone(), threshold: overrides.len(), overrides })
    }

    fn raise_threshold(&self, t: usize) -> Result<Vec<RatFunc>, RatFuncError> {
        (0..t.max(self.threshold)).map(|n| self.eval(n as i64)).collect()
    }

    pub fn add(&self, o: &Self) -> Result<Self, RatFuncError> {
        let t = self.threshold.max(o.threshold);
        let a = self.raise_threshold(t)?;
        let b = o.raise_threshold(t)?;
        let overrides = a.iter().zip(&b).map(|(x, y)| x.checked_add(y)).collect::<Result<_, _>>()?;
        let mut out = ExpPoly { generic: self.generic.clone(), threshold: t, overrides };
        for (c, r) in &o.generic {
            out.push_term(c.clone(), r.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: &RatFunc) -> Result<Self, RatFuncError> {
        let generic = self
            .generic
            .iter()
            .map(|(c, r)| Ok((c.checked_mul(k)?, r.clone())))
            .collect::<Result<Vec<_>, RatFuncError>>()?;
        let overrides = self.overrides.iter().map(|v| v.checked_mul(k)).collect::<Result<_, _>>()?;
        ExpPoly::new(generic, overrides)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, RatFuncError> {
        self.add(&o.scale(&RatFunc::int(-1))?)
    }

    /// Pointwise product.
    pub fn mul(&self, o: &Self) -> Result<Self, RatFuncError> {
        let t = self.threshold.max(o.threshold);
        let a = self.raise_threshold(t)?;
        let b = o.raise_threshold(t)?;
        let overrides = a.iter().zip(&b).map(|(x, y)| x.checked_mul(y)).collect::<Result<_, _>>()?;
        let mut out = ExpPoly { generic: Vec::new(), threshold: t, overrides };
        for (c1, r1) in &self.generic {
            for (c2, r2) in &o.generic {
                out.push_term(c1.checked_mul(c2)?, r1.checked_mul(r2)?)?;
            }
        }
        Ok(out)
    }

    /// `n -> t^n f(n)`.
    pub fn twist(&self, t: &RatFunc) -> Result<Self, RatFuncError> {
        let generic = self
            .generic
            .iter()
            .map(|(c, r)| Ok((c.clone(), r.checked_mul(t)?)))
            .collect::<Result<Vec<_>, RatFuncError>>()?;
        let overrides = self
            .overrides
            .iter()
            .enumerate()
            .map(|(n, v)| v.checked_mul(&t.checked_pow(n as i32)?))
            .collect::<Result<_, _>>()?;
        ExpPoly::new(generic, overrides)
    }

    /// `n -> f(n - k)` for `n >= k` and `0` below.
    pub fn shift(&self, k: usize) -> Result<Self, RatFuncError> {
        let generic = self
            .generic
            .iter()
            .map(|(c, r)| Ok((c.checked_mul(&r.checked_pow(-(k as i32))?)?, r.clone())))
            .collect::<Result<Vec<_>, RatFuncError>>()?;
        let mut overrides = vec![RatFunc::zero(); k];
        overrides.extend(self.overrides.iter().cloned());
        ExpPoly::new(generic, overrides)
    }

    /// `sum_{n >= 0} f(n) t^n`.
    pub fn weighted_sum(&self, t: &RatFunc) -> Result<RatFunc, RatFuncError> {
        let mut acc = RatFunc::zero();
        for (n, v) in self.overrides.iter().enumerate() {
            acc = acc.checked_add(&v.checked_mul(&t.checked_pow(n as i32)?)?)?;
        }
        for (c, r) in &self.generic {
            acc = acc.checked_add(&geom_sum(c, &r.checked_mul(t)?, self.threshold as i64)?)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::Var;

    fn v(x: Var) -> RatFunc {
        RatFunc::var(x)
    }

    #[test]
    fn geometric_series() {
        let z = v(Var::Z);
        let g = geom_sum(&RatFunc::one(), &z, 1).unwrap();
        assert_eq!(g, &z / &(RatFunc::one() - z.clone()));
        assert!(matches!(geom_sum(&RatFunc::one(), &RatFunc::one(), 0), Err(RatFuncError::Pole(_))));
    }

    #[test]
    fn shift_identity() {
        let (c, r) = (v(Var::A) + RatFunc::int(2), v(Var::B1) * v(Var::Z));
        for n0 in 0..4 {
            let lhs = geom_sum(&c, &r, n0).unwrap() - &c * &r.checked_pow(n0 as i32).unwrap();
            let rhs = geom_sum(&(&c * &r), &r, n0).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn constant_and_weighted_sums() {
        let one = ExpPoly::constant(RatFunc::one());
        assert_eq!(one.eval(5).unwrap(), RatFunc::one());
        let z = v(Var::Z);
        assert_eq!(one.weighted_sum(&z).unwrap(), RatFunc::one() / (RatFunc::one() - z.clone()));
        let r = v(Var::A);
        let f = ExpPoly::geometric(RatFunc::one(), r.clone()).with_overrides(vec![RatFunc::zero()]).unwrap();
        let rt = &r * &z;
        assert_eq!(f.weighted_sum(&z).unwrap(), &rt / &(RatFunc::one() - rt.clone()));
        assert!(matches!(f.eval(-1), Err(RatFuncError::NegativeIndex(-1))));
    }

    #[test]
    fn merging_and_products() {
        let a = v(Var::A);
        let f = ExpPoly::new(
            vec![(RatFunc::one(), a.clone()), (RatFunc::int(2), a.clone()), (RatFunc::one(), v(Var::B1))],
            vec![],
        )
        .unwrap();
        assert_eq!(f.terms().len(), 2);
        let g = f.mul(&f).unwrap();
        for n in 0..5 {
            let fv = f.eval(n).unwrap();
            assert_eq!(g.eval(n).unwrap(), &fv * &fv);
        }
        let s = f.shift(2).unwrap();
        assert!(s.eval(1).unwrap().is_zero());
        assert_eq!(s.eval(4).unwrap(), f.eval(2).unwrap());
        let tw = f.twist(&RatFunc::int(3)).unwrap();
        assert_eq!(tw.eval(2).unwrap(), &f.eval(2).unwrap() * &RatFunc::int(9));
    }
}
