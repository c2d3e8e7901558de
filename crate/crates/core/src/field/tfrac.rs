//! Elements of `F(t)` with the `t`-adic valuation.
//!
//! A nonzero element is stored as `t^shift · num / den` with
//! `num(0) ≠ 0`, `den(0) = 1` and `gcd(num, den) = 1`, which makes the
//! representation unique. Finite Laurent polynomials are the elements with
//! `den = 1`.

use std::fmt;

use crate::poly::Poly;
use crate::scalar::Coefficient;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TFrac<F> {
    shift: i64,
    num: Poly<F>,
    den: Poly<F>,
    one: F,
}

impl<F: Coefficient> TFrac<F> {
    /// `t^shift · num / den`. Panics if `den` is zero.
    pub fn new(shift: i64, num: Poly<F>, den: Poly<F>, one: F) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero(one);
        }
        let kn = num.order().unwrap_or(0);
        let kd = den.order().unwrap_or(0);
        let mut num = num.unshift(kn);
        let mut den = den.unshift(kd);
        let shift = shift + kn as i64 - kd as i64;
        if den.degree() != Some(0) {
            let g = num.gcd(&den);
            if g.degree().is_some_and(|d| d > 0) {
                num = num.div_rem(&g).0;
                den = den.div_rem(&g).0;
            }
        }
        let c = den.coeffs()[0].clone();
        if !c.is_one() {
            let inv = one.clone() / c;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        TFrac { shift, num, den, one }
    }

    pub fn zero(one: F) -> Self {
        TFrac { shift: 0, num: Poly::zero(), den: Poly::constant(one.clone()), one }
    }

    pub fn constant(c: F) -> Self {
        let one = c.one_like();
        Self::new(0, Poly::constant(c), Poly::constant(one.clone()), one)
    }

    /// `Σ c·t^e` over the given `(e, c)` pairs.
    pub fn from_terms(terms: &[(i64, F)], one: F) -> Self {
        let nonzero: Vec<_> = terms.iter().filter(|(_, c)| !c.is_zero()).collect();
        let Some(lo) = nonzero.iter().map(|(e, _)| *e).min() else {
            return Self::zero(one);
        };
        let hi = nonzero.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![one.zero_like(); (hi - lo + 1) as usize];
        for (e, c) in nonzero {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = slot.clone() + c.clone();
        }
        Self::new(lo, Poly::new(coeffs), Poly::constant(one.clone()), one)
    }

    pub fn t_pow(k: i64, one: F) -> Self {
        Self::new(k, Poly::constant(one.clone()), Poly::constant(one.clone()), one)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn one(&self) -> &F {
        &self.one
    }

    /// `t`-adic valuation; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.shift)
    }

    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Nonzero `(exponent, coefficient)` pairs if `self` is a Laurent
    /// polynomial.
    pub fn terms(&self) -> Option<Vec<(i64, F)>> {
        if !self.is_laurent_polynomial() {
            return None;
        }
        Some(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (self.shift + i as i64, c.clone()))
                .collect(),
        )
    }

    /// The first `n` coefficients of the power series `num / den`.
    pub fn unit_series(&self, n: usize) -> Vec<F> {
        let zero = self.one.zero_like();
        let mut s: Vec<F> = Vec::with_capacity(n);
        let d = self.den.coeffs();
        for i in 0..n {
            let mut acc = self.num.coeff(i).cloned().unwrap_or_else(|| zero.clone());
            for j in 1..=i.min(d.len().saturating_sub(1)) {
                acc = acc - d[j].clone() * s[i - j].clone();
            }
            s.push(acc);
        }
        s
    }

    /// Coefficient of `t^e` in the Laurent expansion.
    pub fn coefficient(&self, e: i64) -> F {
        if self.is_zero() || e < self.shift {
            return self.one.zero_like();
        }
        let k = (e - self.shift) as usize;
        self.unit_series(k + 1).pop().unwrap()
    }

    /// The Laurent polynomial made of the expansion terms with exponent `< k`.
    pub fn truncate(&self, k: i64) -> Self {
        if self.is_zero() || k <= self.shift {
            return Self::zero(self.one.clone());
        }
        let n = (k - self.shift) as usize;
        if self.is_laurent_polynomial() && self.num.coeffs().len() <= n {
            return self.clone();
        }
        let coeffs = self.unit_series(n);
        Self::new(self.shift, Poly::new(coeffs), Poly::constant(self.one.clone()), self.one.clone())
    }

    pub fn neg(&self) -> Self {
        TFrac { shift: self.shift, num: -&self.num, den: self.den.clone(), one: self.one.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(other.shift);
        let a = self.num.shift((self.shift - s) as usize);
        let b = other.num.shift((other.shift - s) as usize);
        if self.is_laurent_polynomial() && other.is_laurent_polynomial() {
            return Self::new(s, &a + &b, self.den.clone(), self.one.clone());
        }
        let num = &(&a * &other.den) + &(&b * &self.den);
        Self::new(s, num, &self.den * &other.den, self.one.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.one.clone());
        }
        let num = &self.num * &other.num;
        let den = &self.den * &other.den;
        Self::new(self.shift + other.shift, num, den, self.one.clone())
    }

    /// Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::new(-self.shift, self.den.clone(), self.num.clone(), self.one.clone())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::constant(self.one.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn map_coeffs<G: Coefficient>(&self, f: impl Fn(&F) -> G) -> TFrac<G> {
        let one = f(&self.one);
        TFrac::new(self.shift, self.num.map(&f), self.den.map(&f), one)
    }
}

impl<F: Coefficient + fmt::Display> fmt::Display for TFrac<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let show = |p: &Poly<F>, shift: i64, f: &mut fmt::Formatter<'_>| -> fmt::Result {
            let mut first = true;
            for (i, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                let e = shift + i as i64;
                match e {
                    0 => write!(f, "{c}")?,
                    1 if c.is_one() => write!(f, "t")?,
                    _ if c.is_one() => write!(f, "t^{e}")?,
                    1 => write!(f, "{c}*t")?,
                    _ => write!(f, "{c}*t^{e}")?,
                }
            }
            Ok(())
        };
        if self.is_laurent_polynomial() {
            show(&self.num, self.shift, f)
        } else {
            write!(f, "(")?;
            show(&self.num, self.shift, f)?;
            write!(f, ")/(")?;
            show(&self.den, 0, f)?;
            write!(f, ")")
        }
    }
}

impl<F: Coefficient + fmt::Display> fmt::Debug for TFrac<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn lp(terms: &[(i64, i64)]) -> TFrac<BigRational> {
        let t: Vec<_> = terms.iter().map(|&(e, c)| (e, q(c))).collect();
        TFrac::from_terms(&t, q(1))
    }

    #[test]
    fn representation_is_canonical() {
        // (t + t^2) / (t + t^3) = (1 + t) / (1 + t^2)
        let a = lp(&[(1, 1), (2, 1)]).div(&lp(&[(1, 1), (3, 1)]));
        let b = lp(&[(0, 1), (1, 1)]).div(&lp(&[(0, 1), (2, 1)]));
        assert_eq!(a, b);
        assert_eq!(a.valuation(), Some(0));
        // 2 / (2 + 2t) has den(0) = 1
        let c = lp(&[(0, 2)]).div(&lp(&[(0, 2), (1, 2)]));
        assert_eq!(c.den().coeffs()[0], q(1));
    }

    #[test]
    fn series_expansion_and_truncation() {
        // 1/(1 - t) = 1 + t + t^2 + ...
        let g = lp(&[(0, 1)]).div(&lp(&[(0, 1), (1, -1)]));
        assert_eq!(g.unit_series(4), vec![q(1), q(1), q(1), q(1)]);
        assert_eq!(g.truncate(3), lp(&[(0, 1), (1, 1), (2, 1)]));
        assert_eq!(g.coefficient(7), q(1));
        let x = lp(&[(-2, 1), (0, 5)]);
        assert_eq!(x.valuation(), Some(-2));
        assert_eq!(x.truncate(0), lp(&[(-2, 1)]));
    }

    #[test]
    fn inverse_pair() {
        let t = lp(&[(1, 1)]);
        assert_eq!(t.mul(&t.inv()), lp(&[(0, 1)]));
        assert!(lp(&[(0, 1)]).sub(&lp(&[(0, 1)])).is_zero());
    }
}
