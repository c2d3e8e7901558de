//! Dense univariate polynomials over a [`Coefficient`] field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use crate::scalar::Coefficient;

/// Coefficients in ascending degree order. Empty for the zero polynomial,
/// otherwise the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Coefficient> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `c · x^d`.
    pub fn monomial(c: F, d: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![c.zero_like(); d + 1];
        coeffs[d] = c;
        Poly { coeffs }
    }

    /// `a + b·x`.
    pub fn linear(a: F, b: F) -> Self {
        Self::new(vec![a, b])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&F> {
        self.coeffs.get(i)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Indices of the nonzero coefficients.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let z = self.coeffs[0].zero_like();
        let mut coeffs = vec![z; k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Drops the factor `x^k`; coefficients below `k` are discarded.
    pub fn unshift(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Keeps the coefficients of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.int_like(i as i64) * c.clone()).collect())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Self::constant(c.clone());
        }
        acc
    }

    /// Coefficients of `self(a + u)` in `u`, by repeated synthetic division.
    pub fn taylor_shift(&self, a: &F) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = c[j + 1].clone() * a.clone();
                c[j] = c[j].clone() + t;
            }
        }
        Self::new(c)
    }

    /// Same as [`Poly::taylor_shift`] but expands each nonzero monomial by the
    /// binomial theorem, skipping binomials that vanish in the coefficient
    /// field. Much faster for sparse high-degree inputs such as `z^(p^n)`.
    pub fn taylor_shift_sparse(&self, a: &F) -> Self {
        let Some(d) = self.degree() else {
            return Self::zero();
        };
        let zero = self.coeffs[d].zero_like();
        if a.is_zero() {
            return self.clone();
        }
        let mut powers = Vec::with_capacity(d + 1);
        powers.push(a.one_like());
        for j in 1..=d {
            let next = powers[j - 1].clone() * a.clone();
            powers.push(next);
        }
        let mut out = vec![zero.clone(); d + 1];
        for k in self.support().collect::<Vec<_>>() {
            let ck = &self.coeffs[k];
            let mut binom = BigInt::one();
            for i in 0..=k {
                if i > 0 {
                    binom = binom * BigInt::from(k - i + 1) / BigInt::from(i);
                }
                let b = ck.big_int_like(&binom);
                if b.is_zero() {
                    continue;
                }
                out[i] = out[i].clone() + b * ck.clone() * powers[k - i].clone();
            }
        }
        Self::new(out)
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let Some(sd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if sd < dd {
            return (Self::zero(), self.clone());
        }
        let zero = lead.zero_like();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![zero.clone(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = rem[k + dd].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.one_like() / l.clone();
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, e: usize) -> Self {
        let Some(one) = self.coeffs.first().map(|c| c.one_like()) else {
            return if e == 0 { panic!("0^0 polynomial") } else { Self::zero() };
        };
        let mut acc = Self::constant(one);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map<G: Coefficient>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<F: Coefficient> Add for &Poly<F> {
    type Output = Poly<F>;

    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut c = long.coeffs.clone();
        for (i, s) in short.coeffs.iter().enumerate() {
            c[i] = c[i].clone() + s.clone();
        }
        Poly::new(c)
    }
}

impl<F: Coefficient> Neg for &Poly<F> {
    type Output = Poly<F>;

    fn neg(self) -> Poly<F> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<F: Coefficient> Sub for &Poly<F> {
    type Output = Poly<F>;

    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        self + &(-rhs)
    }
}

impl<F: Coefficient> Mul for &Poly<F> {
    type Output = Poly<F>;

    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut c = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(c)
    }
}

impl<F: Coefficient> Add for Poly<F> {
    type Output = Poly<F>;

    fn add(self, rhs: Poly<F>) -> Poly<F> {
        &self + &rhs
    }
}

impl<F: Coefficient> Sub for Poly<F> {
    type Output = Poly<F>;

    fn sub(self, rhs: Poly<F>) -> Poly<F> {
        &self - &rhs
    }
}

impl<F: Coefficient> Mul for Poly<F> {
    type Output = Poly<F>;

    fn mul(self, rhs: Poly<F>) -> Poly<F> {
        &self * &rhs
    }
}

impl<F: Coefficient> Neg for Poly<F> {
    type Output = Poly<F>;

    fn neg(self) -> Poly<F> {
        -&self
    }
}

impl<F: Coefficient + fmt::Display> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})·z")?,
                _ => write!(f, "({c})·z^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: fmt::Debug> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn p(c: &[i64]) -> Poly<BigRational> {
        Poly::new(c.iter().map(|&x| q(x, 1)).collect())
    }

    #[test]
    fn taylor_shift_matches_binomial_expansion() {
        // z^3 at 1 -> u^3 + 3u^2 + 3u + 1
        assert_eq!(p(&[0, 0, 0, 1]).taylor_shift(&q(1, 1)), p(&[1, 3, 3, 1]));
        assert_eq!(p(&[0, 0, 0, 1]).taylor_shift_sparse(&q(1, 1)), p(&[1, 3, 3, 1]));
        let f = Poly::new(vec![q(-1, 4), q(0, 1), q(1, 1)]);
        assert_eq!(f.taylor_shift(&q(1, 2)), p(&[0, 1, 1]));
        let g = Poly::new(vec![q(2, 1), q(0, 1), q(0, 1), q(0, 1), q(-3, 5)]);
        assert_eq!(g.taylor_shift_sparse(&q(-2, 3)), g.taylor_shift(&q(-2, 3)));
    }

    #[test]
    fn div_rem_and_gcd() {
        let a = p(&[-1, 0, 1]); // (z-1)(z+1)
        let b = p(&[-1, 1]);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(qq, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[1, 2, 1])), p(&[1, 1]));
    }

    #[test]
    fn compose_and_pow() {
        let f = p(&[0, 0, 1]);
        let g = p(&[1, 1]);
        assert_eq!(f.compose(&g), p(&[1, 2, 1]));
        assert_eq!(g.pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(p(&[5, 0, 3]).derivative(), p(&[0, 6]));
    }
}
