//! Integer helpers for the p-adic backend.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent of `p` in a nonzero integer.
pub fn vp_int(n: &BigInt, p: u32) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// `p`-adic valuation of a nonzero rational.
pub fn vp(x: &BigRational, p: u32) -> i64 {
    vp_int(x.numer(), p) - vp_int(x.denom(), p)
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// The representative in `[0, p^k)` of a `p`-integral rational modulo `p^k`.
pub fn reduce_mod_pk(x: &BigRational, p: u32, k: u32) -> BigInt {
    let m = BigInt::from(p).pow(k);
    let inv = mod_inverse(x.denom(), &m);
    (x.numer() * inv).mod_floor(&m)
}

/// The nonnegative square root of `n` if it is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// The positive square root of a rational if it is a perfect square.
pub fn exact_sqrt_rational(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = exact_sqrt(x.numer())?;
    let d = exact_sqrt(x.denom())?;
    Some(BigRational::new(n, d))
}

pub fn pow_rational(base: u32, e: i64) -> BigRational {
    let b = BigInt::from(base).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(b)
    } else {
        BigRational::new(BigInt::one(), b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn valuations() {
        assert_eq!(vp(&r(9, 2), 3), 2);
        assert_eq!(vp(&r(1, 2), 2), -1);
        assert_eq!(vp(&r(-7, 1), 7), 1);
    }

    #[test]
    fn reduction() {
        // 1/3 mod 8 = 3
        assert_eq!(reduce_mod_pk(&r(1, 3), 2, 3), BigInt::from(3));
        assert_eq!(reduce_mod_pk(&r(-1, 1), 5, 2), BigInt::from(24));
        assert_eq!(exact_sqrt_rational(&r(9, 4)), Some(r(3, 2)));
        assert_eq!(exact_sqrt_rational(&r(2, 1)), None);
    }
}
