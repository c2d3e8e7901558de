//! Small finite fields `GF(p^k)` with `k ≤ 3`.
//!
//! Elements are encoded as integers `Σ d_i p^i` with digits `d_i ∈ [0, p)`,
//! the digits being the coefficients of a polynomial modulo a fixed monic
//! irreducible of degree `k`. For `k = 1` this is plain arithmetic mod `p`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::scalar::Coefficient;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `GF(p^k)`; `modulus` holds the low coefficients of the monic irreducible.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FiniteField {
    p: u32,
    k: u32,
    modulus: [u32; 3],
}

impl FiniteField {
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(FiniteField { p, k: 1, modulus: [0; 3] })
    }

    /// The field with `q` elements, for prime powers `q = p^k` with `k ≤ 3`.
    pub fn with_order(q: u32) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if k == 1 {
            return Self::prime(p);
        }
        if k > 3 {
            return Err(Error::NotPrimePower(q));
        }
        // A polynomial of degree 2 or 3 is irreducible iff it has no root.
        let count = p.pow(k);
        for code in 0..count {
            let mut low = [0u32; 3];
            let mut c = code;
            for slot in low.iter_mut().take(k as usize) {
                *slot = c % p;
                c /= p;
            }
            let has_root = (0..p).any(|x| {
                let mut acc = 1u64; // leading coefficient
                for i in (0..k as usize).rev() {
                    acc = (acc * x as u64 + low[i] as u64) % p as u64;
                }
                acc == 0
            });
            if !has_root {
                return Ok(FiniteField { p, k, modulus: low });
            }
        }
        unreachable!("an irreducible polynomial of degree {k} exists over F_{p}")
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }

    pub fn zero(&self) -> Gf {
        Gf { field: *self, value: 0 }
    }

    pub fn one(&self) -> Gf {
        Gf { field: *self, value: 1 }
    }

    /// The element with the given integer encoding.
    pub fn elem(&self, value: u64) -> Gf {
        assert!(value < self.order(), "encoding {value} out of range for GF({})", self.order());
        Gf { field: *self, value: value as u32 }
    }

    /// The image of an integer under `Z → F_p ⊆ GF(q)`.
    pub fn from_int(&self, n: i64) -> Gf {
        let p = self.p as i64;
        Gf { field: *self, value: n.rem_euclid(p) as u32 }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Gf {
        let r = n.mod_floor(&BigInt::from(self.p));
        Gf { field: *self, value: r.to_u32().expect("residue below p") }
    }

    /// All elements in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Gf> + '_ {
        (0..self.order()).map(move |v| self.elem(v))
    }

    fn digits(&self, v: u32) -> [u32; 3] {
        let mut d = [0u32; 3];
        let mut v = v;
        for slot in d.iter_mut().take(self.k as usize) {
            *slot = v % self.p;
            v /= self.p;
        }
        d
    }

    fn encode(&self, d: &[u32]) -> u32 {
        d.iter().take(self.k as usize).rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = (0..3).map(|i| (da[i] + db[i]) % self.p).collect();
        self.encode(&s)
    }

    fn neg(&self, a: u32) -> u32 {
        if self.k == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let d = self.digits(a);
        let s: Vec<u32> = d.iter().map(|&x| (self.p - x) % self.p).collect();
        self.encode(&s)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.k == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let k = self.k as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = [0u64; 5];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        // x^k = -(modulus low part)
        for deg in (k..2 * k - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for i in 0..k {
                let sub = c * self.modulus[i] as u64 % p;
                prod[deg - k + i] = (prod[deg - k + i] + p - sub) % p;
            }
        }
        let d: Vec<u32> = prod.iter().take(k).map(|&x| x as u32).collect();
        self.encode(&d)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in GF({})", self.order());
        self.pow(a, self.order() - 2)
    }
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// An element of a [`FiniteField`]. Mixing elements of different fields
/// panics.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf {
    field: FiniteField,
    value: u32,
}

impl Gf {
    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn inv(&self) -> Gf {
        Gf { field: self.field, value: self.field.inv(self.value) }
    }

    pub fn pow(&self, e: u64) -> Gf {
        Gf { field: self.field, value: self.field.pow(self.value, e) }
    }

    /// The square roots of `self`, in increasing encoding order.
    pub fn sqrts(&self) -> Vec<Gf> {
        if self.field.k == 1 && self.field.p > 1 << 16 {
            return tonelli_shanks(*self);
        }
        self.field.elements().filter(|x| *x * *x == *self).collect()
    }

    fn check(&self, other: &Gf) {
        assert_eq!(self.field, other.field, "mixed finite fields");
    }
}

fn tonelli_shanks(a: Gf) -> Vec<Gf> {
    let f = a.field;
    let p = f.p as u64;
    if a.value == 0 {
        return vec![a];
    }
    if p == 2 {
        return vec![a];
    }
    if a.pow((p - 1) / 2).value != 1 {
        return vec![];
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).map(|z| f.elem(z)).find(|z| z.pow((p - 1) / 2).value == p as u32 - 1).unwrap();
    let mut m = s;
    let mut c = z.pow(q);
    let mut t = a.pow(q);
    let mut r = a.pow(q.div_ceil(2));
    while t.value != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt.value != 1 {
            tt = tt * tt;
            i += 1;
        }
        let b = c.pow(1 << (m - i - 1));
        m = i;
        c = b * b;
        t = t * c;
        r = r * b;
    }
    let mut roots = vec![r, -r];
    roots.sort_by_key(|x| x.value);
    roots
}

impl PartialOrd for Gf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Gf {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.cmp(&other.value)
    }
}

impl Add for Gf {
    type Output = Gf;

    fn add(self, rhs: Gf) -> Gf {
        self.check(&rhs);
        Gf { field: self.field, value: self.field.add(self.value, rhs.value) }
    }
}

impl Sub for Gf {
    type Output = Gf;

    fn sub(self, rhs: Gf) -> Gf {
        self + (-rhs)
    }
}

impl Neg for Gf {
    type Output = Gf;

    fn neg(self) -> Gf {
        Gf { field: self.field, value: self.field.neg(self.value) }
    }
}

impl Mul for Gf {
    type Output = Gf;

    fn mul(self, rhs: Gf) -> Gf {
        self.check(&rhs);
        Gf { field: self.field, value: self.field.mul(self.value, rhs.value) }
    }
}

impl Div for Gf {
    type Output = Gf;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Gf) -> Gf {
        self * rhs.inv()
    }
}

impl Coefficient for Gf {
    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn zero_like(&self) -> Self {
        self.field.zero()
    }

    fn one_like(&self) -> Self {
        self.field.one()
    }

    fn int_like(&self, n: i64) -> Self {
        self.field.from_int(n)
    }

    fn big_int_like(&self, n: &BigInt) -> Self {
        self.field.from_bigint(n)
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_nonzero_element_is_invertible() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = FiniteField::with_order(q).unwrap();
            assert_eq!(f.order(), q as u64);
            for x in f.elements().skip(1) {
                assert_eq!(x * x.inv(), f.one(), "q={q} x={x}");
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic_of_order_q_minus_1() {
        for q in [4, 8, 9] {
            let f = FiniteField::with_order(q).unwrap();
            let has_generator = f.elements().skip(1).any(|g| (1..q as u64 - 1).all(|e| g.pow(e) != f.one()));
            assert!(has_generator, "GF({q})");
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(FiniteField::with_order(6).is_err());
        assert!(FiniteField::prime(9).is_err());
    }

    #[test]
    fn square_roots() {
        let f = FiniteField::prime(5).unwrap();
        assert_eq!(f.elem(4).sqrts(), vec![f.elem(2), f.elem(3)]);
        assert!(f.elem(2).sqrts().is_empty());
        let big = FiniteField::prime(1_000_003).unwrap();
        let x = big.elem(123_456);
        let r = (x * x).sqrts();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|y| *y * *y == x * x));
    }
}
