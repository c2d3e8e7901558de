//! Computable non-archimedean valued fields.
//!
//! Three backends are provided, all with value group `Z` and uniformizer of
//! valuation 1:
//!
//! * `p-adic`: `Q` with the `p`-adic valuation, residue field `F_p`;
//! * `laurent-q`: `Q(t)` with the `t`-adic valuation, residue field `Q`;
//! * `laurent-fp`: `F_p(t)` with the `t`-adic valuation, residue field `F_p`.

pub mod arith;
pub mod finite;
mod residue;
pub mod tfrac;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::log_value::LogValue;
use crate::poly::Poly;
use crate::scalar::Coefficient;
use crate::{Log, Rational};

pub use finite::{FiniteField, Gf};
pub use residue::{ResidueElem, ResidueField};
pub use tfrac::TFrac;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    #[serde(rename = "p-adic")]
    PAdic,
    #[serde(rename = "laurent-q")]
    LaurentQ,
    #[serde(rename = "laurent-fp")]
    LaurentFp,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct DescriptorJson {
    kind: FieldKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<u32>,
}

/// Which valued field elements live in. JSON form: `{"kind": "p-adic", "p": 2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DescriptorJson", into = "DescriptorJson")]
pub struct FieldDescriptor {
    kind: FieldKind,
    p: u32,
}

impl TryFrom<DescriptorJson> for FieldDescriptor {
    type Error = Error;

    fn try_from(d: DescriptorJson) -> Result<Self> {
        match (d.kind, d.p) {
            (FieldKind::LaurentQ, None) => Ok(Self::laurent_q()),
            (FieldKind::LaurentQ, Some(_)) => Err(Error::Parse("laurent-q takes no prime".into())),
            (_, None) => Err(Error::Parse("missing prime p".into())),
            (FieldKind::PAdic, Some(p)) => Self::padic(p),
            (FieldKind::LaurentFp, Some(p)) => Self::laurent_fp(p),
        }
    }
}

impl From<FieldDescriptor> for DescriptorJson {
    fn from(d: FieldDescriptor) -> Self {
        DescriptorJson { kind: d.kind, p: (d.kind != FieldKind::LaurentQ).then_some(d.p) }
    }
}

impl FieldDescriptor {
    pub fn padic(p: u32) -> Result<Self> {
        FiniteField::prime(p)?;
        Ok(FieldDescriptor { kind: FieldKind::PAdic, p })
    }

    pub fn laurent_q() -> Self {
        FieldDescriptor { kind: FieldKind::LaurentQ, p: 0 }
    }

    pub fn laurent_fp(p: u32) -> Result<Self> {
        FiniteField::prime(p)?;
        Ok(FieldDescriptor { kind: FieldKind::LaurentFp, p })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// The prime `p`, absent for `laurent-q`.
    pub fn prime(&self) -> Option<u32> {
        (self.kind != FieldKind::LaurentQ).then_some(self.p)
    }

    /// Characteristic of the residue field (0 for `Q`).
    pub fn residue_characteristic(&self) -> u32 {
        self.prime().unwrap_or(0)
    }

    /// Characteristic of the field itself.
    pub fn characteristic(&self) -> u32 {
        match self.kind {
            FieldKind::LaurentFp => self.p,
            _ => 0,
        }
    }

    pub fn residue_field(&self) -> ResidueField {
        match self.kind {
            FieldKind::LaurentQ => ResidueField::Q,
            _ => ResidueField::Fp(FiniteField::prime(self.p).expect("validated prime")),
        }
    }

    fn gf(&self) -> FiniteField {
        FiniteField::prime(self.p).expect("validated prime")
    }

    fn wrap(&self, repr: Repr) -> FieldElement {
        FieldElement { desc: *self, repr }
    }

    pub fn zero(&self) -> FieldElement {
        self.int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> FieldElement {
        self.big_int(&BigInt::from(n))
    }

    pub fn big_int(&self, n: &BigInt) -> FieldElement {
        match self.kind {
            FieldKind::PAdic => self.wrap(Repr::Rat(BigRational::from_integer(n.clone()))),
            FieldKind::LaurentQ => self.wrap(Repr::Lq(TFrac::constant(BigRational::from_integer(n.clone())))),
            FieldKind::LaurentFp => {
                let f = self.gf();
                let c = f.from_bigint(n);
                if c.value() == 0 {
                    self.wrap(Repr::Lfp(TFrac::zero(f.one())))
                } else {
                    self.wrap(Repr::Lfp(TFrac::constant(c)))
                }
            }
        }
    }

    /// The image of a rational number. Fails in `laurent-fp` when `p`
    /// divides the denominator.
    pub fn rational(&self, x: &BigRational) -> Result<FieldElement> {
        match self.kind {
            FieldKind::PAdic => Ok(self.wrap(Repr::Rat(x.clone()))),
            FieldKind::LaurentQ => Ok(self.wrap(Repr::Lq(TFrac::constant(x.clone())))),
            FieldKind::LaurentFp => {
                let f = self.gf();
                let d = f.from_bigint(x.denom());
                if d.value() == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(self.wrap(Repr::Lfp(TFrac::constant(f.from_bigint(x.numer()) / d))))
            }
        }
    }

    /// `a / b`; panics on a zero denominator.
    pub fn ratio(&self, a: i64, b: i64) -> FieldElement {
        self.rational(&BigRational::new(a.into(), b.into())).expect("invertible denominator")
    }

    /// `π^k` where `π` is `p` or `t`.
    pub fn uniformizer_pow(&self, k: i64) -> FieldElement {
        match self.kind {
            FieldKind::PAdic => self.wrap(Repr::Rat(arith::pow_rational(self.p, k))),
            FieldKind::LaurentQ => self.wrap(Repr::Lq(TFrac::t_pow(k, BigRational::one()))),
            FieldKind::LaurentFp => self.wrap(Repr::Lfp(TFrac::t_pow(k, self.gf().one()))),
        }
    }

    pub fn uniformizer(&self) -> FieldElement {
        self.uniformizer_pow(1)
    }

    /// `Σ c·t^e` in a Laurent backend; in the p-adic backend `t` is read as `p`.
    pub fn laurent(&self, terms: &[(i64, BigRational)]) -> Result<FieldElement> {
        let mut acc = self.zero();
        for (e, c) in terms {
            acc = acc + self.rational(c)? * self.uniformizer_pow(*e);
        }
        Ok(acc)
    }

    /// The canonical lift of a residue: an integer in `[0, p)` or a constant.
    pub fn lift(&self, r: &ResidueElem) -> FieldElement {
        match r {
            ResidueElem::Fp(g) => self.int(g.value() as i64),
            ResidueElem::Q(q) => self.rational(q).expect("Q residues lift to laurent-q"),
        }
    }

    /// Parses the scalar JSON form (see [`FieldElement::to_json`]).
    pub fn parse_json(&self, v: &Value) -> Result<FieldElement> {
        FieldElement::from_json(*self, v)
    }

    /// Parses a rational string such as `"3/4"` into this field.
    pub fn parse_rational(&self, s: &str) -> Result<FieldElement> {
        self.rational(&parse_rational(s)?)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::PAdic => write!(f, "Q with {}-adic valuation", self.p),
            FieldKind::LaurentQ => write!(f, "Q(t)"),
            FieldKind::LaurentFp => write!(f, "F_{}(t)", self.p),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rat(BigRational),
    Lq(TFrac<BigRational>),
    Lfp(TFrac<Gf>),
}

/// An element of the field described by its [`FieldDescriptor`].
///
/// The operator impls panic when operands come from different fields or on
/// division by zero; the `try_*` methods report those as errors instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    desc: FieldDescriptor,
    repr: Repr,
}

impl FieldElement {
    pub fn descriptor(&self) -> FieldDescriptor {
        self.desc
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(x) => Zero::is_zero(x),
            Repr::Lq(x) => x.is_zero(),
            Repr::Lfp(x) => x.is_zero(),
        }
    }

    /// Integer valuation, `None` for zero.
    pub fn val(&self) -> Option<i64> {
        match &self.repr {
            Repr::Rat(x) => (!Zero::is_zero(x)).then(|| arith::vp(x, self.desc.p)),
            Repr::Lq(x) => x.valuation(),
            Repr::Lfp(x) => x.valuation(),
        }
    }

    /// `v(x)`, with `v(0) = +∞`.
    pub fn valuation(&self) -> Log {
        match self.val() {
            Some(v) => LogValue::int(v),
            None => LogValue::PosInf,
        }
    }

    /// `log|x| = −v(x)`.
    pub fn log_abs(&self) -> Log {
        -self.valuation()
    }

    /// Image in the residue field. Requires `v(x) ≥ 0`.
    pub fn residue(&self) -> Result<ResidueElem> {
        match self.val() {
            Some(v) if v < 0 => return Err(Error::NegativeValuation(v)),
            _ => {}
        }
        Ok(match &self.repr {
            Repr::Rat(x) => {
                let f = self.desc.gf();
                if Zero::is_zero(x) {
                    ResidueElem::Fp(f.zero())
                } else {
                    ResidueElem::Fp(f.from_bigint(&arith::reduce_mod_pk(x, self.desc.p, 1)))
                }
            }
            Repr::Lq(x) => ResidueElem::Q(x.coefficient(0)),
            Repr::Lfp(x) => ResidueElem::Fp(x.coefficient(0)),
        })
    }

    /// `x / π^{v(x)}`; zero stays zero.
    pub fn unit_part(&self) -> FieldElement {
        match self.val() {
            None => self.clone(),
            Some(v) => self.clone() * self.desc.uniformizer_pow(-v),
        }
    }

    /// Keeps the terms of the `π`-adic expansion with exponent `< k`.
    ///
    /// Two elements agree modulo `π^k` iff their truncations are equal, which
    /// is what makes ball centers canonical.
    pub fn truncate(&self, k: i64) -> FieldElement {
        let repr = match &self.repr {
            Repr::Rat(x) => {
                if Zero::is_zero(x) {
                    return self.clone();
                }
                let p = self.desc.p;
                let v = arith::vp(x, p);
                if v >= k {
                    Repr::Rat(BigRational::zero())
                } else {
                    let unit = x * arith::pow_rational(p, -v);
                    let digits = arith::reduce_mod_pk(&unit, p, (k - v) as u32);
                    Repr::Rat(BigRational::from_integer(digits) * arith::pow_rational(p, v))
                }
            }
            Repr::Lq(x) => Repr::Lq(x.truncate(k)),
            Repr::Lfp(x) => Repr::Lfp(x.truncate(k)),
        };
        self.desc.wrap(repr)
    }

    /// The rational value in the p-adic backend, or the constant of a
    /// constant Laurent element.
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Rat(x) => Some(x.clone()),
            Repr::Lq(x) => match x.terms() {
                Some(t) if t.is_empty() => Some(BigRational::zero()),
                Some(t) if t.len() == 1 && t[0].0 == 0 => Some(t[0].1.clone()),
                _ => None,
            },
            Repr::Lfp(_) => None,
        }
    }

    /// Rough storage size in bits, used for iteration budgets.
    pub fn size_bits(&self) -> u64 {
        fn q(x: &BigRational) -> u64 {
            x.numer().bits() + x.denom().bits()
        }
        match &self.repr {
            Repr::Rat(x) => q(x),
            Repr::Lq(x) => x.num().coeffs().iter().chain(x.den().coeffs()).map(|c| q(c) + 1).sum(),
            Repr::Lfp(x) => (x.num().coeffs().len() + x.den().coeffs().len()) as u64 * 8,
        }
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.desc == other.desc {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch)
        }
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a + b),
            (Repr::Lq(a), Repr::Lq(b)) => Repr::Lq(a.add(b)),
            (Repr::Lfp(a), Repr::Lfp(b)) => Repr::Lfp(a.add(b)),
            _ => unreachable!(),
        };
        Ok(self.desc.wrap(repr))
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a * b),
            (Repr::Lq(a), Repr::Lq(b)) => Repr::Lq(a.mul(b)),
            (Repr::Lfp(a), Repr::Lfp(b)) => Repr::Lfp(a.mul(b)),
            _ => unreachable!(),
        };
        Ok(self.desc.wrap(repr))
    }

    pub fn try_inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Rat(a) => Repr::Rat(a.recip()),
            Repr::Lq(a) => Repr::Lq(a.inv()),
            Repr::Lfp(a) => Repr::Lfp(a.inv()),
        };
        Ok(self.desc.wrap(repr))
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        self.try_mul(&other.try_inv()?)
    }

    fn neg_ref(&self) -> FieldElement {
        let repr = match &self.repr {
            Repr::Rat(a) => Repr::Rat(-a),
            Repr::Lq(a) => Repr::Lq(a.neg()),
            Repr::Lfp(a) => Repr::Lfp(a.neg()),
        };
        self.desc.wrap(repr)
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        let repr = match &self.repr {
            Repr::Rat(a) => Repr::Rat(num_traits::pow::Pow::pow(a, BigInt::from(e))),
            Repr::Lq(a) => Repr::Lq(a.pow(e)),
            Repr::Lfp(a) => Repr::Lfp(a.pow(e)),
        };
        self.desc.wrap(repr)
    }

    /// Scalar JSON: `"a/b"` in the p-adic backend; an array of
    /// `[exponent, "a/b"]` pairs for Laurent polynomials; and
    /// `{"num": [...], "den": [...]}` for other elements of `F(t)`.
    pub fn to_json(&self) -> Value {
        fn pairs<F: Coefficient + fmt::Display>(x: &TFrac<F>) -> Value {
            Value::Array(
                x.terms().expect("laurent polynomial").into_iter().map(|(e, c)| json!([e, c.to_string()])).collect(),
            )
        }
        fn tfrac<F: Coefficient + fmt::Display>(x: &TFrac<F>) -> Value {
            if x.is_laurent_polynomial() {
                return pairs(x);
            }
            let one = x.one().clone();
            let num = TFrac::new(x.shift(), x.num().clone(), Poly::constant(one.clone()), one.clone());
            let den = TFrac::new(0, x.den().clone(), Poly::constant(one.clone()), one);
            json!({"num": pairs(&num), "den": pairs(&den)})
        }
        match &self.repr {
            Repr::Rat(x) => Value::String(x.to_string()),
            Repr::Lq(x) => tfrac(x),
            Repr::Lfp(x) => tfrac(x),
        }
    }

    pub fn from_json(desc: FieldDescriptor, v: &Value) -> Result<FieldElement> {
        let bad = || Error::Parse(format!("bad scalar {v}"));
        match v {
            Value::String(s) => desc.parse_rational(s),
            Value::Number(n) => {
                let i = n.as_i64().ok_or_else(bad)?;
                Ok(desc.int(i))
            }
            Value::Array(items) => {
                if desc.kind == FieldKind::PAdic {
                    return Err(bad());
                }
                let mut terms = Vec::with_capacity(items.len());
                for item in items {
                    let pair = item.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
                    let e = pair[0].as_i64().ok_or_else(bad)?;
                    let c = match &pair[1] {
                        Value::String(s) => parse_rational(s)?,
                        Value::Number(n) => BigRational::from_integer(n.as_i64().ok_or_else(bad)?.into()),
                        _ => return Err(bad()),
                    };
                    terms.push((e, c));
                }
                desc.laurent(&terms)
            }
            Value::Object(map) => {
                let num = map.get("num").ok_or_else(bad)?;
                let den = map.get("den").ok_or_else(bad)?;
                if map.len() != 2 {
                    return Err(bad());
                }
                Self::from_json(desc, num)?.try_div(&Self::from_json(desc, den)?)
            }
            _ => Err(bad()),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$try(&rhs).expect(concat!("field ", stringify!($m)))
            }
        }
        impl<'a> $tr<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &'a FieldElement) -> FieldElement {
                self.$try(rhs).expect(concat!("field ", stringify!($m)))
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &'a FieldElement) -> FieldElement {
                self.$try(rhs).expect(concat!("field ", stringify!($m)))
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$try(&rhs).expect(concat!("field ", stringify!($m)))
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Coefficient for FieldElement {
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }

    fn zero_like(&self) -> Self {
        self.desc.zero()
    }

    fn one_like(&self) -> Self {
        self.desc.one()
    }

    fn int_like(&self, n: i64) -> Self {
        self.desc.int(n)
    }

    fn big_int_like(&self, n: &BigInt) -> Self {
        self.desc.big_int(n)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rat(x) => write!(f, "{x}"),
            Repr::Lq(x) => write!(f, "{x}"),
            Repr::Lfp(x) => write!(f, "{x}"),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `m` elements of valuation 0 with pairwise distinct residues.
///
/// Units of a residue field `F_p` have only `p − 1` nonzero residues, so
/// `m ≤ p − 1` is required there.
pub fn distinct_residue_sequence(desc: FieldDescriptor, m: usize) -> Result<Vec<FieldElement>> {
    if let Some(p) = desc.prime() {
        let available = p as usize - 1;
        if m > available {
            return Err(Error::ResidueFieldTooSmall { needed: m, available });
        }
    }
    Ok((1..=m as i64).map(|i| desc.int(i)).collect())
}

/// A square root `a` of `x` with `v(a² − x) ≥ precision`.
///
/// Exact rational squares return their positive root. Otherwise the root
/// whose unit part has the least residue is lifted (the positive one when
/// the residue field is `Q`); for `p = 2` the unit part of `x` must be
/// `1 mod 8` and the root is `1 mod 4`.
pub fn hensel_sqrt(x: &FieldElement, precision: &Log) -> Result<FieldElement> {
    let desc = x.descriptor();
    let v = x.val().ok_or_else(|| Error::InvalidParameters("square root of zero".into()))?;
    if v.is_odd() {
        return Err(Error::OddValuation(v));
    }
    let m = v / 2;
    let target = |prec: &Log| -> Result<i64> {
        match prec {
            LogValue::Finite(q) => Ok(q.ceil().to_integer().to_i64().unwrap_or(i64::MAX)),
            LogValue::NegInf => Ok(v),
            LogValue::PosInf => Err(Error::InvalidPrecision("infinite precision needs an exact square".into())),
        }
    };
    let root = match &x.repr {
        Repr::Rat(q) => {
            if let Some(r) = arith::exact_sqrt_rational(q) {
                return desc.rational(&r);
            }
            let prec = target(precision)?;
            padic_sqrt(q, desc.p, m, v, prec)?
        }
        Repr::Lq(t) => {
            let w0 = t.coefficient(t.shift());
            let r0 =
                arith::exact_sqrt_rational(&w0).ok_or_else(|| Error::NonSquare(format!("leading coefficient {w0}")))?;
            let sq = series_sqrt(t, r0, x, precision, target)?;
            desc.wrap(Repr::Lq(sq))
        }
        Repr::Lfp(t) if desc.p == 2 => desc.wrap(Repr::Lfp(char2_sqrt(t)?)),
        Repr::Lfp(t) => {
            let w0 = t.coefficient(t.shift());
            let r0 = *w0
                .sqrts()
                .first()
                .ok_or_else(|| Error::NonSquare(format!("leading coefficient {w0} mod {}", desc.p)))?;
            let sq = series_sqrt(t, r0, x, precision, target)?;
            desc.wrap(Repr::Lfp(sq))
        }
    };
    debug_assert!({
        let err = (&root * &root) - x.clone();
        match precision {
            LogValue::Finite(_) => err.valuation() >= *precision,
            _ => true,
        }
    });
    Ok(root)
}

fn padic_sqrt(x: &BigRational, p: u32, m: i64, v: i64, prec: i64) -> Result<FieldElement> {
    let desc = FieldDescriptor::padic(p)?;
    let unit = x * arith::pow_rational(p, -v);
    let big_m = if p == 2 { (prec - v).max(3) } else { (prec - v).max(1) } as u32;
    let modulus = BigInt::from(p).pow(big_m);
    let u = arith::reduce_mod_pk(&unit, p, big_m);
    let y = if p == 2 {
        if (&u % 8u32) != BigInt::one() {
            return Err(Error::NonSquare(format!("unit part {unit} is not 1 mod 8")));
        }
        let mut y = BigInt::one();
        for j in 3..big_m {
            let m2 = BigInt::one() << (j + 1);
            if ((&y * &y - &u) % &m2) != BigInt::zero() {
                y += BigInt::one() << (j - 1);
            }
        }
        y
    } else {
        let f = FiniteField::prime(p)?;
        let r = f.from_bigint(&u);
        let r0 = *r.sqrts().first().ok_or_else(|| Error::NonSquare(format!("unit part {unit} mod {p}")))?;
        let mut y = BigInt::from(r0.value());
        while !(&y * &y - &u).mod_floor(&modulus).is_zero() {
            let inv = arith::mod_inverse(&(BigInt::from(2) * &y), &modulus);
            y = (&y - (&y * &y - &u) * inv).mod_floor(&modulus);
        }
        y
    };
    desc.rational(&(BigRational::from_integer(y) * arith::pow_rational(p, m)))
}

fn series_sqrt<F: Coefficient>(
    t: &TFrac<F>,
    r0: F,
    x: &FieldElement,
    precision: &Log,
    target: impl Fn(&Log) -> Result<i64>,
) -> Result<TFrac<F>> {
    let v = t.shift();
    let m = v / 2;
    let one = t.one().clone();
    let build = |n: usize| -> TFrac<F> {
        let w = t.unit_series(n);
        let two_r0 = r0.clone() + r0.clone();
        let mut y: Vec<F> = vec![r0.clone()];
        for k in 1..n {
            let mut acc = w[k].clone();
            for i in 1..k {
                acc = acc - y[i].clone() * y[k - i].clone();
            }
            y.push(acc / two_r0.clone());
        }
        TFrac::new(m, Poly::new(y), Poly::constant(one.clone()), one.clone())
    };
    // Exact square roots of Laurent polynomials are found by a finite expansion.
    if t.is_laurent_polynomial() {
        let deg = t.num().degree().unwrap_or(0);
        if deg.is_multiple_of(2) {
            let cand = build(deg / 2 + 1);
            if cand.mul(&cand) == *t {
                return Ok(cand);
            }
        }
    }
    if matches!(precision, LogValue::PosInf) {
        return Err(Error::InvalidPrecision(format!("{x} is not an exact square")));
    }
    let prec = target(precision)?;
    let n = (prec - v).max(1) as usize;
    Ok(build(n))
}

/// In characteristic 2, `n/d` is a square iff `n·d` has only even exponents,
/// and then `sqrt(n/d) = sqrt(n·d)/d` with coefficients unchanged.
fn char2_sqrt(t: &TFrac<Gf>) -> Result<TFrac<Gf>> {
    let one = *t.one();
    let nd = t.num() * t.den();
    if t.shift() % 2 != 0 || nd.support().any(|e| e % 2 == 1) {
        return Err(Error::NonSquare(format!("{t} in characteristic 2")));
    }
    let half: Vec<Gf> = nd.coeffs().iter().step_by(2).copied().collect();
    let r = TFrac::new(t.shift() / 2, Poly::new(half), Poly::constant(one), one);
    let d = TFrac::new(0, t.den().clone(), Poly::constant(one), one);
    Ok(r.div(&d))
}

/// Rational scalars in their JSON string form.
pub fn rational_to_string(x: &Rational) -> String {
    x.to_string()
}
