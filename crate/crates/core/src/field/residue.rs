use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::finite::{FiniteField, Gf};
use crate::scalar::Coefficient;

/// The residue field of a backend: `F_q` or `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResidueField {
    Fp(FiniteField),
    Q,
}

impl ResidueField {
    pub fn characteristic(&self) -> u32 {
        match self {
            ResidueField::Fp(f) => f.characteristic(),
            ResidueField::Q => 0,
        }
    }

    /// Number of elements, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        match self {
            ResidueField::Fp(f) => Some(f.order()),
            ResidueField::Q => None,
        }
    }

    pub fn zero(&self) -> ResidueElem {
        self.int(0)
    }

    pub fn one(&self) -> ResidueElem {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> ResidueElem {
        match self {
            ResidueField::Fp(f) => ResidueElem::Fp(f.from_int(n)),
            ResidueField::Q => ResidueElem::Q(BigRational::from_integer(n.into())),
        }
    }

    /// The first `n` elements in a fixed order: encodings `0, 1, …` for
    /// finite fields and `0, 1, 2, …` for `Q`.
    pub fn first_elements(&self, n: usize) -> Vec<ResidueElem> {
        match self {
            ResidueField::Fp(f) => f.elements().take(n).map(ResidueElem::Fp).collect(),
            ResidueField::Q => (0..n as i64).map(|i| self.int(i)).collect(),
        }
    }

    /// All elements of a finite residue field.
    pub fn elements(&self) -> Option<Vec<ResidueElem>> {
        match self {
            ResidueField::Fp(f) => Some(f.elements().map(ResidueElem::Fp).collect()),
            ResidueField::Q => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ResidueElem {
    Fp(Gf),
    Q(BigRational),
}

impl ResidueElem {
    pub fn field(&self) -> ResidueField {
        match self {
            ResidueElem::Fp(g) => ResidueField::Fp(g.field()),
            ResidueElem::Q(_) => ResidueField::Q,
        }
    }

    pub fn as_gf(&self) -> Option<Gf> {
        match self {
            ResidueElem::Fp(g) => Some(*g),
            ResidueElem::Q(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ResidueElem::Q(q) => Some(q),
            ResidueElem::Fp(_) => None,
        }
    }

    pub fn pow(&self, e: u64) -> ResidueElem {
        match self {
            ResidueElem::Fp(g) => ResidueElem::Fp(g.pow(e)),
            ResidueElem::Q(q) => ResidueElem::Q(num_traits::pow::Pow::pow(q, BigInt::from(e))),
        }
    }

    /// Parses `"3"` (finite fields, by encoding) or `"a/b"` (for `Q`).
    pub fn parse(field: ResidueField, s: &str) -> Option<ResidueElem> {
        match field {
            ResidueField::Fp(f) => {
                let v: u64 = s.trim().parse().ok()?;
                (v < f.order()).then(|| ResidueElem::Fp(f.elem(v)))
            }
            ResidueField::Q => super::parse_rational(s).ok().map(ResidueElem::Q),
        }
    }
}

impl PartialOrd for ResidueElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Encoding order on `F_q`, numeric order on `Q`.
impl Ord for ResidueElem {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ResidueElem::Fp(a), ResidueElem::Fp(b)) => a.cmp(b),
            (ResidueElem::Q(a), ResidueElem::Q(b)) => a.cmp(b),
            (ResidueElem::Fp(_), ResidueElem::Q(_)) => Ordering::Less,
            (ResidueElem::Q(_), ResidueElem::Fp(_)) => Ordering::Greater,
        }
    }
}

macro_rules! residue_op {
    ($tr:ident, $m:ident) => {
        impl $tr for ResidueElem {
            type Output = ResidueElem;
            fn $m(self, rhs: ResidueElem) -> ResidueElem {
                match (self, rhs) {
                    (ResidueElem::Fp(a), ResidueElem::Fp(b)) => ResidueElem::Fp(a.$m(b)),
                    (ResidueElem::Q(a), ResidueElem::Q(b)) => ResidueElem::Q(a.$m(b)),
                    _ => panic!("mixed residue fields"),
                }
            }
        }
    };
}

residue_op!(Add, add);
residue_op!(Sub, sub);
residue_op!(Mul, mul);
residue_op!(Div, div);

impl Neg for ResidueElem {
    type Output = ResidueElem;
    fn neg(self) -> ResidueElem {
        match self {
            ResidueElem::Fp(a) => ResidueElem::Fp(-a),
            ResidueElem::Q(a) => ResidueElem::Q(-a),
        }
    }
}

impl Coefficient for ResidueElem {
    fn is_zero(&self) -> bool {
        match self {
            ResidueElem::Fp(a) => a.value() == 0,
            ResidueElem::Q(a) => Zero::is_zero(a),
        }
    }

    fn zero_like(&self) -> Self {
        self.field().zero()
    }

    fn one_like(&self) -> Self {
        match self {
            ResidueElem::Fp(a) => ResidueElem::Fp(a.field().one()),
            ResidueElem::Q(_) => ResidueElem::Q(BigRational::one()),
        }
    }

    fn int_like(&self, n: i64) -> Self {
        self.field().int(n)
    }

    fn big_int_like(&self, n: &BigInt) -> Self {
        match self {
            ResidueElem::Fp(a) => ResidueElem::Fp(a.field().from_bigint(n)),
            ResidueElem::Q(_) => ResidueElem::Q(BigRational::from_integer(n.clone())),
        }
    }
}

impl fmt::Display for ResidueElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueElem::Fp(a) => write!(f, "{a}"),
            ResidueElem::Q(a) => write!(f, "{a}"),
        }
    }
}

impl fmt::Debug for ResidueElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
