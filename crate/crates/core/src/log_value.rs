//! Extended exact log-values: valuations and log-radii.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::scalar::Scalar;

/// A value in `Q ∪ {−∞, +∞}`.
///
/// Valuations use `+∞` for zero; log-radii use `−∞` for rigid points. The
/// order is total with `−∞ < q < +∞` for every finite `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LogValue<S> {
    NegInf,
    Finite(S),
    PosInf,
}

impl<S: Scalar> LogValue<S> {
    pub fn int(n: i64) -> Self {
        LogValue::Finite(S::from_int(n))
    }

    pub fn ratio(a: i64, b: i64) -> Self {
        LogValue::Finite(S::ratio(a, b))
    }

    pub fn zero() -> Self {
        LogValue::Finite(S::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, LogValue::Finite(_))
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            LogValue::Finite(s) => Some(s),
            _ => None,
        }
    }

    pub fn into_finite(self) -> Option<S> {
        match self {
            LogValue::Finite(s) => Some(s),
            _ => None,
        }
    }

    /// Multiplies by an integer. `0 · (±∞)` is taken to be `0`.
    pub fn scale(&self, k: i64) -> Self {
        match self {
            LogValue::Finite(s) => LogValue::Finite(s.clone() * S::from_int(k)),
            _ if k == 0 => Self::zero(),
            LogValue::PosInf if k > 0 => LogValue::PosInf,
            LogValue::PosInf => LogValue::NegInf,
            LogValue::NegInf if k > 0 => LogValue::NegInf,
            LogValue::NegInf => LogValue::PosInf,
        }
    }

    pub fn max_of(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min_of(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl<S: Scalar> From<S> for LogValue<S> {
    fn from(s: S) -> Self {
        LogValue::Finite(s)
    }
}

impl<S: Scalar> PartialOrd for LogValue<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Scalar> Ord for LogValue<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        use LogValue::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (PosInf, _) | (_, NegInf) => Ordering::Greater,
        }
    }
}

impl<S: Scalar> Neg for LogValue<S> {
    type Output = Self;

    fn neg(self) -> Self {
        match self {
            LogValue::NegInf => LogValue::PosInf,
            LogValue::PosInf => LogValue::NegInf,
            LogValue::Finite(s) => LogValue::Finite(-s),
        }
    }
}

/// `+∞` absorbs; `(+∞) + (−∞)` is taken to be `+∞` (valuation of a zero
/// product dominates).
impl<S: Scalar> Add for LogValue<S> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        use LogValue::*;
        match (self, rhs) {
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
            (Finite(a), Finite(b)) => Finite(a + b),
        }
    }
}

impl<S: Scalar> Sub for LogValue<S> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> fmt::Display for LogValue<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogValue::NegInf => write!(f, "-inf"),
            LogValue::PosInf => write!(f, "inf"),
            LogValue::Finite(s) => write!(f, "{s}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type L = LogValue<Ratio<i64>>;

    #[test]
    fn order_is_total() {
        let mut v = vec![L::PosInf, L::int(3), L::NegInf, L::ratio(-1, 2), L::int(0)];
        v.sort();
        assert_eq!(v, vec![L::NegInf, L::ratio(-1, 2), L::int(0), L::int(3), L::PosInf]);
    }

    #[test]
    fn infinity_absorbs() {
        assert_eq!(L::PosInf + L::int(5), L::PosInf);
        assert_eq!(L::NegInf + L::int(5), L::NegInf);
        assert_eq!(L::ratio(1, 3) + L::ratio(2, 3), L::int(1));
        assert_eq!(L::int(2).scale(-3), L::int(-6));
        assert_eq!(L::PosInf.scale(-1), L::NegInf);
    }
}
