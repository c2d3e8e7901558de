//! Points of the Berkovich line of types I, II and III.
//!
//! A point is a closed ball `B(a, τ) = {z : v(z − a) ≥ −τ}` with `τ` a
//! rational log-radius, a rigid point (`τ = −∞`), or the point at infinity.
//! Finite-radius centers are truncated to their expansion below `⌈−τ⌉`, so
//! structural equality is ball equality.

use std::fmt;

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{parse_rational, FieldDescriptor, FieldElement, ResidueElem};
use crate::log_value::LogValue;
use crate::{Log, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointKind {
    TypeI,
    TypeII,
    TypeIII,
    Infinity,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Inner {
    Infinity,
    Ball { center: FieldElement, tau: Log },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BerkovichPoint(Inner);

/// `⌈−τ⌉` for a finite log-radius.
pub(crate) fn center_precision(tau: &Rational) -> i64 {
    (-tau).ceil().to_integer().to_i64().expect("log-radius fits i64")
}

impl BerkovichPoint {
    /// The canonical point with the given center and log-radius. `τ = −∞`
    /// gives a rigid point and `τ = +∞` the point at infinity.
    pub fn new(center: FieldElement, tau: Log) -> Self {
        match tau {
            LogValue::PosInf => BerkovichPoint(Inner::Infinity),
            LogValue::NegInf => BerkovichPoint(Inner::Ball { center, tau }),
            LogValue::Finite(t) => {
                let center = center.truncate(center_precision(&t));
                BerkovichPoint(Inner::Ball { center, tau: LogValue::Finite(t) })
            }
        }
    }

    pub fn ball(center: FieldElement, tau: Rational) -> Self {
        Self::new(center, LogValue::Finite(tau))
    }

    pub fn rigid(a: FieldElement) -> Self {
        Self::new(a, LogValue::NegInf)
    }

    pub fn gauss(desc: FieldDescriptor) -> Self {
        Self::ball(desc.zero(), Rational::from_integer(0.into()))
    }

    pub fn infinity() -> Self {
        BerkovichPoint(Inner::Infinity)
    }

    pub fn kind(&self) -> PointKind {
        match &self.0 {
            Inner::Infinity => PointKind::Infinity,
            Inner::Ball { tau: LogValue::Finite(t), .. } if t.is_integer() => PointKind::TypeII,
            Inner::Ball { tau: LogValue::Finite(_), .. } => PointKind::TypeIII,
            Inner::Ball { .. } => PointKind::TypeI,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self.0, Inner::Infinity)
    }

    pub fn is_rigid(&self) -> bool {
        self.kind() == PointKind::TypeI
    }

    /// Center of the ball (canonical for finite radius); `None` at infinity.
    pub fn center(&self) -> Option<&FieldElement> {
        match &self.0 {
            Inner::Infinity => None,
            Inner::Ball { center, .. } => Some(center),
        }
    }

    /// Log-radius; `+∞` for the point at infinity.
    pub fn tau(&self) -> Log {
        match &self.0 {
            Inner::Infinity => LogValue::PosInf,
            Inner::Ball { tau, .. } => tau.clone(),
        }
    }

    /// The finite log-radius of a type II or III point.
    pub fn finite_tau(&self) -> Option<Rational> {
        self.tau().into_finite()
    }

    pub fn descriptor(&self) -> Option<FieldDescriptor> {
        self.center().map(|c| c.descriptor())
    }

    /// `ball(self) ⊆ ball(other)`; infinity is the maximum.
    pub fn leq(&self, other: &BerkovichPoint) -> bool {
        match (&self.0, &other.0) {
            (_, Inner::Infinity) => true,
            (Inner::Infinity, _) => false,
            (Inner::Ball { center: a, tau: s }, Inner::Ball { center: b, tau: t }) => s <= t && (a - b).log_abs() <= *t,
        }
    }

    pub fn lt(&self, other: &BerkovichPoint) -> bool {
        self != other && self.leq(other)
    }

    /// Smallest point above both.
    pub fn join(&self, other: &BerkovichPoint) -> BerkovichPoint {
        match (&self.0, &other.0) {
            (Inner::Infinity, _) | (_, Inner::Infinity) => Self::infinity(),
            (Inner::Ball { center: a, tau: s }, Inner::Ball { center: b, tau: t }) => {
                let d = (a - b).log_abs();
                let tau = s.clone().max_of(t.clone()).max_of(d);
                Self::new(a.clone(), tau)
            }
        }
    }

    /// The point on `[self, ∞)` with log-radius `tau ≥ τ(self)`.
    pub fn ancestor(&self, tau: Log) -> BerkovichPoint {
        match self.center() {
            None => Self::infinity(),
            Some(c) => Self::new(c.clone(), tau.max_of(self.tau())),
        }
    }

    /// Hyperbolic distance `2τ(x ∨ y) − τ(x) − τ(y)` between points of type II/III.
    pub fn hyperbolic_distance(&self, other: &BerkovichPoint) -> Result<Rational> {
        let (Some(s), Some(t)) = (self.finite_tau(), other.finite_tau()) else {
            return Err(Error::InvalidPoint("hyperbolic distance needs type II or III points".into()));
        };
        let j = self.join(other).finite_tau().expect("join of finite balls is finite");
        Ok(j.clone() + j - s - t)
    }

    /// The tangent direction at the type II point `self` containing `y`.
    pub fn direction_to(&self, y: &BerkovichPoint) -> Result<Direction> {
        let tau = self.type_ii_tau()?;
        if y == self {
            return Err(Error::InvalidPoint("direction toward the base point itself".into()));
        }
        let class = if y.leq(self) {
            let a = self.center().unwrap();
            let b = y.center().unwrap();
            let desc = a.descriptor();
            let u = (b - a) * desc.uniformizer_pow(tau);
            DirectionClass::Residue(u.residue()?)
        } else {
            DirectionClass::Infinity
        };
        Ok(Direction { base: self.clone(), class })
    }

    /// The integer log-radius of a type II point.
    pub(crate) fn type_ii_tau(&self) -> Result<i64> {
        match self.finite_tau() {
            Some(t) if t.is_integer() => Ok(t.to_integer().to_i64().expect("small log-radius")),
            _ => Err(Error::NotTypeII(self.to_string())),
        }
    }

    /// Points along the path `[self, self ∨ other] ∪ [self ∨ other, other]`,
    /// `per_leg + 1` evenly spaced log-radii on each leg, including the ends.
    pub fn sample_path(&self, other: &BerkovichPoint, per_leg: usize) -> Result<Vec<BerkovichPoint>> {
        let j = self.join(other);
        let (Some(s), Some(t), Some(tj)) = (self.finite_tau(), other.finite_tau(), j.finite_tau()) else {
            return Err(Error::InvalidPoint("path sampling needs finite radii".into()));
        };
        let n = per_leg.max(1) as i64;
        let mut out = Vec::new();
        let leg = |start: &BerkovichPoint, lo: &Rational, out: &mut Vec<BerkovichPoint>, rev: bool| {
            let step = (tj.clone() - lo) / Rational::from_integer(n.into());
            let mut pts: Vec<_> = (0..=n)
                .map(|i| start.ancestor(LogValue::Finite(lo.clone() + step.clone() * Rational::from_integer(i.into()))))
                .collect();
            if rev {
                pts.reverse();
            }
            for p in pts {
                if out.last() != Some(&p) {
                    out.push(p);
                }
            }
        };
        leg(self, &s, &mut out, false);
        leg(other, &t, &mut out, true);
        Ok(out)
    }

    /// JSON: `{"center": <scalar>, "tau": "a/b"}`, `"tau": "-inf"` for rigid
    /// points, and `{"infinity": true}`.
    pub fn to_json(&self) -> Value {
        match &self.0 {
            Inner::Infinity => json!({"infinity": true}),
            Inner::Ball { center, tau } => json!({"center": center.to_json(), "tau": tau.to_string()}),
        }
    }

    pub fn from_json(desc: FieldDescriptor, v: &Value) -> Result<BerkovichPoint> {
        let bad = |m: &str| Error::Parse(format!("bad point {v}: {m}"));
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        if obj.get("infinity").is_some() {
            if obj.len() != 1 || obj["infinity"] != Value::Bool(true) {
                return Err(bad("infinity takes no other keys"));
            }
            return Ok(Self::infinity());
        }
        if obj.keys().any(|k| k != "center" && k != "tau") {
            return Err(bad("unknown key"));
        }
        let center = match obj.get("center") {
            Some(c) => FieldElement::from_json(desc, c)?,
            None => desc.zero(),
        };
        let tau = match obj.get("tau") {
            None => return Err(bad("missing tau")),
            Some(Value::String(s)) if s == "-inf" => LogValue::NegInf,
            Some(Value::String(s)) if s == "inf" => LogValue::PosInf,
            Some(Value::String(s)) => LogValue::Finite(parse_rational(s)?),
            Some(Value::Number(n)) => LogValue::int(n.as_i64().ok_or_else(|| bad("tau"))?),
            Some(_) => return Err(bad("tau")),
        };
        Ok(Self::new(center, tau))
    }
}

impl fmt::Display for BerkovichPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Inner::Infinity => write!(f, "∞"),
            Inner::Ball { center, tau: LogValue::NegInf } => write!(f, "{center}"),
            Inner::Ball { center, tau } => write!(f, "B({center}, τ={tau})"),
        }
    }
}

impl fmt::Debug for BerkovichPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A residue class `r` (the open ball `a + π^{−τ}(r̂ + m)`) or the
/// direction toward infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DirectionClass {
    Residue(ResidueElem),
    Infinity,
}

impl fmt::Display for DirectionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DirectionClass::Residue(r) => write!(f, "{r}"),
            DirectionClass::Infinity => write!(f, "∞"),
        }
    }
}

/// A tangent direction at a type II point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Direction {
    base: BerkovichPoint,
    class: DirectionClass,
}

impl Direction {
    pub fn new(base: BerkovichPoint, class: DirectionClass) -> Result<Self> {
        base.type_ii_tau()?;
        Ok(Direction { base, class })
    }

    pub fn base(&self) -> &BerkovichPoint {
        &self.base
    }

    pub fn class(&self) -> &DirectionClass {
        &self.class
    }

    /// A rigid point in a residue-class direction: `a + r̂·π^{−τ}`.
    pub fn representative(&self) -> Option<FieldElement> {
        let DirectionClass::Residue(r) = &self.class else {
            return None;
        };
        let a = self.base.center()?;
        let desc = a.descriptor();
        let tau = self.base.type_ii_tau().ok()?;
        Some(a + &(desc.lift(r) * desc.uniformizer_pow(-tau)))
    }

    pub fn contains(&self, y: &BerkovichPoint) -> bool {
        y != &self.base && self.base.direction_to(y).is_ok_and(|d| d.class == self.class)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn padic(p: u32) -> FieldDescriptor {
        FieldDescriptor::padic(p).unwrap()
    }

    fn b(desc: FieldDescriptor, a: i64, tau: i64) -> BerkovichPoint {
        BerkovichPoint::ball(desc.int(a), rat(tau, 1))
    }

    #[test]
    fn make_point_examples() {
        let f = padic(2);
        assert_eq!(BerkovichPoint::gauss(f).kind(), PointKind::TypeII);
        assert_eq!(BerkovichPoint::ball(f.zero(), rat(1, 2)).kind(), PointKind::TypeIII);
        assert_eq!(b(padic(3), 9, 0), b(padic(3), 0, 0));
    }

    #[test]
    fn order_examples() {
        let f = padic(3);
        assert!(b(f, 0, -1).leq(&b(f, 0, 0)));
        assert!(b(f, 1, -1).leq(&b(f, 0, 0)));
        assert!(!b(f, 0, 0).leq(&b(f, 0, -1)));
        assert!(b(f, 0, 0).leq(&BerkovichPoint::infinity()));
    }

    #[test]
    fn join_examples() {
        let f = padic(3);
        let j = BerkovichPoint::rigid(f.int(1)).join(&BerkovichPoint::rigid(f.int(4)));
        assert_eq!(j, b(f, 1, -1));
        assert_eq!(j.join(&j), j);
        let g = padic(2);
        assert_eq!(b(g, 0, -2).join(&b(g, 1, -3)), BerkovichPoint::gauss(g));
    }

    #[test]
    fn distance_examples() {
        let f = padic(3);
        let gauss = BerkovichPoint::gauss(f);
        assert_eq!(gauss.hyperbolic_distance(&b(f, 0, -1)).unwrap(), rat(1, 1));
        assert_eq!(gauss.hyperbolic_distance(&gauss).unwrap(), rat(0, 1));
        assert_eq!(b(f, 1, -2).hyperbolic_distance(&b(f, 4, -2)).unwrap(), rat(2, 1));
        assert!(gauss.hyperbolic_distance(&BerkovichPoint::rigid(f.one())).is_err());
    }

    #[test]
    fn direction_examples() {
        let f = padic(5);
        let gauss = BerkovichPoint::gauss(f);
        let d = gauss.direction_to(&BerkovichPoint::rigid(f.int(2))).unwrap();
        assert_eq!(
            d.class(),
            &DirectionClass::Residue(ResidueElem::Fp(crate::field::FiniteField::prime(5).unwrap().elem(2)))
        );
        assert_eq!(gauss.direction_to(&BerkovichPoint::infinity()).unwrap().class(), &DirectionClass::Infinity);
        let far = BerkovichPoint::rigid(f.ratio(1, 5));
        assert_eq!(gauss.direction_to(&far).unwrap().class(), &DirectionClass::Infinity);
        assert!(gauss.direction_to(&gauss).is_err());
        assert!(d.contains(&BerkovichPoint::rigid(f.int(7))));
    }

    #[test]
    fn json_round_trip() {
        let f = FieldDescriptor::laurent_q();
        for p in [
            BerkovichPoint::infinity(),
            BerkovichPoint::rigid(f.ratio(1, 3)),
            BerkovichPoint::ball(f.uniformizer_pow(-1), rat(3, 2)),
        ] {
            assert_eq!(BerkovichPoint::from_json(f, &p.to_json()).unwrap(), p);
        }
    }

    #[test]
    fn sampled_path_is_monotone_to_join() {
        let f = padic(2);
        let pts = b(f, 0, -3).sample_path(&b(f, 1, -2), 3).unwrap();
        assert_eq!(pts.first(), Some(&b(f, 0, -3)));
        assert_eq!(pts.last(), Some(&b(f, 1, -2)));
        assert!(pts.contains(&BerkovichPoint::gauss(f)));
    }
}
