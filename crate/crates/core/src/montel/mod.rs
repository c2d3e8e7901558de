//! Families of maps and what their pointwise limits look like: limit balls,
//! collapsing diameters, limits under good reduction, the Cantor coding of a
//! quadratic Julia set, and the Schwarz identity for derivative norms.

mod cantor;
mod reduction;

pub use cantor::{cantor_coding, CantorBall, CantorReport};
pub use reduction::{good_reduction_limit_probe, GoodReductionReport, LimitCase};

use serde_json::{json, Value};

use crate::analytic::{seminorm, BallMap, PolynomialMap, RationalMap};
use crate::error::{Error, Result};
use crate::field::{distinct_residue_sequence, FieldDescriptor, FieldElement};
use crate::log_value::LogValue;
use crate::poly::Poly;
use crate::tree::BerkovichPoint;
use crate::Log;

/// A sequence of maps `f_1, f_2, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapFamily {
    /// `z^r + a·ζ_n·z^s` with `ζ_n = n + 1`.
    ShiftedMonomial { r: usize, s: usize, a: FieldElement },
    /// `z^n`.
    Power { desc: FieldDescriptor },
    /// `R^{n!}`.
    GoodReductionFactorial { map: RationalMap },
    /// `z^{p^n} + ε^n z^{p^n + 1}`.
    FrobeniusPerturbed { eps: FieldElement },
    /// `(u·z)^{p^n}`.
    ScaledPower { u: FieldElement },
}

/// A member of a family, polynomial when possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyMap {
    Polynomial(PolynomialMap),
    Rational(RationalMap),
}

impl FamilyMap {
    fn inner(&self) -> &dyn BallMap {
        match self {
            FamilyMap::Polynomial(p) => p,
            FamilyMap::Rational(r) => r,
        }
    }

    pub fn image_of_ball(&self, x: &BerkovichPoint) -> Result<BerkovichPoint> {
        self.inner().image_of_ball(x)
    }

    pub fn local_degree(&self, x: &BerkovichPoint) -> Result<usize> {
        self.inner().local_degree(x)
    }

    pub fn degree(&self) -> usize {
        match self {
            FamilyMap::Polynomial(p) => p.degree(),
            FamilyMap::Rational(r) => r.degree(),
        }
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// `a ∘ b` for rational maps.
pub fn compose(a: &RationalMap, b: &RationalMap) -> Result<RationalMap> {
    let d = a.degree();
    // Homogenize: a(n/m) = Σ α_i n^i m^{d−i} / Σ β_i n^i m^{d−i}.
    let homog = |p: &Poly<FieldElement>| {
        let mut acc = Poly::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = &b.num().pow(i) * &b.den().pow(d - i);
            acc = &acc + &t.scale(c);
        }
        acc
    };
    let (n, m) = (homog(a.num()), homog(a.den()));
    let g = n.gcd(&m);
    if g.degree().is_some_and(|k| k > 0) {
        return RationalMap::new(n.div_rem(&g).0, m.div_rem(&g).0);
    }
    RationalMap::new(n, m)
}

impl MapFamily {
    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            MapFamily::ShiftedMonomial { a, .. } => a.descriptor(),
            MapFamily::Power { desc } => *desc,
            MapFamily::GoodReductionFactorial { map } => map.descriptor(),
            MapFamily::FrobeniusPerturbed { eps } => eps.descriptor(),
            MapFamily::ScaledPower { u } => u.descriptor(),
        }
    }

    fn char_p(&self) -> Result<u64> {
        match self.descriptor().characteristic() {
            0 => Err(Error::InvalidParameters("family needs a field of positive characteristic".into())),
            p => Ok(p as u64),
        }
    }

    /// The `n`-th map, `n ≥ 1`.
    pub fn member(&self, n: usize) -> Result<FamilyMap> {
        if n == 0 {
            return Err(Error::InvalidParameters("family members are indexed from 1".into()));
        }
        let desc = self.descriptor();
        let poly = |c: Vec<FieldElement>| PolynomialMap::from_coeffs(c).map(FamilyMap::Polynomial);
        match self {
            MapFamily::ShiftedMonomial { r, s, a } => {
                if r > s {
                    return Err(Error::InvalidParameters(format!("need r ≤ s, got r = {r}, s = {s}")));
                }
                let zeta = distinct_residue_sequence(desc, n + 1)?.pop().unwrap();
                let mut c = vec![desc.zero(); s + 1];
                c[*r] = &c[*r] + &desc.one();
                c[*s] = &c[*s] + &(a * &zeta);
                poly(c)
            }
            MapFamily::Power { .. } => poly(Poly::monomial(desc.one(), n).into_coeffs()),
            MapFamily::GoodReductionFactorial { map } => {
                let k = factorial(n);
                if (map.degree() as f64).powi(k as i32) > 4096.0 {
                    return Err(Error::InvalidParameters(format!("R^{k} has degree above 4096")));
                }
                let mut acc = map.clone();
                for _ in 1..k {
                    acc = compose(&acc, map)?;
                }
                Ok(FamilyMap::Rational(acc))
            }
            MapFamily::FrobeniusPerturbed { eps } => {
                let q = self.char_p()?.pow(n as u32) as usize;
                let mut c = vec![desc.zero(); q + 2];
                c[q] = desc.one();
                c[q + 1] = eps.pow(n as u64);
                poly(c)
            }
            MapFamily::ScaledPower { u } => {
                let p = self.descriptor().residue_characteristic() as usize;
                if p == 0 {
                    return Err(Error::InvalidParameters(
                        "scaled powers need a positive residue characteristic".into(),
                    ));
                }
                let q = p.pow(n as u32);
                poly(Poly::monomial(u.pow(q as u64), q).into_coeffs())
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            MapFamily::ShiftedMonomial { r, s, a } => {
                json!({"kind": "shifted-monomial", "r": r, "s": s, "a": a.to_json()})
            }
            MapFamily::Power { .. } => json!({"kind": "power"}),
            MapFamily::GoodReductionFactorial { map } => {
                json!({"kind": "good-reduction-factorial", "map": map.to_json()})
            }
            MapFamily::FrobeniusPerturbed { eps } => json!({"kind": "frobenius-perturbed", "eps": eps.to_json()}),
            MapFamily::ScaledPower { u } => json!({"kind": "scaled-power", "u": u.to_json()}),
        }
    }

    pub fn from_json(desc: FieldDescriptor, v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("family must be an object".into()))?;
        let kind =
            obj.get("kind").and_then(|k| k.as_str()).ok_or_else(|| Error::Parse("family needs a \"kind\"".into()))?;
        let allowed: &[&str] = match kind {
            "shifted-monomial" => &["kind", "r", "s", "a"],
            "power" => &["kind"],
            "good-reduction-factorial" => &["kind", "map"],
            "frobenius-perturbed" => &["kind", "eps"],
            "scaled-power" => &["kind", "u"],
            _ => return Err(Error::Parse(format!("unknown family {kind}"))),
        };
        if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::Parse(format!("unknown key {k} for family {kind}")));
        }
        let get = |k: &str| obj.get(k).ok_or_else(|| Error::Parse(format!("family {kind} needs \"{k}\"")));
        let int = |k: &str| {
            get(k)?
                .as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse(format!("\"{k}\" must be a nonnegative integer")))
        };
        let elem = |k: &str| FieldElement::from_json(desc, get(k)?);
        Ok(match kind {
            "shifted-monomial" => MapFamily::ShiftedMonomial { r: int("r")?, s: int("s")?, a: elem("a")? },
            "power" => MapFamily::Power { desc },
            "good-reduction-factorial" => {
                MapFamily::GoodReductionFactorial { map: RationalMap::from_json(desc, get("map")?)? }
            }
            "frobenius-perturbed" => MapFamily::FrobeniusPerturbed { eps: elem("eps")? },
            _ => MapFamily::ScaledPower { u: elem("u")? },
        })
    }
}

/// `log|y − w|` for the seminorm `y`.
fn distance_to(y: &BerkovichPoint, w: &FieldElement) -> Result<Log> {
    let c = y.center().ok_or_else(|| Error::PoleInBall("image is the point at infinity".into()))?;
    Ok((c - w).log_abs().max_of(y.tau()))
}

/// The last `⌈len/3⌉` values agree.
fn stabilized(values: &[Log]) -> Option<Log> {
    let k = values.len().div_ceil(3);
    let tail = &values[values.len().checked_sub(k.max(1))?..];
    tail.iter().all(|v| *v == tail[0]).then(|| tail[0].clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitProbeReport {
    pub point: BerkovichPoint,
    pub witnesses: Vec<FieldElement>,
    /// `values[j][n − 1] = log|f_n(x) − w_j|`.
    pub values: Vec<Vec<Log>>,
    /// Stable value per witness.
    pub verdicts: Vec<Option<Log>>,
    /// Smallest ball through a witness reproducing every stable value.
    pub inferred: Option<BerkovichPoint>,
}

/// Evaluates `log|f_n(x) − w|` for `n = 1..=n_max` and each witness, and
/// infers a limit point `ζ` from `|ζ − w| = max{diam ζ, |center − w|}`.
pub fn pointwise_limit_probe(
    family: &MapFamily,
    x: &BerkovichPoint,
    n_max: usize,
    witnesses: &[FieldElement],
) -> Result<LimitProbeReport> {
    let mut values = vec![Vec::with_capacity(n_max); witnesses.len()];
    for n in 1..=n_max {
        let y = family.member(n)?.image_of_ball(x)?;
        for (j, w) in witnesses.iter().enumerate() {
            values[j].push(distance_to(&y, w)?);
        }
    }
    let verdicts: Vec<Option<Log>> = values.iter().map(|v| stabilized(v)).collect();
    let inferred = infer_limit(witnesses, &verdicts);
    Ok(LimitProbeReport { point: x.clone(), witnesses: witnesses.to_vec(), values, verdicts, inferred })
}

fn infer_limit(witnesses: &[FieldElement], verdicts: &[Option<Log>]) -> Option<BerkovichPoint> {
    let stable: Vec<&Log> = verdicts.iter().map(|v| v.as_ref()).collect::<Option<_>>()?;
    let (k, m) = stable.iter().enumerate().min_by(|a, b| a.1.cmp(b.1))?;
    let ball = BerkovichPoint::new(witnesses[k].clone(), (*m).clone());
    let consistent =
        witnesses.iter().zip(&stable).all(|(w, v)| (&witnesses[k] - w).log_abs().max_of((*m).clone()) == **v);
    consistent.then_some(ball)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplosionReport {
    pub point: BerkovichPoint,
    /// `τ(f_n(x))` for `n = 1..=n_max`.
    pub taus: Vec<Log>,
    pub degrees: Vec<usize>,
    /// `p^n(τ(x) − v(u))` for scaled powers in characteristic `p`.
    pub predicted: Option<Vec<Log>>,
    /// The last `⌈n_max/3⌉` values of `τ` strictly decrease.
    pub eventually_decreasing: bool,
}

pub fn degree_explosion_probe(family: &MapFamily, x: &BerkovichPoint, n_max: usize) -> Result<ExplosionReport> {
    let mut taus = Vec::with_capacity(n_max);
    let mut degrees = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let f = family.member(n)?;
        taus.push(f.image_of_ball(x)?.tau());
        degrees.push(f.local_degree(x)?);
    }
    let predicted = match (family, x.finite_tau()) {
        (MapFamily::ScaledPower { u }, Some(t)) if u.descriptor().characteristic() > 0 => {
            let p = u.descriptor().characteristic() as i64;
            let base = LogValue::Finite(t) + u.log_abs();
            Some((1..=n_max).map(|n| base.scale(p.pow(n as u32))).collect())
        }
        _ => None,
    };
    let k = n_max.div_ceil(3);
    let tail = &taus[n_max.saturating_sub(k + 1)..];
    let eventually_decreasing = n_max >= 2 && tail.windows(2).all(|w| w[1] < w[0]);
    Ok(ExplosionReport { point: x.clone(), taus, degrees, predicted, eventually_decreasing })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchwarzReport {
    /// `log sup_B |f′|` from the coefficients of `f(a + u)`.
    pub sup_norm: Log,
    /// The seminorm of `f′` at `x`.
    pub seminorm: Log,
    pub equal: bool,
}

/// Compares `sup_B |f′|` with `|f′(x)|` when `f` maps the ball of `x` into
/// the closed unit ball.
pub fn schwarz_check(f: &PolynomialMap, x: &BerkovichPoint) -> Result<SchwarzReport> {
    x.type_ii_tau()?;
    let unit = BerkovichPoint::gauss(f.descriptor());
    if !f.image_of_ball(x)?.leq(&unit) {
        return Err(Error::ImageNotInUnitBall);
    }
    let sup_norm = f.derivative_sup_norm(x)?;
    let seminorm = seminorm(&f.derivative(), x)?;
    Ok(SchwarzReport { equal: sup_norm == seminorm, sup_norm, seminorm })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn shifted_monomial_limit() {
        let q = FieldDescriptor::laurent_q();
        let t = q.uniformizer();
        let fam = MapFamily::ShiftedMonomial { r: 1, s: 2, a: t.clone() };
        let w = vec![q.zero(), q.one(), &q.one() + &t];
        let rep = pointwise_limit_probe(&fam, &BerkovichPoint::rigid(q.one()), 20, &w).unwrap();
        assert_eq!(rep.verdicts, vec![Some(LogValue::zero()), Some(LogValue::int(-1)), Some(LogValue::int(-1))]);
        assert_eq!(rep.inferred, Some(BerkovichPoint::ball(q.one(), rat(-1, 1))));
        assert!(pointwise_limit_probe(&fam, &BerkovichPoint::rigid(q.one()), 5, &[]).unwrap().inferred.is_none());
    }

    #[test]
    fn powers_do_not_settle() {
        let d = FieldDescriptor::padic(3).unwrap();
        let rep = pointwise_limit_probe(
            &MapFamily::Power { desc: d },
            &BerkovichPoint::rigid(d.int(2)),
            12,
            &[d.zero(), d.one()],
        )
        .unwrap();
        assert_eq!(rep.verdicts[0], Some(LogValue::zero()));
        assert_eq!(rep.verdicts[1], None);
        assert!(rep.inferred.is_none());
    }

    #[test]
    fn scaled_powers_collapse() {
        let l = FieldDescriptor::laurent_fp(2).unwrap();
        let fam = MapFamily::ScaledPower { u: l.uniformizer() };
        let rep = degree_explosion_probe(&fam, &BerkovichPoint::gauss(l), 6).unwrap();
        assert_eq!(rep.degrees, vec![2, 4, 8, 16, 32, 64]);
        assert_eq!(rep.taus, (1..=6).map(|n| LogValue::int(-(1 << n))).collect::<Vec<_>>());
        assert_eq!(rep.predicted.as_ref(), Some(&rep.taus));
        assert!(rep.eventually_decreasing);
        let half = BerkovichPoint::ball(l.zero(), rat(1, 2));
        let rep = degree_explosion_probe(&fam, &half, 4).unwrap();
        assert_eq!(rep.taus[3], LogValue::int(-8));
        let d = FieldDescriptor::padic(3).unwrap();
        let flat = degree_explosion_probe(&MapFamily::Power { desc: d }, &BerkovichPoint::gauss(d), 5).unwrap();
        assert_eq!(flat.degrees, vec![1, 2, 3, 4, 5]);
        assert!(!flat.eventually_decreasing);
    }

    #[test]
    fn frobenius_perturbed_members() {
        let l = FieldDescriptor::laurent_fp(3).unwrap();
        let fam = MapFamily::FrobeniusPerturbed { eps: l.uniformizer() };
        let f = fam.member(2).unwrap();
        assert_eq!(f.degree(), 10);
        assert!(MapFamily::FrobeniusPerturbed { eps: FieldDescriptor::laurent_q().one() }.member(1).is_err());
    }

    #[test]
    fn factorial_iterates() {
        let d = FieldDescriptor::padic(3).unwrap();
        let sq = RationalMap::from(PolynomialMap::from_coeffs(vec![d.zero(), d.zero(), d.one()]).unwrap());
        let fam = MapFamily::GoodReductionFactorial { map: sq };
        assert_eq!(fam.member(3).unwrap().degree(), 64);
        assert!(fam.member(4).is_err());
    }

    #[test]
    fn schwarz_examples() {
        let d = FieldDescriptor::padic(3).unwrap();
        let g = BerkovichPoint::gauss(d);
        let cube = PolynomialMap::from_coeffs(vec![d.zero(), d.zero(), d.zero(), d.one()]).unwrap();
        let r = schwarz_check(&cube, &g).unwrap();
        assert_eq!((r.sup_norm.clone(), r.equal), (LogValue::int(-1), true));
        let id = PolynomialMap::from_coeffs(vec![d.zero(), d.one()]).unwrap();
        assert_eq!(schwarz_check(&id, &g).unwrap().seminorm, LogValue::zero());
        let two = FieldDescriptor::padic(2).unwrap();
        let sq = PolynomialMap::from_coeffs(vec![two.zero(), two.zero(), two.one()]).unwrap();
        assert_eq!(schwarz_check(&sq, &BerkovichPoint::gauss(two)).unwrap().sup_norm, LogValue::int(-1));
        let big = PolynomialMap::from_coeffs(vec![d.zero(), d.ratio(1, 3)]).unwrap();
        assert_eq!(schwarz_check(&big, &g), Err(Error::ImageNotInUnitBall));
    }
}
