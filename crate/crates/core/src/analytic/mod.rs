//! Polynomials and rational maps acting on points of the Berkovich line.
//!
//! Most quantities come from one computation: expand `f` around the center
//! `a` of a ball, `f(a + u) = Σ c_i u^i`, and look at the lines
//! `τ ↦ iτ − v(c_i)`. Their upper envelope over `i ≥ 1` is the log-radius
//! of the image ball, and the extreme attaining indices are the local and
//! directional degrees.

mod affinoid;
mod fiber;
mod partial;
mod witness;

pub use affinoid::{degree_bound_check, fast_arc, Affinoid, DegreeBoundReport, DegreeBoundSample, FastArcReport};
pub(crate) use fiber::{component, fiber_points};
pub use fiber::{degree_sum_check, DegreeSumReport, FiberBall};
pub use partial::{partial_fractions, PartialFractions, PrincipalPart};
pub use witness::{diam_via_witnesses, rigid_sample, sampled_image, witnesses};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement, ResidueElem};
use crate::log_value::LogValue;
use crate::poly::Poly;
use crate::residue::{frobenius_factor, ResidueRationalMap};
use crate::tree::{BerkovichPoint, DirectionClass};
use crate::{Log, Rational};

/// Max of `iτ − v(c_i)` over `i ≥ from` with `c_i ≠ 0`, with the smallest
/// and largest attaining indices.
fn envelope(c: &[FieldElement], tau: &Rational, from: usize) -> Option<(Rational, usize, usize)> {
    let mut best: Option<(Rational, usize, usize)> = None;
    for (i, ci) in c.iter().enumerate().skip(from) {
        let Some(v) = ci.val() else { continue };
        let y = Rational::from_integer(i.into()) * tau - Rational::from_integer(v.into());
        best = match best {
            Some((b, lo, _)) if y == b => Some((b, lo, i)),
            Some((b, lo, hi)) if y < b => Some((b, lo, hi)),
            _ => Some((y, i, i)),
        };
    }
    best
}

/// `p(a + u)`, expanding monomial by monomial when `p` is sparse.
pub(crate) fn shift(p: &Poly<FieldElement>, a: &FieldElement) -> Poly<FieldElement> {
    match p.degree() {
        Some(d) if p.support().count() * 8 < d => p.taylor_shift_sparse(a),
        _ => p.taylor_shift(a),
    }
}

fn check_descriptor(p: &Poly<FieldElement>) -> Result<FieldDescriptor> {
    let desc =
        p.coeffs().first().map(|c| c.descriptor()).ok_or_else(|| Error::InvalidParameters("zero polynomial".into()))?;
    if p.coeffs().iter().any(|c| c.descriptor() != desc) {
        return Err(Error::DescriptorMismatch);
    }
    Ok(desc)
}

fn finite_ball(x: &BerkovichPoint) -> Result<(&FieldElement, Rational)> {
    match (x.center(), x.finite_tau()) {
        (Some(a), Some(t)) => Ok((a, t)),
        _ => Err(Error::InvalidPoint(format!("{x} is not a ball of finite radius"))),
    }
}

/// `log` of the sup-norm of `g` on the ball of `x` (`log|g(a)|` at a rigid `a`).
pub fn seminorm(g: &Poly<FieldElement>, x: &BerkovichPoint) -> Result<Log> {
    let a = x.center().ok_or_else(|| Error::InvalidPoint("seminorm at infinity".into()))?;
    match x.finite_tau() {
        None => Ok(g.eval(a).log_abs()),
        Some(t) => Ok(envelope(shift(g, a).coeffs(), &t, 0).map_or(LogValue::NegInf, |(m, _, _)| LogValue::Finite(m))),
    }
}

fn poly_json(p: &Poly<FieldElement>) -> Value {
    Value::Array(p.coeffs().iter().map(|c| c.to_json()).collect())
}

fn poly_from_json(desc: FieldDescriptor, v: &Value) -> Result<Poly<FieldElement>> {
    let arr = v.as_array().ok_or_else(|| Error::Parse(format!("expected a coefficient list, got {v}")))?;
    let c = arr.iter().map(|x| FieldElement::from_json(desc, x)).collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(c))
}

/// Maps that send balls to balls (or at least type II points to type II
/// points) and induce tangent maps.
pub trait BallMap {
    fn descriptor(&self) -> FieldDescriptor;

    /// `(N, D)` with `f = N/D`.
    fn fraction(&self) -> (Poly<FieldElement>, Poly<FieldElement>);

    fn image_of_ball(&self, x: &BerkovichPoint) -> Result<BerkovichPoint>;

    fn local_degree(&self, x: &BerkovichPoint) -> Result<usize>;

    /// The tangent map `T_x f` in the coordinates `z = a + π^{−τ}u` at `x` and
    /// `w = b + π^{−τ′}u` at `f(x)`, `a` and `b` the canonical centers.
    fn reduction_map(&self, x: &BerkovichPoint) -> Result<ResidueRationalMap> {
        let tau = x.type_ii_tau()?;
        let y = self.image_of_ball(x)?;
        if y.is_rigid() {
            return Err(Error::ConstantMap);
        }
        let tau_y = y.type_ii_tau()?;
        let desc = self.descriptor();
        let (a, b) = (x.center().unwrap(), y.center().unwrap());
        let lin = Poly::new(vec![a.clone(), desc.uniformizer_pow(-tau)]);
        let (n, d) = self.fraction();
        let ns = n.compose(&lin);
        let ds = d.compose(&lin);
        let p = &ns - &ds.scale(b);
        let q = ds.scale(&desc.uniformizer_pow(-tau_y));
        let m = p.coeffs().iter().chain(q.coeffs()).filter_map(|c| c.val()).min().ok_or(Error::ConstantMap)?;
        let unit = desc.uniformizer_pow(-m);
        let reduce = |f: &Poly<FieldElement>| -> Result<Poly<ResidueElem>> {
            Ok(Poly::new(f.coeffs().iter().map(|c| (c * &unit).residue()).collect::<Result<Vec<_>>>()?))
        };
        ResidueRationalMap::new(reduce(&p)?, reduce(&q)?, desc.residue_field())
    }

    /// `p^n` in `T_x f = R ∘ Frob^n` with `R` separable; 1 in residue
    /// characteristic 0.
    fn inseparable_degree(&self, x: &BerkovichPoint) -> Result<u64> {
        let r = self.reduction_map(x)?;
        let (_, n) = frobenius_factor(&r);
        Ok((r.field().characteristic().max(1) as u64).pow(n))
    }

    /// Degree of `T_x f` at the direction `class`: its multiplicity there.
    fn directional_degree(&self, x: &BerkovichPoint, class: &DirectionClass) -> Result<usize> {
        Ok(self.reduction_map(x)?.multiplicity(class))
    }
}

/// A nonzero polynomial with coefficients in one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialMap {
    poly: Poly<FieldElement>,
    desc: FieldDescriptor,
}

impl PolynomialMap {
    pub fn new(poly: Poly<FieldElement>) -> Result<Self> {
        let desc = check_descriptor(&poly)?;
        if poly.is_zero() {
            return Err(Error::InvalidParameters("zero polynomial".into()));
        }
        Ok(PolynomialMap { poly, desc })
    }

    /// `Σ c_i z^i` from integer or rational coefficients, lowest degree first.
    pub fn from_coeffs(coeffs: Vec<FieldElement>) -> Result<Self> {
        Self::new(Poly::new(coeffs))
    }

    pub fn poly(&self) -> &Poly<FieldElement> {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn eval(&self, z: &FieldElement) -> FieldElement {
        self.poly.eval(z)
    }

    /// Coefficients of `f(a + u)` in `u`.
    pub fn recenter(&self, a: &FieldElement) -> Poly<FieldElement> {
        shift(&self.poly, a)
    }

    pub fn derivative(&self) -> Poly<FieldElement> {
        self.poly.derivative()
    }

    /// Order of vanishing of `f(z) − f(a)` at `a`.
    pub fn rigid_multiplicity(&self, a: &FieldElement) -> Result<usize> {
        if self.is_constant() {
            return Err(Error::ConstantMap);
        }
        Ok(self.recenter(a).coeffs().iter().skip(1).position(|c| !c.is_zero()).unwrap() + 1)
    }

    /// Smallest attaining index after recentering at a lift of the class;
    /// the local degree toward infinity.
    pub fn directional_degree(&self, x: &BerkovichPoint, class: &DirectionClass) -> Result<usize> {
        let tau = x.type_ii_tau()?;
        if self.is_constant() {
            return Err(Error::ConstantMap);
        }
        match class {
            DirectionClass::Infinity => self.local_degree(x),
            DirectionClass::Residue(r) => {
                let a = x.center().unwrap() + &(self.desc.lift(r) * self.desc.uniformizer_pow(-tau));
                let t = Rational::from_integer(tau.into());
                Ok(envelope(self.recenter(&a).coeffs(), &t, 1).unwrap().1)
            }
        }
    }

    /// `log sup |f′|` on the ball: `max_{i≥1}((i−1)τ − v(i·c_i))` for the
    /// recentered coefficients.
    pub fn derivative_sup_norm(&self, x: &BerkovichPoint) -> Result<Log> {
        let (a, tau) = finite_ball(x)?;
        let c = self.recenter(a);
        let mut best = LogValue::NegInf;
        for (i, ci) in c.coeffs().iter().enumerate().skip(1) {
            let ic = ci * &self.desc.int(i as i64);
            if let Some(v) = ic.val() {
                let y = Rational::from_integer((i as i64 - 1).into()) * &tau - Rational::from_integer(v.into());
                best = best.max_of(LogValue::Finite(y));
            }
        }
        Ok(best)
    }

    pub fn to_json(&self) -> Value {
        json!({"coeffs": poly_json(&self.poly)})
    }

    pub fn from_json(desc: FieldDescriptor, v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("polynomial must be an object".into()))?;
        if obj.keys().any(|k| k != "coeffs") {
            return Err(Error::Parse("polynomial takes only \"coeffs\"".into()));
        }
        let c = obj.get("coeffs").ok_or_else(|| Error::Parse("missing coeffs".into()))?;
        Self::new(poly_from_json(desc, c)?)
    }
}

impl BallMap for PolynomialMap {
    fn descriptor(&self) -> FieldDescriptor {
        self.desc
    }

    fn fraction(&self) -> (Poly<FieldElement>, Poly<FieldElement>) {
        (self.poly.clone(), Poly::constant(self.desc.one()))
    }

    /// `B(f(a), max_{i≥1}(iτ − v(c_i)))`; rigid points map to rigid points.
    fn image_of_ball(&self, x: &BerkovichPoint) -> Result<BerkovichPoint> {
        let a = x.center().ok_or_else(|| Error::InvalidPoint("image of infinity".into()))?;
        let Some(tau) = x.finite_tau() else {
            return Ok(BerkovichPoint::rigid(self.eval(a)));
        };
        let c = self.recenter(a);
        Ok(match envelope(c.coeffs(), &tau, 1) {
            None => BerkovichPoint::rigid(c.coeffs()[0].clone()),
            Some((t, _, _)) => BerkovichPoint::ball(c.coeffs()[0].clone(), t),
        })
    }

    /// Largest index attaining the envelope.
    fn local_degree(&self, x: &BerkovichPoint) -> Result<usize> {
        let (a, tau) = finite_ball(x)?;
        if self.is_constant() {
            return Err(Error::ConstantMap);
        }
        Ok(envelope(self.recenter(a).coeffs(), &tau, 1).unwrap().2)
    }

    fn directional_degree(&self, x: &BerkovichPoint, class: &DirectionClass) -> Result<usize> {
        PolynomialMap::directional_degree(self, x, class)
    }
}

/// `N/D` with coprime `N`, `D` and `D ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    num: Poly<FieldElement>,
    den: Poly<FieldElement>,
    desc: FieldDescriptor,
}

impl RationalMap {
    pub fn new(num: Poly<FieldElement>, den: Poly<FieldElement>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let desc = check_descriptor(&den)?;
        if !num.is_zero() && check_descriptor(&num)? != desc {
            return Err(Error::DescriptorMismatch);
        }
        if num.gcd(&den).degree() != Some(0) && !num.is_zero() {
            return Err(Error::NotCoprime);
        }
        Ok(RationalMap { num, den, desc })
    }

    pub fn num(&self) -> &Poly<FieldElement> {
        &self.num
    }

    pub fn den(&self) -> &Poly<FieldElement> {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    /// `None` at a pole.
    pub fn eval(&self, z: &FieldElement) -> Option<FieldElement> {
        let d = self.den.eval(z);
        (!d.is_zero()).then(|| self.num.eval(z) / d)
    }

    /// The denominator has no zero in the ball: after recentering its
    /// constant term strictly dominates.
    pub fn pole_free(&self, x: &BerkovichPoint) -> Result<bool> {
        let (a, tau) = finite_ball(x)?;
        let d = shift(&self.den, a);
        let Some(v0) = d.coeffs()[0].val() else { return Ok(false) };
        Ok(envelope(d.coeffs(), &tau, 1).is_none_or(|(m, _, _)| Rational::from_integer((-v0).into()) > m))
    }

    /// `E(z) = N(z)D(a) − N(a)D(z)`, so that `f(z) − f(a) = E(z)/(D(z)D(a))`.
    fn difference_numerator(&self, a: &FieldElement) -> (Poly<FieldElement>, FieldElement) {
        let da = self.den.eval(a);
        let na = self.num.eval(a);
        (&self.num.scale(&da) - &self.den.scale(&na), da)
    }

    pub fn to_json(&self) -> Value {
        json!({"num": poly_json(&self.num), "den": poly_json(&self.den)})
    }

    pub fn from_json(desc: FieldDescriptor, v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("rational map must be an object".into()))?;
        if obj.keys().any(|k| k != "num" && k != "den") {
            return Err(Error::Parse("rational map takes only \"num\" and \"den\"".into()));
        }
        let get = |k: &str| obj.get(k).ok_or_else(|| Error::Parse(format!("missing {k}")));
        Self::new(poly_from_json(desc, get("num")?)?, poly_from_json(desc, get("den")?)?)
    }

    /// Image of a type II ball containing a pole: substitute `z = a + π^{−τ}u`,
    /// pull out the contents of numerator and denominator, and read the
    /// image off the reduction when it is nonconstant.
    fn image_through_pole(&self, x: &BerkovichPoint) -> Result<BerkovichPoint> {
        let tau = x.type_ii_tau().map_err(|_| Error::PoleInBall(x.to_string()))?;
        let lin = Poly::new(vec![x.center().unwrap().clone(), self.desc.uniformizer_pow(-tau)]);
        let ns = self.num.compose(&lin);
        let ds = self.den.compose(&lin);
        let content = |f: &Poly<FieldElement>| f.coeffs().iter().filter_map(|c| c.val()).min();
        let (Some(mn), Some(md)) = (content(&ns), content(&ds)) else {
            return Err(Error::PoleInBall(x.to_string()));
        };
        let reduce = |f: &Poly<FieldElement>, m: i64| -> Result<Poly<ResidueElem>> {
            let u = self.desc.uniformizer_pow(-m);
            Ok(Poly::new(f.coeffs().iter().map(|c| (c * &u).residue()).collect::<Result<Vec<_>>>()?))
        };
        let r = ResidueRationalMap::new(reduce(&ns, mn)?, reduce(&ds, md)?, self.desc.residue_field())?;
        if r.degree() == 0 {
            return Err(Error::PoleInBall(x.to_string()));
        }
        Ok(BerkovichPoint::ball(self.desc.zero(), Rational::from_integer((md - mn).into())))
    }
}

impl From<PolynomialMap> for RationalMap {
    fn from(p: PolynomialMap) -> Self {
        RationalMap { num: p.poly, den: Poly::constant(p.desc.one()), desc: p.desc }
    }
}

impl BallMap for RationalMap {
    fn descriptor(&self) -> FieldDescriptor {
        self.desc
    }

    fn fraction(&self) -> (Poly<FieldElement>, Poly<FieldElement>) {
        (self.num.clone(), self.den.clone())
    }

    fn image_of_ball(&self, x: &BerkovichPoint) -> Result<BerkovichPoint> {
        let a = x.center().ok_or_else(|| Error::InvalidPoint("image of infinity".into()))?;
        let Some(tau) = x.finite_tau() else {
            return Ok(match self.eval(a) {
                Some(w) => BerkovichPoint::rigid(w),
                None => BerkovichPoint::infinity(),
            });
        };
        if !self.pole_free(x)? {
            return self.image_through_pole(x);
        }
        let (e, da) = self.difference_numerator(a);
        let fa = self.num.eval(a) / da.clone();
        let c = shift(&e, a);
        Ok(match envelope(c.coeffs(), &tau, 1) {
            None => BerkovichPoint::rigid(fa),
            Some((t, _, _)) => {
                let two_v = Rational::from_integer((2 * da.val().unwrap()).into());
                BerkovichPoint::ball(fa, t + two_v)
            }
        })
    }

    fn local_degree(&self, x: &BerkovichPoint) -> Result<usize> {
        let (a, tau) = finite_ball(x)?;
        if self.degree() == 0 {
            return Err(Error::ConstantMap);
        }
        if self.pole_free(x)? {
            let (e, _) = self.difference_numerator(a);
            return Ok(envelope(shift(&e, a).coeffs(), &tau, 1).ok_or(Error::ConstantMap)?.2);
        }
        x.type_ii_tau().map_err(|_| Error::PoleInBall(x.to_string()))?;
        Ok(self.reduction_map(x)?.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn padic(p: u32) -> FieldDescriptor {
        FieldDescriptor::padic(p).unwrap()
    }

    fn poly(d: FieldDescriptor, c: &[(i64, i64)]) -> PolynomialMap {
        PolynomialMap::from_coeffs(c.iter().map(|&(a, b)| d.ratio(a, b)).collect()).unwrap()
    }

    fn ball(d: FieldDescriptor, a: (i64, i64), tau: i64) -> BerkovichPoint {
        BerkovichPoint::ball(d.ratio(a.0, a.1), rat(tau, 1))
    }

    #[test]
    fn recentering() {
        let d = padic(2);
        let f = poly(d, &[(-1, 4), (0, 1), (1, 1)]);
        assert_eq!(f.recenter(&d.ratio(1, 2)), Poly::new(vec![d.zero(), d.one(), d.one()]));
        let g = poly(d, &[(0, 1), (0, 1), (0, 1), (1, 1)]);
        assert_eq!(g.recenter(&d.one()).coeffs(), &[d.one(), d.int(3), d.int(3), d.one()]);
    }

    #[test]
    fn ball_images() {
        let d = padic(2);
        let f = poly(d, &[(1, 4), (0, 1), (1, 1)]);
        let g = BerkovichPoint::gauss(d);
        assert_eq!(f.image_of_ball(&g).unwrap(), BerkovichPoint::ball(d.ratio(1, 4), rat(0, 1)));
        let h = poly(d, &[(-1, 4), (0, 1), (1, 1)]);
        let x = ball(d, (1, 2), 0);
        assert_eq!(h.image_of_ball(&x).unwrap(), g);
        assert_eq!(h.local_degree(&x).unwrap(), 2);
        let sq = poly(d, &[(0, 1), (0, 1), (1, 1)]);
        assert_eq!(sq.image_of_ball(&ball(d, (0, 1), 3)).unwrap(), ball(d, (0, 1), 6));
    }

    #[test]
    fn directional_degrees() {
        let d = padic(3);
        let sq = poly(d, &[(0, 1), (0, 1), (1, 1)]);
        let g = BerkovichPoint::gauss(d);
        let one = DirectionClass::Residue(d.residue_field().one());
        let zero = DirectionClass::Residue(d.residue_field().zero());
        assert_eq!(sq.directional_degree(&g, &one).unwrap(), 1);
        assert_eq!(sq.directional_degree(&g, &zero).unwrap(), 2);
        assert_eq!(sq.directional_degree(&g, &DirectionClass::Infinity).unwrap(), 2);
        let r = sq.reduction_map(&g).unwrap();
        assert_eq!(r.multiplicity(&one), 1);
    }

    #[test]
    fn reductions() {
        let lfp = FieldDescriptor::laurent_fp(2).unwrap();
        let t = lfp.uniformizer();
        let f = PolynomialMap::from_coeffs(vec![lfp.zero(), lfp.zero(), lfp.one(), t]).unwrap();
        let g = BerkovichPoint::gauss(lfp);
        assert_eq!(f.local_degree(&g).unwrap(), 2);
        assert_eq!(f.reduction_map(&g).unwrap(), ResidueRationalMap::monomial(lfp.residue_field(), 2));
        assert_eq!(f.inseparable_degree(&g).unwrap(), 2);
        let cube = PolynomialMap::from_coeffs(vec![lfp.zero(), lfp.zero(), lfp.zero(), lfp.one()]).unwrap();
        assert_eq!(cube.inseparable_degree(&g).unwrap(), 1);
        let d = padic(3);
        let h = poly(d, &[(0, 1), (1, 1), (3, 1)]);
        let g3 = BerkovichPoint::gauss(d);
        assert_eq!(h.reduction_map(&g3).unwrap(), ResidueRationalMap::monomial(d.residue_field(), 1));
    }

    #[test]
    fn derivative_norms() {
        let d3 = padic(3);
        let cube = poly(d3, &[(0, 1), (0, 1), (0, 1), (1, 1)]);
        assert_eq!(cube.derivative_sup_norm(&BerkovichPoint::gauss(d3)).unwrap(), LogValue::int(-1));
        let d2 = padic(2);
        let sq = poly(d2, &[(0, 1), (0, 1), (1, 1)]);
        assert_eq!(sq.derivative_sup_norm(&ball(d2, (0, 1), 1)).unwrap(), LogValue::int(0));
        assert_eq!(sq.derivative_sup_norm(&BerkovichPoint::gauss(d2)).unwrap(), LogValue::int(-1));
        let id = poly(d2, &[(0, 1), (1, 1)]);
        assert_eq!(id.derivative_sup_norm(&ball(d2, (5, 1), -3)).unwrap(), LogValue::zero());
    }

    #[test]
    fn rational_images() {
        let q = FieldDescriptor::laurent_q();
        let inv = RationalMap::new(Poly::constant(q.one()), Poly::new(vec![q.zero(), q.one()])).unwrap();
        let x = BerkovichPoint::ball(q.one(), rat(-1, 1));
        assert_eq!(inv.image_of_ball(&x).unwrap(), BerkovichPoint::ball(q.one(), rat(-1, 1)));
        assert_eq!(inv.local_degree(&x).unwrap(), 1);
        let g = BerkovichPoint::gauss(q);
        assert!(!inv.pole_free(&g).unwrap());
        assert_eq!(inv.image_of_ball(&g).unwrap(), g);
        assert_eq!(inv.local_degree(&g).unwrap(), 1);
        assert!(RationalMap::new(Poly::new(vec![q.zero(), q.one()]), Poly::new(vec![q.zero(), q.int(2)])).is_err());
    }
}
