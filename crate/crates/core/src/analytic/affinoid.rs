use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::{BallMap, PolynomialMap};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, ResidueElem};
use crate::log_value::LogValue;
use crate::newton::PiecewiseAffineMap;
use crate::tree::BerkovichPoint;
use crate::{Log, Rational};

/// A closed ball with finitely many open balls removed, given by its
/// boundary points. The largest boundary point is the outer boundary; every
/// other one `B(a_j, τ_j)` removes the open ball `{v(z − a_j) > −τ_j}`
/// around its canonical center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affinoid {
    outer: BerkovichPoint,
    holes: Vec<BerkovichPoint>,
}

/// Which tangent direction at a point another point lies in.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Side {
    Up,
    Down(Option<ResidueElem>),
}

fn side(v: &BerkovichPoint, y: &BerkovichPoint) -> Side {
    if !y.leq(v) {
        return Side::Up;
    }
    match v.direction_to(y) {
        Ok(d) => match d.class() {
            crate::DirectionClass::Residue(r) => Side::Down(Some(r.clone())),
            crate::DirectionClass::Infinity => Side::Up,
        },
        // A type III point has a single downward direction.
        Err(_) => Side::Down(None),
    }
}

impl Affinoid {
    pub fn new(boundary: Vec<BerkovichPoint>) -> Result<Self> {
        if boundary.is_empty() {
            return Err(Error::InvalidAffinoid("no boundary points".into()));
        }
        if let Some(p) = boundary.iter().find(|p| p.finite_tau().is_none()) {
            return Err(Error::InvalidAffinoid(format!("{p} is not a ball of finite radius")));
        }
        let outer = boundary
            .iter()
            .find(|p| boundary.iter().all(|q| q.leq(p)))
            .cloned()
            .ok_or_else(|| Error::InvalidAffinoid("no boundary point contains all others".into()))?;
        let mut holes: Vec<BerkovichPoint> = Vec::new();
        for p in boundary.into_iter().filter(|p| *p != outer) {
            if holes.contains(&p) {
                return Err(Error::InvalidAffinoid(format!("{p} listed twice")));
            }
            holes.push(p);
        }
        let y = Affinoid { outer, holes };
        for (j, h) in y.holes.iter().enumerate() {
            for (k, g) in y.holes.iter().enumerate() {
                if j != k && y.in_hole(j, g) {
                    return Err(Error::InvalidAffinoid(format!("{g} lies in the hole at {h}")));
                }
            }
        }
        Ok(y)
    }

    /// A closed ball.
    pub fn ball(outer: BerkovichPoint) -> Result<Self> {
        Self::new(vec![outer])
    }

    pub fn outer(&self) -> &BerkovichPoint {
        &self.outer
    }

    pub fn holes(&self) -> &[BerkovichPoint] {
        &self.holes
    }

    pub fn boundary(&self) -> Vec<BerkovichPoint> {
        std::iter::once(self.outer.clone()).chain(self.holes.iter().cloned()).collect()
    }

    fn in_hole(&self, j: usize, y: &BerkovichPoint) -> bool {
        let h = &self.holes[j];
        let (Some(a), Some(t), Some(c)) = (h.center(), h.finite_tau(), y.center()) else {
            return false;
        };
        y.tau() < LogValue::Finite(t.clone()) && (c - a).log_abs() < LogValue::Finite(t)
    }

    pub fn contains(&self, y: &BerkovichPoint) -> bool {
        y.leq(&self.outer) && (0..self.holes.len()).all(|j| !self.in_hole(j, y))
    }

    pub fn is_interior(&self, y: &BerkovichPoint) -> bool {
        self.contains(y) && y != &self.outer && !self.holes.contains(y)
    }

    /// Number of tangent directions at `v` that contain boundary points.
    pub fn val(&self, v: &BerkovichPoint) -> usize {
        let sides: BTreeSet<Side> = self.boundary().iter().filter(|b| *b != v).map(|b| side(v, b)).collect();
        sides.len()
    }

    /// Joins of pairs of boundary points that are not themselves boundary points.
    pub fn branch_points(&self) -> Vec<BerkovichPoint> {
        let b = self.boundary();
        let mut out: Vec<BerkovichPoint> = Vec::new();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let p = b[i].join(&b[j]);
                if !b.contains(&p) && !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({"boundary": self.boundary().iter().map(|p| p.to_json()).collect::<Vec<_>>()})
    }

    pub fn from_json(desc: FieldDescriptor, v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("affinoid must be an object".into()))?;
        if obj.keys().any(|k| k != "boundary") {
            return Err(Error::Parse("affinoid takes only \"boundary\"".into()));
        }
        let pts = obj
            .get("boundary")
            .and_then(|b| b.as_array())
            .ok_or_else(|| Error::Parse("boundary must be a list".into()))?;
        Self::new(pts.iter().map(|p| BerkovichPoint::from_json(desc, p)).collect::<Result<_>>()?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FastArcReport {
    /// Vertices from `x₀` up to the outer boundary point.
    pub arc: Vec<BerkovichPoint>,
    /// Local degree on each segment between consecutive vertices.
    pub segment_degrees: Vec<usize>,
    /// `τ(f(v))` at every vertex.
    pub image_taus: Vec<Log>,
    /// `val_Y` at every vertex but the last.
    pub val_y: Vec<usize>,
    pub c: Rational,
    /// `1/∏ val_Y` over the branch points of the skeleton.
    pub skeleton_c: Rational,
    pub start_degree: usize,
    pub boundary_degree: usize,
    /// `deg_{x′} f ≥ C·deg_{x₀} f`.
    pub bound_holds: bool,
    pub image_increasing: bool,
    pub degrees_monotone: bool,
}

/// The arc from `x₀` straight up to the outer boundary. For a polynomial the
/// upward direction maps to the direction of infinity with directional
/// degree equal to the local degree, the largest possible, so each step is
/// fast.
pub fn fast_arc(f: &PolynomialMap, y: &Affinoid, x0: &BerkovichPoint) -> Result<FastArcReport> {
    if f.is_constant() {
        return Err(Error::ConstantMap);
    }
    x0.type_ii_tau()?;
    if !y.is_interior(x0) {
        return Err(Error::NotInterior(x0.to_string()));
    }
    let top = y.outer();
    let t0 = x0.finite_tau().unwrap();
    let t1 = top.finite_tau().unwrap();
    let mut taus: BTreeSet<Rational> = [t0.clone(), t1.clone()].into_iter().collect();
    for h in y.holes() {
        let j = x0.join(h);
        if x0.lt(&j) && j.lt(top) {
            taus.insert(j.finite_tau().unwrap());
        }
    }
    let c = f.recenter(x0.center().unwrap());
    let lines: Vec<(i64, Rational)> = c
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .filter_map(|(i, ci)| ci.val().map(|v| (i as i64, Rational::from_integer((-v).into()))))
        .collect();
    let polygon = PiecewiseAffineMap::upper_envelope(&lines, t0, t1)?;
    taus.extend(polygon.knots().iter().cloned());
    let arc: Vec<BerkovichPoint> = taus.iter().map(|t| x0.ancestor(LogValue::Finite(t.clone()))).collect();
    let two = Rational::from_integer(2.into());
    let segment_degrees = taus
        .iter()
        .zip(taus.iter().skip(1))
        .map(|(a, b)| f.local_degree(&x0.ancestor(LogValue::Finite((a + b) / &two))))
        .collect::<Result<Vec<_>>>()?;
    let image_taus = arc.iter().map(|v| f.image_of_ball(v).map(|p| p.tau())).collect::<Result<Vec<_>>>()?;
    let val_y: Vec<usize> = arc[..arc.len() - 1].iter().map(|v| y.val(v)).collect();
    let inv_product = |vals: &mut dyn Iterator<Item = usize>| {
        let p: usize = vals.product();
        Rational::new(1.into(), p.max(1).into())
    };
    let c_inst = inv_product(&mut val_y.iter().copied());
    let skeleton_c = inv_product(&mut y.branch_points().iter().map(|v| y.val(v)));
    let start_degree = f.local_degree(x0)?;
    let boundary_degree = f.local_degree(top)?;
    Ok(FastArcReport {
        bound_holds: Rational::from_integer(boundary_degree.into())
            >= &c_inst * Rational::from_integer(start_degree.into()),
        image_increasing: image_taus.windows(2).all(|w| w[0] < w[1]),
        degrees_monotone: segment_degrees.windows(2).all(|w| w[0] <= w[1]),
        arc,
        segment_degrees,
        image_taus,
        val_y,
        c: c_inst,
        skeleton_c,
        start_degree,
        boundary_degree,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBoundSample {
    pub point: BerkovichPoint,
    pub degree: usize,
    pub c: Rational,
    /// `deg_x f ≤ max_{∂Y} deg / C`.
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBoundReport {
    pub boundary_max: usize,
    pub samples: Vec<DegreeBoundSample>,
    pub all_hold: bool,
}

/// Checks `deg_x f ≤ (1/C)·max_{ξ∈∂Y} deg_ξ f` at each sample, with `C`
/// taken from the sample's fast arc.
pub fn degree_bound_check(f: &PolynomialMap, y: &Affinoid, samples: &[BerkovichPoint]) -> Result<DegreeBoundReport> {
    let boundary_max =
        y.boundary().iter().map(|b| f.local_degree(b)).collect::<Result<Vec<_>>>()?.into_iter().max().unwrap();
    let mut out = Vec::new();
    for x in samples {
        let arc = fast_arc(f, y, x)?;
        let degree = arc.start_degree;
        let holds = Rational::from_integer(degree.into()) * &arc.c <= Rational::from_integer(boundary_max.into());
        out.push(DegreeBoundSample { point: x.clone(), degree, c: arc.c, holds });
    }
    Ok(DegreeBoundReport { boundary_max, all_hold: out.iter().all(|s| s.holds), samples: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn monomial_arc() {
        let d = FieldDescriptor::padic(3).unwrap();
        let f = PolynomialMap::from_coeffs(vec![d.zero(), d.zero(), d.zero(), d.one()]).unwrap();
        let y = Affinoid::ball(BerkovichPoint::ball(d.zero(), rat(1, 1))).unwrap();
        let g = BerkovichPoint::gauss(d);
        let r = fast_arc(&f, &y, &g).unwrap();
        assert_eq!(r.arc, vec![g.clone(), y.outer().clone()]);
        assert_eq!(r.segment_degrees, vec![3]);
        assert_eq!((r.c.clone(), r.boundary_degree), (rat(1, 1), 3));
        assert!(r.bound_holds && r.image_increasing);
        assert!(fast_arc(&f, &y, y.outer()).is_err());
        let rep = degree_bound_check(&f, &y, &[g]).unwrap();
        assert!(rep.all_hold);
    }

    #[test]
    fn shifted_quadratic_arc() {
        let d = FieldDescriptor::padic(2).unwrap();
        let f = PolynomialMap::from_coeffs(vec![d.ratio(-1, 4), d.zero(), d.one()]).unwrap();
        let y = Affinoid::ball(BerkovichPoint::ball(d.zero(), rat(2, 1))).unwrap();
        let x0 = BerkovichPoint::ball(d.ratio(1, 2), rat(0, 1));
        let r = fast_arc(&f, &y, &x0).unwrap();
        assert_eq!(r.arc.last().unwrap(), y.outer());
        assert_eq!(r.boundary_degree, 2);
        assert!(r.bound_holds);
    }

    #[test]
    fn holes_and_valence() {
        let d = FieldDescriptor::padic(3).unwrap();
        let outer = BerkovichPoint::ball(d.zero(), rat(1, 1));
        let h1 = BerkovichPoint::ball(d.one(), rat(-1, 1));
        let h2 = BerkovichPoint::ball(d.int(2), rat(-1, 1));
        let y = Affinoid::new(vec![h1.clone(), outer.clone(), h2.clone()]).unwrap();
        let g = BerkovichPoint::gauss(d);
        assert_eq!(y.val(&g), 3);
        assert!(y.is_interior(&g));
        assert!(!y.contains(&BerkovichPoint::rigid(d.int(10))));
        assert!(y.contains(&BerkovichPoint::rigid(d.int(3))));
        let f = PolynomialMap::from_coeffs(vec![d.zero(), d.one(), d.one()]).unwrap();
        let x0 = BerkovichPoint::ball(d.zero(), rat(-2, 1));
        let r = fast_arc(&f, &y, &x0).unwrap();
        assert!(r.arc.contains(&g));
        assert_eq!(r.c, rat(1, 3));
        assert_eq!(r.skeleton_c, rat(1, 3));
        assert!(Affinoid::new(vec![outer, h1, BerkovichPoint::ball(d.one(), rat(-3, 1))]).is_err());
    }
}
