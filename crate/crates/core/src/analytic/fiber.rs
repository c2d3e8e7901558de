use super::{BallMap, PolynomialMap};
use crate::error::{Error, Result};
use crate::field::{hensel_sqrt, FieldElement};
use crate::log_value::LogValue;
use crate::tree::{center_precision, BerkovichPoint};
use crate::Rational;

/// One connected component of a preimage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberBall {
    pub ball: BerkovichPoint,
    pub local_degree: usize,
    /// `f(ball)` is exactly the target ball.
    pub image_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSumReport {
    pub domain: BerkovichPoint,
    pub target: BerkovichPoint,
    pub balls: Vec<FiberBall>,
    pub sum: usize,
    pub domain_degree: usize,
    /// `sum == domain_degree` and every component maps onto the target.
    pub holds: bool,
}

/// The component of `f⁻¹(B(f(r), σ))` through `r`: `B(r, min_i (σ + v(c_i))/i)`
/// with `c_i` the coefficients of `f(r + u)`.
pub(crate) fn component(f: &PolynomialMap, r: &FieldElement, sigma: &Rational) -> BerkovichPoint {
    let c = f.recenter(r);
    let rho = c
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .filter_map(|(i, ci)| {
            ci.val().map(|v| (sigma + Rational::from_integer(v.into())) / Rational::from_integer(i.into()))
        })
        .min()
        .expect("nonconstant map");
    BerkovichPoint::ball(r.clone(), rho)
}

/// Points of the fiber over some rigid point of the target.
pub(crate) fn fiber_points(f: &PolynomialMap, target: &BerkovichPoint) -> Result<Vec<FieldElement>> {
    let (w, sigma) = (target.center().unwrap(), target.finite_tau().unwrap());
    let desc = f.descriptor();
    let c = f.poly().coeffs();
    match f.degree() {
        1 => Ok(vec![(w - &c[0]).try_div(&c[1])?]),
        2 => {
            if desc.characteristic() == 2 {
                return Err(Error::FiberNotRepresentable("cannot complete the square in characteristic 2".into()));
            }
            let two_a = &c[2] * &desc.int(2);
            let shift = c[1].try_div(&two_a)?;
            // f(z) = a(z + shift)² + crit
            let crit = &c[0] - &(&c[1] * &shift).try_div(&desc.int(2))?;
            let inside = |y: &FieldElement| (y - w).log_abs() <= LogValue::Finite(sigma.clone());
            if inside(&crit) {
                return Ok(vec![-shift]);
            }
            let k = center_precision(&sigma);
            let step = desc.uniformizer_pow(k);
            let tries = desc.prime().map_or(27, |p| (p as i64).pow(3));
            let va = c[2].val().unwrap();
            let mut prec = -&sigma - Rational::from_integer(va.into());
            for j in 0..tries {
                let y = w + &(desc.int(j) * &step);
                let x = (&y - &crit).try_div(&c[2])?;
                // Enough precision that f(root) stays in the target.
                if let Some(vx) = x.val() {
                    let floor = Rational::from_integer((vx + 1).into());
                    if prec < floor {
                        prec = floor;
                    }
                }
                let Ok(s) = hensel_sqrt(&x, &LogValue::Finite(prec.clone())) else { continue };
                let roots = vec![&s - &shift, -&s - &shift];
                if roots.iter().all(|r| inside(&f.eval(r))) {
                    return Ok(roots);
                }
            }
            Err(Error::FiberNotRepresentable(format!("no square found among {tries} target points")))
        }
        d if c[..d].iter().all(|ci| ci.is_zero()) => {
            if target.leq(&BerkovichPoint::ball(desc.zero(), sigma.clone()))
                || w.log_abs() <= LogValue::Finite(sigma.clone())
            {
                Ok(vec![desc.zero()])
            } else {
                Err(Error::FiberNotRepresentable(format!("degree {d} monomial over a ball missing 0")))
            }
        }
        d => Err(Error::FiberNotRepresentable(format!("degree {d} polynomial"))),
    }
}

/// Sums local degrees over the components of `f⁻¹(target)` inside `domain`
/// and compares with the local degree at `domain`. Handles linear maps,
/// quadratics outside characteristic 2, and monomials over balls around 0.
pub fn degree_sum_check(
    f: &PolynomialMap,
    domain: &BerkovichPoint,
    target: &BerkovichPoint,
) -> Result<DegreeSumReport> {
    if f.is_constant() {
        return Err(Error::ConstantMap);
    }
    let sigma = target
        .finite_tau()
        .ok_or_else(|| Error::InvalidPoint(format!("target {target} is not a ball of finite radius")))?;
    let image = f.image_of_ball(domain)?;
    if !target.leq(&image) {
        return Err(Error::OutsideDomain(format!("target {target} is not inside f({domain}) = {image}")));
    }
    let mut balls: Vec<FiberBall> = Vec::new();
    for r in fiber_points(f, target)? {
        let ball = component(f, &r, &sigma);
        if !ball.leq(domain) || balls.iter().any(|b| b.ball == ball) {
            continue;
        }
        let local_degree = f.local_degree(&ball)?;
        let image_matches = f.image_of_ball(&ball)? == *target;
        balls.push(FiberBall { ball, local_degree, image_matches });
    }
    let sum = balls.iter().map(|b| b.local_degree).sum();
    let domain_degree = f.local_degree(domain)?;
    Ok(DegreeSumReport {
        domain: domain.clone(),
        target: target.clone(),
        holds: sum == domain_degree && balls.iter().all(|b| b.image_matches),
        balls,
        sum,
        domain_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, FieldDescriptor};

    fn square(d: crate::FieldDescriptor) -> PolynomialMap {
        PolynomialMap::from_coeffs(vec![d.zero(), d.zero(), d.one()]).unwrap()
    }

    #[test]
    fn squaring_splits_or_ramifies() {
        let d = FieldDescriptor::padic(3).unwrap();
        let f = square(d);
        let g = BerkovichPoint::gauss(d);
        // B(1, −1) pulls back to B(±1, −1).
        let r = degree_sum_check(&f, &g, &BerkovichPoint::ball(d.one(), rat(-1, 1))).unwrap();
        assert_eq!(r.balls.len(), 2);
        assert!(r.holds);
        // B(0, −2) pulls back to B(0, −1) with degree 2.
        let r = degree_sum_check(&f, &g, &BerkovichPoint::ball(d.zero(), rat(-2, 1))).unwrap();
        assert_eq!(
            r.balls,
            vec![FiberBall { ball: BerkovichPoint::ball(d.zero(), rat(-1, 1)), local_degree: 2, image_matches: true }]
        );
        // 2 is not a square mod 3, but B(2, −1) ⊂ Gauss pulls back through some other center.
        let r = degree_sum_check(&f, &g, &BerkovichPoint::gauss(d)).unwrap();
        assert!(r.holds);
        assert!(degree_sum_check(&f, &BerkovichPoint::ball(d.zero(), rat(-1, 1)), &g).is_err());
    }

    #[test]
    fn linear_and_characteristic_two() {
        let d = FieldDescriptor::padic(5).unwrap();
        let f = PolynomialMap::from_coeffs(vec![d.int(2), d.int(5)]).unwrap();
        let r = degree_sum_check(&f, &BerkovichPoint::gauss(d), &BerkovichPoint::ball(d.int(7), rat(-3, 1))).unwrap();
        assert_eq!(r.sum, 1);
        assert!(r.holds);
        let l = FieldDescriptor::laurent_fp(2).unwrap();
        assert!(matches!(
            degree_sum_check(&square(l), &BerkovichPoint::gauss(l), &BerkovichPoint::ball(l.one(), rat(-1, 1))),
            Err(Error::FiberNotRepresentable(_))
        ));
    }
}
