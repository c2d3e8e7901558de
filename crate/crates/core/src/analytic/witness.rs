use rand::Rng;

use super::{envelope, BallMap, RationalMap};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::log_value::LogValue;
use crate::tree::{center_precision, BerkovichPoint};
use crate::{Log, Rational};

/// Up to `count` points `a + r̂·π^{−τ}` for nonzero residues `r` whose open
/// residue class at `x` contains no pole of `f`.
pub fn witnesses(f: &RationalMap, x: &BerkovichPoint, count: usize) -> Result<Vec<FieldElement>> {
    let tau = x.type_ii_tau()?;
    let desc = f.descriptor();
    let a = x.center().unwrap();
    let step = desc.uniformizer_pow(-tau);
    let t = Rational::from_integer(tau.into());
    // At most deg D classes hold a pole.
    let scan = count + f.den().degree().unwrap_or(0) + 1;
    let field = desc.residue_field();
    let limit = field.order().map_or(scan, |q| (q as usize).min(scan + 1));
    let mut out = Vec::new();
    for r in field.first_elements(limit).into_iter().skip(1) {
        if out.len() == count {
            break;
        }
        let z = a + &(desc.lift(&r) * &step);
        let d = f.den().taylor_shift(&z);
        // A zero in the open class shows up as a positive smallest attaining index.
        let pole_inside = match envelope(d.coeffs(), &t, 0) {
            Some((_, lo, _)) => lo > 0,
            None => false,
        };
        if !pole_inside {
            out.push(z);
        }
    }
    Ok(out)
}

/// `max_{i<j} log|f(ζ_i) − f(ζ_j)|` over `D + 2` witnesses (at least `D + 1`
/// are required), which recovers the log-diameter of `f(x)`.
pub fn diam_via_witnesses(f: &RationalMap, x: &BerkovichPoint) -> Result<Log> {
    let d = f.degree();
    let zs = witnesses(f, x, d + 2)?;
    if zs.len() < d + 1 {
        return Err(Error::NotEnoughWitnesses { needed: d + 1, available: zs.len() });
    }
    let vals: Vec<FieldElement> = zs.iter().map(|z| f.eval(z).expect("witness classes are pole-free")).collect();
    let mut best = LogValue::NegInf;
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            best = best.max_of((&vals[i] - &vals[j]).log_abs());
        }
    }
    Ok(best)
}

/// `n` rigid points of the ball of `x`: `a + π^k(c_0 + c_1π + c_2π²)` with
/// `k = ⌈−τ⌉` and small random integers `c_i`.
pub fn rigid_sample<R: Rng>(x: &BerkovichPoint, n: usize, rng: &mut R) -> Result<Vec<FieldElement>> {
    let (Some(a), Some(tau)) = (x.center(), x.finite_tau()) else {
        return Err(Error::InvalidPoint(format!("cannot sample {x}")));
    };
    let desc = a.descriptor();
    let k = center_precision(&tau);
    Ok((0..n)
        .map(|_| {
            let mut z = a.clone();
            for j in 0..3 {
                let c = desc.int(rng.gen_range(0..10));
                z = &z + &(c * desc.uniformizer_pow(k + j));
            }
            z
        })
        .collect())
}

/// Smallest point above the images of the given rigid points.
pub fn sampled_image<M: BallMap>(f: &M, points: &[FieldElement]) -> Result<BerkovichPoint> {
    let mut acc: Option<BerkovichPoint> = None;
    for z in points {
        let y = f.image_of_ball(&BerkovichPoint::rigid(z.clone()))?;
        if y.is_infinity() {
            return Err(Error::PoleInBall(z.to_string()));
        }
        acc = Some(match acc {
            None => y,
            Some(p) => p.join(&y),
        });
    }
    acc.ok_or_else(|| Error::InvalidParameters("empty sample".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::PolynomialMap;
    use crate::poly::Poly;
    use crate::{rat, FieldDescriptor};
    use rand::SeedableRng;

    #[test]
    fn witness_diameters_match_images() {
        let q = FieldDescriptor::laurent_q();
        let sq: RationalMap = PolynomialMap::from_coeffs(vec![q.zero(), q.zero(), q.one()]).unwrap().into();
        let g = BerkovichPoint::gauss(q);
        assert_eq!(witnesses(&sq, &g, 4).unwrap(), vec![q.int(1), q.int(2), q.int(3), q.int(4)]);
        assert_eq!(diam_via_witnesses(&sq, &g).unwrap(), LogValue::zero());
        let shift: RationalMap = PolynomialMap::from_coeffs(vec![q.int(5), q.one()]).unwrap().into();
        let x = BerkovichPoint::ball(q.uniformizer(), rat(-3, 1));
        assert_eq!(diam_via_witnesses(&shift, &x).unwrap(), LogValue::int(-3));
        let inv = RationalMap::new(Poly::constant(q.one()), Poly::new(vec![q.zero(), q.one()])).unwrap();
        let y = BerkovichPoint::ball(q.one(), rat(-1, 1));
        assert_eq!(diam_via_witnesses(&inv, &y).unwrap(), LogValue::int(-1));
        assert_eq!(diam_via_witnesses(&inv, &g).unwrap(), LogValue::zero());
    }

    #[test]
    fn small_residue_fields_run_out() {
        let d = FieldDescriptor::padic(2).unwrap();
        let sq: RationalMap = PolynomialMap::from_coeffs(vec![d.zero(), d.zero(), d.one()]).unwrap().into();
        assert!(matches!(
            diam_via_witnesses(&sq, &BerkovichPoint::gauss(d)),
            Err(Error::NotEnoughWitnesses { needed: 3, available: 1 })
        ));
    }

    #[test]
    fn samples_stay_inside() {
        let d = FieldDescriptor::padic(3).unwrap();
        let x = BerkovichPoint::ball(d.int(2), rat(-2, 1));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for z in rigid_sample(&x, 20, &mut rng).unwrap() {
            assert!(BerkovichPoint::rigid(z).leq(&x));
        }
    }
}
