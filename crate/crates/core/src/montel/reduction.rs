use serde::{Deserialize, Serialize};

use crate::analytic::{BallMap, RationalMap};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::log_value::LogValue;
use crate::residue::{classify_direction, OrbitBudget, OrbitClassification, OrbitVerdict, P1Point, ResidueRationalMap};
use crate::tree::{BerkovichPoint, DirectionClass};
use crate::Log;

/// Absolute precision kept while iterating rigid points.
const PRECISION: i64 = 64;
/// Iteration stops once a coordinate needs more bits than this.
const MAX_BITS: u64 = 1 << 14;

/// Predicted behaviour of `R^{n!}` on an open residue ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimitCase {
    /// The class is not preperiodic: `R^{n!} → x_g`.
    ToGauss,
    /// Preperiodic to a critical cycle: `R^{n!}` tends to a constant.
    ToConstant,
    /// Preperiodic to a noncritical cycle: eventually a fixed ball of some `R^N`.
    PeriodicBall,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodReductionReport {
    pub reduction: ResidueRationalMap,
    pub classification: OrbitClassification,
    pub case: LimitCase,
    pub samples: Vec<FieldElement>,
    /// Largest `n` for which `R^{n!}` was applied to every sample.
    pub verified_up_to: usize,
    /// `R̃^{n!}(ζ)` for `n = 1..=verified_up_to`.
    pub predicted: Vec<P1Point>,
    /// Residue classes of `R^{n!}(x)`, one row per sample.
    pub residues: Vec<Vec<P1Point>>,
    /// Chordal log-diameter of the iterated samples.
    pub diameters: Vec<Log>,
    /// Chordal `log δ(R^{n!}(x), x)` for the first sample.
    pub returns: Vec<Log>,
    /// Residues of the samples follow the residue orbit.
    pub equivariant: bool,
    pub holds: bool,
}

type P1 = Option<FieldElement>;

fn eval_p1(r: &RationalMap, z: &P1) -> P1 {
    match z {
        Some(z) => r.eval(z),
        None => {
            let (dn, dd) = (r.num().degree().unwrap_or(0), r.den().degree().unwrap_or(0));
            match dn.cmp(&dd) {
                std::cmp::Ordering::Greater => None,
                std::cmp::Ordering::Equal => {
                    Some(r.num().leading().unwrap().clone() / r.den().leading().unwrap().clone())
                }
                std::cmp::Ordering::Less => Some(r.descriptor().zero()),
            }
        }
    }
}

fn class_of(z: &P1) -> Result<P1Point> {
    match z {
        Some(z) if z.val().is_none_or(|v| v >= 0) => Ok(DirectionClass::Residue(z.residue()?)),
        _ => Ok(DirectionClass::Infinity),
    }
}

fn chordal(x: &P1, y: &P1) -> Log {
    let big = |z: &FieldElement| z.log_abs().max_of(LogValue::zero());
    match (x, y) {
        (Some(a), Some(b)) => (a - b).log_abs() - big(a) - big(b),
        (Some(a), None) | (None, Some(a)) => -big(a),
        (None, None) => LogValue::NegInf,
    }
}

fn has_good_reduction(r: &RationalMap) -> Result<bool> {
    let integral = r.num().coeffs().iter().chain(r.den().coeffs()).all(|c| c.val().is_none_or(|v| v >= 0));
    let g = BerkovichPoint::gauss(r.descriptor());
    Ok(integral && r.degree() >= 2 && r.image_of_ball(&g)? == g && r.local_degree(&g)? == r.degree())
}

/// Classifies the residue class `ζ` under the reduction of `R` and checks the
/// predicted behaviour of `R^{n!}` on rigid points of `B(ζ)` for `n ≤ n_max`
/// by direct iteration (`n_max ≤ 8`).
pub fn good_reduction_limit_probe(r: &RationalMap, zeta: &P1Point, n_max: usize) -> Result<GoodReductionReport> {
    if n_max > 8 {
        return Err(Error::InvalidParameters("n_max is capped at 8 (8! iterations)".into()));
    }
    if !has_good_reduction(r)? {
        return Err(Error::BadReduction);
    }
    let desc = r.descriptor();
    let g = BerkovichPoint::gauss(desc);
    let reduction = r.reduction_map(&g)?;
    let classification = classify_direction(&reduction, zeta, OrbitBudget::default());
    let case = match classification.verdict {
        OrbitVerdict::NonPreperiodic | OrbitVerdict::NonPreperiodicBudget => LimitCase::ToGauss,
        OrbitVerdict::PreperiodicCritical => LimitCase::ToConstant,
        OrbitVerdict::PreperiodicNoncritical => LimitCase::PeriodicBall,
    };
    let DirectionClass::Residue(z0) = zeta else {
        return Err(Error::InvalidParameters("samples are taken in finite residue classes".into()));
    };
    let base = desc.lift(z0);
    let samples: Vec<FieldElement> = (1..=3).map(|k| &base + &desc.uniformizer_pow(k)).collect();

    let mut pts: Vec<P1> = samples.iter().cloned().map(Some).collect();
    let mut res = zeta.clone();
    let mut steps = 0usize;
    let (mut predicted, mut diameters, mut returns) = (Vec::new(), Vec::new(), Vec::new());
    let mut residues = vec![Vec::new(); samples.len()];
    let mut verified_up_to = 0;
    'outer: for n in 1..=n_max {
        let target: usize = (1..=n).product();
        while steps < target {
            for p in pts.iter_mut() {
                *p = eval_p1(r, p).map(|z| z.truncate(PRECISION));
                if p.as_ref().is_some_and(|z| z.size_bits() > MAX_BITS) {
                    break 'outer;
                }
            }
            res = reduction.eval(&res);
            steps += 1;
        }
        verified_up_to = n;
        predicted.push(res.clone());
        for (row, p) in residues.iter_mut().zip(&pts) {
            row.push(class_of(p)?);
        }
        let mut d = LogValue::NegInf;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                d = d.max_of(chordal(&pts[i], &pts[j]));
            }
        }
        diameters.push(d);
        returns.push(chordal(&pts[0], &Some(samples[0].clone())));
    }

    let equivariant = residues.iter().all(|row| *row == predicted);
    let case_holds = match case {
        LimitCase::ToGauss => {
            (0..predicted.len()).all(|i| (i + 1..predicted.len()).all(|j| predicted[i] != predicted[j]))
        }
        LimitCase::ToConstant => {
            // Agreement below the working precision is indistinguishable from equality.
            let floor = LogValue::int(-PRECISION);
            diameters.windows(2).all(|w| w[1] <= w[0])
                && diameters.last().zip(diameters.first()).is_some_and(|(l, f)| l < f || *l <= floor)
        }
        LimitCase::PeriodicBall => {
            let period = classification.cycle.len();
            let pre = classification.prefix.len();
            match (1..=verified_up_to).find(|&n| n >= period && (1..=n).product::<usize>() >= pre) {
                Some(n0) => predicted[n0 - 1..].iter().all(|c| *c == predicted[n0 - 1]),
                None => false,
            }
        }
    };
    Ok(GoodReductionReport {
        reduction,
        classification,
        case,
        samples,
        verified_up_to,
        predicted,
        residues,
        diameters,
        returns,
        holds: equivariant && case_holds && verified_up_to > 0,
        equivariant,
    })
}
