use crate::analytic::{component, fiber_points, BallMap, PolynomialMap};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::tree::{center_precision, BerkovichPoint};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CantorBall {
    pub ball: BerkovichPoint,
    /// Index of `P_c(ball)` in the previous level.
    pub image: usize,
    /// Dot-separated branch choices from the start ball.
    pub address: String,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CantorReport {
    pub start: BerkovichPoint,
    /// `levels[k]` holds the components of `P_c^{−k}(start)`.
    pub levels: Vec<Vec<CantorBall>>,
    pub counts: Vec<usize>,
    /// First level with more than one ball.
    pub separation_level: Option<usize>,
    /// One ball before separation, doubling from there on.
    pub counts_ok: bool,
    pub disjoint_ok: bool,
    /// `P_c(ball)` equals the recorded ball of the previous level.
    pub images_ok: bool,
    /// Every ball lies inside a ball of the previous level.
    pub nesting_ok: bool,
    /// Local degrees over each parent sum to 2.
    pub degree_sums_ok: bool,
    /// Length of the itineraries that were compared.
    pub itinerary_depth: usize,
    pub itineraries_checked: usize,
    /// Rigid itineraries agree with the ball itineraries of their level.
    pub itineraries_ok: bool,
    /// The itinerary of `P_c(z)` is the shifted itinerary of `z`.
    pub shift_ok: bool,
    pub words_distinct: bool,
    pub holds: bool,
}

/// Index of the separation-level ball containing `y`.
fn symbol(y: &BerkovichPoint, tops: &[BerkovichPoint]) -> Option<usize> {
    tops.iter().position(|u| y.leq(u))
}

/// Symbols of `y, f(y), …` for `len` steps, following images of balls or
/// rigid points.
fn itinerary(f: &PolynomialMap, y: &BerkovichPoint, tops: &[BerkovichPoint], len: usize) -> Result<Option<Vec<usize>>> {
    let mut out = Vec::with_capacity(len);
    let mut cur = y.clone();
    for _ in 0..len {
        match symbol(&cur, tops) {
            Some(s) => out.push(s),
            None => return Ok(None),
        }
        cur = f.image_of_ball(&cur)?;
    }
    Ok(Some(out))
}

/// Builds the tree of preimages of `B(0, −v(c)/2)` under `P_c(z) = z² + c`
/// down to `depth` levels and checks the coding of the Julia set by the two
/// balls at the separation level.
pub fn cantor_coding(c: &FieldElement, depth: usize) -> Result<CantorReport> {
    let desc = c.descriptor();
    let p = desc
        .prime()
        .filter(|_| desc.characteristic() == 0)
        .ok_or_else(|| Error::InvalidParameters("Cantor coding needs a p-adic field".into()))?;
    let v = c.val().ok_or_else(|| Error::InvalidParameters("|c| < 4".into()))?;
    // |c| = p^{−v} ≥ 4
    if v >= 0 || (p as f64).powi(-v as i32) < 4.0 {
        return Err(Error::InvalidParameters(format!("|c| = {p}^{} < 4", -v)));
    }
    if depth == 0 || depth > 12 {
        return Err(Error::InvalidParameters("depth must be in 1..=12".into()));
    }
    let f = PolynomialMap::from_coeffs(vec![c.clone(), desc.zero(), desc.one()])?;
    let start = BerkovichPoint::ball(desc.zero(), Rational::new((-v).into(), 2.into()));
    let mut levels = vec![vec![CantorBall { ball: start.clone(), image: 0, address: String::new(), degree: 1 }]];
    let mut images_ok = true;
    let mut degree_sums_ok = true;
    for _ in 1..=depth {
        let prev = levels.last().unwrap();
        let mut next = Vec::new();
        for (i, parent) in prev.iter().enumerate() {
            let sigma = parent.ball.finite_tau().unwrap();
            let roots = fiber_points(&f, &parent.ball).map_err(|e| match e {
                Error::FiberNotRepresentable(detail) => {
                    Error::SquareRootObstruction { address: parent.address.clone(), detail }
                }
                other => other,
            })?;
            let mut children: Vec<BerkovichPoint> = Vec::new();
            for r in &roots {
                let b = component(&f, r, &sigma);
                if !children.contains(&b) {
                    children.push(b);
                }
            }
            let mut sum = 0;
            for (j, ball) in children.into_iter().enumerate() {
                images_ok &= f.image_of_ball(&ball)? == parent.ball;
                let degree = f.local_degree(&ball)?;
                sum += degree;
                let address = if parent.address.is_empty() { j.to_string() } else { format!("{}.{j}", parent.address) };
                next.push(CantorBall { ball, image: i, address, degree });
            }
            degree_sums_ok &= sum == 2;
        }
        levels.push(next);
    }

    let counts: Vec<usize> = levels.iter().map(|l| l.len()).collect();
    let separation_level = counts.iter().position(|&n| n > 1);
    let counts_ok = separation_level
        .is_some_and(|s| counts.iter().enumerate().all(|(k, &n)| if k < s { n == 1 } else { n == 1 << (k - s + 1) }));
    let disjoint_ok = levels.iter().all(|l| {
        (0..l.len()).all(|i| (i + 1..l.len()).all(|j| !l[i].ball.leq(&l[j].ball) && !l[j].ball.leq(&l[i].ball)))
    });
    let nesting_ok = levels.windows(2).all(|w| w[1].iter().all(|b| w[0].iter().any(|a| b.ball.leq(&a.ball))));

    let mut report = CantorReport {
        start,
        counts,
        separation_level,
        counts_ok,
        disjoint_ok,
        images_ok,
        nesting_ok,
        degree_sums_ok,
        itinerary_depth: 0,
        itineraries_checked: 0,
        itineraries_ok: false,
        shift_ok: false,
        words_distinct: false,
        holds: false,
        levels: Vec::new(),
    };
    if let Some(s) = separation_level {
        let tops: Vec<BerkovichPoint> = levels[s].iter().map(|b| b.ball.clone()).collect();
        let deepest = levels.last().unwrap();
        let len = depth - s + 1;
        let mut ok = true;
        let mut shift = true;
        let mut words = Vec::new();
        let mut checked = 0;
        for x in deepest {
            let word = itinerary(&f, &x.ball, &tops, len)?;
            let image = f.image_of_ball(&x.ball)?;
            let shifted = itinerary(&f, &image, &tops, len.saturating_sub(1))?;
            let a = x.ball.center().unwrap();
            let k = center_precision(&x.ball.finite_tau().unwrap());
            for z in [a.clone(), a + &desc.uniformizer_pow(k)] {
                let rigid = itinerary(&f, &BerkovichPoint::rigid(z), &tops, len)?;
                ok &= rigid.is_some() && rigid == word;
                shift &= match (&rigid, &shifted) {
                    (Some(r), Some(t)) => r[1..] == t[..],
                    _ => false,
                };
                checked += 1;
            }
            words.push(word);
        }
        let mut sorted = words.clone();
        sorted.sort();
        sorted.dedup();
        report.itinerary_depth = len;
        report.itineraries_checked = checked;
        report.itineraries_ok = ok;
        report.shift_ok = shift;
        report.words_distinct = sorted.len() == words.len();
    }
    report.holds = report.counts_ok
        && report.disjoint_ok
        && report.images_ok
        && report.nesting_ok
        && report.degree_sums_ok
        && report.itineraries_ok
        && report.shift_ok
        && report.words_distinct;
    report.levels = levels;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, FieldDescriptor};

    #[test]
    fn three_sixteenths() {
        let d = FieldDescriptor::padic(2).unwrap();
        let r = cantor_coding(&d.ratio(3, 16), 4).unwrap();
        assert_eq!(r.start, BerkovichPoint::ball(d.zero(), rat(2, 1)));
        assert_eq!(r.levels[1][0].ball, BerkovichPoint::ball(d.ratio(1, 4), rat(1, 1)));
        assert_eq!(r.levels[1][0].degree, 2);
        let l2: Vec<_> = r.levels[2].iter().map(|b| b.ball.clone()).collect();
        assert!(l2.contains(&BerkovichPoint::ball(d.ratio(1, 4), rat(0, 1))));
        assert!(l2.contains(&BerkovichPoint::ball(d.ratio(-1, 4), rat(0, 1))));
        assert_eq!(r.counts, vec![1, 1, 2, 4, 8]);
        assert_eq!(r.separation_level, Some(2));
        assert!(r.holds, "{r:?}");
    }

    #[test]
    fn small_parameters_are_rejected() {
        let d = FieldDescriptor::padic(2).unwrap();
        assert!(cantor_coding(&d.ratio(1, 2), 3).is_err());
        assert!(cantor_coding(&FieldDescriptor::laurent_q().int(5), 3).is_err());
    }

    #[test]
    fn boundary_parameter_never_separates() {
        let d = FieldDescriptor::padic(2).unwrap();
        let r = cantor_coding(&d.ratio(1, 4), 4).unwrap();
        assert_eq!(r.separation_level, None);
        assert!(!r.holds);
    }
}
