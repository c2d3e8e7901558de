use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A continuous piecewise-affine function on a closed window `[lo, hi]`
/// given as the upper envelope of lines `τ ↦ nτ + b` with integer slopes.
///
/// Besides the interior breakpoints it remembers the outer slopes at the
/// window ends: the smallest slope attaining the envelope at `lo` and the
/// largest attaining it at `hi`. An endpoint counts as a vertex when its
/// outer slope differs from the adjacent interior slope, so restricting a
/// polygon to a window never hides a corner sitting on its boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseAffineMap<S> {
    lo: S,
    hi: S,
    knots: Vec<S>,
    slopes: Vec<i64>,
    values: Vec<S>,
    lower_slope: i64,
    upper_slope: i64,
}

impl<S: Scalar> PiecewiseAffineMap<S> {
    /// Upper envelope of `τ ↦ n·τ + b` over `[lo, hi]`.
    pub fn upper_envelope(lines: &[(i64, S)], lo: S, hi: S) -> Result<Self> {
        if lines.is_empty() {
            return Err(Error::InvalidParameters("no lines".into()));
        }
        if lo > hi {
            return Err(Error::InvalidParameters(format!("empty window [{lo}, {hi}]")));
        }
        let at = |t: &S| -> (S, i64, i64) {
            let mut best: Option<(S, i64, i64)> = None;
            for (n, b) in lines {
                let y = S::from_int(*n) * t.clone() + b.clone();
                best = match best {
                    None => Some((y, *n, *n)),
                    Some((by, lo_n, hi_n)) => {
                        if y > by {
                            Some((y, *n, *n))
                        } else if y == by {
                            Some((by, lo_n.min(*n), hi_n.max(*n)))
                        } else {
                            Some((by, lo_n, hi_n))
                        }
                    }
                }
            }
            best.unwrap()
        };
        let (v_lo, lower_slope, mut cur) = at(&lo);
        let (v_hi, _, upper_slope) = at(&hi);
        if lo == hi {
            return Ok(PiecewiseAffineMap {
                lo: lo.clone(),
                hi,
                knots: vec![],
                slopes: vec![upper_slope],
                values: vec![v_lo.clone(), v_lo],
                lower_slope,
                upper_slope,
            });
        }
        let intercept = |n: i64| -> S { lines.iter().filter(|(m, _)| *m == n).map(|(_, b)| b.clone()).max().unwrap() };
        let mut knots = Vec::new();
        let mut slopes = vec![cur];
        let mut values = vec![v_lo];
        let mut t = lo.clone();
        loop {
            let b = intercept(cur);
            // First crossing to the right by a steeper line; ties go to the steepest.
            let mut next: Option<(S, i64)> = None;
            for (m, c) in lines.iter().filter(|(m, _)| *m > cur) {
                let x = (b.clone() - c.clone()) / S::from_int(m - cur);
                if x <= t {
                    continue;
                }
                next = match next {
                    Some((nx, nm)) if nx < x || (nx == x && nm >= *m) => Some((nx, nm)),
                    _ => Some((x, *m)),
                };
            }
            match next {
                Some((x, m)) if x < hi => {
                    values.push(S::from_int(cur) * x.clone() + b);
                    knots.push(x.clone());
                    slopes.push(m);
                    t = x;
                    cur = m;
                }
                _ => break,
            }
        }
        values.push(v_hi);
        Ok(PiecewiseAffineMap { lo, hi, knots, slopes, values, lower_slope, upper_slope })
    }

    pub fn lo(&self) -> &S {
        &self.lo
    }

    pub fn hi(&self) -> &S {
        &self.hi
    }

    /// Interior breakpoints.
    pub fn knots(&self) -> &[S] {
        &self.knots
    }

    /// One slope per piece.
    pub fn slopes(&self) -> &[i64] {
        &self.slopes
    }

    /// Values at `lo`, each knot, and `hi`.
    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn outer_slopes(&self) -> (i64, i64) {
        (self.lower_slope, self.upper_slope)
    }

    pub fn contains(&self, t: &S) -> bool {
        *t >= self.lo && *t <= self.hi
    }

    fn piece(&self, t: &S) -> usize {
        self.knots.partition_point(|k| k <= t)
    }

    fn start(&self, i: usize) -> &S {
        if i == 0 {
            &self.lo
        } else {
            &self.knots[i - 1]
        }
    }

    pub fn eval(&self, t: &S) -> Result<S> {
        if !self.contains(t) {
            return Err(Error::OutsideDomain(t.to_string()));
        }
        let i = self.piece(t);
        Ok(self.values[i].clone() + S::from_int(self.slopes[i]) * (t.clone() - self.start(i).clone()))
    }

    /// Right slope at `t`, or the last slope at `hi`.
    pub fn slope_at(&self, t: &S) -> Result<i64> {
        if !self.contains(t) {
            return Err(Error::OutsideDomain(t.to_string()));
        }
        Ok(self.slopes[self.piece(t).min(self.slopes.len() - 1)])
    }

    pub fn is_convex(&self) -> bool {
        self.slopes.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_increasing(&self) -> bool {
        self.slopes.iter().all(|&s| s > 0)
    }

    /// Points where the function is not locally affine, endpoints included
    /// when the envelope bends there.
    pub fn vertices(&self) -> Vec<S> {
        let mut out = Vec::new();
        if self.lower_slope != self.slopes[0] {
            out.push(self.lo.clone());
        }
        out.extend(self.knots.iter().cloned());
        if self.upper_slope != *self.slopes.last().unwrap() {
            out.push(self.hi.clone());
        }
        out
    }

    /// The unique `t` with `φ(t) = y`, for a strictly increasing map.
    pub fn inverse(&self, y: &S) -> Result<S> {
        if !self.is_increasing() {
            return Err(Error::InvalidParameters("map is not strictly increasing".into()));
        }
        if *y < self.values[0] || y > self.values.last().unwrap() {
            return Err(Error::OutsideDomain(y.to_string()));
        }
        let i = self.values.partition_point(|v| v <= y).saturating_sub(1).min(self.slopes.len() - 1);
        Ok(self.start(i).clone() + (y.clone() - self.values[i].clone()) / S::from_int(self.slopes[i]))
    }

    /// `(t, φ(t))` at every breakpoint, both window ends, and piece midpoints.
    pub fn samples(&self) -> Vec<(S, S)> {
        let two = S::from_int(2);
        let mut ends = vec![self.lo.clone()];
        ends.extend(self.knots.iter().cloned());
        ends.push(self.hi.clone());
        let mut out = Vec::new();
        for (i, w) in ends.windows(2).enumerate() {
            out.push((w[0].clone(), self.values[i].clone()));
            if w[0] != w[1] {
                let mid = (w[0].clone() + w[1].clone()) / two.clone();
                let y = self.eval(&mid).unwrap();
                out.push((mid, y));
            }
        }
        out.push((self.hi.clone(), self.values.last().unwrap().clone()));
        out
    }
}

impl<S: Scalar> fmt::Display for PiecewiseAffineMap<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)?;
        for (i, s) in self.slopes.iter().enumerate() {
            write!(f, " {}..slope {s}", self.start(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(a: i64) -> Q {
        Q::from_integer(a)
    }

    #[test]
    fn envelope_of_two_lines() {
        // max(τ, 2τ − 1) on [0, 3]
        let f = PiecewiseAffineMap::upper_envelope(&[(1, q(0)), (2, q(-1))], q(0), q(3)).unwrap();
        assert_eq!(f.knots(), &[q(1)]);
        assert_eq!(f.slopes(), &[1, 2]);
        assert_eq!(f.eval(&Q::new(3, 2)).unwrap(), q(2));
        assert_eq!(f.inverse(&q(5)).unwrap(), q(3));
        assert_eq!(f.vertices(), vec![q(1)]);
    }

    #[test]
    fn corner_on_window_end_is_a_vertex() {
        let f = PiecewiseAffineMap::upper_envelope(&[(1, q(0)), (2, q(-1))], q(0), q(1)).unwrap();
        assert!(f.knots().is_empty());
        assert_eq!(f.vertices(), vec![q(1)]);
        let g = PiecewiseAffineMap::upper_envelope(&[(1, q(0)), (2, q(-1))], q(1), q(2)).unwrap();
        assert_eq!(g.vertices(), vec![q(1)]);
    }

    #[test]
    fn single_line() {
        let f = PiecewiseAffineMap::upper_envelope(&[(3, q(0))], q(-2), q(2)).unwrap();
        assert!(f.vertices().is_empty());
        assert_eq!(f.eval(&q(1)).unwrap(), q(3));
        assert!(f.eval(&q(5)).is_err());
    }
}
