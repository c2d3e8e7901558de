use num_traits::ToPrimitive;

use super::PiecewiseAffineMap;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::log_value::LogValue;
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::Rational;

/// Lower bound on `v(a_n)` past the truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailBound<S> {
    /// The series is a polynomial.
    None,
    /// `v(a_n) = n(n−1)/2 · scale`.
    Geometric { scale: S },
    /// `v(a_n) = −ℓ_n · scale` with `ℓ_{n+2} = (n+1)(ℓ_{n+1} − ℓ_n)`.
    Baker { scale: S, l5: S, l6: S },
    /// `v(a_n) ≥ slope·n + intercept`.
    Affine { slope: S, intercept: S },
}

/// `ℓ_5, …, ℓ_{n_max}` from `ℓ_{n+2} = (n+1)(ℓ_{n+1} − ℓ_n)`.
pub fn baker_ells<S: Scalar>(l5: &S, l6: &S, n_max: usize) -> Result<Vec<S>> {
    if *l5 >= S::zero() {
        return Err(Error::InvalidParameters(format!("l5 = {l5} must be negative")));
    }
    if *l6 >= S::from_int(3) * l5.clone() {
        return Err(Error::InvalidParameters(format!("l6 = {l6} must be below 3·l5")));
    }
    let mut out = vec![l5.clone(), l6.clone()];
    for n in 5..n_max.saturating_sub(1) {
        let k = n - 5;
        let next = S::from_int(n as i64 + 1) * (out[k + 1].clone() - out[k].clone());
        out.push(next);
    }
    out.truncate(n_max.saturating_sub(4));
    Ok(out)
}

impl<S: Scalar> TailBound<S> {
    /// Bounds for `v(a_n)` with `n` in `from..=to`.
    fn values(&self, from: usize, to: usize) -> Result<Vec<LogValue<S>>> {
        let idx = |n: usize| S::from_int(n as i64);
        Ok(match self {
            TailBound::None => vec![LogValue::PosInf; to + 1 - from],
            TailBound::Geometric { scale } => (from..=to)
                .map(|n| LogValue::Finite(S::from_int((n * n.saturating_sub(1) / 2) as i64) * scale.clone()))
                .collect(),
            TailBound::Baker { scale, l5, l6 } => {
                let ells = baker_ells(l5, l6, to)?;
                (from..=to)
                    .map(
                        |n| {
                            if n < 5 {
                                LogValue::PosInf
                            } else {
                                LogValue::Finite(-ells[n - 5].clone() * scale.clone())
                            }
                        },
                    )
                    .collect()
            }
            TailBound::Affine { slope, intercept } => {
                (from..=to).map(|n| LogValue::Finite(slope.clone() * idx(n) + intercept.clone())).collect()
            }
        })
    }
}

/// Coefficient valuations `v(a_0), …, v(a_N)` of an entire series and a
/// closed-form bound on the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedEntireSeries<S> {
    vals: Vec<LogValue<S>>,
    tail: TailBound<S>,
}

impl<S: Scalar> TruncatedEntireSeries<S> {
    pub fn explicit(vals: Vec<LogValue<S>>, tail: TailBound<S>) -> Self {
        TruncatedEntireSeries { vals, tail }
    }

    /// `a_1 = 1`, `a_{n+1} = λ^{−n} a_n` with `−v(λ) = scale`, truncated at `n`.
    pub fn geometric(scale: S, n: usize) -> Self {
        let tail = TailBound::Geometric { scale };
        let mut vals = tail.values(0, n).unwrap();
        vals[0] = LogValue::PosInf;
        TruncatedEntireSeries { vals, tail }
    }

    /// `Σ_{k≥5} λ^{ℓ_k} z^k` with `−v(λ) = scale`, truncated at `n ≥ 5`.
    pub fn baker(scale: S, l5: S, l6: S, n: usize) -> Result<Self> {
        if n < 5 {
            return Err(Error::InvalidParameters("truncation order must be at least 5".into()));
        }
        let tail = TailBound::Baker { scale, l5, l6 };
        let vals = tail.values(0, n)?;
        Ok(TruncatedEntireSeries { vals, tail })
    }

    pub fn order(&self) -> usize {
        self.vals.len().saturating_sub(1)
    }

    pub fn vals(&self) -> &[LogValue<S>] {
        &self.vals
    }

    pub fn tail(&self) -> &TailBound<S> {
        &self.tail
    }

    fn lines(&self) -> Vec<(i64, S)> {
        self.vals.iter().enumerate().filter_map(|(n, v)| v.finite().map(|v| (n as i64, -v.clone()))).collect()
    }

    /// Checks that no term beyond the truncation can reach the polygon on
    /// `[lo, hi]`: every `n ≤ 4N` past `N` stays at least 1 below `φ(hi)`,
    /// and from `4N` on the tail grows faster than `hi` per step, which by
    /// convexity of the tail keeps all later terms lower still.
    pub fn certify(&self, lo: &S, hi: &S) -> Result<()> {
        let uncertified = |n: usize| Error::UncertifiedWindow { lo: lo.to_string(), hi: hi.to_string(), n };
        if lo > hi {
            return Err(Error::InvalidParameters(format!("empty window [{lo}, {hi}]")));
        }
        let lines = self.lines();
        if lines.is_empty() {
            return Err(Error::InvalidParameters("series has no nonzero coefficient".into()));
        }
        if self.tail == TailBound::None {
            return Ok(());
        }
        let top = lines.iter().map(|(n, b)| S::from_int(*n) * hi.clone() + b.clone()).max().unwrap();
        let n0 = self.order() + 1;
        let limit = (4 * self.order()).max(n0 + 8);
        let tail = self.tail.values(n0, limit + 1)?;
        let at = |n: usize| &tail[n - n0];
        for n in n0..=limit {
            if let LogValue::Finite(t) = at(n) {
                if S::from_int(n as i64) * hi.clone() - t.clone() > top.clone() - S::one() {
                    return Err(uncertified(n));
                }
            }
        }
        let step = |n: usize| match (at(n), at(n + 1)) {
            (LogValue::Finite(a), LogValue::Finite(b)) => Some(b.clone() - a.clone()),
            _ => None,
        };
        let mut prev: Option<S> = None;
        for n in n0..=limit {
            if let Some(d) = step(n) {
                if prev.as_ref().is_some_and(|p| d < *p) {
                    return Err(uncertified(n));
                }
                prev = Some(d);
            }
        }
        match step(limit) {
            Some(d) if d >= *hi => Ok(()),
            None => Ok(()),
            _ => Err(uncertified(limit + 1)),
        }
    }

    /// `φ(τ) = max_{n ≤ N}(nτ − v(a_n))` on a certified window.
    pub fn valuation_polygon(&self, lo: S, hi: S) -> Result<PiecewiseAffineMap<S>> {
        self.certify(&lo, &hi)?;
        PiecewiseAffineMap::upper_envelope(&self.lines(), lo, hi)
    }
}

impl TruncatedEntireSeries<Rational> {
    /// Valuations of a polynomial's coefficients, with no tail.
    pub fn from_poly(f: &Poly<FieldElement>) -> Self {
        TruncatedEntireSeries { vals: f.coeffs().iter().map(|c| c.valuation()).collect(), tail: TailBound::None }
    }
}

/// The degree-`n` truncation of `Σ a_j z^j`, `a_1 = 1`, `a_{j+1} = λ^{−j} a_j`.
pub fn geometric_coefficients(lambda: &FieldElement, n: usize) -> Result<Poly<FieldElement>> {
    let desc = lambda.descriptor();
    let inv = lambda.try_inv()?;
    let mut c = vec![desc.zero()];
    let mut a = desc.one();
    for j in 1..=n {
        c.push(a.clone());
        a = a.try_mul(&inv.pow(j as u64))?;
    }
    Ok(Poly::new(c))
}

/// The degree-`n` truncation of `Σ_{k≥5} λ^{ℓ_k} z^k`, for `n ≤ 10`.
pub fn baker_coefficients(lambda: &FieldElement, l5: i64, l6: i64, n: usize) -> Result<Poly<FieldElement>> {
    if n > 10 {
        return Err(Error::InvalidParameters("baker coefficients are materialized up to degree 10".into()));
    }
    let ells = baker_ells(&Rational::from_integer(l5.into()), &Rational::from_integer(l6.into()), n)?;
    let desc = lambda.descriptor();
    let inv = lambda.try_inv()?;
    let mut c = vec![desc.zero(); 5];
    for l in ells {
        let e = l.to_integer().to_i64().unwrap();
        c.push(if e >= 0 { lambda.pow(e as u64) } else { inv.pow(e.unsigned_abs()) });
    }
    Ok(Poly::new(c))
}
