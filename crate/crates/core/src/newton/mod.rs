//! Valuation polygons of entire series and the piecewise-affine dynamics
//! they induce on the ray `[0, ∞)`.
//!
//! For `f = Σ a_n z^n` the sup-norm on `B(0, τ)` has log
//! `φ(τ) = max_n (nτ − v(a_n))`, and `f` maps `B(0, τ)` onto `B(0, φ(τ))`
//! when `a_0 = 0`. Everything here is exact.

mod pl;
mod series;

pub use pl::PiecewiseAffineMap;
pub use series::{baker_coefficients, baker_ells, geometric_coefficients, TailBound, TruncatedEntireSeries};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::log_value::LogValue;
use crate::poly::Poly;
use crate::scalar::Scalar;

/// `φ(τ)`.
pub fn ray_image<S: Scalar>(phi: &PiecewiseAffineMap<S>, tau: &S) -> Result<S> {
    phi.eval(tau)
}

/// `τ₀, φ(τ₀), …, φ^m(τ₀)`, all of which must lie in the window.
pub fn iterate_ray<S: Scalar>(phi: &PiecewiseAffineMap<S>, tau0: &S, m: usize) -> Result<Vec<S>> {
    let mut orbit = vec![tau0.clone()];
    for i in 0..m {
        let cur = orbit.last().unwrap();
        let next = phi.eval(cur)?;
        if !phi.contains(&next) {
            return Err(Error::OrbitExitsWindow { last_valid: i });
        }
        orbit.push(next);
    }
    if orbit.len() > 1 && orbit[1] > orbit[0] {
        let last_valid = orbit.len() - 1;
        if !orbit.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::OrbitExitsWindow { last_valid });
        }
    }
    Ok(orbit)
}

/// Vertices `τ` of `φ` with `φ(τ) > τ`. Each one certifies that the Julia
/// set meets the closure of the circle `{|z| = e^τ}`.
pub fn julia_breakpoints<S: Scalar>(phi: &PiecewiseAffineMap<S>) -> Vec<(S, S)> {
    phi.vertices()
        .into_iter()
        .map(|t| {
            let y = phi.eval(&t).unwrap();
            (t, y)
        })
        .filter(|(t, y)| y > t)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JuliaRayPoint<S> {
    pub tau: S,
    /// Number of iterates needed to land on a breakpoint.
    pub m: usize,
    pub breakpoint: S,
}

/// Smallest `τ* > τ_x` (scanning `m = 0, 1, …` first) with `φ^m(τ*)` an
/// expanding breakpoint, found by pulling breakpoints back through `φ`.
pub fn find_julia_ray_point<S: Scalar>(
    phi: &PiecewiseAffineMap<S>,
    tau_x: &S,
    max_m: usize,
) -> Result<JuliaRayPoint<S>> {
    if !phi.is_increasing() {
        return Err(Error::InvalidParameters("ray dynamics needs f(0) = 0".into()));
    }
    let targets: Vec<S> = julia_breakpoints(phi).into_iter().map(|(t, _)| t).collect();
    let mut layer: Vec<(S, S)> = targets.iter().map(|t| (t.clone(), t.clone())).collect();
    for m in 0..=max_m {
        let best = layer.iter().filter(|(t, _)| t > tau_x).min_by(|a, b| a.0.cmp(&b.0));
        if let Some((t, b)) = best {
            return Ok(JuliaRayPoint { tau: t.clone(), m, breakpoint: b.clone() });
        }
        layer = layer.into_iter().filter_map(|(t, b)| phi.inverse(&t).ok().map(|s| (s, b))).collect();
        if layer.is_empty() {
            break;
        }
    }
    Err(Error::WindowExhausted)
}

/// For each of `cells` equal subintervals of `[lo, hi]`, the least `m ≤ max_m`
/// such that `φ^m` of the cell contains an expanding breakpoint.
pub fn julia_cell_hits<S: Scalar>(
    phi: &PiecewiseAffineMap<S>,
    lo: &S,
    hi: &S,
    cells: usize,
    max_m: usize,
) -> Vec<Option<usize>> {
    let targets: Vec<S> = julia_breakpoints(phi).into_iter().map(|(t, _)| t).collect();
    let width = (hi.clone() - lo.clone()) / S::from_int(cells as i64);
    (0..cells)
        .map(|i| {
            let mut a = lo.clone() + width.clone() * S::from_int(i as i64);
            let mut b = a.clone() + width.clone();
            for m in 0..=max_m {
                if targets.iter().any(|t| *t >= a && *t <= b) {
                    return Some(m);
                }
                match (phi.eval(&a), phi.eval(&b)) {
                    (Ok(x), Ok(y)) => {
                        a = x;
                        b = y;
                    }
                    _ => return None,
                }
            }
            None
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FixedPointKind {
    Attracting,
    Indifferent,
    Repelling,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointClass {
    pub kind: FixedPointKind,
    /// `v(f′(z₀))`, `+∞` for a superattracting point.
    pub multiplier_valuation: crate::Log,
    /// Iterates are normal near `z₀` exactly when `|f′(z₀)| ≤ 1`.
    pub normal: bool,
}

/// Classifies a fixed point by the valuation of its multiplier.
pub fn classify_fixed_point(f: &Poly<FieldElement>, z0: &FieldElement) -> Result<FixedPointClass> {
    if !f.eval(z0).try_sub(z0)?.is_zero() {
        return Err(Error::NotFixedPoint);
    }
    let v = f.derivative().eval(z0).valuation();
    let kind = match v.cmp(&LogValue::zero()) {
        std::cmp::Ordering::Greater => FixedPointKind::Attracting,
        std::cmp::Ordering::Equal => FixedPointKind::Indifferent,
        std::cmp::Ordering::Less => FixedPointKind::Repelling,
    };
    Ok(FixedPointClass { normal: v >= LogValue::zero(), kind, multiplier_valuation: v })
}

/// `f(z + z₀) − z₀`, which fixes the origin when `z₀` is fixed.
pub fn translate_to_origin(f: &Poly<FieldElement>, z0: &FieldElement) -> Poly<FieldElement> {
    let g = f.taylor_shift(z0);
    &g - &Poly::constant(z0.clone())
}

/// `a·ℓ_n + b·ℓ_{n+1}`, for checking endpoint identities without
/// plugging in numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
struct LinearForm<S> {
    a: S,
    b: S,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnulusStep<S> {
    pub n: usize,
    /// `A_n = (inner, outer)` in log-radius.
    pub inner: S,
    pub outer: S,
    pub image_inner: S,
    pub image_outer: S,
    pub slope: i64,
    /// `φ` is affine with slope `n + 1` on `A_n` and maps it onto `A_{n+1}`.
    pub maps_onto_next: bool,
    /// `(n+1)(ℓ_n − ℓ_{n+1}) + ℓ_{n+1} = ℓ_{n+1} − ℓ_{n+2}` as linear forms.
    pub identity_holds: bool,
    /// `ℓ_{n+1} < (n − 2)·ℓ_n`.
    pub growth_holds: bool,
}

/// Verifies `φ(A_n) = A_{n+1}` for the wandering annuli of
/// `f = Σ_{n≥5} λ^{ℓ_n} z^n` with `−v(λ) = scale`, for `n` in `n_lo..=n_hi`.
pub fn annuli_orbit<S: Scalar>(scale: S, l5: S, l6: S, n_lo: usize, n_hi: usize) -> Result<Vec<AnnulusStep<S>>> {
    if n_lo < 5 || n_lo > n_hi {
        return Err(Error::InvalidParameters(format!("range {n_lo}..={n_hi} must start at 5 or later")));
    }
    let series = TruncatedEntireSeries::baker(scale.clone(), l5.clone(), l6.clone(), n_hi + 3)?;
    let ells = baker_ells(&l5, &l6, n_hi + 4)?;
    let ell = |n: usize| ells[n - 5].clone();
    let tau = |n: usize| (ell(n) - ell(n + 1)) * scale.clone();
    let phi = series.valuation_polygon(tau(n_lo), tau(n_hi + 1))?;
    let vertices = phi.vertices();
    let mut out = Vec::new();
    for n in n_lo..=n_hi {
        let (inner, outer) = (tau(n), tau(n + 1));
        let image_inner = phi.eval(&inner)?;
        let image_outer = phi.eval(&outer)?;
        let mid = (inner.clone() + outer.clone()) / S::from_int(2);
        let slope = phi.slope_at(&mid)?;
        let no_corner_inside = !vertices.iter().any(|v| *v > inner && *v < outer);
        let maps_onto_next =
            slope == n as i64 + 1 && no_corner_inside && image_inner == tau(n + 1) && image_outer == tau(n + 2);
        let k = S::from_int(n as i64 + 1);
        // ℓ_{n+2} = (n+1)ℓ_{n+1} − (n+1)ℓ_n
        let next = LinearForm { a: -k.clone(), b: k.clone() };
        let lhs = LinearForm { a: k.clone(), b: S::one() - k.clone() };
        let rhs = LinearForm { a: -next.a.clone(), b: S::one() - next.b.clone() };
        out.push(AnnulusStep {
            n,
            inner,
            outer,
            image_inner,
            image_outer,
            slope,
            maps_onto_next,
            identity_holds: lhs == rhs,
            growth_holds: ell(n + 1) < S::from_int(n as i64 - 2) * ell(n),
        });
    }
    Ok(out)
}
