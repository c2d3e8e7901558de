//! Exact arithmetic for non-archimedean dynamics on the Berkovich
//! projective line.
//!
//! Log-radii follow the convention `τ = −v`: the ball `B(a, τ)` is
//! `{z : v(z − a) ≥ −τ}`, the Gauss point is `B(0, 0)` and rigid points have
//! `τ = −∞`. All quantities are exact rationals.
//!
//! ```
//! use berkovich::analytic::{BallMap, PolynomialMap};
//! use berkovich::{rat, BerkovichPoint, FieldDescriptor};
//!
//! let d = FieldDescriptor::padic(3)?;
//! let f = PolynomialMap::from_coeffs(vec![d.zero(), d.zero(), d.one()])?;
//! let x = BerkovichPoint::ball(d.one(), rat(-1, 1));
//! assert_eq!(f.image_of_ball(&x)?, BerkovichPoint::ball(d.one(), rat(-1, 1)));
//! assert_eq!(f.local_degree(&BerkovichPoint::gauss(d))?, 2);
//! # Ok::<(), berkovich::Error>(())
//! ```

pub mod analytic;
pub mod error;
pub mod field;
pub mod log_value;
pub mod montel;
pub mod newton;
pub mod poly;
pub mod residue;
pub mod scalar;
pub mod tree;

pub use error::{Error, Result};
pub use field::{
    distinct_residue_sequence, hensel_sqrt, FieldDescriptor, FieldElement, FieldKind, ResidueElem, ResidueField,
};
pub use log_value::LogValue;
pub use poly::Poly;
pub use scalar::{Coefficient, Scalar};
pub use tree::{BerkovichPoint, Direction, DirectionClass, PointKind};

/// Exact rationals used for log-radii and valuation polygons.
pub type Rational = num_rational::BigRational;
/// Extended log-values over [`Rational`].
pub type Log = LogValue<Rational>;
/// Piecewise-affine maps over [`Rational`].
pub type PlMap = newton::PiecewiseAffineMap<Rational>;

/// `a / b` as a [`Rational`].
pub fn rat(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}
