use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a supported prime power")]
    NotPrimePower(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    DescriptorMismatch,
    #[error("element has negative valuation {0}")]
    NegativeValuation(i64),
    #[error("residue field has {available} usable elements, {needed} needed")]
    ResidueFieldTooSmall { needed: usize, available: usize },
    #[error("not a square: {0}")]
    NonSquare(String),
    #[error("valuation {0} is odd")]
    OddValuation(i64),
    #[error("invalid precision: {0}")]
    InvalidPrecision(String),
    #[error("expected a type II point, got {0}")]
    NotTypeII(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("pole inside the ball {0}")]
    PoleInBall(String),
    #[error("numerator and denominator share a factor")]
    NotCoprime,
    #[error("map is constant")]
    ConstantMap,
    #[error("denominator does not split over the given poles")]
    NotSplit,
    #[error("only {available} witness classes available, {needed} needed")]
    NotEnoughWitnesses { needed: usize, available: usize },
    #[error("point is not interior to the affinoid: {0}")]
    NotInterior(String),
    #[error("invalid affinoid: {0}")]
    InvalidAffinoid(String),
    #[error("not a fixed point")]
    NotFixedPoint,
    #[error("window [{lo}, {hi}] is not certified by the tail bound at n = {n}")]
    UncertifiedWindow { lo: String, hi: String, n: usize },
    #[error("{0} lies outside the domain")]
    OutsideDomain(String),
    #[error("orbit leaves the window after index {last_valid}")]
    OrbitExitsWindow { last_valid: usize },
    #[error("window exhausted before a certificate was found")]
    WindowExhausted,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("map does not have good reduction")]
    BadReduction,
    #[error("square root obstruction at branch {address}: {detail}")]
    SquareRootObstruction { address: String, detail: String },
    #[error("image is not contained in the closed unit ball")]
    ImageNotInUnitBall,
    #[error("fiber not representable: {0}")]
    FiberNotRepresentable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::NotPrimePower(_) => "not_prime_power",
            Error::DivisionByZero => "division_by_zero",
            Error::DescriptorMismatch => "descriptor_mismatch",
            Error::NegativeValuation(_) => "negative_valuation",
            Error::ResidueFieldTooSmall { .. } => "residue_field_too_small",
            Error::NonSquare(_) => "non_square",
            Error::OddValuation(_) => "odd_valuation",
            Error::InvalidPrecision(_) => "invalid_precision",
            Error::NotTypeII(_) => "not_type_ii",
            Error::InvalidPoint(_) => "invalid_point",
            Error::PoleInBall(_) => "pole_in_ball",
            Error::NotCoprime => "not_coprime",
            Error::ConstantMap => "constant_map",
            Error::NotSplit => "not_split",
            Error::NotEnoughWitnesses { .. } => "not_enough_witnesses",
            Error::NotInterior(_) => "not_interior",
            Error::InvalidAffinoid(_) => "invalid_affinoid",
            Error::NotFixedPoint => "not_fixed_point",
            Error::UncertifiedWindow { .. } => "uncertified_window",
            Error::OutsideDomain(_) => "outside_domain",
            Error::OrbitExitsWindow { .. } => "orbit_exits_window",
            Error::WindowExhausted => "window_exhausted",
            Error::InvalidParameters(_) => "invalid_parameters",
            Error::BadReduction => "bad_reduction",
            Error::SquareRootObstruction { .. } => "square_root_obstruction",
            Error::ImageNotInUnitBall => "image_not_in_unit_ball",
            Error::FiberNotRepresentable(_) => "fiber_not_representable",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
