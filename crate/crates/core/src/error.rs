use alloc::string::String;
use core::fmt;

use crate::series::Exponent;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Leading coefficient of a series has no inverse in its ring.
    ZeroLeadingCoefficient,
    /// The operation needs a finite truncation order.
    UnboundedPrecision,
    /// The coefficient ring cannot represent `e^{2πi x}` for this `x`.
    UnsupportedRoot(Exponent),
    /// Expected a strictly positive rational.
    NonPositive(Exponent),
    /// `τ` must satisfy `Im τ > 0`.
    NotInUpperHalfPlane,
    /// Matrix entries do not have determinant one.
    DeterminantNotOne(i64),
    InvalidWeight(String),
    InvalidArgument(String),
    DimensionMismatch(String),
    NotPositiveDefinite,
    EvenLattice,
    RankTooLarge { rank: usize, cap: usize },
    NotAnAutomorphism(String),
    NotSimple(String),
    /// No invertible homogeneous intertwiner exists.
    NoIntertwiner,
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroLeadingCoefficient => write!(f, "leading coefficient is not invertible"),
            Error::UnboundedPrecision => write!(f, "series has no finite truncation order"),
            Error::UnsupportedRoot(x) => {
                write!(f, "coefficient ring cannot represent e^(2 pi i * {x})")
            }
            Error::NonPositive(x) => write!(f, "expected a positive rational, got {x}"),
            Error::NotInUpperHalfPlane => write!(f, "tau must lie in the upper half plane"),
            Error::DeterminantNotOne(d) => write!(f, "determinant is {d}, expected 1"),
            Error::InvalidWeight(s) => write!(f, "invalid weight: {s}"),
            Error::InvalidArgument(s) => write!(f, "invalid argument: {s}"),
            Error::DimensionMismatch(s) => write!(f, "dimension mismatch: {s}"),
            Error::NotPositiveDefinite => write!(f, "Gram matrix is not positive definite"),
            Error::EvenLattice => write!(f, "lattice is even; the parity twist is trivial"),
            Error::RankTooLarge { rank, cap } => {
                write!(f, "lattice rank {rank} exceeds enumeration cap {cap}")
            }
            Error::NotAnAutomorphism(s) => write!(f, "not an automorphism: {s}"),
            Error::NotSimple(s) => write!(f, "superalgebra data incomplete: {s}"),
            Error::NoIntertwiner => write!(f, "no invertible homogeneous intertwiner exists"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
        }
    }
}
impl core::error::Error for Error {}
