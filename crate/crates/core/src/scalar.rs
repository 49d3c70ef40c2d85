//! The two coefficient rings: exact rationals and complex floats.

use core::f64::consts::PI;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{Float, One, ToPrimitive, Zero};

pub use num_complex::Complex64;

use crate::series::Exponent;

pub type Rational = num_rational::BigRational;

/// Relative magnitude below which complex coefficients are dropped from a
/// series, measured against the largest coefficient at or below the same
/// exponent.
pub const COMPLEX_CANONICAL_EPS: f64 = 1e-14;

/// A commutative coefficient ring usable inside a [`PuiseuxSeries`].
///
/// [`PuiseuxSeries`]: crate::series::PuiseuxSeries
pub trait Scalar: Clone + Debug + PartialEq + Send + Sync + 'static {
    /// `true` for the exact rational ring.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;

    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn try_inv(&self) -> Option<Self>;

    /// Exact zero test (no tolerance).
    fn is_zero(&self) -> bool;
    fn magnitude(&self) -> f64;
    fn to_complex(&self) -> Complex64;

    /// `e^{2πi x}` when the ring can represent it.
    fn root_of_unity(x: &Exponent) -> Option<Self>;

    /// Equality tolerance of the ring: zero for exact rationals.
    fn tolerance() -> f64;

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if Self::EXACT && tol == 0.0 {
            self == other
        } else {
            self.sub_ref(other).magnitude() <= tol
        }
    }

    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        rhs.try_inv().map(|inv| self.mul_ref(&inv))
    }
}

/// Which coefficient ring a series lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientRing {
    ExactRational,
    ComplexFloat,
}

impl CoefficientRing {
    pub fn of<C: Scalar>() -> Self {
        if C::EXACT {
            CoefficientRing::ExactRational
        } else {
            CoefficientRing::ComplexFloat
        }
    }

    pub fn tolerance(self) -> f64 {
        match self {
            CoefficientRing::ExactRational => 0.0,
            CoefficientRing::ComplexFloat => COMPLEX_CANONICAL_EPS,
        }
    }
}

/// Fractional part of an exponent, in `[0, 1)`.
pub fn frac(x: &Exponent) -> Exponent {
    x - x.floor()
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        rational_to_f64(self).abs()
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
    fn root_of_unity(x: &Exponent) -> Option<Self> {
        let f = frac(x);
        if f.is_zero() {
            Some(<Self as One>::one())
        } else if f == Exponent::new(1, 2) {
            Some(-<Self as One>::one())
        } else {
            None
        }
    }
    fn tolerance() -> f64 {
        0.0
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(rational_to_f64(r), 0.0)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        if self.norm() == 0.0 {
            None
        } else {
            Some(self.inv())
        }
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn root_of_unity(x: &Exponent) -> Option<Self> {
        Some(unit(&frac(x)))
    }
    fn tolerance() -> f64 {
        COMPLEX_CANONICAL_EPS
    }
}

/// `e^{2πi x}` for rational `x`, with exact values on the quarter turns.
pub fn unit(x: &Exponent) -> Complex64 {
    let f = frac(x);
    let (n, d) = (*f.numer(), *f.denom());
    match (n, d) {
        (0, _) => Complex64::new(1.0, 0.0),
        (1, 2) => Complex64::new(-1.0, 0.0),
        (1, 4) => Complex64::new(0.0, 1.0),
        (3, 4) => Complex64::new(0.0, -1.0),
        _ => cis(2.0 * PI * (n as f64) / (d as f64)),
    }
}

/// `e^{iθ}`.
pub fn cis(theta: f64) -> Complex64 {
    Complex64::new(Float::cos(theta), Float::sin(theta))
}

/// `e^{2πi z}` for complex `z`.
pub fn e2pi(z: Complex64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * PI) * z).exp()
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Huge numerator/denominator: scale both down by a common power of two.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(900);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

pub fn exponent_to_f64(e: &Exponent) -> f64 {
    *e.numer() as f64 / *e.denom() as f64
}

pub fn exponent_to_rational(e: &Exponent) -> Rational {
    Rational::new(BigInt::from(*e.numer()), BigInt::from(*e.denom()))
}

/// Converts a rational with machine-sized parts back to an [`Exponent`].
pub fn rational_to_exponent(r: &Rational) -> Option<Exponent> {
    Some(Exponent::new(r.numer().to_i64()?, r.denom().to_i64()?))
}
