use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{frac, unit, Complex64, Scalar};
use crate::series::Exponent;

/// `e^{2πi a/b}` with `0 <= a < b`, stored as the reduced fraction `a/b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootOfUnity {
    turn: Exponent,
}

impl RootOfUnity {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if b <= 0 {
            return Err(Error::InvalidArgument("root of unity denominator must be positive".into()));
        }
        Ok(Self::from_turn(Exponent::new(a, b)))
    }

    /// `e^{2πi x}` for any rational `x`.
    pub fn from_turn(x: Exponent) -> Self {
        RootOfUnity { turn: frac(&x) }
    }

    pub fn one() -> Self {
        RootOfUnity { turn: Exponent::zero() }
    }

    /// `-1`.
    pub fn minus_one() -> Self {
        RootOfUnity { turn: Exponent::new(1, 2) }
    }

    /// The fraction `a/b ∈ [0, 1)`.
    pub fn turn(&self) -> Exponent {
        self.turn
    }

    pub fn numerator(&self) -> i64 {
        *self.turn.numer()
    }

    pub fn order(&self) -> i64 {
        *self.turn.denom()
    }

    pub fn is_one(&self) -> bool {
        self.turn.is_zero()
    }

    /// The coset representative `ε ∈ (−1, 0]` with `e^{2πiε}` equal to this root.
    pub fn epsilon(&self) -> Exponent {
        if self.turn.is_zero() {
            Exponent::zero()
        } else {
            self.turn - Exponent::one()
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        Self::from_turn(self.turn * Exponent::from_integer(n))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_turn(self.turn + other.turn)
    }

    pub fn inv(&self) -> Self {
        Self::from_turn(-self.turn)
    }

    pub fn to_complex(&self) -> Complex64 {
        unit(&self.turn)
    }

    /// The value in a coefficient ring, if representable there.
    pub fn value<C: Scalar>(&self) -> Result<C> {
        C::root_of_unity(&self.turn).ok_or(Error::UnsupportedRoot(self.turn))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.turn.is_zero() {
            write!(f, "1")
        } else if self.turn == Exponent::new(1, 2) {
            write!(f, "-1")
        } else {
            write!(f, "e({})", self.turn)
        }
    }
}

/// The pair `(μ, λ)` of `g`- and `h`-eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwistPair {
    pub mu: RootOfUnity,
    pub lambda: RootOfUnity,
}

impl TwistPair {
    pub fn new(mu: RootOfUnity, lambda: RootOfUnity) -> Self {
        TwistPair { mu, lambda }
    }

    /// The pair `(e^{2πi x}, e^{2πi y})`.
    pub fn from_turns(x: Exponent, y: Exponent) -> Self {
        TwistPair { mu: RootOfUnity::from_turn(x), lambda: RootOfUnity::from_turn(y) }
    }

    pub fn trivial() -> Self {
        TwistPair { mu: RootOfUnity::one(), lambda: RootOfUnity::one() }
    }

    pub fn is_trivial(&self) -> bool {
        self.mu.is_one() && self.lambda.is_one()
    }

    /// `1` exactly when `μ = 1` and `λ ≠ 1`.
    pub fn delta_indicator(&self) -> u8 {
        u8::from(self.mu.is_one() && !self.lambda.is_one())
    }

    /// `(μ^a λ^c, μ^b λ^d)`.
    pub fn act(&self, a: i64, b: i64, c: i64, d: i64) -> Self {
        TwistPair {
            mu: self.mu.pow(a).mul(&self.lambda.pow(c)),
            lambda: self.mu.pow(b).mul(&self.lambda.pow(d)),
        }
    }
}

impl fmt::Display for TwistPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.mu, self.lambda)
    }
}
