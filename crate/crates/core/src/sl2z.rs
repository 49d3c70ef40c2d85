//! The modular group, its actions, and the fractional-weight slash operator.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{Float, Signed};

use crate::error::{Error, Result};
use crate::modforms::TwistPair;
use crate::scalar::{Complex64, Scalar};
use crate::series::{Exponent, PuiseuxSeries};

/// An element `(a b; c d)` of SL₂(ℤ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModularMatrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl ModularMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a * d - b * c;
        if det != 1 {
            return Err(Error::DeterminantNotOne(det));
        }
        Ok(ModularMatrix { a, b, c, d })
    }

    pub fn identity() -> Self {
        ModularMatrix { a: 1, b: 0, c: 0, d: 1 }
    }

    /// `S = (0 −1; 1 0)`, `τ ↦ −1/τ`.
    pub fn s() -> Self {
        ModularMatrix { a: 0, b: -1, c: 1, d: 0 }
    }

    /// `T = (1 1; 0 1)`, `τ ↦ τ + 1`.
    pub fn t() -> Self {
        ModularMatrix { a: 1, b: 1, c: 0, d: 1 }
    }

    pub fn entries(&self) -> (i64, i64, i64, i64) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let (e, f, g, h) = (rhs.a, rhs.b, rhs.c, rhs.d);
        ModularMatrix { a: a * e + b * g, b: a * f + b * h, c: c * e + d * g, d: c * f + d * h }
    }

    pub fn inverse(&self) -> Self {
        ModularMatrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { *self };
        (0..n.unsigned_abs()).fold(Self::identity(), |acc, _| acc.compose(&base))
    }

    /// Upper-triangular `±(1 n; 0 1)`: returns `n` when the matrix is `T^n`.
    pub fn translation(&self) -> Option<i64> {
        (self.c == 0 && self.a == 1 && self.d == 1).then_some(self.b)
    }

    /// `cτ + d`.
    pub fn j(&self, tau: Complex64) -> Complex64 {
        tau * self.c as f64 + self.d as f64
    }

    /// `(aτ + b)/(cτ + d)`.
    pub fn act_on_tau(&self, tau: Complex64) -> Result<Complex64> {
        if !tau.im.is_positive() {
            return Err(Error::NotInUpperHalfPlane);
        }
        Ok((tau * self.a as f64 + self.b as f64) / self.j(tau))
    }

    /// The right action `(μ, λ)·A = (μ^a λ^c, μ^b λ^d)`.
    pub fn act_on_twist_pair(&self, tw: &TwistPair) -> TwistPair {
        tw.act(self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for ModularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Self::s() {
            f.write_str("S")
        } else if *self == Self::t() {
            f.write_str("T")
        } else {
            write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
        }
    }
}

impl FromStr for ModularMatrix {
    type Err = Error;

    /// Accepts `"S"`, `"T"`, `"I"`, words in those letters such as `"ST"`,
    /// and explicit entries `"a,b,c,d"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if !s.is_empty() && s.chars().all(|c| matches!(c, 'S' | 'T' | 'I')) {
            return Ok(s.chars().fold(Self::identity(), |acc, c| {
                acc.compose(&match c {
                    'S' => Self::s(),
                    'T' => Self::t(),
                    _ => Self::identity(),
                })
            }));
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        match parts.as_slice() {
            [a, b, c, d] => Self::new(*a, *b, *c, *d),
            _ => Err(Error::Parse("expected S, T or a,b,c,d".to_string())),
        }
    }
}

/// A rational weight `k` with a branch denominator `K`, `kK ∈ ℤ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlashWeight {
    k: Exponent,
    big_k: i64,
}

impl SlashWeight {
    pub fn new(k: Exponent, big_k: i64) -> Result<Self> {
        if big_k <= 0 {
            return Err(Error::InvalidWeight("K must be positive".to_string()));
        }
        if !(k * Exponent::from_integer(big_k)).is_integer() {
            return Err(Error::InvalidWeight(alloc::format!("{k}·{big_k} is not an integer")));
        }
        Ok(SlashWeight { k, big_k })
    }

    /// Smallest admissible `K`, the denominator of `k`.
    pub fn from_weight(k: Exponent) -> Self {
        SlashWeight { k, big_k: *k.denom() }
    }

    pub fn integer(k: i64) -> Self {
        SlashWeight { k: Exponent::from_integer(k), big_k: 1 }
    }

    pub fn k(&self) -> Exponent {
        self.k
    }

    pub fn big_k(&self) -> i64 {
        self.big_k
    }
}

/// `(cτ+d)^{−k}` with `(cτ+d)^{1/K}` the principal root, argument in `(−π/K, π/K]`.
pub fn automorphy_factor(m: &ModularMatrix, tau: Complex64, w: &SlashWeight) -> Result<Complex64> {
    if !tau.im.is_positive() {
        return Err(Error::NotInUpperHalfPlane);
    }
    let j = m.j(tau);
    let power = -(w.k * Exponent::from_integer(w.big_k)).to_integer();
    if w.big_k == 1 {
        return Ok(j.powi(power as i32));
    }
    // `arg` lies in (−π, π], so dividing by K lands in (−π/K, π/K].
    let root = Complex64::from_polar(Float::powf(j.norm(), 1.0 / w.big_k as f64), j.arg() / w.big_k as f64);
    Ok(root.powi(power as i32))
}

/// `[f·A](τ) = (cτ+d)^{−k} f(Aτ)` at each sample.
pub fn slash_numeric<C: Scalar>(
    f: &PuiseuxSeries<C>,
    m: &ModularMatrix,
    w: &SlashWeight,
    taus: &[Complex64],
) -> Result<Vec<Complex64>> {
    taus.iter()
        .map(|&tau| {
            let (v, _) = f.eval_at_tau(m.act_on_tau(tau)?)?;
            Ok(automorphy_factor(m, tau, w)? * v)
        })
        .collect()
}

/// True when `z^K ≈ 1`.
pub fn is_root_of_unity(z: Complex64, big_k: u32, tol: f64) -> bool {
    big_k > 0 && !z.is_nan() && (z.powu(big_k) - 1.0).norm() <= tol
}
