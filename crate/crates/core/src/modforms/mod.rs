//! The special functions as q-series producers.
//!
//! Everything built from Eisenstein-type sums is stored divided by a power of
//! `2πi` (see [`NormalizedSeriesLabel`]) so that the untwisted objects have
//! exact rational coefficients.

mod bernoulli;
mod eta_theta;
mod pfunc;
mod twist;
mod weierstrass;

pub use bernoulli::{bernoulli_number, bernoulli_numbers, bernoulli_poly, bernoulli_poly_coefficients, divisor_sigma, eisenstein_normalized};
pub use eta_theta::{dedekind_eta, jacobi_theta, theta_linear, theta_linear_real};
pub use pfunc::{p_function_constant_term, p_function_normalized};
pub use twist::{RootOfUnity, TwistPair};
pub use weierstrass::{weierstrass_check, WeierstrassExpansion, WeierstrassReport};

use core::f64::consts::PI;

use crate::scalar::Complex64;

/// Which special function a stored series represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Eisenstein,
    PFunction,
    Eta,
    Theta,
}

/// A stored series equals the named function divided by `(2πi)^normalization`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalizedSeriesLabel {
    pub kind: SeriesKind,
    pub normalization: u32,
}

impl NormalizedSeriesLabel {
    /// `Ĝ_k = G_k / (2πi)^k`.
    pub fn eisenstein(k: u32) -> Self {
        NormalizedSeriesLabel { kind: SeriesKind::Eisenstein, normalization: k }
    }

    /// `P̂_k = P_k / (2πi)^{k+1}`.
    pub fn p_function(k: u32) -> Self {
        NormalizedSeriesLabel { kind: SeriesKind::PFunction, normalization: k + 1 }
    }

    pub fn eta() -> Self {
        NormalizedSeriesLabel { kind: SeriesKind::Eta, normalization: 0 }
    }

    pub fn theta() -> Self {
        NormalizedSeriesLabel { kind: SeriesKind::Theta, normalization: 0 }
    }

    /// Restores the `(2πi)^m` factor on a numerical value.
    pub fn denormalize(&self, value: Complex64) -> Complex64 {
        value * two_pi_i().powu(self.normalization)
    }
}

pub fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * PI)
}
