//! Laurent coefficients in `z` of `P(z, q)`, `ζ(z, τ)` and `℘(z, τ)`.
//!
//! Coefficient `k` of `P` or `ζ` is stored divided by `(2πi)^{k+1}` and
//! coefficient `j` of `℘` or `∂_z P` by `(2πi)^{j+2}`, which keeps everything
//! rational.

use alloc::vec::Vec;

use num_bigint::BigInt;

use super::bernoulli::eisenstein_normalized;
use super::pfunc::p_function_normalized;
use super::twist::TwistPair;
use crate::error::Result;
use crate::scalar::Rational;
use crate::series::{ExactSeries, Exponent};

/// `pole·z^{−order} + Σ_k coefficients[k]·z^k` in normalized form.
#[derive(Debug, Clone)]
pub struct WeierstrassExpansion {
    /// Coefficient of the single pole term.
    pub pole: i64,
    pub pole_order: u32,
    pub coefficients: Vec<ExactSeries>,
}

impl WeierstrassExpansion {
    /// `P(z, q) = −z^{−1} + Σ_{k≥0} P_k(q) z^k`.
    pub fn p_function(kmax: usize, prec: Exponent) -> Result<Self> {
        let coefficients = (0..=kmax)
            .map(|k| p_function_normalized(k as u32, &TwistPair::trivial(), prec))
            .collect::<Result<Vec<_>>>()?;
        Ok(WeierstrassExpansion { pole: -1, pole_order: 1, coefficients })
    }

    /// Classical `ζ = z^{−1} − Σ_{k≥2} G_{2k} z^{2k−1}`.
    pub fn zeta(kmax: usize, prec: Exponent) -> Result<Self> {
        let mut coefficients = Vec::with_capacity(kmax + 1);
        for k in 0..=kmax {
            coefficients.push(if k >= 3 && k % 2 == 1 {
                eisenstein_normalized(k as u32 + 1, prec)?.neg()
            } else {
                ExactSeries::zero(Some(prec))
            });
        }
        Ok(WeierstrassExpansion { pole: 1, pole_order: 1, coefficients })
    }

    /// Classical `℘ = z^{−2} + Σ_{k≥2} (2k−1) G_{2k} z^{2k−2}`.
    pub fn wp(jmax: usize, prec: Exponent) -> Result<Self> {
        let mut coefficients = Vec::with_capacity(jmax + 1);
        for j in 0..=jmax {
            coefficients.push(if j >= 2 && j % 2 == 0 {
                eisenstein_normalized(j as u32 + 2, prec)?.scale(&int(j as i64 + 1))
            } else {
                ExactSeries::zero(Some(prec))
            });
        }
        Ok(WeierstrassExpansion { pole: 1, pole_order: 2, coefficients })
    }

    /// Term-by-term `∂_z`; coefficient normalization shifts by one power of `2πi`,
    /// so `z^{k−1}` receives `k·c_k` unchanged.
    pub fn derivative(&self) -> Self {
        let coefficients = self
            .coefficients
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&int(k as i64)))
            .collect();
        WeierstrassExpansion {
            pole: -self.pole * self.pole_order as i64,
            pole_order: self.pole_order + 1,
            coefficients,
        }
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Outcome of [`weierstrass_check`]: which identity failed first, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassReport {
    pub kmax: usize,
    pub identities_checked: usize,
    pub first_failure: Option<(&'static str, usize)>,
}

impl WeierstrassReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks exactly, coefficient by coefficient in `z`:
///
/// * `P_k = G_{k+1}` for odd `k ≤ kmax` and `P_k = 0` for even `k ≥ 2`;
/// * `ζ = −P + z G₂ − πi`;
/// * `∂_z P = ℘ + G₂`.
pub fn weierstrass_check(prec: Exponent, kmax: usize) -> Result<WeierstrassReport> {
    let p = WeierstrassExpansion::p_function(kmax, prec)?;
    let zeta = WeierstrassExpansion::zeta(kmax, prec)?;
    let wp = WeierstrassExpansion::wp(kmax, prec)?;
    let g2 = eisenstein_normalized(2, prec)?;
    let mut checked = 0;
    let mut report = |name: &'static str, k: usize, ok: bool, first: &mut Option<(&'static str, usize)>| {
        checked += 1;
        if !ok && first.is_none() {
            *first = Some((name, k));
        }
    };
    let mut first = None;

    for k in 1..=kmax {
        let expect = if k % 2 == 1 {
            eisenstein_normalized(k as u32 + 1, prec)?
        } else {
            ExactSeries::zero(Some(prec))
        };
        report("P_k = G_{k+1}", k, p.coefficients[k].equals(&expect, 0.0), &mut first);
    }

    // ζ: the pole flips sign, z⁰ picks up −πi/(2πi) = −1/2, z¹ picks up G₂.
    report("zeta pole", 0, zeta.pole == -p.pole && zeta.pole_order == p.pole_order, &mut first);
    let half = ExactSeries::constant(Rational::new(BigInt::from(1), BigInt::from(2)));
    for k in 0..=kmax {
        let mut rhs = p.coefficients[k].neg();
        if k == 0 {
            rhs = rhs.sub(&half);
        }
        if k == 1 {
            rhs = rhs.add(&g2);
        }
        report("zeta = -P + zG2 - pi i", k, zeta.coefficients[k].equals(&rhs, 0.0), &mut first);
    }

    let dp = p.derivative();
    report("wp pole", 0, dp.pole == wp.pole && dp.pole_order == wp.pole_order, &mut first);
    for j in 0..dp.coefficients.len() {
        let mut rhs = wp.coefficients[j].clone();
        if j == 0 {
            rhs = rhs.add(&g2);
        }
        report("d/dz P = wp + G2", j, dp.coefficients[j].equals(&rhs, 0.0), &mut first);
    }

    Ok(WeierstrassReport { kmax, identities_checked: checked, first_failure: first })
}
