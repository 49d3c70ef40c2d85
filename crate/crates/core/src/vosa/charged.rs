//! Charged free fermions `ψ, ψ*` with weights `1 − a` and `a`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::modforms::{dedekind_eta, theta_linear, RootOfUnity, TwistPair};
use crate::scalar::{frac, Scalar};
use crate::series::{product_expand, Exponent, ProductFactor, PuiseuxSeries};

/// `(a, δ, ρ)` with `μ = e^{2πiδ}` the module twist and `λ = e^{2πiρ}` the
/// trace insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChargedFermionParams {
    a: Exponent,
    delta: Exponent,
    rho: Exponent,
}

/// Central charge, conformal weight and the two modular multipliers (as turns,
/// so the multiplier is `e^{2πi·turn}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChargedConstants {
    pub c: Exponent,
    pub h: Exponent,
    /// `h − c/24`.
    pub t_turn: Exponent,
    /// `−AB` with `A = δ − 1/2`, `B = ρ − 1/2`.
    pub s_turn: Exponent,
}

impl ChargedFermionParams {
    /// Requires `0 < a < 1` and `δ, ρ ∈ [0, 1)`.
    pub fn new(a: Exponent, delta: Exponent, rho: Exponent) -> Result<Self> {
        let one = Exponent::from_integer(1);
        if !a.is_positive() || a >= one {
            return Err(Error::InvalidArgument("a must lie in (0, 1)".into()));
        }
        for (name, x) in [("delta", delta), ("rho", rho)] {
            if x.is_negative() || x >= one {
                return Err(Error::InvalidArgument(alloc::format!("{name} must lie in [0, 1)")));
            }
        }
        Ok(ChargedFermionParams { a, delta, rho })
    }

    pub fn a(&self) -> Exponent {
        self.a
    }

    pub fn delta(&self) -> Exponent {
        self.delta
    }

    pub fn rho(&self) -> Exponent {
        self.rho
    }

    pub fn twist_pair(&self) -> TwistPair {
        TwistPair::from_turns(self.delta, self.rho)
    }

    pub fn with_twist(&self, tw: &TwistPair) -> Self {
        ChargedFermionParams { a: self.a, delta: tw.mu.turn(), rho: tw.lambda.turn() }
    }

    /// Parameters of `χ_{μ, λμ}`, the target under `τ ↦ τ + 1`.
    pub fn t_image(&self) -> Self {
        ChargedFermionParams { a: self.a, delta: self.delta, rho: frac(&(self.rho + self.delta)) }
    }

    /// Parameters of `χ_{λ, μ⁻¹}`, the target under `τ ↦ −1/τ`.
    pub fn s_image(&self) -> Self {
        ChargedFermionParams { a: self.a, delta: self.rho, rho: frac(&-self.delta) }
    }

    pub fn central_charge(&self) -> Exponent {
        let a = self.a;
        Exponent::from_integer(-2) * (Exponent::from_integer(6) * a * a - Exponent::from_integer(6) * a + 1)
    }

    /// `h = ½(δ − a)(δ + a − 1)`.
    pub fn conformal_weight(&self) -> Exponent {
        (self.delta - self.a) * (self.delta + self.a - 1) / 2
    }

    pub fn constants(&self) -> ChargedConstants {
        let c = self.central_charge();
        let h = self.conformal_weight();
        let half = Exponent::new(1, 2);
        ChargedConstants {
            c,
            h,
            t_turn: h - c / 24,
            s_turn: -((self.delta - half) * (self.rho - half)),
        }
    }

    /// `(c − 1)/24 + (δ − ½)²/2 − h`, which vanishes identically.
    pub fn weight_identity_defect(&self) -> Exponent {
        let a = self.delta - Exponent::new(1, 2);
        (self.central_charge() - 1) / 24 + a * a / 2 - self.conformal_weight()
    }
}

/// `χ = q^{h−c/24} ∏_{n≥1} (1 − λq^{n−1+δ}) (1 − λ⁻¹q^{n−δ})`.
pub fn charged_char_product<C: Scalar>(p: &ChargedFermionParams, prec: Exponent) -> Result<PuiseuxSeries<C>> {
    let consts = p.constants();
    let lead = consts.t_turn;
    if prec <= lead {
        return Ok(PuiseuxSeries::zero(Some(prec)));
    }
    let lambda: C = RootOfUnity::from_turn(p.rho).value()?;
    let lambda_inv: C = RootOfUnity::from_turn(-p.rho).value()?;
    let one = Exponent::from_integer(1);
    let factors = [
        ProductFactor::new(-1, lambda, one, p.delta - 1, 1),
        ProductFactor::new(-1, lambda_inv, one, -p.delta, 1),
    ];
    Ok(product_expand(&factors, 1, prec - lead)?.shift(lead))
}

/// `χ = q^{h−(c−1)/24} η⁻¹ θ((δ−½)τ + (ρ−½); τ)`, the same function written
/// through the triple product.
pub fn charged_char_theta<C: Scalar>(p: &ChargedFermionParams, prec: Exponent) -> Result<PuiseuxSeries<C>> {
    let half = Exponent::new(1, 2);
    // q^{h−(c−1)/24}·q^{−1/24} = q^{h−c/24}
    let lead = p.constants().t_turn;
    if prec <= lead {
        return Ok(PuiseuxSeries::zero(Some(prec)));
    }
    let inner = prec - lead;
    let theta: PuiseuxSeries<C> = theta_linear(p.delta - half, p.rho - half, inner)?;
    let v = theta.valuation().unwrap_or_else(Exponent::zero);
    let eta_lead = Exponent::new(1, 24);
    // η/q^{1/24} inverted, known below `inner − v`.
    let eta = dedekind_eta(inner - v + eta_lead)?.shift(-eta_lead);
    let inv = eta.invert()?.map_coefficients(|c| C::from_rational(c));
    Ok(theta.mul(&inv).truncate(inner).shift(lead))
}
