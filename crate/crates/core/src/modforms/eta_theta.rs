use core::f64::consts::PI;

use alloc::vec::Vec;
use num_traits::{Float, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{cis, exponent_to_f64, Complex64, Scalar};
use crate::series::{product_expand, ComplexSeries, ExactSeries, Exponent, ProductFactor, PuiseuxSeries};

/// `η = q^{1/24} ∏_{n≥1} (1 − qⁿ)`, known below `prec`.
pub fn dedekind_eta(prec: Exponent) -> Result<ExactSeries> {
    let lead = Exponent::new(1, 24);
    if prec <= lead {
        return Err(Error::InvalidArgument("eta needs precision above 1/24".into()));
    }
    let one = Exponent::from_integer(1);
    let prod = product_expand(&[ProductFactor::unit(-1, one, Exponent::zero(), 1)], 1, prec - lead)?;
    Ok(prod.shift(lead))
}

/// Integers `n` with `n²/2 + a·n < prec`.
fn theta_window(a: &Exponent, prec: &Exponent) -> Vec<(i64, Exponent)> {
    let af = exponent_to_f64(a);
    let radius = Float::sqrt((2.0 * exponent_to_f64(prec) + af * af).max(0.0));
    let lo = Float::floor(-af - radius) as i64 - 1;
    let hi = Float::ceil(-af + radius) as i64 + 1;
    (lo..=hi)
        .filter_map(|n| {
            let nn = Exponent::from_integer(n);
            let e = nn * nn / Exponent::from_integer(2) + a * nn;
            (e < *prec).then_some((n, e))
        })
        .collect()
}

/// `θ(Aτ + B; τ) = Σ_n e^{2πiBn} q^{n²/2 + An}`, known below `prec`.
///
/// The exact ring accepts this only when `B ∈ ½ℤ`.
pub fn theta_linear<C: Scalar>(a: Exponent, b: Exponent, prec: Exponent) -> Result<PuiseuxSeries<C>> {
    let mut terms = Vec::new();
    for (n, e) in theta_window(&a, &prec) {
        let phase = b * Exponent::from_integer(n);
        let c = C::root_of_unity(&phase).ok_or(Error::UnsupportedRoot(phase))?;
        terms.push((e, c));
    }
    Ok(PuiseuxSeries::from_terms(terms, Some(prec)))
}

/// [`theta_linear`] with a real (not necessarily rational) `B`.
pub fn theta_linear_real(a: Exponent, b: f64, prec: Exponent) -> ComplexSeries {
    let terms = theta_window(&a, &prec)
        .into_iter()
        .map(|(n, e)| (e, cis(2.0 * PI * b * n as f64)));
    PuiseuxSeries::from_terms(terms, Some(prec))
}

/// `θ(z; τ) = Σ_n e^{πin²τ + 2πinz}` summed directly until the terms drop
/// below machine precision.
pub fn jacobi_theta(z: Complex64, tau: Complex64) -> Result<Complex64> {
    if !tau.im.is_positive() {
        return Err(Error::NotInUpperHalfPlane);
    }
    let i_pi = Complex64::new(0.0, PI);
    let term = |n: f64| (i_pi * (tau * n * n + z * (2.0 * n))).exp();
    let mut sum = term(0.0);
    let mut n = 1.0;
    loop {
        let t = term(n) + term(-n);
        sum += t;
        // The Gaussian decay eventually wins over the linear term in z.
        if t.norm() <= 1e-18 * sum.norm().max(1e-300) && n * tau.im > z.im.abs() + 1.0 {
            break;
        }
        n += 1.0;
        if n > 1e6 {
            break;
        }
    }
    Ok(sum)
}
