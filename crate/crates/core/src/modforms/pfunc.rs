use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bernoulli::{bernoulli_poly, factorial};
use super::twist::TwistPair;
use crate::error::{Error, Result};
use crate::scalar::{exponent_to_rational, Rational, Scalar};
use crate::series::{Exponent, PuiseuxSeries};

/// `δ_{k,0}·δ/(1−λ) − B_{k+1}(1+ε)/(k+1)!`, the constant term of `P̂_k^{μ,λ}`.
pub fn p_function_constant_term<C: Scalar>(k: u32, tw: &TwistPair) -> Result<C> {
    let shift = <Rational as One>::one() + exponent_to_rational(&tw.mu.epsilon());
    let bern = bernoulli_poly(k + 1, &shift) / Rational::from_integer(factorial(k + 1));
    let mut c = C::from_rational(&bern).neg_ref();
    if k == 0 && tw.delta_indicator() == 1 {
        let lambda: C = tw.lambda.value()?;
        let denom = C::one().sub_ref(&lambda);
        let inv = denom.try_inv().ok_or(Error::ZeroLeadingCoefficient)?;
        c = c.add_ref(&inv);
    }
    Ok(c)
}

/// `P̂_k^{μ,λ} = P_k^{μ,λ}/(2πi)^{k+1}`, expanded as
///
/// ```text
/// δ_{k,0} δ/(1−λ) − B_{k+1}(1+ε)/(k+1)!
///   + (1/k!) Σ_{m>0} [ Σ_{n∈[ε], n>0} n^k (λqⁿ)^m − Σ_{n∈[ε], n<0} n^k (λ⁻¹q^{−n})^m ]
/// ```
///
/// with every pair `(m, n)` whose exponent `|n|·m` lies below `prec`. In the
/// exact ring this requires `μ, λ ∈ {±1}`.
pub fn p_function_normalized<C: Scalar>(k: u32, tw: &TwistPair, prec: Exponent) -> Result<PuiseuxSeries<C>> {
    let eps = tw.mu.epsilon();
    let inv_fact = Rational::new(BigInt::one(), factorial(k));
    let mut terms: Vec<(Exponent, C)> = Vec::new();
    terms.push((Exponent::zero(), p_function_constant_term(k, tw)?));

    let power = |n: &Exponent| -> Rational {
        let base = exponent_to_rational(n);
        let mut p = <Rational as One>::one();
        for _ in 0..k {
            p *= &base;
        }
        p * &inv_fact
    };

    // n = ε + j > 0.
    let mut j = 1i64;
    loop {
        let n = eps + Exponent::from_integer(j);
        if n >= prec {
            break;
        }
        let coeff = C::from_rational(&power(&n));
        let mut m = 1i64;
        while n * Exponent::from_integer(m) < prec {
            let lam: C = tw.lambda.pow(m).value()?;
            terms.push((n * Exponent::from_integer(m), coeff.mul_ref(&lam)));
            m += 1;
        }
        j += 1;
    }

    // n = ε − j < 0.
    let mut j = if eps.is_zero() { 1i64 } else { 0 };
    loop {
        let n = eps - Exponent::from_integer(j);
        let abs = -n;
        if abs >= prec {
            break;
        }
        let coeff = C::from_rational(&power(&n)).neg_ref();
        let mut m = 1i64;
        while abs * Exponent::from_integer(m) < prec {
            let lam: C = tw.lambda.pow(-m).value()?;
            terms.push((abs * Exponent::from_integer(m), coeff.mul_ref(&lam)));
            m += 1;
        }
        j += 1;
    }

    Ok(PuiseuxSeries::from_terms(terms, Some(prec)))
}
