use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;
use crate::series::{ExactSeries, Exponent};

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `B_0(0), …, B_n(0)`, i.e. the Bernoulli numbers with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: u32) -> Vec<Rational> {
    let mut b: Vec<Rational> = vec![Rational::one()];
    for m in 1..=n {
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binomial(m + 1, j as u32)) * bj;
        }
        b.push(-acc / int(i64::from(m) + 1));
    }
    b
}

/// Coefficients `[c_0, …, c_n]` of `B_n(γ) = Σ c_i γ^i`.
pub fn bernoulli_poly_coefficients(n: u32) -> Vec<Rational> {
    let b = bernoulli_numbers(n);
    (0..=n)
        .map(|i| Rational::from_integer(binomial(n, n - i)) * &b[(n - i) as usize])
        .collect()
}

/// `B_n(γ)`, defined by `e^{γz}/(e^z − 1) = Σ B_n(γ) z^{n−1}/n!`.
pub fn bernoulli_poly(n: u32, gamma: &Rational) -> Rational {
    bernoulli_poly_coefficients(n)
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * gamma + c)
}

/// `B_n = B_n(1)`, so `B_1 = +1/2`.
pub fn bernoulli_number(n: u32) -> Rational {
    bernoulli_poly(n, &Rational::one())
}

/// `σ_k(n) = Σ_{d | n} d^k`.
pub fn divisor_sigma(k: u32, n: u64) -> BigInt {
    let mut acc = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            acc += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                acc += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    acc
}

/// `Ĝ_k = G_k/(2πi)^k = −B_k/k! + (2/(k−1)!) Σ_{n≥1} σ_{k−1}(n) qⁿ`, known
/// below `prec`.
pub fn eisenstein_normalized(k: u32, prec: Exponent) -> Result<ExactSeries> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("Eisenstein weight must be even and >= 2, got {k}")));
    }
    let constant = -bernoulli_number(k) / Rational::from_integer(factorial(k));
    let scale = Rational::new(BigInt::from(2), factorial(k - 1));
    let mut terms = vec![(Exponent::zero(), constant)];
    let mut n = 1i64;
    while Exponent::from_integer(n) < prec {
        let sigma = Rational::from_integer(divisor_sigma(k - 1, n as u64));
        terms.push((Exponent::from_integer(n), sigma * &scale));
        n += 1;
    }
    Ok(ExactSeries::from_terms(terms, Some(prec)))
}
