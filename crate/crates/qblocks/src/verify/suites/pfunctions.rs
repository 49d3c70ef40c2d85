//! The twisted functions `P̂_k^{μ,λ}` against Eisenstein series and under SL₂(ℤ).

use qblocks_core::modforms::{eisenstein_normalized, p_function_normalized, weierstrass_check, TwistPair};
use qblocks_core::sl2z::{ModularMatrix, SlashWeight};
use qblocks_core::{Complex64, ComplexSeries, ExactSeries, Exponent, Rational};

use super::series_gap;
use crate::error::Result;
use crate::verify::{check_numeric, check_t, BlockFamily, CheckRecord, SuiteOptions};

/// Twist pairs whose entries have order dividing 4, 5 or 6.
pub fn twist_grid() -> Vec<TwistPair> {
    let mut out = Vec::new();
    for n in [4i64, 5, 6] {
        for i in 0..n {
            for j in 0..n {
                out.push(TwistPair::from_turns(Exponent::new(i, n), Exponent::new(j, n)));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// `{(μ, λ) ↦ [P̂_k^{μ,λ}]}` of weight `k + 1`, leaving out `(1, 1)` when `k ≤ 1`.
pub fn p_family(k: u32, prec: Exponent) -> Result<BlockFamily> {
    let mut fam = BlockFamily::new(format!("P_{k}"), SlashWeight::integer(i64::from(k) + 1));
    for tw in twist_grid() {
        if k <= 1 && tw.is_trivial() {
            continue;
        }
        let s: ComplexSeries = p_function_normalized(k, &tw, prec)?;
        // Vanishing members (even k with real twists) get an empty span.
        let basis = if s.max_magnitude() <= 1e-12 { vec![] } else { vec![s] };
        fam.insert(tw, basis);
    }
    Ok(fam)
}

pub fn pfunctions(opts: &SuiteOptions) -> Result<Vec<CheckRecord>> {
    let mut checks = Vec::new();
    let exact_prec = Exponent::from_integer(40);
    let trivial = TwistPair::trivial();

    for k in 1..=9u32 {
        let p: ExactSeries = p_function_normalized(k, &trivial, exact_prec)?;
        let expect = if k % 2 == 1 {
            eisenstein_normalized(k + 1, exact_prec)?
        } else {
            ExactSeries::zero(Some(exact_prec))
        };
        let name = if k % 2 == 1 { "P_k(1,1) = G_{k+1} exact" } else { "P_k(1,1) = 0 exact" };
        checks.push(CheckRecord::exact(name, format!("k={k}"), p.equals(&expect, 0.0)));
    }
    let p0: ExactSeries = p_function_normalized(0, &trivial, exact_prec)?;
    let half = ExactSeries::constant(Rational::new((-1).into(), 2.into())).truncate(exact_prec);
    checks.push(CheckRecord::exact("P_0(1,1) = -1/2 exact", "k=0", p0.equals(&half, 0.0)));

    let w = weierstrass_check(exact_prec, 9)?;
    let label = match w.first_failure {
        Some((what, k)) => format!("first failure: {what} at index {k}"),
        None => format!("{} identities", w.identities_checked),
    };
    checks.push(CheckRecord::exact("Weierstrass zeta/wp relations", label, w.passed()));

    for k in 0..=3u32 {
        let fam = p_family(k, opts.prec)?;
        // τ ↦ τ + 1 must land on (μ, μλ) with multiplier exactly 1.
        let t = check_t(&fam, 1e-12)?;
        for mut rec in CheckRecord::from_covariance(&format!("P_{k} T-shift coefficientwise"), &t) {
            let one = rec.constant.map(|c| (Complex64::from(c) - 1.0).norm() <= 1e-12).unwrap_or(false);
            rec.pass &= one;
            checks.push(rec);
        }
        for m in [ModularMatrix::s(), ModularMatrix::t()] {
            let rep = check_numeric(&fam, &m, &opts.samples, opts.tol)?;
            for mut rec in CheckRecord::from_covariance(&format!("P_{k} modular transformation"), &rep) {
                let one = rec.constant.map(|c| (Complex64::from(c) - 1.0).norm() <= opts.tol).unwrap_or(false);
                rec.pass &= one;
                checks.push(rec);
            }
        }
        let coeff_gap = fam
            .labels
            .iter()
            .filter(|(tw, _)| tw.mu.order() <= 2 && tw.lambda.order() <= 2)
            .map(|(tw, b)| -> Result<f64> {
                let exact: ExactSeries = p_function_normalized(k, tw, Exponent::from_integer(20))?;
                Ok(match b.first() {
                    Some(s) => series_gap(&exact.to_complex(), &s.truncate(Exponent::from_integer(20))),
                    None => exact.to_complex().max_magnitude(),
                })
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        checks.push(CheckRecord::measured(
            format!("P_{k} exact and complex rings agree"),
            "mu, lambda in {1,-1}",
            "-",
            coeff_gap,
            None,
            1e-12,
        ));
    }
    Ok(checks)
}
