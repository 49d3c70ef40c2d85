//! Neutral free fermion blocks against eta quotients and under SL₂(ℤ).

use qblocks_core::modforms::dedekind_eta;
use qblocks_core::sl2z::{ModularMatrix, SlashWeight};
use qblocks_core::vosa::{ff_block, ff_family, FermionBlockLabel, Insertion};
use qblocks_core::{ExactSeries, Exponent, Rational};

use crate::error::Result;
use crate::verify::{check_cocycle, check_numeric, check_t, BlockFamily, CheckRecord, SuiteOptions};

/// `η(rτ)` known below `prec`.
fn eta_scaled(r: Exponent, prec: Exponent) -> Result<ExactSeries> {
    Ok(dedekind_eta(prec / r + 1)?.rescale(r)?.truncate(prec))
}

/// The eta quotients the blocks are compared against, at precision `prec`:
/// `(η(τ/2)/η(τ), η(τ)²/(η(2τ)η(τ/2)), 2η(2τ)/η(τ), 2η(τ)/η(2τ), η(τ))`.
pub fn eta_quotients(prec: Exponent) -> Result<[ExactSeries; 5]> {
    let p = prec + 2;
    let half = eta_scaled(Exponent::new(1, 2), p)?;
    let one = eta_scaled(Exponent::from_integer(1), p)?;
    let two = eta_scaled(Exponent::from_integer(2), p)?;
    let two_c = Rational::from_integer(2.into());
    Ok([
        half.div(&one)?.truncate(prec),
        one.mul(&one).div(&two.mul(&half))?.truncate(prec),
        two.div(&one)?.scale(&two_c).truncate(prec),
        one.div(&two)?.scale(&two_c).truncate(prec),
        one.truncate(prec),
    ])
}

/// The four vacuum blocks (weight 0) or the `φ` blocks (weight 1/2); vanishing
/// blocks get an empty basis.
pub fn fermion_family(insertion: Insertion, prec: Exponent) -> Result<BlockFamily> {
    let mut fam = BlockFamily::new(
        format!("free fermion {insertion:?}"),
        SlashWeight::from_weight(insertion.weight()),
    );
    for (label, s) in ff_family(insertion, prec)? {
        let basis = if s.is_zero() { Vec::new() } else { vec![s.to_complex()] };
        fam.insert(label.twist_pair(), basis);
    }
    Ok(fam)
}

pub fn fermion(opts: &SuiteOptions) -> Result<Vec<CheckRecord>> {
    let mut checks = Vec::new();
    let p = Exponent::from_integer(50);
    let [q_s1, q_ss, q_1s, q_printed, eta] = eta_quotients(p)?;
    let block = |g, h, u| ff_block(&FermionBlockLabel::new(g, h, u), p);

    let pairs = [
        ("(s,1,vac) = eta(tau/2)/eta(tau)", block(true, false, Insertion::Vac)?, &q_s1),
        ("(s,s,vac) = eta(tau)^2/(eta(2tau) eta(tau/2))", block(true, true, Insertion::Vac)?, &q_ss),
        ("(1,s,vac) = 2 eta(2tau)/eta(tau)", block(false, true, Insertion::Vac)?, &q_1s),
        ("(1,1,phi) = eta(tau)", block(false, false, Insertion::Phi)?, &eta),
    ];
    for (name, b, q) in pairs {
        checks.push(CheckRecord::exact(name, "to q^50", b.equals(q, 0.0)));
    }
    let printed_fails = !block(false, true, Insertion::Vac)?.equals(&q_printed, 0.0);
    checks.push(CheckRecord::exact("(1,s,vac) != 2 eta(tau)/eta(2tau) (printed form rejected)", "to q^50", printed_fails));
    checks.push(CheckRecord::exact("(1,1,vac) = 0", "to q^50", block(false, false, Insertion::Vac)?.is_zero()));

    let vac = fermion_family(Insertion::Vac, opts.prec)?;
    let t = check_t(&vac, 1e-12)?;
    checks.extend(CheckRecord::from_covariance("vac family T coefficientwise", &t));
    for m in [ModularMatrix::s(), ModularMatrix::t(), ModularMatrix::t().inverse(), ModularMatrix::s().compose(&ModularMatrix::t())] {
        let rep = check_numeric(&vac, &m, &opts.samples, opts.tol)?;
        checks.extend(CheckRecord::from_covariance("vac family", &rep));
    }

    let phi = fermion_family(Insertion::Phi, opts.prec)?;
    for m in [ModularMatrix::s(), ModularMatrix::t()] {
        let rep = check_numeric(&phi, &m, &opts.samples, opts.tol)?;
        checks.extend(CheckRecord::from_covariance("phi family (weight 1/2)", &rep));
    }

    for rec in check_cocycle(&vac, &ModularMatrix::s(), &ModularMatrix::t(), &opts.samples, 48, opts.tol)? {
        checks.push(CheckRecord {
            name: "vac multipliers compose up to a 48th root of unity".into(),
            labels: rec.label.0.clone(),
            matrix: rec.product.clone(),
            residual: rec.deviation,
            constant: Some(rec.ratio),
            pass: rec.pass,
        });
    }
    Ok(checks)
}
