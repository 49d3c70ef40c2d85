//! Eta, theta and the quasi-modular `G₂`.

use std::f64::consts::PI;

use qblocks_core::modforms::{dedekind_eta, eisenstein_normalized, jacobi_theta, theta_linear, two_pi_i, TwistPair};
use qblocks_core::scalar::unit;
use qblocks_core::sl2z::{ModularMatrix, SlashWeight};
use qblocks_core::{Complex64, ComplexSeries, Exponent};

use super::rel;
use crate::error::Result;
use crate::verify::{check_numeric, check_t, BlockFamily, CheckRecord, SuiteOptions};

fn off_axis_samples() -> Vec<Complex64> {
    vec![Complex64::new(1.0 / 3.0, 1.0), Complex64::new(-0.4, 0.9), Complex64::new(0.2, 0.8)]
}

pub fn eta_family(prec: Exponent) -> Result<BlockFamily> {
    let mut fam = BlockFamily::new("eta", SlashWeight::from_weight(Exponent::new(1, 2)));
    fam.insert(TwistPair::trivial(), vec![dedekind_eta(prec)?.to_complex()]);
    Ok(fam)
}

pub fn modular(opts: &SuiteOptions) -> Result<Vec<CheckRecord>> {
    let mut checks = Vec::new();
    let label = "(1, 1)";

    // η(τ + 1) = e^{πi/12} η(τ), coefficient by coefficient.
    let eta = eta_family(Exponent::from_integer(200).max(opts.prec))?;
    let t = check_t(&eta, 1e-12)?;
    let c = t.records[0].constant().unwrap_or_default();
    let expect = unit(&Exponent::new(1, 24));
    checks.push(CheckRecord::measured("eta T constant e^(pi i/12)", label, "T", rel(c, expect).max(t.max_residual()), Some(c), 1e-12));

    // η(−1/τ) = (−iτ)^{1/2} η(τ): with the principal τ^{−1/2} the multiplier is e^{−πi/4}.
    let s = check_numeric(&eta, &ModularMatrix::s(), &off_axis_samples(), 1e-9)?;
    let c = s.records[0].constant().unwrap_or_default();
    let expect = unit(&Exponent::new(-1, 8));
    checks.push(CheckRecord::measured("eta S constant e^(-pi i/4)", label, "S", rel(c, expect).max(s.max_residual()), Some(c), 1e-9));

    // Jacobi theta: both transformation rules, evaluated directly.
    let zs = [Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.05), Complex64::new(0.0, 0.0)];
    let mut worst_s: f64 = 0.0;
    let mut worst_t: f64 = 0.0;
    for &tau in &opts.samples {
        for &z in &zs {
            let lhs = jacobi_theta(z / tau, -tau.inv())?;
            let rhs = (Complex64::new(0.0, -1.0) * tau).sqrt()
                * (Complex64::new(0.0, PI) * z * z / tau).exp()
                * jacobi_theta(z, tau)?;
            worst_s = worst_s.max(rel(lhs, rhs));
            let lhs = jacobi_theta(z, tau + 1.0)?;
            let rhs = jacobi_theta(z + 0.5, tau)?;
            worst_t = worst_t.max(rel(lhs, rhs));
        }
    }
    checks.push(CheckRecord::measured("theta S rule", "z samples", "S", worst_s, None, 1e-9));
    checks.push(CheckRecord::measured("theta T rule", "z samples", "T", worst_t, None, 1e-9));

    // θ(Aτ + B; τ) as a q-series matches the direct sum.
    let mut worst: f64 = 0.0;
    for (a, b) in [(Exponent::new(1, 3), Exponent::new(1, 4)), (Exponent::new(-1, 2), Exponent::new(1, 6))] {
        let series: ComplexSeries = theta_linear(a, b, opts.prec)?;
        for &tau in &opts.samples {
            let z = tau * qblocks_core::scalar::exponent_to_f64(&a) + qblocks_core::scalar::exponent_to_f64(&b);
            worst = worst.max(rel(series.eval_at_tau(tau)?.0, jacobi_theta(z, tau)?));
        }
    }
    checks.push(CheckRecord::measured("theta series vs direct sum", "A, B rational", "-", worst, None, 1e-9));

    // Ĝ₂(Aτ) = (cτ+d)² Ĝ₂(τ) − c(cτ+d)/(2πi).
    let g2 = eisenstein_normalized(2, opts.prec)?.to_complex();
    for m in [ModularMatrix::s(), ModularMatrix::s().compose(&ModularMatrix::t()), ModularMatrix::new(1, 0, 2, 1)?] {
        let (_, _, c, _) = m.entries();
        let mut worst: f64 = 0.0;
        for &tau in &opts.samples {
            let j = m.j(tau);
            let lhs = g2.eval_at_tau(m.act_on_tau(tau)?)?.0;
            let rhs = j * j * g2.eval_at_tau(tau)?.0 - j * c as f64 / two_pi_i();
            worst = worst.max(rel(lhs, rhs));
        }
        checks.push(CheckRecord::measured("G2 anomaly", "G2", m.to_string(), worst, None, opts.tol));
    }

    // Negative control: Ĝ₂ alone is not weight-2 covariant.
    let mut fam = BlockFamily::new("G2", SlashWeight::integer(2));
    fam.insert(TwistPair::trivial(), vec![g2]);
    let rep = check_numeric(&fam, &ModularMatrix::s(), &opts.samples, opts.tol)?;
    let r = rep.max_residual();
    checks.push(CheckRecord {
        name: "G2 fails weight-2 covariance (negative control)".into(),
        labels: label.into(),
        matrix: "S".into(),
        residual: r,
        constant: None,
        pass: r > 1e-3,
    });
    Ok(checks)
}
