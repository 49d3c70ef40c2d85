//! Charged free fermions: triple product, multipliers and the weight identity.

use qblocks_core::scalar::unit;
use qblocks_core::sl2z::{ModularMatrix, SlashWeight};
use qblocks_core::vosa::{charged_char_product, charged_char_theta, ChargedFermionParams};
use qblocks_core::{Complex64, ComplexSeries, ExactSeries, Exponent};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{rel, series_gap};
use crate::error::Result;
use crate::verify::{check_numeric, check_t, BlockFamily, CheckRecord, SuiteOptions};

pub fn a_grid() -> [Exponent; 3] {
    [Exponent::new(1, 3), Exponent::new(1, 2), Exponent::new(2, 3)]
}

pub fn twist_grid() -> [Exponent; 4] {
    [Exponent::new(0, 1), Exponent::new(1, 4), Exponent::new(1, 2), Exponent::new(2, 3)]
}

/// All `(δ, ρ)` reachable from the grid under `S` and `T`, as characters.
pub fn charged_family(a: Exponent, prec: Exponent) -> Result<BlockFamily> {
    let mut fam = BlockFamily::new(format!("charged a={a}"), SlashWeight::integer(0));
    let mut todo: Vec<ChargedFermionParams> = Vec::new();
    for d in twist_grid() {
        for r in twist_grid() {
            todo.push(ChargedFermionParams::new(a, d, r)?);
        }
    }
    while let Some(p) = todo.pop() {
        let tw = p.twist_pair();
        if fam.labels.contains_key(&tw) {
            continue;
        }
        let s: ComplexSeries = charged_char_product(&p, prec)?;
        fam.insert(tw, if s.is_zero() { Vec::new() } else { vec![s] });
        todo.push(p.s_image());
        todo.push(p.t_image());
    }
    Ok(fam)
}

pub fn charged(opts: &SuiteOptions) -> Result<Vec<CheckRecord>> {
    let mut checks = Vec::new();
    let p30 = Exponent::from_integer(30);
    let three: Vec<Complex64> = opts.samples.iter().take(3).copied().collect();

    for a in a_grid() {
        for d in twist_grid() {
            for r in twist_grid() {
                let p = ChargedFermionParams::new(a, d, r)?;
                let label = format!("a={a} delta={d} rho={r}");
                let prod: ComplexSeries = charged_char_product(&p, p30)?;
                let theta: ComplexSeries = charged_char_theta(&p, p30)?;
                let gap = prod.sub(&theta).max_magnitude();
                checks.push(CheckRecord::measured("product = theta/eta (per coefficient)", &label, "-", gap, None, 1e-10));

                let k = p.constants();
                if prod.is_zero() {
                    continue;
                }
                // T: χ_{μ,λ}(τ+1) = e^{2πi(h − c/24)} χ_{μ,λμ}(τ).
                let target: ComplexSeries = charged_char_product(&p.t_image(), p30)?;
                let ct = unit(&k.t_turn);
                let gap = series_gap(&prod.tshift()?, &target.scale(&ct));
                checks.push(CheckRecord::measured("T constant e^(2 pi i (h - c/24))", &label, "T", gap, Some(ct), opts.tol));

                // S: χ_{μ,λ}(−1/τ) = e^{−2πiAB} χ_{λ,μ⁻¹}(τ).
                let src: ComplexSeries = charged_char_product(&p, opts.prec)?;
                let dst: ComplexSeries = charged_char_product(&p.s_image(), opts.prec)?;
                let cs = unit(&k.s_turn);
                let mut worst: f64 = 0.0;
                for &tau in &three {
                    let lhs = src.eval_at_tau(-tau.inv())?.0;
                    let rhs = cs * dst.eval_at_tau(tau)?.0;
                    worst = worst.max(rel(lhs, rhs));
                }
                checks.push(CheckRecord::measured("S constant e^(-2 pi i AB)", &label, "S", worst, Some(cs), opts.tol));
            }
        }
        let zero = ChargedFermionParams::new(a, Exponent::new(0, 1), Exponent::new(0, 1))?;
        let z: ExactSeries = charged_char_product(&zero, p30)?;
        checks.push(CheckRecord::exact("chi_{1,1} = 0 exactly", format!("a={a}"), z.is_zero()));

        let fam = charged_family(a, opts.prec)?;
        checks.extend(CheckRecord::from_covariance("charged family T", &check_t(&fam, 1e-10)?));
        let s = check_numeric(&fam, &ModularMatrix::s(), &opts.samples, opts.tol)?;
        checks.extend(CheckRecord::from_covariance("charged family S", &s));
    }

    // (c − 1)/24 + (δ − ½)²/2 = h for random rationals.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut bad = 0;
    for _ in 0..20 {
        let den_a = rng.gen_range(2..40);
        let a = Exponent::new(rng.gen_range(1..den_a), den_a);
        let den_d = rng.gen_range(1..40);
        let d = Exponent::new(rng.gen_range(0..den_d), den_d);
        let p = ChargedFermionParams::new(a, d, Exponent::new(0, 1))?;
        if p.weight_identity_defect() != Exponent::new(0, 1) {
            bad += 1;
        }
    }
    checks.push(CheckRecord::exact("(c-1)/24 + A^2/2 = h exactly", "20 random (a, delta)", bad == 0));
    Ok(checks)
}
