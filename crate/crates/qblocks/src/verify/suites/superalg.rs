//! `h`-supersymmetric functionals on the simple superalgebras.

use qblocks_core::linalg::Matrix;
use qblocks_core::superalg::{
    closed_form_functional, find_gamma, h_supersym_basis, make_end_super, make_queer, supercommutator, supertrace,
    AlgebraAutomorphism, Parity, SimpleType, SuperAlgebra, SuperModule,
};
use qblocks_core::vosa::fermion_zhu_algebra;
use qblocks_core::{Complex64, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::verify::{CheckRecord, SuiteOptions};

/// A named automorphism with its algebra and module.
pub struct Case<C> {
    pub algebra: String,
    pub automorphism: String,
    pub alg: SuperAlgebra<C>,
    pub module: SuperModule<C>,
    pub h: AlgebraAutomorphism<C>,
}

fn matrix_unit_combo<C: Scalar>(dim: usize, entries: &[(usize, C)]) -> Vec<C> {
    let mut v = vec![C::zero(); dim];
    for (i, c) in entries {
        v[*i] = c.clone();
    }
    v
}

/// Automorphisms of order at most 2 on every test algebra (exact arithmetic).
pub fn exact_cases() -> Result<Vec<Case<Rational>>> {
    let mut out = Vec::new();
    let one = Rational::from_i64(1);
    let minus = Rational::from_i64(-1);
    for m in 0..=2usize {
        for k in 0..=2usize {
            if m + k == 0 {
                continue;
            }
            let n = m + k;
            let name = format!("End(C^{m}|{k})");
            let (alg, module) = make_end_super::<Rational>(m, k)?;
            let d = alg.dim();
            let mut autos = vec![("identity".to_string(), AlgebraAutomorphism::identity(&alg))];
            autos.push(("parity".into(), AlgebraAutomorphism::parity(&alg)?));
            // diag(−1, 1, …, 1), an even involution.
            let diag: Vec<(usize, Rational)> =
                (0..n).map(|i| (i * n + i, if i == 0 { minus.clone() } else { one.clone() })).collect();
            autos.push(("inner diag(-1,1,..)".into(), AlgebraAutomorphism::inner(&alg, &matrix_unit_combo(d, &diag))?));
            if m == 2 {
                // Swap the two even basis vectors.
                let mut e: Vec<(usize, Rational)> = vec![(1, one.clone()), (n, one.clone())];
                e.extend((2..n).map(|i| (i * n + i, one.clone())));
                autos.push(("inner even swap".into(), AlgebraAutomorphism::inner(&alg, &matrix_unit_combo(d, &e))?));
            }
            if m == k {
                // u = Σ_i (E_{i,m+i} + E_{m+i,i}) is odd with u² = 1.
                let e: Vec<(usize, Rational)> =
                    (0..m).flat_map(|i| [(i * n + m + i, one.clone()), ((m + i) * n + i, one.clone())]).collect();
                let h = AlgebraAutomorphism::inner(&alg, &matrix_unit_combo(d, &e))?;
                let s = AlgebraAutomorphism::parity(&alg)?;
                autos.push(("composite parity∘odd swap".into(), s.compose(&alg, &h)?));
                autos.push(("inner odd swap".into(), h));
            }
            for (a, h) in autos {
                out.push(Case { algebra: name.clone(), automorphism: a, alg: alg.clone(), module: module.clone(), h });
            }
        }
    }
    for n in 1..=2usize {
        let (alg, module) = make_queer::<Rational>(n)?;
        let name = format!("Q_{n}");
        let d = alg.dim();
        let mut autos = vec![
            ("identity".to_string(), AlgebraAutomorphism::identity(&alg)),
            ("xi -> -xi".into(), AlgebraAutomorphism::xi_negation(&alg)?),
        ];
        if n == 2 {
            let swap = matrix_unit_combo(d, &[(1, one.clone()), (2, one.clone())]);
            let h = AlgebraAutomorphism::inner(&alg, &swap)?;
            let neg = AlgebraAutomorphism::xi_negation(&alg)?;
            autos.push(("xi -> -xi ∘ inner swap".into(), neg.compose(&alg, &h)?));
            autos.push(("inner swap".into(), h));
            let e = matrix_unit_combo(d, &[(0, minus.clone()), (3, one.clone())]);
            autos.push(("inner diag(-1,1)".into(), AlgebraAutomorphism::inner(&alg, &e)?));
        }
        for (a, h) in autos {
            out.push(Case { algebra: name.clone(), automorphism: a, alg: alg.clone(), module: module.clone(), h });
        }
    }
    let (alg, module) = fermion_zhu_algebra()?;
    out.push(Case {
        algebra: "free fermion Zhu algebra C[xi]/(xi^2=1)".into(),
        automorphism: "parity".into(),
        h: AlgebraAutomorphism::parity(&alg)?,
        alg,
        module,
    });
    Ok(out)
}

/// Inner automorphisms by diagonal roots of unity of order 3 and 4 (complex).
pub fn complex_cases() -> Result<Vec<Case<Complex64>>> {
    let mut out = Vec::new();
    for (m, k) in [(1usize, 1usize), (2, 1), (1, 2), (2, 2)] {
        let n = m + k;
        let (alg, module) = make_end_super::<Complex64>(m, k)?;
        for order in [3i64, 4] {
            let w = qblocks_core::scalar::unit(&qblocks_core::Exponent::new(1, order));
            let e: Vec<(usize, Complex64)> = (0..n).map(|i| (i * n + i, w.powu(i as u32))).collect();
            let h = AlgebraAutomorphism::inner(&alg, &matrix_unit_combo(alg.dim(), &e))?;
            out.push(Case {
                algebra: format!("End(C^{m}|{k})"),
                automorphism: format!("inner diag of order {order}"),
                alg: alg.clone(),
                module: module.clone(),
                h,
            });
        }
    }
    let (alg, module) = make_queer::<Complex64>(2)?;
    let i = Complex64::new(0.0, 1.0);
    let e = matrix_unit_combo(alg.dim(), &[(0, Complex64::new(1.0, 0.0)), (3, i)]);
    let h = AlgebraAutomorphism::inner(&alg, &e)?;
    let neg = AlgebraAutomorphism::xi_negation(&alg)?;
    out.push(Case { algebra: "Q_2".into(), automorphism: "xi -> -xi ∘ inner diag(1,i)".into(), h: neg.compose(&alg, &h)?, alg: alg.clone(), module: module.clone() });
    out.push(Case { algebra: "Q_2".into(), automorphism: "inner diag(1,i)".into(), h, alg, module });
    Ok(out)
}

fn run_case<C: Scalar>(case: &Case<C>, checks: &mut Vec<CheckRecord>) -> Result<()> {
    let label = format!("{} / {}", case.algebra, case.automorphism);
    let basis = h_supersym_basis(&case.alg, &case.h)?;
    checks.push(CheckRecord::exact(format!("dim F_h = 1 (got {})", basis.len()), &label, basis.len() == 1));
    let gamma = find_gamma(&case.alg, &case.h, &case.module)?;
    // γ must be homogeneous of the selected parity and intertwine h.
    let par_ok = case.module.matrix_parity(&gamma.matrix) == Some(gamma.parity);
    let expected = match case.alg.simple_type() {
        Some(SimpleType::TypeII { .. }) => Some(case.h.xi_sign(&case.alg)?),
        _ => None,
    };
    let rule_ok = expected.is_none_or(|p| p == gamma.parity);
    let name = match expected {
        Some(_) => "gamma parity: even iff h(xi) = xi",
        None => "gamma homogeneous",
    };
    checks.push(CheckRecord::exact(name, format!("{label}: gamma {:?}", gamma.parity), par_ok && rule_ok));
    let f = closed_form_functional(&case.alg, &case.module, &gamma)?;
    let resid = basis.first().map_or(1.0, |b| f.proportionality_residual(b));
    let resid = if f.is_zero() { 1.0 } else { resid };
    checks.push(CheckRecord::measured("closed form ∝ null-space basis", &label, "-", resid, None, 1e-12));
    Ok(())
}

/// Runs a case, turning a solver error into a failed check for that case.
fn guarded<C: Scalar>(case: &Case<C>, checks: &mut Vec<CheckRecord>) {
    if let Err(e) = run_case(case, checks) {
        checks.push(CheckRecord::exact(format!("solver error: {e}"), format!("{} / {}", case.algebra, case.automorphism), false));
    }
}

/// Random homogeneous operators on `C^{m|k}` with small integer entries.
fn random_homogeneous(rng: &mut ChaCha8Rng, module: &SuperModule<Rational>, parity: Parity) -> Matrix<Rational> {
    let n = module.dim();
    let p = module.parity();
    let mut rows = vec![vec![Rational::from_i64(0); n]; n];
    for i in 0..n {
        for j in 0..n {
            if p[i] + p[j] == parity {
                rows[i][j] = Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into());
            }
        }
    }
    Matrix::from_rows(rows).expect("square")
}

pub fn superalg(_opts: &SuiteOptions) -> Result<Vec<CheckRecord>> {
    let mut checks = Vec::new();
    for case in exact_cases()? {
        guarded(&case, &mut checks);
    }
    for case in complex_cases()? {
        guarded(&case, &mut checks);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut nonzero = 0;
    for t in 0..100 {
        let (m, k) = [(1, 1), (2, 1), (1, 2), (2, 2)][t % 4];
        let (_, module) = make_end_super::<Rational>(m, k)?;
        let px = if rng.gen_bool(0.5) { Parity::Odd } else { Parity::Even };
        let py = if rng.gen_bool(0.5) { Parity::Odd } else { Parity::Even };
        let x = random_homogeneous(&mut rng, &module, px);
        let y = random_homogeneous(&mut rng, &module, py);
        if !Scalar::is_zero(&supertrace(&module, &supercommutator(&module, &x, &y))) {
            nonzero += 1;
        }
    }
    checks.push(CheckRecord::exact("str[X, Y] = 0 exactly", "100 random homogeneous pairs", nonzero == 0));
    Ok(checks)
}
