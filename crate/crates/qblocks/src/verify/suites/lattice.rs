//! Lattice discriminant data, Poisson summation and theta blocks.

use qblocks_core::sl2z::{ModularMatrix, SlashWeight};
use qblocks_core::vosa::{lattice_block_table, lattice_theta, poisson_sides, CosetVector, Lattice, ThetaParity};
use qblocks_core::{Complex64, ExactSeries, Exponent};

use super::rel;
use crate::error::Result;
use crate::verify::{check_numeric, check_t, BlockFamily, CheckRecord, SuiteOptions};

pub const GRAMS: [&str; 3] = ["[[1]]", "[[1,0],[0,1]]", "[[2,1],[1,2]]"];

/// The `(g, h)` theta-quotient table as a weight-0 family.
pub fn lattice_family(lattice: &Lattice, prec: Exponent) -> Result<BlockFamily> {
    let mut fam = BlockFamily::new(format!("lattice {:?}", lattice.gram()), SlashWeight::integer(0));
    for (label, basis) in lattice_block_table(lattice, prec)? {
        fam.insert(label, basis.iter().filter(|s| !s.is_zero()).map(ExactSeries::to_complex).collect());
    }
    Ok(fam)
}

pub fn lattice(opts: &SuiteOptions) -> Result<Vec<CheckRecord>> {
    let mut checks = Vec::new();
    let tol = opts.tol.max(1e-7);
    for g in GRAMS {
        let l: Lattice = g.parse()?;
        let d = l.dual_data()?;
        let order: i64 = d.smith.iter().product();
        checks.push(CheckRecord::exact(
            "|Q°/Q| = disc via Smith form",
            format!("{g}: disc {} invariants {:?}", d.disc, d.smith),
            order == d.disc && d.dual_cosets.len() as i64 == d.disc,
        ));
        if l.is_even() {
            checks.push(CheckRecord::exact("even lattice: Q• = Q°", g, d.ramond_cosets == d.dual_cosets));
        } else {
            checks.push(CheckRecord::exact("odd lattice: [Q° ∪ Q• : Q°] = 2", g, d.index_two(&l)));
        }
        for tau in [Complex64::new(0.0, 2.0), Complex64::new(1.0, 1.0)] {
            let (lhs, rhs) = poisson_sides(&l, tau, opts.prec)?;
            checks.push(CheckRecord::measured("Poisson transform", format!("{g} tau={tau}"), "S", rel(lhs, rhs), None, 1e-7));
        }
    }

    let z: Lattice = "[[1]]".parse()?;
    let half = CosetVector(vec![Exponent::new(1, 2)]);
    let odd: ExactSeries = lattice_theta(&z, &half, ThetaParity::Odd, opts.prec)?;
    checks.push(CheckRecord::exact("odd theta on 1/2 + Z vanishes", "[[1]]", odd.is_zero()));

    for g in ["[[1]]", "[[1,0],[0,1]]"] {
        let l: Lattice = g.parse()?;
        let fam = lattice_family(&l, opts.prec)?;
        checks.extend(CheckRecord::from_covariance(&format!("lattice {g} T coefficientwise"), &check_t(&fam, 1e-10)?));
        for m in [ModularMatrix::s(), ModularMatrix::t()] {
            let rep = check_numeric(&fam, &m, &opts.samples, tol)?;
            checks.extend(CheckRecord::from_covariance(&format!("lattice {g} table"), &rep));
        }
    }
    Ok(checks)
}
