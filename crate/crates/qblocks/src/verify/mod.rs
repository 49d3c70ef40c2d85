//! The covariance harness and the named verification suites.

mod family;
pub mod suites;

pub use family::{
    check_cocycle, check_numeric, check_s, check_t, check_translation, default_samples, BlockFamily, CocycleRecord,
    ComplexValue, CovarianceRecord, CovarianceReport, TwistPairLabel,
};
pub use suites::{charged, fermion, lattice, lattice_family, modular, pfunctions, superalg};

use qblocks_core::{Complex64, Exponent};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Registered suite names, in the order `all` runs them.
pub const SUITES: &[&str] = &["pfunctions", "modular", "fermion", "charged", "lattice", "superalg"];

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    /// Truncation order for series used in numerical checks.
    pub prec: Exponent,
    pub tol: f64,
    pub samples: Vec<Complex64>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { prec: Exponent::from_integer(100), tol: 1e-8, samples: default_samples() }
    }
}

/// One line of a suite report.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub labels: String,
    #[serde(rename = "A")]
    pub matrix: String,
    pub residual: f64,
    pub constant: Option<ComplexValue>,
    pub pass: bool,
}

impl CheckRecord {
    /// An exact identity: residual 0 on success, 1 on failure.
    pub fn exact(name: impl Into<String>, labels: impl Into<String>, ok: bool) -> Self {
        CheckRecord {
            name: name.into(),
            labels: labels.into(),
            matrix: "-".into(),
            residual: if ok { 0.0 } else { 1.0 },
            constant: None,
            pass: ok,
        }
    }

    pub fn measured(
        name: impl Into<String>,
        labels: impl Into<String>,
        matrix: impl Into<String>,
        residual: f64,
        constant: Option<Complex64>,
        tol: f64,
    ) -> Self {
        CheckRecord {
            name: name.into(),
            labels: labels.into(),
            matrix: matrix.into(),
            residual,
            constant: constant.map(Into::into),
            pass: residual <= tol && residual.is_finite(),
        }
    }

    /// Turns every record of a covariance report into a check line.
    pub fn from_covariance(name: &str, report: &CovarianceReport) -> Vec<Self> {
        report
            .records
            .iter()
            .map(|r| CheckRecord {
                name: name.to_string(),
                labels: format!("{} -> {} [{}]", r.source.0, r.target.0, r.basis_index),
                matrix: r.matrix.clone(),
                residual: r.residual,
                constant: r.constant().map(Into::into),
                pass: r.pass,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Runs a named suite; `all` runs every registered suite concurrently and
/// concatenates the results in registration order.
pub fn check_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let run = |n: &str| -> Result<Vec<CheckRecord>> {
        match n {
            "pfunctions" => pfunctions(opts),
            "modular" => modular(opts),
            "fermion" => fermion(opts),
            "charged" => charged(opts),
            "lattice" => lattice(opts),
            "superalg" => superalg(opts),
            other => Err(Error::UnknownSuite(other.to_string())),
        }
    };
    let checks = if name == "all" {
        let parts: Vec<Result<Vec<CheckRecord>>> = SUITES.par_iter().map(|n| run(n)).collect();
        let mut all = Vec::new();
        for p in parts {
            all.extend(p?);
        }
        all
    } else {
        run(name)?
    };
    Ok(SuiteReport { suite: name.to_string(), checks })
}
