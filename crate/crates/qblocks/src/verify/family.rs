//! Span-membership checks for a labelled family of q-series under SL₂(ℤ).

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use qblocks_core::modforms::TwistPair;
use qblocks_core::sl2z::{automorphy_factor, ModularMatrix, SlashWeight};
use qblocks_core::{Complex64, ComplexSeries, Exponent};
use serde::Serialize;

use crate::error::{Error, Result};

/// Sample points off the imaginary axis, so phase mistakes cannot hide.
pub fn default_samples() -> Vec<Complex64> {
    vec![
        Complex64::new(0.0, 1.0),
        Complex64::new(1.0 / 3.0, 1.0),
        Complex64::new(-0.4, 0.9),
        Complex64::new(0.0, 2.0),
        Complex64::new(0.2, 0.8),
    ]
}

/// Deterministic extra points used when a target span is wider than the
/// default sample set allows.
fn extra_samples(count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|j| {
            let t = j as f64 + 1.0;
            Complex64::new(-0.45 + 0.9 * ((t * 0.618_033_988_7) % 1.0), 0.75 + 0.1 * (t % 5.0))
        })
        .collect()
}

/// `{(g, h) ↦ basis of C(g, h)}` with a common slash weight.
#[derive(Debug, Clone)]
pub struct BlockFamily {
    pub name: String,
    pub weight: SlashWeight,
    pub labels: BTreeMap<TwistPair, Vec<ComplexSeries>>,
}

impl BlockFamily {
    pub fn new(name: impl Into<String>, weight: SlashWeight) -> Self {
        BlockFamily { name: name.into(), weight, labels: BTreeMap::new() }
    }

    pub fn insert(&mut self, label: TwistPair, basis: Vec<ComplexSeries>) {
        self.labels.insert(label, basis);
    }

    fn target(&self, label: &TwistPair, m: &ModularMatrix) -> Result<(TwistPair, &Vec<ComplexSeries>)> {
        let t = m.act_on_twist_pair(label);
        let basis = self.labels.get(&t).ok_or_else(|| Error::MissingLabel(t.to_string()))?;
        Ok((t, basis))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        ComplexValue { re: z.re, im: z.im }
    }
}

impl From<ComplexValue> for Complex64 {
    fn from(z: ComplexValue) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Result of one span-membership test.
#[derive(Debug, Clone, Serialize)]
pub struct CovarianceRecord {
    pub source: TwistPairLabel,
    pub target: TwistPairLabel,
    pub basis_index: usize,
    pub matrix: String,
    pub residual: f64,
    /// Least-squares coefficients on the target basis.
    pub coefficients: Vec<ComplexValue>,
    pub pass: bool,
}

impl CovarianceRecord {
    /// The multiplier when the target span is one-dimensional.
    pub fn constant(&self) -> Option<Complex64> {
        match self.coefficients.as_slice() {
            [c] => Some((*c).into()),
            [] => Some(Complex64::new(0.0, 0.0)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TwistPairLabel(pub String);

impl From<&TwistPair> for TwistPairLabel {
    fn from(t: &TwistPair) -> Self {
        TwistPairLabel(t.to_string())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CovarianceReport {
    pub family: String,
    pub records: Vec<CovarianceRecord>,
}

impl CovarianceReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.records.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    pub fn find(&self, source: &TwistPair, basis_index: usize) -> Option<&CovarianceRecord> {
        let label = TwistPairLabel::from(source);
        self.records.iter().find(|r| r.source == label && r.basis_index == basis_index)
    }
}

/// Complex least squares `min ‖Ac − b‖`, returning `(c, relative residual)`.
fn least_squares(a: &DMatrix<Complex64>, b: &DVector<Complex64>) -> Result<(Vec<Complex64>, f64)> {
    let bn = b.norm();
    if a.ncols() == 0 {
        return Ok((Vec::new(), if bn == 0.0 { 0.0 } else { 1.0 }));
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if smin <= smax * 1e-12 {
        return Err(Error::IllConditioned { condition: if smin == 0.0 { f64::INFINITY } else { smax / smin } });
    }
    let c = svd.solve(b, 0.0).map_err(|e| Error::Usage(e.to_string()))?;
    let r = (a * &c - b).norm();
    let rel = if bn == 0.0 { r } else { r / bn };
    Ok((c.iter().copied().collect(), rel))
}

/// Checks `f|A ∈ span C((g,h)·A)` for every basis element, evaluating both
/// sides at the sample points.
pub fn check_numeric(
    family: &BlockFamily,
    m: &ModularMatrix,
    taus: &[Complex64],
    tol: f64,
) -> Result<CovarianceReport> {
    let mut records = Vec::new();
    for (label, basis) in &family.labels {
        let (target, tbasis) = family.target(label, m)?;
        let mut samples = taus.to_vec();
        if samples.len() < tbasis.len() + 2 {
            samples.extend(extra_samples(tbasis.len() + 2 - samples.len()));
        }
        let mut tmat = DMatrix::<Complex64>::zeros(samples.len(), tbasis.len());
        for (s, tau) in samples.iter().enumerate() {
            for (j, t) in tbasis.iter().enumerate() {
                tmat[(s, j)] = t.eval_at_tau(*tau)?.0;
            }
        }
        for (idx, f) in basis.iter().enumerate() {
            let values = samples
                .iter()
                .map(|&tau| {
                    let v = f.eval_at_tau(m.act_on_tau(tau)?)?.0;
                    Ok(automorphy_factor(m, tau, &family.weight)? * v)
                })
                .collect::<Result<Vec<_>>>()?;
            let rhs = DVector::from_vec(values);
            let (coeffs, residual) = if f.is_zero() {
                (vec![Complex64::new(0.0, 0.0); tbasis.len()], 0.0)
            } else {
                least_squares(&tmat, &rhs)?
            };
            records.push(CovarianceRecord {
                source: label.into(),
                target: (&target).into(),
                basis_index: idx,
                matrix: m.to_string(),
                residual,
                coefficients: coeffs.into_iter().map(Into::into).collect(),
                pass: residual <= tol,
            });
        }
    }
    Ok(CovarianceReport { family: family.name.clone(), records })
}

/// Checks `f|Tⁿ ∈ span C((g,h)·Tⁿ)` coefficient by coefficient below the
/// common truncation order.
pub fn check_translation(family: &BlockFamily, n: i64, tol: f64) -> Result<CovarianceReport> {
    let m = ModularMatrix::t().pow(n);
    let mut records = Vec::new();
    for (label, basis) in &family.labels {
        let (target, tbasis) = family.target(label, &m)?;
        for (idx, f) in basis.iter().enumerate() {
            let g = f.tshift_by(n)?;
            // Collect the coefficient rows below the shared horizon.
            let horizon = tbasis
                .iter()
                .chain(std::iter::once(&g))
                .filter_map(|s| s.precision())
                .min();
            let mut exps: Vec<Exponent> =
                tbasis.iter().chain(std::iter::once(&g)).flat_map(|s| s.exponents().collect::<Vec<_>>()).collect();
            exps.sort();
            exps.dedup();
            exps.retain(|e| horizon.is_none_or(|h| *e < h));
            let a = DMatrix::from_fn(exps.len(), tbasis.len(), |i, j| tbasis[j].coeff(&exps[i]));
            let b = DVector::from_iterator(exps.len(), exps.iter().map(|e| g.coeff(e)));
            let (coeffs, residual) = if g.is_zero() {
                (vec![Complex64::new(0.0, 0.0); tbasis.len()], 0.0)
            } else {
                least_squares(&a, &b)?
            };
            records.push(CovarianceRecord {
                source: label.into(),
                target: (&target).into(),
                basis_index: idx,
                matrix: m.to_string(),
                residual,
                coefficients: coeffs.into_iter().map(Into::into).collect(),
                pass: residual <= tol,
            });
        }
    }
    Ok(CovarianceReport { family: family.name.clone(), records })
}

/// `T` coefficientwise.
pub fn check_t(family: &BlockFamily, tol: f64) -> Result<CovarianceReport> {
    check_translation(family, 1, tol)
}

/// `S` numerically at the given samples.
pub fn check_s(family: &BlockFamily, taus: &[Complex64], tol: f64) -> Result<CovarianceReport> {
    check_numeric(family, &ModularMatrix::s(), taus, tol)
}

/// One projective-multiplier comparison.
#[derive(Debug, Clone, Serialize)]
pub struct CocycleRecord {
    pub label: TwistPairLabel,
    pub product: String,
    /// `c_{AB}(L) / (c_A(L)·c_B(L·A))`.
    pub ratio: ComplexValue,
    /// `|ratio^K − 1|`.
    pub deviation: f64,
    pub pass: bool,
}

/// For labels with one-dimensional spans, compares the measured multiplier of
/// `AB` with `c_A(L)·c_B(L·A)`: they must agree up to a `K`-th root of unity.
pub fn check_cocycle(
    family: &BlockFamily,
    a: &ModularMatrix,
    b: &ModularMatrix,
    taus: &[Complex64],
    big_k: u32,
    tol: f64,
) -> Result<Vec<CocycleRecord>> {
    let ab = a.compose(b);
    let ra = check_numeric(family, a, taus, tol)?;
    let rb = check_numeric(family, b, taus, tol)?;
    let rab = check_numeric(family, &ab, taus, tol)?;
    let mut out = Vec::new();
    for (label, basis) in &family.labels {
        if basis.len() != 1 || basis[0].is_zero() {
            continue;
        }
        let moved = a.act_on_twist_pair(label);
        let (Some(ca), Some(cb), Some(cab)) = (
            ra.find(label, 0).and_then(CovarianceRecord::constant),
            rb.find(&moved, 0).and_then(CovarianceRecord::constant),
            rab.find(label, 0).and_then(CovarianceRecord::constant),
        ) else {
            continue;
        };
        let ratio = cab / (ca * cb);
        let deviation = (ratio.powu(big_k) - 1.0).norm();
        out.push(CocycleRecord {
            label: label.into(),
            product: format!("{a}·{b}"),
            ratio: ratio.into(),
            deviation,
            pass: deviation <= tol && ratio.is_finite(),
        });
    }
    Ok(out)
}
