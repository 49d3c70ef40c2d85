//! The neutral free fermion (`c = 1/2`) with its parity twist `σ`.
//!
//! Labels `(g, h)` use `1` and `σ`; as a [`TwistPair`] `σ` is `−1`. The first
//! entry twists the module, the second is inserted into the trace.

use alloc::vec::Vec;
use core::fmt;

use crate::error::Result;
use crate::modforms::{dedekind_eta, RootOfUnity, TwistPair};
use crate::scalar::Rational;
use crate::series::{product_expand, ExactSeries, Exponent, ProductFactor};
use crate::superalg::{make_queer, SuperAlgebra, SuperModule};

/// The state inserted into the trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Insertion {
    /// The vacuum, weight 0.
    Vac,
    /// The fermion `φ`, weight 1/2.
    Phi,
}

impl Insertion {
    pub fn weight(self) -> Exponent {
        match self {
            Insertion::Vac => Exponent::new(0, 1),
            Insertion::Phi => Exponent::new(1, 2),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FermionBlockLabel {
    pub g_sigma: bool,
    pub h_sigma: bool,
    pub insertion: Insertion,
}

impl FermionBlockLabel {
    pub fn new(g_sigma: bool, h_sigma: bool, insertion: Insertion) -> Self {
        FermionBlockLabel { g_sigma, h_sigma, insertion }
    }

    pub fn twist_pair(&self) -> TwistPair {
        let r = |s: bool| if s { RootOfUnity::minus_one() } else { RootOfUnity::one() };
        TwistPair::new(r(self.g_sigma), r(self.h_sigma))
    }

    pub fn from_twist_pair(tw: &TwistPair, insertion: Insertion) -> Self {
        FermionBlockLabel::new(!tw.mu.is_one(), !tw.lambda.is_one(), insertion)
    }
}

impl fmt::Display for FermionBlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |b: bool| if b { "s" } else { "1" };
        let u = match self.insertion {
            Insertion::Vac => "vac",
            Insertion::Phi => "phi",
        };
        write!(f, "ff:{}:{}:{}", s(self.g_sigma), s(self.h_sigma), u)
    }
}

/// The block spanning `C(g, h; u)`, expanded below `prec`, from mode counting:
///
/// * `(σ, 1; vac)`: `q^{−1/48} ∏_{n≥0} (1 − q^{n+1/2})`
/// * `(σ, σ; vac)`: `q^{−1/48} ∏_{n≥0} (1 + q^{n+1/2})`
/// * `(1, σ; vac)`: `q^{−1/48 + 1/16} ∏_{n≥0} (1 + qⁿ)`
/// * `(1, 1; φ)`: `q^{1/24} ∏_{n≥1} (1 − qⁿ)`
///
/// and zero for the rest (odd traces vanish).
pub fn ff_block(label: &FermionBlockLabel, prec: Exponent) -> Result<ExactSeries> {
    let half = Exponent::new(1, 2);
    let one = Exponent::from_integer(1);
    let zero = Exponent::new(0, 1);
    let (lead, factor) = match (label.g_sigma, label.h_sigma, label.insertion) {
        (true, false, Insertion::Vac) => (Exponent::new(-1, 48), ProductFactor::unit(-1, one, half, 0)),
        (true, true, Insertion::Vac) => (Exponent::new(-1, 48), ProductFactor::unit(1, one, half, 0)),
        (false, true, Insertion::Vac) => {
            (Exponent::new(-1, 48) + Exponent::new(1, 16), ProductFactor::unit(1, one, zero, 0))
        }
        (false, false, Insertion::Phi) => return dedekind_eta(prec),
        _ => return Ok(ExactSeries::zero(Some(prec))),
    };
    if prec <= lead {
        return Ok(ExactSeries::zero(Some(prec)));
    }
    Ok(product_expand(&[factor], 1, prec - lead)?.shift(lead))
}

/// All four `(g, h)` blocks for one insertion, in label order.
pub fn ff_family(insertion: Insertion, prec: Exponent) -> Result<Vec<(FermionBlockLabel, ExactSeries)>> {
    let mut out = Vec::with_capacity(4);
    for g in [false, true] {
        for h in [false, true] {
            let label = FermionBlockLabel::new(g, h, insertion);
            out.push((label, ff_block(&label, prec)?));
        }
    }
    Ok(out)
}

/// The Zhu algebra of the `σ`-twisted module, `C[ξ]/(ξ² = 1)` with `ξ` the
/// image of `√2·φ`, which is the queer superalgebra `Q₁`.
pub fn fermion_zhu_algebra() -> Result<(SuperAlgebra<Rational>, SuperModule<Rational>)> {
    make_queer(1)
}
