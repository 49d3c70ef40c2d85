pub mod charged;
pub mod fermion;
pub mod lattice;
pub mod modular;
pub mod pfunctions;
pub mod superalg;

pub use charged::charged;
pub use fermion::fermion;
pub use lattice::{lattice, lattice_family};
pub use modular::modular;
pub use pfunctions::pfunctions;
pub use superalg::superalg;

use qblocks_core::{Complex64, ComplexSeries};

/// Largest relative coefficient gap between two series below their common horizon.
pub(crate) fn series_gap(a: &ComplexSeries, b: &ComplexSeries) -> f64 {
    let scale = a.max_magnitude().max(b.max_magnitude()).max(1e-300);
    let diff = a.sub(b);
    diff.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max) / scale
}

pub(crate) fn rel(a: Complex64, b: Complex64) -> f64 {
    let s = a.norm().max(b.norm());
    if s == 0.0 { 0.0 } else { (a - b).norm() / s }
}
