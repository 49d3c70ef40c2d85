//! Exact and floating q-series machinery for twisted conformal blocks.
//!
//! The crate is `no_std` (it needs `alloc`). It provides:
//!
//! - [`series`]: truncated Puiseux series in `q` over exact rationals or
//!   complex floats, with products, inverses, rescaling and the `τ → τ+1`
//!   shift.
//! - [`modforms`]: Bernoulli polynomials, normalized Eisenstein series, the
//!   twisted Weierstrass-type functions `P_k^{μ,λ}`, Dedekind eta and Jacobi
//!   theta.
//! - [`sl2z`]: the modular group, its action on `τ` and on twist pairs, and
//!   the principal-branch automorphy factor.
//! - [`superalg`]: structure-constant superalgebras and `h`-supersymmetric
//!   functionals.
//! - [`vosa`]: the free fermion, charged fermion and lattice block families.
#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod error;
pub mod linalg;
pub mod modforms;
pub mod scalar;
pub mod series;
pub mod sl2z;
pub mod superalg;
pub mod vosa;

pub use error::{Error, Result};
pub use scalar::{Complex64, Rational, Scalar};
pub use series::{ComplexSeries, Exponent, ExactSeries, ProductFactor, PuiseuxSeries};
