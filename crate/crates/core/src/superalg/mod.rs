//! Finite-dimensional associative superalgebras given by structure constants,
//! and the functionals `f` with `f(ab) = δ_{λ(a)λ(b),1} (−1)^{p(a)p(b)} λ(a)⁻¹ f(ba)`
//! for a finite-order automorphism `h`.

mod algebra;
mod automorphism;
mod functional;

pub use algebra::{make_end_super, make_queer, Parity, SimpleType, SuperAlgebra, SuperModule};
pub use automorphism::AlgebraAutomorphism;
pub use functional::{
    closed_form_functional, find_gamma, h_eigenbasis, h_supersym_basis, supercommutator, supertrace, Intertwiner,
    LinearFunctional,
};
