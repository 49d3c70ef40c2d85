use alloc::format;
use alloc::vec::Vec;

use super::algebra::{approx_vec, unit_vec, Parity, SimpleType, SuperAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Largest order searched for when validating an automorphism.
pub const MAX_ORDER: usize = 64;

/// An even algebra automorphism `h` of finite order, stored as the matrix
/// whose column `j` holds the coordinates of `h(e_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraAutomorphism<C> {
    matrix: Matrix<C>,
    order: usize,
}

impl<C: Scalar> AlgebraAutomorphism<C> {
    /// Validates multiplicativity, evenness, the unit, and finds the order.
    pub fn new(alg: &SuperAlgebra<C>, matrix: Matrix<C>) -> Result<Self> {
        let d = alg.dim();
        if matrix.rows() != d || matrix.cols() != d {
            return Err(Error::DimensionMismatch("automorphism matrix".into()));
        }
        let image = |v: &[C]| matrix.mul_vec(v);
        for j in 0..d {
            let hj = image(&unit_vec(d, j));
            let nonzero = hj.iter().any(|x| !x.is_zero());
            if nonzero && alg.parity_of(&hj) != Some(alg.parity()[j]) {
                return Err(Error::NotAnAutomorphism(format!("h(e_{j}) changes parity")));
            }
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = image(&alg.basis_product(i, j));
                let rhs = alg.mul(&image(&unit_vec(d, i)), &image(&unit_vec(d, j)));
                if !approx_vec(&lhs, &rhs) {
                    return Err(Error::NotAnAutomorphism(format!("h(e_{i} e_{j}) != h(e_{i}) h(e_{j})")));
                }
            }
        }
        if !approx_vec(&image(alg.unit()), alg.unit()) {
            return Err(Error::NotAnAutomorphism("h(1) != 1".into()));
        }
        let id = Matrix::identity(d);
        let tol = if C::EXACT { 0.0 } else { 1e-9 };
        let mut power = matrix.clone();
        let mut order = 1;
        while !power.approx_eq(&id, tol) {
            order += 1;
            if order > MAX_ORDER {
                return Err(Error::NotAnAutomorphism(format!("order exceeds {MAX_ORDER}")));
            }
            power = power.mul(&matrix);
        }
        Ok(AlgebraAutomorphism { matrix, order })
    }

    pub fn identity(alg: &SuperAlgebra<C>) -> Self {
        AlgebraAutomorphism { matrix: Matrix::identity(alg.dim()), order: 1 }
    }

    /// The parity automorphism `σ(a) = (−1)^{p(a)} a`.
    pub fn parity(alg: &SuperAlgebra<C>) -> Result<Self> {
        let d = alg.dim();
        let m = Matrix::from_fn(d, d, |i, j| if i == j { alg.parity()[i].sign() } else { C::zero() });
        Self::new(alg, m)
    }

    /// `a ↦ u a u⁻¹` for a homogeneous invertible `u`.
    pub fn inner(alg: &SuperAlgebra<C>, u: &[C]) -> Result<Self> {
        if alg.parity_of(u).is_none() {
            return Err(Error::NotAnAutomorphism("conjugating element is not homogeneous".into()));
        }
        let inv = alg.inverse(u).ok_or_else(|| Error::NotAnAutomorphism("element is not invertible".into()))?;
        let d = alg.dim();
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            let col = alg.mul(&alg.mul(u, &unit_vec(d, j)), &inv);
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Self::new(alg, m)
    }

    /// On `Q_n`: fixes the even part and negates the odd part, so `ξ ↦ −ξ`.
    /// (This coincides with the parity automorphism.)
    pub fn xi_negation(alg: &SuperAlgebra<C>) -> Result<Self> {
        match alg.simple_type() {
            Some(SimpleType::TypeII { .. }) => Self::parity(alg),
            _ => Err(Error::NotSimple("xi_negation needs a Q_n".into())),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, alg: &SuperAlgebra<C>, other: &Self) -> Result<Self> {
        Self::new(alg, self.matrix.mul(&other.matrix))
    }

    pub fn matrix(&self) -> &Matrix<C> {
        &self.matrix
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn apply(&self, a: &[C]) -> Vec<C> {
        self.matrix.mul_vec(a)
    }

    /// For a `Q_n`, the sign `s` with `h(ξ) = sξ`.
    pub fn xi_sign(&self, alg: &SuperAlgebra<C>) -> Result<Parity> {
        let Some(SimpleType::TypeII { xi }) = alg.simple_type() else {
            return Err(Error::NotSimple("not a type II algebra".into()));
        };
        let hx = self.apply(xi);
        if approx_vec(&hx, xi) {
            Ok(Parity::Even)
        } else if approx_vec(&hx, &xi.iter().map(C::neg_ref).collect::<Vec<_>>()) {
            Ok(Parity::Odd)
        } else {
            Err(Error::NotAnAutomorphism("h(xi) is not ±xi".into()))
        }
    }
}
