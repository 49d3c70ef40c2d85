use alloc::vec::Vec;

use super::algebra::{unit_vec, Parity, SimpleType, SuperAlgebra, SuperModule};
use super::automorphism::AlgebraAutomorphism;
use crate::error::{Error, Result};
use crate::linalg::{proportionality_residual, Matrix};
use crate::scalar::Scalar;
use crate::series::Exponent;

/// `f(a) = Σ coeffs[i]·a_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFunctional<C> {
    coeffs: Vec<C>,
}

impl<C: Scalar> LinearFunctional<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        LinearFunctional { coeffs }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn eval(&self, a: &[C]) -> C {
        crate::linalg::dot(&self.coeffs, a)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.magnitude() <= 1e-12)
    }

    /// Relative distance of `self` from the line through `other`.
    pub fn proportionality_residual(&self, other: &Self) -> f64 {
        proportionality_residual(&self.coeffs, &other.coeffs)
    }
}

/// One homogeneous `h`-eigenvector with its eigenvalue `e^{2πi·turn}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenVector<C> {
    pub vector: Vec<C>,
    pub turn: Exponent,
    pub parity: Parity,
}

/// A basis of the algebra made of homogeneous `h`-eigenvectors, built from
/// the spectral projectors `(1/m) Σ_j ω^{−js} h^j`.
pub fn h_eigenbasis<C: Scalar>(alg: &SuperAlgebra<C>, h: &AlgebraAutomorphism<C>) -> Result<Vec<EigenVector<C>>> {
    let d = alg.dim();
    let m = h.order();
    let mut powers = Vec::with_capacity(m);
    powers.push(Matrix::identity(d));
    for j in 1..m {
        powers.push(powers[j - 1].mul(h.matrix()));
    }
    let inv_m = C::from_rational(&crate::scalar::Rational::new(1.into(), (m as i64).into()));
    let mut basis = Vec::new();
    for s in 0..m {
        let mut proj = Matrix::zeros(d, d);
        for (j, hj) in powers.iter().enumerate() {
            let turn = Exponent::new(-((j * s) as i64), m as i64);
            let w = C::root_of_unity(&turn).ok_or(Error::UnsupportedRoot(turn))?;
            proj = proj.add(&hj.scale(&w));
        }
        // Projectors have unit scale, so rounding noise is cut absolutely.
        let proj = proj.scale(&inv_m).map(|x| if x.magnitude() <= C::tolerance() { C::zero() } else { x.clone() });
        for parity in [Parity::Even, Parity::Odd] {
            let rows: Vec<Vec<C>> = (0..d)
                .filter(|&i| alg.parity()[i] == parity)
                .map(|i| proj.mul_vec(&unit_vec(d, i)))
                .collect();
            if rows.is_empty() {
                continue;
            }
            let mut r = Matrix::from_rows(rows)?;
            let rank = r.rref().len();
            for i in 0..rank {
                basis.push(EigenVector { vector: r.row(i).to_vec(), turn: Exponent::new(s as i64, m as i64), parity });
            }
        }
    }
    if basis.len() != d {
        return Err(Error::NotAnAutomorphism("eigenvectors do not span the algebra".into()));
    }
    Ok(basis)
}

/// A basis of the space of `f` with
/// `f(ab) = δ_{λ(a)λ(b),1} (−1)^{p(a)p(b)} λ(a)⁻¹ f(ba)` on eigenvectors.
pub fn h_supersym_basis<C: Scalar>(
    alg: &SuperAlgebra<C>,
    h: &AlgebraAutomorphism<C>,
) -> Result<Vec<LinearFunctional<C>>> {
    let eig = h_eigenbasis(alg, h)?;
    let mut rows = Vec::with_capacity(eig.len() * eig.len());
    for a in &eig {
        let inv_lambda = C::root_of_unity(&-a.turn).ok_or(Error::UnsupportedRoot(-a.turn))?;
        for b in &eig {
            let ab = alg.mul(&a.vector, &b.vector);
            let row = if (a.turn + b.turn).is_integer() {
                let c = a.parity.pair_sign::<C>(b.parity).mul_ref(&inv_lambda);
                let ba = alg.mul(&b.vector, &a.vector);
                ab.iter().zip(&ba).map(|(x, y)| x.sub_ref(&c.mul_ref(y))).collect()
            } else {
                ab
            };
            rows.push(row);
        }
    }
    let system = Matrix::from_rows(rows)?;
    Ok(system.null_space().into_iter().map(LinearFunctional::new).collect())
}

/// A homogeneous invertible `γ` on the module with `ρ(h(a)) = γ⁻¹ ρ(a) γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Intertwiner<C> {
    pub matrix: Matrix<C>,
    pub parity: Parity,
    /// Dimension of the solution space in the selected parity.
    pub solution_dimension: usize,
}

/// Solves `γ ρ(h(a)) = ρ(a) γ` inside one parity of `End(N)`.
///
/// For `Q_n` the parity is forced: even when `h(ξ) = ξ`, odd when `h(ξ) = −ξ`.
/// Otherwise the unique parity with a nonzero solution is used. The result is
/// scaled so that its first nonzero entry (row-major) is 1.
pub fn find_gamma<C: Scalar>(
    alg: &SuperAlgebra<C>,
    h: &AlgebraAutomorphism<C>,
    module: &SuperModule<C>,
) -> Result<Intertwiner<C>> {
    let candidates: Vec<Parity> = match alg.simple_type() {
        Some(SimpleType::TypeII { .. }) => alloc::vec![h.xi_sign(alg)?],
        _ => alloc::vec![Parity::Even, Parity::Odd],
    };
    let mut found = Vec::new();
    for parity in candidates {
        let space = intertwiner_space(alg, h, module, parity);
        if !space.is_empty() {
            found.push((parity, space));
        }
    }
    let (parity, space) = match found.len() {
        0 => return Err(Error::NoIntertwiner),
        1 => found.pop().expect("one entry"),
        _ => return Err(Error::NotSimple("intertwiners of both parities; module is not simple".into())),
    };
    let dim = space.len();
    let mut tries: Vec<Matrix<C>> = space.clone();
    tries.push(space.iter().skip(1).fold(space[0].clone(), |acc, m| acc.add(m)));
    let gamma = tries
        .into_iter()
        .find(|m| m.inverse().is_some())
        .ok_or(Error::NoIntertwiner)?;
    let n = module.dim();
    let first = (0..n * n)
        .map(|k| gamma[(k / n, k % n)].clone())
        .find(|x| x.magnitude() > 1e-12)
        .ok_or(Error::NoIntertwiner)?;
    let scale = first.try_inv().ok_or(Error::NoIntertwiner)?;
    Ok(Intertwiner { matrix: gamma.scale(&scale), parity, solution_dimension: dim })
}

fn intertwiner_space<C: Scalar>(
    alg: &SuperAlgebra<C>,
    h: &AlgebraAutomorphism<C>,
    module: &SuperModule<C>,
    parity: Parity,
) -> Vec<Matrix<C>> {
    let n = module.dim();
    let p = module.parity();
    let vars: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| p[r] + p[c] == parity)
        .collect();
    let var_index = |r: usize, c: usize| vars.iter().position(|&v| v == (r, c));
    let mut rows = Vec::new();
    for a in 0..alg.dim() {
        let ea = unit_vec(alg.dim(), a);
        let rh = module.act(&h.apply(&ea));
        let ra = module.act(&ea);
        for i in 0..n {
            for j in 0..n {
                let mut row = alloc::vec![C::zero(); vars.len()];
                for k in 0..n {
                    // (γ ρ(h a))_ij = Σ_k γ_ik R_kj
                    if let Some(v) = var_index(i, k) {
                        row[v] = row[v].add_ref(&rh[(k, j)]);
                    }
                    // (ρ(a) γ)_ij = Σ_k A_ik γ_kj
                    if let Some(v) = var_index(k, j) {
                        row[v] = row[v].sub_ref(&ra[(i, k)]);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let null = if rows.is_empty() {
        (0..vars.len()).map(|v| unit_vec(vars.len(), v)).collect()
    } else {
        Matrix::from_rows(rows).map(|m| m.null_space()).unwrap_or_default()
    };
    null.into_iter()
        .map(|sol| {
            let mut g = Matrix::zeros(n, n);
            for (v, &(r, c)) in vars.iter().enumerate() {
                g[(r, c)] = sol[v].clone();
            }
            g
        })
        .collect()
}

/// `a ↦ str_N(ρ(a) γ σ^{p(γ)})` for `End(C^{m|k})` and
/// `a ↦ tr_N(ρ(a) γ σ^{p(γ)} ρ(ξ))` for `Q_n`.
pub fn closed_form_functional<C: Scalar>(
    alg: &SuperAlgebra<C>,
    module: &SuperModule<C>,
    gamma: &Intertwiner<C>,
) -> Result<LinearFunctional<C>> {
    let mut right = gamma.matrix.clone();
    if gamma.parity.is_odd() {
        right = right.mul(&module.parity_operator());
    }
    let coeffs = match alg.simple_type() {
        Some(SimpleType::TypeI) => (0..alg.dim())
            .map(|a| supertrace(module, &module.action()[a].mul(&right)))
            .collect(),
        Some(SimpleType::TypeII { xi }) => {
            let right = right.mul(&module.act(xi));
            (0..alg.dim()).map(|a| module.action()[a].mul(&right).trace()).collect()
        }
        None => return Err(Error::NotSimple("closed form needs a simple type".into())),
    };
    Ok(LinearFunctional::new(coeffs))
}

/// `str(M) = Σ_i (−1)^{p(i)} M_ii`.
pub fn supertrace<C: Scalar>(module: &SuperModule<C>, m: &Matrix<C>) -> C {
    module
        .parity()
        .iter()
        .enumerate()
        .fold(C::zero(), |acc, (i, p)| acc.add_ref(&p.sign::<C>().mul_ref(&m[(i, i)])))
}

/// `[x, y] = xy − (−1)^{p(x)p(y)} yx` for homogeneous operators.
pub fn supercommutator<C: Scalar>(module: &SuperModule<C>, x: &Matrix<C>, y: &Matrix<C>) -> Matrix<C> {
    let px = module.matrix_parity(x).unwrap_or(Parity::Even);
    let py = module.matrix_parity(y).unwrap_or(Parity::Even);
    let sign: C = px.pair_sign(py);
    x.mul(y).sub(&y.mul(x).scale(&sign))
}
