use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Add;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(−1)^p`.
    pub fn sign<C: Scalar>(self) -> C {
        match self {
            Parity::Even => C::one(),
            Parity::Odd => C::one().neg_ref(),
        }
    }

    /// `(−1)^{p q}`.
    pub fn pair_sign<C: Scalar>(self, other: Parity) -> C {
        if self.is_odd() && other.is_odd() { C::one().neg_ref() } else { C::one() }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs { Parity::Even } else { Parity::Odd }
    }
}

/// Which family of simple superalgebras an instance belongs to.
#[derive(Debug, Clone, PartialEq)]
pub enum SimpleType<C> {
    /// `End(C^{m|k})`.
    TypeI,
    /// `Q_n`, with the coordinates of the odd central element `ξ`.
    TypeII { xi: Vec<C> },
}

/// An associative superalgebra on a homogeneous basis `e_0, …, e_{d−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperAlgebra<C> {
    parity: Vec<Parity>,
    /// `structure[(i·d + j)·d + k]` is the coefficient of `e_k` in `e_i e_j`.
    structure: Vec<C>,
    unit: Vec<C>,
    simple_type: Option<SimpleType<C>>,
}

impl<C: Scalar> SuperAlgebra<C> {
    /// Builds an algebra and checks grading, associativity and the unit.
    pub fn new(parity: Vec<Parity>, structure: Vec<C>, unit: Vec<C>) -> Result<Self> {
        let d = parity.len();
        if d == 0 {
            return Err(Error::InvalidArgument("superalgebra must be nonzero".into()));
        }
        if structure.len() != d * d * d || unit.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "dimension {d} needs {} structure constants and a unit of length {d}",
                d * d * d
            )));
        }
        let alg = SuperAlgebra { parity, structure, unit, simple_type: None };
        alg.validate()?;
        Ok(alg)
    }

    pub fn with_simple_type(mut self, t: SimpleType<C>) -> Result<Self> {
        if let SimpleType::TypeII { xi } = &t {
            if xi.len() != self.dim() {
                return Err(Error::DimensionMismatch("xi coordinates".into()));
            }
            if !self.is_homogeneous(xi, Parity::Odd) {
                return Err(Error::NotSimple("xi must be odd".into()));
            }
            let sq = self.mul(xi, xi);
            if !approx_vec(&sq, &self.unit) {
                return Err(Error::NotSimple("xi must square to 1".into()));
            }
        }
        self.simple_type = Some(t);
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let pij = self.parity[i] + self.parity[j];
                for k in 0..d {
                    if !self.constant(i, j, k).is_zero() && self.parity[k] != pij {
                        return Err(Error::InvalidArgument(format!(
                            "e_{i} e_{j} has a component on e_{k} of the wrong parity"
                        )));
                    }
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j);
                for k in 0..d {
                    let left = self.mul(&ij, &unit_vec(d, k));
                    let jk = self.basis_product(j, k);
                    let right = self.mul(&unit_vec(d, i), &jk);
                    if !approx_vec(&left, &right) {
                        return Err(Error::InvalidArgument(format!(
                            "associativity fails on (e_{i}, e_{j}, e_{k})"
                        )));
                    }
                }
            }
        }
        for i in 0..d {
            let e = unit_vec(d, i);
            if !approx_vec(&self.mul(&self.unit, &e), &e) || !approx_vec(&self.mul(&e, &self.unit), &e) {
                return Err(Error::InvalidArgument("unit does not act as identity".into()));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self) -> &[Parity] {
        &self.parity
    }

    pub fn unit(&self) -> &[C] {
        &self.unit
    }

    pub fn simple_type(&self) -> Option<&SimpleType<C>> {
        self.simple_type.as_ref()
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &C {
        let d = self.dim();
        &self.structure[(i * d + j) * d + k]
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<C> {
        let d = self.dim();
        self.structure[(i * d + j) * d..(i * d + j + 1) * d].to_vec()
    }

    pub fn mul(&self, a: &[C], b: &[C]) -> Vec<C> {
        let d = self.dim();
        let mut out = vec![C::zero(); d];
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let ab = ai.mul_ref(bj);
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o = o.add_ref(&ab.mul_ref(c));
                    }
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ a·x` in the basis.
    pub fn left_multiplication(&self, a: &[C]) -> Matrix<C> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            let col = self.mul(a, &unit_vec(d, j));
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn inverse(&self, a: &[C]) -> Option<Vec<C>> {
        self.left_multiplication(a).solve(&self.unit)
    }

    /// Whether `a` lies in the `p` graded piece (and is nonzero).
    pub fn is_homogeneous(&self, a: &[C], p: Parity) -> bool {
        a.iter().any(|x| !is_negligible(x))
            && a.iter().zip(&self.parity).all(|(x, q)| *q == p || is_negligible(x))
    }

    /// Parity of a nonzero homogeneous element.
    pub fn parity_of(&self, a: &[C]) -> Option<Parity> {
        [Parity::Even, Parity::Odd].into_iter().find(|&p| self.is_homogeneous(a, p))
    }
}

pub(crate) fn unit_vec<C: Scalar>(d: usize, i: usize) -> Vec<C> {
    let mut v = vec![C::zero(); d];
    v[i] = C::one();
    v
}

fn is_negligible<C: Scalar>(x: &C) -> bool {
    if C::EXACT { x.is_zero() } else { x.magnitude() <= 1e-12 }
}

pub(crate) fn approx_vec<C: Scalar>(a: &[C], b: &[C]) -> bool {
    let tol = if C::EXACT { 0.0 } else { 1e-10 };
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.approx_eq(y, tol))
}

/// A graded module with one action matrix per algebra basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperModule<C> {
    parity: Vec<Parity>,
    action: Vec<Matrix<C>>,
}

impl<C: Scalar> SuperModule<C> {
    /// Checks that `ρ(e_i)ρ(e_j) = ρ(e_i e_j)`, that the unit acts as the
    /// identity and that `ρ(e_i)` has the parity of `e_i`.
    pub fn new(alg: &SuperAlgebra<C>, parity: Vec<Parity>, action: Vec<Matrix<C>>) -> Result<Self> {
        let n = parity.len();
        if action.len() != alg.dim() || action.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::DimensionMismatch("module action matrices".into()));
        }
        let module = SuperModule { parity, action };
        for i in 0..alg.dim() {
            if module.matrix_parity_violation(&module.action[i], alg.parity()[i]) {
                return Err(Error::InvalidArgument(format!("rho(e_{i}) has the wrong parity")));
            }
            for j in 0..alg.dim() {
                let lhs = module.action[i].mul(&module.action[j]);
                let rhs = module.act(&alg.basis_product(i, j));
                if !lhs.approx_eq(&rhs, if C::EXACT { 0.0 } else { 1e-10 }) {
                    return Err(Error::InvalidArgument(format!("rho(e_{i} e_{j}) != rho(e_{i}) rho(e_{j})")));
                }
            }
        }
        if !module.act(alg.unit()).approx_eq(&Matrix::identity(n), if C::EXACT { 0.0 } else { 1e-10 }) {
            return Err(Error::InvalidArgument("unit does not act as identity".into()));
        }
        Ok(module)
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self) -> &[Parity] {
        &self.parity
    }

    pub fn action(&self) -> &[Matrix<C>] {
        &self.action
    }

    /// `ρ(a)` for `a` in algebra coordinates.
    pub fn act(&self, a: &[C]) -> Matrix<C> {
        let n = self.dim();
        a.iter()
            .zip(&self.action)
            .filter(|(x, _)| !x.is_zero())
            .fold(Matrix::zeros(n, n), |acc, (x, m)| acc.add(&m.scale(x)))
    }

    /// `σ_N = diag((−1)^{p(i)})`.
    pub fn parity_operator(&self) -> Matrix<C> {
        let n = self.dim();
        Matrix::from_fn(n, n, |i, j| if i == j { self.parity[i].sign() } else { C::zero() })
    }

    /// True if some entry of `m` connects basis vectors in a way forbidden for parity `p`.
    pub fn matrix_parity_violation(&self, m: &Matrix<C>, p: Parity) -> bool {
        let n = self.dim();
        (0..n).any(|i| (0..n).any(|j| self.parity[i] + self.parity[j] != p && !is_negligible(&m[(i, j)])))
    }

    /// Parity of a nonzero homogeneous operator.
    pub fn matrix_parity(&self, m: &Matrix<C>) -> Option<Parity> {
        if m.is_zero(1e-12) {
            return None;
        }
        [Parity::Even, Parity::Odd].into_iter().find(|&p| !self.matrix_parity_violation(m, p))
    }
}

/// `End(C^{m|k})` on the matrix units `E_ij` (index `i·(m+k) + j`) with its
/// defining module `C^{m|k}`.
pub fn make_end_super<C: Scalar>(m: usize, k: usize) -> Result<(SuperAlgebra<C>, SuperModule<C>)> {
    let n = m + k;
    if n == 0 {
        return Err(Error::InvalidArgument("End(C^{0|0}) is the zero algebra".into()));
    }
    let p = |i: usize| if i < m { Parity::Even } else { Parity::Odd };
    let d = n * n;
    let parity: Vec<Parity> = (0..d).map(|x| p(x / n) + p(x % n)).collect();
    let mut structure = vec![C::zero(); d * d * d];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                // E_ij E_jl = E_il
                let (a, b, c) = (i * n + j, j * n + l, i * n + l);
                structure[(a * d + b) * d + c] = C::one();
            }
        }
    }
    let mut unit = vec![C::zero(); d];
    for i in 0..n {
        unit[i * n + i] = C::one();
    }
    let alg = SuperAlgebra::new(parity, structure, unit)?.with_simple_type(SimpleType::TypeI)?;
    let action = (0..d)
        .map(|x| Matrix::from_fn(n, n, |r, c| if r == x / n && c == x % n { C::one() } else { C::zero() }))
        .collect();
    let module = SuperModule::new(&alg, (0..n).map(p).collect(), action)?;
    Ok((alg, module))
}

/// `Q_n = End(Cⁿ)[ξ]/(ξ² = 1)` on the basis `e_ij` (index `i·n + j`) and
/// `e_ij ξ` (index `n² + i·n + j`), acting on `N = Cⁿ ⊕ Cⁿξ`.
pub fn make_queer<C: Scalar>(n: usize) -> Result<(SuperAlgebra<C>, SuperModule<C>)> {
    if n == 0 {
        return Err(Error::InvalidArgument("Q_0 is the zero algebra".into()));
    }
    let nn = n * n;
    let d = 2 * nn;
    let parity: Vec<Parity> = (0..d).map(|x| if x < nn { Parity::Even } else { Parity::Odd }).collect();
    let mut structure = vec![C::zero(); d * d * d];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let (a, b, c) = (i * n + j, j * n + l, i * n + l);
                // (e_ij ξ^s)(e_jl ξ^t) = e_il ξ^{s+t}, since ξ is central.
                for (s, t) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                    let out = c + ((s + t) % 2) * nn;
                    structure[((a + s * nn) * d + b + t * nn) * d + out] = C::one();
                }
            }
        }
    }
    let mut unit = vec![C::zero(); d];
    let mut xi = vec![C::zero(); d];
    for i in 0..n {
        unit[i * n + i] = C::one();
        xi[nn + i * n + i] = C::one();
    }
    let alg = SuperAlgebra::new(parity, structure, unit)?.with_simple_type(SimpleType::TypeII { xi })?;
    let action = (0..d)
        .map(|x| {
            let (odd, e) = (x >= nn, x % nn);
            let (r0, c0) = (e / n, e % n);
            Matrix::from_fn(2 * n, 2 * n, |r, c| {
                let (br, bc) = (r / n, c / n);
                let hit = r % n == r0 && c % n == c0 && ((br == bc) != odd);
                if hit { C::one() } else { C::zero() }
            })
        })
        .collect();
    let mparity = (0..2 * n).map(|i| if i < n { Parity::Even } else { Parity::Odd }).collect();
    let module = SuperModule::new(&alg, mparity, action)?;
    Ok((alg, module))
}
