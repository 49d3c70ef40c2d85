//! Dense matrices over a [`Scalar`] with row reduction, null spaces and solves.
//!
//! Exact rationals pivot on any nonzero entry; complex floats use partial
//! pivoting and treat entries below `RANK_TOL · max|entry|` as zero.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_traits::Float;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Relative rank tolerance for floating-point reductions.
pub const RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Scalar> Matrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<C>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Matrix<D> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.mul_ref(&rhs[(k, j)]);
                    out[(i, j)] = out[(i, j)].add_ref(&prod);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip(rhs, C::add_ref)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip(rhs, C::sub_ref)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn trace(&self) -> C {
        (0..self.rows.min(self.cols)).fold(C::zero(), |acc, i| acc.add_ref(&self[(i, i)]))
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(C::magnitude).fold(0.0, f64::max)
    }

    /// Entrywise comparison with the ring's tolerance scaled by `tol`.
    pub fn approx_eq(&self, rhs: &Self, tol: f64) -> bool {
        self.rows == rhs.rows
            && self.cols == rhs.cols
            && self.data.iter().zip(&rhs.data).all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|x| if C::EXACT { x.is_zero() } else { x.magnitude() <= tol })
    }

    /// Reduces in place to reduced row echelon form and returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let cutoff = if C::EXACT { 0.0 } else { RANK_TOL * self.max_magnitude() };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let best = if C::EXACT {
                (r..self.rows).find(|&i| !self[(i, c)].is_zero())
            } else {
                (r..self.rows)
                    .max_by(|&i, &j| self[(i, c)].magnitude().total_cmp(&self[(j, c)].magnitude()))
                    .filter(|&i| self[(i, c)].magnitude() > cutoff)
            };
            let Some(p) = best else { continue };
            self.swap_rows(r, p);
            let inv = self[(r, c)].try_inv().expect("nonzero pivot");
            for j in 0..self.cols {
                self[(r, j)] = self[(r, j)].mul_ref(&inv);
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in 0..self.cols {
                    let sub = factor.mul_ref(&self[(r, j)]);
                    self[(i, j)] = self[(i, j)].sub_ref(&sub);
                }
                if !C::EXACT {
                    self[(i, c)] = C::zero();
                }
            }
            pivots.push(c);
            r += 1;
        }
        if !C::EXACT {
            for x in self.data.iter_mut() {
                if x.magnitude() <= cutoff {
                    *x = C::zero();
                }
            }
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of `{x : Mx = 0}`, one vector per free column, with a 1 in
    /// that column.
    pub fn null_space(&self) -> Vec<Vec<C>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![C::zero(); self.cols];
                v[f] = C::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = m[(r, f)].neg_ref();
                }
                v
            })
            .collect()
    }

    /// Some solution of `Mx = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[C]) -> Option<Vec<C>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols { self[(i, j)].clone() } else { b[i].clone() }
        });
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![C::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                C::one()
            } else {
                C::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
    }
}

impl<C> Index<(usize, usize)> for Matrix<C> {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.cols + j]
    }
}

impl<C> IndexMut<(usize, usize)> for Matrix<C> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot<C: Scalar>(a: &[C], b: &[C]) -> C {
    a.iter().zip(b).fold(C::zero(), |acc, (x, y)| acc.add_ref(&x.mul_ref(y)))
}

/// Largest relative deviation of `a` from the best multiple of `b`:
/// `min_c ‖a − c·b‖ / ‖a‖`. Zero when both vanish.
pub fn proportionality_residual<C: Scalar>(a: &[C], b: &[C]) -> f64 {
    use crate::scalar::Complex64;
    let a: Vec<Complex64> = a.iter().map(C::to_complex).collect();
    let b: Vec<Complex64> = b.iter().map(C::to_complex).collect();
    let bb: f64 = b.iter().map(|z| z.norm_sqr()).sum();
    let aa: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    if bb == 0.0 || aa == 0.0 {
        return if aa == bb { 0.0 } else { 1.0 };
    }
    let ab: Complex64 = a.iter().zip(&b).map(|(x, y)| x * y.conj()).sum();
    let c = ab / bb;
    let resid: f64 = a.iter().zip(&b).map(|(x, y)| (x - c * y).norm_sqr()).sum();
    Float::sqrt(resid / aa)
}
