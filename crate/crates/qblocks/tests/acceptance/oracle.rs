//! Reference computations written without the library's series machinery:
//! integer product expansions, direct lattice sums, closed-form geometric
//! series and an SVD rank count.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use nalgebra::DMatrix;
use qblocks_core::superalg::{AlgebraAutomorphism, SuperAlgebra};
use qblocks_core::{Complex64, ExactSeries, Exponent, Rational, Scalar};

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `B_0..=B_n` with `B_1 = +1/2` by the Akiyama–Tanigawa algorithm.
pub fn bernoulli_plus(n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut a: Vec<Rational> = Vec::new();
    for m in 0..=n {
        a.push(rat(1, (m + 1) as i64));
        for j in (1..=m).rev() {
            a[j - 1] = rat(j as i64, 1) * (a[j - 1].clone() - a[j].clone());
        }
        out.push(a[0].clone());
    }
    out
}

fn pow(x: &Rational, e: usize) -> Rational {
    (0..e).fold(rat(1, 1), |acc, _| acc * x.clone())
}

fn factorial(n: usize) -> Rational {
    (1..=n).fold(rat(1, 1), |acc, i| acc * rat(i as i64, 1))
}

/// `σ_k(n)` by trial division over every `d ≤ n`.
pub fn sigma(k: u32, n: u64) -> Rational {
    (1..=n).filter(|d| n.is_multiple_of(*d)).fold(rat(0, 1), |acc, d| acc + pow(&rat(d as i64, 1), k as usize))
}

/// `G_k/(2πi)^k = −B_k/k! + (2/(k−1)!) Σ σ_{k−1}(n) qⁿ` for `n < limit`, as
/// exponent-indexed nonzero coefficients.
pub fn eisenstein_hat(k: u32, limit: i64) -> BTreeMap<Exponent, Rational> {
    let b = bernoulli_plus(k as usize);
    let mut out = BTreeMap::new();
    out.insert(Exponent::from_integer(0), -b[k as usize].clone() / factorial(k as usize));
    let scale = rat(2, 1) / factorial(k as usize - 1);
    for n in 1..limit {
        out.insert(Exponent::from_integer(n), sigma(k - 1, n as u64) * scale.clone());
    }
    out.retain(|_, c| !Scalar::is_zero(c));
    out
}

/// Nonzero coefficients of an exact series, keyed by exponent.
pub fn coefficients(s: &ExactSeries) -> BTreeMap<Exponent, Rational> {
    s.terms().map(|(e, c)| (e, c.clone())).collect()
}

/// A power series in `q^{1/48}` with integer coefficients, known below `limit`
/// (in units of 1/48).
#[derive(Debug, Clone, PartialEq)]
pub struct IntSeries {
    pub coeffs: BTreeMap<i64, i128>,
    pub limit: i64,
}

impl IntSeries {
    pub fn monomial(c: i128, e: i64, limit: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if e < limit && c != 0 {
            coeffs.insert(e, c);
        }
        IntSeries { coeffs, limit }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let limit = self.limit.min(o.limit);
        let mut coeffs = BTreeMap::new();
        for (a, x) in &self.coeffs {
            for (b, y) in &o.coeffs {
                if a + b < limit {
                    *coeffs.entry(a + b).or_insert(0) += x * y;
                }
            }
        }
        coeffs.retain(|_, c| *c != 0);
        IntSeries { coeffs, limit }
    }

    pub fn scale(&self, c: i128) -> Self {
        IntSeries { coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect(), limit: self.limit }
    }

    /// Inverse of `q^v(±1 + …)`, long division term by term.
    pub fn inverse(&self) -> Self {
        let (&v, &lead) = self.coeffs.iter().next().expect("nonzero");
        assert!(lead == 1 || lead == -1);
        let limit = self.limit - 2 * v;
        let mut out: BTreeMap<i64, i128> = BTreeMap::new();
        let mut e = -v;
        while e < limit {
            // Coefficient of q^{e+v} in self·out must be δ_{e,−v}.
            let mut acc: i128 = if e == -v { 1 } else { 0 };
            for (k, x) in &self.coeffs {
                if *k == v {
                    continue;
                }
                if let Some(y) = out.get(&(e + v - k)) {
                    acc -= x * y;
                }
            }
            if acc != 0 {
                out.insert(e, acc * lead);
            }
            e += 1;
        }
        IntSeries { coeffs: out, limit }
    }

    /// Agrees with `s` below both limits, exactly.
    pub fn matches(&self, s: &ExactSeries) -> bool {
        let lib = coefficients(s);
        let limit = Exponent::new(self.limit, 48).min(s.precision().unwrap_or(Exponent::new(self.limit, 48)));
        let mine: BTreeMap<Exponent, Rational> = self
            .coeffs
            .iter()
            .map(|(e, c)| (Exponent::new(*e, 48), Rational::from_integer((*c).into())))
            .filter(|(e, _)| *e < limit)
            .collect();
        let lib: BTreeMap<Exponent, Rational> = lib.into_iter().filter(|(e, _)| *e < limit).collect();
        mine == lib
    }
}

/// `q^{offset} Π_{n ≥ start} (1 + sign·q^{step·n + shift})` in 1/48 units,
/// multiplied factor by factor.
pub fn product(offset: i64, sign: i128, step: i64, shift: i64, start: i64, limit: i64) -> IntSeries {
    let mut s = IntSeries::monomial(1, offset, limit);
    let mut n = start;
    loop {
        let e = step * n + shift;
        if e >= limit {
            break;
        }
        let mut f = IntSeries::monomial(1, 0, limit);
        if e == 0 {
            f = f.scale(1 + sign);
        } else {
            f.coeffs.insert(e, sign);
        }
        s = s.mul(&f);
        n += 1;
    }
    s
}

/// `η(rτ)` for `r = 48/units·…`: `q^{r/24} Π_{n≥1}(1 − q^{rn})` with `r = k/2`.
pub fn eta_halves(k: i64, limit: i64) -> IntSeries {
    // r = k/2, so q^{r/24} is k units and q^{rn} is 24·k·n units.
    product(k, -1, 24 * k, 0, 1, limit)
}

pub fn q_pow(tau: Complex64, x: f64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * PI) * tau * x).exp()
}

/// `η(τ)` from the product, stopping when factors are 1 to machine precision.
pub fn eta(tau: Complex64) -> Complex64 {
    let mut v = q_pow(tau, 1.0 / 24.0);
    let mut n = 1.0;
    loop {
        let t = q_pow(tau, n);
        if t.norm() < 1e-18 {
            return v;
        }
        v *= Complex64::new(1.0, 0.0) - t;
        n += 1.0;
    }
}

/// `θ(z; τ) = Σ_n e^{πi n² τ + 2πi n z}` summed directly.
pub fn theta(z: Complex64, tau: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    (-60i32..=60)
        .map(|n| {
            let n = f64::from(n);
            (i * PI * n * n * tau + 2.0 * PI * i * n * z).exp()
        })
        .sum()
}

/// `Ĝ_2(τ)` from the divisor sum.
pub fn g2_hat(tau: Complex64) -> Complex64 {
    let mut v = Complex64::new(-1.0 / 12.0, 0.0);
    for n in 1..400u64 {
        let s: u64 = (1..=n).filter(|d| n.is_multiple_of(*d)).sum();
        v += 2.0 * s as f64 * q_pow(tau, n as f64);
    }
    v
}

fn bernoulli_poly_f64(n: u32, x: f64) -> f64 {
    match n {
        1 => x - 0.5,
        2 => x * x - x + 1.0 / 6.0,
        3 => x * x * x - 1.5 * x * x + 0.5 * x,
        4 => x.powi(4) - 2.0 * x.powi(3) + x * x - 1.0 / 30.0,
        _ => unimplemented!("only k <= 3 is needed"),
    }
}

/// `P_k^{μ,λ}(τ)/(2πi)^{k+1}` with `μ = e^{2πiε}`, `ε ∈ (−1, 0]`, and
/// `λ = e^{2πiρ}`, summing over `n` with the geometric series in `m` closed.
pub fn p_hat(k: u32, eps: f64, rho: f64, tau: Complex64) -> Complex64 {
    let lam = Complex64::from_polar(1.0, 2.0 * PI * rho);
    let fact: f64 = (1..=k).map(f64::from).product();
    let mut v = Complex64::new(-bernoulli_poly_f64(k + 1, 1.0 + eps) / (fact * f64::from(k + 1)), 0.0);
    let lam_is_one = (rho - rho.round()).abs() < 1e-12;
    if k == 0 && eps == 0.0 && !lam_is_one {
        v += 1.0 / (Complex64::new(1.0, 0.0) - lam);
    }
    let geo = |x: Complex64| x / (Complex64::new(1.0, 0.0) - x);
    for j in 0..200 {
        let pos = eps + f64::from(j);
        if pos > 0.0 {
            v += pos.powi(k as i32) / fact * geo(lam * q_pow(tau, pos));
        }
        let neg = eps - f64::from(j);
        if neg < 0.0 {
            v -= neg.powi(k as i32) / fact * geo(lam.inv() * q_pow(tau, -neg));
        }
    }
    v
}

/// `(h, c)` of the charged fermion module twisted by `e^{2πiδ}`.
pub fn charged_weights(a: &Rational, delta: &Rational) -> (Rational, Rational) {
    let h = (delta.clone() - a.clone()) * (delta.clone() + a.clone() - rat(1, 1)) / rat(2, 1);
    let c = rat(-2, 1) * (rat(6, 1) * a.clone() * a.clone() - rat(6, 1) * a.clone() + rat(1, 1));
    (h, c)
}

/// `q^{h−c/24} Π_{n≥1}(1 − λ q^{n−1+δ})(1 − λ⁻¹ q^{n−δ})` evaluated directly.
pub fn charged(a: f64, delta: f64, rho: f64, tau: Complex64) -> Complex64 {
    let h = 0.5 * (delta - a) * (delta + a - 1.0);
    let c = -2.0 * (6.0 * a * a - 6.0 * a + 1.0);
    let lam = Complex64::from_polar(1.0, 2.0 * PI * rho);
    let one = Complex64::new(1.0, 0.0);
    let mut v = q_pow(tau, h - c / 24.0);
    for n in 1..400 {
        let n = f64::from(n);
        v *= (one - lam * q_pow(tau, n - 1.0 + delta)) * (one - lam.inv() * q_pow(tau, n - delta));
    }
    v
}

/// Determinant of a 1×1 or 2×2 Gram matrix.
pub fn det(g: &[Vec<i64>]) -> i64 {
    match g.len() {
        1 => g[0][0],
        2 => g[0][0] * g[1][1] - g[0][1] * g[1][0],
        _ => unimplemented!("rank <= 2"),
    }
}

/// `G⁻¹` for rank ≤ 2 as exact fractions.
pub fn inverse(g: &[Vec<i64>]) -> Vec<Vec<Exponent>> {
    let d = det(g);
    match g.len() {
        1 => vec![vec![Exponent::new(1, d)]],
        2 => vec![
            vec![Exponent::new(g[1][1], d), Exponent::new(-g[0][1], d)],
            vec![Exponent::new(-g[1][0], d), Exponent::new(g[0][0], d)],
        ],
        _ => unimplemented!("rank <= 2"),
    }
}

fn reduce(v: &[Exponent]) -> Vec<Exponent> {
    v.iter().map(|x| x - x.floor()).collect()
}

fn mat_vec(m: &[Vec<Exponent>], v: &[Exponent]) -> Vec<Exponent> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// `x ∈ Q°` in `Q`-coordinates iff `Gx ∈ ℤ^r`.
pub fn in_dual(g: &[Vec<i64>], x: &[Exponent]) -> bool {
    let gm: Vec<Vec<Exponent>> = g.iter().map(|r| r.iter().map(|&v| Exponent::from_integer(v)).collect()).collect();
    mat_vec(&gm, x).iter().all(|c| c.is_integer())
}

/// Distinct classes `G⁻¹v mod ℤ^r` for `v` in a box of side `disc`.
pub fn dual_classes(g: &[Vec<i64>]) -> BTreeSet<Vec<Exponent>> {
    let inv = inverse(g);
    let d = det(g);
    let r = g.len();
    let mut out = BTreeSet::new();
    let mut idx = vec![0i64; r];
    loop {
        let v: Vec<Exponent> = idx.iter().map(|&x| Exponent::from_integer(x)).collect();
        out.insert(reduce(&mat_vec(&inv, &v)));
        let mut i = 0;
        loop {
            if i == r {
                return out;
            }
            idx[i] += 1;
            if idx[i] < d {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// `ρ = ½ Σ_{odd a_i} b^i + Σ_{even a_i} b^i` in `Q`-coordinates.
pub fn ramond_vector(g: &[Vec<i64>]) -> Vec<Exponent> {
    let w: Vec<Exponent> =
        (0..g.len()).map(|i| if g[i][i] % 2 != 0 { Exponent::new(1, 2) } else { Exponent::from_integer(1) }).collect();
    mat_vec(&inverse(g), &w)
}

fn quad(g: &[Vec<f64>], x: &[f64]) -> f64 {
    (0..x.len()).map(|i| (0..x.len()).map(|j| x[i] * g[i][j] * x[j]).sum::<f64>()).sum()
}

/// Both sides of the Poisson formula from direct sums over a box.
pub fn poisson(g: &[Vec<i64>], tau: Complex64) -> (Complex64, Complex64) {
    let r = g.len();
    let gf: Vec<Vec<f64>> = g.iter().map(|row| row.iter().map(|&v| v as f64).collect()).collect();
    let inv: Vec<Vec<f64>> = inverse(g)
        .iter()
        .map(|row| row.iter().map(|x| *x.numer() as f64 / *x.denom() as f64).collect())
        .collect();
    let i = Complex64::new(0.0, 1.0);
    let n = 14i64;
    let points: Vec<Vec<f64>> = if r == 1 {
        (-n..=n).map(|a| vec![a as f64]).collect()
    } else {
        (-n..=n).flat_map(|a| (-n..=n).map(move |b| vec![a as f64, b as f64])).collect()
    };
    let lhs: Complex64 = points.iter().map(|x| (-i * PI * quad(&gf, x) / tau).exp()).sum();
    let dual: Complex64 = points.iter().map(|v| (i * PI * tau * quad(&inv, v)).exp()).sum();
    let rhs = dual * (-i * tau).powf(r as f64 / 2.0) / (det(g) as f64).sqrt();
    (lhs, rhs)
}

/// `Σ_{α∈ℤ} q^{(α+δ)²/2} s(α)` as exponent → integer coefficient, where `s`
/// is `1` (even) or `(−1)^{α²}` (odd).
pub fn z_theta(delta: Exponent, odd: bool, limit: i64) -> BTreeMap<Exponent, i64> {
    let mut out = BTreeMap::new();
    for a in -40i64..=40 {
        let x = Exponent::from_integer(a) + delta;
        let e = x * x / 2;
        if e >= Exponent::from_integer(limit) {
            continue;
        }
        let s = if odd && a % 2 != 0 { -1 } else { 1 };
        *out.entry(e).or_insert(0) += s;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Numerical value of `Σ_{α∈ℤ} e^{πiτ(α+δ)²} s(α) / η(τ)`.
pub fn z_block(delta: f64, odd: bool, tau: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let th: Complex64 = (-60i32..=60)
        .map(|a| {
            let x = f64::from(a) + delta;
            let s = if odd && a % 2 != 0 { -1.0 } else { 1.0 };
            s * (i * PI * tau * x * x).exp()
        })
        .sum();
    th / eta(tau)
}

/// `dim F_h(A)` as the nullity of `f(e_i e_j) − (−1)^{p_i p_j} f(e_j h⁻¹(e_i))`,
/// counted by SVD in complex floats.
pub fn fh_dimension<C: Scalar>(alg: &SuperAlgebra<C>, h: &AlgebraAutomorphism<C>) -> usize {
    let d = alg.dim();
    let unit = |i: usize| -> Vec<C> { (0..d).map(|k| if k == i { C::one() } else { C::zero() }).collect() };
    let hm = DMatrix::<Complex64>::from_fn(d, d, |r, c| h.apply(&unit(c))[r].to_complex());
    let hinv = hm.try_inverse().expect("automorphism is invertible");
    let prod = |x: &[Complex64], y: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                let xy = xi * yj;
                if xy.norm() == 0.0 {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += xy * alg.constant(i, j, k).to_complex();
                }
            }
        }
        out
    };
    let e = |i: usize| -> Vec<Complex64> { (0..d).map(|k| Complex64::new(if k == i { 1.0 } else { 0.0 }, 0.0)).collect() };
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for i in 0..d {
        let hi: Vec<Complex64> = hinv.column(i).iter().copied().collect();
        for j in 0..d {
            let sign = if alg.parity()[i].is_odd() && alg.parity()[j].is_odd() { -1.0 } else { 1.0 };
            let lhs = prod(&e(i), &e(j));
            let rhs = prod(&e(j), &hi);
            rows.push(lhs.iter().zip(&rhs).map(|(a, b)| a - sign * b).collect());
        }
    }
    let m = DMatrix::from_fn(rows.len(), d, |r, c| rows[r][c]);
    let sv = m.svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max).max(1.0);
    d - sv.iter().filter(|s| **s > 1e-9 * smax).count()
}
