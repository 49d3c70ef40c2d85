//! Positive definite integral lattices, their discriminant groups and theta
//! blocks.
//!
//! Vectors are written in coordinates with respect to the lattice basis
//! `a^1, …, a^r`, so `⟨x, y⟩ = xᵀ G y` with `G` the Gram matrix and the dual
//! lattice is `G⁻¹ ℤʳ`.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modforms::{dedekind_eta, RootOfUnity, TwistPair};
use crate::scalar::{exponent_to_f64, frac, rational_to_exponent, Complex64, Rational, Scalar};
use crate::series::{ExactSeries, Exponent, PuiseuxSeries};

/// Default cap on the rank accepted by theta enumeration.
pub const DEFAULT_RANK_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    gram: Vec<Vec<i64>>,
    rank_cap: usize,
}

impl Lattice {
    /// Checks symmetry and positive definiteness (all leading minors positive).
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let r = gram.len();
        if r == 0 || gram.iter().any(|row| row.len() != r) {
            return Err(Error::DimensionMismatch("Gram matrix must be square and nonempty".into()));
        }
        for (i, row) in gram.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if *x != gram[j][i] {
                    return Err(Error::InvalidArgument("Gram matrix must be symmetric".into()));
                }
            }
        }
        for k in 1..=r {
            let minor: Vec<Vec<i64>> = gram[..k].iter().map(|row| row[..k].to_vec()).collect();
            if !determinant(&minor).is_positive() {
                return Err(Error::NotPositiveDefinite);
            }
        }
        Ok(Lattice { gram, rank_cap: DEFAULT_RANK_CAP })
    }

    pub fn with_rank_cap(mut self, cap: usize) -> Self {
        self.rank_cap = cap;
        self
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn disc(&self) -> i64 {
        determinant(&self.gram).to_i64().expect("small determinant")
    }

    /// Even when every `⟨α, α⟩` is even, i.e. the diagonal is even.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }

    pub fn inner(&self, x: &[Exponent], y: &[Exponent]) -> Exponent {
        let mut s = Exponent::zero();
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                s += xi * yj * self.gram[i][j];
            }
        }
        s
    }

    pub fn gram_inverse(&self) -> Vec<Vec<Exponent>> {
        let m = Matrix::from_fn(self.rank(), self.rank(), |i, j| Rational::from_i64(self.gram[i][j]));
        let inv = m.inverse().expect("positive definite Gram matrix is invertible");
        inv.to_rows()
            .into_iter()
            .map(|row| row.iter().map(|x| rational_to_exponent(x).expect("small entries")).collect())
            .collect()
    }

    /// Whether `x ∈ Q°`, i.e. `Gx ∈ ℤʳ`.
    pub fn in_dual(&self, x: &[Exponent]) -> bool {
        (0..self.rank()).all(|i| {
            x.iter().enumerate().fold(Exponent::zero(), |acc, (j, xj)| acc + xj * self.gram[i][j]).is_integer()
        })
    }

    pub fn dual_data(&self) -> Result<LatticeDualData> {
        let r = self.rank();
        let ginv = self.gram_inverse();
        let (u, d, _v) = smith_normal_form(&self.gram);
        let smith: Vec<i64> = (0..r).map(|i| d[i][i]).collect();
        let u_inv = Matrix::from_fn(r, r, |i, j| Rational::from_i64(u[i][j]))
            .inverse()
            .expect("unimodular");
        let u_inv: Vec<Vec<Exponent>> = u_inv
            .to_rows()
            .into_iter()
            .map(|row| row.iter().map(|x| rational_to_exponent(x).expect("integer")).collect())
            .collect();
        let apply = |m: &[Vec<Exponent>], v: &[Exponent]| -> Vec<Exponent> {
            m.iter().map(|row| row.iter().zip(v).fold(Exponent::zero(), |acc, (a, b)| acc + a * b)).collect()
        };
        let mut dual = Vec::new();
        let mut t = vec![0i64; r];
        loop {
            let tv: Vec<Exponent> = t.iter().map(|&x| Exponent::from_integer(x)).collect();
            dual.push(CosetVector::reduced(apply(&ginv, &apply(&u_inv, &tv))));
            if !odometer(&mut t, &vec![0; r], &smith.iter().map(|d| d - 1).collect::<Vec<_>>()) {
                break;
            }
        }
        dual.sort();
        dual.dedup();
        // ρ = ½ Σ_{odd a^i} b^i + Σ_{even a^i} b^i, with b^i the columns of G⁻¹.
        let mut rho = vec![Exponent::zero(); r];
        for i in 0..r {
            let w = if self.gram[i][i] % 2 != 0 { Exponent::new(1, 2) } else { Exponent::one() };
            for (k, rk) in rho.iter_mut().enumerate() {
                *rk += ginv[k][i] * w;
            }
        }
        let rho = CosetVector::reduced(rho);
        let mut ramond: Vec<CosetVector> = dual.iter().map(|c| c.add(&rho)).collect();
        ramond.sort();
        ramond.dedup();
        Ok(LatticeDualData { gram_inverse: ginv, disc: self.disc(), smith, dual_cosets: dual, rho, ramond_cosets: ramond })
    }

    /// `Σ_{α∈ℤʳ, ⟨α+δ,α+δ⟩/2 < prec} sign(α) q^{⟨α+δ,α+δ⟩/2}`; the sign is
    /// `(−1)^{⟨α,α⟩}` for the odd theta and `1` for the even one.
    pub fn theta_terms(&self, delta: &CosetVector, parity: ThetaParity, prec: Exponent) -> Result<Vec<(Exponent, i64)>> {
        let r = self.rank();
        if r > self.rank_cap {
            return Err(Error::RankTooLarge { rank: r, cap: self.rank_cap });
        }
        if delta.0.len() != r {
            return Err(Error::DimensionMismatch("coset vector length".into()));
        }
        let ginv = self.gram_inverse();
        // |x_i| = |⟨x, b^i⟩| ≤ |x|·|b^i| and |b^i|² = (G⁻¹)_ii.
        let p = exponent_to_f64(&prec).max(0.0);
        let (lo, hi): (Vec<i64>, Vec<i64>) = (0..r)
            .map(|i| {
                let radius = Float::sqrt(2.0 * p * exponent_to_f64(&ginv[i][i])) + 1e-9;
                let d = exponent_to_f64(&delta.0[i]);
                (Float::ceil(-d - radius) as i64, Float::floor(-d + radius) as i64)
            })
            .unzip();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut alpha = lo.clone();
        loop {
            let a: Vec<Exponent> = alpha.iter().map(|&x| Exponent::from_integer(x)).collect();
            let x: Vec<Exponent> = a.iter().zip(&delta.0).map(|(ai, di)| ai + di).collect();
            let e = self.inner(&x, &x) / 2;
            if e < prec {
                let sign = match parity {
                    ThetaParity::Odd if !self.inner(&a, &a).to_integer().rem_euclid(2).is_zero() => -1,
                    _ => 1,
                };
                out.push((e, sign));
            }
            if !odometer(&mut alpha, &lo, &hi) {
                break;
            }
        }
        Ok(out)
    }
}

impl FromStr for Lattice {
    type Err = Error;

    /// Parses `"[[2,1],[1,2]]"`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: alloc::string::String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix("[[")
            .and_then(|x| x.strip_suffix("]]"))
            .ok_or_else(|| Error::Parse("expected [[..],..]".to_string()))?;
        let gram = inner
            .split("],[")
            .map(|row| {
                row.split(',')
                    .map(|x| x.parse::<i64>().map_err(|e| Error::Parse(e.to_string())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Lattice::new(gram)
    }
}

/// Steps `v` through the box `lo ≤ v ≤ hi` in lexicographic order; false once exhausted.
fn odometer(v: &mut [i64], lo: &[i64], hi: &[i64]) -> bool {
    for i in (0..v.len()).rev() {
        if v[i] < hi[i] {
            v[i] += 1;
            return true;
        }
        v[i] = lo[i];
    }
    false
}

fn determinant(m: &[Vec<i64>]) -> Rational {
    let n = m.len();
    let mut a = Matrix::from_fn(n, n, |i, j| Rational::from_i64(m[i][j]));
    let mut det = <Rational as One>::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !Scalar::is_zero(&a[(r, c)])) else {
            return <Rational as Zero>::zero();
        };
        if p != c {
            for j in 0..n {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(c, j)].clone();
                a[(c, j)] = tmp;
            }
            det = -det;
        }
        let piv = a[(c, c)].clone();
        det *= &piv;
        for r in c + 1..n {
            let f = &a[(r, c)] / &piv;
            for j in c..n {
                let sub = &f * &a[(c, j)];
                a[(r, j)] -= sub;
            }
        }
    }
    det
}

type IntMatrix = Vec<Vec<i64>>;

/// Smith normal form `U·G·V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | …`, all nonnegative.
pub fn smith_normal_form(g: &[Vec<i64>]) -> (IntMatrix, IntMatrix, IntMatrix) {
    let n = g.len();
    let m = g.first().map_or(0, Vec::len);
    let ident = |k: usize| -> Vec<Vec<i64>> { (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect() };
    let (mut a, mut u, mut v) = (g.to_vec(), ident(n), ident(m));
    for t in 0..n.min(m) {
        loop {
            let pivot = (t..n)
                .flat_map(|i| (t..m).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..n {
                let q = a[i][t].div_euclid(p);
                if q != 0 {
                    for j in 0..m {
                        a[i][j] -= q * a[t][j];
                    }
                    for j in 0..n {
                        u[i][j] -= q * u[t][j];
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..m {
                let q = a[t][j].div_euclid(p);
                if q != 0 {
                    for i in 0..n {
                        a[i][j] -= q * a[i][t];
                    }
                    for i in 0..m {
                        v[i][j] -= q * v[i][t];
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..n).find(|&i| (t + 1..m).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in 0..m {
                        a[t][j] += a[i][j];
                    }
                    for j in 0..n {
                        u[t][j] += u[i][j];
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for j in 0..m {
                a[t][j] = -a[t][j];
            }
            for j in 0..n {
                u[t][j] = -u[t][j];
            }
        }
    }
    (u, a, v)
}

/// A coset `δ + ℤʳ`, stored with every coordinate in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetVector(pub Vec<Exponent>);

impl CosetVector {
    pub fn reduced(v: Vec<Exponent>) -> Self {
        CosetVector(v.iter().map(frac).collect())
    }

    pub fn zero(rank: usize) -> Self {
        CosetVector(vec![Exponent::zero(); rank])
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::reduced(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for CosetVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for CosetVector {
    type Err = Error;

    /// Parses `"[1/2,0]"`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: alloc::string::String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::Parse("expected [..]".to_string()))?;
        let v = inner
            .split(',')
            .map(|x| x.parse::<Exponent>().map_err(|_| Error::Parse(alloc::format!("bad rational {x}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::reduced(v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThetaParity {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeDualData {
    pub gram_inverse: Vec<Vec<Exponent>>,
    pub disc: i64,
    /// Invariant factors `d_1 | … | d_r`; their product is `disc`.
    pub smith: Vec<i64>,
    /// Representatives of `Q°/Q`, sorted.
    pub dual_cosets: Vec<CosetVector>,
    pub rho: CosetVector,
    /// Representatives of `Q•/Q = ρ + Q°/Q`, sorted.
    pub ramond_cosets: Vec<CosetVector>,
}

impl LatticeDualData {
    /// `[Q° ∪ Q• : Q°] = 2`: `2ρ ∈ Q°` but `ρ ∉ Q°`.
    pub fn index_two(&self, lattice: &Lattice) -> bool {
        let twice: Vec<Exponent> = self.rho.0.iter().map(|x| x * 2).collect();
        lattice.in_dual(&twice) && !lattice.in_dual(&self.rho.0)
    }
}

/// The lattice theta series of one coset, in any ring (coefficients are integers).
pub fn lattice_theta<C: Scalar>(
    lattice: &Lattice,
    delta: &CosetVector,
    parity: ThetaParity,
    prec: Exponent,
) -> Result<PuiseuxSeries<C>> {
    let terms = lattice.theta_terms(delta, parity, prec)?;
    Ok(PuiseuxSeries::from_terms(terms.into_iter().map(|(e, s)| (e, C::from_i64(s))), Some(prec)))
}

/// The four `(g, h)` spans of theta quotients `Θ/η^r`:
///
/// | label   | theta | cosets |
/// |---------|-------|--------|
/// | (σ, σ)  | even  | Q°/Q   |
/// | (1, σ)  | even  | Q•/Q   |
/// | (σ, 1)  | odd   | Q°/Q   |
/// | (1, 1)  | odd   | Q•/Q   |
///
/// with `σ = −1` in the twist pair. Even lattices are rejected because the
/// parity twist is then trivial.
pub fn lattice_block_table(lattice: &Lattice, prec: Exponent) -> Result<Vec<(TwistPair, Vec<ExactSeries>)>> {
    if lattice.is_even() {
        return Err(Error::EvenLattice);
    }
    let data = lattice.dual_data()?;
    let r = lattice.rank() as i64;
    let lead = Exponent::new(-r, 24);
    let inner = prec - lead;
    let eta_lead = Exponent::new(1, 24);
    let eta = dedekind_eta(inner + eta_lead)?.shift(-eta_lead);
    let inv_eta_r = eta.pow(-r)?;
    let (one, sigma) = (RootOfUnity::one(), RootOfUnity::minus_one());
    let rows = [
        (TwistPair::new(one, one), ThetaParity::Odd, &data.ramond_cosets),
        (TwistPair::new(one, sigma), ThetaParity::Even, &data.ramond_cosets),
        (TwistPair::new(sigma, one), ThetaParity::Odd, &data.dual_cosets),
        (TwistPair::new(sigma, sigma), ThetaParity::Even, &data.dual_cosets),
    ];
    let mut out = Vec::with_capacity(4);
    for (label, parity, cosets) in rows {
        let series = cosets
            .iter()
            .map(|d| {
                let theta: ExactSeries = lattice_theta(lattice, d, parity, inner)?;
                Ok(theta.mul(&inv_eta_r).truncate(inner).shift(lead))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push((label, series));
    }
    Ok(out)
}

/// Both sides of `Θ_Q(−1/τ) = disc^{−1/2} (−iτ)^{r/2} Σ_{δ∈Q°/Q} Θ_δ(τ)`,
/// each summed from the theta series truncated at `prec`.
pub fn poisson_sides(lattice: &Lattice, tau: Complex64, prec: Exponent) -> Result<(Complex64, Complex64)> {
    if tau.im <= 0.0 {
        return Err(Error::NotInUpperHalfPlane);
    }
    let data = lattice.dual_data()?;
    let r = lattice.rank();
    let theta0: PuiseuxSeries<Complex64> = lattice_theta(lattice, &CosetVector::zero(r), ThetaParity::Even, prec)?;
    let (lhs, _) = theta0.eval_at_tau(-tau.inv())?;
    let mut sum = Complex64::new(0.0, 0.0);
    for d in &data.dual_cosets {
        let t: PuiseuxSeries<Complex64> = lattice_theta(lattice, d, ThetaParity::Even, prec)?;
        sum += t.eval_at_tau(tau)?.0;
    }
    let root = (Complex64::new(0.0, -1.0) * tau).sqrt().powu(r as u32);
    let disc = exponent_to_f64(&Exponent::from_integer(data.disc));
    Ok((lhs, root * sum / Float::sqrt(disc)))
}
