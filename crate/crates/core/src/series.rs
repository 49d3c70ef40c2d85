//! Truncated Puiseux series in `q` with exponents in `(1/N)ℤ`.
//!
//! A series stores its nonzero coefficients keyed by integer numerators over
//! a common denominator `N`, together with a truncation order `P`: every
//! exponent `>= P` is unknown. An absent truncation order means the series is
//! known exactly (a Laurent polynomial in `q^{1/N}`).
//!
//! Precision propagates pessimistically. No operation ever reports more known
//! terms than its inputs justify.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Float, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{exponent_to_f64, Complex64, Rational, Scalar};

/// Rational exponent of `q`.
pub type Exponent = Ratio<i64>;

pub type ExactSeries = PuiseuxSeries<Rational>;
pub type ComplexSeries = PuiseuxSeries<Complex64>;

#[derive(Debug, Clone, PartialEq)]
pub struct PuiseuxSeries<C> {
    denom: i64,
    terms: BTreeMap<i64, C>,
    precision: Option<Exponent>,
}

fn min_prec(a: Option<Exponent>, b: Option<Exponent>) -> Option<Exponent> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn add_prec(a: Option<Exponent>, shift: Exponent) -> Option<Exponent> {
    a.map(|p| p + shift)
}

/// Smallest index `k` with `k / n >= p`.
fn first_index_at_or_above(p: &Exponent, n: i64) -> i64 {
    (p * Exponent::from_integer(n)).ceil().to_integer()
}

impl<C: Scalar> PuiseuxSeries<C> {
    /// The zero series known up to `precision`.
    pub fn zero(precision: Option<Exponent>) -> Self {
        PuiseuxSeries { denom: 1, terms: BTreeMap::new(), precision }
    }

    /// The exact constant `1`.
    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, Exponent::zero())
    }

    /// The exact monomial `c·q^e`.
    pub fn monomial(c: C, e: Exponent) -> Self {
        let mut terms = BTreeMap::new();
        let denom = *e.denom();
        if !c.is_zero() {
            terms.insert(*e.numer(), c);
        }
        PuiseuxSeries { denom, terms, precision: None }
    }

    /// Builds a series from `(exponent, coefficient)` pairs. Coefficients at
    /// equal exponents are summed; terms at or beyond `precision` are dropped.
    pub fn from_terms<I>(terms: I, precision: Option<Exponent>) -> Self
    where
        I: IntoIterator<Item = (Exponent, C)>,
    {
        let pairs: Vec<(Exponent, C)> = terms.into_iter().collect();
        let mut denom = 1i64;
        for (e, _) in &pairs {
            denom = denom.lcm(e.denom());
        }
        let mut map: BTreeMap<i64, C> = BTreeMap::new();
        for (e, c) in pairs {
            if precision.is_some_and(|p| e >= p) {
                continue;
            }
            let k = (e * Exponent::from_integer(denom)).to_integer();
            let slot = map.entry(k).or_insert_with(C::zero);
            *slot = slot.add_ref(&c);
        }
        let mut s = PuiseuxSeries { denom, terms: map, precision };
        s.canonicalize();
        s
    }

    /// Common exponent denominator `N`.
    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// Truncation order, `None` when the series is exact.
    pub fn precision(&self) -> Option<Exponent> {
        self.precision
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `true` when every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &C)> + '_ {
        let n = self.denom;
        self.terms.iter().map(move |(k, c)| (Exponent::new(*k, n), c))
    }

    pub fn exponents(&self) -> impl Iterator<Item = Exponent> + '_ {
        self.terms().map(|(e, _)| e)
    }

    /// Coefficient of `q^e` (zero when absent).
    pub fn coeff(&self, e: &Exponent) -> C {
        let scaled = e * Exponent::from_integer(self.denom);
        if !scaled.is_integer() {
            return C::zero();
        }
        self.terms.get(&scaled.to_integer()).cloned().unwrap_or_else(C::zero)
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<Exponent> {
        self.terms.keys().next().map(|k| Exponent::new(*k, self.denom))
    }

    pub fn leading(&self) -> Option<(Exponent, &C)> {
        self.terms.iter().next().map(|(k, c)| (Exponent::new(*k, self.denom), c))
    }

    /// Valuation of a nonzero series, precision of a zero one.
    fn order(&self) -> Option<Exponent> {
        self.valuation().or(self.precision)
    }

    fn canonicalize(&mut self) {
        if C::EXACT {
            self.terms.retain(|_, c| !c.is_zero());
        } else {
            // Noise in a coefficient comes from terms at or below its exponent,
            // so the cut uses the running maximum rather than the global one.
            // A global cut would erase the head of a series whose coefficients
            // grow, such as 1/η^r.
            let mut running = 0.0f64;
            self.terms.retain(|_, c| {
                let m = c.magnitude();
                running = running.max(m);
                !c.is_zero() && m > running * C::tolerance()
            });
        }
    }

    /// Re-expresses the series over denominator `m`, a multiple of `N`.
    fn promoted(&self, m: i64) -> BTreeMap<i64, C> {
        debug_assert_eq!(m % self.denom, 0);
        let f = m / self.denom;
        self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect()
    }

    /// The same series over a common denominator `m`, which must be a
    /// positive multiple of the exponent denominators present.
    pub fn with_denom(&self, m: i64) -> Result<Self> {
        if m <= 0 || m % self.denom != 0 {
            return Err(Error::InvalidArgument(alloc::format!("denominator {m} is not a multiple of {}", self.denom)));
        }
        Ok(PuiseuxSeries { denom: m, terms: self.promoted(m), precision: self.precision })
    }

    /// Lowers the truncation order to `min(P, p)`.
    pub fn truncate(&self, p: Exponent) -> Self {
        let precision = min_prec(self.precision, Some(p));
        let denom = self.denom;
        let mut terms = self.terms.clone();
        let first = first_index_at_or_above(&p, denom);
        terms.retain(|k, _| *k < first);
        PuiseuxSeries { denom, terms, precision }
    }

    fn combine(&self, rhs: &Self, negate: bool) -> Self {
        let denom = self.denom.lcm(&rhs.denom);
        let precision = min_prec(self.precision, rhs.precision);
        let mut terms = self.promoted(denom);
        for (k, c) in rhs.promoted(denom) {
            let slot = terms.entry(k).or_insert_with(C::zero);
            *slot = if negate { slot.sub_ref(&c) } else { slot.add_ref(&c) };
        }
        if let Some(p) = &precision {
            let first = first_index_at_or_above(p, denom);
            terms.retain(|k, _| *k < first);
        }
        let mut s = PuiseuxSeries { denom, terms, precision };
        s.canonicalize();
        s
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, true)
    }

    pub fn neg(&self) -> Self {
        PuiseuxSeries {
            denom: self.denom,
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg_ref())).collect(),
            precision: self.precision,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut s = PuiseuxSeries {
            denom: self.denom,
            terms: self.terms.iter().map(|(k, v)| (*k, v.mul_ref(c))).collect(),
            precision: self.precision,
        };
        s.canonicalize();
        s
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: Exponent) -> Self {
        let denom = self.denom.lcm(e.denom());
        let off = (e * Exponent::from_integer(denom)).to_integer();
        let terms = self.promoted(denom).into_iter().map(|(k, c)| (k + off, c)).collect();
        PuiseuxSeries { denom, terms, precision: add_prec(self.precision, e) }
    }

    /// Cauchy product, truncated at `min(P_a + v(b), P_b + v(a))` where `v` is
    /// the valuation (or the truncation order of a zero series).
    pub fn mul(&self, rhs: &Self) -> Self {
        let denom = self.denom.lcm(&rhs.denom);
        let precision = match (self.order(), rhs.order()) {
            (Some(va), Some(vb)) => {
                min_prec(add_prec(self.precision, vb), add_prec(rhs.precision, va))
            }
            // An exact zero series annihilates everything.
            _ => None,
        };
        let a = self.promoted(denom);
        let b = rhs.promoted(denom);
        let first = precision.map(|p| first_index_at_or_above(&p, denom));
        let mut terms: BTreeMap<i64, C> = BTreeMap::new();
        for (ka, ca) in &a {
            for (kb, cb) in &b {
                let k = ka + kb;
                if first.is_some_and(|f| k >= f) {
                    // Keys of `b` are increasing.
                    break;
                }
                let slot = terms.entry(k).or_insert_with(C::zero);
                *slot = slot.add_ref(&ca.mul_ref(cb));
            }
        }
        let mut s = PuiseuxSeries { denom, terms, precision };
        s.canonicalize();
        s
    }

    /// Multiplicative inverse. With `a = c·q^v(1 + …)` known below `P`, the
    /// inverse is known below `P − 2v`.
    pub fn invert(&self) -> Result<Self> {
        let (v, lead) = match self.leading() {
            Some((v, c)) => (v, c.clone()),
            None => return Err(Error::ZeroLeadingCoefficient),
        };
        let lead_inv = lead.try_inv().ok_or(Error::ZeroLeadingCoefficient)?;
        let precision = match self.precision {
            Some(p) => p - v - v,
            None => {
                if self.terms.len() == 1 {
                    return Ok(PuiseuxSeries::monomial(lead_inv, -v));
                }
                return Err(Error::UnboundedPrecision);
            }
        };
        let n = self.denom;
        let v_idx = *self.terms.keys().next().unwrap();
        // Relative length (P - v)·N of the normalized unit series.
        let len = first_index_at_or_above(&(precision + v), n);
        let len = len.max(0) as usize;
        // Support of the normalized series b = a / (c q^v), without b_0 = 1.
        let support: Vec<(usize, C)> = self
            .terms
            .iter()
            .skip(1)
            .map(|(k, c)| ((k - v_idx) as usize, c.mul_ref(&lead_inv)))
            .filter(|(j, _)| *j < len)
            .collect();
        let mut r: Vec<C> = vec![C::zero(); len];
        if len > 0 {
            r[0] = C::one();
        }
        for i in 1..len {
            let mut acc = C::zero();
            for (j, bj) in &support {
                if *j > i {
                    break;
                }
                let prev = &r[i - j];
                if !prev.is_zero() {
                    acc = acc.add_ref(&bj.mul_ref(prev));
                }
            }
            r[i] = acc.neg_ref();
        }
        let terms = r
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 - v_idx, c.mul_ref(&lead_inv)))
            .collect();
        let mut s = PuiseuxSeries { denom: n, terms, precision: Some(precision) };
        s.canonicalize();
        Ok(s)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.invert()?))
    }

    /// Integer power; negative powers go through [`invert`](Self::invert).
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.invert()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut result = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(result)
    }

    /// Substitutes `q → q^r` (that is `τ → rτ`) for rational `r > 0`.
    pub fn rescale(&self, r: Exponent) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::NonPositive(r));
        }
        let (p, qd) = (*r.numer(), *r.denom());
        let g = p.gcd(&self.denom);
        let denom = (self.denom / g) * qd;
        let terms = self.terms.iter().map(|(k, c)| (k * (p / g), c.clone())).collect();
        Ok(PuiseuxSeries { denom, terms, precision: self.precision.map(|x| x * r) })
    }

    /// `τ → τ + n`: multiplies the coefficient of `q^e` by `e^{2πi n e}`.
    pub fn tshift_by(&self, n: i64) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let phase = Exponent::new(k * n, self.denom);
            let root = C::root_of_unity(&phase).ok_or(Error::UnsupportedRoot(phase))?;
            terms.insert(*k, c.mul_ref(&root));
        }
        Ok(PuiseuxSeries { denom: self.denom, terms, precision: self.precision })
    }

    /// `τ → τ + 1`.
    pub fn tshift(&self) -> Result<Self> {
        self.tshift_by(1)
    }

    pub fn map_coefficients<D: Scalar>(&self, f: impl Fn(&C) -> D) -> PuiseuxSeries<D> {
        let mut s = PuiseuxSeries {
            denom: self.denom,
            terms: self.terms.iter().map(|(k, c)| (*k, f(c))).collect(),
            precision: self.precision,
        };
        s.canonicalize();
        s
    }

    pub fn to_complex(&self) -> ComplexSeries {
        self.map_coefficients(Scalar::to_complex)
    }

    /// Numerical value `Σ c_e e^{2πiτe}` together with a heuristic tail size.
    ///
    /// The tail estimate assumes the coefficients past the truncation order
    /// stay near the magnitude of the last retained one:
    /// `|c_last|·|q|^P / (1 − |q|^{1/N})`. It is not a proven bound.
    pub fn eval_at_tau(&self, tau: Complex64) -> Result<(Complex64, f64)> {
        if tau.im.is_nan() || tau.im <= 0.0 {
            return Err(Error::NotInUpperHalfPlane);
        }
        let two_pi_i_tau = Complex64::new(0.0, 2.0 * PI) * tau;
        let mut value = Complex64::new(0.0, 0.0);
        for (e, c) in self.terms() {
            value += c.to_complex() * (two_pi_i_tau * exponent_to_f64(&e)).exp();
        }
        let tail = match (self.precision, self.terms.values().next_back()) {
            (Some(p), Some(last)) => {
                let absq = Float::exp(-2.0 * PI * tau.im);
                let step = Float::powf(absq, 1.0 / self.denom as f64);
                last.magnitude() * Float::powf(absq, exponent_to_f64(&p)) / (1.0 - step)
            }
            _ => 0.0,
        };
        Ok((value, tail))
    }

    /// Coefficientwise comparison over every exponent below the common
    /// truncation order.
    pub fn compare(&self, other: &Self, tol: f64) -> SeriesComparison<C> {
        let horizon = min_prec(self.precision, other.precision);
        let denom = self.denom.lcm(&other.denom);
        let a = self.promoted(denom);
        let b = other.promoted(denom);
        let mut keys: Vec<i64> = a.keys().chain(b.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        let zero = C::zero();
        for k in keys {
            let e = Exponent::new(k, denom);
            if horizon.is_some_and(|h| e >= h) {
                break;
            }
            let x = a.get(&k).unwrap_or(&zero);
            let y = b.get(&k).unwrap_or(&zero);
            if !x.approx_eq(y, tol) {
                return SeriesComparison {
                    equal: false,
                    horizon,
                    mismatch: Some(Mismatch { exponent: e, left: x.clone(), right: y.clone() }),
                };
            }
        }
        SeriesComparison { equal: true, horizon, mismatch: None }
    }

    pub fn equals(&self, other: &Self, tol: f64) -> bool {
        self.compare(other, tol).equal
    }

    /// Largest coefficient magnitude.
    pub fn max_magnitude(&self) -> f64 {
        self.terms.values().map(Scalar::magnitude).fold(0.0, f64::max)
    }
}

/// Outcome of [`PuiseuxSeries::compare`].
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesComparison<C> {
    pub equal: bool,
    /// Exponents below this bound were compared (`None`: all of them).
    pub horizon: Option<Exponent>,
    pub mismatch: Option<Mismatch<C>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch<C> {
    pub exponent: Exponent,
    pub left: C,
    pub right: C,
}

/// One factor family `∏_{n >= start} (1 + sign·coeff·q^{step·n + offset})`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductFactor<C> {
    /// `+1` or `-1`.
    pub sign: i8,
    pub coeff: C,
    pub step: Exponent,
    pub offset: Exponent,
    pub start: i64,
}

impl<C: Scalar> ProductFactor<C> {
    pub fn new(sign: i8, coeff: C, step: Exponent, offset: Exponent, start: i64) -> Self {
        ProductFactor { sign, coeff, step, offset, start }
    }

    /// `∏_{n >= start} (1 + sign·q^{n·step + offset})` with unit coefficient.
    pub fn unit(sign: i8, step: Exponent, offset: Exponent, start: i64) -> Self {
        ProductFactor { sign, coeff: C::one(), step, offset, start }
    }
}

/// Truncated expansion of `∏ (1 + s·c·q^{a·n+b})^{power}` over all listed
/// factor families, known below `precision`.
pub fn product_expand<C: Scalar>(
    factors: &[ProductFactor<C>],
    power: i8,
    precision: Exponent,
) -> Result<PuiseuxSeries<C>> {
    if power != 1 && power != -1 {
        return Err(Error::InvalidArgument("product power must be +1 or -1".into()));
    }
    let mut denom = 1i64;
    for f in factors {
        if !f.step.is_positive() {
            return Err(Error::NonPositive(f.step));
        }
        if f.sign != 1 && f.sign != -1 {
            return Err(Error::InvalidArgument("factor sign must be +1 or -1".into()));
        }
        denom = denom.lcm(f.step.denom()).lcm(f.offset.denom());
    }
    let len = first_index_at_or_above(&precision, denom).max(0) as usize;
    let mut dense: Vec<C> = vec![C::zero(); len];
    if len > 0 {
        dense[0] = C::one();
    }
    for f in factors {
        let t = if f.sign < 0 { f.coeff.neg_ref() } else { f.coeff.clone() };
        let mut n = f.start;
        loop {
            let e = f.step * Exponent::from_integer(n) + f.offset;
            if e >= precision {
                break;
            }
            if e.is_negative() {
                return Err(Error::InvalidArgument(
                    "product factors must have nonnegative exponents".into(),
                ));
            }
            let j = (e * Exponent::from_integer(denom)).to_integer() as usize;
            if j == 0 {
                let factor = C::one().add_ref(&t);
                let factor = if power > 0 {
                    factor
                } else {
                    factor.try_inv().ok_or(Error::ZeroLeadingCoefficient)?
                };
                for d in dense.iter_mut() {
                    *d = d.mul_ref(&factor);
                }
            } else if power > 0 {
                for i in (j..len).rev() {
                    let add = t.mul_ref(&dense[i - j]);
                    dense[i] = dense[i].add_ref(&add);
                }
            } else {
                for i in j..len {
                    let sub = t.mul_ref(&dense[i - j]);
                    dense[i] = dense[i].sub_ref(&sub);
                }
            }
            n += 1;
        }
    }
    let terms = dense
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64, c))
        .collect();
    let mut s = PuiseuxSeries { denom, terms, precision: Some(precision) };
    s.canonicalize();
    Ok(s)
}
