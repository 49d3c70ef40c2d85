//! Named series selectors used by `expand` and `eval`.

use std::fmt;
use std::str::FromStr;

use qblocks_core::modforms::{
    dedekind_eta, eisenstein_normalized, p_function_normalized, theta_linear, NormalizedSeriesLabel, RootOfUnity,
    TwistPair,
};
use qblocks_core::vosa::{
    charged_char_product, ff_block, lattice_theta, ChargedFermionParams, CosetVector, FermionBlockLabel, Insertion,
    Lattice, ThetaParity,
};
use qblocks_core::{Complex64, ComplexSeries, ExactSeries, Exponent, Rational, Scalar};

use crate::error::{Error, Result};

pub const SELECTOR_HELP: &str = "q, eta, eisenstein:K, pfunc:K:MU:LAMBDA (roots 1, -1, i, -i, e(p/q)), \
ff:G:H:U (G, H in {1, s}; U in {vac, phi}), charged:A:DELTA:RHO, lattice-theta:GRAM:DELTA:even|odd, theta:A:B";

/// A series in whichever ring can hold it exactly, else in complex floats.
#[derive(Debug, Clone, PartialEq)]
pub enum AnySeries {
    Exact(ExactSeries),
    Complex(ComplexSeries),
}

impl AnySeries {
    pub fn eval_at_tau(&self, tau: Complex64) -> Result<(Complex64, f64)> {
        Ok(match self {
            AnySeries::Exact(s) => s.eval_at_tau(tau)?,
            AnySeries::Complex(s) => s.eval_at_tau(tau)?,
        })
    }

    pub fn to_complex(&self) -> ComplexSeries {
        match self {
            AnySeries::Exact(s) => s.to_complex(),
            AnySeries::Complex(s) => s.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            AnySeries::Exact(s) => s.is_zero(),
            AnySeries::Complex(s) => s.is_zero(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Selector {
    Q,
    Eta,
    Eisenstein(u32),
    PFunction { k: u32, twist: TwistPair },
    Fermion(FermionBlockLabel),
    Charged(ChargedFermionParams),
    LatticeTheta { lattice: Lattice, delta: CosetVector, parity: ThetaParity },
    Theta { a: Exponent, b: Exponent },
}

fn parse_rational(s: &str) -> Result<Exponent> {
    s.trim().parse::<Exponent>().map_err(|_| Error::Usage(format!("expected a rational p/q, got '{s}'")))
}

fn parse_u32(s: &str) -> Result<u32> {
    s.parse().map_err(|_| Error::Usage(format!("expected a non-negative integer, got '{s}'")))
}

/// Parses `1`, `-1`, `i`, `-i` or `e(p/q)` as a root of unity.
pub fn parse_root(s: &str) -> Result<RootOfUnity> {
    let turn = match s.trim() {
        "1" => Exponent::new(0, 1),
        "-1" => Exponent::new(1, 2),
        "i" => Exponent::new(1, 4),
        "-i" => Exponent::new(3, 4),
        t => {
            let inner = t
                .strip_prefix("e(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Error::Usage(format!("expected 1, -1, i, -i or e(p/q), got '{t}'")))?;
            parse_rational(inner)?
        }
    };
    Ok(RootOfUnity::from_turn(turn))
}

fn parse_sigma(s: &str) -> Result<bool> {
    match s {
        "1" => Ok(false),
        "s" | "sigma" => Ok(true),
        _ => Err(Error::Usage(format!("fermion twist must be 1 or s, got '{s}'"))),
    }
}

impl FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let unknown = || Error::UnknownSelector(s.to_string());
        let sel = match parts.as_slice() {
            ["q"] => Selector::Q,
            ["eta"] => Selector::Eta,
            ["eisenstein", k] => Selector::Eisenstein(parse_u32(k)?),
            ["pfunc", k, mu, lambda] => Selector::PFunction {
                k: parse_u32(k)?,
                twist: TwistPair::new(parse_root(mu)?, parse_root(lambda)?),
            },
            ["ff", g, h, u] => {
                let insertion = match *u {
                    "vac" => Insertion::Vac,
                    "phi" => Insertion::Phi,
                    _ => return Err(Error::Usage(format!("fermion insertion must be vac or phi, got '{u}'"))),
                };
                Selector::Fermion(FermionBlockLabel::new(parse_sigma(g)?, parse_sigma(h)?, insertion))
            }
            ["charged", a, d, r] => {
                Selector::Charged(ChargedFermionParams::new(parse_rational(a)?, parse_rational(d)?, parse_rational(r)?)?)
            }
            ["lattice-theta", gram, delta, parity] => {
                let parity = match *parity {
                    "even" => ThetaParity::Even,
                    "odd" => ThetaParity::Odd,
                    _ => return Err(Error::Usage(format!("theta parity must be even or odd, got '{parity}'"))),
                };
                Selector::LatticeTheta { lattice: gram.parse()?, delta: delta.parse()?, parity }
            }
            ["theta", a, b] => Selector::Theta { a: parse_rational(a)?, b: parse_rational(b)? },
            _ => return Err(unknown()),
        };
        Ok(sel)
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Q => write!(f, "q"),
            Selector::Eta => write!(f, "eta"),
            Selector::Eisenstein(k) => write!(f, "eisenstein:{k}"),
            Selector::PFunction { k, twist } => {
                write!(f, "pfunc:{k}:e({}):e({})", twist.mu.turn(), twist.lambda.turn())
            }
            Selector::Fermion(l) => write!(f, "{l}"),
            Selector::Charged(p) => write!(f, "charged:{}:{}:{}", p.a(), p.delta(), p.rho()),
            Selector::LatticeTheta { lattice, delta, parity } => {
                let p = match parity {
                    ThetaParity::Even => "even",
                    ThetaParity::Odd => "odd",
                };
                write!(f, "lattice-theta:{:?}:{delta}:{p}", lattice.gram())
            }
            Selector::Theta { a, b } => write!(f, "theta:{a}:{b}"),
        }
    }
}

/// Tries the exact ring first; root-of-unity coefficients fall back to complex.
fn exact_or_complex(
    exact: impl FnOnce() -> qblocks_core::Result<ExactSeries>,
    complex: impl FnOnce() -> qblocks_core::Result<ComplexSeries>,
) -> Result<AnySeries> {
    match exact() {
        Ok(s) => Ok(AnySeries::Exact(s)),
        Err(qblocks_core::Error::UnsupportedRoot(_)) => Ok(AnySeries::Complex(complex()?)),
        Err(e) => Err(e.into()),
    }
}

impl Selector {
    /// The `(2πi)^m` normalization carried by the stored series.
    pub fn normalization(&self) -> Option<NormalizedSeriesLabel> {
        match self {
            Selector::Eisenstein(k) => Some(NormalizedSeriesLabel::eisenstein(*k)),
            Selector::PFunction { k, .. } => Some(NormalizedSeriesLabel::p_function(*k)),
            _ => None,
        }
    }

    /// Expands the object below `q^prec`.
    pub fn expand(&self, prec: Exponent) -> Result<AnySeries> {
        if prec <= Exponent::new(0, 1) {
            return Err(Error::Usage(format!("precision must be positive, got {prec}")));
        }
        match self {
            Selector::Q => Ok(AnySeries::Exact(
                ExactSeries::monomial(<Rational as Scalar>::one(), Exponent::new(1, 1)).truncate(prec),
            )),
            Selector::Eta => Ok(AnySeries::Exact(dedekind_eta(prec)?)),
            Selector::Eisenstein(k) => Ok(AnySeries::Exact(eisenstein_normalized(*k, prec)?)),
            Selector::PFunction { k, twist } => exact_or_complex(
                || p_function_normalized(*k, twist, prec),
                || p_function_normalized(*k, twist, prec),
            ),
            Selector::Fermion(l) => Ok(AnySeries::Exact(ff_block(l, prec)?)),
            Selector::Charged(p) => {
                exact_or_complex(|| charged_char_product(p, prec), || charged_char_product(p, prec))
            }
            Selector::LatticeTheta { lattice, delta, parity } => {
                Ok(AnySeries::Exact(lattice_theta(lattice, delta, *parity, prec)?))
            }
            Selector::Theta { a, b } => {
                exact_or_complex(|| theta_linear(*a, *b, prec), || theta_linear(*a, *b, prec))
            }
        }
    }

    /// Evaluates at `τ`, restoring any `(2πi)^m` normalization. Returns the
    /// value and the scaled tail estimate.
    pub fn eval(&self, tau: Complex64, prec: Exponent) -> Result<(Complex64, f64)> {
        if tau.im.is_nan() || tau.im <= 0.0 {
            return Err(Error::Usage(format!("tau = {tau} is not in the upper half plane")));
        }
        let (v, tail) = self.expand(prec)?.eval_at_tau(tau)?;
        Ok(match self.normalization() {
            Some(n) => {
                let scale = n.denormalize(Complex64::new(1.0, 0.0));
                (v * scale, tail * scale.norm())
            }
            None => (v, tail),
        })
    }
}

/// Parses `a+bi`, `a-bi`, `bi`, `i`, `-i` or a real number.
pub fn parse_tau(s: &str) -> Result<Complex64> {
    let bad = || Error::Usage(format!("cannot parse '{s}' as a complex number a+bi"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // Split at the last sign that is not part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(j) => (&body[..j], &body[j..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}
