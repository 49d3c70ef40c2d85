//! JSON formats for series, superalgebras and lattice data.
//!
//! Series:
//!
//! ```json
//! {"ring": "exact", "denom": 24, "precision": "5",
//!  "terms": [{"exp": "1/24", "num": "1", "den": "1"}]}
//! ```
//!
//! Complex series use `{"exp", "re", "im"}` terms and `"ring": "complex"`.
//! `precision` is `null` for an exact (untruncated) series.

use qblocks_core::linalg::Matrix;
use qblocks_core::modforms::TwistPair;
use qblocks_core::superalg::{Parity, SimpleType, SuperAlgebra, SuperModule};
use qblocks_core::vosa::{lattice_block_table, Lattice};
use qblocks_core::{Complex64, ComplexSeries, ExactSeries, Exponent, PuiseuxSeries, Rational, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::selector::AnySeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Exact,
    Complex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TermJson {
    Exact { exp: String, num: String, den: String },
    Complex { exp: String, re: f64, im: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub ring: Ring,
    pub denom: i64,
    pub precision: Option<String>,
    pub terms: Vec<TermJson>,
}

fn parse_exp(s: &str) -> Result<Exponent> {
    s.parse().map_err(|_| Error::Usage(format!("bad exponent '{s}'")))
}

fn parse_big(s: &str) -> Result<Rational> {
    s.parse().map_err(|_| Error::Usage(format!("bad rational '{s}'")))
}

impl SeriesJson {
    pub fn from_exact(s: &ExactSeries) -> Self {
        SeriesJson {
            ring: Ring::Exact,
            denom: s.denom(),
            precision: s.precision().map(|p| p.to_string()),
            terms: s
                .terms()
                .map(|(e, c)| TermJson::Exact { exp: e.to_string(), num: c.numer().to_string(), den: c.denom().to_string() })
                .collect(),
        }
    }

    pub fn from_complex(s: &ComplexSeries) -> Self {
        SeriesJson {
            ring: Ring::Complex,
            denom: s.denom(),
            precision: s.precision().map(|p| p.to_string()),
            terms: s.terms().map(|(e, c)| TermJson::Complex { exp: e.to_string(), re: c.re, im: c.im }).collect(),
        }
    }

    pub fn from_any(s: &AnySeries) -> Self {
        match s {
            AnySeries::Exact(s) => Self::from_exact(s),
            AnySeries::Complex(s) => Self::from_complex(s),
        }
    }

    /// Rebuilds the series, including its stored common denominator.
    pub fn to_series(&self) -> Result<AnySeries> {
        let precision = self.precision.as_deref().map(parse_exp).transpose()?;
        let mismatch = || Error::Usage(format!("term does not match ring {:?}", self.ring));
        Ok(match self.ring {
            Ring::Exact => {
                let terms = self
                    .terms
                    .iter()
                    .map(|t| match t {
                        TermJson::Exact { exp, num, den } => {
                            let (n, d) = (parse_big(num)?, parse_big(den)?);
                            let c = n.div_ref(&d).ok_or_else(|| Error::Usage("zero denominator".into()))?;
                            Ok((parse_exp(exp)?, c))
                        }
                        TermJson::Complex { .. } => Err(mismatch()),
                    })
                    .collect::<Result<Vec<_>>>()?;
                AnySeries::Exact(PuiseuxSeries::from_terms(terms, precision).with_denom(self.denom)?)
            }
            Ring::Complex => {
                let terms = self
                    .terms
                    .iter()
                    .map(|t| match t {
                        TermJson::Complex { exp, re, im } => Ok((parse_exp(exp)?, Complex64::new(*re, *im))),
                        TermJson::Exact { .. } => Err(mismatch()),
                    })
                    .collect::<Result<Vec<_>>>()?;
                AnySeries::Complex(PuiseuxSeries::from_terms(terms, precision).with_denom(self.denom)?)
            }
        })
    }
}

pub fn series_to_string(s: &AnySeries) -> Result<String> {
    Ok(serde_json::to_string_pretty(&SeriesJson::from_any(s))?)
}

pub fn series_from_str(s: &str) -> Result<AnySeries> {
    serde_json::from_str::<SeriesJson>(s)?.to_series()
}

fn parity_bit(p: Parity) -> u8 {
    u8::from(p.is_odd())
}

fn parity_from_bit(b: u8) -> Result<Parity> {
    match b {
        0 => Ok(Parity::Even),
        1 => Ok(Parity::Odd),
        _ => Err(Error::Usage(format!("parity must be 0 or 1, got {b}"))),
    }
}

fn rational_vec(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_big(s)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SimpleTypeJson {
    /// `End(C^{m|k})`.
    End,
    /// `Q_n` with the coordinates of `ξ`.
    Queer { xi: Vec<String> },
}

/// A module given by one matrix (rows of `"p/q"` strings) per basis element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub parities: Vec<u8>,
    pub action: Vec<Vec<Vec<String>>>,
}

/// Sparse structure constants: `[i, j, k, "c"]` means `e_i e_j ∋ c·e_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dimension: usize,
    pub parities: Vec<u8>,
    pub structure: Vec<(usize, usize, usize, String)>,
    pub unit: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple_type: Option<SimpleTypeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleJson>,
}

impl AlgebraJson {
    pub fn from_algebra(alg: &SuperAlgebra<Rational>, module: Option<&SuperModule<Rational>>) -> Self {
        let d = alg.dim();
        let mut structure = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let c = alg.constant(i, j, k);
                    if !Scalar::is_zero(c) {
                        structure.push((i, j, k, c.to_string()));
                    }
                }
            }
        }
        AlgebraJson {
            dimension: d,
            parities: alg.parity().iter().map(|p| parity_bit(*p)).collect(),
            structure,
            unit: alg.unit().iter().map(ToString::to_string).collect(),
            simple_type: alg.simple_type().map(|t| match t {
                SimpleType::TypeI => SimpleTypeJson::End,
                SimpleType::TypeII { xi } => SimpleTypeJson::Queer { xi: xi.iter().map(ToString::to_string).collect() },
            }),
            module: module.map(|m| ModuleJson {
                parities: m.parity().iter().map(|p| parity_bit(*p)).collect(),
                action: m
                    .action()
                    .iter()
                    .map(|a| a.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect())
                    .collect(),
            }),
        }
    }

    /// Validates and builds the algebra and, when present, its module.
    pub fn to_algebra(&self) -> Result<(SuperAlgebra<Rational>, Option<SuperModule<Rational>>)> {
        let d = self.dimension;
        if self.parities.len() != d {
            return Err(Error::Usage(format!("expected {d} parities, got {}", self.parities.len())));
        }
        let parity = self.parities.iter().map(|b| parity_from_bit(*b)).collect::<Result<Vec<_>>>()?;
        let mut structure = vec![<Rational as Scalar>::zero(); d * d * d];
        for (i, j, k, c) in &self.structure {
            if *i >= d || *j >= d || *k >= d {
                return Err(Error::Usage(format!("structure index ({i}, {j}, {k}) out of range")));
            }
            structure[(i * d + j) * d + k] = parse_big(c)?;
        }
        let mut alg = SuperAlgebra::new(parity, structure, rational_vec(&self.unit)?)?;
        if let Some(t) = &self.simple_type {
            alg = alg.with_simple_type(match t {
                SimpleTypeJson::End => SimpleType::TypeI,
                SimpleTypeJson::Queer { xi } => SimpleType::TypeII { xi: rational_vec(xi)? },
            })?;
        }
        let module = match &self.module {
            None => None,
            Some(m) => {
                let parity = m.parities.iter().map(|b| parity_from_bit(*b)).collect::<Result<Vec<_>>>()?;
                let action = m
                    .action
                    .iter()
                    .map(|rows| Ok(Matrix::from_rows(rows.iter().map(|r| rational_vec(r)).collect::<Result<_>>()?)?))
                    .collect::<Result<Vec<_>>>()?;
                Some(SuperModule::new(&alg, parity, action)?)
            }
        };
        Ok((alg, module))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockJson {
    /// `(μ, λ)` as turns, e.g. `"(1/2, 0)"`.
    pub label: String,
    pub series: Vec<SeriesJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub gram: Vec<Vec<i64>>,
    pub rank: usize,
    pub disc: i64,
    pub even: bool,
    pub smith: Vec<i64>,
    pub dual_cosets: Vec<String>,
    pub rho: String,
    pub ramond_cosets: Vec<String>,
    /// The `(g, h)` theta-quotient table; absent for even lattices.
    pub blocks: Option<Vec<BlockJson>>,
}

pub fn twist_label(t: &TwistPair) -> String {
    format!("({}, {})", t.mu.turn(), t.lambda.turn())
}

impl LatticeJson {
    pub fn new(lattice: &Lattice, prec: Option<Exponent>) -> Result<Self> {
        let d = lattice.dual_data()?;
        let blocks = match prec {
            Some(p) if !lattice.is_even() => Some(
                lattice_block_table(lattice, p)?
                    .iter()
                    .map(|(label, series)| BlockJson {
                        label: twist_label(label),
                        series: series.iter().map(SeriesJson::from_exact).collect(),
                    })
                    .collect(),
            ),
            _ => None,
        };
        Ok(LatticeJson {
            gram: lattice.gram().to_vec(),
            rank: lattice.rank(),
            disc: d.disc,
            even: lattice.is_even(),
            smith: d.smith.clone(),
            dual_cosets: d.dual_cosets.iter().map(ToString::to_string).collect(),
            rho: d.rho.to_string(),
            ramond_cosets: d.ramond_cosets.iter().map(ToString::to_string).collect(),
            blocks,
        })
    }
}
