//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on usage
//! errors (unknown selector or suite, bad arguments, `τ` outside the upper
//! half plane).

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use qblocks_core::superalg::{
    closed_form_functional, find_gamma, h_supersym_basis, make_end_super, make_queer, AlgebraAutomorphism,
    SuperAlgebra, SuperModule,
};
use qblocks_core::vosa::Lattice;
use qblocks_core::{Exponent, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::json::{series_to_string, AlgebraJson, LatticeJson};
use crate::selector::{parse_tau, AnySeries, Selector};
use crate::verify::{check_suite, ComplexValue, SuiteOptions};

fn parse_prec(s: &str) -> std::result::Result<Exponent, String> {
    let p: Exponent = s.trim().parse().map_err(|_| format!("'{s}' is not a rational p/q"))?;
    if p <= Exponent::new(0, 1) {
        return Err(format!("precision must be positive, got {p}"));
    }
    Ok(p)
}

fn parse_tol(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("tolerance must be a positive number, got '{s}'")),
    }
}

#[derive(Debug, Parser)]
#[command(name = "qblocks", version, about = "Twisted conformal blocks as q-series: expand, evaluate and verify")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the q-expansion of a named object.
    Expand {
        /// Object selector, e.g. `eta`, `pfunc:1:-1:i`, `ff:s:1:vac`.
        selector: String,
        /// Truncation order in q (rational, exclusive).
        #[arg(long, env = "QBLOCKS_PREC", default_value = "100", value_parser = parse_prec)]
        prec: Exponent,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a named object at tau, undoing any (2 pi i)^m normalization.
    Eval {
        selector: String,
        /// A point of the upper half plane written `a+bi`.
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, env = "QBLOCKS_PREC", default_value = "100", value_parser = parse_prec)]
        prec: Exponent,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite (or `all`) and print a report.
    Check {
        suite: String,
        #[arg(long, env = "QBLOCKS_PREC", default_value = "100", value_parser = parse_prec)]
        prec: Exponent,
        #[arg(long, default_value = "1e-8", value_parser = parse_tol)]
        tol: f64,
        /// Print aligned text instead of the JSON report.
        #[arg(long)]
        text: bool,
    },
    /// Discriminant data and, for odd lattices, the theta-quotient block table.
    Lattice {
        /// Gram matrix such as `[[2,1],[1,2]]`.
        #[arg(long)]
        gram: String,
        /// Also expand the block table below this order.
        #[arg(long, value_parser = parse_prec)]
        prec: Option<Exponent>,
        #[arg(long)]
        json: bool,
    },
    /// Supersymmetric functionals of a superalgebra under an automorphism.
    Superalg {
        /// `end:M:K`, `queer:N` or a JSON file in the algebra format.
        #[arg(long)]
        algebra: String,
        /// `identity`, `parity`, `xi-negation` or `inner:[c_0,...,c_{d-1}]`.
        #[arg(long, default_value = "identity")]
        automorphism: String,
        /// Print the algebra in JSON form and exit.
        #[arg(long)]
        emit: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Serialize)]
struct EvalOutput {
    selector: String,
    tau: ComplexValue,
    value: ComplexValue,
    tail: f64,
}

#[derive(Serialize)]
struct SuperalgOutput {
    algebra: String,
    automorphism: String,
    dimension: usize,
    automorphism_order: usize,
    fh_dimension: usize,
    basis: Vec<Vec<String>>,
    gamma_parity: Option<String>,
    gamma: Option<Vec<Vec<String>>>,
    closed_form: Option<Vec<String>>,
    residual: Option<f64>,
}

fn load_algebra(spec: &str) -> Result<(SuperAlgebra<Rational>, Option<SuperModule<Rational>>)> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Usage(format!("bad size '{s}' in '{spec}'")));
    match parts.as_slice() {
        ["end", m, k] => {
            let (a, n) = make_end_super(num(m)?, num(k)?)?;
            Ok((a, Some(n)))
        }
        ["queer", n] => {
            let (a, n) = make_queer(num(n)?)?;
            Ok((a, Some(n)))
        }
        _ => {
            let text = std::fs::read_to_string(PathBuf::from(spec))?;
            serde_json::from_str::<AlgebraJson>(&text)?.to_algebra()
        }
    }
}

fn parse_automorphism(spec: &str, alg: &SuperAlgebra<Rational>) -> Result<AlgebraAutomorphism<Rational>> {
    Ok(match spec {
        "identity" => AlgebraAutomorphism::identity(alg),
        "parity" => AlgebraAutomorphism::parity(alg)?,
        "xi-negation" => AlgebraAutomorphism::xi_negation(alg)?,
        s => {
            let body = s
                .strip_prefix("inner:")
                .ok_or_else(|| Error::Usage(format!("unknown automorphism '{s}'")))?
                .trim()
                .trim_start_matches('[')
                .trim_end_matches(']');
            let u = body
                .split(',')
                .map(|c| c.trim().parse::<Rational>().map_err(|_| Error::Usage(format!("bad coordinate '{c}'"))))
                .collect::<Result<Vec<_>>>()?;
            AlgebraAutomorphism::inner(alg, &u)?
        }
    })
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn print_series(out: &mut dyn Write, s: &AnySeries) -> Result<()> {
    let rows: Vec<(String, String)> = match s {
        AnySeries::Exact(s) => s.terms().map(|(e, c)| (e.to_string(), c.to_string())).collect(),
        AnySeries::Complex(s) => s.terms().map(|(e, c)| (e.to_string(), format!("{:+.15e} {:+.15e}i", c.re, c.im))).collect(),
    };
    let w = rows.iter().map(|(e, _)| e.len()).max().unwrap_or(0).max(3);
    writeln!(out, "{:>w$}  coefficient", "exp")?;
    for (e, c) in rows {
        writeln!(out, "{e:>w$}  {c}")?;
    }
    let prec = match s {
        AnySeries::Exact(s) => s.precision(),
        AnySeries::Complex(s) => s.precision(),
    };
    match prec {
        Some(p) => writeln!(out, "+ O(q^{p})")?,
        None => writeln!(out, "(exact)")?,
    }
    Ok(())
}

/// Runs one command, writing to `out`. Returns the process exit code; errors
/// map to exit code 2 in the binary.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Expand { selector, prec, json } => {
            let s = selector.parse::<Selector>()?.expand(prec)?;
            if json {
                writeln!(out, "{}", series_to_string(&s)?)?;
            } else {
                print_series(out, &s)?;
            }
            Ok(0)
        }
        Command::Eval { selector, tau, prec, json } => {
            let tau = parse_tau(&tau)?;
            let sel: Selector = selector.parse()?;
            let (v, tail) = sel.eval(tau, prec)?;
            if json {
                let o = EvalOutput { selector: sel.to_string(), tau: tau.into(), value: v.into(), tail };
                writeln!(out, "{}", serde_json::to_string_pretty(&o)?)?;
            } else {
                writeln!(out, "{:.15e} {:+.15e}i  (tail ~ {tail:.1e})", v.re, v.im)?;
            }
            Ok(0)
        }
        Command::Check { suite, prec, tol, text } => {
            let opts = SuiteOptions { prec, tol, ..SuiteOptions::default() };
            let report = check_suite(&suite, &opts)?;
            if text {
                let w = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
                for c in &report.checks {
                    let status = if c.pass { "pass" } else { "FAIL" };
                    writeln!(out, "{status}  {:<w$}  {:>5}  {:.2e}  {}", c.name, c.matrix, c.residual, c.labels)?;
                }
                let failed = report.failures().count();
                writeln!(out, "{}: {} checks, {failed} failed", report.suite, report.checks.len())?;
            } else {
                writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Lattice { gram, prec, json } => {
            let lattice: Lattice = gram.parse()?;
            let data = LatticeJson::new(&lattice, prec)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&data)?)?;
            } else {
                writeln!(out, "rank           {}", data.rank)?;
                writeln!(out, "disc           {}", data.disc)?;
                writeln!(out, "even           {}", data.even)?;
                writeln!(out, "invariants     {:?}", data.smith)?;
                writeln!(out, "dual cosets    {}", data.dual_cosets.join(" "))?;
                writeln!(out, "rho            {}", data.rho)?;
                writeln!(out, "ramond cosets  {}", data.ramond_cosets.join(" "))?;
                for b in data.blocks.iter().flatten() {
                    writeln!(out, "block {} spans {} series", b.label, b.series.len())?;
                }
            }
            Ok(0)
        }
        Command::Superalg { algebra, automorphism, emit, json } => {
            let (alg, module) = load_algebra(&algebra)?;
            if emit {
                writeln!(out, "{}", serde_json::to_string_pretty(&AlgebraJson::from_algebra(&alg, module.as_ref()))?)?;
                return Ok(0);
            }
            let h = parse_automorphism(&automorphism, &alg)?;
            let basis = h_supersym_basis(&alg, &h)?;
            let mut o = SuperalgOutput {
                algebra: algebra.clone(),
                automorphism: automorphism.clone(),
                dimension: alg.dim(),
                automorphism_order: h.order(),
                fh_dimension: basis.len(),
                basis: basis.iter().map(|f| strings(f.coeffs())).collect(),
                gamma_parity: None,
                gamma: None,
                closed_form: None,
                residual: None,
            };
            if let (Some(module), Some(_)) = (&module, alg.simple_type()) {
                let gamma = find_gamma(&alg, &h, module)?;
                let f = closed_form_functional(&alg, module, &gamma)?;
                o.gamma_parity = Some(format!("{:?}", gamma.parity).to_lowercase());
                o.gamma = Some(gamma.matrix.to_rows().iter().map(|r| strings(r)).collect());
                o.residual = basis.first().map(|b| f.proportionality_residual(b));
                o.closed_form = Some(strings(f.coeffs()));
            }
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o)?)?;
            } else {
                writeln!(out, "algebra {} (dim {}), automorphism {} of order {}", o.algebra, o.dimension, o.automorphism, o.automorphism_order)?;
                writeln!(out, "dim F_h = {}", o.fh_dimension)?;
                for (i, b) in o.basis.iter().enumerate() {
                    writeln!(out, "basis[{i}]   [{}]", b.join(", "))?;
                }
                if let (Some(p), Some(cf), Some(r)) = (&o.gamma_parity, &o.closed_form, o.residual) {
                    writeln!(out, "gamma       {p}")?;
                    writeln!(out, "closed form [{}]", cf.join(", "))?;
                    writeln!(out, "residual    {r:.2e}")?;
                }
            }
            Ok(0)
        }
    }
}
