//! `qsb` command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification identity fails, 2 for
//! invalid parameters or usage, 3 for I/O and input-format errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::format::fmt_f64;
use crate::measure::{monomial_gram_on, nu_q_atoms};
use crate::operators::{
    annihilation, creation, multiplication_by_x, number, shifted_number, IdentityReport,
};
use crate::orthopoly::{poly_monomial, PolyFamily};
use crate::qcore::{QParams, Tolerance};
use crate::sbt::{sb_inverse, sb_transform, CoeffVectorJson};
use crate::suites::{run_suite, Suite, GRID_BETA, GRID_Q};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_PARAMS: i32 = 2;
pub const EXIT_IO: i32 = 3;

const DEFAULT_Q: f64 = 0.5;
const DEFAULT_BETA: f64 = 1.0;

#[derive(Debug, Parser)]
#[command(
    name = "qsb",
    version,
    about = "q-deformed Segal-Bargmann transform toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Deformation parameter, 0 <= q < 1.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<f64>,
    /// Scale parameter, beta > 0.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// Truncation degree N.
    #[arg(long, default_value_t = 12)]
    pub degree: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tail_tol: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub rel_tol: f64,
    /// Write output here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Common {
    fn params(&self) -> Result<QParams> {
        QParams::new(
            self.q.unwrap_or(DEFAULT_Q),
            self.beta.unwrap_or(DEFAULT_BETA),
        )
    }

    fn tolerance(&self) -> Result<Tolerance> {
        Tolerance::new(self.rel_tol, self.tail_tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Ortho,
    Unitary,
    Operators,
    Hermite,
    Qcore,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Ortho => Suite::Ortho,
            SuiteArg::Unitary => Suite::Unitary,
            SuiteArg::Operators => Suite::Operators,
            SuiteArg::Hermite => Suite::Hermite,
            SuiteArg::Qcore => Suite::Qcore,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Charlier,
    Hermite,
}

impl From<FamilyArg> for PolyFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Charlier => PolyFamily::Charlier,
            FamilyArg::Hermite => PolyFamily::Hermite,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OpArg {
    /// q-creation
    #[value(name = "Z", alias = "z")]
    Z,
    /// q-annihilation
    #[value(name = "D", alias = "d")]
    D,
    /// q-number
    #[value(name = "N", alias = "n")]
    N,
    /// q-number plus beta
    #[value(name = "alpha")]
    Alpha,
    /// transformed multiplication by x (family chosen by --family)
    #[value(name = "Q", alias = "q")]
    Q,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run identity checks and stream JSON-lines reports.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// Monomial coefficients of the degree-n polynomial, constant term first.
    Poly {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = FamilyArg::Charlier)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
    },
    /// Gram matrix of monomials under nu_q, for n, m <= degree.
    Gram {
        #[command(flatten)]
        common: Common,
    },
    /// Atoms of nu_q as `j,radius,weight`.
    Measure {
        #[command(flatten)]
        common: Common,
    },
    /// Apply the transform (or its inverse) to a coefficient-vector JSON file.
    Transform {
        #[command(flatten)]
        common: Common,
        /// Map monomial coefficients back to the orthogonal basis.
        #[arg(long)]
        invert: bool,
        /// Family override for the inverse transform.
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        /// Input JSON; standard input when omitted.
        input: Option<PathBuf>,
    },
    /// Dense matrix of an operator on span{z^0..z^N}.
    Opmat {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        op: OpArg,
        #[arg(long, value_enum, default_value_t = FamilyArg::Charlier)]
        family: FamilyArg,
    },
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run_from_args<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_PARAMS } else { EXIT_OK };
        }
    };
    run(cli, stdin, stdout, stderr)
}

pub fn run(cli: Cli, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match execute(cli.command, stdin) {
        Ok((text, out, status)) => {
            let written = match out {
                Some(path) => std::fs::write(&path, text.as_bytes()).map_err(Error::from),
                None => stdout.write_all(text.as_bytes()).map_err(Error::from),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_IO;
            }
            status
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_)
        | Error::Divergence { .. }
        | Error::ParamMismatch(_)
        | Error::Precondition(_) => EXIT_PARAMS,
        Error::NonConvergence { .. } => EXIT_FAILED,
        Error::Io(_) | Error::Json(_) => EXIT_IO,
    }
}

type Output = (String, Option<PathBuf>, i32);

fn execute(command: Command, stdin: &mut dyn Read) -> Result<Output> {
    match command {
        Command::Verify { common, suite } => cmd_verify(&common, suite.into()),
        Command::Poly { common, family, n } => {
            let params = common.params()?;
            Ok((cmd_poly(&params, family.into(), n), common.out, EXIT_OK))
        }
        Command::Gram { common } => {
            let text = cmd_gram(
                &common.params()?,
                common.degree,
                common.tolerance()?.tail_tol,
            )?;
            Ok((text, common.out, EXIT_OK))
        }
        Command::Measure { common } => {
            let measure = nu_q_atoms(&common.params()?, common.tolerance()?.tail_tol)?;
            Ok((measure.to_csv(), common.out, EXIT_OK))
        }
        Command::Transform {
            common,
            invert,
            family,
            input,
        } => {
            let mut text = String::new();
            match input {
                Some(path) => text = std::fs::read_to_string(path)?,
                None => {
                    stdin.read_to_string(&mut text)?;
                }
            }
            let out = cmd_transform(&text, invert, family.map(Into::into))?;
            Ok((out, common.out, EXIT_OK))
        }
        Command::Opmat { common, op, family } => {
            let text = cmd_opmat(&common.params()?, common.degree, op, family.into())?;
            Ok((text, common.out, EXIT_OK))
        }
    }
}

/// Runs `suite` over the requested cell, or over the default grid along any
/// axis (`q` or `beta`) not fixed on the command line.
pub fn cmd_verify(common: &Common, suite: Suite) -> Result<Output> {
    let tol = common.tolerance()?;
    let qs: Vec<f64> = common.q.map_or_else(|| GRID_Q.to_vec(), |q| vec![q]);
    let betas: Vec<f64> = common.beta.map_or_else(|| GRID_BETA.to_vec(), |b| vec![b]);
    let mut cells = Vec::new();
    for &q in &qs {
        for &b in &betas {
            cells.push(QParams::new(q, b)?);
        }
    }
    let degree = common.degree;
    let reports: Vec<Vec<IdentityReport>> = cells
        .par_iter()
        .map(|p| run_suite(suite, p, degree, &tol))
        .collect::<Result<_>>()?;
    let mut reports: Vec<IdentityReport> = reports.into_iter().flatten().collect();
    reports.sort_by(|a, b| {
        a.identity
            .cmp(&b.identity)
            .then(a.q.total_cmp(&b.q))
            .then(a.beta.total_cmp(&b.beta))
    });
    let mut text = String::new();
    let mut ok = true;
    for r in &reports {
        ok &= r.passed;
        let _ = writeln!(text, "{}", r.to_json_line());
    }
    Ok((
        text,
        common.out.clone(),
        if ok { EXIT_OK } else { EXIT_FAILED },
    ))
}

/// Header `c0,...,cn` and one row of real monomial coefficients.
pub fn cmd_poly(params: &QParams, family: PolyFamily, n: usize) -> String {
    let poly = poly_monomial(family, params, n);
    let header: Vec<String> = (0..=n).map(|k| format!("c{k}")).collect();
    let row: Vec<String> = poly.coeffs.iter().map(|c| fmt_f64(c.re)).collect();
    format!("{}\n{}\n", header.join(","), row.join(","))
}

/// Real parts of `int conj(z)^n z^m d nu_q` in a `row,c0,...,cN` matrix,
/// each entry with an `n + m + 2`-point angular rule.
pub fn cmd_gram(params: &QParams, degree: usize, tail_tol: f64) -> Result<String> {
    let measure = nu_q_atoms(params, tail_tol)?;
    let mut out = String::from("row");
    for m in 0..=degree {
        let _ = write!(out, ",c{m}");
    }
    out.push('\n');
    for n in 0..=degree {
        out.push_str(&n.to_string());
        for m in 0..=degree {
            let g = monomial_gram_on(&measure, n, m, n + m + 2)?;
            let _ = write!(out, ",{}", fmt_f64(g.re));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Forward: orthogonal coefficients to monomial coefficients. Inverse: back.
pub fn cmd_transform(input: &str, invert: bool, family: Option<PolyFamily>) -> Result<String> {
    let doc = CoeffVectorJson::from_json(input)?;
    let family = family.unwrap_or(doc.family);
    let out = if invert {
        CoeffVectorJson::from_ortho(&sb_inverse(&doc.to_series()?, family))
    } else {
        let f = doc.to_ortho()?;
        CoeffVectorJson::from_series(&sb_transform(&f), f.family)
    };
    Ok(format!("{}\n", out.to_json()?))
}

pub fn cmd_opmat(params: &QParams, degree: usize, op: OpArg, family: PolyFamily) -> Result<String> {
    let m = match op {
        OpArg::Z => creation(degree)?,
        OpArg::D => annihilation(params, degree)?,
        OpArg::N => number(params, degree),
        OpArg::Alpha => shifted_number(params, degree),
        OpArg::Q => multiplication_by_x(family, params, degree)?,
    };
    Ok(m.to_csv())
}
