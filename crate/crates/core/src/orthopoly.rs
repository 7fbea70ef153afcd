//! Monic q-Charlier and q-Hermite polynomial systems.
//!
//! Both families obey `x P_n = P_{n+1} + alpha_n P_n + omega_n P_{n-1}` with
//! `omega_n = beta [n]_q`; they differ only in `alpha_n`
//! (`[n]_q + beta` for Charlier, `0` for Hermite). Functions in the
//! associated `L^2` space are modelled purely by their coefficients over the
//! polynomial basis, whose squared norms are `beta^n [n]_q!`.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{bracket, norm_weights, QParams};

/// Default cap on polynomial degree.
pub const MAX_DEGREE: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyFamily {
    Charlier,
    Hermite,
}

impl PolyFamily {
    /// Diagonal recurrence coefficient `alpha_n`.
    pub fn alpha(self, n: usize, params: &QParams) -> f64 {
        match self {
            PolyFamily::Charlier => bracket(n, params.q()) + params.beta(),
            PolyFamily::Hermite => 0.0,
        }
    }

    /// Off-diagonal recurrence coefficient `omega_n = beta [n]_q` (zero at `n = 0`).
    pub fn omega(self, n: usize, params: &QParams) -> f64 {
        params.beta() * bracket(n, params.q())
    }
}

impl fmt::Display for PolyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolyFamily::Charlier => "charlier",
            PolyFamily::Hermite => "hermite",
        })
    }
}

impl FromStr for PolyFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "charlier" => Ok(PolyFamily::Charlier),
            "hermite" => Ok(PolyFamily::Hermite),
            other => Err(Error::Domain(format!(
                "unknown polynomial family `{other}`"
            ))),
        }
    }
}

/// `(alpha_n, omega_n)` for `n = 0..=n_max`.
pub fn jacobi_params(family: PolyFamily, params: &QParams, n_max: usize) -> Vec<(f64, f64)> {
    (0..=n_max)
        .map(|n| (family.alpha(n, params), family.omega(n, params)))
        .collect()
}

/// A polynomial stored by its coefficients over `x^0, x^1, ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialPoly {
    pub coeffs: Vec<Complex64>,
}

impl MonomialPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self {
            coeffs: coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
        }
    }

    /// Index of the highest stored power (zero for an empty list).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }
}

/// Monomial coefficients of `P_0, ..., P_n`, produced by running the
/// recurrence in the coefficient domain.
fn monomial_table(family: PolyFamily, params: &QParams, n: usize) -> Vec<Vec<f64>> {
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    table.push(vec![1.0]);
    for k in 0..n {
        let alpha = family.alpha(k, params);
        let omega = family.omega(k, params);
        let cur = &table[k];
        let mut next = vec![0.0; k + 2];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= alpha * c;
        }
        if k > 0 {
            for (i, &c) in table[k - 1].iter().enumerate() {
                next[i] -= omega * c;
            }
        }
        // Monic by construction; pin it against rounding in the shifted sums.
        next[k + 1] = 1.0;
        table.push(next);
    }
    table
}

/// Monomial expansion of the degree-`n` polynomial of `family`.
pub fn poly_monomial(family: PolyFamily, params: &QParams, n: usize) -> MonomialPoly {
    let table = monomial_table(family, params, n);
    MonomialPoly::from_real(&table[n])
}

/// Value of `P_n(x)` by forward recurrence.
pub fn poly_eval<T>(family: PolyFamily, params: &QParams, n: usize, x: T) -> T
where
    T: Copy + From<f64> + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let mut prev = T::from(0.0);
    let mut cur = T::from(1.0);
    for k in 0..n {
        let next =
            (x - T::from(family.alpha(k, params))) * cur - T::from(family.omega(k, params)) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Values `P_0(x), ..., P_n(x)` by forward recurrence.
pub fn poly_eval_all<T>(family: PolyFamily, params: &QParams, n: usize, x: T) -> Vec<T>
where
    T: Copy + From<f64> + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let mut out = Vec::with_capacity(n + 1);
    let mut prev = T::from(0.0);
    let mut cur = T::from(1.0);
    out.push(cur);
    for k in 0..n {
        let next =
            (x - T::from(family.alpha(k, params))) * cur - T::from(family.omega(k, params)) * prev;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

/// A function `f = sum_n a_n P_n` in the coefficient model of `L^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoCoeffs {
    pub family: PolyFamily,
    pub params: QParams,
    pub coeffs: Vec<Complex64>,
}

impl OrthoCoeffs {
    pub fn new(family: PolyFamily, params: QParams, coeffs: Vec<Complex64>) -> Self {
        Self {
            family,
            params,
            coeffs,
        }
    }

    /// The basis element `P_n` itself.
    pub fn basis(family: PolyFamily, params: QParams, n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        Self {
            family,
            params,
            coeffs,
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `sum_n beta^n [n]_q! |a_n|^2`.
    pub fn norm_sq(&self) -> f64 {
        let w = norm_weights(&self.params, self.degree());
        w.iter()
            .zip(&self.coeffs)
            .map(|(w, a)| w * a.norm_sqr())
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Evaluates `f(x)` by summing recurrence values against the coefficients.
    pub fn eval<T>(&self, x: T) -> Complex64
    where
        T: Copy + From<f64> + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Into<Complex64>,
    {
        poly_eval_all(self.family, &self.params, self.degree(), x)
            .into_iter()
            .zip(&self.coeffs)
            .map(|(p, &a)| a * p.into())
            .sum()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.family != other.family || self.params != other.params {
            return Err(Error::ParamMismatch(format!(
                "{} (q={}, beta={}) vs {} (q={}, beta={})",
                self.family,
                self.params.q(),
                self.params.beta(),
                other.family,
                other.params.q(),
                other.params.beta()
            )));
        }
        Ok(())
    }
}

/// `<f, g> = sum_n beta^n [n]_q! conj(a_n) b_n`, conjugate-linear in `f`.
/// The shorter vector is treated as zero-padded.
pub fn l2_inner(f: &OrthoCoeffs, g: &OrthoCoeffs) -> Result<Complex64> {
    f.check_compatible(g)?;
    let n = f.coeffs.len().min(g.coeffs.len());
    if n == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let w = norm_weights(&f.params, n - 1);
    Ok(w.iter()
        .zip(&f.coeffs)
        .zip(&g.coeffs)
        .map(|((w, a), b)| a.conj() * b * *w)
        .sum())
}

/// Multiplication by `x` in the coefficient model:
/// `(x f)_k = a_{k-1} + alpha_k a_k + omega_{k+1} a_{k+1}`. Raises the degree by one.
pub fn multiply_by_x(f: &OrthoCoeffs) -> OrthoCoeffs {
    let len = f.coeffs.len();
    let mut out = vec![Complex64::new(0.0, 0.0); len + 1];
    for (n, &a) in f.coeffs.iter().enumerate() {
        out[n + 1] += a;
        out[n] += a * f.family.alpha(n, &f.params);
        if n > 0 {
            out[n - 1] += a * f.family.omega(n, &f.params);
        }
    }
    OrthoCoeffs {
        coeffs: out,
        ..f.clone()
    }
}

/// Expands `sum_n a_n P_n` in the monomial basis.
pub fn basis_to_monomial(f: &OrthoCoeffs) -> MonomialPoly {
    let table = monomial_table(f.family, &f.params, f.degree());
    let mut out = vec![Complex64::new(0.0, 0.0); f.coeffs.len()];
    for (a, row) in f.coeffs.iter().zip(&table) {
        for (o, &c) in out.iter_mut().zip(row) {
            *o += a * c;
        }
    }
    MonomialPoly::new(out)
}

/// Basis coefficients of `x^0, ..., x^n`, built by repeated multiplication
/// by `x` on coefficients. Every entry is a sum of products of `1`,
/// `alpha_k` and `omega_k`, so for the Charlier family no cancellation occurs.
fn power_table(family: PolyFamily, params: &QParams, n: usize) -> Vec<Vec<Complex64>> {
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = OrthoCoeffs::basis(family, *params, 0);
    out.push(cur.coeffs.clone());
    for _ in 0..n {
        cur = multiply_by_x(&cur);
        out.push(cur.coeffs.clone());
    }
    out
}

/// Inverse of [`basis_to_monomial`]: `sum_k c_k x^k` with each power
/// expanded over the polynomial basis.
pub fn monomial_to_basis(p: &MonomialPoly, family: PolyFamily, params: &QParams) -> OrthoCoeffs {
    let powers = power_table(family, params, p.degree());
    let mut coeffs = vec![Complex64::new(0.0, 0.0); p.coeffs.len()];
    for (c, row) in p.coeffs.iter().zip(&powers) {
        for (a, e) in coeffs.iter_mut().zip(row) {
            *a += c * e;
        }
    }
    OrthoCoeffs::new(family, *params, coeffs)
}

/// Skeel condition number `|| |T^-1| |T| ||_inf` of the degree-`n` change of
/// basis `T` (basis coefficients to monomial coefficients).
///
/// Merely rounding an exact monomial vector to `f64` perturbs its basis
/// coefficients by up to `eps * cond * max|a_k|`, so this bounds the accuracy
/// any basis/monomial round trip can reach. It grows quickly with `n` and `beta`.
pub fn change_of_basis_condition(family: PolyFamily, params: &QParams, n: usize) -> f64 {
    let t = monomial_table(family, params, n);
    let inv = power_table(family, params, n);
    // |T|: rows are powers, columns basis indices; t[k][i] is the x^i coefficient of P_k.
    let dim = n + 1;
    let mut abs_t = vec![vec![0.0; dim]; dim];
    for (k, row) in t.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            abs_t[i][k] = c.abs();
        }
    }
    // |T^-1|: inv[i][k] is the P_k coefficient of x^i.
    let mut worst = 0.0f64;
    for k in 0..dim {
        let mut row_sum = 0.0;
        for j in 0..dim {
            let mut s = 0.0;
            for (i, pow) in inv.iter().enumerate() {
                if let Some(e) = pow.get(k) {
                    s += e.norm() * abs_t[i][j];
                }
            }
            row_sum += s;
        }
        worst = worst.max(row_sum);
    }
    worst
}
