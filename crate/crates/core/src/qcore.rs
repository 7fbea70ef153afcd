//! q-arithmetic primitives: q-brackets, q-factorials, the q-exponential,
//! q-Pochhammer symbols and the series form of the q-Gamma function.
//!
//! Every infinite series and product here is geometrically dominated for
//! `0 <= q < 1`, so truncation uses a certified bound on the discarded tail
//! and a hard cap of [`MAX_TERMS`] iterations.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard cap on the number of terms/factors of any series or product.
pub const MAX_TERMS: usize = 1_000_000;

/// Relative margin kept inside the q-exponential's disk of convergence.
pub const EXP_MARGIN: f64 = 1e-6;

/// Deformation parameter `q` and scale parameter `beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParams {
    q: f64,
    beta: f64,
}

impl QParams {
    /// Requires `0 <= q < 1` and `beta > 0`, both finite.
    pub fn new(q: f64, beta: f64) -> Result<Self> {
        check_q(q)?;
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::Domain(format!(
                "beta must be positive and finite, got {beta}"
            )));
        }
        Ok(Self { q, beta })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Squared radius `beta / (1 - q)` of the disk on which the Hardy space lives.
    pub fn domain_radius_sq(&self) -> f64 {
        self.beta / (1.0 - self.q)
    }

    /// Whether `z` lies in the open disk `|z|^2 < beta / (1 - q)`.
    pub fn in_domain(&self, z: Complex64) -> bool {
        z.norm_sqr() < self.domain_radius_sq()
    }

    pub(crate) fn check_domain(&self, z: Complex64) -> Result<()> {
        if self.in_domain(z) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "|z|^2 = {} is outside the disk |z|^2 < {}",
                z.norm_sqr(),
                self.domain_radius_sq()
            )))
        }
    }
}

/// Relative tolerance for identity checks and the tail target for
/// truncated series and products.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel_tol: f64,
    pub tail_tol: f64,
}

impl Tolerance {
    pub fn new(rel_tol: f64, tail_tol: f64) -> Result<Self> {
        let ok = |t: f64| t > 0.0 && t < 1.0;
        if !ok(rel_tol) || !ok(tail_tol) {
            return Err(Error::Domain(format!(
                "tolerances must lie in (0, 1), got rel_tol={rel_tol}, tail_tol={tail_tol}"
            )));
        }
        Ok(Self { rel_tol, tail_tol })
    }

    /// Tail target below double-precision resolution, for values that are
    /// compared against oracles at the 1e-12 level.
    pub fn fine() -> Self {
        Self {
            rel_tol: 1e-12,
            tail_tol: 1e-17,
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            tail_tol: 1e-12,
        }
    }
}

pub(crate) fn check_q(q: f64) -> Result<()> {
    if (0.0..1.0).contains(&q) {
        Ok(())
    } else {
        Err(Error::Domain(format!("q must lie in [0, 1), got {q}")))
    }
}

/// `[n]_q = 1 + q + ... + q^(n-1)`, with `[0]_q = 0`.
///
/// Evaluated by the recursion `[n+1]_q = 1 + q [n]_q`, which keeps
/// `[n+1]_q - q [n]_q = 1` exact up to a single rounding.
pub fn q_bracket(n: usize, q: f64) -> Result<f64> {
    check_q(q)?;
    Ok(bracket(n, q))
}

pub(crate) fn bracket(n: usize, q: f64) -> f64 {
    (0..n).fold(0.0, |b, _| 1.0 + q * b)
}

/// `[0]_q, [1]_q, ..., [n]_q`.
pub fn q_brackets(n: usize, q: f64) -> Result<Vec<f64>> {
    check_q(q)?;
    Ok(brackets(n, q))
}

pub(crate) fn brackets(n: usize, q: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut b = 0.0;
    out.push(b);
    for _ in 0..n {
        b = 1.0 + q * b;
        out.push(b);
    }
    out
}

/// `[n]_q! = [1]_q ... [n]_q`, with the empty product `[0]_q! = 1`.
pub fn q_factorial(n: usize, q: f64) -> Result<f64> {
    check_q(q)?;
    Ok(brackets(n, q)[1..].iter().product())
}

/// The norm weights `beta^n [n]_q!` for `n = 0..=n_max`.
pub fn norm_weights(params: &QParams, n_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut w = 1.0;
    out.push(w);
    for b in brackets(n_max, params.q).into_iter().skip(1) {
        w *= params.beta * b;
        out.push(w);
    }
    out
}

/// Real q-exponential `sum_n x^n / [n]_q!`.
pub fn q_exp(x: f64, q: f64, tol: &Tolerance) -> Result<f64> {
    q_exp_complex(Complex64::new(x, 0.0), q, tol).map(|v| v.re)
}

/// Complex q-exponential `sum_n x^n / [n]_q!`, for `|x| < (1 - 1e-6) / (1 - q)`.
///
/// Summation stops once the geometric bound on the remaining tail falls below
/// `tail_tol * |partial sum|`.
pub fn q_exp_complex(x: Complex64, q: f64, tol: &Tolerance) -> Result<Complex64> {
    check_q(q)?;
    let abs = x.norm();
    let radius = (1.0 - EXP_MARGIN) / (1.0 - q);
    if abs.is_nan() || abs >= radius {
        return Err(Error::Divergence { abs, radius });
    }
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    // `b` holds [n+1]_q while term holds x^n / [n]_q!.
    let mut b = 1.0;
    for _ in 0..MAX_TERMS {
        let next = term * x / b;
        b = 1.0 + q * b;
        // Ratios |x| / [k]_q decrease in k, so all later ratios are below this one.
        let ratio = abs / b;
        if ratio < 1.0 {
            let tail = next.norm() / (1.0 - ratio);
            if tail <= tol.tail_tol * sum.norm() {
                return Ok(sum + next);
            }
        }
        sum += next;
        term = next;
    }
    Err(Error::NonConvergence {
        iterations: MAX_TERMS,
    })
}

/// Order of a q-Pochhammer symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochhammerOrder {
    Finite(usize),
    Infinite,
}

/// An infinite product truncated after `factors` factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedProduct {
    pub value: f64,
    pub factors: usize,
    /// Bound on `|log(true / value)|` contributed by the discarded factors.
    pub log_tail_bound: f64,
}

/// `(a; q)_n = prod_{j<n} (1 - a q^j)`, with `(a; q)_0 = 1`; the infinite
/// order is truncated per [`q_pochhammer_infinite`].
pub fn q_pochhammer(a: f64, q: f64, order: PochhammerOrder, tol: &Tolerance) -> Result<f64> {
    check_q(q)?;
    match order {
        PochhammerOrder::Finite(n) => {
            let mut p = 1.0;
            let mut qj = 1.0;
            for _ in 0..n {
                p *= 1.0 - a * qj;
                qj *= q;
            }
            Ok(p)
        }
        PochhammerOrder::Infinite => q_pochhammer_infinite(a, q, tol).map(|t| t.value),
    }
}

/// `(a; q)_inf`, truncated once the discarded factors provably change the
/// logarithm of the product by less than `tail_tol`.
///
/// With `t = |a| q^J < 1`, the factors `j >= J` satisfy
/// `|log prod (1 - a q^j)| <= t / ((1 - q)(1 - t))`.
pub fn q_pochhammer_infinite(a: f64, q: f64, tol: &Tolerance) -> Result<TruncatedProduct> {
    check_q(q)?;
    let mut value = 1.0;
    let mut qj = 1.0;
    for j in 0..MAX_TERMS {
        value *= 1.0 - a * qj;
        qj *= q;
        let t = a.abs() * qj;
        if value == 0.0 || t == 0.0 {
            return Ok(TruncatedProduct {
                value,
                factors: j + 1,
                log_tail_bound: 0.0,
            });
        }
        if t < 1.0 {
            let bound = t / ((1.0 - q) * (1.0 - t));
            if bound < tol.tail_tol {
                return Ok(TruncatedProduct {
                    value,
                    factors: j + 1,
                    log_tail_bound: bound,
                });
            }
        }
    }
    Err(Error::NonConvergence {
        iterations: MAX_TERMS,
    })
}

/// `Gamma_q(n + 1)` through its series form
/// `(q;q)_inf / (1-q)^n * sum_j q^((n+1) j) / (q;q)_j`.
///
/// This route shares no code with [`q_factorial`]; the two agreeing is the
/// identity `Gamma_q(n + 1) = [n]_q!`.
pub fn q_gamma_factorial(n: usize, q: f64, tol: &Tolerance) -> Result<f64> {
    check_q(q)?;
    if q == 0.0 {
        return Ok(1.0);
    }
    let prefactor = q_pochhammer_infinite(q, q, tol)?.value / (1.0 - q).powi(n as i32);
    let step = q.powi(n as i32 + 1);
    // term_j = q^((n+1) j) / (q;q)_j ; term_{j+1} = term_j * step / (1 - q^(j+1))
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut qj1 = q;
    for _ in 0..MAX_TERMS {
        let next = term * step / (1.0 - qj1);
        qj1 *= q;
        let ratio = step / (1.0 - qj1);
        if ratio < 1.0 && next / (1.0 - ratio) <= tol.tail_tol * sum {
            return Ok(prefactor * (sum + next));
        }
        sum += next;
        term = next;
    }
    Err(Error::NonConvergence {
        iterations: MAX_TERMS,
    })
}

/// Neumaier-compensated sum with a fixed left-to-right order.
pub(crate) fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
