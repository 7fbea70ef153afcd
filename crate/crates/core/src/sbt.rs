//! The q-Segal-Bargmann transform.
//!
//! The transform pairs a function against the coherent state
//! `E(x, z) = sum_n P_n(x) z^n / (beta^n [n]_q!)`; on the coefficient model
//! this reduces to sending the `n`-th basis polynomial to `z^n`. Both
//! directions are therefore exact coefficient maps, and quadrature over
//! `nu_q` is only ever used to cross-check them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::MonomialSeries;
use crate::orthopoly::{l2_inner, poly_eval_all, OrthoCoeffs, PolyFamily};
use crate::qcore::{q_exp, QParams, Tolerance};

/// Relative size of the geometric tail bound used to pick a default truncation.
const COHERENT_TAIL: f64 = 1e-14;

/// `f = sum a_n P_n  ->  F(z) = sum a_n z^n`.
pub fn sb_transform(f: &OrthoCoeffs) -> MonomialSeries {
    MonomialSeries::new(f.params, f.coeffs.clone())
}

/// `F(z) = sum c_n z^n  ->  sum c_n P_n` for the chosen family.
pub fn sb_inverse(f: &MonomialSeries, family: PolyFamily) -> OrthoCoeffs {
    OrthoCoeffs::new(family, f.params, f.coeffs.clone())
}

/// Coherent state vector `E(., z)` truncated at degree `degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentState {
    pub family: PolyFamily,
    pub params: QParams,
    pub z: Complex64,
    pub degree: usize,
}

impl CoherentState {
    /// Fails unless `|z|^2 < beta / (1 - q)`. Without an explicit degree,
    /// [`default_truncation`] is used.
    pub fn new(
        family: PolyFamily,
        params: QParams,
        z: Complex64,
        degree: Option<usize>,
    ) -> Result<Self> {
        params.check_domain(z)?;
        let degree = degree.unwrap_or_else(|| default_truncation(&params, z));
        Ok(Self {
            family,
            params,
            z,
            degree,
        })
    }

    /// Coefficients `z^n / (beta^n [n]_q!)` over the polynomial basis.
    pub fn coeffs(&self) -> OrthoCoeffs {
        OrthoCoeffs::new(
            self.family,
            self.params,
            coherent_coeffs(&self.params, self.z, self.degree),
        )
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        partial_sum(self.family, &self.params, x, self.z, self.degree)
    }
}

/// Smallest `N` with `(|z|^2 (1 - q) / beta)^(N/2) < 1e-14`.
pub fn default_truncation(params: &QParams, z: Complex64) -> usize {
    let ratio = z.norm_sqr() * (1.0 - params.q()) / params.beta();
    if ratio == 0.0 {
        return 0;
    }
    let n = 2.0 * COHERENT_TAIL.ln() / ratio.ln();
    let mut n = n.floor().max(0.0) as usize;
    while ratio.powf(n as f64 / 2.0) >= COHERENT_TAIL {
        n += 1;
    }
    n
}

fn coherent_coeffs(params: &QParams, z: Complex64, degree: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(degree + 1);
    let mut c = Complex64::new(1.0, 0.0);
    let mut b = 0.0;
    out.push(c);
    for _ in 0..degree {
        b = 1.0 + params.q() * b;
        c = c * z / (params.beta() * b);
        out.push(c);
    }
    out
}

fn partial_sum(
    family: PolyFamily,
    params: &QParams,
    x: f64,
    z: Complex64,
    degree: usize,
) -> Complex64 {
    let values = poly_eval_all(family, params, degree, x);
    values
        .into_iter()
        .zip(coherent_coeffs(params, z, degree))
        .map(|(p, c)| c * p)
        .sum()
}

/// `sum_{n <= N} P_n(x) z^n / (beta^n [n]_q!)`.
///
/// The same `[n]_q!` denominator is used for both families.
pub fn coherent_eval(
    family: PolyFamily,
    params: &QParams,
    x: f64,
    z: Complex64,
    degree: usize,
) -> Result<Complex64> {
    params.check_domain(z)?;
    Ok(partial_sum(family, params, x, z, degree))
}

/// Squared norm `exp_q(|z|^2 / beta)` of the untruncated coherent state.
pub fn coherent_norm_sq(params: &QParams, z: Complex64) -> Result<f64> {
    params.check_domain(z)?;
    q_exp(z.norm_sqr() / params.beta(), params.q(), &Tolerance::fine())
}

/// `(S f)(z) = sum a_n z^n`.
pub fn sb_eval_at(f: &OrthoCoeffs, z: Complex64) -> Result<Complex64> {
    f.params.check_domain(z)?;
    Ok(f.coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a))
}

/// `(S f)(z)` computed as `<E(., conj z), f>`, the defining pairing.
pub fn sb_eval_via_coherent(f: &OrthoCoeffs, z: Complex64) -> Result<Complex64> {
    let state = CoherentState::new(f.family, f.params, z.conj(), Some(f.degree()))?;
    l2_inner(&state.coeffs(), f)
}

/// Which basis a serialized coefficient vector refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Orthogonal,
    Monomial,
}

/// On-disk form of a coefficient vector:
/// `{"family": ..., "q": ..., "beta": ..., "coeffs": [[re, im], ...]}`.
///
/// `basis` is optional and defaults to the orthogonal basis when absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffVectorJson {
    pub family: PolyFamily,
    pub q: f64,
    pub beta: f64,
    pub coeffs: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Basis>,
}

impl CoeffVectorJson {
    pub fn from_ortho(f: &OrthoCoeffs) -> Self {
        Self {
            family: f.family,
            q: f.params.q(),
            beta: f.params.beta(),
            coeffs: pairs(&f.coeffs),
            basis: Some(Basis::Orthogonal),
        }
    }

    pub fn from_series(f: &MonomialSeries, family: PolyFamily) -> Self {
        Self {
            family,
            q: f.params.q(),
            beta: f.params.beta(),
            coeffs: pairs(&f.coeffs),
            basis: Some(Basis::Monomial),
        }
    }

    pub fn params(&self) -> Result<QParams> {
        QParams::new(self.q, self.beta)
    }

    fn complex(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect()
    }

    pub fn to_ortho(&self) -> Result<OrthoCoeffs> {
        if self.basis == Some(Basis::Monomial) {
            return Err(Error::Domain(
                "expected an orthogonal-basis coefficient vector".into(),
            ));
        }
        Ok(OrthoCoeffs::new(
            self.family,
            self.params()?,
            self.complex(),
        ))
    }

    pub fn to_series(&self) -> Result<MonomialSeries> {
        if self.basis == Some(Basis::Orthogonal) {
            return Err(Error::Domain(
                "expected a monomial-basis coefficient vector".into(),
            ));
        }
        Ok(MonomialSeries::new(self.params()?, self.complex()))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|c| [c.re, c.im]).collect()
}
