//! The radial atomic measure `nu_q` on the disk `|z|^2 < beta / (1 - q)`,
//! its trigonometric quadrature, and the Hardy-space inner product.
//!
//! `nu_q` is a mixture of normalized uniform measures on the circles of
//! radius `r_j = q^(j/2) sqrt(beta / (1 - q))` with weights
//! `w_j = (q;q)_inf q^j / (q;q)_j = q^j (q^(j+1); q)_inf`.
//! The weights telescope: `sum_{j<=J} w_j = (q^(J+1); q)_inf`, so the mass
//! dropped by truncating after atom `J` is exactly `1 - (q^(J+1); q)_inf`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::format::fmt_f64;
use crate::qcore::{compensated_sum, norm_weights, QParams};

/// One circle of the measure: total mass `weight`, spread uniformly over `|z| = radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub radius: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialAtomMeasure {
    pub params: QParams,
    pub atoms: Vec<Atom>,
    /// Mass of the discarded atoms `j > J`.
    pub tail_bound: f64,
}

impl RadialAtomMeasure {
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Compensated sum of the retained weights.
    pub fn total_mass(&self) -> f64 {
        compensated_sum(self.atoms.iter().map(|a| a.weight))
    }

    /// `j,radius,weight` table, one row per atom.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,radius,weight\n");
        for (j, a) in self.atoms.iter().enumerate() {
            let _ = writeln!(out, "{j},{},{}", fmt_f64(a.radius), fmt_f64(a.weight));
        }
        out
    }
}

/// Builds `nu_q`, keeping the fewest atoms whose discarded mass is below `tail_tol`.
pub fn nu_q_atoms(params: &QParams, tail_tol: f64) -> Result<RadialAtomMeasure> {
    if !(tail_tol > 0.0 && tail_tol < 1.0) {
        return Err(Error::Domain(format!(
            "tail_tol must lie in (0, 1), got {tail_tol}"
        )));
    }
    let q = params.q();
    let r0 = params.domain_radius_sq().sqrt();
    if q == 0.0 {
        return Ok(RadialAtomMeasure {
            params: *params,
            atoms: vec![Atom {
                radius: r0,
                weight: 1.0,
            }],
            tail_bound: 0.0,
        });
    }

    // log(q^(i); q)_inf beyond this index is negligible against tail_tol.
    let floor = (tail_tol * 1e-6).min(1e-25) * (1.0 - q);
    let mut logs = vec![0.0];
    let mut i = 1;
    loop {
        let qi = q.powi(i);
        if qi < floor {
            break;
        }
        logs.push((-qi).ln_1p());
        i += 1;
    }
    // suffix[j] = log (q^(j+1); q)_inf, accumulated from the smallest terms up.
    let m = logs.len();
    let mut suffix = vec![0.0; m];
    let mut acc = 0.0;
    for j in (0..m).rev() {
        suffix[j] = acc;
        if j > 0 {
            acc += logs[j];
        }
    }

    let mut atoms = Vec::new();
    let sqrt_q = q.sqrt();
    for (j, &log_tail) in suffix.iter().enumerate() {
        let weight = q.powi(j as i32) * log_tail.exp();
        atoms.push(Atom {
            radius: sqrt_q.powi(j as i32) * r0,
            weight,
        });
        let dropped = -log_tail.exp_m1();
        if dropped < tail_tol {
            return Ok(RadialAtomMeasure {
                params: *params,
                atoms,
                tail_bound: dropped,
            });
        }
    }
    // Unreachable in practice: the last suffix entry is below `floor`.
    Err(Error::NonConvergence { iterations: m })
}

/// `sum_j w_j (1/K) sum_k f(r_j e^(2 pi i k / K))`.
///
/// Exact on each circle for trigonometric polynomials of angular degree below `K`.
pub fn quad_integrate<F>(values: F, measure: &RadialAtomMeasure, k: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    if k == 0 {
        return Err(Error::Precondition(
            "quadrature needs at least one angular node".into(),
        ));
    }
    let roots = unit_roots(k);
    let inv_k = 1.0 / k as f64;
    let mut re = Vec::with_capacity(measure.len());
    let mut im = Vec::with_capacity(measure.len());
    for atom in &measure.atoms {
        let circle: Complex64 = roots.iter().map(|&u| values(u * atom.radius)).sum();
        let c = circle * (atom.weight * inv_k);
        re.push(c.re);
        im.push(c.im);
    }
    Ok(Complex64::new(compensated_sum(re), compensated_sum(im)))
}

fn unit_roots(k: usize) -> Vec<Complex64> {
    (0..k)
        .map(|i| Complex64::from_polar(1.0, 2.0 * PI * i as f64 / k as f64))
        .collect()
}

/// `(1/K) sum_k e^(i d 2 pi k / K)`, with the phase reduced mod `K`.
fn angular_average(d: i64, k: usize) -> Complex64 {
    let kk = k as i64;
    let s: Complex64 = (0..kk)
        .map(|i| Complex64::from_polar(1.0, 2.0 * PI * (d * i).rem_euclid(kk) as f64 / k as f64))
        .sum();
    s / k as f64
}

/// `int conj(z)^n z^m d nu_q` on an already constructed measure.
pub fn monomial_gram_on(
    measure: &RadialAtomMeasure,
    n: usize,
    m: usize,
    k: usize,
) -> Result<Complex64> {
    if k < n + m + 1 {
        return Err(Error::Precondition(format!(
            "angular rule with {k} nodes is not exact for degree {} (need at least {})",
            n + m,
            n + m + 1
        )));
    }
    let p = (n + m) as i32;
    let radial = compensated_sum(measure.atoms.iter().map(|a| a.weight * a.radius.powi(p)));
    Ok(angular_average(m as i64 - n as i64, k) * radial)
}

/// `int conj(z)^n z^m d nu_q` by radial atoms and a `K`-point angular rule.
pub fn monomial_gram(
    params: &QParams,
    n: usize,
    m: usize,
    tail_tol: f64,
    k: usize,
) -> Result<Complex64> {
    let measure = nu_q_atoms(params, tail_tol)?;
    monomial_gram_on(&measure, n, m, k)
}

/// An element `F(z) = sum_n c_n z^n` of the Hardy space over `nu_q`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialSeries {
    pub params: QParams,
    pub coeffs: Vec<Complex64>,
}

impl MonomialSeries {
    pub fn new(params: QParams, coeffs: Vec<Complex64>) -> Self {
        Self { params, coeffs }
    }

    pub fn monomial(params: QParams, n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        Self { params, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `beta / (1 - q)`; polynomial elements are holomorphic on the whole disk.
    pub fn domain_radius_sq(&self) -> f64 {
        self.params.domain_radius_sq()
    }

    /// Horner evaluation of the (finite) series.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn norm_sq(&self) -> f64 {
        let w = norm_weights(&self.params, self.degree());
        w.iter()
            .zip(&self.coeffs)
            .map(|(w, c)| w * c.norm_sqr())
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }
}

fn check_same_params(a: &QParams, b: &QParams) -> Result<()> {
    if a != b {
        return Err(Error::ParamMismatch(format!(
            "q={}, beta={} vs q={}, beta={}",
            a.q(),
            a.beta(),
            b.q(),
            b.beta()
        )));
    }
    Ok(())
}

/// Closed form `sum_n beta^n [n]_q! conj(a_n) b_n`.
pub fn hardy_inner(f: &MonomialSeries, g: &MonomialSeries) -> Result<Complex64> {
    check_same_params(&f.params, &g.params)?;
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

/// `int conj(F) G d nu_q` by quadrature, with `deg F + deg G + 2` angular nodes.
pub fn hardy_inner_quadrature(
    f: &MonomialSeries,
    g: &MonomialSeries,
    measure: &RadialAtomMeasure,
) -> Result<Complex64> {
    check_same_params(&f.params, &g.params)?;
    check_same_params(&f.params, &measure.params)?;
    let k = f.degree() + g.degree() + 2;
    quad_integrate(|z| f.eval(z).conj() * g.eval(z), measure, k)
}
