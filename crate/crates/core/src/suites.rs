//! Verification suites: named groups of identity checks run at one
//! `(q, beta, N)` cell, each producing [`IdentityReport`]s.

use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::measure::{hardy_inner_quadrature, monomial_gram_on, nu_q_atoms};
use crate::operators::{
    random_coeffs, verify_adjoint, verify_charlier_jacobi, verify_commutation, verify_d_pointwise,
    verify_data_path, verify_factorization, verify_family_difference, verify_hermite_jacobi,
    IdentityReport,
};
use crate::orthopoly::{
    basis_to_monomial, change_of_basis_condition, monomial_to_basis, poly_eval, poly_monomial,
    MonomialPoly, OrthoCoeffs, PolyFamily,
};
use crate::qcore::{
    brackets, norm_weights, q_factorial, q_gamma_factorial, q_pochhammer, PochhammerOrder, QParams,
    Tolerance,
};
use crate::sbt::{coherent_norm_sq, sb_eval_at, sb_eval_via_coherent, sb_transform};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Ortho,
    Unitary,
    Operators,
    Hermite,
    Qcore,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "ortho" => Suite::Ortho,
            "unitary" => Suite::Unitary,
            "operators" => Suite::Operators,
            "hermite" => Suite::Hermite,
            "qcore" => Suite::Qcore,
            other => return Err(Error::Domain(format!("unknown suite `{other}`"))),
        })
    }
}

/// Default parameter grid: `q` values.
pub const GRID_Q: [f64; 6] = [0.0, 0.3, 0.5, 0.7, 0.9, 0.95];
/// Default parameter grid: `beta` values.
pub const GRID_BETA: [f64; 3] = [0.5, 1.0, 2.0];

const SEED: u64 = 0x5eed_0001;

/// Runs `suite` at one parameter cell. Requires `degree >= 2`.
pub fn run_suite(
    suite: Suite,
    params: &QParams,
    degree: usize,
    tol: &Tolerance,
) -> Result<Vec<IdentityReport>> {
    if degree < 2 {
        return Err(Error::Precondition(format!(
            "verification needs degree >= 2, got {degree}"
        )));
    }
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Qcore {
        out.extend(qcore_suite(params, degree)?);
    }
    if all || suite == Suite::Ortho {
        out.extend(ortho_suite(params, degree)?);
    }
    if all || suite == Suite::Unitary {
        out.extend(unitary_suite(params, degree, tol)?);
    }
    if all || suite == Suite::Operators {
        out.extend(operator_suite(params, degree)?);
    }
    if all || suite == Suite::Hermite {
        out.push(verify_hermite_jacobi(params, degree, 1e-12)?);
        out.push(verify_data_path(
            PolyFamily::Hermite,
            params,
            degree,
            1e-11,
            20,
            SEED + 1,
        )?);
    }
    Ok(out)
}

fn qcore_suite(params: &QParams, degree: usize) -> Result<Vec<IdentityReport>> {
    let q = params.q();
    let top = degree.max(20);
    let fine = Tolerance::fine();

    let mut gamma = 0.0f64;
    for n in 0..=top {
        let f = q_factorial(n, q)?;
        gamma = gamma.max((q_gamma_factorial(n, q, &fine)? - f).abs() / f);
    }

    let b = brackets(top + 1, q);
    let shift = (0..=top)
        .map(|n| (b[n + 1] - q * b[n] - 1.0).abs() / b[n + 1])
        .fold(0.0, f64::max);

    let mut recursion = 0.0f64;
    for n in 1..=top {
        let f = q_factorial(n, q)?;
        recursion = recursion.max((f - b[n] * q_factorial(n - 1, q)?).abs() / f);
    }

    let mut split = 0.0f64;
    for &a in &[0.5, -1.25, 2.0] {
        for m in 0..6 {
            for n in 0..6 {
                let whole = q_pochhammer(a, q, PochhammerOrder::Finite(m + n), &fine)?;
                let parts = q_pochhammer(a, q, PochhammerOrder::Finite(m), &fine)?
                    * q_pochhammer(a * q.powi(m as i32), q, PochhammerOrder::Finite(n), &fine)?;
                split = split.max((whole - parts).abs() / (1.0 + whole.abs()));
            }
        }
    }

    Ok(vec![
        IdentityReport::new("q_gamma_factorial", params, degree, [0, top], gamma, 1e-10),
        IdentityReport::new(
            "bracket_shift",
            params,
            degree,
            [0, top],
            shift,
            4.0 * f64::EPSILON,
        ),
        IdentityReport::new(
            "factorial_recursion",
            params,
            degree,
            [1, top],
            recursion,
            1e-14,
        ),
        IdentityReport::new("pochhammer_split", params, degree, [0, 10], split, 1e-14),
    ])
}

fn abs_eval(p: &MonomialPoly, x: f64) -> f64 {
    p.coeffs
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * x.abs() + c.norm())
}

fn ortho_suite(params: &QParams, degree: usize) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    let top = degree.min(20);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    let mut monic = 0.0f64;
    for fam in [PolyFamily::Charlier, PolyFamily::Hermite] {
        for n in 0..=top {
            monic = monic.max((poly_monomial(fam, params, n).coeffs[n] - 1.0).norm());
        }
    }
    out.push(IdentityReport::new(
        "monic",
        params,
        degree,
        [0, top],
        monic,
        0.0,
    ));

    // Recurrence checked on monomial expansions, an independent route from
    // forward evaluation. Scaled by sum |c_k| |x|^k, which bounds the
    // rounding error of evaluating an expansion with cancellation.
    let rec_top = degree.min(15);
    let mut recurrence = 0.0f64;
    for fam in [PolyFamily::Charlier, PolyFamily::Hermite] {
        let polys: Vec<_> = (0..=rec_top + 1)
            .map(|n| poly_monomial(fam, params, n))
            .collect();
        for _ in 0..16 {
            let x = Complex64::new(rng.gen_range(-3.0..3.0), 0.0);
            for n in 0..=rec_top {
                let (a, w) = (fam.alpha(n, params), fam.omega(n, params));
                let pn = polys[n].eval(x);
                let pn1 = polys[n + 1].eval(x);
                let pm = if n > 0 {
                    polys[n - 1].eval(x)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                let pm_abs = if n > 0 {
                    abs_eval(&polys[n - 1], x.re)
                } else {
                    0.0
                };
                let scale = (x - a).norm() * abs_eval(&polys[n], x.re)
                    + abs_eval(&polys[n + 1], x.re)
                    + w * pm_abs;
                recurrence = recurrence.max(((x - a) * pn - pn1 - pm * w).norm() / scale);
            }
        }
    }
    out.push(IdentityReport::new(
        "recurrence_residual",
        params,
        degree,
        [0, rec_top],
        recurrence,
        1e-9,
    ));

    // Round-trip error measured in units of eps * cond: the change of basis
    // is ill-conditioned, so this is the attainable accuracy.
    let mut roundtrip = 0.0f64;
    for fam in [PolyFamily::Charlier, PolyFamily::Hermite] {
        let cond = change_of_basis_condition(fam, params, top);
        for _ in 0..8 {
            let f = OrthoCoeffs::new(fam, *params, random_coeffs(&mut rng, top + 1));
            let back = monomial_to_basis(&basis_to_monomial(&f), fam, params);
            let scale = f.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
            let err = f
                .coeffs
                .iter()
                .zip(&back.coeffs)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            roundtrip = roundtrip.max(err / (scale * f64::EPSILON * cond));
        }
    }
    out.push(
        IdentityReport::new(
            "basis_roundtrip",
            params,
            degree,
            [0, top],
            roundtrip,
            4.0 * top as f64,
        )
        .with_note("residual in units of eps * condition number of the change of basis"),
    );

    let par_top = degree.min(15);
    let mut parity = 0.0f64;
    for _ in 0..16 {
        let x: f64 = rng.gen_range(-3.0..3.0);
        for n in 0..=par_top {
            let a = poly_eval(PolyFamily::Hermite, params, n, x);
            let b = poly_eval(PolyFamily::Hermite, params, n, -x);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            parity = parity.max((b - sign * a).abs() / (1.0 + a.abs()));
        }
    }
    out.push(IdentityReport::new(
        "hermite_parity",
        params,
        degree,
        [0, par_top],
        parity,
        1e-12,
    ));
    Ok(out)
}

fn unitary_suite(params: &QParams, degree: usize, tol: &Tolerance) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    let measure = nu_q_atoms(params, tol.tail_tol)?;
    let mass = measure.total_mass();
    out.push(
        IdentityReport::new(
            "nu_q_mass",
            params,
            degree,
            [0, 0],
            (1.0 - mass).abs(),
            tol.tail_tol,
        )
        .with_note(format!("{} atoms", measure.len())),
    );

    let w = norm_weights(params, degree);
    let mut gram = 0.0f64;
    for n in 0..=degree {
        for m in 0..=degree {
            let g = monomial_gram_on(&measure, n, m, n + m + 2)?;
            let expected = if n == m { w[n] } else { 0.0 };
            // |g_nm| <= sqrt(w_n w_m) by Cauchy-Schwarz; the natural scale off the diagonal.
            gram = gram.max((g - expected).norm() / (w[n] * w[m]).sqrt());
        }
    }
    out.push(IdentityReport::new(
        "gram_orthogonality",
        params,
        degree,
        [0, degree],
        gram,
        tol.rel_tol,
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut parseval = 0.0f64;
    let mut quad = 0.0f64;
    for _ in 0..8 {
        let f = OrthoCoeffs::new(
            PolyFamily::Charlier,
            *params,
            random_coeffs(&mut rng, degree + 1),
        );
        let s = sb_transform(&f);
        let l2 = f.norm_sq();
        parseval = parseval.max((s.norm_sq() - l2).abs() / l2);
        let q = hardy_inner_quadrature(&s, &s, &measure)?;
        quad = quad.max((q.re - l2).abs() / l2);
    }
    out.push(IdentityReport::new(
        "parseval",
        params,
        degree,
        [0, degree],
        parseval,
        1e-15,
    ));
    out.push(IdentityReport::new(
        "quadrature_isometry",
        params,
        degree,
        [0, degree],
        quad,
        tol.rel_tol,
    ));

    let r0_sq = params.domain_radius_sq();
    let mut norm = 0.0f64;
    for frac in [0.0, 0.1, 0.3, 0.5, 0.7, 0.9] {
        let z = Complex64::from_polar((frac * r0_sq).sqrt(), 0.3);
        let closed = coherent_norm_sq(params, z)?;
        let direct = direct_coherent_norm_sq(params, z);
        norm = norm.max((closed - direct).abs() / direct);
    }
    out.push(IdentityReport::new(
        "coherent_norm",
        params,
        degree,
        [0, 0],
        norm,
        1e-12,
    ));

    let mut dual = 0.0f64;
    let mut schwarz = 0.0f64;
    for _ in 0..8 {
        let f = OrthoCoeffs::new(
            PolyFamily::Charlier,
            *params,
            random_coeffs(&mut rng, degree.min(8) + 1),
        );
        let z = Complex64::from_polar(
            0.4 * r0_sq.sqrt(),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        let a = sb_eval_at(&f, z)?;
        let b = sb_eval_via_coherent(&f, z)?;
        let scale = f
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.norm() * z.norm().powi(n as i32))
            .sum::<f64>();
        dual = dual.max((a - b).norm() / scale);
        let bound = f.norm() * coherent_norm_sq(params, z)?.sqrt();
        schwarz = schwarz.max((scale - bound).max(0.0) / bound);
    }
    out.push(IdentityReport::new(
        "sb_dual_route",
        params,
        degree,
        [0, degree.min(8)],
        dual,
        1e-12,
    ));
    out.push(
        IdentityReport::new(
            "schwarz_bound",
            params,
            degree,
            [0, degree.min(8)],
            schwarz,
            0.0,
        )
        .with_note("asserts sum |a_n z^n| <= ||f|| exp_q(|z|^2/beta)^(1/2)"),
    );
    Ok(out)
}

/// Term-by-term `sum_n |z|^(2n) / (beta^n [n]_q!)` with at least 200 terms,
/// continued until the terms are below 1e-18 of the sum and decreasing.
pub(crate) fn direct_coherent_norm_sq(params: &QParams, z: Complex64) -> f64 {
    let x = z.norm_sqr() / params.beta();
    let mut sum = 0.0;
    let mut term = 1.0;
    let mut b = 0.0;
    let mut n = 0usize;
    loop {
        sum += term;
        n += 1;
        b = 1.0 + params.q() * b;
        let next = term * x / b;
        if n >= 200 && next <= 1e-18 * sum && next <= term {
            return sum;
        }
        term = next;
    }
}

fn operator_suite(params: &QParams, degree: usize) -> Result<Vec<IdentityReport>> {
    let mut out = vec![
        verify_charlier_jacobi(params, degree, 1e-12)?,
        verify_data_path(PolyFamily::Charlier, params, degree, 1e-11, 20, SEED + 3)?,
    ];
    out.extend(verify_factorization(params, degree, 1e-12)?);
    out.push(verify_commutation(params, degree, 1e-13)?);
    out.push(verify_adjoint(params, degree, 1e-12, 20, SEED + 4)?);
    out.push(verify_family_difference(params, degree, 1e-15)?);
    out.push(verify_d_pointwise(params, degree, 1e-12, 20, SEED + 5)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_on_a_few_cells() {
        for &(q, beta) in &[(0.0, 1.0), (0.5, 2.0), (0.95, 0.5)] {
            let p = QParams::new(q, beta).unwrap();
            for r in run_suite(Suite::All, &p, 12, &Tolerance::default()).unwrap() {
                assert!(r.passed, "{}", r.to_json_line());
            }
        }
    }

    #[test]
    fn suite_names_parse() {
        for s in ["all", "ortho", "unitary", "operators", "hermite", "qcore"] {
            assert!(s.parse::<Suite>().is_ok());
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn low_degree_rejected() {
        let p = QParams::new(0.5, 1.0).unwrap();
        assert!(run_suite(Suite::All, &p, 1, &Tolerance::default()).is_err());
    }
}
