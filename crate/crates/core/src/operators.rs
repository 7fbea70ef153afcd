//! q-creation, q-annihilation and q-number operators on the truncated
//! monomial basis `z^0, ..., z^N` of the Hardy space, the transformed
//! multiplication operator, and checks of the identities relating them.
//!
//! Every operator here is at most tridiagonal. The creation operator raises
//! degree, so the image of `z^N` is lost at finite `N`; identities are only
//! asserted on input degrees `0..N` (exclusive of `N`).

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::fmt_f64;
use crate::measure::{hardy_inner, MonomialSeries};
use crate::orthopoly::{jacobi_params, multiply_by_x, OrthoCoeffs, PolyFamily};
use crate::qcore::{brackets, QParams};
use crate::sbt::sb_transform;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A linear operator on `span{z^0..z^N}` stored as a dense `(N+1) x (N+1)` matrix.
/// Column `n` holds the image of `z^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedOperator {
    pub degree: usize,
    pub entries: DMatrix<Complex64>,
    pub bandwidth: usize,
    pub label: String,
}

impl BandedOperator {
    fn zeros(degree: usize, bandwidth: usize, label: &str) -> Self {
        Self {
            degree,
            entries: DMatrix::zeros(degree + 1, degree + 1),
            bandwidth,
            label: label.to_string(),
        }
    }

    pub fn identity(degree: usize) -> Self {
        Self {
            degree,
            entries: DMatrix::identity(degree + 1, degree + 1),
            bandwidth: 0,
            label: "I".into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.degree + 1
    }

    fn set(&mut self, row: usize, col: usize, v: f64) {
        self.entries[(row, col)] = Complex64::new(v, 0.0);
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn diagonal(&self, offset: isize) -> Vec<Complex64> {
        let n = self.dim();
        (0..n)
            .filter_map(|c| {
                let r = c as isize - offset;
                (0..n as isize)
                    .contains(&r)
                    .then(|| self.entries[(r as usize, c)])
            })
            .collect()
    }

    /// Applies the operator to a coefficient vector, zero-padding or
    /// truncating the input to `N + 1` entries.
    pub fn apply(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let mut v = coeffs.to_vec();
        v.resize(self.dim(), ZERO);
        let v = nalgebra::DVector::from_vec(v);
        (&self.entries * v).iter().copied().collect()
    }

    pub fn apply_series(&self, f: &MonomialSeries) -> MonomialSeries {
        MonomialSeries::new(f.params, self.apply(&f.coeffs))
    }

    fn combine(&self, other: &Self, label: String, entries: DMatrix<Complex64>) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::ParamMismatch(format!(
                "operators of degree {} and {} cannot be combined",
                self.degree, other.degree
            )));
        }
        Ok(Self {
            degree: self.degree,
            entries,
            bandwidth: self.bandwidth.max(other.bandwidth),
            label,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(
            other,
            format!("({} + {})", self.label, other.label),
            &self.entries + &other.entries,
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(
            other,
            format!("({} - {})", self.label, other.label),
            &self.entries - &other.entries,
        )
    }

    /// Composition `self * other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let mut out = self.combine(
            other,
            format!("{} {}", self.label, other.label),
            &self.entries * &other.entries,
        )?;
        out.bandwidth = self.bandwidth + other.bandwidth;
        Ok(out)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            entries: &self.entries * Complex64::new(s, 0.0),
            label: format!("{s}*{}", self.label),
            ..self.clone()
        }
    }

    /// Max-abs entry difference restricted to columns `0..cols`.
    pub fn residual(&self, other: &Self, cols: usize) -> f64 {
        let mut worst = 0.0f64;
        for c in 0..cols.min(self.dim()) {
            for r in 0..self.dim() {
                worst = worst.max((self.entries[(r, c)] - other.entries[(r, c)]).norm());
            }
        }
        worst
    }

    /// CSV matrix of real parts with a `row,c0,...,cN` header.
    pub fn to_csv(&self) -> String {
        let n = self.dim();
        let mut out = String::from("row");
        for c in 0..n {
            out.push_str(&format!(",c{c}"));
        }
        out.push('\n');
        for r in 0..n {
            out.push_str(&r.to_string());
            for c in 0..n {
                out.push(',');
                out.push_str(&fmt_f64(self.entries[(r, c)].re));
            }
            out.push('\n');
        }
        out
    }
}

fn require_degree(degree: usize, min: usize, what: &str) -> Result<()> {
    if degree < min {
        return Err(Error::Precondition(format!(
            "{what} needs truncation degree >= {min}, got {degree}"
        )));
    }
    Ok(())
}

/// q-creation operator: `z^n -> z^(n+1)`, with the image of `z^N` dropped.
pub fn creation(degree: usize) -> Result<BandedOperator> {
    require_degree(degree, 1, "Z")?;
    let mut op = BandedOperator::zeros(degree, 1, "Z");
    for n in 0..degree {
        op.set(n + 1, n, 1.0);
    }
    Ok(op)
}

/// q-annihilation operator: `z^n -> beta [n]_q z^(n-1)`, `1 -> 0`.
pub fn annihilation(params: &QParams, degree: usize) -> Result<BandedOperator> {
    require_degree(degree, 1, "D")?;
    let b = brackets(degree, params.q());
    let mut op = BandedOperator::zeros(degree, 1, "D");
    for n in 1..=degree {
        op.set(n - 1, n, params.beta() * b[n]);
    }
    Ok(op)
}

/// q-number operator: `z^n -> [n]_q z^n`.
pub fn number(params: &QParams, degree: usize) -> BandedOperator {
    let mut op = BandedOperator::zeros(degree, 0, "N");
    for (n, b) in brackets(degree, params.q()).into_iter().enumerate() {
        op.set(n, n, b);
    }
    op
}

/// `z^n -> ([n]_q + beta) z^n`.
pub fn shifted_number(params: &QParams, degree: usize) -> BandedOperator {
    let mut op = BandedOperator::zeros(degree, 0, "alpha");
    for (n, b) in brackets(degree, params.q()).into_iter().enumerate() {
        op.set(n, n, b + params.beta());
    }
    op
}

/// Multiplication by `x`, carried to the monomial side: the Jacobi matrix
/// with subdiagonal 1, diagonal `alpha_n` and superdiagonal `omega_n`.
pub fn multiplication_by_x(
    family: PolyFamily,
    params: &QParams,
    degree: usize,
) -> Result<BandedOperator> {
    require_degree(degree, 1, "Q")?;
    let label = match family {
        PolyFamily::Charlier => "Q_p",
        PolyFamily::Hermite => "Q_g",
    };
    let mut op = BandedOperator::zeros(degree, 1, label);
    for (n, (alpha, omega)) in jacobi_params(family, params, degree)
        .into_iter()
        .enumerate()
    {
        op.set(n, n, alpha);
        if n < degree {
            op.set(n + 1, n, 1.0);
        }
        if n > 0 {
            op.set(n - 1, n, omega);
        }
    }
    Ok(op)
}

/// Pointwise q-difference quotient `beta (F(z) - F(qz)) / (z (1 - q))`.
///
/// At `z = 0` this returns the analytic limit `beta * c_1`, which is what
/// the coefficient action `z -> beta` requires.
pub fn q_difference_quotient(f: &MonomialSeries, z: Complex64) -> Complex64 {
    let beta = f.params.beta();
    let q = f.params.q();
    if z == ZERO {
        return f.coeffs.get(1).copied().unwrap_or(ZERO) * beta;
    }
    (f.eval(z) - f.eval(z * q)) * beta / (z * (1.0 - q))
}

/// Outcome of one numerical identity check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub q: f64,
    pub beta: f64,
    #[serde(rename = "N")]
    pub degree: usize,
    pub residual: f64,
    pub passed: bool,
    pub tolerance: f64,
    /// Inclusive range of input degrees the residual was taken over.
    pub degrees: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl IdentityReport {
    pub fn new(
        identity: &str,
        params: &QParams,
        degree: usize,
        degrees: [usize; 2],
        residual: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            identity: identity.to_string(),
            q: params.q(),
            beta: params.beta(),
            degree,
            residual,
            passed: residual <= tolerance,
            tolerance,
            degrees,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

const TRUNCATION_NOTE: &str = "column z^N excluded: Z drops its image at finite N";

fn checked_cols(degree: usize) -> [usize; 2] {
    [0, degree - 1]
}

/// `S Q_p = (D + Z + alpha) S` for the Charlier family.
pub fn verify_charlier_jacobi(params: &QParams, degree: usize, tol: f64) -> Result<IdentityReport> {
    require_degree(degree, 2, "Charlier Jacobi check")?;
    let lhs = multiplication_by_x(PolyFamily::Charlier, params, degree)?;
    let rhs = annihilation(params, degree)?
        .add(&creation(degree)?)?
        .add(&shifted_number(params, degree))?;
    let res = lhs.residual(&rhs, degree);
    Ok(IdentityReport::new(
        "charlier_jacobi",
        params,
        degree,
        checked_cols(degree),
        res,
        tol,
    )
    .with_note(TRUNCATION_NOTE))
}

/// `S Q_g = (D + Z) S` for the Hermite family.
pub fn verify_hermite_jacobi(params: &QParams, degree: usize, tol: f64) -> Result<IdentityReport> {
    require_degree(degree, 2, "hermite check")?;
    let lhs = multiplication_by_x(PolyFamily::Hermite, params, degree)?;
    let rhs = annihilation(params, degree)?.add(&creation(degree)?)?;
    let res = lhs.residual(&rhs, degree);
    Ok(IdentityReport::new(
        "hermite_jacobi",
        params,
        degree,
        checked_cols(degree),
        res,
        tol,
    )
    .with_note(TRUNCATION_NOTE))
}

/// Shifted-number and factorization identities:
/// (1) `alpha = Z D / beta + beta I = N + beta I`;
/// (2) `Z + D + alpha = (Z / sqrt(beta) + sqrt(beta) I)(D / sqrt(beta) + sqrt(beta) I)`.
/// Returns one report per identity.
pub fn verify_factorization(
    params: &QParams,
    degree: usize,
    tol: f64,
) -> Result<Vec<IdentityReport>> {
    require_degree(degree, 2, "factorization check")?;
    let beta = params.beta();
    let sb = beta.sqrt();
    let z = creation(degree)?;
    let d = annihilation(params, degree)?;
    let alpha = shifted_number(params, degree);
    let id = BandedOperator::identity(degree);
    let beta_i = id.scale(beta);

    let via_zd = z.compose(&d)?.scale(1.0 / beta).add(&beta_i)?;
    let via_n = number(params, degree).add(&beta_i)?;
    let res1 = alpha
        .residual(&via_zd, degree)
        .max(alpha.residual(&via_n, degree));

    let left = z.scale(1.0 / sb).add(&id.scale(sb))?;
    let right = d.scale(1.0 / sb).add(&id.scale(sb))?;
    let product = left.compose(&right)?;
    let sum = z.add(&d)?.add(&alpha)?;
    let res2 = sum.residual(&product, degree);

    Ok(vec![
        IdentityReport::new(
            "shifted_number",
            params,
            degree,
            checked_cols(degree),
            res1,
            tol,
        ),
        IdentityReport::new(
            "factorization",
            params,
            degree,
            checked_cols(degree),
            res2,
            tol,
        )
        .with_note(TRUNCATION_NOTE),
    ])
}

/// `D Z - q Z D = beta I`. The residual against the unscaled identity `I`
/// is reported in the note; the two coincide at `beta = 1`.
pub fn verify_commutation(params: &QParams, degree: usize, tol: f64) -> Result<IdentityReport> {
    require_degree(degree, 2, "commutation check")?;
    let z = creation(degree)?;
    let d = annihilation(params, degree)?;
    let comm = d.compose(&z)?.sub(&z.compose(&d)?.scale(params.q()))?;
    let id = BandedOperator::identity(degree);
    let res_beta = comm.residual(&id.scale(params.beta()), degree);
    let res_unit = comm.residual(&id, degree);
    Ok(IdentityReport::new(
        "commutation",
        params,
        degree,
        checked_cols(degree),
        res_beta,
        tol,
    )
    .with_note(format!(
        "asserted against beta*I; residual against I = {}",
        fmt_f64(res_unit)
    )))
}

/// Residual of `D Z - q Z D - I` on the checked columns (informational).
pub fn commutation_unit_residual(params: &QParams, degree: usize) -> Result<f64> {
    require_degree(degree, 2, "commutation check")?;
    let z = creation(degree)?;
    let d = annihilation(params, degree)?;
    let comm = d.compose(&z)?.sub(&z.compose(&d)?.scale(params.q()))?;
    Ok(comm.residual(&BandedOperator::identity(degree), degree))
}

/// `Q_p - Q_g = alpha` on the checked columns.
pub fn verify_family_difference(
    params: &QParams,
    degree: usize,
    tol: f64,
) -> Result<IdentityReport> {
    require_degree(degree, 2, "family difference check")?;
    let diff = multiplication_by_x(PolyFamily::Charlier, params, degree)?
        .sub(&multiplication_by_x(PolyFamily::Hermite, params, degree)?)?;
    let res = diff.residual(&shifted_number(params, degree), degree);
    Ok(IdentityReport::new(
        "charlier_minus_hermite",
        params,
        degree,
        checked_cols(degree),
        res,
        tol,
    ))
}

pub(crate) fn random_coeffs(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

/// Relative residual `|<Z F, G> - <F, D G>|` over random `F, G` of degree `<= N-1`.
pub fn verify_adjoint(
    params: &QParams,
    degree: usize,
    tol: f64,
    samples: usize,
    seed: u64,
) -> Result<IdentityReport> {
    require_degree(degree, 2, "adjoint check")?;
    let z = creation(degree)?;
    let d = annihilation(params, degree)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let f = MonomialSeries::new(*params, random_coeffs(&mut rng, degree));
        let g = MonomialSeries::new(*params, random_coeffs(&mut rng, degree));
        let lhs = hardy_inner(&z.apply_series(&f), &g)?;
        let rhs = hardy_inner(&f, &d.apply_series(&g))?;
        let scale = (f.norm() * g.norm()).max(f64::MIN_POSITIVE);
        worst = worst.max((lhs - rhs).norm() / scale);
    }
    Ok(IdentityReport::new(
        "adjoint_z_d",
        params,
        degree,
        checked_cols(degree),
        worst,
        tol,
    ))
}

/// Multiplication by `x` carried out on orthogonal-basis coefficients and
/// then transformed, against `(D + Z + alpha)` (Charlier) or `(D + Z)`
/// (Hermite) applied to the transform. Relative residual over random inputs
/// of degree `<= N - 1`.
pub fn verify_data_path(
    family: PolyFamily,
    params: &QParams,
    degree: usize,
    tol: f64,
    samples: usize,
    seed: u64,
) -> Result<IdentityReport> {
    require_degree(degree, 2, "data-path check")?;
    let mut op = annihilation(params, degree)?.add(&creation(degree)?)?;
    if family == PolyFamily::Charlier {
        op = op.add(&shifted_number(params, degree))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let f = OrthoCoeffs::new(family, *params, random_coeffs(&mut rng, degree));
        let lhs = sb_transform(&multiply_by_x(&f));
        let rhs = op.apply_series(&sb_transform(&f));
        let scale = rhs
            .coeffs
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        let diff = lhs
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        worst = worst.max(diff / scale);
    }
    let name = match family {
        PolyFamily::Charlier => "charlier_jacobi_data_path",
        PolyFamily::Hermite => "hermite_jacobi_data_path",
    };
    Ok(IdentityReport::new(
        name,
        params,
        degree,
        checked_cols(degree),
        worst,
        tol,
    ))
}

/// Pointwise difference quotient against the matrix action of `D`, at random
/// nonzero points with `|z| <= 0.6 r_0`. Relative residual.
pub fn verify_d_pointwise(
    params: &QParams,
    degree: usize,
    tol: f64,
    samples: usize,
    seed: u64,
) -> Result<IdentityReport> {
    require_degree(degree, 1, "pointwise D check")?;
    let d = annihilation(params, degree)?;
    let r0 = params.domain_radius_sq().sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let f = MonomialSeries::new(*params, random_coeffs(&mut rng, degree + 1));
        let df = d.apply_series(&f);
        let z = Complex64::from_polar(
            rng.gen_range(0.05..0.6) * r0,
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        let pointwise = q_difference_quotient(&f, z);
        let matrix = df.eval(z);
        let scale = df
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.norm() * z.norm().powi(n as i32))
            .sum::<f64>();
        worst = worst.max((pointwise - matrix).norm() / scale.max(f64::MIN_POSITIVE));
    }
    Ok(IdentityReport::new(
        "d_pointwise",
        params,
        degree,
        [0, degree],
        worst,
        tol,
    ))
}
