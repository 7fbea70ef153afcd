use num_complex::Complex64;
use proptest::prelude::*;
use qsegal::measure::{hardy_inner_quadrature, monomial_gram_on, nu_q_atoms};
use qsegal::operators::{
    annihilation, creation, multiplication_by_x, number, q_difference_quotient, shifted_number,
    verify_adjoint, verify_data_path,
};
use qsegal::orthopoly::{jacobi_params, poly_eval_all, poly_monomial};
use qsegal::qcore::{
    q_bracket, q_exp, q_exp_complex, q_factorial, q_pochhammer, PochhammerOrder, Tolerance,
};
use qsegal::sbt::{sb_eval_at, sb_inverse, sb_transform, CoeffVectorJson, CoherentState};
use qsegal::{hardy_inner, l2_inner, MonomialSeries, OrthoCoeffs, PolyFamily, QParams};

const EPS: f64 = f64::EPSILON;

fn params() -> impl Strategy<Value = QParams> {
    let q = prop_oneof![
        Just(0.0),
        Just(0.3),
        Just(0.5),
        Just(0.7),
        Just(0.9),
        Just(0.95),
        0.0..0.95f64
    ];
    (q, 0.5..2.0f64).prop_map(|(q, b)| QParams::new(q, b).unwrap())
}

fn family() -> impl Strategy<Value = PolyFamily> {
    prop_oneof![Just(PolyFamily::Charlier), Just(PolyFamily::Hermite)]
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(
        (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| Complex64::new(a, b)),
        len,
    )
}

fn point_in(r: f64) -> impl Strategy<Value = (f64, f64)> {
    (0.0..r, 0.0..std::f64::consts::TAU)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_shift(n in 0usize..200, q in 0.0..0.999f64) {
        let next = q_bracket(n + 1, q).unwrap();
        let cur = q_bracket(n, q).unwrap();
        prop_assert!((next - q * cur - 1.0).abs() <= 4.0 * EPS * next);
    }

    #[test]
    fn factorial_recursion(n in 1usize..60, q in 0.0..0.99f64) {
        let lhs = q_factorial(n, q).unwrap();
        let rhs = q_bracket(n, q).unwrap() * q_factorial(n - 1, q).unwrap();
        prop_assert!((lhs - rhs).abs() <= 2.0 * EPS * lhs);
    }

    #[test]
    fn free_exponential_is_geometric(x in -0.9..0.9f64) {
        let v = q_exp(x, 0.0, &Tolerance::fine()).unwrap();
        let want = 1.0 / (1.0 - x);
        prop_assert!(((v - want) / want).abs() <= 1e-12);
    }

    #[test]
    fn exponential_solves_q_difference_equation(q in 0.0..0.95f64, frac in 0.05..0.8f64) {
        let tol = Tolerance::fine();
        let x = frac / (1.0 - q);
        let e = q_exp(x, q, &tol).unwrap();
        let quotient = (e - q_exp(q * x, q, &tol).unwrap()) / ((1.0 - q) * x);
        prop_assert!(((quotient - e) / e).abs() <= 1e-9);
    }

    #[test]
    fn exponential_conjugate_symmetry(q in 0.0..0.95f64, (r, t) in point_in(0.9)) {
        let tol = Tolerance::fine();
        let x = Complex64::from_polar(r / (1.0 - q), t);
        let a = q_exp_complex(x, q, &tol).unwrap();
        let b = q_exp_complex(x.conj(), q, &tol).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-13 * a.norm().max(1.0));
    }

    #[test]
    fn pochhammer_finite_split(a in -2.0..2.0f64, q in 0.0..0.99f64, m in 0usize..15, n in 0usize..15) {
        let tol = Tolerance::default();
        let whole = q_pochhammer(a, q, PochhammerOrder::Finite(m + n), &tol).unwrap();
        let head = q_pochhammer(a, q, PochhammerOrder::Finite(m), &tol).unwrap();
        let tail = q_pochhammer(a * q.powi(m as i32), q, PochhammerOrder::Finite(n), &tol).unwrap();
        let scale: f64 = (0..m + n).map(|j| 1.0 + (a * q.powi(j as i32)).abs()).product();
        prop_assert!((whole - head * tail).abs() <= 4.0 * (m + n) as f64 * EPS * scale);
    }

    #[test]
    fn pochhammer_infinite_split(a in 0.0..0.9f64, q in 0.0..0.95f64, m in 0usize..10) {
        let tol = Tolerance::fine();
        let whole = q_pochhammer(a, q, PochhammerOrder::Infinite, &tol).unwrap();
        let head = q_pochhammer(a, q, PochhammerOrder::Finite(m), &tol).unwrap();
        let tail = q_pochhammer(a * q.powi(m as i32), q, PochhammerOrder::Infinite, &tol).unwrap();
        prop_assert!(((whole - head * tail) / whole).abs() <= 1e-12);
    }

    #[test]
    fn polynomials_are_monic(p in params(), fam in family(), n in 0usize..=20) {
        prop_assert_eq!(poly_monomial(fam, &p, n).coeffs[n], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn recurrence_residual(p in params(), fam in family(), x in -3.0..3.0f64) {
        let vals = poly_eval_all(fam, &p, 16, x);
        let jac = jacobi_params(fam, &p, 16);
        for n in 1..16 {
            let (a, w) = jac[n];
            let res = (x - a) * vals[n] - vals[n + 1] - w * vals[n - 1];
            let scale = ((x - a) * vals[n]).abs() + vals[n + 1].abs() + (w * vals[n - 1]).abs();
            prop_assert!(res.abs() <= 1e-9 * scale.max(1.0));
        }
    }

    #[test]
    fn hermite_parity(p in params(), x in -3.0..3.0f64) {
        let plus = poly_eval_all(PolyFamily::Hermite, &p, 15, x);
        let minus = poly_eval_all(PolyFamily::Hermite, &p, 15, -x);
        for n in 0..=15 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert_eq!(minus[n], sign * plus[n]);
        }
    }

    #[test]
    fn radii_inside_domain(p in params()) {
        let nu = nu_q_atoms(&p, 1e-12).unwrap();
        let r0_sq = p.domain_radius_sq();
        prop_assert!((nu.atoms[0].radius.powi(2) - r0_sq).abs() <= 4.0 * EPS * r0_sq);
        for a in &nu.atoms[1..] {
            prop_assert!(a.radius.powi(2) < r0_sq);
        }
    }

    #[test]
    fn gram_off_diagonal(p in params(), n in 0usize..=12, m in 0usize..=12) {
        prop_assume!(n != m);
        let nu = nu_q_atoms(&p, 1e-12).unwrap();
        let top = n.max(m);
        let scale = p.beta().powi(top as i32) * q_factorial(top, p.q()).unwrap();
        prop_assert!(monomial_gram_on(&nu, n, m, n + m + 2).unwrap().norm() <= 1e-12 * scale);
    }

    #[test]
    fn parseval(p in params(), fam in family(), a in coeffs(13)) {
        let f = OrthoCoeffs::new(fam, p, a);
        let l2 = f.norm_sq();
        prop_assert!((sb_transform(&f).norm_sq() - l2).abs() <= 1e-15 * l2);
    }

    #[test]
    fn inner_products_agree(p in params(), a in coeffs(9), b in coeffs(7)) {
        let f = OrthoCoeffs::new(PolyFamily::Charlier, p, a);
        let g = OrthoCoeffs::new(PolyFamily::Charlier, p, b);
        let l2 = l2_inner(&f, &g).unwrap();
        let (sf, sg) = (sb_transform(&f), sb_transform(&g));
        let h = hardy_inner(&sf, &sg).unwrap();
        let scale = f.norm() * g.norm();
        prop_assert!((l2 - h).norm() <= 1e-14 * scale);
        let nu = nu_q_atoms(&p, 1e-12).unwrap();
        prop_assert!((hardy_inner_quadrature(&sf, &sg, &nu).unwrap() - l2).norm() <= 1e-8 * scale);
        prop_assert!((l2_inner(&g, &f).unwrap() - l2.conj()).norm() <= 1e-14 * scale);
    }

    #[test]
    fn schwarz_bound(p in params(), a in coeffs(13), (r, t) in point_in(0.95)) {
        let f = OrthoCoeffs::new(PolyFamily::Charlier, p, a);
        let z = Complex64::from_polar(r * p.domain_radius_sq().sqrt(), t);
        let lhs: f64 = f.coeffs.iter().enumerate().map(|(n, c)| c.norm() * z.norm().powi(n as i32)).sum();
        let e = q_exp(z.norm_sqr() / p.beta(), p.q(), &Tolerance::fine()).unwrap();
        prop_assert!(lhs <= f.norm() * e.sqrt() * (1.0 + 1e-12));
    }

    #[test]
    fn coherent_reproduces_exponential(
        p in params(),
        fam in family(),
        (rw, tw) in point_in(0.6),
        (rz, tz) in point_in(0.6),
    ) {
        let r0 = p.domain_radius_sq().sqrt();
        let w = Complex64::from_polar(rw * r0, tw);
        let z = Complex64::from_polar(rz * r0, tz);
        let state = CoherentState::new(fam, p, w.conj(), None).unwrap();
        let got = sb_eval_at(&state.coeffs(), z).unwrap();
        let want = q_exp_complex(w.conj() * z / p.beta(), p.q(), &Tolerance::fine()).unwrap();
        prop_assert!((got - want).norm() <= 1e-10 * want.norm().max(1.0));
    }

    #[test]
    fn transform_round_trip_is_exact(p in params(), fam in family(), a in coeffs(10)) {
        let f = OrthoCoeffs::new(fam, p, a);
        prop_assert_eq!(sb_inverse(&sb_transform(&f), fam), f.clone());
        let json = CoeffVectorJson::from_ortho(&f).to_json().unwrap();
        prop_assert_eq!(CoeffVectorJson::from_json(&json).unwrap().to_ortho().unwrap(), f);
    }

    #[test]
    fn adjoint_pairing(p in params(), seed in any::<u64>()) {
        prop_assert!(verify_adjoint(&p, 12, 1e-12, 4, seed).unwrap().passed);
    }

    #[test]
    fn creation_annihilation_pairing_on_series(p in params(), a in coeffs(12), b in coeffs(12)) {
        let n = 12;
        let mut fa = a.clone();
        fa[n - 1] = Complex64::new(0.0, 0.0);
        let f = MonomialSeries::new(p, fa);
        let g = MonomialSeries::new(p, b);
        let zf = creation(n).unwrap().apply_series(&f);
        let dg = annihilation(&p, n).unwrap().apply_series(&g);
        let lhs = hardy_inner(&zf, &g).unwrap();
        let rhs = hardy_inner(&f, &dg).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * zf.norm() * g.norm());
    }

    #[test]
    fn families_differ_by_shifted_number(p in params()) {
        let diff = multiplication_by_x(PolyFamily::Charlier, &p, 12)
            .unwrap()
            .sub(&multiplication_by_x(PolyFamily::Hermite, &p, 12).unwrap())
            .unwrap();
        prop_assert!(diff.residual(&shifted_number(&p, 12), 12) <= 1e-15);
    }

    #[test]
    fn shifted_number_is_number_plus_beta(p in params()) {
        let plus = number(&p, 12).add(&qsegal::BandedOperator::identity(12).scale(p.beta())).unwrap();
        prop_assert_eq!(shifted_number(&p, 12).entries, plus.entries);
    }

    #[test]
    fn pointwise_difference_quotient(p in params(), a in coeffs(11), (r, t) in point_in(0.6)) {
        prop_assume!(r > 1e-3);
        let f = MonomialSeries::new(p, a);
        let z = Complex64::from_polar(r * p.domain_radius_sq().sqrt(), t);
        let df = annihilation(&p, 10).unwrap().apply_series(&f);
        let scale: f64 = df.coeffs.iter().enumerate().map(|(n, c)| c.norm() * z.norm().powi(n as i32)).sum();
        prop_assert!((q_difference_quotient(&f, z) - df.eval(z)).norm() <= 1e-12 * scale);
    }

    #[test]
    fn data_path_chain(p in params(), fam in family(), seed in any::<u64>()) {
        prop_assert!(verify_data_path(fam, &p, 12, 1e-11, 4, seed).unwrap().passed);
    }
}

#[test]
fn free_charlier_jacobi_parameters() {
    let p = QParams::new(0.0, 1.0).unwrap();
    let jac = jacobi_params(PolyFamily::Charlier, &p, 10);
    assert_eq!(jac[0].0, 1.0);
    for &(a, w) in &jac[1..] {
        assert_eq!((a, w), (2.0, 1.0));
    }
}
