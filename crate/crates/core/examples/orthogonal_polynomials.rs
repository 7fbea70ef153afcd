//! q-Charlier and q-Hermite polynomials: monomial coefficients, evaluation
//! by recurrence, and the coefficient model of L^2.
//!
//! cargo run --example orthogonal_polynomials

use num_complex::Complex64;
use qsegal::orthopoly::{
    basis_to_monomial, jacobi_params, multiply_by_x, poly_eval, poly_monomial,
};
use qsegal::{l2_inner, OrthoCoeffs, PolyFamily, QParams};

fn main() -> qsegal::Result<()> {
    let params = QParams::new(0.5, 1.0)?;

    for family in [PolyFamily::Charlier, PolyFamily::Hermite] {
        println!(
            "{family}: (alpha_n, omega_n) = {:?}",
            jacobi_params(family, &params, 3)
        );
        for n in 0..=3 {
            let re: Vec<f64> = poly_monomial(family, &params, n)
                .coeffs
                .iter()
                .map(|c| c.re)
                .collect();
            println!(
                "  P_{n} = {re:?}   P_{n}(0.7) = {:.6}",
                poly_eval(family, &params, n, 0.7)
            );
        }
    }

    // f = 2 P_0 - i P_2
    let f = OrthoCoeffs::new(
        PolyFamily::Charlier,
        params,
        vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
        ],
    );
    println!("||f||^2 = {}", f.norm_sq());
    println!("<f, f> = {}", l2_inner(&f, &f)?);
    let xf = multiply_by_x(&f);
    println!("x f in the basis: {:?}", xf.coeffs);
    println!("x f as monomials: {:?}", basis_to_monomial(&xf).coeffs);
    println!(
        "x f(1.3) = {}  vs  1.3 f(1.3) = {}",
        xf.eval(1.3),
        f.eval(1.3) * 1.3
    );
    Ok(())
}
