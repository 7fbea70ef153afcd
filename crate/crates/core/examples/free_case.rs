//! q = 0: one circle, Gram diagonal beta^n, number operator (0,1,1,...).
//!
//! cargo run --example free_case

use qsegal::measure::{monomial_gram_on, nu_q_atoms};
use qsegal::operators::{number, verify_hermite_jacobi};
use qsegal::orthopoly::poly_monomial;
use qsegal::{PolyFamily, QParams};

fn main() -> qsegal::Result<()> {
    let params = QParams::new(0.0, 2.0)?;
    let nu = nu_q_atoms(&params, 1e-12)?;
    print!("{}", nu.to_csv());

    let diag: Vec<f64> = (0..6)
        .map(|n| monomial_gram_on(&nu, n, n, 2 * n + 2).map(|g| g.re))
        .collect::<Result<_, _>>()?;
    println!("gram diagonal {diag:?}");
    println!(
        "number diagonal {:?}",
        number(&params, 5)
            .diagonal(0)
            .iter()
            .map(|c| c.re)
            .collect::<Vec<_>>()
    );

    // With beta = 1 these are the free Poisson and semicircle families.
    let unit = QParams::new(0.0, 1.0)?;
    for family in [PolyFamily::Charlier, PolyFamily::Hermite] {
        let p3: Vec<f64> = poly_monomial(family, &unit, 3)
            .coeffs
            .iter()
            .map(|c| c.re)
            .collect();
        println!("{family} P_3 = {p3:?}");
    }
    println!(
        "{}",
        verify_hermite_jacobi(&unit, 12, 1e-12)?.to_json_line()
    );
    Ok(())
}
