//! Creation, annihilation and number operators on truncated Hardy space, and
//! the identities relating them to multiplication by x.
//!
//! cargo run --example fock_operators

use num_complex::Complex64;
use qsegal::operators::{
    annihilation, creation, number, q_difference_quotient, verify_charlier_jacobi,
    verify_commutation, verify_factorization,
};
use qsegal::{MonomialSeries, QParams};

fn main() -> qsegal::Result<()> {
    let params = QParams::new(0.5, 2.0)?;
    let n = 4;

    println!("D =\n{}", annihilation(&params, n)?.to_csv());
    println!(
        "N diagonal: {:?}",
        number(&params, n)
            .diagonal(0)
            .iter()
            .map(|c| c.re)
            .collect::<Vec<_>>()
    );

    let dz = annihilation(&params, n)?.compose(&creation(n)?)?;
    let zd = creation(n)?.compose(&annihilation(&params, n)?)?;
    let comm = dz.sub(&zd.scale(params.q()))?;
    println!(
        "DZ - qZD diagonal: {:?}",
        comm.diagonal(0).iter().map(|c| c.re).collect::<Vec<_>>()
    );
    println!("(last entry is the truncation edge)");

    let f = MonomialSeries::new(
        params,
        vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 1.0),
        ],
    );
    let z = Complex64::new(0.3, 0.4);
    println!("DF(z) pointwise {:.15}", q_difference_quotient(&f, z));
    println!(
        "DF(z) by matrix {:.15}",
        annihilation(&params, n)?.apply_series(&f).eval(z)
    );

    let mut reports = vec![
        verify_charlier_jacobi(&params, 12, 1e-12)?,
        verify_commutation(&params, 12, 1e-13)?,
    ];
    reports.extend(verify_factorization(&params, 12, 1e-12)?);
    for r in reports {
        println!("{}", r.to_json_line());
    }
    Ok(())
}
