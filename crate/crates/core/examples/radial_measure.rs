//! The discrete radial measure: atoms on concentric circles, Gram matrix of
//! monomials by equispaced angular quadrature.
//!
//! cargo run --example radial_measure

use qsegal::measure::{monomial_gram_on, nu_q_atoms};
use qsegal::qcore::norm_weights;
use qsegal::QParams;

fn main() -> qsegal::Result<()> {
    for q in [0.0, 0.5, 0.9] {
        let params = QParams::new(q, 1.0)?;
        let nu = nu_q_atoms(&params, 1e-12)?;
        println!(
            "q = {q}: {} circles, mass {:.15}, dropped <= {:.1e}",
            nu.len(),
            nu.total_mass(),
            nu.tail_bound
        );
    }

    let params = QParams::new(0.5, 2.0)?;
    let nu = nu_q_atoms(&params, 1e-12)?;
    print!(
        "{}",
        nu.to_csv().lines().take(6).collect::<Vec<_>>().join("\n")
    );
    println!("\n...");

    let w = norm_weights(&params, 5);
    for (n, wn) in w.iter().enumerate() {
        let row: Vec<String> = (0..=5)
            .map(|m| {
                format!(
                    "{:9.2e}",
                    monomial_gram_on(&nu, n, m, n + m + 2)
                        .map(|g| g.re)
                        .unwrap_or(f64::NAN)
                )
            })
            .collect();
        println!("{}   expected diag {:.6}", row.join(" "), wn);
    }
    Ok(())
}
