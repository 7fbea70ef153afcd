//! Run every identity check over the default (q, beta) grid and summarize.
//!
//! cargo run --release --example verify_grid [degree]

use qsegal::suites::{run_suite, Suite, GRID_BETA, GRID_Q};
use qsegal::{QParams, Tolerance};

fn main() -> qsegal::Result<()> {
    let degree = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(12);
    let tol = Tolerance::default();
    let mut failed = 0;
    let mut total = 0;
    for q in GRID_Q {
        for beta in GRID_BETA {
            let reports = run_suite(Suite::All, &QParams::new(q, beta)?, degree, &tol)?;
            let worst = reports
                .iter()
                .map(|r| r.residual / r.tolerance.max(f64::MIN_POSITIVE))
                .fold(0.0, f64::max);
            let bad: Vec<&str> = reports
                .iter()
                .filter(|r| !r.passed)
                .map(|r| r.identity.as_str())
                .collect();
            total += reports.len();
            failed += bad.len();
            println!(
                "q={q:<4} beta={beta:<3} {} checks, worst residual/tol {worst:.2e} {bad:?}",
                reports.len()
            );
        }
    }
    println!("{}/{total} passed at N={degree}", total - failed);
    Ok(())
}
