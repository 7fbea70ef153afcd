//! q-numbers, q-factorials, the q-exponential and q-Pochhammer products.
//!
//! cargo run --example q_series

use qsegal::qcore::{
    q_bracket, q_exp, q_factorial, q_gamma_factorial, q_pochhammer_infinite, Tolerance,
};

fn main() -> qsegal::Result<()> {
    let tol = Tolerance::default();
    let q = 0.7;

    println!("n  [n]_q               [n]_q!              series form");
    for n in 0..=8 {
        println!(
            "{n}  {:<18.15} {:<19.12} {:.12}",
            q_bracket(n, q)?,
            q_factorial(n, q)?,
            q_gamma_factorial(n, q, &tol)?
        );
    }

    // exp_q converges for |x| < 1/(1-q); near the edge it grows without bound.
    for frac in [0.1, 0.5, 0.9, 0.99] {
        let x = frac / (1.0 - q);
        println!("exp_q({x:.4}) = {:.12}", q_exp(x, q, &Tolerance::fine())?);
    }
    if let Err(e) = q_exp(1.0 / (1.0 - q), q, &tol) {
        println!("at the radius: {e}");
    }

    let prod = q_pochhammer_infinite(q, q, &tol)?;
    println!(
        "(q;q)_inf = {:.15} after {} factors, log tail <= {:.1e}",
        prod.value, prod.factors, prod.log_tail_bound
    );
    Ok(())
}
