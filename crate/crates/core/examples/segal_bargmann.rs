//! The transform, its inverse, coherent states and the Hardy-space norm.
//!
//! cargo run --example segal_bargmann

use num_complex::Complex64;
use qsegal::measure::hardy_inner_quadrature;
use qsegal::sbt::{
    coherent_norm_sq, sb_eval_at, sb_eval_via_coherent, CoeffVectorJson, CoherentState,
};
use qsegal::{hardy_inner, nu_q_atoms, sb_inverse, sb_transform, OrthoCoeffs, PolyFamily, QParams};

fn main() -> qsegal::Result<()> {
    let params = QParams::new(0.6, 1.5)?;
    let f = OrthoCoeffs::new(
        PolyFamily::Charlier,
        params,
        vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.5),
            Complex64::new(-0.25, 0.0),
            Complex64::new(0.1, 0.1),
        ],
    );

    let image = sb_transform(&f);
    let nu = nu_q_atoms(&params, 1e-12)?;
    println!("||f||^2 in L^2            {:.15}", f.norm_sq());
    println!(
        "||Sf||^2 closed form      {:.15}",
        hardy_inner(&image, &image)?.re
    );
    println!(
        "||Sf||^2 by quadrature    {:.15}",
        hardy_inner_quadrature(&image, &image, &nu)?.re
    );
    assert_eq!(sb_inverse(&image, PolyFamily::Charlier), f);

    let z = Complex64::new(0.8, -0.6);
    println!("Sf(z) by Horner           {:.15}", sb_eval_at(&f, z)?);
    println!(
        "Sf(z) by coherent pairing {:.15}",
        sb_eval_via_coherent(&f, z)?
    );

    let state = CoherentState::new(PolyFamily::Charlier, params, z, None)?;
    println!(
        "coherent state at z: degree {}, ||E||^2 truncated {:.12}, exact {:.12}",
        state.degree,
        state.coeffs().norm_sq(),
        coherent_norm_sq(&params, z)?
    );

    println!("{}", CoeffVectorJson::from_ortho(&f).to_json()?);
    match sb_eval_at(&f, Complex64::new(2.0, 0.0)) {
        Err(e) => println!("outside the disc: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
