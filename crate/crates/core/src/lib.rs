//! q-deformed Segal-Bargmann transform for the q-Charlier and q-Hermite
//! polynomial systems.
//!
//! The crate models `L^2` of the q-deformed Poisson (Charlier) or Gaussian
//! (Hermite) measure by coefficients over its monic orthogonal polynomials,
//! and the Hardy space over the radial atomic measure `nu_q` by monomial
//! coefficients. The transform sends the `n`-th polynomial to `z^n`; under
//! it, multiplication by `x` becomes a combination of q-creation,
//! q-annihilation and q-number operators.
//!
//! Modules:
//! - [`qcore`]: q-brackets, q-factorials, `exp_q`, q-Pochhammer, q-Gamma
//! - [`orthopoly`]: recurrences, evaluation, change of basis, `L^2` inner product
//! - [`measure`]: `nu_q` atoms, trigonometric quadrature, Hardy inner product
//! - [`sbt`]: the transform, coherent states, coefficient-vector JSON
//! - [`operators`]: operator matrices and identity checks
//! - [`cli`]: the `qsb` command-line front end

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod format;
pub mod measure;
pub mod operators;
pub mod orthopoly;
pub mod qcore;
pub mod sbt;
pub mod suites;

pub use error::{Error, Result};
pub use measure::{
    hardy_inner, monomial_gram, nu_q_atoms, quad_integrate, MonomialSeries, RadialAtomMeasure,
};
pub use operators::{BandedOperator, IdentityReport};
pub use orthopoly::{l2_inner, OrthoCoeffs, PolyFamily};
pub use qcore::{QParams, Tolerance};
pub use sbt::{sb_inverse, sb_transform};
