//! Orthogonal polynomials on the real line (OPRL) and on the unit circle
//! (OPUC), tied together by the Szegő transformation.
//!
//! The crate converts between three-term recurrence coefficients and
//! Verblunsky coefficients, models the usual perturbed families
//! (associated, anti-associated, co-dilated, co-recursive, k-modified,
//! sieved, symmetric) both through closed-form coefficient maps and through
//! brute-force recomputation, and evaluates S- and C-functions through
//! continued-fraction convergents so that rational spectral transformations
//! can be checked pointwise.

pub mod cli;
pub mod error;
pub mod io;
pub mod numeric;
pub mod oprl;
pub mod opuc;
pub mod perturb;
pub mod polyhom;
pub mod spectral;
pub mod szego;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use oprl::{JacobiMatrix, RealRecurrence};
pub use opuc::VerblunskySeq;
pub use perturb::{Path, PerturbationSpec};
pub use polyhom::{Poly, PolyMatrix2};
pub use szego::VSeq;
