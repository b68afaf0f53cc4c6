//! Fiedler pencils of Rosenbrock system polynomials.
//!
//! Given an LTI system `S(λ) = [[P(λ), C], [B, A - λE]]`, this crate builds
//! the family of Fiedler pencils of `S`, certifies them as linearizations
//! through explicit unimodular transforms, and solves rational eigenvalue
//! problems `G(λ) u = 0` with `G(λ) = P(λ) + C (λE - A)⁻¹ B` by
//! realization, linearization and a generalized eigensolve.

pub mod eigen;
pub mod equivalence;
pub mod error;
pub mod fiedler;
pub mod json;
pub mod polymat;
pub mod system;
mod numeric;

pub use eigen::{classify_zeros, solve_gep, solve_rep, Backend, GepResult, ZeroClass, ZeroKind, ZeroReport};
pub use equivalence::{build_certificate, verify_rosenbrock_linearization, EquivalenceCertificate};
pub use error::{Error, Result};
pub use fiedler::{Bijection, Ciss, SystemPencil};
pub use polymat::{Field, FieldMode, Matrix, Poly, PolyMatrix, Rational, RationalFn, RationalMatrix};
pub use polymat::Root;
pub use system::{realize, RepSpec, RepTerm, RosenbrockSystem};
