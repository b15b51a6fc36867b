//! Exact differential algebra for the Riccati sequence of ordinary
//! differential equations.
//!
//! The sequence is generated by the recursion operator `D + y`, where `D`
//! is total differentiation with respect to `x`: the n-th member is
//! `(D + y)^n y = 0`, so the first few left sides are
//!
//! ```text
//! R~1 = y' + y^2
//! R~2 = y'' + 3yy' + y^3
//! R~3 = y''' + 4yy'' + 3y'^2 + 6y^2y' + y^4
//! ```
//!
//! The adjoint operator `D - y` generates a parallel sequence. Everything
//! in this crate is computed over exact rational coefficients; equality of
//! polynomials is literal equality of canonical forms, so every verified
//! identity is a proof at the tested order, not an approximation.
//!
//! The crate is organised around a small tower of rings:
//!
//! - [`diffalg`] — multivariate polynomials in `x` and the jet variables
//!   `y, y', y'', ...`, extended by integer powers of a formal exponential
//!   weight `E = exp[∫y dx]` with `D(E^k) = k·y·E^k`;
//! - [`unipoly`] / [`ratfun`] — dense univariate polynomials and reduced
//!   rational functions in `x`, used by solution formulas;
//! - [`sequence`] — generation of the members and their adjoints, the
//!   gradient recurrence, the interleaving recurrence and the triangular
//!   matrix identities they satisfy;
//! - [`symmetry`] — point and evolutionary generators, prolongation,
//!   eigen-relations and the complete-symmetry-group certificate;
//! - [`singularity`] — dominant balances, resonance polynomials and exact
//!   Laurent-series compatibility (the Painlevé test);
//! - [`integrals`] — closed-form solutions `y = P'/P`, exponential
//!   invariants and first integrals.
//!
//! All values are immutable once built and all operations are pure; the
//! only mutable state is the explicit [`sequence::Sequence`] memo table,
//! which each thread owns privately.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod diffalg;
pub mod integrals;
pub mod ratfun;
pub mod report;
pub mod sequence;
pub mod singularity;
pub mod symmetry;
pub mod unipoly;

pub use diffalg::{DiffAlgError, DiffPoly, ExpDiffPoly, Jet, JetMonomial, Rational, Reducer, Var};
pub use report::VerificationFailure;
pub use sequence::Sequence;
