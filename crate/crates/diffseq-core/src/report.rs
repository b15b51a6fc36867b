//! Failure reports for the verification suites.

use alloc::string::String;
use core::fmt;

use crate::diffalg::ExpDiffPoly;

/// An identity check that did not hold, carrying the exact residual.
///
/// Every verification routine in this crate either returns `Ok(())` (the
/// identity holds literally) or one of these; the residual polynomial is
/// what makes a failed identity diagnosable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationFailure {
    /// Module the check belongs to (`"sequence"`, `"symmetry"`, ...).
    pub module: &'static str,
    /// Operation or lemma that failed.
    pub operation: &'static str,
    /// Stage label, indices, or other context.
    pub detail: String,
    /// Difference between the two sides of the identity.
    pub residual: ExpDiffPoly,
}

impl VerificationFailure {
    pub fn new(
        module: &'static str,
        operation: &'static str,
        detail: String,
        residual: ExpDiffPoly,
    ) -> Self {
        VerificationFailure {
            module,
            operation,
            detail,
            residual,
        }
    }
}

impl fmt::Display for VerificationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}::{} failed ({}); residual: {}",
            self.module, self.operation, self.detail, self.residual
        )
    }
}

impl core::error::Error for VerificationFailure {}
