//! The exact differential polynomial ring.
//!
//! Elements live in `Q[x, y, y', y'', ...][E, E^-1]` where the jet
//! variables `y^(k)` are algebraically independent symbols and `E` is a
//! formal exponential weight. The operations that make this a
//! *differential* ring:
//!
//! - partial derivatives treat `x`, every `y^(k)` and `E` as independent,
//! - the total derivative is `D = ∂x + Σ_k y^(k+1) ∂_{y^(k)}` extended by
//!   `D(E^λ) = λ·y·E^λ`,
//! - reduction modulo a monic equation `y^(n) + ... = 0` rewrites all
//!   derivatives of order ≥ n via the prolonged substitution chain.
//!
//! Coefficients are arbitrary-precision rationals ([`Rational`]); there is
//! no floating point anywhere in this crate.

mod exp;
mod jet;
mod monomial;
mod poly;
mod reduce;

pub use exp::ExpDiffPoly;
pub use jet::Jet;
pub use monomial::{JetMonomial, Var};
pub use poly::DiffPoly;
pub use reduce::{reduce_mod, Reducer};

use alloc::string::String;
use core::fmt;

/// Exact rational scalar: arbitrary-precision, always reduced, positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Errors raised by the ring layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiffAlgError {
    /// `reduce_mod` was given an equation whose highest derivative does
    /// not occur as a bare monomial with coefficient exactly 1.
    NonMonicEquation,
    /// A jet evaluation needs derivative values beyond those supplied.
    JetTooShort { required: u32, available: usize },
    /// Evaluation with exponential levels below zero needs a nonzero base.
    ZeroExponentialBase,
    /// `weight_of` found two monomials of differing weight.
    NotHomogeneous {
        witness: String,
        weight_a: i64,
        weight_b: i64,
    },
}

impl fmt::Display for DiffAlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiffAlgError::NonMonicEquation => {
                write!(f, "equation is not monic-linear in its highest derivative")
            }
            DiffAlgError::JetTooShort { required, available } => write!(
                f,
                "jet too short: need derivatives up to order {required}, have {available} values"
            ),
            DiffAlgError::ZeroExponentialBase => {
                write!(f, "exponential base must be nonzero when negative levels are present")
            }
            DiffAlgError::NotHomogeneous { witness, weight_a, weight_b } => write!(
                f,
                "polynomial is not weight-homogeneous: {witness} mixes weights {weight_a} and {weight_b}"
            ),
        }
    }
}

impl core::error::Error for DiffAlgError {}

/// Binomial coefficient as an exact rational.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return num_traits::Zero::zero();
    }
    Rational::from_integer(num_integer::binomial(
        num_bigint::BigInt::from(n),
        num_bigint::BigInt::from(k),
    ))
}

/// `n!` as an exact rational.
pub fn factorial(n: u64) -> Rational {
    let mut acc = num_bigint::BigInt::from(1);
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}

/// Convenience constructor for small rationals; panics on a zero
/// denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Convenience constructor for small integers.
pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(num.into())
}
