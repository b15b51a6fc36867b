//! Evaluation points: a base point and a list of derivative values.

use alloc::vec::Vec;

use super::Rational;

/// A finite jet `(x0; y, y', ..., y^(m))` used as an exact numerical
/// checkpoint when spot-checking identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    x0: Rational,
    values: Vec<Rational>,
}

impl Jet {
    /// Panics if `values` is empty: a jet carries at least `y` itself.
    pub fn new(x0: Rational, values: Vec<Rational>) -> Self {
        assert!(!values.is_empty(), "a jet needs at least the value of y");
        Jet { x0, values }
    }

    pub fn x0(&self) -> &Rational {
        &self.x0
    }

    /// Derivative values `y^(0)..y^(m)`, in order.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Highest derivative order carried by this jet.
    pub fn order(&self) -> u32 {
        (self.values.len() - 1) as u32
    }
}
