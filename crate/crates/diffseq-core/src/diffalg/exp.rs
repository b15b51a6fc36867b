//! Differential polynomials extended by a formal exponential weight.
//!
//! `ExpDiffPoly` represents finite sums `Σ_λ p_λ · E^λ` with integer
//! levels `λ` and `p_λ` a [`DiffPoly`]. The symbol `E` stands for
//! `exp[∫y dx]`: it is algebraically independent of the jet variables
//! (`∂E/∂y^(k)` = 0) and differentiates as `D(E^λ) = λ·y·E^λ`. This is
//! the smallest extension of the jet ring closed under `D` that can hold
//! the exponential invariants and the nonlocal symmetry characteristics.

use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::jet::Jet;
use super::monomial::Var;
use super::poly::{fmt_term, DiffPoly};
use super::{DiffAlgError, Rational};

/// A finite map from exponential level to a nonzero polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExpDiffPoly {
    levels: BTreeMap<i64, DiffPoly>,
}

impl ExpDiffPoly {
    pub fn zero() -> Self {
        ExpDiffPoly {
            levels: BTreeMap::new(),
        }
    }

    /// Embed a plain polynomial at level 0.
    pub fn from_poly(p: DiffPoly) -> Self {
        Self::at_level(0, p)
    }

    /// `p · E^level`.
    pub fn at_level(level: i64, p: DiffPoly) -> Self {
        let mut out = Self::zero();
        if !p.is_zero() {
            out.levels.insert(level, p);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.levels.is_empty()
    }

    /// The polynomial at a level (zero if absent).
    pub fn level(&self, level: i64) -> DiffPoly {
        self.levels.get(&level).cloned().unwrap_or_default()
    }

    /// Iterate `(level, polynomial)` pairs, ascending in level.
    pub fn levels(&self) -> impl Iterator<Item = (i64, &DiffPoly)> {
        self.levels.iter().map(|(&l, p)| (l, p))
    }

    /// The level-0 part as a plain polynomial, if no other level occurs.
    pub fn as_poly(&self) -> Option<DiffPoly> {
        match self.levels.len() {
            0 => Some(DiffPoly::zero()),
            1 => self.levels.get(&0).cloned(),
            _ => None,
        }
    }

    /// Highest derivative order over all levels.
    pub fn order(&self) -> Option<u32> {
        self.levels.values().filter_map(DiffPoly::order).max()
    }

    fn insert(&mut self, level: i64, p: DiffPoly) {
        if !p.is_zero() {
            self.levels.insert(level, p);
        }
    }

    pub fn scale(&self, c: &Rational) -> ExpDiffPoly {
        if c.is_zero() {
            return ExpDiffPoly::zero();
        }
        let mut out = ExpDiffPoly::zero();
        for (&l, p) in &self.levels {
            out.insert(l, p.scale(c));
        }
        out
    }

    pub fn pow(&self, exp: u32) -> ExpDiffPoly {
        let mut out = ExpDiffPoly::from_poly(DiffPoly::one());
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative; every level is treated independently
    /// because `E` does not depend on `x` or the jet variables.
    pub fn partial(&self, var: Var) -> ExpDiffPoly {
        let mut out = ExpDiffPoly::zero();
        for (&l, p) in &self.levels {
            out.insert(l, p.partial(var));
        }
        out
    }

    /// Total derivative: `D(p·E^λ) = (D(p) + λ·y·p)·E^λ`.
    pub fn total_derivative(&self) -> ExpDiffPoly {
        let mut out = ExpDiffPoly::zero();
        for (&l, p) in &self.levels {
            let mut q = p.total_derivative();
            if l != 0 {
                q = &q + &(&DiffPoly::y() * p).scale(&Rational::from_integer(l.into()));
            }
            out.insert(l, q);
        }
        out
    }

    /// Evaluate at a jet, substituting `e_value` for `E`.
    ///
    /// `e_value` must be nonzero when negative levels are present (it
    /// stands for a value of `exp[∫y dx]`, so it is normally positive).
    pub fn eval(&self, jet: &Jet, e_value: &Rational) -> Result<Rational, DiffAlgError> {
        let mut acc = Rational::zero();
        for (&l, p) in &self.levels {
            if l < 0 && e_value.is_zero() {
                return Err(DiffAlgError::ZeroExponentialBase);
            }
            let factor = if l == 0 {
                num_traits::One::one()
            } else {
                e_value.pow(l as i32)
            };
            acc += p.eval(jet)? * factor;
        }
        Ok(acc)
    }
}

impl From<DiffPoly> for ExpDiffPoly {
    fn from(p: DiffPoly) -> Self {
        ExpDiffPoly::from_poly(p)
    }
}

impl Add for &ExpDiffPoly {
    type Output = ExpDiffPoly;
    fn add(self, rhs: &ExpDiffPoly) -> ExpDiffPoly {
        let mut out = self.clone();
        for (&l, p) in &rhs.levels {
            let sum = &out.level(l) + p;
            if sum.is_zero() {
                out.levels.remove(&l);
            } else {
                out.levels.insert(l, sum);
            }
        }
        out
    }
}

impl Sub for &ExpDiffPoly {
    type Output = ExpDiffPoly;
    fn sub(self, rhs: &ExpDiffPoly) -> ExpDiffPoly {
        self + &(-rhs)
    }
}

impl Mul for &ExpDiffPoly {
    type Output = ExpDiffPoly;
    fn mul(self, rhs: &ExpDiffPoly) -> ExpDiffPoly {
        // Exponential weights add levelwise.
        let mut out = ExpDiffPoly::zero();
        for (&la, pa) in &self.levels {
            for (&lb, pb) in &rhs.levels {
                let l = la + lb;
                let sum = &out.level(l) + &(pa * pb);
                if sum.is_zero() {
                    out.levels.remove(&l);
                } else {
                    out.levels.insert(l, sum);
                }
            }
        }
        out
    }
}

impl Neg for &ExpDiffPoly {
    type Output = ExpDiffPoly;
    fn neg(self) -> ExpDiffPoly {
        let mut out = ExpDiffPoly::zero();
        for (&l, p) in &self.levels {
            out.insert(l, -p);
        }
        out
    }
}

impl fmt::Display for ExpDiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&l, p) in &self.levels {
            if l == 0 {
                for (m, c) in p.terms_desc() {
                    if first {
                        if c.is_negative() {
                            write!(f, "-")?;
                        }
                    } else if c.is_negative() {
                        write!(f, " - ")?;
                    } else {
                        write!(f, " + ")?;
                    }
                    first = false;
                    fmt_term(f, &c.abs(), m)?;
                }
            } else {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "({p})*E^{l}")?;
            }
        }
        Ok(())
    }
}
