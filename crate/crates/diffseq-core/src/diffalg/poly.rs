//! Sparse differential polynomials over the rationals.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::jet::Jet;
use super::monomial::{JetMonomial, Var};
use super::{DiffAlgError, Rational};

/// A polynomial in `x` and the jet variables with exact rational
/// coefficients. Zero coefficients are never stored, so structural
/// equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiffPoly {
    terms: BTreeMap<JetMonomial, Rational>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_term(JetMonomial::one(), c)
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::from_term(JetMonomial::var(Var::X), Rational::one())
    }

    /// The jet variable `y^(order)`.
    pub fn jet(order: u32) -> Self {
        Self::from_term(JetMonomial::jet_power(order, 1), Rational::one())
    }

    /// The dependent variable `y`.
    pub fn y() -> Self {
        Self::jet(0)
    }

    pub fn from_term(m: JetMonomial, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a monomial, zero if absent.
    pub fn coeff(&self, m: &JetMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value as a constant, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    /// Iterate terms in ascending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&JetMonomial, &Rational)> {
        self.terms.iter()
    }

    /// Iterate terms in descending canonical order (the display order).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&JetMonomial, &Rational)> {
        self.terms.iter().rev()
    }

    /// Highest derivative order present, `None` when no jet variable
    /// occurs (constants and pure `x` polynomials).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().filter_map(JetMonomial::max_order).max()
    }

    /// Add `c·m` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: JetMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly {
            terms: self.terms.iter().map(|(m, q)| (m.clone(), q * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> DiffPoly {
        let mut out = DiffPoly::one();
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative with respect to a single variable.
    pub fn partial(&self, var: Var) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            match var {
                Var::X => {
                    let e = m.x_exp();
                    if e > 0 {
                        out.add_term(m.with_x_exp(e - 1), c * Rational::from_integer(e.into()));
                    }
                }
                Var::Jet(k) => {
                    let e = m.jet_exp(k);
                    if e > 0 {
                        out.add_term(
                            m.with_jet_exp(k, e - 1),
                            c * Rational::from_integer(e.into()),
                        );
                    }
                }
            }
        }
        out
    }

    /// Total derivative `D = ∂x + Σ_k y^(k+1) ∂_{y^(k)}`.
    pub fn total_derivative(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let e = m.x_exp();
            if e > 0 {
                out.add_term(m.with_x_exp(e - 1), c * Rational::from_integer(e.into()));
            }
            for (k, ek) in m.jet_factors() {
                let lowered = m.with_jet_exp(k, ek - 1);
                let raised = lowered.mul(&JetMonomial::jet_power(k + 1, 1));
                out.add_term(raised, c * Rational::from_integer(ek.into()));
            }
        }
        out
    }

    /// Replace `y^(order)` by `replacement` everywhere, simultaneously.
    pub fn substitute_jet(&self, order: u32, replacement: &DiffPoly) -> DiffPoly {
        let max_exp = self
            .terms
            .keys()
            .map(|m| m.jet_exp(order))
            .max()
            .unwrap_or(0);
        if max_exp == 0 {
            return self.clone();
        }
        // Cache replacement powers up to the largest exponent in use.
        let mut powers: Vec<DiffPoly> = Vec::with_capacity(max_exp as usize + 1);
        powers.push(DiffPoly::one());
        for _ in 1..=max_exp {
            powers.push(&powers[powers.len() - 1] * replacement);
        }
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let e = m.jet_exp(order);
            if e == 0 {
                out.add_term(m.clone(), c.clone());
            } else {
                let rest = DiffPoly::from_term(m.with_jet_exp(order, 0), c.clone());
                out = &out + &(&rest * &powers[e as usize]);
            }
        }
        out
    }

    /// The image under `y^(k) ↦ −y^(k)` for every `k`.
    pub fn negate_jets(&self) -> DiffPoly {
        DiffPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let sign = if m.jet_degree() % 2 == 0 {
                        c.clone()
                    } else {
                        -c.clone()
                    };
                    (m.clone(), sign)
                })
                .collect(),
        }
    }

    /// Grading weight under `weight(y^(k)) = k+1`, `weight(x) = −1`.
    ///
    /// Returns 0 for the zero polynomial by convention.
    pub fn weight(&self) -> Result<i64, DiffAlgError> {
        let mut found: Option<(i64, &JetMonomial)> = None;
        for m in self.terms.keys() {
            let w = m.weight();
            match found {
                None => found = Some((w, m)),
                Some((w0, m0)) if w0 != w => {
                    return Err(DiffAlgError::NotHomogeneous {
                        witness: alloc::format!("{m0} vs {m}"),
                        weight_a: w0,
                        weight_b: w,
                    });
                }
                _ => {}
            }
        }
        Ok(found.map_or(0, |(w, _)| w))
    }

    /// Evaluate at a jet: `x = x0`, `y^(k) = values[k]`.
    pub fn eval(&self, jet: &Jet) -> Result<Rational, DiffAlgError> {
        if let Some(required) = self.order() {
            if (required as usize) >= jet.values().len() {
                return Err(DiffAlgError::JetTooShort {
                    required,
                    available: jet.values().len(),
                });
            }
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut val = c * jet.x0().pow(m.x_exp() as i32);
            for (k, e) in m.jet_factors() {
                val *= jet.values()[k as usize].pow(e as i32);
            }
            acc += val;
        }
        Ok(acc)
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

/// Write one coefficient-monomial pair without a leading sign.
pub(crate) fn fmt_term(
    f: &mut fmt::Formatter<'_>,
    coeff: &Rational,
    m: &JetMonomial,
) -> fmt::Result {
    debug_assert!(coeff.is_positive());
    if m.is_one() {
        write!(f, "{coeff}")
    } else if coeff.is_one() {
        write!(f, "{m}")
    } else {
        write!(f, "{coeff}*{m}")
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms_desc().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            fmt_term(f, &c.abs(), m)?;
        }
        Ok(())
    }
}
