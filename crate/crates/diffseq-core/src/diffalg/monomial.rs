//! Jet monomials: power products of `x` and the derivative symbols.

use alloc::collections::BTreeMap;
use core::cmp::Ordering;
use core::fmt;

/// A variable of the jet space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    /// The independent variable `x`.
    X,
    /// The derivative `y^(k)`; `Jet(0)` is `y` itself.
    Jet(u32),
}

/// A power product `x^a · Π_k (y^(k))^{e_k}` with all exponents positive.
///
/// Monomials carry the canonical ordering used for printing and
/// serialisation: compare derivative exponents from the highest order
/// downwards, then the power of `x`. Sorting descending under this order
/// reproduces the conventional way the sequence members are written
/// (`y'' + 3yy' + y^3`, highest derivative first).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JetMonomial {
    x_exp: u32,
    derivs: BTreeMap<u32, u32>,
}

impl JetMonomial {
    /// The empty product.
    pub fn one() -> Self {
        JetMonomial {
            x_exp: 0,
            derivs: BTreeMap::new(),
        }
    }

    /// `x^exp`.
    pub fn x_power(exp: u32) -> Self {
        JetMonomial {
            x_exp: exp,
            derivs: BTreeMap::new(),
        }
    }

    /// `(y^(order))^exp`; an exponent of zero yields the empty product.
    pub fn jet_power(order: u32, exp: u32) -> Self {
        let mut derivs = BTreeMap::new();
        if exp > 0 {
            derivs.insert(order, exp);
        }
        JetMonomial { x_exp: 0, derivs }
    }

    /// A single variable to the first power.
    pub fn var(v: Var) -> Self {
        match v {
            Var::X => Self::x_power(1),
            Var::Jet(k) => Self::jet_power(k, 1),
        }
    }

    pub fn is_one(&self) -> bool {
        self.x_exp == 0 && self.derivs.is_empty()
    }

    pub fn x_exp(&self) -> u32 {
        self.x_exp
    }

    /// Exponent of `y^(order)` in this monomial (0 if absent).
    pub fn jet_exp(&self, order: u32) -> u32 {
        self.derivs.get(&order).copied().unwrap_or(0)
    }

    /// Iterate `(order, exponent)` pairs, ascending in order.
    pub fn jet_factors(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.derivs.iter().map(|(&k, &e)| (k, e))
    }

    /// Highest derivative order present, `None` if none.
    pub fn max_order(&self) -> Option<u32> {
        self.derivs.keys().next_back().copied()
    }

    /// Total degree in the jet variables, `Σ_k e_k`.
    pub fn jet_degree(&self) -> u32 {
        self.derivs.values().sum()
    }

    /// Grading weight `Σ_k (k+1)·e_k − x_exp`.
    pub fn weight(&self) -> i64 {
        let jets: i64 = self
            .derivs
            .iter()
            .map(|(&k, &e)| (k as i64 + 1) * e as i64)
            .sum();
        jets - self.x_exp as i64
    }

    /// Product of two monomials (exponents add).
    pub fn mul(&self, other: &JetMonomial) -> JetMonomial {
        let mut derivs = self.derivs.clone();
        for (&k, &e) in &other.derivs {
            *derivs.entry(k).or_insert(0) += e;
        }
        JetMonomial {
            x_exp: self.x_exp + other.x_exp,
            derivs,
        }
    }

    /// Copy with the exponent of `y^(order)` replaced (`0` removes it).
    pub(crate) fn with_jet_exp(&self, order: u32, exp: u32) -> JetMonomial {
        let mut m = self.clone();
        if exp == 0 {
            m.derivs.remove(&order);
        } else {
            m.derivs.insert(order, exp);
        }
        m
    }

    /// Copy with the `x` exponent replaced.
    pub(crate) fn with_x_exp(&self, exp: u32) -> JetMonomial {
        let mut m = self.clone();
        m.x_exp = exp;
        m
    }
}

impl Ord for JetMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Compare jet exponents from the highest derivative order down;
        // the first difference decides. Ties fall through to the x power.
        let top = self.max_order().max(other.max_order());
        if let Some(top) = top {
            for k in (0..=top).rev() {
                match self.jet_exp(k).cmp(&other.jet_exp(k)) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
            }
        }
        self.x_exp.cmp(&other.x_exp)
    }
}

impl PartialOrd for JetMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Append the display form of `y^(order)` to the formatter.
fn fmt_jet_symbol(f: &mut fmt::Formatter<'_>, order: u32) -> fmt::Result {
    match order {
        0 => write!(f, "y"),
        1 => write!(f, "y'"),
        2 => write!(f, "y''"),
        3 => write!(f, "y'''"),
        k => write!(f, "y^({k})"),
    }
}

impl fmt::Display for JetMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        if self.x_exp > 0 {
            first = false;
            if self.x_exp == 1 {
                write!(f, "x")?;
            } else {
                write!(f, "x^{}", self.x_exp)?;
            }
        }
        for (&k, &e) in &self.derivs {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            fmt_jet_symbol(f, k)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(x: u32, derivs: &[(u32, u32)]) -> JetMonomial {
        let mut out = JetMonomial::x_power(x);
        for &(k, e) in derivs {
            out = out.mul(&JetMonomial::jet_power(k, e));
        }
        out
    }

    #[test]
    fn canonical_order_matches_member_layout() {
        // The display order of R~4 is y'''' > yy''' > y'y'' > y^2y'' > yy'^2 > y^3y' > y^5.
        let terms = [
            m(0, &[(4, 1)]),
            m(0, &[(3, 1), (0, 1)]),
            m(0, &[(2, 1), (1, 1)]),
            m(0, &[(2, 1), (0, 2)]),
            m(0, &[(1, 2), (0, 1)]),
            m(0, &[(1, 1), (0, 3)]),
            m(0, &[(0, 5)]),
        ];
        for w in terms.windows(2) {
            assert!(w[0] > w[1], "{} should sort above {}", w[0], w[1]);
        }
    }

    #[test]
    fn x_power_breaks_ties() {
        assert!(m(2, &[(0, 1)]) > m(1, &[(0, 1)]));
        assert!(m(0, &[(0, 1)]) > m(5, &[]));
    }

    #[test]
    fn weight_grading() {
        assert_eq!(m(0, &[(0, 1)]).weight(), 1);
        assert_eq!(m(0, &[(1, 2), (0, 1)]).weight(), 5);
        assert_eq!(m(3, &[(2, 1)]).weight(), 0);
    }

    #[test]
    fn display_notation() {
        use alloc::string::ToString;
        assert_eq!(m(0, &[(1, 2), (0, 1)]).to_string(), "y*y'^2");
        assert_eq!(m(2, &[(4, 1)]).to_string(), "x^2*y^(4)");
        assert_eq!(JetMonomial::one().to_string(), "1");
    }
}
