//! Reduction modulo the differential ideal of a monic equation.

use alloc::vec::Vec;

use num_traits::One;

use super::monomial::JetMonomial;
use super::poly::DiffPoly;
use super::{DiffAlgError, ExpDiffPoly};

/// Rewrites polynomials modulo `eqn = 0` and its total derivatives.
///
/// The equation must be monic-linear in its highest derivative `y^(n)`:
/// that derivative occurs exactly once, as a bare monomial with
/// coefficient 1 (every sequence member has this shape). Reduction
/// eliminates all derivatives of order ≥ n, highest first, substituting
/// `y^(n+j) := D^j(y^(n) − eqn)` and re-substituting until only orders
/// below n remain.
///
/// The substitution chain `D^j(...)` is computed lazily and cached, so a
/// reducer is worth keeping alive across a verification suite. Each
/// thread should own its reducer; the cached values are deterministic.
#[derive(Clone, Debug)]
pub struct Reducer {
    top: u32,
    /// `chain[j] = D^j(y^(top) − eqn)`, order ≤ top − 1 + j.
    chain: Vec<DiffPoly>,
}

impl Reducer {
    pub fn new(eqn: &DiffPoly) -> Result<Self, DiffAlgError> {
        let top = eqn.order().ok_or(DiffAlgError::NonMonicEquation)?;
        // Exactly one term may contain y^(top): the bare monomial, coeff 1.
        let lead = JetMonomial::jet_power(top, 1);
        if !eqn.coeff(&lead).is_one() {
            return Err(DiffAlgError::NonMonicEquation);
        }
        let improper = eqn.terms().any(|(m, _)| m.jet_exp(top) > 0 && *m != lead);
        if improper {
            return Err(DiffAlgError::NonMonicEquation);
        }
        let base = &DiffPoly::jet(top) - eqn;
        Ok(Reducer {
            top,
            chain: alloc::vec![base],
        })
    }

    /// Order of the equation this reducer eliminates from.
    pub fn order(&self) -> u32 {
        self.top
    }

    fn substitution(&mut self, j: usize) -> DiffPoly {
        while self.chain.len() <= j {
            let next = self.chain.last().unwrap().total_derivative();
            self.chain.push(next);
        }
        self.chain[j].clone()
    }

    /// Reduce a plain polynomial to one of order < n.
    pub fn reduce_poly(&mut self, p: &DiffPoly) -> DiffPoly {
        let mut cur = p.clone();
        while let Some(m) = cur.order() {
            if m < self.top {
                break;
            }
            let replacement = self.substitution((m - self.top) as usize);
            cur = cur.substitute_jet(m, &replacement);
        }
        cur
    }

    /// Reduce levelwise; the exponential weight is untouched.
    pub fn reduce(&mut self, p: &ExpDiffPoly) -> ExpDiffPoly {
        let mut out = ExpDiffPoly::zero();
        for (l, q) in p.levels() {
            out = &out + &ExpDiffPoly::at_level(l, self.reduce_poly(q));
        }
        out
    }
}

/// One-shot reduction of `p` modulo `eqn`.
pub fn reduce_mod(p: &ExpDiffPoly, eqn: &DiffPoly) -> Result<ExpDiffPoly, DiffAlgError> {
    Ok(Reducer::new(eqn)?.reduce(p))
}

#[cfg(test)]
mod tests {
    use super::super::{rat_int, Var};
    use super::*;

    fn member_two() -> DiffPoly {
        let mut p = DiffPoly::jet(2);
        p.add_term(
            JetMonomial::jet_power(0, 1).mul(&JetMonomial::jet_power(1, 1)),
            rat_int(3),
        );
        p.add_term(JetMonomial::jet_power(0, 3), rat_int(1));
        p
    }

    #[test]
    fn self_reduction_vanishes() {
        let r2 = ExpDiffPoly::from_poly(member_two());
        assert!(reduce_mod(&r2, &member_two()).unwrap().is_zero());
    }

    #[test]
    fn second_derivative_on_shell() {
        // Solving y'' + 3yy' + y^3 = 0 for y'' gives -3yy' - y^3.
        let reduced = reduce_mod(&DiffPoly::jet(2).into(), &member_two()).unwrap();
        let expected =
            &(&DiffPoly::y() * &DiffPoly::jet(1)).scale(&rat_int(-3)) - &DiffPoly::y().pow(3);
        assert_eq!(reduced.as_poly().unwrap(), expected);
    }

    #[test]
    fn third_derivative_on_shell() {
        // Differentiating the constraint and re-substituting gives
        // y''' = -3y'^2 + 6y^2y' + 3y^4.
        let reduced = reduce_mod(&DiffPoly::jet(3).into(), &member_two()).unwrap();
        let mut expected = DiffPoly::jet(1).pow(2).scale(&rat_int(-3));
        expected = &expected + &(&DiffPoly::y().pow(2) * &DiffPoly::jet(1)).scale(&rat_int(6));
        expected = &expected + &DiffPoly::y().pow(4).scale(&rat_int(3));
        assert_eq!(reduced.as_poly().unwrap(), expected);
    }

    #[test]
    fn reduction_is_idempotent() {
        let p: ExpDiffPoly = (&DiffPoly::jet(4) * &DiffPoly::jet(2)).into();
        let mut reducer = Reducer::new(&member_two()).unwrap();
        let once = reducer.reduce(&p);
        assert_eq!(reducer.reduce(&once), once);
        assert!(once.order().unwrap_or(0) < 2);
    }

    #[test]
    fn rejects_non_monic() {
        let eqn = member_two().scale(&rat_int(2));
        assert_eq!(
            Reducer::new(&eqn).unwrap_err(),
            DiffAlgError::NonMonicEquation
        );
        // y·y'' is nonlinear in the top derivative even with a monic bare term.
        let eqn = &member_two() + &(&DiffPoly::y() * &DiffPoly::jet(2));
        assert_eq!(
            Reducer::new(&eqn).unwrap_err(),
            DiffAlgError::NonMonicEquation
        );
        assert!(Reducer::new(&DiffPoly::constant(rat_int(1))).is_err());
    }

    #[test]
    fn commutation_identity_spot_check() {
        // ∂_{y^k} D = D ∂_{y^k} + ∂_{y^{k-1}} on a mixed polynomial.
        let p =
            &(&DiffPoly::y() * &DiffPoly::jet(2).pow(2)) + &(&DiffPoly::x() * &DiffPoly::jet(1));
        for k in 1..=3u32 {
            let lhs = p.total_derivative().partial(Var::Jet(k));
            let rhs = &p.partial(Var::Jet(k)).total_derivative() + &p.partial(Var::Jet(k - 1));
            assert_eq!(lhs, rhs, "commutation fails at k = {k}");
        }
    }
}
