//! Randomised algebraic laws of the differential polynomial ring.

use diffseq_core::diffalg::{rat, DiffPoly, ExpDiffPoly, Jet, JetMonomial, Rational, Reducer, Var};
use diffseq_core::sequence::Sequence;
use proptest::prelude::*;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn arb_monomial() -> impl Strategy<Value = JetMonomial> {
    (
        0u32..=2,
        proptest::collection::btree_map(0u32..=3, 1u32..=2, 0..=2),
    )
        .prop_map(|(x_exp, derivs)| {
            derivs
                .into_iter()
                .fold(JetMonomial::x_power(x_exp), |m, (k, e)| {
                    m.mul(&JetMonomial::jet_power(k, e))
                })
        })
}

fn arb_poly() -> impl Strategy<Value = DiffPoly> {
    proptest::collection::vec((arb_monomial(), arb_rational()), 0..=4).prop_map(|terms| {
        let mut p = DiffPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    })
}

fn arb_exp_poly() -> impl Strategy<Value = ExpDiffPoly> {
    proptest::collection::vec((-1i64..=1, arb_poly()), 1..=2).prop_map(|levels| {
        levels.into_iter().fold(ExpDiffPoly::zero(), |acc, (l, p)| {
            &acc + &ExpDiffPoly::at_level(l, p)
        })
    })
}

fn arb_jet() -> impl Strategy<Value = Jet> {
    (arb_rational(), proptest::collection::vec(arb_rational(), 5))
        .prop_map(|(x0, values)| Jet::new(x0, values))
}

proptest! {
    #[test]
    fn addition_commutes(a in arb_exp_poly(), b in arb_exp_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_commutes(a in arb_exp_poly(), b in arb_exp_poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multiplication_associates(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes(a in arb_exp_poly(), b in arb_exp_poly(), c in arb_exp_poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn subtraction_inverts_addition(a in arb_exp_poly(), b in arb_exp_poly()) {
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn leibniz_rule(a in arb_exp_poly(), b in arb_exp_poly()) {
        let lhs = (&a * &b).total_derivative();
        let rhs = &(&a.total_derivative() * &b) + &(&a * &b.total_derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partial_commutes_with_total_derivative(p in arb_poly(), k in 1u32..=4) {
        // ∂_{y^(k)} ∘ D = D ∘ ∂_{y^(k)} + ∂_{y^(k−1)} on plain polynomials.
        let lhs = p.total_derivative().partial(Var::Jet(k));
        let rhs = &p.partial(Var::Jet(k)).total_derivative() + &p.partial(Var::Jet(k - 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_multiplicative(
        a in arb_poly(),
        b in arb_poly(),
        jet in arb_jet(),
    ) {
        let product = (&a * &b).eval(&jet).unwrap();
        let factors = a.eval(&jet).unwrap() * b.eval(&jet).unwrap();
        prop_assert_eq!(product, factors);
    }

    #[test]
    fn evaluation_is_additive_with_levels(
        a in arb_exp_poly(),
        b in arb_exp_poly(),
        jet in arb_jet(),
        e_num in 1i64..=5,
        e_den in 1i64..=3,
    ) {
        let e = rat(e_num, e_den);
        let sum = (&a + &b).eval(&jet, &e).unwrap();
        let parts = a.eval(&jet, &e).unwrap() + b.eval(&jet, &e).unwrap();
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn reduction_is_idempotent(p in arb_exp_poly(), n in 2u32..=3) {
        let eqn = Sequence::new().member(n);
        let mut reducer = Reducer::new(&eqn).unwrap();
        let once = reducer.reduce(&p);
        prop_assert_eq!(reducer.reduce(&once), once.clone());
        prop_assert!(once.order().unwrap_or(0) < n);
    }

    #[test]
    fn reduction_preserves_on_shell_values(p in arb_poly()) {
        // Evaluate before and after reduction at a jet satisfying the
        // second member (derivatives extended through the solution).
        use diffseq_core::integrals::solution_jet;
        use diffseq_core::diffalg::rat_int;
        let eqn = Sequence::new().member(2);
        let mut reducer = Reducer::new(&eqn).unwrap();
        let reduced = reducer.reduce(&p.clone().into());
        let order = p.order().unwrap_or(0).max(2);
        let a = [rat_int(1), rat_int(3), rat_int(2)];
        // Jet long enough for p, lying on the solution y = P'/P.
        let jet = solution_jet(order, &a, &rat_int(1)).unwrap();
        let lhs = p.eval(&jet).unwrap();
        let rhs = reduced.eval(&jet, &rat_int(1)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weight_adds_over_monomial_products(a in arb_monomial(), b in arb_monomial()) {
        let pa = DiffPoly::from_term(a, rat(1, 1));
        let pb = DiffPoly::from_term(b, rat(1, 1));
        let wa = pa.weight().unwrap();
        let wb = pb.weight().unwrap();
        prop_assert_eq!((&pa * &pb).weight().unwrap(), wa + wb);
    }

    #[test]
    fn weight_additivity_for_homogeneous_products(
        a in arb_poly(),
        b in arb_poly(),
    ) {
        // Whenever both factors are weight-homogeneous and nonzero, the
        // product's weight is the sum.
        if let (Ok(wa), Ok(wb)) = (a.weight(), b.weight()) {
            if !a.is_zero() && !b.is_zero() {
                prop_assert_eq!((&a * &b).weight().unwrap(), wa + wb);
            }
        }
    }
}
