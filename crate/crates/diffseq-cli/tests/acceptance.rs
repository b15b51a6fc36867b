//! Acceptance suite: one test per release criterion, each printing a
//! pass line with its elapsed time and asserting the stated bound.
//!
//! Every expected polynomial below is written out literally from the
//! published formulas, so these tests are independent of the generation
//! code they check.

use std::process::Command;
use std::time::{Duration, Instant};

use diffseq_cli::commands::{exit_code, CliError, Outcome};
use diffseq_cli::parse::parse_poly;
use diffseq_cli::rng::SplitMix64;
use diffseq_core::diffalg::{rat_int, DiffPoly, JetMonomial, Rational, Reducer};
use diffseq_core::integrals::{
    check_linearisation, first_integral, invariant, solution_jet, verify_solution_identity,
    CombinationSpec,
};
use diffseq_core::sequence::{
    check_gradient_recurrence, check_interleave, check_structural_invariants, generate_member,
    partition_count, verify_matrix_identities, Sequence,
};
use diffseq_core::singularity::{painleve_report, resonance_polynomial};
use diffseq_core::symmetry::{
    check_nonlocal_symmetries, check_sl2_closure, check_symmetry, csg_certify, projective, scaling,
    second_member_point_symmetries,
};
use diffseq_core::unipoly::UniPoly;
use num_traits::Zero;

/// Build a polynomial from `(coefficient, [(order, exponent), ...])`
/// descriptions.
fn poly(terms: &[(i64, &[(u32, u32)])]) -> DiffPoly {
    let mut p = DiffPoly::zero();
    for &(c, factors) in terms {
        let mut m = JetMonomial::one();
        for &(k, e) in factors {
            m = m.mul(&JetMonomial::jet_power(k, e));
        }
        p.add_term(m, rat_int(c));
    }
    p
}

fn finish(criterion: u32, label: &str, start: Instant, bound: Duration) {
    let elapsed = start.elapsed();
    println!("[PASS] criterion {criterion}: {label} ({elapsed:.2?} elapsed, bound {bound:.0?})");
    assert!(
        elapsed < bound,
        "criterion {criterion} exceeded its time bound: {elapsed:?} >= {bound:?}"
    );
}

#[test]
fn criterion_01_generation_fidelity() {
    let start = Instant::now();
    let expected_plain: [DiffPoly; 4] = [
        // y' + y^2
        poly(&[(1, &[(1, 1)]), (1, &[(0, 2)])]),
        // y'' + 3yy' + y^3
        poly(&[(1, &[(2, 1)]), (3, &[(0, 1), (1, 1)]), (1, &[(0, 3)])]),
        // y''' + 4yy'' + 3y'^2 + 6y^2y' + y^4
        poly(&[
            (1, &[(3, 1)]),
            (4, &[(0, 1), (2, 1)]),
            (3, &[(1, 2)]),
            (6, &[(0, 2), (1, 1)]),
            (1, &[(0, 4)]),
        ]),
        // y'''' + 5yy''' + 10y'y'' + 10y^2y'' + 15yy'^2 + 10y^3y' + y^5
        poly(&[
            (1, &[(4, 1)]),
            (5, &[(0, 1), (3, 1)]),
            (10, &[(1, 1), (2, 1)]),
            (10, &[(0, 2), (2, 1)]),
            (15, &[(0, 1), (1, 2)]),
            (10, &[(0, 3), (1, 1)]),
            (1, &[(0, 5)]),
        ]),
    ];
    for (idx, expected) in expected_plain.iter().enumerate() {
        let n = idx as u32 + 1;
        assert_eq!(&generate_member(n, false).body, expected, "member {n}");
    }
    let expected_adjoint: [DiffPoly; 5] = [
        // y' - y^2
        poly(&[(1, &[(1, 1)]), (-1, &[(0, 2)])]),
        // y'' - 3yy' + y^3
        poly(&[(1, &[(2, 1)]), (-3, &[(0, 1), (1, 1)]), (1, &[(0, 3)])]),
        // y''' - 4yy'' - 3y'^2 + 6y^2y' - y^4
        poly(&[
            (1, &[(3, 1)]),
            (-4, &[(0, 1), (2, 1)]),
            (-3, &[(1, 2)]),
            (6, &[(0, 2), (1, 1)]),
            (-1, &[(0, 4)]),
        ]),
        // y'''' - 5yy''' - 10y'y'' + 10y^2y'' + 15yy'^2 - 10y^3y' + y^5
        poly(&[
            (1, &[(4, 1)]),
            (-5, &[(0, 1), (3, 1)]),
            (-10, &[(1, 1), (2, 1)]),
            (10, &[(0, 2), (2, 1)]),
            (15, &[(0, 1), (1, 2)]),
            (-10, &[(0, 3), (1, 1)]),
            (1, &[(0, 5)]),
        ]),
        // y^(5) - 6yy^(4) - 15y'y''' + 15y^2y''' + 60yy'y'' - 10y''^2
        //   - 20y^3y'' + 15y'^3 - 45y^2y'^2 + 15y^4y' - y^6
        poly(&[
            (1, &[(5, 1)]),
            (-6, &[(0, 1), (4, 1)]),
            (-15, &[(1, 1), (3, 1)]),
            (15, &[(0, 2), (3, 1)]),
            (60, &[(0, 1), (1, 1), (2, 1)]),
            (-10, &[(2, 2)]),
            (-20, &[(0, 3), (2, 1)]),
            (15, &[(1, 3)]),
            (-45, &[(0, 2), (1, 2)]),
            (15, &[(0, 4), (1, 1)]),
            (-1, &[(0, 6)]),
        ]),
    ];
    for (idx, expected) in expected_adjoint.iter().enumerate() {
        let n = idx as u32 + 1;
        assert_eq!(
            &generate_member(n, true).body,
            expected,
            "adjoint member {n}"
        );
    }
    finish(
        1,
        "generation matches the published members",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_02_gradient_recurrence() {
    let start = Instant::now();
    let mut seq = Sequence::new();
    for n in 1..=12 {
        check_gradient_recurrence(n, &mut seq).unwrap();
    }
    finish(
        2,
        "gradient recurrence holds for n <= 12",
        start,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_03_interleaving_recurrence() {
    let start = Instant::now();
    let mut seq = Sequence::new();
    for n in 0..=10 {
        check_interleave(n, &mut seq).unwrap();
    }
    finish(
        3,
        "interleaving recurrence holds for n <= 10",
        start,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_04_matrix_identities() {
    let start = Instant::now();
    let mut seq = Sequence::new();
    for n in 1..=8 {
        verify_matrix_identities(n, &mut seq).unwrap();
    }
    finish(
        4,
        "inverse pair, gradient transport, solve and reconstruction for n <= 8",
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_05_symmetry_suite() {
    let start = Instant::now();
    let mut seq = Sequence::new();
    use diffseq_core::diffalg::ExpDiffPoly;
    for n in 1..=10u32 {
        // Scaling eigenvalue −(n+1), projective eigenvalue −2x(n+1).
        let check = check_symmetry(&scaling().into(), n, &mut seq);
        assert_eq!(
            check.cofactor,
            Some(ExpDiffPoly::from_poly(DiffPoly::constant(rat_int(
                -(n as i64 + 1)
            )))),
            "scaling cofactor at n = {n}"
        );
        let check = check_symmetry(&projective(n).into(), n, &mut seq);
        assert_eq!(
            check.cofactor,
            Some(ExpDiffPoly::from_poly(
                DiffPoly::x().scale(&rat_int(-2 * (n as i64 + 1)))
            )),
            "projective cofactor at n = {n}"
        );
        check_sl2_closure(n).unwrap();
    }
    for g in second_member_point_symmetries() {
        assert!(check_symmetry(&g.into(), 2, &mut seq).is_symmetry);
    }
    for n in 1..=8 {
        check_nonlocal_symmetries(n, &mut seq).unwrap();
        csg_certify(n, &mut seq).unwrap();
    }
    // The solved gradient block at order 4, written out literally.
    let cert = csg_certify(4, &mut seq).unwrap();
    let block: [DiffPoly; 4] = [
        // ∂f/∂y = −5(y''' + 4yy'' + 3y'^2 + 6y^2y' + y^4)
        poly(&[
            (-5, &[(3, 1)]),
            (-20, &[(0, 1), (2, 1)]),
            (-15, &[(1, 2)]),
            (-30, &[(0, 2), (1, 1)]),
            (-5, &[(0, 4)]),
        ]),
        // ∂f/∂y' = −10(y'' + 3yy' + y^3)
        poly(&[(-10, &[(2, 1)]), (-30, &[(0, 1), (1, 1)]), (-10, &[(0, 3)])]),
        // ∂f/∂y'' = −10(y' + y^2)
        poly(&[(-10, &[(1, 1)]), (-10, &[(0, 2)])]),
        // ∂f/∂y''' = −5y
        poly(&[(-5, &[(0, 1)])]),
    ];
    for (i, expected) in block.iter().enumerate() {
        assert_eq!(
            cert.gradient.entry(i + 1),
            expected,
            "gradient entry {}",
            i + 1
        );
    }
    finish(
        5,
        "eigen-relations, brackets, nonlocal symmetries and the group certificate",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_06_painleve_reproduction() {
    let start = Instant::now();
    let mut seq = Sequence::new();
    // The published table for the first four members.
    let table: [&[(i64, &[i64])]; 4] = [
        &[(1, &[-1])],
        &[(1, &[-1, 1]), (2, &[-2, -1])],
        &[(1, &[-1, 1, 2]), (2, &[-2, -1, 1]), (3, &[-3, -2, -1])],
        &[
            (1, &[-1, 1, 2, 3]),
            (2, &[-2, -1, 1, 2]),
            (3, &[-3, -2, -1, 1]),
            (4, &[-4, -3, -2, -1]),
        ],
    ];
    for (idx, rows) in table.iter().enumerate() {
        let n = idx as u32 + 1;
        let report = painleve_report(n, None, &mut seq).unwrap();
        assert_eq!(report.branches.len(), rows.len(), "branch count at n = {n}");
        for (branch, &(alpha, resonances)) in report.branches.iter().zip(rows.iter()) {
            assert_eq!(branch.p, -1);
            assert_eq!(branch.alpha, rat_int(alpha), "alpha at n = {n}");
            assert_eq!(
                branch.resonances, resonances,
                "resonances at n = {n}, alpha = {alpha}"
            );
        }
    }
    // Closed form and pattern rule up to order 8, compatibility to 6.
    for n in 1..=8u32 {
        let report = painleve_report(n, None, &mut seq).unwrap();
        assert!(report.closed_form_holds, "closed form at n = {n}");
        assert!(report.pattern_rule_holds, "pattern rule at n = {n}");
        assert!(report.painleve_pass, "overall verdict at n = {n}");
        if n <= 6 {
            for branch in &report.branches {
                let positive: Vec<i64> = branch
                    .resonances
                    .iter()
                    .copied()
                    .filter(|&r| r > 0)
                    .collect();
                let tested: Vec<i64> = branch.compatibility.iter().map(|&(r, _)| r).collect();
                assert_eq!(tested, positive, "compatibility coverage at n = {n}");
                assert!(branch.compatibility.iter().all(|&(_, ok)| ok));
            }
        }
    }
    // The second member's first branch factorises as (r − 1)(r + 1).
    let q = resonance_polynomial(&seq.member(2), -1, &rat_int(1)).unwrap();
    let factored = &UniPoly::from_ints(&[-1, 1]) * &UniPoly::from_ints(&[1, 1]);
    assert_eq!(q, factored);
    finish(
        6,
        "singularity tables, pattern rule and compatibility",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_07_solutions_and_invariants() {
    let start = Instant::now();
    let mut rng = SplitMix64::new(0xACCE97);
    let mut seq = Sequence::new();
    for n in 1..=8u32 {
        let member = seq.member(n);
        let mut produced = 0;
        while produced < 100 {
            let coeffs: Vec<Rational> = (0..=n).map(|_| rng.small_rational()).collect();
            let p = UniPoly::from_coeffs(coeffs.clone());
            if p.is_zero() {
                continue;
            }
            let x0 = rng.small_rational();
            if p.eval(&x0).is_zero() {
                continue;
            }
            let jet = solution_jet(n, &coeffs, &x0).unwrap();
            assert!(member.eval(&jet).unwrap().is_zero(), "sample at n = {n}");
            produced += 1;
        }
    }
    for n in 1..=6u32 {
        let coeffs: Vec<Rational> = (0..=n).map(|_| rng.small_rational()).collect();
        let mut p = UniPoly::from_coeffs(coeffs);
        if p.is_zero() {
            p = UniPoly::one();
        }
        verify_solution_identity(n, &p, 3).unwrap();
        // Conservation of every invariant, checked through the public
        // reduction route.
        let eqn = seq.member(n);
        let mut reducer = Reducer::new(&eqn).unwrap();
        for j in 1..=n + 1 {
            let inv = invariant(n, j, &mut seq).unwrap();
            assert!(
                reducer.reduce(&inv.body.total_derivative()).is_zero(),
                "invariant {j} of member {n}"
            );
        }
    }
    for n in 1..=4u32 {
        for i in 1..=n + 1 {
            for j in 1..=n + 1 {
                if i != j {
                    let fi = first_integral(n, i, j, &mut seq).unwrap();
                    assert_eq!(fi.net_weight(), 0);
                }
            }
        }
    }
    finish(
        7,
        "solution samples, invariants and first integrals",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_08_linearisation_of_combinations() {
    let start = Instant::now();
    let mut rng = SplitMix64::new(0x11EA81);
    for case in 0..20 {
        let order = rng.in_range(1, 4) as u32;
        let coeffs: Vec<UniPoly> = (0..=order)
            .map(|i| {
                // Mix constant and polynomial coefficients up to degree 2.
                let degree = rng.in_range(0, 2) as usize;
                let mut c: Vec<Rational> = (0..=degree).map(|_| rng.small_rational()).collect();
                if i == order {
                    let top = c.len() - 1;
                    c[top] = rng.small_nonzero_rational();
                }
                UniPoly::from_coeffs(c)
            })
            .collect();
        let spec = CombinationSpec::new(coeffs).unwrap();
        let p = loop {
            let deg = rng.in_range(1, 5) as usize;
            let coeffs: Vec<Rational> = (0..=deg).map(|_| rng.small_rational()).collect();
            let p = UniPoly::from_coeffs(coeffs);
            if !p.is_zero() {
                break p;
            }
        };
        check_linearisation(&spec, &p, 3).unwrap_or_else(|e| panic!("case {case}: {e}"));
    }
    finish(
        8,
        "twenty random combinations linearise exactly",
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_09_structural_properties() {
    let start = Instant::now();
    let mut seq = Sequence::new();
    let expected = [2u64, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101];
    for n in 1..=12u32 {
        assert_eq!(partition_count(n + 1), expected[n as usize - 1]);
        assert_eq!(seq.member(n).term_count() as u64, expected[n as usize - 1]);
        check_structural_invariants(n, &mut seq).unwrap();
    }
    finish(
        9,
        "term counts, weights and positivity for n <= 12",
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_10_cli_contract() {
    let start = Instant::now();
    // Round trip: parse(render(p)) = p for 1000 seeded random polynomials.
    let mut rng = SplitMix64::new(0xC11);
    for case in 0..1000 {
        let degree = rng.in_range(0, 6) as usize;
        let coeffs: Vec<Rational> = (0..=degree)
            .map(|_| {
                if rng.in_range(0, 3) == 0 {
                    Rational::zero()
                } else {
                    rng.small_rational()
                }
            })
            .collect();
        let p = UniPoly::from_coeffs(coeffs);
        let rendered = p.to_string();
        let reparsed =
            parse_poly(&rendered).unwrap_or_else(|e| panic!("case {case}: {rendered:?}: {e}"));
        assert_eq!(reparsed, p, "case {case}: {rendered:?}");
    }
    // Exit-code mapping covers all three outcomes.
    assert_eq!(exit_code(&Ok(Outcome::Success)), 0);
    assert_eq!(exit_code(&Ok(Outcome::VerificationFailed)), 1);
    assert_eq!(exit_code(&Err(CliError::Usage("bad".into()))), 2);
    // Binary-level: success and usage paths.
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_diffseq"))
            .args(args)
            .env_remove("DIFFSEQ_MAX_N")
            .output()
            .expect("binary runs")
    };
    assert_eq!(run(&["gen", "--n", "2"]).status.code(), Some(0));
    assert_eq!(run(&["gen", "--n", "99"]).status.code(), Some(2));
    assert_eq!(run(&["combine", "--coeffs", "2/0"]).status.code(), Some(2));
    // The full verification sweep succeeds within its budget.
    let sweep = run(&["verify", "--suite", "all", "--max-n", "6"]);
    assert_eq!(sweep.status.code(), Some(0), "verify --suite all --max-n 6");
    let text = String::from_utf8(sweep.stdout).unwrap();
    assert!(text.contains("checks passed"));
    finish(
        10,
        "round trip, exit codes and the full sweep",
        start,
        Duration::from_secs(180),
    );
}
