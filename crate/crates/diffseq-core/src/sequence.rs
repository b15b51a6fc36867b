//! Generation of the Riccati sequence and its adjoint, and the exact
//! recurrences they satisfy.
//!
//! The n-th member is `R~n = (D + y)^n y` (adjoint: `(D − y)^n y`), always
//! monic in `y^(n)` and weight-homogeneous of weight `n + 1`. Alongside
//! generation this module verifies:
//!
//! - the gradient recurrence `∂R~n/∂y^(k) = C(n+1, k+1)·R~(n−k−1)`, with
//!   `R~(−1) = 1` by convention;
//! - the interleaving recurrence
//!   `R~n = R~n^a + Σ_{i=1..n} C(n+1, i)·R~(i−1)^a·R~(n−i)`;
//! - the triangular matrix identities: the upper-triangular matrices built
//!   from the two sequences are mutually inverse, and they carry the
//!   gradient vector of the member onto the binomial-weighted member
//!   vector.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::diffalg::{binomial, DiffPoly, ExpDiffPoly, JetMonomial, Rational, Var};
use crate::report::VerificationFailure;

/// Memo table for members of both sequences.
///
/// Generation is incremental, so a suite that touches every member up to
/// some order should share one of these per thread. All stored values are
/// immutable once computed and identical across threads.
#[derive(Clone, Debug, Default)]
pub struct Sequence {
    plain: Vec<DiffPoly>,
    adjoint: Vec<DiffPoly>,
}

impl Sequence {
    pub fn new() -> Self {
        Sequence::default()
    }

    fn extend_to(table: &mut Vec<DiffPoly>, n: u32, adjoint: bool) {
        if table.is_empty() {
            table.push(DiffPoly::y());
        }
        while table.len() <= n as usize {
            let prev = table.last().unwrap();
            let yp = &DiffPoly::y() * prev;
            let next = if adjoint {
                &prev.total_derivative() - &yp
            } else {
                &prev.total_derivative() + &yp
            };
            table.push(next);
        }
    }

    /// The left side `R~n` of the n-th member.
    pub fn member(&mut self, n: u32) -> DiffPoly {
        Self::extend_to(&mut self.plain, n, false);
        self.plain[n as usize].clone()
    }

    /// The left side of the n-th adjoint member.
    pub fn adjoint_member(&mut self, n: u32) -> DiffPoly {
        Self::extend_to(&mut self.adjoint, n, true);
        self.adjoint[n as usize].clone()
    }

    /// Member with the `R~(−1) = 1` convention for index −1.
    pub fn member_ext(&mut self, n: i64, adjoint: bool) -> DiffPoly {
        if n == -1 {
            return DiffPoly::one();
        }
        assert!(n >= 0, "member index below -1");
        if adjoint {
            self.adjoint_member(n as u32)
        } else {
            self.member(n as u32)
        }
    }
}

/// A generated member together with its index and flavour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceMember {
    pub n: u32,
    pub adjoint: bool,
    pub body: DiffPoly,
}

/// Expand `(D ± y)^n y` fully.
pub fn generate_member(n: u32, adjoint: bool) -> SequenceMember {
    let mut seq = Sequence::new();
    let body = if adjoint {
        seq.adjoint_member(n)
    } else {
        seq.member(n)
    };
    SequenceMember { n, adjoint, body }
}

/// Binomial-weighted member vector: entry i (1-based) is
/// `C(n+1, i)·R~(n−i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LVector {
    pub n: u32,
    pub adjoint: bool,
    entries: Vec<DiffPoly>,
}

impl LVector {
    pub fn build(n: u32, adjoint: bool, seq: &mut Sequence) -> Self {
        let entries = (1..=n as i64)
            .map(|i| {
                seq.member_ext(n as i64 - i, adjoint)
                    .scale(&binomial((n + 1) as u64, i as u64))
            })
            .collect();
        LVector {
            n,
            adjoint,
            entries,
        }
    }

    /// 1-based entry access.
    pub fn entry(&self, i: usize) -> &DiffPoly {
        &self.entries[i - 1]
    }

    pub fn entries(&self) -> &[DiffPoly] {
        &self.entries
    }
}

/// Upper-triangular member matrix with diagonal −1.
///
/// Above the diagonal, entry `(i, j)` is `C(j, i)·R~(j−i−1)^a` for the
/// adjoint flavour and `−C(j, i)·R~(j−i−1)` for the plain one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriMatrix {
    pub n: u32,
    pub adjoint: bool,
    rows: Vec<Vec<DiffPoly>>,
}

impl TriMatrix {
    pub fn build(n: u32, adjoint: bool, seq: &mut Sequence) -> Self {
        let n_us = n as usize;
        let mut rows = Vec::with_capacity(n_us);
        for i in 1..=n_us {
            let mut row = Vec::with_capacity(n_us);
            for j in 1..=n_us {
                row.push(if i > j {
                    DiffPoly::zero()
                } else if i == j {
                    DiffPoly::constant(-Rational::one())
                } else {
                    let body = seq
                        .member_ext(j as i64 - i as i64 - 1, adjoint)
                        .scale(&binomial(j as u64, i as u64));
                    if adjoint {
                        body
                    } else {
                        -&body
                    }
                });
            }
            rows.push(row);
        }
        TriMatrix { n, adjoint, rows }
    }

    /// 1-based entry access.
    pub fn entry(&self, i: usize, j: usize) -> &DiffPoly {
        &self.rows[i - 1][j - 1]
    }

    /// Product row `i` of `self · v`.
    fn apply_row(&self, i: usize, v: &[DiffPoly]) -> DiffPoly {
        let mut acc = DiffPoly::zero();
        for (j, entry) in v.iter().enumerate() {
            acc = &acc + &(self.entry(i, j + 1) * entry);
        }
        acc
    }
}

/// Gradient of a member: entry i (1-based) is `∂f/∂y^(i−1)` for the
/// right side `f = y^(n) − R~n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradientVector {
    pub n: u32,
    entries: Vec<DiffPoly>,
}

impl GradientVector {
    /// 1-based entry access.
    pub fn entry(&self, i: usize) -> &DiffPoly {
        &self.entries[i - 1]
    }

    pub fn entries(&self) -> &[DiffPoly] {
        &self.entries
    }
}

/// The four objects of the triangular linear system at order n.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub q: TriMatrix,
    pub q_adjoint: TriMatrix,
    pub l: LVector,
    pub l_adjoint: LVector,
}

pub fn build_linear_system(n: u32, seq: &mut Sequence) -> LinearSystem {
    LinearSystem {
        q: TriMatrix::build(n, false, seq),
        q_adjoint: TriMatrix::build(n, true, seq),
        l: LVector::build(n, false, seq),
        l_adjoint: LVector::build(n, true, seq),
    }
}

fn fail(
    operation: &'static str,
    detail: alloc::string::String,
    residual: DiffPoly,
) -> VerificationFailure {
    VerificationFailure::new(
        "sequence",
        operation,
        detail,
        ExpDiffPoly::from_poly(residual),
    )
}

/// Check `∂y(R~(n+1)) = (n+2)·R~n` and the full gradient generalization
/// `∂R~n/∂y^(k) = C(n+1, k+1)·R~(n−k−1)` for k = 0..n.
pub fn check_gradient_recurrence(n: u32, seq: &mut Sequence) -> Result<(), VerificationFailure> {
    let next = seq.member(n + 1);
    let factor = Rational::from_integer((n as i64 + 2).into());
    let diff = &next.partial(Var::Jet(0)) - &seq.member(n).scale(&factor);
    if !diff.is_zero() {
        return Err(fail(
            "gradient_recurrence",
            format!("dy R~{} != {}*R~{n}", n + 1, n + 2),
            diff,
        ));
    }
    let member = seq.member(n);
    for k in 0..=n {
        let expected = seq
            .member_ext(n as i64 - k as i64 - 1, false)
            .scale(&binomial((n + 1) as u64, (k + 1) as u64));
        let diff = &member.partial(Var::Jet(k)) - &expected;
        if !diff.is_zero() {
            return Err(fail(
                "gradient_recurrence",
                format!(
                    "d/dy^({k}) R~{n} != C({}, {})*R~{}",
                    n + 1,
                    k + 1,
                    n as i64 - k as i64 - 1
                ),
                diff,
            ));
        }
    }
    Ok(())
}

/// Check the interleaving recurrence
/// `R~n = R~n^a + Σ_{i=1..n} C(n+1, i)·R~(i−1)^a·R~(n−i)`.
pub fn check_interleave(n: u32, seq: &mut Sequence) -> Result<(), VerificationFailure> {
    let mut rhs = seq.adjoint_member(n);
    for i in 1..=n as i64 {
        let prod = &seq.member_ext(i - 1, true) * &seq.member_ext(n as i64 - i, false);
        rhs = &rhs + &prod.scale(&binomial((n + 1) as u64, i as u64));
    }
    let diff = &seq.member(n) - &rhs;
    if diff.is_zero() {
        Ok(())
    } else {
        Err(fail("interleave", format!("n = {n}"), diff))
    }
}

/// Solve `Q^a · F = L^a` by back substitution (the diagonal is −1).
pub fn solve_gradient(n: u32, seq: &mut Sequence) -> GradientVector {
    let sys = build_linear_system(n, seq);
    let n_us = n as usize;
    let mut entries = alloc::vec![DiffPoly::zero(); n_us];
    for i in (1..=n_us).rev() {
        // Row i: −F_i + Σ_{j>i} (Q^a)_{ij} F_j = (L^a)_i.
        let mut acc = -sys.l_adjoint.entry(i);
        for j in i + 1..=n_us {
            acc = &acc + &(sys.q_adjoint.entry(i, j) * &entries[j - 1]);
        }
        entries[i - 1] = acc;
    }
    GradientVector { n, entries }
}

/// Rebuild `R~n` from its gradient via the weight grading: for a
/// weight-(n+1) homogeneous autonomous polynomial,
/// `(n+1)·R~n = Σ_k (k+1)·y^(k)·∂R~n/∂y^(k)`.
pub fn euler_reconstruction(n: u32, l: &LVector) -> DiffPoly {
    let mut acc = DiffPoly::jet(n).scale(&Rational::from_integer((n as i64 + 1).into()));
    for k in 0..n as usize {
        let term = &DiffPoly::jet(k as u32) * l.entry(k + 1);
        acc = &acc + &term.scale(&Rational::from_integer((k as i64 + 1).into()));
    }
    acc.scale(&(Rational::one() / Rational::from_integer((n as i64 + 1).into())))
}

/// Verify the matrix identities at order n:
/// `Q^a·Q = I`, `Q·L^a = −L`, the back-substituted gradient equals both,
/// and the weight-grading reconstruction returns the member itself.
pub fn verify_matrix_identities(n: u32, seq: &mut Sequence) -> Result<(), VerificationFailure> {
    let sys = build_linear_system(n, seq);
    let n_us = n as usize;
    // (i) mutual inverses
    for i in 1..=n_us {
        for j in 1..=n_us {
            let mut acc = DiffPoly::zero();
            for k in 1..=n_us {
                acc = &acc + &(sys.q_adjoint.entry(i, k) * sys.q.entry(k, j));
            }
            let expected = if i == j {
                DiffPoly::one()
            } else {
                DiffPoly::zero()
            };
            let diff = &acc - &expected;
            if !diff.is_zero() {
                return Err(fail(
                    "matrix_inverse",
                    format!("entry ({i}, {j}) of n = {n}"),
                    diff,
                ));
            }
        }
    }
    // (ii) Q·L^a = −L
    for i in 1..=n_us {
        let diff = &sys.q.apply_row(i, sys.l_adjoint.entries()) + sys.l.entry(i);
        if !diff.is_zero() {
            return Err(fail(
                "gradient_transport",
                format!("entry {i} of n = {n}"),
                diff,
            ));
        }
    }
    // (iii) solved gradient agrees with both products
    let grad = solve_gradient(n, seq);
    for i in 1..=n_us {
        let via_product = sys.q.apply_row(i, sys.l_adjoint.entries());
        let diff = &via_product - grad.entry(i);
        if !diff.is_zero() {
            return Err(fail(
                "gradient_solve",
                format!("entry {i} of n = {n}"),
                diff,
            ));
        }
        let diff = &(grad.entry(i) + sys.l.entry(i)).clone() - &DiffPoly::zero();
        if !diff.is_zero() {
            return Err(fail(
                "gradient_value",
                format!("entry {i} of n = {n}"),
                diff,
            ));
        }
    }
    // (iv) reconstruction from the gradient
    let diff = &euler_reconstruction(n, &sys.l) - &seq.member(n);
    if !diff.is_zero() {
        return Err(fail("euler_reconstruction", format!("n = {n}"), diff));
    }
    Ok(())
}

/// Number of integer partitions of `n`.
pub fn partition_count(n: u32) -> u64 {
    // Classic bounded-part dynamic program; n stays desk-scale here.
    let n = n as usize;
    let mut table = alloc::vec![0u64; n + 1];
    table[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            table[total] += table[total - part];
        }
    }
    table[n]
}

/// Structural facts about `R~n` checked on every generated member: the
/// term count equals the partition number p(n+1), all coefficients are
/// positive integers with the extreme ones equal to 1, the weight is
/// n + 1 for both flavours, applying the recursion operator to `R~(n−1)`
/// reproduces `R~n`, and negating every jet variable carries the adjoint
/// member onto `−R~n`.
pub fn check_structural_invariants(n: u32, seq: &mut Sequence) -> Result<(), VerificationFailure> {
    let member = seq.member(n);
    let adjoint = seq.adjoint_member(n);
    let expected_terms = partition_count(n + 1);
    if member.term_count() as u64 != expected_terms {
        return Err(fail(
            "term_count",
            format!(
                "R~{n} has {} terms, partition count is {expected_terms}",
                member.term_count()
            ),
            member,
        ));
    }
    for (m, c) in member.terms() {
        if !c.is_positive() || !c.is_integer() {
            return Err(fail(
                "positivity",
                format!("coefficient {c} of {m} in R~{n}"),
                member.clone(),
            ));
        }
    }
    if n >= 1 {
        let top = member.coeff(&JetMonomial::jet_power(n, 1));
        let pure = member.coeff(&JetMonomial::jet_power(0, n + 1));
        if !top.is_one() || !pure.is_one() {
            return Err(fail("extreme_coefficients", format!("n = {n}"), member));
        }
    }
    match member.weight() {
        Ok(w) if w == n as i64 + 1 => {}
        other => {
            return Err(fail(
                "weight",
                format!("weight of R~{n} is {other:?}, expected {}", n + 1),
                member,
            ))
        }
    }
    match adjoint.weight() {
        Ok(w) if w == n as i64 + 1 => {}
        other => {
            return Err(fail(
                "weight",
                format!("weight of adjoint R~{n} is {other:?}, expected {}", n + 1),
                adjoint,
            ))
        }
    }
    if n >= 1 {
        let prev = seq.member(n - 1);
        let diff = &(&prev.total_derivative() + &(&DiffPoly::y() * &prev)) - &member;
        if !diff.is_zero() {
            return Err(fail(
                "recursion_step",
                format!("(D + y)R~{} != R~{n}", n - 1),
                diff,
            ));
        }
    }
    // Reflection between the sequences: y^(k) ↦ −y^(k) sends the adjoint
    // member to the negated plain member.
    let diff = &adjoint.negate_jets() + &member;
    if !diff.is_zero() {
        return Err(fail("reflection", format!("n = {n}"), diff));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffalg::rat_int;

    /// Build a polynomial from `(coefficient, [(order, exponent)...])`
    /// term descriptions.
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

    /// R~3 as published: y''' + 4yy'' + 3y'^2 + 6y^2y' + y^4.
    fn member_three() -> DiffPoly {
        poly(&[
            (1, &[(3, 1)]),
            (4, &[(0, 1), (2, 1)]),
            (3, &[(1, 2)]),
            (6, &[(0, 2), (1, 1)]),
            (1, &[(0, 4)]),
        ])
    }

    #[test]
    fn generates_published_members() {
        let mut seq = Sequence::new();
        assert_eq!(seq.member(0), DiffPoly::y());
        assert_eq!(seq.member(1), poly(&[(1, &[(1, 1)]), (1, &[(0, 2)])]));
        assert_eq!(
            seq.member(2),
            poly(&[(1, &[(2, 1)]), (3, &[(0, 1), (1, 1)]), (1, &[(0, 3)])])
        );
        assert_eq!(seq.member(3), member_three());
    }

    #[test]
    fn generates_published_adjoints() {
        let mut seq = Sequence::new();
        assert_eq!(
            seq.adjoint_member(1),
            poly(&[(1, &[(1, 1)]), (-1, &[(0, 2)])])
        );
        // y''' - 4yy'' - 3y'^2 + 6y^2y' - y^4
        assert_eq!(
            seq.adjoint_member(3),
            poly(&[
                (1, &[(3, 1)]),
                (-4, &[(0, 1), (2, 1)]),
                (-3, &[(1, 2)]),
                (6, &[(0, 2), (1, 1)]),
                (-1, &[(0, 4)]),
            ])
        );
    }

    #[test]
    fn gradient_recurrence_published_cases() {
        let mut seq = Sequence::new();
        // ∂y R~3 = 4y'' + 12yy' + 4y^3 = 4·R~2
        let dy = seq.member(3).partial(Var::Jet(0));
        assert_eq!(dy, seq.member(2).scale(&rat_int(4)));
        // ∂y' R~2 = 3y, ∂y'' R~2 = 1
        assert_eq!(
            seq.member(2).partial(Var::Jet(1)),
            DiffPoly::y().scale(&rat_int(3))
        );
        assert_eq!(seq.member(2).partial(Var::Jet(2)), DiffPoly::one());
        for n in 1..=6 {
            check_gradient_recurrence(n, &mut seq).unwrap();
        }
    }

    #[test]
    fn interleave_small_cases() {
        let mut seq = Sequence::new();
        // n = 0 is the empty sum: both sides are y.
        check_interleave(0, &mut seq).unwrap();
        // n = 1: y' + y^2 = (y' − y^2) + 2y·y, expanded by hand.
        let rhs = &seq.adjoint_member(1) + &DiffPoly::y().pow(2).scale(&rat_int(2));
        assert_eq!(seq.member(1), rhs);
        // n = 2: R~2 = R~2^a + 3·R~0^a·R~1 + 3·R~1^a·R~0, expanded by hand.
        let rhs = &(&seq.adjoint_member(2) + &(&DiffPoly::y() * &seq.member(1)).scale(&rat_int(3)))
            + &(&seq.adjoint_member(1) * &DiffPoly::y()).scale(&rat_int(3));
        assert_eq!(seq.member(2), rhs);
        for n in 0..=6 {
            check_interleave(n, &mut seq).unwrap();
        }
    }

    #[test]
    fn linear_system_entries() {
        let mut seq = Sequence::new();
        let sys = build_linear_system(1, &mut seq);
        assert_eq!(sys.q.entry(1, 1), &DiffPoly::constant(rat_int(-1)));
        let sys3 = build_linear_system(3, &mut seq);
        // (Q_3)_{12} = −C(2,1)·R~0 = −2y.
        assert_eq!(sys3.q.entry(1, 2), &DiffPoly::y().scale(&rat_int(-2)));
        let sys2 = build_linear_system(2, &mut seq);
        // (L_2)_1 = C(3,1)·R~1 = 3y' + 3y^2.
        assert_eq!(sys2.l.entry(1), &seq.member(1).scale(&rat_int(3)));
        // (L_2)_2 = C(3,2)·R~0 = 3y.
        assert_eq!(sys2.l.entry(2), &DiffPoly::y().scale(&rat_int(3)));
    }

    #[test]
    fn matrix_identities_hold() {
        let mut seq = Sequence::new();
        for n in 1..=5 {
            verify_matrix_identities(n, &mut seq).unwrap();
        }
    }

    #[test]
    fn solved_gradient_is_minus_l() {
        let mut seq = Sequence::new();
        let grad = solve_gradient(1, &mut seq);
        assert_eq!(grad.entry(1), &DiffPoly::y().scale(&rat_int(-2)));
        let grad = solve_gradient(4, &mut seq);
        assert_eq!(grad.entry(4), &DiffPoly::y().scale(&rat_int(-5)));
        assert_eq!(grad.entry(3), &seq.member(1).scale(&rat_int(-10)));
    }

    #[test]
    fn partition_numbers() {
        let expected = [1u64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101];
        for (n, &p) in expected.iter().enumerate() {
            assert_eq!(partition_count(n as u32), p);
        }
    }

    #[test]
    fn structural_invariants_up_to_ten() {
        let mut seq = Sequence::new();
        for n in 0..=10 {
            check_structural_invariants(n, &mut seq).unwrap();
        }
    }

    #[test]
    fn member_api_matches_cache() {
        let m = generate_member(2, false);
        assert_eq!(m.n, 2);
        assert!(!m.adjoint);
        assert_eq!(m.body, Sequence::new().member(2));
        assert_eq!(generate_member(0, true).body, DiffPoly::y());
    }
}
