//! Closed-form solutions, exponential invariants and first integrals.
//!
//! The general solution of the n-th member is the logarithmic derivative
//! `y = P'/P` of a polynomial `P(x) = Σ A_i x^i` of degree at most n —
//! the transformation `y = w'/w` sends the member to `w^(n+1) = 0`. The
//! identity behind it, `(D + y)^k (P'/P) = P^(k+1)/P`, is verified here
//! by exact rational-function algebra.
//!
//! Pulling the fundamental integrals of `w^(n+1) = 0` back through the
//! transformation produces the invariants
//!
//! ```text
//! I_j = ( Σ_{i=1..j} (−1)^(i+1)/(j−i)! · x^(j−i) · R~(n−i) ) · E,
//! ```
//!
//! with `E = exp[∫y dx]` and `R~(−1) = 1`; their total derivatives vanish
//! modulo the member. Ratios of two invariants cancel the exponential
//! weight and give genuine first integrals in `x, y, ..., y^(n−1)`.
//!
//! Linear combinations `Σ f_i(x)·R~i` inherit the linearisation: at
//! `y = P'/P` such a combination collapses to `(Σ f_i·P^(i+1))/P`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::diffalg::{factorial, DiffPoly, ExpDiffPoly, Jet, JetMonomial, Rational, Reducer};
use crate::report::VerificationFailure;
use crate::sequence::Sequence;
use crate::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegralsError {
    /// The solution polynomial vanishes at the requested point.
    PoleAtSamplePoint { x0: Rational },
    /// Invariant index outside `1..=n+1`.
    IndexOutOfRange { index: u32, max: u32 },
    /// A first integral needs two distinct invariant indices.
    IdenticalIndices,
    /// The zero polynomial cannot serve as a solution or combination.
    ZeroPolynomial,
    /// An exact identity failed to hold.
    Failure(VerificationFailure),
}

impl fmt::Display for IntegralsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegralsError::PoleAtSamplePoint { x0 } => {
                write!(f, "solution polynomial vanishes at x = {x0}")
            }
            IntegralsError::IndexOutOfRange { index, max } => {
                write!(f, "invariant index {index} outside 1..={max}")
            }
            IntegralsError::IdenticalIndices => {
                write!(f, "first integral needs two distinct invariant indices")
            }
            IntegralsError::ZeroPolynomial => write!(f, "zero polynomial not allowed here"),
            IntegralsError::Failure(inner) => write!(f, "{inner}"),
        }
    }
}

impl core::error::Error for IntegralsError {}

impl From<VerificationFailure> for IntegralsError {
    fn from(inner: VerificationFailure) -> Self {
        IntegralsError::Failure(inner)
    }
}

fn fail(operation: &'static str, detail: alloc::string::String) -> VerificationFailure {
    VerificationFailure::new("integrals", operation, detail, ExpDiffPoly::zero())
}

/// Numerators `N_k` of the derivative jets of `y = P'/P` in the
/// unreduced form `y^(k) = N_k / P^(k+1)`: quotient rule without any
/// gcd work, `N_(k+1) = N_k'·P − (k+1)·N_k·P'`.
fn log_derivative_numerators(p: &UniPoly, order: u32) -> Vec<UniPoly> {
    let dp = p.derivative();
    let mut out = alloc::vec![dp.clone()];
    for k in 0..order {
        let last = out.last().unwrap();
        let next = &(&last.derivative() * p)
            - &(last * &dp).scale(&Rational::from_integer((k as i64 + 1).into()));
        out.push(next);
    }
    out
}

/// Substitute the solution jets into a polynomial, returning the value
/// as `numerator / P^pow` (unreduced; no gcd anywhere).
///
/// Each monomial `x^a·Π (y^(k))^(e_k)` contributes denominator
/// `P^(Σ(k+1)e_k)`; everything is brought over the maximal power.
fn eval_on_solution(poly: &DiffPoly, p: &UniPoly, numerators: &[UniPoly]) -> (UniPoly, u32) {
    let weight_of = |m: &JetMonomial| -> u32 { m.jet_factors().map(|(k, e)| (k + 1) * e).sum() };
    let max_pow = poly.terms().map(|(m, _)| weight_of(m)).max().unwrap_or(0);
    // Powers of P for padding, computed once.
    let mut p_powers = alloc::vec![UniPoly::one()];
    for _ in 1..=max_pow {
        p_powers.push(p_powers.last().unwrap() * p);
    }
    let mut acc = UniPoly::zero();
    for (m, c) in poly.terms() {
        let mut num = UniPoly::constant(c.clone()).shift_up(m.x_exp() as usize);
        for (k, e) in m.jet_factors() {
            for _ in 0..e {
                num = &num * &numerators[k as usize];
            }
        }
        acc = &acc + &(&num * &p_powers[(max_pow - weight_of(m)) as usize]);
    }
    (acc, max_pow)
}

/// Exact jet of the solution `y = P'/P` at `x0`, long enough to feed the
/// n-th member. `a` lists the coefficients `A_0..A_n` of `P`.
///
/// Works through the Taylor shift `P(x0 + h)` followed by one series
/// division, so the cost stays quadratic in the degree.
pub fn solution_jet(n: u32, a: &[Rational], x0: &Rational) -> Result<Jet, IntegralsError> {
    let p = UniPoly::from_coeffs(a.to_vec());
    if p.is_zero() {
        return Err(IntegralsError::ZeroPolynomial);
    }
    // Horner-style shift: afterwards shifted[i] is the h^i coefficient
    // of P(x0 + h).
    let mut shifted = p.coeffs().to_vec();
    for i in 0..shifted.len() {
        for j in (i..shifted.len() - 1).rev() {
            let carry = &shifted[j + 1] * x0;
            shifted[j] += carry;
        }
    }
    if shifted[0].is_zero() {
        return Err(IntegralsError::PoleAtSamplePoint { x0: x0.clone() });
    }
    // q = P'(x0+h)/P(x0+h) as a series in h; y^(k)(x0) = k!·q_k.
    let coeff = |v: &[Rational], i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
    let mut q: Vec<Rational> = Vec::with_capacity(n as usize + 1);
    for k in 0..=n as usize {
        let mut acc = coeff(&shifted, k + 1) * Rational::from_integer((k as i64 + 1).into());
        for i in 1..=k {
            acc -= coeff(&shifted, i) * q[k - i].clone();
        }
        q.push(acc / shifted[0].clone());
    }
    let values = q
        .into_iter()
        .enumerate()
        .map(|(k, c)| c * factorial(k as u64))
        .collect();
    Ok(Jet::new(x0.clone(), values))
}

/// Verify `(D + y)^k (P'/P) = P^(k+1)/P` for `k = 0..n` by exact
/// polynomial algebra, then re-check the expanded member both
/// symbolically and on `samples` integer points avoiding roots of `P`.
pub fn verify_solution_identity(n: u32, p: &UniPoly, samples: u32) -> Result<(), IntegralsError> {
    if p.is_zero() {
        return Err(IntegralsError::ZeroPolynomial);
    }
    // Route 1: the operator chain. lhs_k = M_k/P^(k+1) with M_0 = P' and
    // M_(k+1) = M_k'·P − k·M_k·P' (derivative plus multiplication by y);
    // the claim lhs_k = P^(k+1)/P cross-multiplies to a polynomial
    // identity.
    let dp = p.derivative();
    let mut chain = dp.clone();
    let mut p_power = p.clone(); // P^(k+1)
    for k in 0..=n {
        let lhs = &chain * p;
        let rhs = &p.derivative_n(k as usize + 1) * &p_power;
        if lhs != rhs {
            return Err(fail(
                "solution_identity",
                format!("(D + y)^{k} (P'/P) differs from P^({})/P", k + 1),
            )
            .into());
        }
        chain = &(&chain.derivative() * p)
            - &(&chain * &dp).scale(&Rational::from_integer((k as i64).into()));
        p_power = &p_power * p;
    }
    // Route 2: substitute the jets into the fully expanded member.
    let mut seq = Sequence::new();
    let member = seq.member(n);
    let numerators = log_derivative_numerators(p, n);
    let (expanded, pow) = eval_on_solution(&member, p, &numerators);
    let lhs = &expanded * p;
    let mut rhs_power = UniPoly::one();
    for _ in 0..pow {
        rhs_power = &rhs_power * p;
    }
    let rhs = &p.derivative_n(n as usize + 1) * &rhs_power;
    if lhs != rhs {
        return Err(fail(
            "solution_identity",
            "expanded member at y = P'/P differs from P^(n+1)/P".to_string(),
        )
        .into());
    }
    // Exact numeric spot checks.
    let mut x0 = Rational::zero();
    let mut checked = 0;
    while checked < samples {
        if !p.eval(&x0).is_zero() {
            let jet = solution_jet(n, p.coeffs(), &x0)?;
            let value = member.eval(&jet).expect("jet is long enough");
            let expected = p.derivative_n(n as usize + 1).eval(&x0) / p.eval(&x0);
            if value != expected {
                return Err(fail(
                    "solution_identity",
                    format!("sample x = {x0}: member value {value}, expected {expected}"),
                )
                .into());
            }
            checked += 1;
        }
        x0 += Rational::one();
    }
    Ok(())
}

/// An exponential invariant `I_j` of the n-th member: a level-1
/// polynomial whose total derivative reduces to zero on shell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantExpr {
    pub n: u32,
    pub j: u32,
    pub body: ExpDiffPoly,
}

/// Build `I_j` for the n-th member, `j = 1..n+1`, and verify its
/// conservation exactly.
pub fn invariant(n: u32, j: u32, seq: &mut Sequence) -> Result<InvariantExpr, IntegralsError> {
    if j < 1 || j > n + 1 {
        return Err(IntegralsError::IndexOutOfRange {
            index: j,
            max: n + 1,
        });
    }
    let mut body = DiffPoly::zero();
    for i in 1..=j {
        let sign = if i % 2 == 1 {
            Rational::one()
        } else {
            -Rational::one()
        };
        let coeff = sign / factorial((j - i) as u64);
        let term = &DiffPoly::x().pow(j - i) * &seq.member_ext(n as i64 - i as i64, false);
        body = &body + &term.scale(&coeff);
    }
    let body = ExpDiffPoly::at_level(1, body);
    let eqn = seq.member(n);
    let mut reducer = Reducer::new(&eqn).expect("members are monic");
    let residual = reducer.reduce(&body.total_derivative());
    if !residual.is_zero() {
        return Err(IntegralsError::Failure(VerificationFailure::new(
            "integrals",
            "invariant_conservation",
            format!("D(I_{j}) not in the ideal of member {n}"),
            residual,
        )));
    }
    Ok(InvariantExpr { n, j, body })
}

/// A first integral as a ratio of two invariants; the exponential
/// weights cancel, leaving a function of `x, y, ..., y^(n−1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstIntegralExpr {
    pub numerator: InvariantExpr,
    pub denominator: InvariantExpr,
}

impl FirstIntegralExpr {
    /// Net exponential weight of the ratio (always 0 by construction).
    pub fn net_weight(&self) -> i64 {
        let weight = |e: &ExpDiffPoly| e.levels().map(|(l, _)| l).max().unwrap_or(0);
        weight(&self.numerator.body) - weight(&self.denominator.body)
    }

    /// Evaluate the ratio at a jet; the exponential base cancels.
    pub fn eval(&self, jet: &Jet, e_value: &Rational) -> Result<Rational, IntegralsError> {
        let num = self.numerator.body.eval(jet, e_value).map_err(|_| {
            IntegralsError::PoleAtSamplePoint {
                x0: jet.x0().clone(),
            }
        })?;
        let den = self.denominator.body.eval(jet, e_value).map_err(|_| {
            IntegralsError::PoleAtSamplePoint {
                x0: jet.x0().clone(),
            }
        })?;
        if den.is_zero() {
            return Err(IntegralsError::PoleAtSamplePoint {
                x0: jet.x0().clone(),
            });
        }
        Ok(num / den)
    }
}

/// Build the first integral `F = I_j / I_i` for the n-th member and
/// verify `D(num)·den − num·D(den) ≡ 0` modulo the member.
pub fn first_integral(
    n: u32,
    i: u32,
    j: u32,
    seq: &mut Sequence,
) -> Result<FirstIntegralExpr, IntegralsError> {
    if i == j {
        return Err(IntegralsError::IdenticalIndices);
    }
    let numerator = invariant(n, j, seq)?;
    let denominator = invariant(n, i, seq)?;
    let eqn = seq.member(n);
    let mut reducer = Reducer::new(&eqn).expect("members are monic");
    let derivative_numerator = &(&numerator.body.total_derivative() * &denominator.body)
        - &(&numerator.body * &denominator.body.total_derivative());
    let residual = reducer.reduce(&derivative_numerator);
    if !residual.is_zero() {
        return Err(IntegralsError::Failure(VerificationFailure::new(
            "integrals",
            "first_integral_conservation",
            format!("D(I_{j}/I_{i}) not conserved for member {n}"),
            residual,
        )));
    }
    Ok(FirstIntegralExpr {
        numerator,
        denominator,
    })
}

/// Coefficients `f_0..f_m` of a linear combination `Σ f_i(x)·R~i`; the
/// top coefficient must be nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinationSpec {
    coeffs: Vec<UniPoly>,
}

impl CombinationSpec {
    pub fn new(coeffs: Vec<UniPoly>) -> Result<Self, IntegralsError> {
        if coeffs.last().is_none_or(UniPoly::is_zero) {
            return Err(IntegralsError::ZeroPolynomial);
        }
        Ok(CombinationSpec { coeffs })
    }

    /// Order of the combined equation.
    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }
}

/// Embed a polynomial in `x` into the jet ring.
fn poly_x(p: &UniPoly) -> DiffPoly {
    let mut out = DiffPoly::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        out.add_term(JetMonomial::x_power(k as u32), c.clone());
    }
    out
}

/// Expand `Σ f_i(x)·R~i` exactly.
pub fn combine(spec: &CombinationSpec, seq: &mut Sequence) -> DiffPoly {
    let mut acc = DiffPoly::zero();
    for (i, f) in spec.coeffs.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        acc = &acc + &(&poly_x(f) * &seq.member(i as u32));
    }
    acc
}

/// Verify that the combination evaluated at `y = P'/P` equals
/// `(Σ f_i·P^(i+1))/P`, symbolically and on `samples` integer points.
pub fn check_linearisation(
    spec: &CombinationSpec,
    p: &UniPoly,
    samples: u32,
) -> Result<(), IntegralsError> {
    if p.is_zero() {
        return Err(IntegralsError::ZeroPolynomial);
    }
    let order = spec.order();
    let mut seq = Sequence::new();
    let combined = combine(spec, &mut seq);
    let numerators = log_derivative_numerators(p, order);
    let (expanded, pow) = eval_on_solution(&combined, p, &numerators);
    let mut rhs_num = UniPoly::zero();
    for (i, f) in spec.coeffs.iter().enumerate() {
        rhs_num = &rhs_num + &(f * &p.derivative_n(i + 1));
    }
    // expanded/P^pow = rhs_num/P, cross-multiplied.
    let mut p_power = UniPoly::one();
    for _ in 0..pow {
        p_power = &p_power * p;
    }
    if &expanded * p != &rhs_num * &p_power {
        return Err(fail(
            "linearisation",
            "combination at y = P'/P differs from (sum f_i P^(i+1))/P".to_string(),
        )
        .into());
    }
    // Exact numeric spot checks at non-pole integer points.
    let mut x0 = Rational::zero();
    let mut checked = 0;
    while checked < samples {
        if !p.eval(&x0).is_zero() {
            let jet = solution_jet(order, p.coeffs(), &x0)?;
            let value = combined
                .eval(&jet)
                .expect("jet long enough for the combination");
            let expected = rhs_num.eval(&x0) / p.eval(&x0);
            if value != expected {
                return Err(fail(
                    "linearisation",
                    format!("sample x = {x0}: combination value {value}, expected {expected}"),
                )
                .into());
            }
            checked += 1;
        }
        x0 += Rational::one();
    }
    Ok(())
}
