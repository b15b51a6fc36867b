//! Singularity (Painlevé) analysis of the sequence members.
//!
//! The analysis runs in three exact stages around a movable pole at
//! `χ = 0` (autonomy lets the pole location be normalised away):
//!
//! 1. **Dominant balance** — substitute `y = α·χ^p` and look for integer
//!    exponents `p` at which at least two monomials share the minimal
//!    `χ` power; the coefficient of that power is a polynomial in `α`
//!    whose nonzero rational roots are the admissible leading
//!    coefficients. Every member balances at `p = −1` with
//!    `α ∈ {1, ..., n}`.
//! 2. **Resonances** — perturb the leading behaviour by `m·χ^(p+r)` and
//!    keep the terms linear in `m`. Weighted homogeneity makes them share
//!    a single `χ` power whose coefficient is the resonance polynomial
//!    `Q(r) = Σ_k [∂eqn/∂y^(k)](α χ^p) · (p+r)(p+r−1)···(p+r−k+1)`;
//!    its integer roots are the resonances, always including −1.
//! 3. **Compatibility** — develop the full Laurent series
//!    `y = Σ a_k χ^(p+k)` order by order. Away from resonances `a_k` is
//!    determined uniquely; at a positive resonance the linear system is
//!    singular and the series passes only if the forcing vanishes
//!    identically in the free parameters introduced so far, after which a
//!    fresh parameter `c_r` enters.
//!
//! Free parameters are carried as exact polynomial indeterminates (the
//! coefficient ring is `Q[c_1, c_2, ...]`), so a compatibility pass is an
//! identity, not a sampled check.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::diffalg::{DiffPoly, Rational, Var};
use crate::sequence::Sequence;
use crate::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularityError {
    /// The analysis needs an autonomous equation (no explicit `x`).
    NonAutonomous,
    /// No integer exponent balances at least two monomials.
    NoBalance,
    /// A balance exists but its leading-coefficient polynomial has no
    /// nonzero rational root.
    IrrationalLeadingCoefficient { alpha_poly: UniPoly },
    /// The terms linear in the perturbation do not share one `χ` power.
    InconsistentBalance { exponents: Vec<i64> },
    /// The resonance polynomial has a non-integer (or non-rational) factor.
    NonIntegerResonance { factor: UniPoly },
    /// A positive resonance whose forcing term does not vanish.
    CompatibilityFailure { resonance: u32, forcing: DiffPoly },
}

impl fmt::Display for SingularityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityError::NonAutonomous => write!(f, "equation depends explicitly on x"),
            SingularityError::NoBalance => {
                write!(f, "no integer leading exponent balances two or more terms")
            }
            SingularityError::IrrationalLeadingCoefficient { alpha_poly } => {
                write!(
                    f,
                    "leading-coefficient polynomial {alpha_poly} has no rational root"
                )
            }
            SingularityError::InconsistentBalance { exponents } => {
                write!(f, "perturbation terms spread over powers {exponents:?}")
            }
            SingularityError::NonIntegerResonance { factor } => {
                write!(f, "resonance polynomial has non-integer factor {factor}")
            }
            SingularityError::CompatibilityFailure { resonance, forcing } => {
                write!(
                    f,
                    "resonance {resonance} incompatible, forcing {}",
                    param_string(forcing)
                )
            }
        }
    }
}

impl core::error::Error for SingularityError {}

/// One admissible leading exponent with its leading coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceFamily {
    pub p: i64,
    /// Coefficient of the minimal `χ` power as a polynomial in `α`.
    pub alpha_poly: UniPoly,
    /// Nonzero rational roots of `alpha_poly`, ascending.
    pub alphas: Vec<Rational>,
}

/// Falling factorial `p(p−1)···(p−k+1)` as an exact rational.
fn fall(p: i64, k: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        acc *= BigInt::from(p - i);
    }
    Rational::from_integer(acc)
}

/// Falling factorial `(p+r)(p+r−1)···(p+r−k+1)` as a polynomial in `r`.
fn fall_poly(p: i64, k: u32) -> UniPoly {
    let mut acc = UniPoly::one();
    for i in 0..k as i64 {
        let linear = UniPoly::from_coeffs(alloc::vec![
            Rational::from_integer((p - i).into()),
            Rational::one(),
        ]);
        acc = &acc * &linear;
    }
    acc
}

fn require_autonomous(eqn: &DiffPoly) -> Result<(), SingularityError> {
    if eqn.terms().any(|(m, _)| m.x_exp() > 0) {
        return Err(SingularityError::NonAutonomous);
    }
    Ok(())
}

/// `χ` exponent of a monomial under `y = α·χ^p`: `Σ_k e_k·(p − k)`.
fn monomial_exponent(m: &crate::diffalg::JetMonomial, p: i64) -> i64 {
    m.jet_factors()
        .map(|(k, e)| e as i64 * (p - k as i64))
        .sum()
}

/// Find all integer leading exponents and the rational leading
/// coefficients they admit.
pub fn dominant_balance(eqn: &DiffPoly) -> Result<Vec<BalanceFamily>, SingularityError> {
    require_autonomous(eqn)?;
    // Exponent as a line in p: slope = jet degree, intercept = −Σ e_k k.
    let lines: Vec<(i64, i64)> = eqn
        .terms()
        .map(|(m, _)| {
            let slope = m.jet_degree() as i64;
            let intercept: i64 = m.jet_factors().map(|(k, e)| -(e as i64) * k as i64).sum();
            (slope, intercept)
        })
        .collect();
    let mut candidates: Vec<i64> = Vec::new();
    for (i, &(s1, t1)) in lines.iter().enumerate() {
        for &(s2, t2) in lines.iter().skip(i + 1) {
            if s1 == s2 {
                continue;
            }
            let num = t2 - t1;
            let den = s1 - s2;
            if num % den == 0 {
                let p = num / den;
                if !candidates.contains(&p) {
                    candidates.push(p);
                }
            }
        }
    }
    candidates.sort_unstable();
    if candidates.is_empty() {
        return Err(SingularityError::NoBalance);
    }
    let mut families = Vec::new();
    let mut first_barren: Option<UniPoly> = None;
    for p in candidates {
        let min_exp = eqn
            .terms()
            .map(|(m, _)| monomial_exponent(m, p))
            .min()
            .unwrap();
        let minimal: Vec<_> = eqn
            .terms()
            .filter(|(m, _)| monomial_exponent(m, p) == min_exp)
            .collect();
        if minimal.len() < 2 {
            continue;
        }
        // Coefficient of χ^min as a polynomial in α.
        let mut alpha_coeffs: BTreeMap<usize, Rational> = BTreeMap::new();
        for (m, c) in minimal {
            let mut value = c.clone();
            for (k, e) in m.jet_factors() {
                let f = fall(p, k);
                for _ in 0..e {
                    value *= f.clone();
                }
            }
            let deg = m.jet_degree() as usize;
            *alpha_coeffs.entry(deg).or_insert_with(Rational::zero) += value;
        }
        let top = alpha_coeffs.keys().next_back().copied().unwrap_or(0);
        let mut coeffs = alloc::vec![Rational::zero(); top + 1];
        for (d, c) in alpha_coeffs {
            coeffs[d] = c;
        }
        let alpha_poly = UniPoly::from_coeffs(coeffs);
        if alpha_poly.is_zero() {
            continue;
        }
        let mut alphas: Vec<Rational> = alpha_poly
            .rational_roots()
            .roots
            .into_iter()
            .map(|(root, _)| root)
            .filter(|root| !root.is_zero())
            .collect();
        alphas.sort();
        if alphas.is_empty() {
            first_barren.get_or_insert(alpha_poly);
            continue;
        }
        families.push(BalanceFamily {
            p,
            alpha_poly,
            alphas,
        });
    }
    if families.is_empty() {
        return match first_barren {
            Some(alpha_poly) => Err(SingularityError::IrrationalLeadingCoefficient { alpha_poly }),
            None => Err(SingularityError::NoBalance),
        };
    }
    Ok(families)
}

/// The polynomial in `r` whose roots are the resonances of the branch
/// `y ~ α·χ^p`.
pub fn resonance_polynomial(
    eqn: &DiffPoly,
    p: i64,
    alpha: &Rational,
) -> Result<UniPoly, SingularityError> {
    require_autonomous(eqn)?;
    let order = eqn.order().unwrap_or(0);
    // Collect, keyed by χ exponent relative to the common shift p + r,
    // the coefficient polynomials contributed by each gradient slot.
    let mut by_exponent: BTreeMap<i64, UniPoly> = BTreeMap::new();
    for k in 0..=order {
        let grad = eqn.partial(Var::Jet(k));
        let fall_k = fall_poly(p, k);
        for (m, c) in grad.terms() {
            let mut value = c.clone();
            for (j, e) in m.jet_factors() {
                let f = fall(p, j) * alpha;
                for _ in 0..e {
                    value *= f.clone();
                }
            }
            if value.is_zero() {
                continue;
            }
            let exponent = monomial_exponent(m, p) - k as i64;
            let entry = by_exponent.entry(exponent).or_insert_with(UniPoly::zero);
            *entry = &*entry + &fall_k.scale(&value);
        }
    }
    by_exponent.retain(|_, q| !q.is_zero());
    match by_exponent.len() {
        0 => Ok(UniPoly::zero()),
        1 => Ok(by_exponent.into_values().next().unwrap()),
        _ => Err(SingularityError::InconsistentBalance {
            exponents: by_exponent.keys().copied().collect(),
        }),
    }
}

/// All roots of the resonance polynomial as integers, with multiplicity,
/// sorted ascending.
pub fn integer_resonances(rp: &UniPoly) -> Result<Vec<i64>, SingularityError> {
    if rp.is_zero() {
        return Err(SingularityError::NonIntegerResonance { factor: rp.clone() });
    }
    let extraction = rp.rational_roots();
    if extraction.remainder.degree().is_some_and(|d| d > 0) {
        return Err(SingularityError::NonIntegerResonance {
            factor: extraction.remainder,
        });
    }
    let mut out = Vec::new();
    for (root, mult) in extraction.roots {
        if !root.is_integer() {
            let factor = UniPoly::from_coeffs(alloc::vec![-root.clone(), Rational::one()]);
            return Err(SingularityError::NonIntegerResonance { factor });
        }
        let value = i64::try_from(root.to_integer()).expect("resonances stay desk-scale");
        for _ in 0..mult {
            out.push(value);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// A fully analysed branch of the singularity expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub p: i64,
    pub alpha: Rational,
    pub resonance_poly: UniPoly,
    /// Integer roots with multiplicity, ascending.
    pub resonances: Vec<i64>,
    /// `(resonance, passed)` for each positive resonance tested.
    pub compatibility: Vec<(i64, bool)>,
}

/// Truncated Laurent data: `y = Σ_k coeffs[k]·χ^(p+k)` where each
/// coefficient is an exact polynomial in the free parameters.
///
/// Parameters are encoded in the jet variables of [`DiffPoly`]: the slot
/// `y^(r)` stands for the parameter `c_r` introduced at resonance `r`
/// (see [`param_string`] for rendering).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    pub p: i64,
    pub coeffs: Vec<DiffPoly>,
    /// Resonance indices at which a free parameter entered.
    pub free: Vec<u32>,
}

/// Render a parameter polynomial with `c_r` names.
pub fn param_string(p: &DiffPoly) -> String {
    use alloc::string::ToString;
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms_desc().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let ac = c.abs();
        let mut factors: Vec<String> = Vec::new();
        for (k, e) in m.jet_factors() {
            if e == 1 {
                factors.push(format!("c{k}"));
            } else {
                factors.push(format!("c{k}^{e}"));
            }
        }
        if factors.is_empty() {
            out.push_str(&format!("{ac}"));
        } else {
            if !ac.is_one() {
                out.push_str(&format!("{ac}*"));
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

/// A Laurent series with polynomial coefficients, truncated to a window
/// of fixed length anchored at `lead`.
#[derive(Clone, Debug)]
struct TruncSeries {
    lead: i64,
    coeffs: Vec<DiffPoly>,
}

impl TruncSeries {
    fn one(len: usize) -> Self {
        let mut coeffs = alloc::vec![DiffPoly::zero(); len];
        coeffs[0] = DiffPoly::one();
        TruncSeries { lead: 0, coeffs }
    }

    fn derivative(&self) -> TruncSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(&Rational::from_integer((self.lead + i as i64).into())))
            .collect();
        TruncSeries {
            lead: self.lead - 1,
            coeffs,
        }
    }

    fn mul(&self, other: &TruncSeries, len: usize) -> TruncSeries {
        let mut coeffs = alloc::vec![DiffPoly::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        TruncSeries {
            lead: self.lead + other.lead,
            coeffs,
        }
    }

    /// Merge two windows, anchoring at the smaller lead.
    fn add(&self, other: &TruncSeries, len: usize) -> TruncSeries {
        let lead = self.lead.min(other.lead);
        let mut coeffs = alloc::vec![DiffPoly::zero(); len];
        for src in [self, other] {
            let offset = (src.lead - lead) as usize;
            for (i, c) in src.coeffs.iter().enumerate() {
                if offset + i < len {
                    coeffs[offset + i] = &coeffs[offset + i] + c;
                }
            }
        }
        TruncSeries { lead, coeffs }
    }
}

/// Substitute the truncated series into an autonomous polynomial,
/// keeping `len` coefficients from the minimal exponent.
fn substitute_series(eqn: &DiffPoly, y: &TruncSeries, len: usize) -> TruncSeries {
    let order = eqn.order().unwrap_or(0);
    let mut derivs: Vec<TruncSeries> = alloc::vec![y.clone()];
    for _ in 1..=order {
        derivs.push(derivs.last().unwrap().derivative());
    }
    let mut acc: Option<TruncSeries> = None;
    for (m, c) in eqn.terms() {
        let mut term = TruncSeries::one(len);
        for (k, e) in m.jet_factors() {
            for _ in 0..e {
                term = term.mul(&derivs[k as usize], len);
            }
        }
        term.coeffs = term.coeffs.iter().map(|q| q.scale(c)).collect();
        acc = Some(match acc {
            None => term,
            Some(prev) => prev.add(&term, len),
        });
    }
    acc.unwrap_or_else(|| TruncSeries {
        lead: 0,
        coeffs: alloc::vec![DiffPoly::zero(); len],
    })
}

/// Develop the Laurent series of a branch to the requested depth,
/// checking compatibility at every positive resonance encountered.
///
/// The depth is raised to the largest positive resonance if the request
/// falls short, so a default depth of 0 always certifies the branch.
pub fn compatibility_test(
    eqn: &DiffPoly,
    p: i64,
    alpha: &Rational,
    depth: usize,
) -> Result<(LaurentSeries, Vec<(i64, bool)>), SingularityError> {
    require_autonomous(eqn)?;
    let rp = resonance_polynomial(eqn, p, alpha)?;
    let resonances = integer_resonances(&rp)?;
    let max_positive = resonances
        .iter()
        .copied()
        .filter(|&r| r > 0)
        .max()
        .unwrap_or(0);
    let depth = depth.max(max_positive as usize);
    let mut coeffs = alloc::vec![DiffPoly::constant(alpha.clone())];
    let mut free: Vec<u32> = Vec::new();
    let mut checks: Vec<(i64, bool)> = Vec::new();
    for k in 1..=depth {
        let k32 = k as u32;
        // Unknown a_k rides in parameter slot k for this step.
        let mut window = coeffs.clone();
        window.push(DiffPoly::jet(k32));
        let series = TruncSeries {
            lead: p,
            coeffs: window,
        };
        let expanded = substitute_series(eqn, &series, k + 1);
        // Lower positions were zeroed by earlier steps.
        for (i, c) in expanded.coeffs.iter().take(k).enumerate() {
            assert!(
                c.substitute_jet(k32, &DiffPoly::zero()).is_zero(),
                "order {i} reopened while solving order {k}"
            );
        }
        let equation = &expanded.coeffs[k];
        let linear = equation.partial(Var::Jet(k32));
        let linear = linear
            .as_constant()
            .expect("the new coefficient enters linearly through the leading balance");
        debug_assert_eq!(linear, rp.eval(&Rational::from_integer((k as i64).into())));
        let forcing = equation.substitute_jet(k32, &DiffPoly::zero());
        if linear.is_zero() {
            // k is a resonance: the forcing must vanish identically.
            if !forcing.is_zero() {
                return Err(SingularityError::CompatibilityFailure {
                    resonance: k32,
                    forcing,
                });
            }
            checks.push((k as i64, true));
            free.push(k32);
            coeffs.push(DiffPoly::jet(k32));
        } else {
            let inv = -(Rational::one() / linear);
            coeffs.push(forcing.scale(&inv));
        }
    }
    Ok((LaurentSeries { p, coeffs, free }, checks))
}

/// Residual coefficients of `eqn` on the solved series: entries
/// `0..=depth` (relative to the minimal exponent) of the substituted
/// expansion, which must all be identically zero in the free parameters.
pub fn series_residual(eqn: &DiffPoly, series: &LaurentSeries) -> Vec<DiffPoly> {
    let len = series.coeffs.len();
    let y = TruncSeries {
        lead: series.p,
        coeffs: series.coeffs.clone(),
    };
    substitute_series(eqn, &y, len).coeffs
}

/// The full singularity report for the n-th member.
#[derive(Clone, Debug)]
pub struct PainleveReport {
    pub n: u32,
    pub branches: Vec<Branch>,
    /// The resonance set of each branch follows from the previous one by
    /// lowering the largest positive resonance by n+1.
    pub pattern_rule_holds: bool,
    /// Branch `α = j` carries resonances `{−1..−j} ∪ {1..n−j}`.
    pub closed_form_holds: bool,
    /// Integer resonances including −1, no repeats, and compatibility at
    /// every positive resonance, on every branch.
    pub painleve_pass: bool,
}

/// Analyse every branch of the n-th member: balances, resonances and
/// compatibility to `depth` (at least the largest positive resonance).
pub fn painleve_report(
    n: u32,
    depth: Option<usize>,
    seq: &mut Sequence,
) -> Result<PainleveReport, SingularityError> {
    let eqn = seq.member(n);
    let families = dominant_balance(&eqn)?;
    let mut branches = Vec::new();
    let mut pass = true;
    for family in &families {
        for alpha in &family.alphas {
            let rp = resonance_polynomial(&eqn, family.p, alpha)?;
            let resonances = integer_resonances(&rp)?;
            if !resonances.contains(&-1) {
                pass = false;
            }
            // A repeated resonance defeats the standard test.
            if resonances.windows(2).any(|w| w[0] == w[1]) {
                pass = false;
            }
            let compatibility = match compatibility_test(&eqn, family.p, alpha, depth.unwrap_or(0))
            {
                Ok((_, checks)) => checks,
                Err(SingularityError::CompatibilityFailure { resonance, .. }) => {
                    pass = false;
                    let mut checks: Vec<(i64, bool)> = resonances
                        .iter()
                        .copied()
                        .filter(|&r| r > 0 && r < resonance as i64)
                        .map(|r| (r, true))
                        .collect();
                    checks.push((resonance as i64, false));
                    checks
                }
                Err(other) => return Err(other),
            };
            branches.push(Branch {
                p: family.p,
                alpha: alpha.clone(),
                resonance_poly: rp,
                resonances,
                compatibility,
            });
        }
    }
    let pattern_rule_holds = check_pattern_rule(n, &branches);
    let closed_form_holds = check_closed_form(n, &branches);
    Ok(PainleveReport {
        n,
        branches,
        pattern_rule_holds,
        closed_form_holds,
        painleve_pass: pass,
    })
}

/// Expected resonance set of the branch `α = j`: `{−1..−j} ∪ {1..n−j}`.
pub fn closed_form_resonances(n: u32, j: u32) -> Vec<i64> {
    let mut out: Vec<i64> = (1..=j as i64).map(|v| -v).collect();
    out.extend(1..=(n as i64 - j as i64));
    out.sort_unstable();
    out
}

fn check_closed_form(n: u32, branches: &[Branch]) -> bool {
    if branches.len() != n as usize {
        return false;
    }
    for (idx, branch) in branches.iter().enumerate() {
        let j = idx as u32 + 1;
        if branch.p != -1 || branch.alpha != Rational::from_integer((j as i64).into()) {
            return false;
        }
        if branch.resonances != closed_form_resonances(n, j) {
            return false;
        }
    }
    true
}

/// Each branch's resonances arise from the previous branch's by replacing
/// the largest positive resonance r_max with r_max − (n+1).
fn check_pattern_rule(n: u32, branches: &[Branch]) -> bool {
    for pair in branches.windows(2) {
        let mut transformed = pair[0].resonances.clone();
        let Some(max_pos) = transformed.iter().copied().filter(|&r| r > 0).max() else {
            return false;
        };
        let idx = transformed.iter().position(|&r| r == max_pos).unwrap();
        transformed[idx] = max_pos - (n as i64 + 1);
        transformed.sort_unstable();
        if transformed != pair[1].resonances {
            return false;
        }
    }
    true
}
