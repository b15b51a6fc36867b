//! Text and LaTeX renderers.
//!
//! Text output reuses the canonical `Display` forms of the core types
//! (descending term order, primes up to `y'''` then `y^(k)`). LaTeX
//! output follows the conventional typeset layout of the members:
//! coefficients juxtaposed with the variables and braced exponents, e.g.
//! `y' + y^{2}`.

use diffseq_core::diffalg::{DiffPoly, ExpDiffPoly, JetMonomial, Rational};
use diffseq_core::singularity::PainleveReport;
use diffseq_core::unipoly::UniPoly;
use num_traits::{One, Signed};

/// `p/q` as LaTeX (`\frac{p}{q}` unless integral).
pub fn rational_latex(r: &Rational) -> String {
    if r.is_integer() {
        format!("{r}")
    } else {
        let sign = if r.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", r.numer().magnitude(), r.denom())
    }
}

fn jet_symbol_latex(order: u32) -> String {
    match order {
        0 => "y".into(),
        1 => "y'".into(),
        2 => "y''".into(),
        3 => "y'''".into(),
        k => format!("y^{{({k})}}"),
    }
}

fn monomial_latex(m: &JetMonomial) -> String {
    let mut out = String::new();
    if m.x_exp() == 1 {
        out.push('x');
    } else if m.x_exp() > 1 {
        out.push_str(&format!("x^{{{}}}", m.x_exp()));
    }
    for (k, e) in m.jet_factors() {
        out.push_str(&jet_symbol_latex(k));
        if e > 1 {
            out.push_str(&format!("^{{{e}}}"));
        }
    }
    out
}

/// A differential polynomial in typeset form, descending term order.
pub fn diffpoly_latex(p: &DiffPoly) -> String {
    if p.is_zero() {
        return "0".into();
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
        let a = c.abs();
        let vars = monomial_latex(m);
        if vars.is_empty() {
            out.push_str(&rational_latex(&a));
        } else {
            if !a.is_one() {
                out.push_str(&rational_latex(&a));
            }
            out.push_str(&vars);
        }
    }
    out
}

/// A level-graded polynomial; nonzero levels are wrapped and tagged with
/// the exponential weight `E^λ` (`E = exp[∫y dx]`).
pub fn expdiffpoly_latex(p: &ExpDiffPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (l, poly) in p.levels() {
        if l == 0 {
            parts.push(diffpoly_latex(poly));
        } else {
            parts.push(format!("\\left({}\\right) E^{{{l}}}", diffpoly_latex(poly)));
        }
    }
    parts.join(" + ")
}

/// A polynomial in `x`, ascending powers.
pub fn unipoly_latex(p: &UniPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let mut first = true;
    for (k, c) in p.coeffs().iter().enumerate() {
        if num_traits::Zero::is_zero(c) {
            continue;
        }
        let neg = c.is_negative();
        if first {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        first = false;
        let a = c.abs();
        if k == 0 {
            out.push_str(&rational_latex(&a));
        } else {
            if !a.is_one() {
                out.push_str(&rational_latex(&a));
            }
            if k == 1 {
                out.push('x');
            } else {
                out.push_str(&format!("x^{{{k}}}"));
            }
        }
    }
    out
}

/// Render a resonance list as `-1, 1, 2`.
pub fn resonance_list(resonances: &[i64]) -> String {
    resonances
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// One text line per branch of a singularity report.
pub fn painleve_text(report: &PainleveReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "member {}: singularity analysis (pole order 1)\n",
        report.n
    ));
    for branch in &report.branches {
        let compat = if branch.compatibility.is_empty() {
            "none required".to_string()
        } else if branch.compatibility.iter().all(|&(_, ok)| ok) {
            "pass".to_string()
        } else {
            let failed: Vec<String> = branch
                .compatibility
                .iter()
                .filter(|&&(_, ok)| !ok)
                .map(|(r, _)| format!("r={r}"))
                .collect();
            format!("FAIL at {}", failed.join(", "))
        };
        out.push_str(&format!(
            "alpha = {}: r = {}; compatibility: {compat}\n",
            branch.alpha,
            resonance_list(&branch.resonances),
        ));
    }
    out.push_str(&format!(
        "pattern rule: {}\n",
        if report.pattern_rule_holds {
            "holds"
        } else {
            "VIOLATED"
        }
    ));
    out.push_str(&format!(
        "closed form: {}\n",
        if report.closed_form_holds {
            "matches"
        } else {
            "VIOLATED"
        }
    ));
    out.push_str(&format!("{}\n", general_table_row()));
    out.push_str(&format!(
        "painleve test: {}\n",
        if report.painleve_pass { "PASS" } else { "FAIL" }
    ));
    out
}

/// The closed-form row describing the last branch of every member.
pub fn general_table_row() -> String {
    "alpha = n: r = -1,-2,...,-n".to_string()
}

/// The singularity report as a LaTeX tabular in the layout of the
/// published summary tables.
pub fn painleve_latex(report: &PainleveReport) -> String {
    let mut out = String::new();
    out.push_str("\\begin{tabular}{ccl}\n");
    out.push_str("$n$ & $\\alpha$ & resonances \\\\\n\\hline\n");
    for branch in &report.branches {
        out.push_str(&format!(
            "{} & ${}$ & ${}$ \\\\\n",
            report.n,
            rational_latex(&branch.alpha),
            resonance_list(&branch.resonances).replace(", ", ",\\ "),
        ));
    }
    out.push_str("\\end{tabular}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use diffseq_core::diffalg::{rat, rat_int};
    use diffseq_core::sequence::Sequence;

    #[test]
    fn first_member_latex() {
        assert_eq!(diffpoly_latex(&Sequence::new().member(1)), "y' + y^{2}");
    }

    #[test]
    fn fourth_member_latex_layout() {
        // Matches the published term order of the fourth member.
        let latex = diffpoly_latex(&Sequence::new().member(4));
        assert_eq!(
            latex,
            "y^{(4)} + 5yy''' + 10y'y'' + 10y^{2}y'' + 15yy'^{2} + 10y^{3}y' + y^{5}"
        );
    }

    #[test]
    fn rational_latex_forms() {
        assert_eq!(rational_latex(&rat_int(3)), "3");
        assert_eq!(rational_latex(&rat(3, 2)), "\\frac{3}{2}");
        assert_eq!(rational_latex(&rat(-3, 2)), "-\\frac{3}{2}");
    }

    #[test]
    fn exponential_levels_latex() {
        let p = ExpDiffPoly::at_level(-1, -&DiffPoly::y());
        assert_eq!(expdiffpoly_latex(&p), "\\left(-y\\right) E^{-1}");
    }

    #[test]
    fn general_row_text() {
        assert_eq!(general_table_row(), "alpha = n: r = -1,-2,...,-n");
    }

    #[test]
    fn painleve_table_layout() {
        let mut seq = Sequence::new();
        let report = diffseq_core::singularity::painleve_report(2, None, &mut seq).unwrap();
        let latex = painleve_latex(&report);
        assert!(latex.starts_with("\\begin{tabular}{ccl}"));
        assert!(latex.contains("2 & $1$ & $-1,\\ 1$"));
        assert!(latex.contains("2 & $2$ & $-2,\\ -1$"));
        assert!(latex.trim_end().ends_with("\\end{tabular}"));
    }
}
