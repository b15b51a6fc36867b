//! Canonical JSON forms.
//!
//! A differential polynomial serialises as a list of term records
//! `{"coeff": "p/q", "x": int, "derivs": {"k": e_k, ...}}` in descending
//! canonical order; level-graded polynomials append `"eweight"` to each
//! record. Field order is fixed as written. This is the interchange
//! format of the command-line tool and its fixtures, so both directions
//! are implemented.

use std::str::FromStr;

use diffseq_core::diffalg::{DiffPoly, ExpDiffPoly, Jet, JetMonomial, Rational};
use diffseq_core::report::VerificationFailure;
use diffseq_core::singularity::PainleveReport;
use diffseq_core::unipoly::UniPoly;
use serde_json::{json, Map, Value};

fn term_record(m: &JetMonomial, coeff: &Rational, eweight: Option<i64>) -> Value {
    let mut derivs = Map::new();
    for (k, e) in m.jet_factors() {
        derivs.insert(k.to_string(), json!(e));
    }
    let mut record = Map::new();
    record.insert("coeff".into(), json!(coeff.to_string()));
    record.insert("x".into(), json!(m.x_exp()));
    record.insert("derivs".into(), Value::Object(derivs));
    if let Some(level) = eweight {
        record.insert("eweight".into(), json!(level));
    }
    Value::Object(record)
}

/// Term list in descending canonical order.
pub fn diffpoly_to_json(p: &DiffPoly) -> Value {
    Value::Array(
        p.terms_desc()
            .map(|(m, c)| term_record(m, c, None))
            .collect(),
    )
}

/// Term list with levels, ascending in level then descending in term.
pub fn expdiffpoly_to_json(p: &ExpDiffPoly) -> Value {
    let mut records = Vec::new();
    for (level, poly) in p.levels() {
        for (m, c) in poly.terms_desc() {
            records.push(term_record(m, c, Some(level)));
        }
    }
    Value::Array(records)
}

fn rational_from_json(v: &Value) -> Result<Rational, String> {
    let s = v.as_str().ok_or("coefficient must be a string")?;
    Rational::from_str(s).map_err(|e| format!("bad rational {s:?}: {e}"))
}

fn term_from_json(v: &Value) -> Result<(JetMonomial, Rational, i64), String> {
    let record = v.as_object().ok_or("term must be an object")?;
    let coeff = rational_from_json(record.get("coeff").ok_or("missing coeff")?)?;
    let x = record
        .get("x")
        .and_then(Value::as_u64)
        .ok_or("missing x exponent")? as u32;
    let mut monomial = JetMonomial::x_power(x);
    let derivs = record
        .get("derivs")
        .and_then(Value::as_object)
        .ok_or("missing derivs object")?;
    for (k, e) in derivs {
        let order: u32 = k
            .parse()
            .map_err(|_| format!("bad derivative order {k:?}"))?;
        let exp = e.as_u64().ok_or("derivative exponent must be an integer")? as u32;
        monomial = monomial.mul(&JetMonomial::jet_power(order, exp));
    }
    let eweight = record.get("eweight").and_then(Value::as_i64).unwrap_or(0);
    Ok((monomial, coeff, eweight))
}

pub fn diffpoly_from_json(v: &Value) -> Result<DiffPoly, String> {
    let terms = v.as_array().ok_or("polynomial must be an array of terms")?;
    let mut out = DiffPoly::zero();
    for term in terms {
        let (m, c, eweight) = term_from_json(term)?;
        if eweight != 0 {
            return Err("unexpected exponential weight in a plain polynomial".into());
        }
        out.add_term(m, c);
    }
    Ok(out)
}

pub fn expdiffpoly_from_json(v: &Value) -> Result<ExpDiffPoly, String> {
    let terms = v.as_array().ok_or("polynomial must be an array of terms")?;
    let mut out = ExpDiffPoly::zero();
    for term in terms {
        let (m, c, eweight) = term_from_json(term)?;
        out = &out + &ExpDiffPoly::at_level(eweight, DiffPoly::from_term(m, c));
    }
    Ok(out)
}

/// Member header plus its term list.
pub fn member_to_json(n: u32, adjoint: bool, body: &DiffPoly) -> Value {
    let mut obj = Map::new();
    obj.insert("n".into(), json!(n));
    obj.insert("adjoint".into(), json!(adjoint));
    obj.insert("terms".into(), diffpoly_to_json(body));
    Value::Object(obj)
}

/// `{"coeffs": ["a0", "a1", ...]}`.
pub fn unipoly_to_json(p: &UniPoly) -> Value {
    let coeffs: Vec<Value> = p.coeffs().iter().map(|c| json!(c.to_string())).collect();
    json!({ "coeffs": coeffs })
}

pub fn unipoly_from_json(v: &Value) -> Result<UniPoly, String> {
    let coeffs = v
        .as_object()
        .and_then(|o| o.get("coeffs"))
        .and_then(Value::as_array)
        .ok_or("expected {\"coeffs\": [...]}")?;
    let coeffs: Result<Vec<Rational>, String> = coeffs.iter().map(rational_from_json).collect();
    Ok(UniPoly::from_coeffs(coeffs?))
}

/// Point generators as `{"type": "point", "xi": ..., "eta": ...}`,
/// evolutionary ones as `{"type": "evolutionary", "q": ...}`.
pub fn generator_to_json(g: &diffseq_core::symmetry::Generator) -> Value {
    use diffseq_core::symmetry::Generator;
    let mut obj = Map::new();
    match g {
        Generator::Point(p) => {
            obj.insert("type".into(), json!("point"));
            obj.insert("xi".into(), diffpoly_to_json(p.xi()));
            obj.insert("eta".into(), diffpoly_to_json(p.eta()));
            obj.insert("q".into(), Value::Null);
        }
        Generator::Evolutionary(e) => {
            obj.insert("type".into(), json!("evolutionary"));
            obj.insert("xi".into(), Value::Null);
            obj.insert("eta".into(), Value::Null);
            obj.insert("q".into(), expdiffpoly_to_json(e.characteristic()));
        }
    }
    Value::Object(obj)
}

/// The singularity report schema:
/// `{"n", "branches": [{"alpha", "p", "resonances", "compatibility"}],
///   "pattern_rule_holds", "painleve_pass"}`.
pub fn painleve_to_json(report: &PainleveReport) -> Value {
    let branches: Vec<Value> = report
        .branches
        .iter()
        .map(|b| {
            let compatibility: Vec<Value> = b
                .compatibility
                .iter()
                .map(|(r, ok)| json!({ "r": r, "pass": ok }))
                .collect();
            let mut obj = Map::new();
            obj.insert("alpha".into(), json!(b.alpha.to_string()));
            obj.insert("p".into(), json!(b.p));
            obj.insert("resonances".into(), json!(b.resonances));
            obj.insert("compatibility".into(), Value::Array(compatibility));
            Value::Object(obj)
        })
        .collect();
    let mut obj = Map::new();
    obj.insert("n".into(), json!(report.n));
    obj.insert("branches".into(), Value::Array(branches));
    obj.insert(
        "pattern_rule_holds".into(),
        json!(report.pattern_rule_holds),
    );
    obj.insert("painleve_pass".into(), json!(report.painleve_pass));
    Value::Object(obj)
}

/// Failure report naming module, operation and the exact residual.
pub fn failure_to_json(f: &VerificationFailure) -> Value {
    let mut obj = Map::new();
    obj.insert("module".into(), json!(f.module));
    obj.insert("operation".into(), json!(f.operation));
    obj.insert("detail".into(), json!(f.detail));
    obj.insert("residual".into(), expdiffpoly_to_json(&f.residual));
    Value::Object(obj)
}

pub fn jet_to_json(jet: &Jet) -> Value {
    let values: Vec<Value> = jet.values().iter().map(|v| json!(v.to_string())).collect();
    json!({ "x0": jet.x0().to_string(), "values": values })
}
