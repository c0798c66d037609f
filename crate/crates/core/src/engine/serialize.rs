use serde_json::{json, Map, Value};

use super::element::GradedElement;
use super::generator::Gen;
use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, Scalar};

fn parse_err(detail: impl Into<String>) -> Error {
    Error::Parse { what: "graded element".into(), detail: detail.into() }
}

/// Canonical JSON form: terms in normal-form order, odd words sorted.
pub fn to_json<S: Scalar>(x: &GradedElement<S>) -> Value {
    let terms: Vec<Value> = x
        .terms()
        .map(|(m, c)| {
            let even: Map<String, Value> = m.even().iter().map(|(g, p)| (g.name(), json!(p))).collect();
            let odd: Vec<Value> = m.odd().iter().map(|g| Value::String(g.name())).collect();
            json!({ "coeff": c.to_string(), "even": even, "odd": odd })
        })
        .collect();
    json!({ "terms": terms })
}

pub fn from_json<S: Scalar>(v: &Value) -> Result<GradedElement<S>> {
    let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| parse_err("missing `terms` array"))?;
    let mut raw = Vec::with_capacity(terms.len());
    for t in terms {
        let coeff = t.get("coeff").and_then(Value::as_str).ok_or_else(|| parse_err("term without `coeff`"))?;
        let c: S = parse_scalar(coeff).ok_or_else(|| parse_err(format!("bad coefficient `{coeff}`")))?;
        let mut word = Vec::new();
        if let Some(even) = t.get("even") {
            let even = even.as_object().ok_or_else(|| parse_err("`even` must be an object"))?;
            for (name, p) in even {
                let g = Gen::parse(name)?;
                if g.is_odd() {
                    return Err(parse_err(format!("{name} is odd")));
                }
                let p = p.as_u64().ok_or_else(|| parse_err(format!("bad exponent for {name}")))?;
                word.extend(std::iter::repeat_n(g, p as usize));
            }
        }
        if let Some(odd) = t.get("odd") {
            let odd = odd.as_array().ok_or_else(|| parse_err("`odd` must be an array"))?;
            for name in odd {
                let name = name.as_str().ok_or_else(|| parse_err("odd entries must be strings"))?;
                let g = Gen::parse(name)?;
                if !g.is_odd() {
                    return Err(parse_err(format!("{name} is even")));
                }
                word.push(g);
            }
        }
        raw.push((c, word));
    }
    Ok(GradedElement::from_words(raw))
}

/// LaTeX rendering of an element as a sum of monomials.
pub fn to_latex<S: Scalar>(x: &GradedElement<S>) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in x.terms().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = c.abs();
        let body = monomial_latex(m);
        if body.is_empty() {
            out.push_str(&scalar_latex(&abs));
        } else if abs.is_one() {
            out.push_str(&body);
        } else {
            out.push_str(&scalar_latex(&abs));
            out.push_str("\\,");
            out.push_str(&body);
        }
    }
    out
}

pub fn scalar_latex<S: Scalar>(c: &S) -> String {
    let s = c.to_string();
    match s.split_once('/') {
        Some((n, d)) => format!("\\tfrac{{{n}}}{{{d}}}"),
        None => s,
    }
}

fn monomial_latex(m: &Monomial) -> String {
    let mut parts: Vec<String> =
        m.even().iter().map(|(g, p)| if *p == 1 { g.latex() } else { format!("({})^{{{p}}}", g.latex()) }).collect();
    parts.extend(m.odd().iter().map(|g| g.latex()));
    parts.join(" ")
}
