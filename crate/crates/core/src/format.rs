//! Rendering of polynomials as grouped text, LaTeX, or a structured JSON
//! record list that parses back exactly.

use crate::error::{Error, Result};
use crate::ring::{Context, Family, Monomial, TruncPoly, VarId};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::str::FromStr;

pub const SCHEMA: &str = "grothendieck-poly/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
    JsonLike,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "json-like" | "json" => Ok(Format::JsonLike),
            _ => Err(Error::Parse(format!("unknown format {}", s))),
        }
    }
}

pub fn render(p: &TruncPoly, format: Format) -> String {
    match format {
        Format::Text => to_text(p),
        Format::Latex => to_latex(p),
        Format::JsonLike => to_json(p),
    }
}

struct Style {
    var: fn(VarId) -> String,
    pow: fn(&str, u32) -> String,
    mul: &'static str,
    open: &'static str,
    close: &'static str,
}

const TEXT: Style = Style {
    var: |v| v.to_string(),
    pow: |b, e| format!("{}^{}", b, e),
    mul: "*",
    open: "(",
    close: ")",
};

const LATEX: Style = Style {
    var: |v| match v.family {
        Family::X => format!("x_{{{}}}", v.index),
        Family::Alpha => format!("\\alpha_{{{}}}", v.index),
        Family::Beta => format!("\\beta_{{{}}}", v.index),
    },
    pow: |b, e| format!("{}^{{{}}}", b, e),
    mul: " ",
    open: "\\left(",
    close: "\\right)",
};

/// Graded order: total degree, then larger exponents of earlier variables first.
fn graded_key(m: &Monomial) -> (u32, Reverse<Vec<(Reverse<VarId>, u32)>>) {
    (m.degree(), Reverse(m.iter().map(|&(v, e)| (Reverse(v), e)).collect()))
}

fn monomial(style: &Style, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .iter()
        .map(|&(v, e)| {
            let b = (style.var)(v);
            if e == 1 { b } else { (style.pow)(&b, e) }
        })
        .collect();
    parts.join(style.mul)
}

/// `|c|·m` without sign; `1` stands alone only when `m` is trivial.
fn term(style: &Style, c: &BigInt, m: &[&Monomial]) -> String {
    let body: Vec<String> = m.iter().filter(|m| !m.is_one()).map(|m| monomial(style, m)).collect();
    let mag = c.abs();
    match (body.is_empty(), mag.is_one()) {
        (true, _) => mag.to_string(),
        (false, true) => body.join(style.mul),
        (false, false) => format!("{}{}{}", mag, style.mul, body.join(style.mul)),
    }
}

fn grouped(p: &TruncPoly, style: &Style) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut groups: BTreeMap<(u32, Reverse<Vec<(Reverse<VarId>, u32)>>), (Monomial, Vec<(Monomial, BigInt)>)> =
        BTreeMap::new();
    for (m, c) in p.terms() {
        let pm = m.param_part();
        groups.entry(graded_key(&pm)).or_insert_with(|| (pm, Vec::new())).1.push((m.x_part(), c.clone()));
    }
    let mut out = String::new();
    for (k, (_, (pm, mut terms))) in groups.into_iter().enumerate() {
        terms.sort_by_key(|(m, _)| graded_key(m));
        let negative = terms[0].1.is_negative();
        let body = if terms.len() == 1 {
            term(style, &terms[0].1, &[&pm, &terms[0].0])
        } else {
            let mut inner = String::new();
            for (i, (m, c)) in terms.iter().enumerate() {
                let neg = c.is_negative() != negative;
                if i > 0 || neg {
                    inner.push(if neg { '-' } else { '+' });
                }
                inner.push_str(&term(style, c, &[m]));
            }
            let wrapped = format!("{}{}{}", style.open, inner, style.close);
            if pm.is_one() { wrapped } else { format!("{}{}{}", monomial(style, &pm), style.mul, wrapped) }
        };
        match (k, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    out
}

/// Terms grouped by parameter monomial, e.g. `(x1+x2) + a1*(x1^2+x1*x2+x2^2) - b1*x1*x2`.
pub fn to_text(p: &TruncPoly) -> String {
    grouped(p, &TEXT)
}

/// The grouped form with `x_{i}`, `\alpha_{i}`, `\beta_{i}`.
pub fn to_latex(p: &TruncPoly) -> String {
    grouped(p, &LATEX)
}

fn exponents(m: &Monomial, family: Family, len: usize) -> Vec<u32> {
    let mut v = vec![0; len];
    for &(var, e) in m.iter() {
        if var.family == family {
            v[var.index as usize - 1] = e;
        }
    }
    v
}

fn max_index(m: &Monomial, family: Family) -> usize {
    m.iter().filter(|(v, _)| v.family == family).map(|(v, _)| v.index as usize).max().unwrap_or(0)
}

/// `{"schema", "n", "d", "terms": [{"coeff", "x", "a", "b"}]}` with
/// coefficients as decimal strings and exponent vectors per family.
pub fn to_json(p: &TruncPoly) -> String {
    let ctx = p.ctx();
    let terms: Vec<Value> = p
        .sorted_terms()
        .into_iter()
        .map(|(m, c)| {
            json!({
                "coeff": c.to_string(),
                "x": exponents(m, Family::X, ctx.n as usize),
                "a": exponents(m, Family::Alpha, max_index(m, Family::Alpha)),
                "b": exponents(m, Family::Beta, max_index(m, Family::Beta)),
            })
        })
        .collect();
    json!({ "schema": SCHEMA, "n": ctx.n, "d": ctx.d, "terms": terms }).to_string()
}

fn bad(what: &str) -> Error {
    Error::Parse(format!("structured polynomial: {}", what))
}

fn exps(v: &Value, key: &str) -> Result<Vec<u32>> {
    v.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| bad(key))?
        .iter()
        .map(|e| e.as_u64().map(|e| e as u32).ok_or_else(|| bad(key)))
        .collect()
}

/// Inverse of [`to_json`].
pub fn from_json(s: &str) -> Result<TruncPoly> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    if v.get("schema").and_then(Value::as_str) != Some(SCHEMA) {
        return Err(bad("unknown schema"));
    }
    let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("n"))? as u32;
    let d = v.get("d").and_then(Value::as_u64).ok_or_else(|| bad("d"))? as u32;
    let ctx = Context::new(n, d);
    let mut terms = Vec::new();
    for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("terms"))? {
        let c: BigInt = t.get("coeff").and_then(Value::as_str).ok_or_else(|| bad("coeff"))?.parse().map_err(|_| bad("coeff"))?;
        if c.is_zero() {
            return Err(bad("zero coefficient"));
        }
        let mut pairs = Vec::new();
        for (key, family) in [("x", Family::X), ("a", Family::Alpha), ("b", Family::Beta)] {
            for (i, e) in exps(t, key)?.into_iter().enumerate() {
                if e > 0 {
                    pairs.push((VarId::new(family, i as u32 + 1), e));
                }
            }
        }
        terms.push((Monomial::from_pairs(pairs), c));
    }
    TruncPoly::from_terms(ctx, terms)
}
