//! Plain-text, LaTeX and JSON renderings of polynomials.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::polycore::{MPoly, Monomial, Scalar, VarId, VarKind};

use super::json::{scalar_from_json, scalar_to_json, SpecError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Latex,
    Json,
}

fn plain_monomial(m: &Monomial) -> String {
    if m.is_one() {
        String::new()
    } else {
        m.to_string()
    }
}

fn latex_var(v: VarId) -> String {
    match v.kind() {
        VarKind::Time => format!("t_{{{}}}", v.index()),
        VarKind::TimePrimed => format!("t'_{{{}}}", v.index()),
    }
}

fn latex_monomial(m: &Monomial) -> String {
    let parts: Vec<String> =
        m.exponents().map(|(v, e)| if e == 1 { latex_var(v) } else { format!("{}^{{{}}}", latex_var(v), e) }).collect();
    parts.join(" ")
}

// A term split into a sign and an unsigned body.
struct Piece {
    negative: bool,
    body: String,
}

fn plain_rational_piece(q: &BigRational, radical: bool, mono: &str) -> Piece {
    let num = q.numer().abs();
    let den = q.denom();
    let mut factors = Vec::new();
    if !num.is_one() || (!radical && mono.is_empty()) {
        factors.push(num.to_string());
    }
    if radical {
        factors.push("sqrt2".to_string());
    }
    if !mono.is_empty() {
        factors.push(mono.to_string());
    }
    let mut body = factors.join("*");
    if !den.is_one() {
        body = format!("{body}/{den}");
    }
    Piece { negative: q.is_negative(), body }
}

fn plain_pieces(c: &Scalar, mono: &str) -> Vec<Piece> {
    let (a, b) = (c.rational_part(), c.radical_part());
    match (a.is_zero(), b.is_zero()) {
        (_, true) => vec![plain_rational_piece(a, false, mono)],
        (true, false) => vec![plain_rational_piece(b, true, mono)],
        (false, false) if mono.is_empty() => {
            vec![plain_rational_piece(a, false, ""), plain_rational_piece(b, true, "")]
        }
        (false, false) => vec![Piece { negative: false, body: format!("({c})*{mono}") }],
    }
}

fn join_pieces(pieces: Vec<Piece>) -> String {
    if pieces.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, p) in pieces.into_iter().enumerate() {
        match (i, p.negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&p.body);
    }
    out
}

/// Plain rendering, highest monomials first, e.g. `t_1^3/12 - t_3`.
///
/// The output parses back with [`super::parse_poly`].
pub fn plain(p: &MPoly) -> String {
    let pieces = p.terms().rev().flat_map(|(m, c)| plain_pieces(c, &plain_monomial(m))).collect();
    join_pieces(pieces)
}

fn latex_rational(q: &BigRational, radical: bool, mono: &str) -> Piece {
    let num = q.numer().abs();
    let den = q.denom();
    let root = if radical { "\\sqrt{2}" } else { "" };
    let body = if den.is_one() {
        let lead = if num.is_one() && (radical || !mono.is_empty()) { String::new() } else { num.to_string() };
        [lead, root.to_string(), mono.to_string()]
            .iter()
            .filter(|s| !s.is_empty())
            .cloned()
            .collect::<Vec<_>>()
            .join(" ")
    } else {
        let frac = format!("\\frac{{{num}{}}}{{{den}}}", if radical { " \\sqrt{2}" } else { "" });
        if mono.is_empty() {
            frac
        } else {
            format!("{frac} {mono}")
        }
    };
    Piece { negative: q.is_negative(), body }
}

fn latex_scalar(c: &Scalar) -> String {
    let pieces = vec![latex_rational(c.rational_part(), false, ""), latex_rational(c.radical_part(), true, "")];
    join_pieces(pieces.into_iter().filter(|p| p.body != "0").collect())
}

/// LaTeX rendering with `\frac` coefficients and `\sqrt{2}`.
pub fn latex(p: &MPoly) -> String {
    let mut pieces = Vec::new();
    for (m, c) in p.terms().rev() {
        let mono = latex_monomial(m);
        let (a, b) = (c.rational_part(), c.radical_part());
        match (a.is_zero(), b.is_zero()) {
            (_, true) => pieces.push(latex_rational(a, false, &mono)),
            (true, false) => pieces.push(latex_rational(b, true, &mono)),
            (false, false) if mono.is_empty() => {
                pieces.push(latex_rational(a, false, ""));
                pieces.push(latex_rational(b, true, ""));
            }
            (false, false) => {
                pieces.push(Piece { negative: false, body: format!("\\left({}\\right) {mono}", latex_scalar(c)) })
            }
        }
    }
    join_pieces(pieces)
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    exponents: BTreeMap<String, u16>,
    coeff: Value,
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    terms: Vec<JsonTerm>,
}

/// `{"terms": [{"exponents": {"t_1": 3}, "coeff": ["1/12", "0"]}, ...]}`, the
/// coefficient being the pair (rational part, coefficient of √2).
pub fn poly_to_json(p: &MPoly) -> Value {
    let terms = p
        .terms()
        .rev()
        .map(|(m, c)| JsonTerm {
            exponents: m.exponents().map(|(v, e)| (v.to_string(), e)).collect(),
            coeff: scalar_to_json(c),
        })
        .collect();
    serde_json::to_value(JsonPoly { terms }).expect("serialisable")
}

fn parse_var(name: &str) -> Option<VarId> {
    let (kind, idx) = if let Some(rest) = name.strip_prefix("t'_") {
        (VarKind::TimePrimed, rest)
    } else {
        (VarKind::Time, name.strip_prefix("t_")?)
    };
    let j: u32 = idx.parse().ok()?;
    if j > super::parse::MAX_TIME_INDEX {
        return None;
    }
    VarId::new(kind, j)
}

/// Inverse of [`poly_to_json`]. Also accepts a plain-syntax string.
pub fn poly_from_json(v: &Value) -> Result<MPoly, SpecError> {
    if let Value::String(s) = v {
        return super::parse_poly(s).map_err(|e| SpecError::new("", e.to_string()));
    }
    let doc: JsonPoly = serde_json::from_value(v.clone()).map_err(|e| SpecError::new("", e.to_string()))?;
    let mut out = MPoly::zero();
    for (i, term) in doc.terms.iter().enumerate() {
        let mut exps = Vec::new();
        for (name, &e) in &term.exponents {
            let var = parse_var(name)
                .ok_or_else(|| SpecError::new(format!("terms[{i}].exponents"), format!("unknown variable {name:?}")))?;
            exps.push((var, e));
        }
        let c = scalar_from_json(&term.coeff).map_err(|e| e.within(&format!("terms[{i}].coeff")))?;
        out.add_term(Monomial::from_exponents(exps), &c);
    }
    Ok(out)
}

pub fn render(p: &MPoly, format: Format) -> String {
    match format {
        Format::Plain => plain(p),
        Format::Latex => latex(p),
        Format::Json => poly_to_json(p).to_string(),
    }
}
