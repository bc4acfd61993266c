//! Shared JSON helpers: exact scalars and path-tagged errors.

use std::fmt;

use serde_json::Value;

use crate::polycore::Scalar;

use super::parse::parse_scalar;

/// A decoding failure tagged with the JSON path of the offending field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub path: String,
    pub message: String,
}

impl SpecError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        SpecError { path: path.into(), message: message.into() }
    }

    /// Prefixes the path with an enclosing field.
    pub fn within(mut self, outer: &str) -> Self {
        self.path = match (outer.is_empty(), self.path.is_empty()) {
            (true, _) => self.path,
            (false, true) => outer.to_string(),
            (false, false) if self.path.starts_with('[') => format!("{outer}{}", self.path),
            (false, false) => format!("{outer}.{}", self.path),
        };
        self
    }
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for SpecError {}

/// `[rational, coefficient of √2]`, both as `"p/q"` strings.
pub fn scalar_to_json(c: &Scalar) -> Value {
    Value::Array(vec![Value::String(c.rational_part().to_string()), Value::String(c.radical_part().to_string())])
}

fn scalar_atom(v: &Value) -> Result<Scalar, SpecError> {
    match v {
        Value::String(s) => parse_scalar(s).map_err(|e| SpecError::new("", format!("{s:?}: {e}"))),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Scalar::from_int(i)),
            None => Err(SpecError::new("", "numbers must be integers; write fractions as strings \"p/q\"")),
        },
        _ => Err(SpecError::new("", "expected a string or an integer")),
    }
}

/// Accepts `"p/q"`, an expression such as `"1/2 - sqrt2"`, an integer, or a
/// pair `[a, b]` meaning `a + b·√2`.
pub fn scalar_from_json(v: &Value) -> Result<Scalar, SpecError> {
    match v {
        Value::Array(items) if items.len() == 2 => {
            let a = scalar_atom(&items[0]).map_err(|e| e.within("[0]"))?;
            let b = scalar_atom(&items[1]).map_err(|e| e.within("[1]"))?;
            Ok(a + b * Scalar::sqrt2())
        }
        Value::Array(_) => Err(SpecError::new("", "a coefficient pair must have exactly two entries")),
        other => scalar_atom(other),
    }
}
