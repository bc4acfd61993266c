//! JSON files holding already-constructed tau-functions.
//!
//! `{"family": "bkp", "tau": <poly>}` for one tau and
//! `{"family": "mdkp", "tau0": <poly>, "tau1": <poly>}` for a pair, where a
//! polynomial is either the `{"terms": [...]}` object of
//! [`super::poly_to_json`] or a plain-syntax string such as `"1 + t_1^3"`.

use std::str::FromStr;

use serde_json::{json, Value};

use crate::polycore::MPoly;
use crate::tau_bkp::Family;

use super::json::SpecError;
use super::render::{poly_from_json, poly_to_json};

#[derive(Clone, Debug, PartialEq)]
pub enum TauFile {
    Single { family: Family, tau: MPoly },
    Pair { tau0: MPoly, tau1: MPoly },
}

fn family_from_name(name: &str) -> Option<Family> {
    match name {
        "bkp" => Some(Family::Bkp),
        "dkp0" => Some(Family::Dkp0),
        "dkp1" => Some(Family::Dkp1),
        _ => None,
    }
}

impl TauFile {
    /// True when the document looks like a tau file rather than a problem spec.
    pub fn is_tau_document(v: &Value) -> bool {
        v.as_object().is_some_and(|o| o.contains_key("tau") || o.contains_key("tau0"))
    }

    pub fn to_json(&self) -> Value {
        match self {
            TauFile::Single { family, tau } => json!({"family": family.name(), "tau": poly_to_json(tau)}),
            TauFile::Pair { tau0, tau1 } => {
                json!({"family": "mdkp", "tau0": poly_to_json(tau0), "tau1": poly_to_json(tau1)})
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<TauFile, SpecError> {
        let obj = v.as_object().ok_or_else(|| SpecError::new("", "expected an object"))?;
        for key in obj.keys() {
            if !["family", "tau", "tau0", "tau1"].contains(&key.as_str()) {
                return Err(SpecError::new(key.clone(), "unknown field"));
            }
        }
        let poly = |name: &str| -> Result<MPoly, SpecError> {
            let v = obj.get(name).ok_or_else(|| SpecError::new(name, "missing"))?;
            poly_from_json(v).map_err(|e| e.within(name))
        };
        let family = obj
            .get("family")
            .map(|f| f.as_str().ok_or_else(|| SpecError::new("family", "expected a string")))
            .transpose()?;
        match (obj.contains_key("tau"), family) {
            (true, Some("mdkp")) => Err(SpecError::new("family", "an mdkp file holds tau0 and tau1")),
            (true, f) => {
                if obj.contains_key("tau0") || obj.contains_key("tau1") {
                    return Err(SpecError::new("tau", "give either tau or the pair tau0, tau1"));
                }
                let family = match f {
                    None => Family::Bkp,
                    Some(name) => family_from_name(name)
                        .ok_or_else(|| SpecError::new("family", format!("unknown family {name:?}")))?,
                };
                Ok(TauFile::Single { family, tau: poly("tau")? })
            }
            (false, None | Some("mdkp")) => Ok(TauFile::Pair { tau0: poly("tau0")?, tau1: poly("tau1")? }),
            (false, Some(name)) => Err(SpecError::new("family", format!("family {name:?} holds a single tau"))),
        }
    }
}

impl FromStr for TauFile {
    type Err = SpecError;

    fn from_str(text: &str) -> Result<TauFile, SpecError> {
        let v: Value = serde_json::from_str(text).map_err(|e| SpecError::new("", format!("invalid JSON: {e}")))?;
        TauFile::from_json(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_poly;

    #[test]
    fn round_trip() {
        let f = TauFile::Pair { tau0: parse_poly("1 + t'_1").unwrap(), tau1: parse_poly("sqrt2*t_1/2").unwrap() };
        assert_eq!(TauFile::from_json(&f.to_json()).unwrap(), f);
        let g = TauFile::from_str(r#"{"tau": "1+t_1^3"}"#).unwrap();
        assert_eq!(g, TauFile::Single { family: Family::Bkp, tau: parse_poly("1 + t_1^3").unwrap() });
    }

    #[test]
    fn rejects_mixed_shapes() {
        assert!(TauFile::from_str(r#"{"tau": "1", "tau0": "1"}"#).is_err());
        assert!(TauFile::from_str(r#"{"family": "dkp0", "tau0": "1", "tau1": "1"}"#).is_err());
        assert!(TauFile::from_str(r#"{"tau": "t_2"}"#).is_err());
    }
}
