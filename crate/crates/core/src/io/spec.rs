//! The JSON problem description accepted by the command-line tool.
//!
//! ```json
//! {
//!   "hierarchy": "dkp1",
//!   "partition": [3, 1, 0],
//!   "c": [["1/2", "0", "-1"], [], "zero"],
//!   "b": ["0", "sqrt2/2", "1"],
//!   "seed": 7
//! }
//! ```
//!
//! `c` may also be the string `"zero"` or `"random"`, and `b` (DKP only)
//! likewise. Instead of constants a list of `generators` may be given, each
//! `{"pivot": λ, "coeffs": {"mode": coefficient}}`; type-D modes are
//! half-integers such as `"-3/2"`. An `mdkp` hierarchy also takes
//! `"mdkp": {"drop_index": j, "a0": ..., "a1": ..., "variant": "odd_drop"}`.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::fock::{generator_state, Algebra, FockVector, GeneratorB, GeneratorD};
use crate::polycore::Scalar;
use crate::sample;
use crate::tau_bkp::{generators_to_constants, tau_bkp, PartitionExt, ShiftConstants, TauError, TauPoly};
use crate::tau_dkp::{generator_d_to_params, mdkp_pair, tau_dkp_even, tau_dkp_odd, DkpParams, MdkpVariant};

use super::json::{scalar_from_json, SpecError};

pub const MAX_PARTS: usize = 10;
pub const MAX_PART: u32 = 30;
const MAX_SLOTS: usize = 64;
const MAX_MODE: i64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hierarchy {
    Bkp,
    Dkp0,
    Dkp1,
    Mdkp,
}

impl Hierarchy {
    pub fn name(&self) -> &'static str {
        match self {
            Hierarchy::Bkp => "bkp",
            Hierarchy::Dkp0 => "dkp0",
            Hierarchy::Dkp1 => "dkp1",
            Hierarchy::Mdkp => "mdkp",
        }
    }

    fn algebra(&self) -> Algebra {
        match self {
            Hierarchy::Bkp => Algebra::B,
            _ => Algebra::D,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConstSpec {
    Zero,
    Random,
    Given(Vec<Vec<Scalar>>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum BSpec {
    Zero,
    Random,
    Given(Vec<Scalar>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Input {
    Constants { c: ConstSpec, b: BSpec },
    GeneratorsB(Vec<GeneratorB>),
    GeneratorsD(Vec<GeneratorD>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct MdkpOptions {
    pub drop_index: usize,
    pub a0: Scalar,
    pub a1: Scalar,
    pub variant: MdkpVariant,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProblemSpec {
    pub hierarchy: Hierarchy,
    pub partition: PartitionExt,
    pub input: Input,
    pub mdkp: Option<MdkpOptions>,
    pub seed: Option<u64>,
}

/// A constructed tau-function or MDKP pair, with the Fock states behind it
/// when the input was given as generators.
#[derive(Clone, Debug)]
pub enum Built {
    Single { tau: TauPoly, state: Option<FockVector<Scalar>> },
    Pair { tau0: TauPoly, tau1: TauPoly, states: Option<(FockVector<Scalar>, FockVector<Scalar>)> },
}

fn err<T>(path: &str, message: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError::new(path, message))
}

fn tau_err(path: &str, e: TauError) -> SpecError {
    SpecError::new(path, e.to_string())
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, SpecError> {
    v.as_object().ok_or_else(|| SpecError::new(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, SpecError> {
    v.as_array().ok_or_else(|| SpecError::new(path, "expected an array"))
}

fn as_u64(v: &Value, path: &str) -> Result<u64, SpecError> {
    v.as_u64().ok_or_else(|| SpecError::new(path, "expected a nonnegative integer"))
}

fn check_fields(obj: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<(), SpecError> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            let at = if path.is_empty() { key.clone() } else { format!("{path}.{key}") };
            return err(&at, "unknown field");
        }
    }
    Ok(())
}

fn decode_hierarchy(v: Option<&Value>) -> Result<Hierarchy, SpecError> {
    match v.and_then(Value::as_str) {
        Some("bkp") => Ok(Hierarchy::Bkp),
        Some("dkp0") => Ok(Hierarchy::Dkp0),
        Some("dkp1") => Ok(Hierarchy::Dkp1),
        Some("mdkp") => Ok(Hierarchy::Mdkp),
        Some(other) => err("hierarchy", format!("unknown hierarchy {other:?}; expected bkp, dkp0, dkp1 or mdkp")),
        None => err("hierarchy", "missing; expected one of bkp, dkp0, dkp1, mdkp"),
    }
}

fn decode_parts(v: &Value) -> Result<Vec<u32>, SpecError> {
    let items = as_array(v, "partition")?;
    if items.len() > MAX_PARTS {
        return err("partition", format!("at most {MAX_PARTS} parts are supported"));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let path = format!("partition[{i}]");
            let n = as_u64(p, &path)?;
            if n > MAX_PART as u64 {
                return err(&path, format!("parts above {MAX_PART} are not supported"));
            }
            Ok(n as u32)
        })
        .collect()
}

fn make_partition(h: Hierarchy, parts: Vec<u32>) -> Result<PartitionExt, SpecError> {
    let p = match h {
        Hierarchy::Bkp => PartitionExt::strict(parts),
        _ => PartitionExt::new(parts),
    }
    .map_err(|e| tau_err("partition", e))?;
    match (h, p.len() % 2) {
        (Hierarchy::Dkp0, 1) => Err(tau_err("partition", TauError::OddCount(p.len()))),
        (Hierarchy::Dkp1, 0) => Err(tau_err("partition", TauError::EvenCount(p.len()))),
        _ => Ok(p),
    }
}

fn decode_slots(v: &Value, path: &str) -> Result<Vec<Scalar>, SpecError> {
    match v {
        Value::String(s) if s == "zero" => Ok(Vec::new()),
        _ => {
            let items = as_array(v, path)?;
            if items.len() > MAX_SLOTS {
                return err(path, format!("at most {MAX_SLOTS} constants per part"));
            }
            items
                .iter()
                .enumerate()
                .map(|(j, x)| scalar_from_json(x).map_err(|e| e.within(&format!("{path}[{j}]"))))
                .collect()
        }
    }
}

fn decode_c(v: &Value, k: usize) -> Result<ConstSpec, SpecError> {
    match v {
        Value::String(s) if s == "zero" => Ok(ConstSpec::Zero),
        Value::String(s) if s == "random" => Ok(ConstSpec::Random),
        Value::String(s) => err("c", format!("expected \"zero\", \"random\" or a list, got {s:?}")),
        _ => {
            let items = as_array(v, "c")?;
            if items.len() != k {
                return err("c", format!("expected {k} constant lists (one per part), got {}", items.len()));
            }
            let lists =
                items.iter().enumerate().map(|(i, x)| decode_slots(x, &format!("c[{i}]"))).collect::<Result<_, _>>()?;
            Ok(ConstSpec::Given(lists))
        }
    }
}

fn decode_b(v: &Value, k: usize) -> Result<BSpec, SpecError> {
    match v {
        Value::String(s) if s == "zero" => Ok(BSpec::Zero),
        Value::String(s) if s == "random" => Ok(BSpec::Random),
        Value::String(s) => err("b", format!("expected \"zero\", \"random\" or a list, got {s:?}")),
        _ => {
            let items = as_array(v, "b")?;
            if items.len() != k {
                return err("b", format!("expected {k} values (one per part), got {}", items.len()));
            }
            let vals = items
                .iter()
                .enumerate()
                .map(|(i, x)| scalar_from_json(x).map_err(|e| e.within(&format!("b[{i}]"))))
                .collect::<Result<_, _>>()?;
            Ok(BSpec::Given(vals))
        }
    }
}

/// Mode keys: integers for type B, half-integers (`"-3/2"`, `"1/2"`) for type D.
/// Returns the doubled index for D and the index itself for B.
fn decode_mode(key: &str, algebra: Algebra, path: &str) -> Result<i64, SpecError> {
    let bad = || SpecError::new(path, format!("bad mode {key:?}"));
    let key = key.trim();
    let mode = match algebra {
        Algebra::B => key.parse::<i64>().map_err(|_| bad())?,
        Algebra::D => {
            let (num, den) = key.split_once('/').ok_or_else(|| {
                SpecError::new(path, format!("type-D mode {key:?} must be a half-integer like \"-3/2\""))
            })?;
            if den.trim() != "2" {
                return Err(bad());
            }
            let n: i64 = num.trim().parse().map_err(|_| bad())?;
            if n.rem_euclid(2) != 1 {
                return Err(bad());
            }
            n
        }
    };
    if mode.abs() > 2 * MAX_MODE {
        return err(path, format!("mode {key} out of range"));
    }
    Ok(mode)
}

fn decode_generator(v: &Value, algebra: Algebra, path: &str) -> Result<(u32, BTreeMap<i64, Scalar>), SpecError> {
    let obj = as_object(v, path)?;
    check_fields(obj, &["pivot", "coeffs"], path)?;
    let pivot_path = format!("{path}.pivot");
    let pivot = as_u64(obj.get("pivot").unwrap_or(&Value::Null), &pivot_path)?;
    if pivot > MAX_PART as u64 {
        return err(&pivot_path, format!("pivots above {MAX_PART} are not supported"));
    }
    let mut coeffs = BTreeMap::new();
    if let Some(c) = obj.get("coeffs") {
        let cpath = format!("{path}.coeffs");
        for (key, val) in as_object(c, &cpath)? {
            let kpath = format!("{cpath}.{key}");
            let mode = decode_mode(key, algebra, &kpath)?;
            let s = scalar_from_json(val).map_err(|e| e.within(&kpath))?;
            coeffs.insert(mode, s);
        }
    }
    Ok((pivot as u32, coeffs))
}

fn decode_generators(v: &Value, algebra: Algebra) -> Result<Input, SpecError> {
    let items = as_array(v, "generators")?;
    if items.is_empty() {
        return err("generators", "at least one generator is required");
    }
    if items.len() > MAX_PARTS {
        return err("generators", format!("at most {MAX_PARTS} generators are supported"));
    }
    let mut raw = Vec::new();
    for (i, g) in items.iter().enumerate() {
        raw.push(decode_generator(g, algebra, &format!("generators[{i}]"))?);
    }
    let fock = |i: usize, e: crate::fock::FockError| SpecError::new(format!("generators[{i}]"), e.to_string());
    Ok(match algebra {
        Algebra::B => Input::GeneratorsB(
            raw.into_iter()
                .enumerate()
                .map(|(i, (p, c))| GeneratorB::new(p, c).map_err(|e| fock(i, e)))
                .collect::<Result<_, _>>()?,
        ),
        Algebra::D => Input::GeneratorsD(
            raw.into_iter()
                .enumerate()
                .map(|(i, (p, c))| GeneratorD::new(p, c).map_err(|e| fock(i, e)))
                .collect::<Result<_, _>>()?,
        ),
    })
}

fn decode_mdkp(v: Option<&Value>, k: usize) -> Result<MdkpOptions, SpecError> {
    let Some(v) = v else {
        return err("mdkp", "required for the mdkp hierarchy");
    };
    let obj = as_object(v, "mdkp")?;
    check_fields(obj, &["drop_index", "a0", "a1", "variant"], "mdkp")?;
    let drop = as_u64(obj.get("drop_index").unwrap_or(&Value::Null), "mdkp.drop_index")? as usize;
    if drop == 0 || drop > k {
        return err("mdkp.drop_index", format!("must lie in 1..={k}"));
    }
    let scalar = |name: &str| match obj.get(name) {
        None => Ok(Scalar::one()),
        Some(x) => scalar_from_json(x).map_err(|e| e.within(&format!("mdkp.{name}"))),
    };
    let inferred = if k % 2 == 1 { MdkpVariant::OddDrop } else { MdkpVariant::EvenDrop };
    let variant = match obj.get("variant").map(|x| x.as_str()) {
        None => inferred,
        Some(Some("odd_drop")) => MdkpVariant::OddDrop,
        Some(Some("even_drop")) => MdkpVariant::EvenDrop,
        Some(_) => return err("mdkp.variant", "expected \"odd_drop\" or \"even_drop\""),
    };
    if variant != inferred {
        return err(
            "mdkp.variant",
            format!("a partition with {k} parts needs {}", if k % 2 == 1 { "odd_drop" } else { "even_drop" }),
        );
    }
    Ok(MdkpOptions { drop_index: drop, a0: scalar("a0")?, a1: scalar("a1")?, variant })
}

impl ProblemSpec {
    pub fn from_json(v: &Value) -> Result<ProblemSpec, SpecError> {
        let obj = as_object(v, "")?;
        check_fields(obj, &["hierarchy", "partition", "c", "b", "generators", "mdkp", "seed"], "")?;
        let hierarchy = decode_hierarchy(obj.get("hierarchy"))?;
        let seed = obj.get("seed").map(|s| as_u64(s, "seed")).transpose()?;

        let has_constants = obj.contains_key("c") || obj.contains_key("b");
        let (partition, input) = match (obj.get("generators"), has_constants) {
            (Some(_), true) => return err("generators", "give either constants (c, b) or generators, not both"),
            (Some(g), false) => {
                let input = decode_generators(g, hierarchy.algebra())?;
                let pivots: Vec<u32> = match &input {
                    Input::GeneratorsB(gs) => gs.iter().map(crate::fock::Generator::pivot).collect(),
                    Input::GeneratorsD(gs) => gs.iter().map(crate::fock::Generator::pivot).collect(),
                    Input::Constants { .. } => unreachable!(),
                };
                if let Some(p) = obj.get("partition") {
                    if decode_parts(p)? != pivots {
                        return err("partition", "does not match the generator pivots");
                    }
                }
                let partition = make_partition(hierarchy, pivots).map_err(|e| e.within("generators"))?;
                (partition, input)
            }
            (None, _) => {
                let parts = decode_parts(obj.get("partition").ok_or_else(|| SpecError::new("partition", "missing"))?)?;
                let partition = make_partition(hierarchy, parts)?;
                let k = partition.len();
                let c = match obj.get("c") {
                    Some(c) => decode_c(c, k)?,
                    None => return err("c", "missing; give constants (or \"zero\"/\"random\") or generators"),
                };
                let b = match (hierarchy, obj.get("b")) {
                    (_, None) => BSpec::Zero,
                    (Hierarchy::Bkp, Some(_)) => return err("b", "only DKP hierarchies take b"),
                    (_, Some(b)) => decode_b(b, k)?,
                };
                (partition, Input::Constants { c, b })
            }
        };

        let mdkp = match hierarchy {
            Hierarchy::Mdkp => {
                if partition.is_empty() {
                    return err("partition", "mdkp needs at least one part");
                }
                Some(decode_mdkp(obj.get("mdkp"), partition.len())?)
            }
            _ if obj.contains_key("mdkp") => return err("mdkp", "only the mdkp hierarchy takes these options"),
            _ => None,
        };
        Ok(ProblemSpec { hierarchy, partition, input, mdkp, seed })
    }

    pub fn has_generators(&self) -> bool {
        !matches!(self.input, Input::Constants { .. })
    }

    /// Resolves random constants with `seed` (falling back to the spec's own
    /// seed, then 0) and the DKP parameters.
    pub fn dkp_params(&self, seed: Option<u64>) -> Option<DkpParams> {
        let Input::Constants { c, b } = &self.input else {
            return None;
        };
        let mut rng = sample::rng(seed.or(self.seed).unwrap_or(0));
        let k = self.partition.len();
        let c = match c {
            ConstSpec::Zero => ShiftConstants::zeros(k),
            ConstSpec::Random => sample::constants(&mut rng, &self.partition),
            ConstSpec::Given(v) => ShiftConstants(v.clone()),
        };
        let b = match b {
            BSpec::Zero => vec![Scalar::zero(); k],
            BSpec::Random => (0..k).map(|_| sample::rational(&mut rng)).collect(),
            BSpec::Given(v) => v.clone(),
        };
        Some(DkpParams::new(self.partition.clone(), c, b).expect("lengths validated"))
    }

    /// Constructs the tau-function(s).
    pub fn build(&self, seed: Option<u64>) -> Result<Built, SpecError> {
        match &self.input {
            Input::Constants { .. } => {
                let p = self.dkp_params(seed).expect("constants input");
                let e = |e| tau_err("partition", e);
                Ok(match self.hierarchy {
                    Hierarchy::Bkp => Built::Single { tau: tau_bkp(&p.partition, &p.c).map_err(e)?, state: None },
                    Hierarchy::Dkp0 => Built::Single { tau: tau_dkp_even(&p).map_err(e)?, state: None },
                    Hierarchy::Dkp1 => Built::Single { tau: tau_dkp_odd(&p).map_err(e)?, state: None },
                    Hierarchy::Mdkp => {
                        let o = self.mdkp.as_ref().expect("validated");
                        let (tau0, tau1) =
                            mdkp_pair(&p, o.drop_index, &o.a0, &o.a1, o.variant).map_err(|e| tau_err("mdkp", e))?;
                        Built::Pair { tau0, tau1, states: None }
                    }
                })
            }
            Input::GeneratorsB(gens) => {
                let (lambda, c) = generators_to_constants(gens).map_err(|e| tau_err("generators", e))?;
                let tau = tau_bkp(&lambda, &c).map_err(|e| tau_err("generators", e))?;
                let state = generator_state(gens).map_err(|e| SpecError::new("generators", e.to_string()))?;
                Ok(Built::Single { tau, state: Some(state) })
            }
            Input::GeneratorsD(gens) => self.build_d(gens),
        }
    }

    fn build_d(&self, gens: &[GeneratorD]) -> Result<Built, SpecError> {
        let one = |gs: &[GeneratorD], path: &str| -> Result<(TauPoly, FockVector<Scalar>), SpecError> {
            if gs.is_empty() {
                let tau = tau_dkp_even(&DkpParams::plain(PartitionExt::default())).map_err(|e| tau_err(path, e))?;
                return Ok((tau, FockVector::vacuum(Algebra::D)));
            }
            let (params, scale) = generator_d_to_params(gs).map_err(|e| tau_err(path, e))?;
            let tau = if gs.len().is_multiple_of(2) { tau_dkp_even(&params) } else { tau_dkp_odd(&params) }
                .map_err(|e| tau_err(path, e))?;
            let state = generator_state(gs).map_err(|e| SpecError::new(path, e.to_string()))?;
            Ok((tau.scaled(&scale), state))
        };
        match self.hierarchy {
            Hierarchy::Mdkp => {
                let o = self.mdkp.as_ref().expect("validated");
                let mut sub = gens.to_vec();
                sub.remove(o.drop_index - 1);
                let full = one(gens, "generators")?;
                let dropped = one(&sub, "mdkp.drop_index")?;
                let ((t0, s0), (t1, s1)) = match o.variant {
                    MdkpVariant::OddDrop => (dropped, full),
                    MdkpVariant::EvenDrop => (full, dropped),
                };
                Ok(Built::Pair {
                    tau0: t0.scaled(&o.a0),
                    tau1: t1.scaled(&o.a1),
                    states: Some((s0.scale(&o.a0), s1.scale(&o.a1))),
                })
            }
            _ => {
                let (tau, state) = one(gens, "generators")?;
                Ok(Built::Single { tau, state: Some(state) })
            }
        }
    }
}

impl FromStr for ProblemSpec {
    type Err = SpecError;

    fn from_str(text: &str) -> Result<ProblemSpec, SpecError> {
        let v: Value = serde_json::from_str(text).map_err(|e| SpecError::new("", format!("invalid JSON: {e}")))?;
        ProblemSpec::from_json(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::render::plain;

    fn spec(text: &str) -> Result<ProblemSpec, SpecError> {
        ProblemSpec::from_str(text)
    }

    fn single(text: &str) -> String {
        match spec(text).unwrap().build(None).unwrap() {
            Built::Single { tau, .. } => plain(&tau.poly),
            Built::Pair { .. } => panic!("expected one tau"),
        }
    }

    #[test]
    fn bkp_examples() {
        assert_eq!(single(r#"{"hierarchy": "bkp", "partition": [2, 1], "c": "zero"}"#), "t_1^3/12 - t_3");
        assert_eq!(single(r#"{"hierarchy": "bkp", "partition": [1], "c": [[]]}"#), "t_1/2");
    }

    #[test]
    fn malformed_partition_names_the_problem() {
        let e = spec(r#"{"hierarchy": "bkp", "partition": [1, 2], "c": "zero"}"#).unwrap_err();
        assert_eq!(e.path, "partition");
        assert!(e.message.contains("strictly decreasing"), "{e}");
    }

    #[test]
    fn field_paths() {
        let e = spec(r#"{"hierarchy": "bkp", "partition": [2, 1], "c": [["1/2"], ["x"]]}"#).unwrap_err();
        assert_eq!(e.path, "c[1][0]");
        let e = spec(r#"{"hierarchy": "dkp0", "partition": [2], "c": "zero"}"#).unwrap_err();
        assert_eq!(e.path, "partition");
        let e = spec(r#"{"hierarchy": "bkp", "partition": [1], "c": "zero", "colour": 1}"#).unwrap_err();
        assert_eq!(e.path, "colour");
        let e =
            spec(r#"{"hierarchy": "mdkp", "partition": [2, 1], "c": "zero", "mdkp": {"drop_index": 3}}"#).unwrap_err();
        assert_eq!(e.path, "mdkp.drop_index");
        let e = spec(r#"{"hierarchy": "dkp0", "generators": [{"pivot": 1, "coeffs": {"-1": "2"}}]}"#).unwrap_err();
        assert_eq!(e.path, "generators[0].coeffs.-1");
    }

    #[test]
    fn random_constants_follow_the_seed() {
        let s = spec(r#"{"hierarchy": "bkp", "partition": [3, 2, 1], "c": "random", "seed": 7}"#).unwrap();
        assert_eq!(s.dkp_params(None), s.dkp_params(Some(7)));
        assert_ne!(s.dkp_params(None), s.dkp_params(Some(8)));
    }

    #[test]
    fn mdkp_generator_pair() {
        let s = spec(
            r#"{"hierarchy": "mdkp",
                "generators": [{"pivot": 2, "coeffs": {"-1/2": "1", "3/2": "-1/3"}}, {"pivot": 0, "coeffs": {"3/2": 2}}],
                "mdkp": {"drop_index": 1}}"#,
        )
        .unwrap();
        let Built::Pair { tau0, tau1, states: Some((s0, s1)) } = s.build(None).unwrap() else {
            panic!("expected a pair with states");
        };
        assert_eq!(s0.parity(), Some(0));
        assert_eq!(s1.parity(), Some(1));
        assert!(!tau0.poly.is_zero() && !tau1.poly.is_zero());
    }
}
