use std::fs;
use std::path::PathBuf;

use serde_json::Value;

use polytau::io::poly_from_json;

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap()
}

#[test]
fn schema_files_are_json() {
    for name in ["scalar", "polynomial", "tau_file", "problem_spec"] {
        let s = schema(&format!("{name}.schema.json"));
        assert_eq!(s["$id"], format!("{name}.schema.json"));
    }
}

#[test]
fn polynomial_examples_decode() {
    let s = schema("polynomial.schema.json");
    for ex in s["examples"].as_array().unwrap() {
        poly_from_json(ex).unwrap();
    }
}
