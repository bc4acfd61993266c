//! Text and JSON input/output.

mod json;
pub mod parse;
pub mod render;
pub mod spec;
pub mod tau_file;

pub use json::{scalar_from_json, scalar_to_json, SpecError};
pub use parse::{parse_poly, parse_scalar, ParseError};
pub use render::{latex, plain, poly_from_json, poly_to_json, render, Format};
pub use spec::{Built, Hierarchy, ProblemSpec};
pub use tau_file::TauFile;
