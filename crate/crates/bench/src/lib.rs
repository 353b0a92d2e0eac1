//! Inputs shared by the benchmarks.

use minplex_core::spec::{parse_spec, SpecFile};

pub const DUAL: &str = r#"
field = "Fp(2)"

[quiver]
vertices = ["1"]
arrows = ["x: 1 -> 1"]
relations = ["x*x"]

[complex.Messy]
terms = [["P1", "P1", "P1"], ["P1", "P1", "P1"], ["P1", "P1"]]
diffs = [
  [["1", "1", "0"], ["x", "0", "0"], ["0", "0", "x"]],
  [["x", "0"], ["x", "0"], ["0", "x"]],
]

[complex.Sum]
terms = [["P1", "P1", "P1"], ["P1", "P1", "P1"]]
diffs = [[["x", "0", "0"], ["0", "x", "0"], ["0", "0", "x"]]]
"#;

pub const KRONECKER: &str = r#"
field = "Fp(2)"

[quiver]
vertices = ["1", "2"]
arrows = ["a: 1 -> 2", "b: 1 -> 2"]
"#;

pub fn load(text: &str) -> SpecFile {
    parse_spec(text, false).expect("benchmark spec parses")
}
