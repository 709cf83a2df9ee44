#![allow(dead_code)]

use std::path::PathBuf;

use gentle::algebra::{parse_algebra, GentleAlgebra};

pub const ALL: &[&str] = &[
    "square",
    "fig13_1",
    "fig13_2",
    "fig13_3",
    "fig13_4",
    "fig13_5",
    "a2",
    "a3",
    "linear_a3",
    "linear_a4",
    "linear_a5",
    "branched",
    "kronecker",
    "two_cycle",
    "torus",
    "loop",
];

pub fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.alg"))
}

pub fn load(name: &str) -> GentleAlgebra {
    let text = std::fs::read_to_string(path(name)).expect("fixture readable");
    parse_algebra(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}
