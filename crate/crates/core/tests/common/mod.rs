#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use ncdef::problem::{FieldSpec, Problem, ProblemFile};
use ncdef::tower::{run_tower, Collection, TowerOptions, TowerResult};

/// Fixtures whose tower terminates.
pub const TERMINATING: [&str; 5] = ["fx_a2", "fx_loop2", "fx_cyc2", "fx_aba", "fx_fat3"];
pub const ALL: [&str; 7] = [
    "fx_a2",
    "fx_loop2",
    "fx_cyc2",
    "fx_aba",
    "fx_fat3",
    "fx_st",
    "fx_2loop0",
];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"))
}

pub fn fixture(name: &str) -> Problem {
    Problem::load(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// The fixture with its field replaced by 𝔽_p.
pub fn fixture_mod(name: &str, p: u32) -> Problem {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    let mut file: ProblemFile = serde_json::from_str(&text).unwrap();
    file.field = FieldSpec::Prime { fp: p };
    Problem::from_file(file).unwrap()
}

pub fn simples(name: &str) -> Collection {
    fixture(name).collection(Some("simples")).unwrap()
}

pub fn tower(name: &str) -> (Collection, TowerResult) {
    let c = simples(name);
    let t = run_tower(&c, &TowerOptions::default()).unwrap();
    (c, t)
}
