//! Machine-readable reports and the serializable views they are built from.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;

use crate::linalg::Matrix;
use crate::problem::{ModuleSpec, ScalarText};
use crate::quiver::{Morphism, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Error,
}

/// The result of one CLI command.
///
/// Wall-clock time is printed with the text output but kept out of the JSON
/// so that reports are byte-for-byte reproducible.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub flags: BTreeMap<String, String>,
    /// The problem file as parsed, `null` if parsing failed.
    pub problem: serde_json::Value,
    pub outcome: Outcome,
    pub exit_code: i32,
    /// Seed of every randomized verdict in `result`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub result: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub lines: Vec<String>,
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl Report {
    pub fn new(command: &str, flags: BTreeMap<String, String>) -> Self {
        Report {
            command: command.to_string(),
            flags,
            problem: serde_json::Value::Null,
            outcome: Outcome::Pass,
            exit_code: 0,
            seed: None,
            result: serde_json::Value::Null,
            error: None,
            lines: Vec::new(),
            elapsed: None,
        }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    /// Marks a property check as failed (exit code 1).
    pub fn fail(&mut self) {
        self.outcome = Outcome::Fail;
        self.exit_code = 1;
    }

    pub fn error(&mut self, code: i32, message: impl Into<String>) {
        let message = message.into();
        self.line(format!("error: {message}"));
        self.outcome = Outcome::Error;
        self.exit_code = code;
        self.error = Some(message);
    }

    /// The text output: one line per entry, then the timing.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        if let Some(t) = self.elapsed {
            out.push_str(&format!("elapsed: {:.3}s\n", t.as_secs_f64()));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

pub fn matrix_view(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect())
        .collect()
}

/// A representation in problem-file form, so that reported objects can be pasted back as modules.
pub fn module_view(rep: &Representation) -> ModuleSpec {
    let q = rep.bound_quiver().quiver();
    let dims = q
        .vertices()
        .iter()
        .zip(rep.dims())
        .map(|(v, &d)| (v.clone(), d))
        .collect();
    let arrows = q
        .arrows()
        .iter()
        .zip(rep.maps())
        .map(|(a, m)| {
            let rows = matrix_view(m)
                .into_iter()
                .map(|row| row.into_iter().map(ScalarText::Text).collect())
                .collect();
            (a.name.clone(), rows)
        })
        .collect();
    ModuleSpec { dims, arrows }
}

/// Components of a morphism keyed by vertex name.
pub fn morphism_view(f: &Morphism) -> BTreeMap<String, Vec<Vec<String>>> {
    let q = f.source().bound_quiver().quiver();
    q.vertices()
        .iter()
        .zip(f.components())
        .map(|(v, c)| (v.clone(), matrix_view(c)))
        .collect()
}

/// Cocycle components keyed by arrow name.
pub fn cocycle_view(rep: &Representation, cocycle: &[Matrix]) -> BTreeMap<String, Vec<Vec<String>>> {
    let q = rep.bound_quiver().quiver();
    q.arrows()
        .iter()
        .zip(cocycle)
        .map(|(a, m)| (a.name.clone(), matrix_view(m)))
        .collect()
}

/// `[[1, 0], [0, 1]]` style rendering of a small table.
pub fn grid_text(grid: &[Vec<usize>]) -> String {
    let rows: Vec<String> = grid
        .iter()
        .map(|row| format!("[{}]", row.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn list_text<T: ToString>(items: &[T]) -> String {
    format!("({})", items.iter().map(T::to_string).collect::<Vec<_>>().join(", "))
}
