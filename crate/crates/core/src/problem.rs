//! Problem files: one JSON document describing a field, a quiver with
//! relations, named representations and named collections.
//!
//! ```json
//! {
//!   "field": "Q",
//!   "quiver": {"vertices": ["1"], "arrows": [{"name": "t", "from": "1", "to": "1"}]},
//!   "relations": [[{"coeff": "1", "path": ["t", "t"]}]],
//!   "modules": {"S": {"dims": {"1": 1}}, "P": {"dims": {"1": 2}, "arrows": {"t": [["0", "0"], ["1", "0"]]}}},
//!   "collections": {"simples": ["S"]},
//!   "options": {"max_steps": 10}
//! }
//! ```
//!
//! Paths are listed in traversal order. Arrows missing from a module act by
//! zero, vertices missing from `dims` have dimension zero.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{Field, Matrix, Scalar};
use crate::quiver::{BoundQuiver, Quiver, Relation, Representation};
use crate::tower::Collection;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u32,
    },
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Named("Q".into())
    }
}

/// An exact scalar as written in the file: a string such as `"3/4"`, or a bare integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Integer(i64),
    Text(String),
}

impl ScalarText {
    fn parse(&self, field: Field) -> Result<Scalar, crate::LinalgError> {
        match self {
            ScalarText::Integer(n) => Ok(field.from_i64(*n)),
            ScalarText::Text(s) => field.parse(s),
        }
    }
}

fn one() -> ScalarText {
    ScalarText::Text("1".into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    #[serde(default = "one")]
    pub coeff: ScalarText,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<Vec<ScalarText>>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
}

/// The file as written, before name resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default)]
    pub field: FieldSpec,
    pub quiver: QuiverSpec,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default)]
    pub collections: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub options: OptionsSpec,
}

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}, column {column}, at `{field}`: {message}")]
    Syntax {
        line: usize,
        column: usize,
        field: String,
        message: String,
    },
    #[error("at `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error("module {module} violates relation {relation} ({text}): entry ({row}, {col}) is {value}")]
    Violation {
        module: String,
        relation: usize,
        text: String,
        row: usize,
        col: usize,
        value: String,
    },
}

impl ProblemError {
    /// 3 for relation violations, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            ProblemError::Violation { .. } => 3,
            _ => 2,
        }
    }
}

fn schema(field: impl Into<String>, message: impl ToString) -> ProblemError {
    ProblemError::Schema {
        field: field.into(),
        message: message.to_string(),
    }
}

/// A validated problem with every name resolved.
#[derive(Clone, Debug)]
pub struct Problem {
    pub file: ProblemFile,
    pub quiver: Arc<BoundQuiver>,
    pub modules: BTreeMap<String, Representation>,
}

impl Problem {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ProblemError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| ProblemError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Problem::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ProblemError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: ProblemFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let field = e.path().to_string();
            let inner = e.into_inner();
            ProblemError::Syntax {
                line: inner.line(),
                column: inner.column(),
                field,
                message: inner.to_string(),
            }
        })?;
        Problem::from_file(file)
    }

    pub fn from_file(file: ProblemFile) -> Result<Self, ProblemError> {
        let field = match &file.field {
            FieldSpec::Named(name) if name == "Q" => Field::Rational,
            FieldSpec::Named(name) => {
                return Err(schema(
                    "field",
                    format!("unknown field {name:?}; use \"Q\" or {{\"Fp\": p}}"),
                ))
            }
            FieldSpec::Prime { fp } => Field::prime(*fp).map_err(|e| schema("field.Fp", e))?,
        };
        let quiver = resolve_quiver(&file, field)?;
        let mut modules = BTreeMap::new();
        for (name, spec) in &file.modules {
            modules.insert(name.clone(), resolve_module(&quiver, name, spec)?);
        }
        for (name, members) in &file.collections {
            if members.is_empty() {
                return Err(schema(format!("collections.{name}"), "empty collection"));
            }
            for (k, m) in members.iter().enumerate() {
                if !modules.contains_key(m) {
                    return Err(schema(
                        format!("collections.{name}[{k}]"),
                        format!("unknown module {m:?}"),
                    ));
                }
            }
        }
        Ok(Problem { file, quiver, modules })
    }

    pub fn field(&self) -> Field {
        self.quiver.field()
    }

    pub fn module(&self, name: &str) -> Result<&Representation, ProblemError> {
        self.modules
            .get(name)
            .ok_or_else(|| schema("modules", format!("unknown module {name:?}")))
    }

    pub fn collection_names(&self) -> Vec<&str> {
        self.file.collections.keys().map(String::as_str).collect()
    }

    /// The named collection, or the only one in the file when `name` is `None`.
    pub fn collection(&self, name: Option<&str>) -> Result<Collection, ProblemError> {
        let name = match name {
            Some(n) => n,
            None => match self.collection_names().as_slice() {
                [only] => only,
                [] => return Err(schema("collections", "the file defines no collection")),
                names => {
                    return Err(schema(
                        "collections",
                        format!(
                            "several collections ({}); choose one with --collection",
                            names.join(", ")
                        ),
                    ))
                }
            },
        };
        let members = self
            .file
            .collections
            .get(name)
            .ok_or_else(|| schema("collections", format!("unknown collection {name:?}")))?;
        let reps = members.iter().map(|m| self.modules[m].clone()).collect();
        Collection::new(reps).map_err(|e| schema(format!("collections.{name}"), e))
    }

    /// The original document, re-serialized with sorted keys.
    pub fn echo(&self) -> serde_json::Value {
        serde_json::to_value(&self.file).expect("problem files serialize")
    }
}

fn resolve_quiver(file: &ProblemFile, field: Field) -> Result<Arc<BoundQuiver>, ProblemError> {
    let q = &file.quiver;
    for (k, a) in q.arrows.iter().enumerate() {
        for (end, v) in [("from", &a.from), ("to", &a.to)] {
            if !q.vertices.contains(v) {
                return Err(schema(
                    format!("quiver.arrows[{k}].{end}"),
                    format!("unknown vertex {v:?}"),
                ));
            }
        }
    }
    let arrows: Vec<(&str, &str, &str)> = q
        .arrows
        .iter()
        .map(|a| (a.name.as_str(), a.from.as_str(), a.to.as_str()))
        .collect();
    let vertices: Vec<&str> = q.vertices.iter().map(String::as_str).collect();
    let quiver = Quiver::new(&vertices, &arrows).map_err(|e| schema("quiver", e))?;
    let mut relations = Vec::with_capacity(file.relations.len());
    for (k, terms) in file.relations.iter().enumerate() {
        let mut resolved = Vec::with_capacity(terms.len());
        for (t, term) in terms.iter().enumerate() {
            let coeff = term
                .coeff
                .parse(field)
                .map_err(|e| schema(format!("relations[{k}][{t}].coeff"), e))?;
            let path = term
                .path
                .iter()
                .enumerate()
                .map(|(m, name)| {
                    quiver.arrow_index(name).ok_or_else(|| {
                        schema(
                            format!("relations[{k}][{t}].path[{m}]"),
                            format!("unknown arrow {name:?}"),
                        )
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            resolved.push((coeff, path));
        }
        relations.push(Relation::new(&quiver, resolved).map_err(|e| schema(format!("relations[{k}]"), e))?);
    }
    BoundQuiver::new(field, quiver, relations).map_err(|e| schema("relations", e))
}

fn resolve_module(quiver: &Arc<BoundQuiver>, name: &str, spec: &ModuleSpec) -> Result<Representation, ProblemError> {
    let q = quiver.quiver();
    let field = quiver.field();
    for v in spec.dims.keys() {
        if q.vertex_index(v).is_none() {
            return Err(schema(
                format!("modules.{name}.dims.{v}"),
                format!("unknown vertex {v:?}"),
            ));
        }
    }
    for a in spec.arrows.keys() {
        if q.arrow_index(a).is_none() {
            return Err(schema(
                format!("modules.{name}.arrows.{a}"),
                format!("unknown arrow {a:?}"),
            ));
        }
    }
    let dims: Vec<usize> = q
        .vertices()
        .iter()
        .map(|v| spec.dims.get(v).copied().unwrap_or(0))
        .collect();
    let mut maps = Vec::with_capacity(q.arrows().len());
    for arrow in q.arrows() {
        let (rows, cols) = (dims[arrow.target], dims[arrow.source]);
        let at = format!("modules.{name}.arrows.{}", arrow.name);
        let Some(entries) = spec.arrows.get(&arrow.name) else {
            maps.push(Matrix::zeros(field, rows, cols));
            continue;
        };
        if entries.len() != rows || entries.iter().any(|row| row.len() != cols) {
            return Err(schema(
                at,
                format!("expected a {rows}x{cols} matrix (target dimension x source dimension)"),
            ));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for (r, row) in entries.iter().enumerate() {
            for (c, s) in row.iter().enumerate() {
                data.push(s.parse(field).map_err(|e| schema(format!("{at}[{r}][{c}]"), e))?);
            }
        }
        maps.push(Matrix::from_vec(field, rows, cols, data).map_err(|e| schema(at.clone(), e))?);
    }
    let rep = Representation::new(quiver, dims, maps).map_err(|e| schema(format!("modules.{name}"), e))?;
    if let Some(v) = rep.validate().violations.first() {
        return Err(ProblemError::Violation {
            module: name.to_string(),
            relation: v.relation,
            text: relation_text(quiver, v.relation),
            row: v.row,
            col: v.col,
            value: v.value.to_string(),
        });
    }
    Ok(rep)
}

/// A relation written back with arrow names, e.g. `1*t.t`.
pub fn relation_text(quiver: &BoundQuiver, k: usize) -> String {
    let arrows = quiver.quiver().arrows();
    quiver.relations()[k]
        .terms()
        .iter()
        .map(|(c, path)| {
            let names: Vec<&str> = path.iter().map(|&a| arrows[a].name.as_str()).collect();
            format!("{c}*{}", names.join("."))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOOP2: &str = r#"{
        "field": "Q",
        "quiver": {"vertices": ["1"], "arrows": [{"name": "t", "from": "1", "to": "1"}]},
        "relations": [[{"coeff": "1", "path": ["t", "t"]}]],
        "modules": {
            "S": {"dims": {"1": 1}},
            "P": {"dims": {"1": 2}, "arrows": {"t": [["0", "1"], ["0", "0"]]}}
        },
        "collections": {"simples": ["S"]}
    }"#;

    #[test]
    fn parses_loop2() {
        let p = Problem::parse(LOOP2).unwrap();
        assert_eq!(p.quiver.vertex_count(), 1);
        assert_eq!(p.quiver.arrow_count(), 1);
        assert_eq!(p.quiver.relations().len(), 1);
        assert_eq!(p.module("P").unwrap().dims(), &[2]);
        assert_eq!(p.collection(None).unwrap().r(), 1);
        assert_eq!(relation_text(&p.quiver, 0), "1*t.t");
    }

    #[test]
    fn echo_round_trips() {
        let p = Problem::parse(LOOP2).unwrap();
        let again = Problem::parse(&serde_json::to_string(&p.echo()).unwrap()).unwrap();
        assert_eq!(again.file, p.file);
    }

    #[test]
    fn unknown_vertex_is_a_schema_error() {
        let text = LOOP2.replace(r#""to": "1""#, r#""to": "7""#);
        let err = Problem::parse(&text).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("quiver.arrows[0].to"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = Problem::parse("{\n  \"quiver\": {\"vertices\": 3}\n}").unwrap_err();
        match err {
            ProblemError::Syntax { line, field, .. } => {
                assert_eq!(line, 2);
                assert_eq!(field, "quiver.vertices");
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn relation_violation_exits_with_3() {
        let text = LOOP2.replace(r#"[["0", "1"], ["0", "0"]]"#, r#"[["0", "1"], ["1", "0"]]"#);
        let err = Problem::parse(&text).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("module P"), "{err}");
    }

    #[test]
    fn prime_fields_and_bad_shapes() {
        let text = LOOP2.replace(r#""field": "Q""#, r#""field": {"Fp": 7}"#);
        assert_eq!(Problem::parse(&text).unwrap().field(), Field::Prime(7));
        let bad = LOOP2.replace(r#""field": "Q""#, r#""field": {"Fp": 8}"#);
        assert_eq!(Problem::parse(&bad).unwrap_err().exit_code(), 2);
        let shape = LOOP2.replace(r#"[["0", "1"], ["0", "0"]]"#, r#"[["0", "1"]]"#);
        assert!(Problem::parse(&shape)
            .unwrap_err()
            .to_string()
            .contains("modules.P.arrows.t"));
    }
}
