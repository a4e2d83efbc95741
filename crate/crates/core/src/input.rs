//! Parsing of textual inputs: JSON documents and flip words.

use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::flip::FlipWord;
use crate::graph::{Graph, GraphJson};
use crate::linalg::{FMatrix, MatrixJson};
use crate::setsys::{SetSystem, SetSystemJson};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    SetSystem(SetSystem),
    Matrix(FMatrix),
    Graph(Graph),
    Word(FlipWord),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::SetSystem(_) => "set system",
            Input::Matrix(_) => "matrix",
            Input::Graph(_) => "graph",
            Input::Word(_) => "flip word",
        }
    }
}

/// Reads a set system, matrix or graph from JSON, or a flip word otherwise.
/// The JSON kind is recognized by its keys.
pub fn parse_inputs(text: &str) -> Result<Input> {
    let trimmed = text.trim_start();
    if !trimmed.starts_with('{') {
        return Ok(Input::Word(text.parse()?));
    }
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let Value::Object(obj) = &value else {
        unreachable!("text starts with a brace");
    };
    if obj.contains_key("sets") {
        let j: SetSystemJson = shape(value, "sets")?;
        domain(SetSystem::try_from(j), "sets").map(Input::SetSystem)
    } else if obj.contains_key("entries") {
        let j: MatrixJson = shape(value, "entries")?;
        domain(FMatrix::try_from(j), "entries").map(Input::Matrix)
    } else if obj.contains_key("vertices") {
        let j: GraphJson = shape(value, "vertices")?;
        domain(Graph::try_from(j), "edges").map(Input::Graph)
    } else {
        Err(Error::schema(
            "<root>",
            "expected a set system (\"sets\"), matrix (\"entries\") or graph (\"vertices\")",
        ))
    }
}

fn shape<T: DeserializeOwned>(value: Value, field: &str) -> Result<T> {
    serde_json::from_value(value).map_err(|e| Error::schema(field, e.to_string()))
}

fn domain<T>(r: Result<T>, field: &str) -> Result<T> {
    r.map_err(|e| match e {
        Error::Schema { .. } => e,
        other => Error::schema(field, other.to_string()),
    })
}

pub fn parse_set_system(text: &str) -> Result<SetSystem> {
    match parse_inputs(text)? {
        Input::SetSystem(m) => Ok(m),
        other => Err(Error::schema(
            "<root>",
            format!("expected a set system, got a {}", other.kind()),
        )),
    }
}

pub fn parse_matrix(text: &str) -> Result<FMatrix> {
    match parse_inputs(text)? {
        Input::Matrix(m) => Ok(m),
        other => Err(Error::schema(
            "<root>",
            format!("expected a matrix, got a {}", other.kind()),
        )),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    match parse_inputs(text)? {
        Input::Graph(g) => Ok(g),
        other => Err(Error::schema(
            "<root>",
            format!("expected a graph, got a {}", other.kind()),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::Subset;

    #[test]
    fn parses_each_kind() {
        let Input::SetSystem(m) = parse_inputs(r#"{"ground":["a"],"sets":[[]]}"#).unwrap() else {
            panic!("expected a set system");
        };
        assert_eq!(m.family(), &[Subset::EMPTY]);

        let Input::Word(w) = parse_inputs("*a +b ~c").unwrap() else {
            panic!("expected a word");
        };
        assert_eq!(w.len(), 3);

        assert!(matches!(
            parse_inputs(r#"{"field":2,"labels":["a"],"entries":[[1]]}"#),
            Ok(Input::Matrix(_))
        ));
        assert!(matches!(
            parse_inputs(r#"{"vertices":["a","b"],"edges":[["a","b"]]}"#),
            Ok(Input::Graph(_))
        ));
    }

    #[test]
    fn reports_schema_and_parse_errors() {
        let e = parse_inputs(r#"{"field":4,"labels":["a"],"entries":[[0]]}"#).unwrap_err();
        assert!(
            matches!(e, Error::Schema { ref field, .. } if field == "field"),
            "{e}"
        );

        let e = parse_inputs("{\"ground\": [\"a\"],\n \"sets\": [[\"b\"]]}").unwrap_err();
        assert!(matches!(e, Error::Schema { .. }), "{e}");

        let e = parse_inputs("{\"ground\": [\"a\"],\n \"sets\": [[}").unwrap_err();
        assert!(
            matches!(e, Error::Parse(ref msg) if msg.contains("line 2")),
            "{e}"
        );

        assert!(matches!(
            parse_inputs(r#"{"foo":1}"#),
            Err(Error::Schema { .. })
        ));
        assert!(matches!(parse_inputs("a"), Err(Error::Parse(_))));
        assert!(parse_matrix(r#"{"ground":[],"sets":[[]]}"#).is_err());
    }
}
