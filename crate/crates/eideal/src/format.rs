//! The line-oriented graph file format.
//!
//! ```text
//! # comment
//! v a
//! v b
//! e a b
//! ```
//!
//! Names match `[A-Za-z0-9_.]+`. A vertex must be declared before an edge uses it.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use eideal_core::graph::{Graph, GraphBuilder, GraphError};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    InFile {
        path: String,
        source: Box<FormatError>,
    },
}

impl FormatError {
    /// 1-based line of a syntax or graph error.
    pub fn line(&self) -> Option<usize> {
        match self {
            FormatError::Syntax { line, .. } | FormatError::Graph { line, .. } => Some(*line),
            FormatError::InFile { source, .. } => source.line(),
            FormatError::Io { .. } => None,
        }
    }
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut b = GraphBuilder::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let graph_err = |source| FormatError::Graph { line, source };
        match tokens.as_slice() {
            ["v", name] => {
                b.add_vertex(name).map_err(graph_err)?;
            }
            ["e", a, c] => {
                b.add_edge(a, c).map_err(graph_err)?;
            }
            ["v", ..] => return Err(syntax(line, "expected `v <name>`")),
            ["e", ..] => return Err(syntax(line, "expected `e <name> <name>`")),
            [other, ..] => return Err(syntax(line, &format!("unknown directive {other:?}"))),
            [] => unreachable!("blank lines are skipped"),
        }
    }
    Ok(b.build())
}

fn syntax(line: usize, message: &str) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.to_string(),
    }
}

/// Canonical text: `v` lines in vertex order, then `e` lines sorted by
/// (lesser name, greater name).
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    for name in g.names() {
        writeln!(out, "v {name}").unwrap();
    }
    for (a, b) in g.edge_names() {
        writeln!(out, "e {a} {b}").unwrap();
    }
    out
}

pub fn read_graph_file(path: &Path) -> Result<Graph, FormatError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: shown.clone(),
        source,
    })?;
    parse_graph(&text).map_err(|e| FormatError::InFile {
        path: shown,
        source: Box::new(e),
    })
}

pub fn write_graph_file(path: &Path, g: &Graph) -> Result<(), FormatError> {
    fs::write(path, serialize_graph(g)).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}
