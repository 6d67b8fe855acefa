//! Plain-text edge list: a header line `n m`, then `m` lines `u v`.
//! Lines starting with `#` are skipped.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use super::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphFormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header line `n m`")]
    MissingHeader,
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCount { declared: usize, found: usize },
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

fn numbers(line: &str, lineno: usize) -> Result<(usize, usize), GraphFormatError> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize, GraphFormatError> {
        let tok = it.next().ok_or_else(|| GraphFormatError::Syntax {
            line: lineno,
            msg: "expected two integers".into(),
        })?;
        tok.parse().map_err(|_| GraphFormatError::Syntax {
            line: lineno,
            msg: format!("`{tok}` is not a non-negative integer"),
        })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(GraphFormatError::Syntax {
            line: lineno,
            msg: "trailing tokens".into(),
        });
    }
    Ok((a, b))
}

pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut header = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let pair = numbers(line, i + 1)?;
        if header.is_none() {
            header = Some(pair);
        } else {
            edges.push(pair);
        }
    }
    let (n, m) = header.ok_or(GraphFormatError::MissingHeader)?;
    if edges.len() != m {
        return Err(GraphFormatError::EdgeCount {
            declared: m,
            found: edges.len(),
        }
        .into());
    }
    Graph::new(n, edges)
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph, GraphError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| GraphFormatError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    parse_graph(&text)
}

/// Serialises `g` with edges in lexicographic order.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
