//! Graph and presentation input formats.

use std::collections::HashMap;

use edgerees::{ExponentVector, Graph, ToricPresentation};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

fn at(line: usize, column: usize, message: impl Into<String>) -> InputError {
    InputError::Parse { line, column, message: message.into() }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDocument {
    n: usize,
    edges: Vec<[usize; 2]>,
}

/// Parses either a JSON document `{n, edges}` or edge-list text.
pub fn parse_graph(text: &str) -> Result<Graph, InputError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    if text.trim_start().starts_with('{') {
        parse_json_graph(text)
    } else {
        parse_edge_list(text)
    }
}

pub fn parse_json_graph(text: &str) -> Result<Graph, InputError> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| at(e.line(), e.column(), e.to_string()))?;
    Graph::new(doc.n, doc.edges.iter().map(|&[i, j]| (i, j))).map_err(|e| InputError::Invalid(e.to_string()))
}

/// Tokens of a line with their 1-based columns, comments removed.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (k, ch) in content.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(k),
            (true, Some(s)) => {
                out.push((s, &content[s..k]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &content[s..]));
    }
    out.into_iter().map(|(s, t)| (content[..s].chars().count() + 1, t)).collect()
}

fn vertex(line: usize, column: usize, token: &str) -> Result<usize, InputError> {
    let v: usize = token.parse().map_err(|_| at(line, column, format!("expected a vertex number, found {token:?}")))?;
    if v == 0 {
        return Err(at(line, column, "vertices are numbered from 1"));
    }
    Ok(v)
}

/// Optional header `n <count>`, then one `i j` pair per line with
/// `1 <= i < j <= n`. `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Graph, InputError> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut first_seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut seen_content = false;
    for (k, raw) in text.split('\n').enumerate() {
        let line = k + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let toks = tokens(raw);
        let Some(&(col, head)) = toks.first() else {
            continue;
        };
        if head == "n" {
            if seen_content {
                return Err(at(line, col, "the \"n <count>\" header must come first"));
            }
            seen_content = true;
            let &(c, count) = toks.get(1).ok_or_else(|| at(line, col, "header needs a vertex count"))?;
            if let Some(&(c, _)) = toks.get(2) {
                return Err(at(line, c, "unexpected token after the vertex count"));
            }
            declared =
                Some(count.parse().map_err(|_| at(line, c, format!("expected a vertex count, found {count:?}")))?);
            continue;
        }
        seen_content = true;
        if toks.len() != 2 {
            let c = toks.get(2).map_or(col, |t| t.0);
            return Err(at(line, c, format!("expected two vertices, found {} tokens", toks.len())));
        }
        let (ci, cj) = (toks[0].0, toks[1].0);
        let i = vertex(line, ci, toks[0].1)?;
        let j = vertex(line, cj, toks[1].1)?;
        if i == j {
            return Err(at(line, ci, format!("loop rejected at vertex {i}")));
        }
        if i > j {
            return Err(at(line, cj, format!("endpoints must be increasing, found {i} {j}")));
        }
        if let Some(n) = declared {
            if j > n {
                return Err(at(line, cj, format!("vertex {j} exceeds n = {n}")));
            }
        }
        if let Some(prev) = first_seen.insert((i, j), line) {
            return Err(at(line, ci, format!("duplicate edge {i} {j} (first on line {prev})")));
        }
        edges.push((i, j));
    }
    let n = match declared {
        Some(n) => n,
        None => edges
            .iter()
            .map(|e| e.1)
            .max()
            .ok_or_else(|| InputError::Invalid("no edges and no \"n <count>\" header".into()))?,
    };
    Graph::new(n, edges).map_err(|e| InputError::Invalid(e.to_string()))
}

/// Generators separated by `;`, coordinates by `,`: `"2,0;1,1;0,2"`.
pub fn parse_presentation(spec: &str) -> Result<ToricPresentation, InputError> {
    let mut gens = Vec::new();
    for (k, part) in spec.split(';').enumerate() {
        let coords: Result<Vec<u32>, _> = part.split(',').map(|c| c.trim().parse::<u32>()).collect();
        let coords = coords.map_err(|_| InputError::Invalid(format!("generator {}: cannot parse {part:?}", k + 1)))?;
        gens.push(ExponentVector::new(coords));
    }
    let dim = gens.first().map_or(0, |g| g.dim());
    ToricPresentation::new(dim, gens).map_err(|e| InputError::Invalid(e.to_string()))
}

pub fn read_source(path: &str) -> Result<String, InputError> {
    let io = |e: std::io::Error| InputError::Io { path: path.to_string(), message: e.to_string() };
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}
