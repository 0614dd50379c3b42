//! Plain-text hypergraph files and JSON catalogues.
//!
//! A file is a header line `d n` followed by one edge per line, each edge its
//! sorted vertex indices separated by single spaces. Marked trees carry one
//! extra line `marks: i j ...`. Blank lines and lines starting with `#` are
//! skipped when reading.

use std::fmt::Write as _;

use hyperlaw_core::berge::{BergeTreeType, MarkedBergeTreeType};
use hyperlaw_core::Hypergraph;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header line \"d n\"")]
    MissingHeader,
    #[error(transparent)]
    Invalid(#[from] hyperlaw_core::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.d(), h.n());
    for e in h.edges() {
        push_indices(&mut out, e.iter().copied());
    }
    out
}

pub fn write_marked(h: &Hypergraph, marks: &[bool]) -> String {
    let mut out = write_hypergraph(h);
    out.push_str("marks:");
    for (v, _) in marks.iter().enumerate().filter(|(_, &m)| m) {
        write!(out, " {v}").unwrap();
    }
    out.push('\n');
    out
}

fn push_indices(out: &mut String, xs: impl Iterator<Item = u32>) {
    for (i, x) in xs.enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{x}").unwrap();
    }
    out.push('\n');
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, FormatError> {
    let (h, marks) = parse_marked(text)?;
    if marks.is_some() {
        return Err(FormatError::Syntax { line: 0, msg: "unexpected marks line".into() });
    }
    Ok(h)
}

/// Reads a hypergraph and the optional `marks:` line.
pub fn parse_marked(text: &str) -> Result<(Hypergraph, Option<Vec<bool>>), FormatError> {
    let mut header = None;
    let mut edges: Vec<Vec<u32>> = Vec::new();
    let mut marked: Option<Vec<u32>> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("marks:") {
            if marked.is_some() {
                return Err(syntax(line_no, "duplicate marks line"));
            }
            marked = Some(numbers(rest, line_no)?);
            continue;
        }
        if marked.is_some() {
            return Err(syntax(line_no, "edges after the marks line"));
        }
        let xs = numbers(line, line_no)?;
        if header.is_none() {
            let [d, n] = xs[..] else {
                return Err(syntax(line_no, "header must be \"d n\""));
            };
            header = Some((d as usize, n as usize));
        } else {
            edges.push(xs);
        }
    }
    let (d, n) = header.ok_or(FormatError::MissingHeader)?;
    let h = Hypergraph::build(n, d, edges)?;
    let marks = match marked {
        None => None,
        Some(vs) => {
            let mut m = vec![false; n];
            for v in vs {
                let slot = m.get_mut(v as usize).ok_or(hyperlaw_core::Error::VertexOutOfRange { vertex: v, n })?;
                *slot = true;
            }
            Some(m)
        }
    };
    Ok((h, marks))
}

fn numbers(text: &str, line: usize) -> Result<Vec<u32>, FormatError> {
    text.split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| syntax(line, format!("not a vertex index: {t:?}"))))
        .collect()
}

/// One row of a type catalogue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub code: String,
    pub l: usize,
    pub v: usize,
    #[serde(rename = "v*")]
    pub v_star: usize,
    pub a: u128,
    pub c: u128,
    pub minimal: bool,
}

impl CatalogEntry {
    pub fn from_tree(t: &BergeTreeType) -> Self {
        CatalogEntry {
            code: t.code.to_string(),
            l: t.order,
            v: t.vertices(),
            v_star: 0,
            a: t.automorphisms,
            c: t.labelled_count(),
            minimal: t.order == 0,
        }
    }

    pub fn from_marked(t: &MarkedBergeTreeType) -> Self {
        CatalogEntry {
            code: t.code.to_string(),
            l: t.order,
            v: t.vertices(),
            v_star: t.v_star,
            a: t.automorphisms,
            c: t.labelled_count(),
            minimal: t.minimal,
        }
    }
}

pub fn catalog_json(entries: &[CatalogEntry]) -> String {
    serde_json::to_string_pretty(entries).expect("catalogue entries serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let h = Hypergraph::build(6, 2, [[0, 1, 2], [2, 3, 4]]).unwrap();
        let text = write_hypergraph(&h);
        assert_eq!(text, "2 6\n0 1 2\n2 3 4\n");
        assert_eq!(parse_hypergraph(&text).unwrap(), h);
    }

    #[test]
    fn marks_round_trip() {
        let h = Hypergraph::build(3, 1, [[0, 1], [1, 2]]).unwrap();
        let text = write_marked(&h, &[true, false, true]);
        assert_eq!(text, "1 3\n0 1\n1 2\nmarks: 0 2\n");
        let (g, m) = parse_marked(&text).unwrap();
        assert_eq!(g, h);
        assert_eq!(m.unwrap(), [true, false, true]);
    }

    #[test]
    fn comments_and_errors() {
        assert_eq!(parse_hypergraph("# x\n\n1 2\n0 1\n").unwrap().edge_count(), 1);
        assert!(matches!(parse_hypergraph(""), Err(FormatError::MissingHeader)));
        assert!(matches!(parse_hypergraph("1 2 3\n"), Err(FormatError::Syntax { line: 1, .. })));
        assert!(matches!(parse_hypergraph("1 2\n0 x\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(parse_hypergraph("1 2\n0 2\n"), Err(FormatError::Invalid(_))));
        assert!(parse_hypergraph("1 2\n0 1\nmarks: 0\n").is_err());
    }
}
