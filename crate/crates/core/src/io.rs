//! Graph input formats.
//!
//! * JSON: `{"n": 3, "edges": [[0, 1], [1, 2]]}`
//! * edge list: a header line `n m` followed by `m` lines `u v`. Blank lines
//!   and lines starting with `#` are skipped.
//!
//! Both parsers reject self-loops and duplicate edges with the line on which
//! the offending edge appears.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures;
use crate::graph::Graph;

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

pub fn parse_graph_json(text: &str) -> Result<Graph> {
    let raw: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let edges: Vec<(usize, usize)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
    if let Some((i, message)) = first_bad_edge(raw.n, &edges) {
        return Err(Error::Parse {
            line: json_edge_line(text, i),
            message,
        });
    }
    Graph::new(raw.n, &edges)
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut lines = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let nums: Vec<usize> = trimmed
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("expected a non-negative integer, found `{t}`"),
                })
            })
            .collect::<Result<_>>()?;
        if nums.len() != 2 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected two integers, found {}", nums.len()),
            });
        }
        if header.is_none() {
            header = Some((nums[0], nums[1]));
        } else {
            edges.push((nums[0], nums[1]));
            lines.push(lineno);
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: 1,
        message: "missing `n m` header".into(),
    })?;
    if let Some((i, message)) = first_bad_edge(n, &edges) {
        return Err(Error::Parse {
            line: lines[i],
            message,
        });
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: lines.last().copied().unwrap_or(1),
            message: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Graph::new(n, &edges)
}

fn first_bad_edge(n: usize, edges: &[(usize, usize)]) -> Option<(usize, String)> {
    let mut seen = HashSet::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        if u >= n || v >= n {
            return Some((i, format!("edge ({u},{v}) has an endpoint outside 0..{n}")));
        }
        if u == v {
            return Some((i, format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Some((i, format!("duplicate edge ({u},{v})")));
        }
    }
    None
}

/// Line of the `index`-th element of the `"edges"` array.
fn json_edge_line(text: &str, index: usize) -> usize {
    let Some(start) = text.find("\"edges\"") else {
        return 1;
    };
    let mut depth = 0usize;
    let mut seen = 0usize;
    let mut line = 1 + text[..start].matches('\n').count();
    for ch in text[start..].chars() {
        match ch {
            '\n' => line += 1,
            '[' => {
                depth += 1;
                if depth == 2 {
                    if seen == index {
                        return line;
                    }
                    seen += 1;
                }
            }
            ']' => depth = depth.saturating_sub(1),
            _ => {}
        }
    }
    line
}

pub fn graph_to_json(g: &Graph) -> String {
    let raw = GraphJson {
        n: g.capacity(),
        edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
    };
    serde_json::to_string(&raw).expect("graph serialises")
}

/// Reads a graph from `path`. Files ending in `.json` (or whose content
/// starts with `{`) are parsed as JSON, everything else as an edge list. If
/// no such file exists but the file name matches an embedded fixture, the
/// fixture is returned.
pub fn read_graph(path: &Path) -> Result<Graph> {
    if !path.exists() {
        if let Some(json) = path
            .file_name()
            .and_then(|n| n.to_str())
            .and_then(fixtures::fixture_json)
        {
            return parse_graph_json(json);
        }
    }
    let text = std::fs::read_to_string(path)?;
    let is_json = path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
    if is_json {
        parse_graph_json(&text)
    } else {
        parse_edge_list(&text)
    }
}
