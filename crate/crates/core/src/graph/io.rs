use std::collections::HashSet;
use std::fmt::Write;

use super::Graph;
use crate::analysis::VertexPartition;
use crate::error::{ParseError, ParseErrorKind};

/// Parses the `n m` edge-list format. Blank lines and lines starting with
/// `#` are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let err = |line: usize, kind| ParseError { line, kind };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| err(text.lines().count().max(1), ParseErrorKind::MissingHeader))?;
    let (n, m) = parse_pair(header).ok_or_else(|| err(header_line, ParseErrorKind::MalformedHeader))?;

    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    let mut last_line = header_line;
    for (line, body) in lines {
        last_line = line;
        if edges.len() == m {
            return Err(err(
                line,
                ParseErrorKind::EdgeCountMismatch {
                    declared: m,
                    found: m + 1,
                },
            ));
        }
        let (u, w) = parse_pair(body).ok_or_else(|| err(line, ParseErrorKind::MalformedEdge))?;
        for vertex in [u, w] {
            if vertex >= n {
                return Err(err(line, ParseErrorKind::VertexOutOfRange { vertex, n }));
            }
        }
        if u == w {
            return Err(err(line, ParseErrorKind::SelfLoop(u)));
        }
        let key = (u.min(w), u.max(w));
        if !seen.insert(key) {
            return Err(err(line, ParseErrorKind::DuplicateEdge(key.0, key.1)));
        }
        edges.push(key);
    }
    if edges.len() != m {
        return Err(err(
            last_line,
            ParseErrorKind::EdgeCountMismatch {
                declared: m,
                found: edges.len(),
            },
        ));
    }
    Ok(Graph::from_edges(n, &edges).expect("edges validated while parsing"))
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

/// Serializes to the edge-list format, edges in lexicographic order.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, w) in g.edges() {
        writeln!(out, "{u} {w}").unwrap();
    }
    out
}

/// Undirected DOT export. With a partition, each vertex carries a `part`
/// attribute: `cv`/`ncv`/`cfvr` when the core vertices are independent,
/// otherwise `cv`/`cfv_mid`/`cfv_upp`. The deletion class is always
/// available as `class`.
pub fn to_dot(g: &Graph, partition: Option<&VertexPartition>) -> String {
    let mut out = String::from("graph G {\n");
    if let Some(p) = partition {
        for v in 0..g.n() {
            let part = p.part_label(v);
            let class = p.classes[v].as_str();
            let colour = match part {
                "cv" => "tomato",
                "ncv" => "gold",
                "cfvr" => "lightblue",
                "cfv_mid" => "palegreen",
                _ => "plum",
            };
            writeln!(
                out,
                "  {v} [part=\"{part}\", class=\"{class}\", style=filled, fillcolor={colour}];"
            )
            .unwrap();
        }
    } else {
        for v in 0..g.n() {
            writeln!(out, "  {v};").unwrap();
        }
    }
    for (u, w) in g.edges() {
        writeln!(out, "  {u} -- {w};").unwrap();
    }
    out.push_str("}\n");
    out
}
