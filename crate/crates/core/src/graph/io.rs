use super::{Graph, Vertex};
use crate::error::{Error, Result};
use std::collections::HashSet;
use std::fmt::Write;

/// Parses either the native edge-list format or DIMACS `p edge`.
///
/// Native: a header `n m directed|undirected` followed by `m` lines `u v`
/// with 0-based ids; blank lines and lines starting with `#` are ignored.
/// DIMACS: `c` comment lines, one `p edge n m` line and `e u v` lines with
/// 1-based ids. DIMACS graphs are undirected.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let first = lines.clone().find(|(_, l)| !is_dimacs_comment(l));
    match first {
        None => Err(Error::Parse { line: 0, msg: "empty graph file".into() }),
        Some((_, l)) if l.starts_with("p ") || l == "p" => parse_dimacs(lines.by_ref()),
        Some(_) => parse_native(lines.by_ref()),
    }
}

fn is_dimacs_comment(l: &str) -> bool {
    l == "c" || l.starts_with("c ")
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse { line, msg: format!("missing {what}") })?;
    tok.parse().map_err(|_| Error::Parse { line, msg: format!("invalid {what} '{tok}'") })
}

struct EdgeCollector {
    n: usize,
    directed: bool,
    seen: HashSet<(Vertex, Vertex)>,
    edges: Vec<(Vertex, Vertex)>,
}

impl EdgeCollector {
    fn push(&mut self, u: Vertex, v: Vertex, line: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::Parse { line, msg: format!("edge ({u}, {v}) out of range for n = {}", self.n) });
        }
        if u == v {
            return Err(Error::Parse { line, msg: format!("self-loop at vertex {u}") });
        }
        let key = if self.directed { (u, v) } else { (u.min(v), u.max(v)) };
        if !self.seen.insert(key) {
            return Err(Error::Parse { line, msg: format!("duplicate edge ({u}, {v})") });
        }
        self.edges.push((u, v));
        Ok(())
    }

    fn finish(self, m: usize, header_line: usize) -> Result<Graph> {
        if self.edges.len() != m {
            return Err(Error::Parse {
                line: header_line,
                msg: format!("header announces {m} edges but {} were given", self.edges.len()),
            });
        }
        Graph::new(self.n, self.directed, self.edges)
    }
}

fn parse_native<'a>(mut lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Graph> {
    let (hline, header) = lines.next().expect("caller checked non-empty");
    let mut tok = header.split_whitespace();
    let n = parse_usize(tok.next(), hline, "vertex count")?;
    let m = parse_usize(tok.next(), hline, "edge count")?;
    let directed = match tok.next() {
        Some("directed") => true,
        Some("undirected") => false,
        Some(other) => {
            return Err(Error::Parse { line: hline, msg: format!("expected 'directed' or 'undirected', got '{other}'") })
        }
        None => return Err(Error::Parse { line: hline, msg: "missing directedness".into() }),
    };
    if let Some(extra) = tok.next() {
        return Err(Error::Parse { line: hline, msg: format!("unexpected token '{extra}' in header") });
    }
    let mut c = EdgeCollector { n, directed, seen: HashSet::new(), edges: Vec::with_capacity(m) };
    for (line, l) in lines {
        let mut tok = l.split_whitespace();
        let u = parse_usize(tok.next(), line, "edge endpoint")?;
        let v = parse_usize(tok.next(), line, "edge endpoint")?;
        if tok.next().is_some() {
            return Err(Error::Parse { line, msg: "expected exactly two endpoints".into() });
        }
        c.push(u, v, line)?;
    }
    c.finish(m, hline)
}

fn parse_dimacs<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Graph> {
    let mut collector: Option<(EdgeCollector, usize, usize)> = None;
    for (line, l) in lines {
        if is_dimacs_comment(l) {
            continue;
        }
        let mut tok = l.split_whitespace();
        match tok.next() {
            Some("p") => {
                if collector.is_some() {
                    return Err(Error::Parse { line, msg: "second problem line".into() });
                }
                match tok.next() {
                    Some("edge") | Some("col") | Some("tw") => {}
                    other => {
                        return Err(Error::Parse { line, msg: format!("unsupported problem type {other:?}") })
                    }
                }
                let n = parse_usize(tok.next(), line, "vertex count")?;
                let m = parse_usize(tok.next(), line, "edge count")?;
                let c = EdgeCollector { n, directed: false, seen: HashSet::new(), edges: Vec::with_capacity(m) };
                collector = Some((c, m, line));
            }
            Some("e") => {
                let (c, _, _) = collector
                    .as_mut()
                    .ok_or_else(|| Error::Parse { line, msg: "edge before problem line".into() })?;
                let u = parse_usize(tok.next(), line, "edge endpoint")?;
                let v = parse_usize(tok.next(), line, "edge endpoint")?;
                if u == 0 || v == 0 {
                    return Err(Error::Parse { line, msg: "DIMACS vertex ids are 1-based".into() });
                }
                c.push(u - 1, v - 1, line)?;
            }
            Some(other) => return Err(Error::Parse { line, msg: format!("unexpected line type '{other}'") }),
            None => {}
        }
    }
    let (c, m, hline) = collector.ok_or(Error::Parse { line: 0, msg: "missing problem line".into() })?;
    c.finish(m, hline)
}

/// Serializes `g` in the native format; edges appear in sorted order.
pub fn format_graph(g: &Graph) -> String {
    let mut out = String::new();
    let kind = if g.is_directed() { "directed" } else { "undirected" };
    writeln!(out, "{} {} {}", g.n(), g.m(), kind).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
