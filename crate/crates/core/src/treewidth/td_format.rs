//! PACE `.td` text format: `s td <bags> <width+1> <n>`, then `b <id> <v...>`
//! lines and tree edges, all 1-based.

use super::TreeDecomposition;
use crate::error::{Error, Result};
use std::fmt::Write;

pub fn format_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = String::new();
    let max_bag = td.bags().iter().map(Vec::len).max().unwrap_or(0);
    writeln!(out, "s td {} {} {}", td.node_count(), max_bag, n).unwrap();
    for (i, bag) in td.bags().iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in td.tree_edges() {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

/// Parses a `.td` file; returns the decomposition and the announced vertex count.
pub fn parse_td(text: &str) -> Result<(TreeDecomposition, usize)> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    let num = |tok: &str, line: usize| -> Result<usize> {
        tok.parse::<usize>().map_err(|_| Error::Parse { line, msg: format!("invalid number '{tok}'") })
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.as_slice() {
            [] | ["c", ..] => {}
            ["s", "td", nb, w, n] => {
                let h = (num(nb, line)?, num(w, line)?, num(n, line)?);
                bags = vec![None; h.0];
                header = Some(h);
            }
            ["b", id, rest @ ..] => {
                if header.is_none() {
                    return Err(Error::Parse { line, msg: "bag before header".into() });
                }
                let id = num(id, line)?;
                if id == 0 || id > bags.len() {
                    return Err(Error::Parse { line, msg: format!("bag id {id} out of range") });
                }
                let verts = rest
                    .iter()
                    .map(|t| num(t, line).and_then(|v| v.checked_sub(1).ok_or(Error::Parse { line, msg: "vertex ids are 1-based".into() })))
                    .collect::<Result<Vec<_>>>()?;
                bags[id - 1] = Some(verts);
            }
            [a, b] => {
                let (a, b) = (num(a, line)?, num(b, line)?);
                if a == 0 || b == 0 {
                    return Err(Error::Parse { line, msg: "bag ids are 1-based".into() });
                }
                edges.push((a - 1, b - 1));
            }
            _ => return Err(Error::Parse { line, msg: format!("unrecognised line '{raw}'") }),
        }
    }
    let (_, width1, n) = header.ok_or(Error::Parse { line: 0, msg: "missing 's td' header".into() })?;
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or(Error::Parse { line: 0, msg: format!("bag {} missing", i + 1) }))
        .collect::<Result<Vec<_>>>()?;
    let td = TreeDecomposition::new(bags, edges);
    if td.bags().iter().map(Vec::len).max().unwrap_or(0) != width1 {
        return Err(Error::Parse { line: 0, msg: "header width does not match the bags".into() });
    }
    Ok((td, n))
}
