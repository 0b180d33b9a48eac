//! The line-oriented `h3` text format.
//!
//! ```text
//! # optional comments
//! n m
//! a b c        (m lines, 1-based, any order within a line)
//! ```
//!
//! Writers always emit the canonical form: sorted triples in lexicographic
//! order, no comments, one trailing newline.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph3;

fn parse_numbers(line: &str, lineno: usize, expected: usize) -> Result<Vec<usize>> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != expected {
        return Err(Error::Parse {
            line: lineno,
            message: format!("expected {expected} integers, found {}", fields.len()),
        });
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("not a non-negative integer: {f:?}"),
            })
        })
        .collect()
}

pub fn parse_h3(text: &str) -> Result<Hypergraph3> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing `n m` header".into(),
    })?;
    let nm = parse_numbers(header, header_line, 2)?;
    let (n, m) = (nm[0], nm[1]);

    let mut triples = Vec::with_capacity(m);
    for (lineno, line) in lines {
        if triples.len() == m {
            return Err(Error::Parse {
                line: lineno,
                message: format!("more than the declared {m} edge lines"),
            });
        }
        let v = parse_numbers(line, lineno, 3)?;
        triples.push([v[0], v[1], v[2]]);
    }
    if triples.len() != m {
        return Err(Error::Parse {
            line: header_line,
            message: format!("header declares {m} edges, found {}", triples.len()),
        });
    }
    Hypergraph3::new(n, triples)
}

pub fn write_h3(h: &Hypergraph3) -> String {
    let mut out = String::with_capacity(16 + 12 * h.edge_count());
    writeln!(out, "{} {}", h.n(), h.edge_count()).unwrap();
    for [a, b, c] in h.edges() {
        writeln!(out, "{a} {b} {c}").unwrap();
    }
    out
}
