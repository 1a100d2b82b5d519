//! Line-oriented text formats.
//!
//! Graph files (`.osp`):
//!
//! ```text
//! 3          vertex count
//! l 1        loop on vertex 1
//! e 1 2      edge between vertices 1 and 2
//! labels 7 8 9   (optional) external names, in vertex order
//! ```
//!
//! or `matrix n` followed by `n` rows of `0`/`1`. DAG files (`.dag`) carry the
//! element count and lines `a > b` for arcs `a → b`, plus the same optional
//! `labels` line. Vertices are 1-based; `#` starts a comment.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::{parse_matrix_rows, Gf2Matrix};
use crate::poset::Poset;
use crate::pressing::PseudoGraph;

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
pub(crate) fn content_lines(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_index(line: usize, token: Option<&str>, n: usize) -> Result<usize> {
    let token = token.ok_or_else(|| Error::parse(line, "missing vertex"))?;
    let v: usize = token
        .parse()
        .map_err(|_| Error::parse(line, format!("expected a vertex number, got `{token}`")))?;
    if v == 0 || v > n {
        return Err(Error::parse(line, format!("vertex {v} is outside 1..={n}")));
    }
    Ok(v - 1)
}

fn parse_labels<'a>(line: usize, tokens: impl Iterator<Item = &'a str>, n: usize) -> Result<Vec<usize>> {
    let labels: Vec<usize> = tokens
        .map(|t| {
            t.parse()
                .map_err(|_| Error::parse(line, format!("expected a label, got `{t}`")))
        })
        .collect::<Result<_>>()?;
    if labels.len() != n {
        return Err(Error::parse(line, format!("expected {n} labels, got {}", labels.len())));
    }
    Ok(labels)
}

fn parse_count(line: usize, token: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("expected an element count, got `{token}`")))
}

fn relabel<T>(line: usize, value: Result<T>) -> Result<T> {
    value.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::parse(line, other.to_string()),
    })
}

impl FromStr for PseudoGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = content_lines(s);
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing vertex count"))?;
        let mut head = header.split_whitespace();
        if head.next() == Some("matrix") {
            let n = parse_count(line_no, head.next().unwrap_or(""))?;
            let a = parse_matrix_rows(n, &mut lines)?;
            return relabel(line_no, PseudoGraph::from_adjacency(&a));
        }
        let n = parse_count(line_no, header)?;
        let mut edges = Vec::new();
        let mut loops = Vec::new();
        let mut labels = None;
        for (line_no, line) in lines {
            let mut tokens = line.split_whitespace();
            match tokens.next() {
                Some("e") => {
                    let u = parse_index(line_no, tokens.next(), n)?;
                    let v = parse_index(line_no, tokens.next(), n)?;
                    if u == v {
                        return Err(Error::parse(line_no, "use `l v` for a loop"));
                    }
                    edges.push((u, v));
                }
                Some("l") => loops.push(parse_index(line_no, tokens.next(), n)?),
                Some("labels") => {
                    labels = Some(parse_labels(line_no, tokens.by_ref(), n)?);
                }
                Some(other) => {
                    return Err(Error::parse(line_no, format!("unknown record `{other}`")))
                }
                None => unreachable!("content lines are non-empty"),
            }
            if let Some(extra) = tokens.next() {
                return Err(Error::parse(line_no, format!("unexpected `{extra}`")));
            }
        }
        let g = PseudoGraph::from_edges(n, &edges, &loops)?;
        match labels {
            Some(l) => relabel(1, g.with_labels(l)),
            None => Ok(g),
        }
    }
}

impl fmt::Display for PseudoGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n())?;
        for v in self.loops().ones() {
            writeln!(f, "l {}", v + 1)?;
        }
        for (u, v) in self.edges() {
            writeln!(f, "e {} {}", u + 1, v + 1)?;
        }
        if !self.has_default_labels() {
            write_labels(f, self.labels())?;
        }
        Ok(())
    }
}

fn write_labels(f: &mut fmt::Formatter<'_>, labels: &[usize]) -> fmt::Result {
    write!(f, "labels")?;
    for l in labels {
        write!(f, " {l}")?;
    }
    writeln!(f)
}

/// A DAG as read from a `.dag` file, before taking its closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DagInput {
    pub n: usize,
    /// 0-based arcs `a → b`, meaning `a ≻ b`.
    pub arcs: Vec<(usize, usize)>,
    pub labels: Option<Vec<usize>>,
}

impl DagInput {
    pub fn to_poset(&self) -> Result<Poset> {
        let p = Poset::from_dag(self.n, &self.arcs)?;
        match &self.labels {
            Some(l) => p.with_labels(l.clone()),
            None => Ok(p),
        }
    }
}

impl FromStr for DagInput {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = content_lines(s);
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing element count"))?;
        let n = parse_count(line_no, header)?;
        let mut arcs = Vec::new();
        let mut labels = None;
        for (line_no, line) in lines {
            if let Some(rest) = line.strip_prefix("labels") {
                labels = Some(parse_labels(line_no, rest.split_whitespace(), n)?);
                continue;
            }
            let (a, b) = line
                .split_once('>')
                .ok_or_else(|| Error::parse(line_no, format!("expected `a > b`, got `{line}`")))?;
            let a = parse_index(line_no, Some(a.trim()), n)?;
            let b = parse_index(line_no, Some(b.trim()), n)?;
            arcs.push((a, b));
        }
        Ok(Self { n, arcs, labels })
    }
}

impl FromStr for Poset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<DagInput>()?.to_poset()
    }
}

/// Writes the cover relations in `.dag` form.
impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n())?;
        for &(a, b) in self.covers() {
            writeln!(f, "{} > {}", a + 1, b + 1)?;
        }
        if !self.has_default_labels() {
            write_labels(f, self.labels())?;
        }
        Ok(())
    }
}

/// Reads a bare matrix (`n` then rows), for fixtures.
pub fn parse_matrix(s: &str) -> Result<Gf2Matrix> {
    s.parse()
}
