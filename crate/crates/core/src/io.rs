//! Text formats for graphs and point sets.
//!
//! Graph file: first non-comment line `n m`, then `m` lines `u v length`
//! with decimal lengths, then optionally lines `w v weight` giving integer
//! vertex weights (unlisted vertices weigh 1). Lines starting with `#` and
//! blank lines are ignored.
//!
//! Point file: one point per line as whitespace-separated decimal
//! coordinates, or a line `matrix n` followed by `n` rows of `n` decimal
//! distances.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{build_graph, DecimalLength, Graph, GraphError, MAX_FRACTION_DIGITS};
use crate::lab::METRIC_UNIT;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; 0 when the problem is the file as a whole.
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn field<T: std::str::FromStr>(line: usize, token: Option<&str>, what: &str) -> Result<T, ParseError> {
    let token = token.ok_or_else(|| err(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| err(line, format!("invalid {what} {token:?}")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    /// Present when the file has a weight block.
    pub weights: Option<Vec<u64>>,
}

pub fn parse_graph(text: &str) -> Result<GraphFile, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| err(0, "empty graph file"))?;
    let mut tokens = header.split_whitespace();
    let n: usize = field(hline, tokens.next(), "vertex count")?;
    let m: usize = field(hline, tokens.next(), "edge count")?;
    if tokens.next().is_some() {
        return Err(err(hline, "header must be \"n m\""));
    }
    let mut edges = Vec::with_capacity(m);
    let mut edge_lines = Vec::with_capacity(m);
    let mut weights: Option<Vec<u64>> = None;
    let mut last = hline;
    for (line, body) in lines {
        last = line;
        let mut tokens = body.split_whitespace();
        if body.starts_with('w') {
            let tag = tokens.next();
            if tag != Some("w") {
                return Err(err(line, format!("unknown record {:?}", tag.unwrap_or(""))));
            }
            if edges.len() < m {
                return Err(err(line, format!("weight before all {m} edges were listed")));
            }
            let v: usize = field(line, tokens.next(), "vertex")?;
            let w: u64 = field(line, tokens.next(), "weight")?;
            if v >= n {
                return Err(err(line, format!("vertex {v} outside 0..{n}")));
            }
            if w == 0 {
                return Err(err(line, "weights must be positive"));
            }
            weights.get_or_insert_with(|| vec![1; n])[v] = w;
        } else {
            if edges.len() == m {
                return Err(err(line, format!("more than {m} edges")));
            }
            if weights.is_some() {
                return Err(err(line, "edge after the weight block"));
            }
            let u: usize = field(line, tokens.next(), "endpoint")?;
            let v: usize = field(line, tokens.next(), "endpoint")?;
            let len: DecimalLength = field(line, tokens.next(), "length")?;
            if len.fraction_digits() > MAX_FRACTION_DIGITS {
                return Err(err(
                    line,
                    format!("length {len} has more than {MAX_FRACTION_DIGITS} fractional digits"),
                ));
            }
            if !len.is_positive() {
                return Err(err(line, format!("length {len} is not positive")));
            }
            edges.push((u, v, len));
            edge_lines.push(line);
        }
        if tokens.next().is_some() {
            return Err(err(line, "trailing fields"));
        }
    }
    if edges.len() < m {
        return Err(err(last, format!("expected {m} edges, found {}", edges.len())));
    }
    let graph = build_graph(n, &edges).map_err(|e| {
        // point edge errors at the last line listing that edge
        let at = match e {
            GraphError::NonPositiveLength { u, v }
            | GraphError::DuplicateEdge { u, v }
            | GraphError::EndpointOutOfRange { u, v, .. }
            | GraphError::TooPrecise { u, v, .. } => edges
                .iter()
                .rposition(|&(a, b, _)| (a, b) == (u, v) || (a, b) == (v, u)),
            GraphError::SelfLoop { v } => edges.iter().position(|&(a, b, _)| a == v && b == v),
            _ => None,
        };
        err(at.map_or(0, |i| edge_lines[i]), e.to_string())
    })?;
    Ok(GraphFile { graph, weights })
}

/// Render a graph (and optional weights) in the graph file format.
pub fn write_graph(graph: &Graph, weights: Option<&[u64]>) -> String {
    let mut out = format!("{} {}\n", graph.n(), graph.m());
    for e in graph.edges() {
        let _ = writeln!(out, "{} {} {}", e.u, e.v, graph.descale(e.len));
    }
    if let Some(weights) = weights {
        for (v, w) in weights.iter().enumerate() {
            let _ = writeln!(out, "w {v} {w}");
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointFile {
    /// Coordinates in units of `1 / METRIC_UNIT`.
    Coordinates(Vec<Vec<i64>>),
    /// Distances in units of `1 / METRIC_UNIT`.
    Matrix(Vec<Vec<u64>>),
}

const METRIC_DIGITS: u32 = 6;

fn metric_value(line: usize, token: &str) -> Result<(bool, u64), ParseError> {
    debug_assert_eq!(10u64.pow(METRIC_DIGITS), METRIC_UNIT);
    let d: DecimalLength = token
        .parse()
        .map_err(|_| err(line, format!("invalid number {token:?}")))?;
    let mag = d.scaled_to(METRIC_DIGITS).ok_or_else(|| {
        err(
            line,
            format!("{token} has more than {METRIC_DIGITS} fractional digits or is too large"),
        )
    })?;
    Ok((d.is_negative(), mag))
}

pub fn parse_points(text: &str) -> Result<PointFile, ParseError> {
    let mut lines = content_lines(text).peekable();
    let Some(&(first, head)) = lines.peek() else {
        return Err(err(0, "empty point file"));
    };
    if let Some(rest) = head.strip_prefix("matrix") {
        lines.next();
        let n: usize = field(first, Some(rest.trim()), "matrix size")?;
        let mut rows = Vec::with_capacity(n);
        for (line, body) in lines {
            if rows.len() == n {
                return Err(err(line, format!("more than {n} matrix rows")));
            }
            let row = body
                .split_whitespace()
                .map(|t| match metric_value(line, t)? {
                    (true, _) => Err(err(line, "distances cannot be negative")),
                    (false, v) => Ok(v),
                })
                .collect::<Result<Vec<u64>, _>>()?;
            if row.len() != n {
                return Err(err(line, format!("expected {n} entries, found {}", row.len())));
            }
            rows.push(row);
        }
        if rows.len() < n {
            return Err(err(0, format!("expected {n} matrix rows, found {}", rows.len())));
        }
        return Ok(PointFile::Matrix(rows));
    }
    let mut points = Vec::new();
    for (line, body) in lines {
        let point = body
            .split_whitespace()
            .map(|t| {
                let (neg, mag) = metric_value(line, t)?;
                let v = i64::try_from(mag).map_err(|_| err(line, format!("{t} is too large")))?;
                Ok(if neg { -v } else { v })
            })
            .collect::<Result<Vec<i64>, ParseError>>()?;
        if let Some(prev) = points.first().map(|p: &Vec<i64>| p.len()) {
            if prev != point.len() {
                return Err(err(
                    line,
                    format!("expected {prev} coordinates, found {}", point.len()),
                ));
            }
        }
        points.push(point);
    }
    Ok(PointFile::Coordinates(points))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let text = "# square\n4 4\n0 1 1\n1 2 1.5\n2 3 1\n3 0 0.25\n";
        let f = parse_graph(text).unwrap();
        assert_eq!(f.graph.unit(), 100);
        assert!(f.weights.is_none());
        let again = parse_graph(&write_graph(&f.graph, None)).unwrap();
        assert_eq!(again.graph, f.graph);
    }

    #[test]
    fn weights_default_to_one() {
        let f = parse_graph("3 2\n0 1 1\n1 2 1\nw 2 5\n").unwrap();
        assert_eq!(f.weights, Some(vec![1, 1, 5]));
    }

    #[test]
    fn errors_carry_lines() {
        assert_eq!(parse_graph("2 1\n\n0 1 x\n").unwrap_err().line, 3);
        assert_eq!(parse_graph("2 1\n0 1 -1\n").unwrap_err().line, 2);
        assert_eq!(parse_graph("2 2\n0 1 1\n").unwrap_err().line, 2);
        assert_eq!(parse_graph("2 1\n0 1 1\n0 1 1\n").unwrap_err().line, 3);
        assert_eq!(parse_graph("").unwrap_err().line, 0);
        assert_eq!(parse_graph("2 1\n0 1 0.0000001\n").unwrap_err().line, 2);
    }

    #[test]
    fn points_and_matrices() {
        assert_eq!(
            parse_points("0 0\n-1.5 2\n").unwrap(),
            PointFile::Coordinates(vec![vec![0, 0], vec![-1_500_000, 2_000_000]])
        );
        assert_eq!(
            parse_points("matrix 2\n0 1\n1 0\n").unwrap(),
            PointFile::Matrix(vec![vec![0, 1_000_000], vec![1_000_000, 0]])
        );
        assert_eq!(parse_points("0 0\n1\n").unwrap_err().line, 2);
    }
}
