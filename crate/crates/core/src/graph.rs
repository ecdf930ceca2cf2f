//! Undirected graphs with positive, exactly scaled edge lengths.
//!
//! Lengths arrive as decimal literals and are stored as integers in units of
//! `1 / unit`. Every threshold comparison downstream is therefore exact.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A scaled length or distance.
pub type Dist = u64;

/// Sentinel distance between vertices in different components.
pub const INF: Dist = Dist::MAX;

/// Maximum number of fractional digits accepted in a decimal length.
pub const MAX_FRACTION_DIGITS: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("edge ({u},{v}) has non-positive length")]
    NonPositiveLength { u: usize, v: usize },
    #[error("duplicate edge ({u},{v})")]
    DuplicateEdge { u: usize, v: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("edge ({u},{v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("edge ({u},{v}) length has {digits} fractional digits (at most {MAX_FRACTION_DIGITS} allowed)")]
    TooPrecise { u: usize, v: usize, digits: u32 },
    #[error("edge lengths overflow the integer range after scaling")]
    Overflow,
    #[error("invalid decimal literal {0:?}")]
    BadDecimal(String),
}

/// A decimal literal kept exactly as `mantissa * 10^-fraction_digits`.
///
/// Trailing fractional zeros are stripped on parse, so `1.0` and `1` are the
/// same value with the same precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecimalLength {
    negative: bool,
    mantissa: u64,
    fraction_digits: u32,
}

impl DecimalLength {
    pub fn from_integer(value: u64) -> Self {
        Self {
            negative: false,
            mantissa: value,
            fraction_digits: 0,
        }
    }

    pub fn fraction_digits(&self) -> u32 {
        self.fraction_digits
    }

    pub fn is_negative(&self) -> bool {
        self.negative && self.mantissa > 0
    }

    pub fn is_positive(&self) -> bool {
        !self.negative && self.mantissa > 0
    }

    /// Value in units of `10^-digits`; `None` on overflow or if `digits` is
    /// coarser than the literal.
    pub fn scaled_to(&self, digits: u32) -> Option<u64> {
        let shift = digits.checked_sub(self.fraction_digits)?;
        self.mantissa.checked_mul(10u64.checked_pow(shift)?)
    }
}

impl From<u64> for DecimalLength {
    fn from(value: u64) -> Self {
        Self::from_integer(value)
    }
}

impl FromStr for DecimalLength {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::BadDecimal(s.to_string());
        let t = s.trim();
        let (negative, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let frac = frac_part.trim_end_matches('0');
        let digits: String = format!("{int_part}{frac}");
        let mantissa = if digits.is_empty() {
            0
        } else {
            digits.parse::<u64>().map_err(|_| bad())?
        };
        Ok(Self {
            negative,
            mantissa,
            fraction_digits: frac.len() as u32,
        })
    }
}

impl fmt::Display for DecimalLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        f.write_str(&format_decimal(self.mantissa, 10u64.pow(self.fraction_digits)))
    }
}

/// Renders `value / unit` exactly. `unit` must only have prime factors 2 and 5.
pub fn format_decimal(value: u64, unit: u64) -> String {
    if value == INF {
        return "inf".to_string();
    }
    assert!(unit > 0);
    // smallest d with unit | 10^d
    let mut d = 0u32;
    let mut pow = 1u128;
    while pow % unit as u128 != 0 {
        d += 1;
        pow *= 10;
        assert!(d <= 38, "unit {unit} has no terminating decimal expansion");
    }
    let scaled = value as u128 * (pow / unit as u128);
    let int_part = scaled / pow;
    let frac_part = scaled % pow;
    if frac_part == 0 {
        return int_part.to_string();
    }
    let frac = format!("{:0width$}", frac_part, width = d as usize);
    format!("{int_part}.{}", frac.trim_end_matches('0'))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub len: Dist,
}

/// Validated undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    unit: u64,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, Dist)>>,
}

/// Build a graph from decimal edge lengths, choosing the smallest power of
/// ten that makes every length integral.
pub fn build_graph(n: usize, edges: &[(usize, usize, DecimalLength)]) -> Result<Graph, GraphError> {
    let mut digits = 0;
    for &(u, v, len) in edges {
        if len.fraction_digits > MAX_FRACTION_DIGITS {
            return Err(GraphError::TooPrecise {
                u,
                v,
                digits: len.fraction_digits,
            });
        }
        digits = digits.max(len.fraction_digits);
    }
    let mut scaled = Vec::with_capacity(edges.len());
    for &(u, v, len) in edges {
        if !len.is_positive() {
            return Err(GraphError::NonPositiveLength { u, v });
        }
        scaled.push((u, v, len.scaled_to(digits).ok_or(GraphError::Overflow)?));
    }
    Graph::from_scaled(n, scaled, 10u64.pow(digits))
}

impl Graph {
    /// Build from integer lengths already expressed in units of `1 / unit`.
    pub fn from_scaled(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, Dist)>,
        unit: u64,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut list = Vec::new();
        for (u, v, len) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { v });
            }
            if len == 0 {
                return Err(GraphError::NonPositiveLength { u, v });
            }
            if len >= INF / 4 {
                return Err(GraphError::Overflow);
            }
            list.push(Edge {
                u: u.min(v),
                v: u.max(v),
                len,
            });
        }
        list.sort_by_key(|e| (e.u, e.v));
        for w in list.windows(2) {
            if (w[0].u, w[0].v) == (w[1].u, w[1].v) {
                return Err(GraphError::DuplicateEdge { u: w[0].u, v: w[0].v });
            }
        }
        let total: u128 = list.iter().map(|e| e.len as u128).sum();
        if total >= (INF / 4) as u128 {
            return Err(GraphError::Overflow);
        }
        let mut adj = vec![Vec::new(); n];
        for e in &list {
            adj[e.u].push((e.v, e.len));
            adj[e.v].push((e.u, e.len));
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Ok(Self {
            n,
            unit,
            edges: list,
            adj,
        })
    }

    /// Unit-length graph from an edge list.
    pub fn unit_lengths(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::from_scaled(n, edges.iter().map(|&(u, v)| (u, v, 1)), 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Denominator of the integer lengths: a stored length `x` means `x / unit`.
    pub fn unit(&self) -> u64 {
        self.unit
    }

    /// Edges sorted by `(min endpoint, max endpoint)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbours of `v` with edge lengths, sorted by neighbour id.
    pub fn neighbors(&self, v: usize) -> &[(usize, Dist)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Render a scaled distance of this graph as an exact decimal.
    pub fn descale(&self, d: Dist) -> String {
        format_decimal(d, self.unit)
    }

    /// Same topology with every length set to one.
    pub fn with_unit_lengths(&self) -> Self {
        Self::from_scaled(self.n, self.edges.iter().map(|e| (e.u, e.v, 1)), 1)
            .expect("topology of a valid graph stays valid")
    }

    /// Component label per vertex, labels numbered by smallest member.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            label[s] = next;
            while let Some(x) = stack.pop() {
                for &(y, _) in &self.adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().iter().max().map_or(0, |&m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }
}
