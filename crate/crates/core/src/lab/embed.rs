//! Embedding a finite metric into a graph whose shortest paths pass through
//! a hierarchy of nets.
//!
//! After scaling the metric so its minimum distance is `2/(1+eps)`, greedy
//! nets `Y_0 = X ⊇ Y_1 ⊇ … ⊇ Y_L` are built with radii
//! `eps * 2^(i-3) / ((1+eps)^2 L)`. Every pair gets an edge of length
//! `(1 + eps(1 - i/L)) * d(u, v)` where `i` is the highest level holding
//! both endpoints, so long hops between high-level points are relatively
//! cheaper and shortest paths climb the hierarchy.
//!
//! All comparisons are done on integers. With `eps = p/q`, edge lengths are
//! exact multiples of `1 / (L q)` metric units; the sandwich
//! `d_X <= d_G <= (1+eps) d_X` is certified on those exact values before the
//! lengths are rounded up to graph units.

use num_rational::Ratio;
use thiserror::Error;

use crate::distance::all_pairs;
use crate::graph::{Dist, Graph, GraphError};

/// Metric distances are integers in units of `1 / METRIC_UNIT`.
pub const METRIC_UNIT: u64 = 1_000_000;

/// Extra precision of embedded edge lengths over metric distances.
const REFINE: u64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("need at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("point {point} has {got} coordinates, expected {expected}")]
    DimensionMismatch { point: usize, got: usize, expected: usize },
    #[error("points {u} and {v} coincide")]
    CoincidentPoints { u: usize, v: usize },
    #[error("matrix row {row} has {got} entries, expected {expected}")]
    RaggedMatrix { row: usize, got: usize, expected: usize },
    #[error("matrix is not symmetric at ({u},{v})")]
    Asymmetric { u: usize, v: usize },
    #[error("diagonal entry {0} is not zero")]
    NonZeroDiagonal(usize),
    #[error("triangle inequality fails: d({u},{w}) > d({u},{v}) + d({v},{w})")]
    TriangleViolation { u: usize, v: usize, w: usize },
    #[error("eps must lie strictly between 0 and 1")]
    EpsilonOutOfRange,
    #[error("integer overflow in the embedding arithmetic")]
    Overflow,
    #[error("distortion certificate failed for pair ({u},{v})")]
    Distortion { u: usize, v: usize },
    #[error("graph must use unit {expected}, got {got}")]
    WrongUnit { expected: u64, got: u64 },
    #[error("net level {level} is not a cover and packing of the level below")]
    BadNet { level: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    L1,
    L2,
    LInf,
}

/// A finite metric with exact integer distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointMetric {
    n: usize,
    dist: Vec<u64>,
    /// Doubling dimension estimate, used only for reporting bounds.
    doubling_dim: u32,
}

fn checked(v: Option<u128>) -> Result<u128, EmbedError> {
    v.ok_or(EmbedError::Overflow)
}

impl PointMetric {
    /// Points given as integer coordinates in units of `1 / METRIC_UNIT`.
    /// Euclidean distances are rounded to the nearest unit and then closed
    /// under shortest paths so the triangle inequality survives rounding.
    /// The doubling dimension defaults to the coordinate dimension.
    pub fn from_coordinates(
        points: &[Vec<i64>],
        norm: Norm,
        doubling_dim: Option<u32>,
    ) -> Result<Self, EmbedError> {
        let n = points.len();
        if n < 2 {
            return Err(EmbedError::TooFewPoints(n));
        }
        let dim = points[0].len();
        if let Some((point, p)) = points.iter().enumerate().find(|(_, p)| p.len() != dim) {
            return Err(EmbedError::DimensionMismatch {
                point,
                got: p.len(),
                expected: dim,
            });
        }
        let mut dist = vec![0u64; n * n];
        for u in 0..n {
            for v in (u + 1)..n {
                let diffs = points[u]
                    .iter()
                    .zip(&points[v])
                    .map(|(a, b)| (i128::from(*a) - i128::from(*b)).unsigned_abs());
                let d = match norm {
                    Norm::L1 => diffs.sum::<u128>(),
                    Norm::LInf => diffs.max().unwrap_or(0),
                    Norm::L2 => {
                        let sq = diffs.map(|x| x * x).sum::<u128>();
                        let s = sq.isqrt();
                        if sq - s * s > s {
                            s + 1
                        } else {
                            s
                        }
                    }
                };
                if d == 0 {
                    return Err(EmbedError::CoincidentPoints { u, v });
                }
                let d = u64::try_from(d).map_err(|_| EmbedError::Overflow)?;
                dist[u * n + v] = d;
                dist[v * n + u] = d;
            }
        }
        if norm == Norm::L2 {
            for w in 0..n {
                for u in 0..n {
                    for v in 0..n {
                        let via = dist[u * n + w] + dist[w * n + v];
                        if via < dist[u * n + v] {
                            dist[u * n + v] = via;
                        }
                    }
                }
            }
        }
        Ok(Self {
            n,
            dist,
            doubling_dim: doubling_dim.unwrap_or(dim as u32),
        })
    }

    /// An explicit distance matrix in units of `1 / METRIC_UNIT`.
    pub fn from_matrix(rows: &[Vec<u64>], doubling_dim: u32) -> Result<Self, EmbedError> {
        let n = rows.len();
        if n < 2 {
            return Err(EmbedError::TooFewPoints(n));
        }
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(EmbedError::RaggedMatrix {
                row,
                got: r.len(),
                expected: n,
            });
        }
        for u in 0..n {
            if rows[u][u] != 0 {
                return Err(EmbedError::NonZeroDiagonal(u));
            }
            for v in 0..n {
                if rows[u][v] != rows[v][u] {
                    return Err(EmbedError::Asymmetric { u, v });
                }
                if u != v && rows[u][v] == 0 {
                    return Err(EmbedError::CoincidentPoints { u, v });
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    if u128::from(rows[u][w]) > u128::from(rows[u][v]) + u128::from(rows[v][w]) {
                        return Err(EmbedError::TriangleViolation { u, v, w });
                    }
                }
            }
        }
        Ok(Self {
            n,
            dist: rows.concat(),
            doubling_dim,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> u64 {
        self.dist[u * self.n + v]
    }

    pub fn doubling_dim(&self) -> u32 {
        self.doubling_dim
    }

    /// `(min, max)` over distinct pairs.
    pub fn extent(&self) -> (u64, u64) {
        let off = (0..self.n)
            .flat_map(|u| ((u + 1)..self.n).map(move |v| (u, v)))
            .map(|(u, v)| self.dist(u, v));
        let (mut lo, mut hi) = (u64::MAX, 0);
        for d in off {
            lo = lo.min(d);
            hi = hi.max(d);
        }
        (lo, hi)
    }

    /// Aspect ratio `max / min`.
    pub fn aspect_ratio(&self) -> Ratio<u64> {
        let (lo, hi) = self.extent();
        Ratio::new(hi, lo)
    }
}

/// The nets of an embedding and the constants that define them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetHierarchy {
    /// `levels[i]` is `Y_i`, ascending; `levels[0]` holds every point.
    pub levels: Vec<Vec<usize>>,
    /// Highest level containing each point.
    pub level_of: Vec<usize>,
    /// `L = max(1, ceil(log2 aspect))`.
    pub top: usize,
    pub eps: Ratio<u64>,
    /// Minimum metric distance, which the scaling maps to `2/(1+eps)`.
    pub min_dist: u64,
    pub doubling_dim: u32,
}

impl NetHierarchy {
    fn p(&self) -> u128 {
        u128::from(*self.eps.numer())
    }

    fn q(&self) -> u128 {
        u128::from(*self.eps.denom())
    }

    /// Whether scaled metric distance `d` (metric units) exceeds the radius of
    /// level `i`: `2dq/((q+p)m) > p q 2^i / (8 (q+p)^2 L)`.
    fn beyond_radius(&self, d: u64, i: usize) -> Result<bool, EmbedError> {
        let (p, q) = (self.p(), self.q());
        let lhs = checked(
            16u128
                .checked_mul(u128::from(d))
                .and_then(|x| x.checked_mul(q + p))
                .and_then(|x| x.checked_mul(self.top as u128)),
        )?;
        let rhs = checked(
            1u128
                .checked_shl(i as u32)
                .and_then(|x| x.checked_mul(p))
                .and_then(|x| x.checked_mul(u128::from(self.min_dist))),
        )?;
        Ok(lhs > rhs)
    }

    /// Net radius of level `i` in scaled units, for display.
    pub fn radius(&self, i: usize) -> f64 {
        let eps = *self.eps.numer() as f64 / *self.eps.denom() as f64;
        eps * 2f64.powi(i as i32 - 3) / ((1.0 + eps).powi(2) * self.top as f64)
    }

    /// `(128 (1+eps)^2 L / eps)^d`, the hub bound per ball at every level.
    pub fn sparsity_bound(&self) -> f64 {
        let eps = *self.eps.numer() as f64 / *self.eps.denom() as f64;
        (128.0 * (1.0 + eps).powi(2) * self.top as f64 / eps).powi(self.doubling_dim as i32)
    }

    /// Recheck that each level is a cover and a packing of the one below.
    pub fn verify_nets(&self, metric: &PointMetric) -> Result<(), EmbedError> {
        for i in 1..self.levels.len() {
            let net = &self.levels[i];
            for (a, &x) in net.iter().enumerate() {
                for &y in &net[a + 1..] {
                    if !self.beyond_radius(metric.dist(x, y), i)? {
                        return Err(EmbedError::BadNet { level: i });
                    }
                }
            }
            for &x in &self.levels[i - 1] {
                let mut covered = false;
                for &y in net {
                    if x == y || !self.beyond_radius(metric.dist(x, y), i)? {
                        covered = true;
                        break;
                    }
                }
                if !covered {
                    return Err(EmbedError::BadNet { level: i });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Embedding {
    /// Edge lengths in units of `1 / (METRIC_UNIT * 1000)`.
    pub graph: Graph,
    pub hierarchy: NetHierarchy,
    /// Largest `d_G / d_X` over all pairs, on the exact lengths.
    pub max_stretch: f64,
}

/// Build the embedding graph of a metric and certify its distortion.
pub fn embed_doubling(metric: &PointMetric, eps: Ratio<u64>) -> Result<Embedding, EmbedError> {
    let n = metric.n();
    if n < 2 {
        return Err(EmbedError::TooFewPoints(n));
    }
    if *eps.numer() == 0 || eps >= Ratio::from_integer(1) {
        return Err(EmbedError::EpsilonOutOfRange);
    }
    let (min_dist, max_dist) = metric.extent();
    let mut top = 1usize;
    while u128::from(min_dist) << top < u128::from(max_dist) {
        top += 1;
    }
    let mut hierarchy = NetHierarchy {
        levels: vec![(0..n).collect()],
        level_of: vec![0; n],
        top,
        eps,
        min_dist,
        doubling_dim: metric.doubling_dim(),
    };
    for i in 1..=top {
        let mut net: Vec<usize> = Vec::new();
        for &x in &hierarchy.levels[i - 1] {
            let mut far = true;
            for &y in &net {
                if !hierarchy.beyond_radius(metric.dist(x, y), i)? {
                    far = false;
                    break;
                }
            }
            if far {
                net.push(x);
            }
        }
        for &x in &net {
            hierarchy.level_of[x] = i;
        }
        hierarchy.levels.push(net);
    }

    // exact lengths times D = L q
    let (p, q) = (hierarchy.p(), hierarchy.q());
    let l = top as u128;
    let denom = l * q;
    let mut exact = vec![0u128; n * n];
    for u in 0..n {
        for v in (u + 1)..n {
            let i = hierarchy.level_of[u].min(hierarchy.level_of[v]) as u128;
            let coeff = l * q + p * (l - i);
            let len = checked(coeff.checked_mul(u128::from(metric.dist(u, v))))?;
            exact[u * n + v] = len;
            exact[v * n + u] = len;
        }
    }
    let mut apsp = exact.clone();
    for w in 0..n {
        for u in 0..n {
            for v in 0..n {
                let via = apsp[u * n + w] + apsp[w * n + v];
                if via < apsp[u * n + v] {
                    apsp[u * n + v] = via;
                }
            }
        }
    }
    let mut max_stretch = 1f64;
    for u in 0..n {
        for v in (u + 1)..n {
            let d = u128::from(metric.dist(u, v));
            let g = apsp[u * n + v];
            if g < d * denom || g > (q + p) * l * d {
                return Err(EmbedError::Distortion { u, v });
            }
            max_stretch = max_stretch.max(g as f64 / (d * denom) as f64);
        }
    }

    let refine = u128::from(REFINE);
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            let scaled = checked(exact[u * n + v].checked_mul(refine))?.div_ceil(denom);
            let len = Dist::try_from(scaled).map_err(|_| EmbedError::Overflow)?;
            edges.push((u, v, len));
        }
    }
    let graph = Graph::from_scaled(n, edges, METRIC_UNIT * REFINE)?;
    // rounding only lengthens edges, by less than one graph unit each
    let oracle = all_pairs(&graph);
    for u in 0..n {
        for v in (u + 1)..n {
            let d = u128::from(metric.dist(u, v));
            let g = u128::from(oracle.dist(u, v));
            if g < d * refine || g * q > (q + p) * d * refine + refine * q {
                return Err(EmbedError::Distortion { u, v });
            }
        }
    }
    Ok(Embedding {
        graph,
        hierarchy,
        max_stretch,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelReport {
    pub level: usize,
    pub members: usize,
    /// Pairs whose scaled distance lies in `(2^level, 2^(level+1)]`.
    pub pairs: usize,
    /// Most members of this level within scaled distance `2^(level+1)` of
    /// any point.
    pub sparsity: usize,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HubReport {
    pub levels: Vec<LevelReport>,
    /// `(u, v, level)` for canonical paths that miss their level's net.
    pub violations: Vec<(usize, usize, usize)>,
    /// Pairs whose scaled distance falls in no level's band.
    pub unbanded: usize,
}

impl HubReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn within_bounds(&self) -> bool {
        self.levels.iter().all(|l| l.sparsity as f64 <= l.bound)
    }
}

/// Check that every canonical shortest path of scaled length in
/// `(2^i, 2^(i+1)]` passes through `Y_i`, and measure how many members of
/// `Y_i` fit in a ball of scaled radius `2^(i+1)`.
pub fn certify_hub_hierarchy(
    graph: &Graph,
    hierarchy: &NetHierarchy,
) -> Result<HubReport, EmbedError> {
    let unit = METRIC_UNIT * REFINE;
    if graph.unit() != unit {
        return Err(EmbedError::WrongUnit {
            expected: unit,
            got: graph.unit(),
        });
    }
    let n = graph.n();
    let oracle = all_pairs(graph);
    let (p, q) = (hierarchy.p(), hierarchy.q());
    // scaled(d) = a(d) / b with a = 2 q d, b = (q+p) m REFINE
    let b = checked(
        (q + p)
            .checked_mul(u128::from(hierarchy.min_dist))
            .and_then(|x| x.checked_mul(u128::from(REFINE))),
    )?;
    let a = |d: Dist| checked((2 * q).checked_mul(u128::from(d)));
    // b * 2^e
    let threshold = |e: usize| checked(1u128.checked_shl(e as u32).and_then(|x| x.checked_mul(b)));
    let within = |d: Dist, i: usize| -> Result<bool, EmbedError> { Ok(a(d)? <= threshold(i + 1)?) };
    let mut in_net = vec![vec![false; n]; hierarchy.levels.len()];
    for (i, net) in hierarchy.levels.iter().enumerate() {
        for &x in net {
            in_net[i][x] = true;
        }
    }
    let mut levels: Vec<LevelReport> = hierarchy
        .levels
        .iter()
        .enumerate()
        .map(|(level, net)| LevelReport {
            level,
            members: net.len(),
            pairs: 0,
            sparsity: 0,
            bound: hierarchy.sparsity_bound(),
        })
        .collect();
    let mut violations = Vec::new();
    let mut unbanded = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            let d = oracle.dist(u, v);
            let mut band = None;
            for i in 0..levels.len() {
                if a(d)? > threshold(i)? && within(d, i)? {
                    band = Some(i);
                    break;
                }
            }
            let Some(i) = band else {
                unbanded += 1;
                continue;
            };
            levels[i].pairs += 1;
            let path = oracle
                .canonical_path(u, v)
                .expect("embedding graphs are complete");
            if !path.iter().any(|&x| in_net[i][x]) {
                violations.push((u, v, i));
            }
        }
    }
    for (i, report) in levels.iter_mut().enumerate() {
        let mut best = 0;
        for x in 0..n {
            let mut count = 0;
            for &y in &hierarchy.levels[i] {
                if within(oracle.dist(x, y), i)? {
                    count += 1;
                }
            }
            best = best.max(count);
        }
        report.sparsity = best;
    }
    Ok(HubReport {
        levels,
        violations,
        unbanded,
    })
}
