use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Dist, Graph, GraphError};

/// Pairing attempts before a cubic instance gives up.
const CUBIC_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("grid dimensions must be positive")]
    EmptyGrid,
    #[error("{m} edges cannot connect {n} vertices")]
    TooFewEdges { n: usize, m: usize },
    #[error("{m} edges exceed the {max} possible on {n} vertices")]
    TooManyEdges { n: usize, m: usize, max: usize },
    #[error("maximum edge length must be positive")]
    ZeroLength,
    #[error("cubic graphs need an even vertex count of at least 4, got {0}")]
    BadCubicSize(usize),
    #[error("no simple connected pairing found in {0} attempts")]
    PairingFailed(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `w x h` lattice with unit lengths; vertex `(x, y)` has id `y * w + x`.
pub fn gen_grid(w: usize, h: usize) -> Result<Graph, GenError> {
    if w == 0 || h == 0 {
        return Err(GenError::EmptyGrid);
    }
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            let v = y * w + x;
            if x + 1 < w {
                edges.push((v, v + 1));
            }
            if y + 1 < h {
                edges.push((v, v + w));
            }
        }
    }
    Ok(Graph::unit_lengths(w * h, &edges)?)
}

/// Random connected graph: a random spanning tree plus uniformly chosen
/// extra edges, integer lengths uniform in `[1, max_len]`.
pub fn gen_random_connected(
    n: usize,
    m: usize,
    max_len: Dist,
    seed: u64,
) -> Result<Graph, GenError> {
    let max = n * n.saturating_sub(1) / 2;
    if n == 0 || m + 1 < n {
        return Err(GenError::TooFewEdges { n, m });
    }
    if m > max {
        return Err(GenError::TooManyEdges { n, m, max });
    }
    if max_len == 0 {
        return Err(GenError::ZeroLength);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut taken = vec![false; n * n];
    let mut edges = Vec::with_capacity(m);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        taken[u * n + v] = true;
        edges.push((u, v));
    }
    let mut spare: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !taken[u * n + v])
        .collect();
    spare.shuffle(&mut rng);
    edges.extend(spare.into_iter().take(m + 1 - n));
    let lengths: Vec<Dist> = edges.iter().map(|_| rng.gen_range(1..=max_len)).collect();
    Ok(Graph::from_scaled(
        n,
        edges.into_iter().zip(lengths).map(|((u, v), l)| (u, v, l)),
        1,
    )?)
}

/// Random connected 3-regular graph with unit lengths, drawn from the
/// pairing model and rejected until simple and connected.
pub fn gen_cubic_instance(n: usize, seed: u64) -> Result<Graph, GenError> {
    if n < 4 || n % 2 == 1 {
        return Err(GenError::BadCubicSize(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
    'attempt: for _ in 0..CUBIC_ATTEMPTS {
        points.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> = points
            .chunks(2)
            .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
            .collect();
        if edges.iter().any(|&(u, v)| u == v) {
            continue;
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                continue 'attempt;
            }
        }
        let g = Graph::unit_lengths(n, &edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(GenError::PairingFailed(CUBIC_ATTEMPTS))
}

/// The k-Center instance of a dominating-set question: the same topology
/// with unit lengths. Its optimum is 1 exactly when a dominating set of size
/// at most `k` exists, and at least 2 otherwise.
pub fn reduce_dominating_set(graph: &Graph, k: u64) -> (Graph, u64) {
    (graph.with_unit_lengths(), k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grids() {
        let square = gen_grid(2, 2).unwrap();
        assert_eq!(square.m(), 4);
        assert!((0..4).all(|v| square.degree(v) == 2));
        let path = gen_grid(1, 3).unwrap();
        assert_eq!(path.m(), 2);
        assert_eq!(path.degree(1), 2);
        assert_eq!(gen_grid(0, 3).unwrap_err(), GenError::EmptyGrid);
    }

    #[test]
    fn random_is_deterministic() {
        let a = gen_random_connected(10, 15, 5, 7).unwrap();
        let b = gen_random_connected(10, 15, 5, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.m(), 15);
        assert!(a.is_connected());
        assert!(a.edges().iter().all(|e| (1..=5).contains(&e.len)));
        assert_ne!(a, gen_random_connected(10, 15, 5, 8).unwrap());
    }

    #[test]
    fn random_rejects_bad_counts() {
        assert_eq!(
            gen_random_connected(5, 3, 1, 0).unwrap_err(),
            GenError::TooFewEdges { n: 5, m: 3 }
        );
        assert!(matches!(
            gen_random_connected(4, 7, 1, 0),
            Err(GenError::TooManyEdges { .. })
        ));
        let tree = gen_random_connected(1, 0, 1, 0).unwrap();
        assert_eq!(tree.n(), 1);
    }

    #[test]
    fn cubic_graphs() {
        let k4 = gen_cubic_instance(4, 1).unwrap();
        assert_eq!(k4.m(), 6);
        for seed in 0..5 {
            let g = gen_cubic_instance(12, seed).unwrap();
            assert!((0..12).all(|v| g.degree(v) == 3));
            assert!(g.is_connected());
        }
        assert_eq!(gen_cubic_instance(7, 0).unwrap_err(), GenError::BadCubicSize(7));
    }
}
