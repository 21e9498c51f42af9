use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FiniteMetric;
use crate::exec::{map_indices, Execution};
use crate::numerics::Matrix;
use crate::{Error, Result};

/// Shortest-path metric of a connected graph with unit edge weights.
///
/// Edges are unordered pairs; duplicates are ignored. Self-loops and
/// out-of-range endpoints are rejected, as is a disconnected graph (the
/// error names the first vertex unreachable from vertex 0).
pub fn graph_shortest_path_metric(n: usize, edges: &[(usize, usize)]) -> Result<FiniteMetric> {
    graph_shortest_path_metric_with(n, edges, Execution::default())
}

pub fn graph_shortest_path_metric_with(n: usize, edges: &[(usize, usize)], exec: Execution) -> Result<FiniteMetric> {
    if n == 0 {
        return Err(Error::invalid("graph needs at least one vertex"));
    }
    let mut adjacency = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a >= n || b >= n {
            return Err(Error::invalid(format!("edge ({a}, {b}) has an endpoint outside 0..{n}")));
        }
        if a == b {
            return Err(Error::invalid(format!("self-loop at vertex {a}")));
        }
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    for list in &mut adjacency {
        list.sort_unstable();
        list.dedup();
    }

    let rows: Vec<Vec<Option<usize>>> = map_indices(n, exec, |s| bfs(&adjacency, s));
    if let Some(stranded) = rows[0].iter().position(Option::is_none) {
        return Err(Error::invalid(format!("graph is disconnected: vertex {stranded} is unreachable from vertex 0")));
    }
    let d = Matrix::from_fn(n, n, |i, j| rows[i][j].expect("connected graph") as f64);
    Ok(FiniteMetric::from_trusted(d))
}

fn bfs(adjacency: &[Vec<usize>], source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adjacency.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap_or(0);
        for &v in &adjacency[u] {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Path `0 − 1 − … − (n−1)`.
pub fn path_edges(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

/// Star with center 0 and leaves `1..n`.
pub fn star_edges(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (0, i)).collect()
}

/// Cycle on `n ≥ 3` vertices (a path for smaller `n`).
pub fn cycle_edges(n: usize) -> Vec<(usize, usize)> {
    let mut e = path_edges(n);
    if n >= 3 {
        e.push((n - 1, 0));
    }
    e
}

/// Seeded connected graph: a random recursive tree (vertex `i` attaches to
/// a uniform earlier vertex) plus each remaining pair independently with
/// probability `extra_edge_prob`. Uses the ChaCha8 stream of `seed`.
pub fn random_connected_edges(n: usize, extra_edge_prob: f64, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = rng.random_range(0..i);
        edges.push((parent, i));
    }
    if extra_edge_prob > 0.0 {
        for i in 0..n {
            for j in i + 1..n {
                if rng.random::<f64>() < extra_edge_prob {
                    edges.push((i, j));
                }
            }
        }
    }
    edges
}
