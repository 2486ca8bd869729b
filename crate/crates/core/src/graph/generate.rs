//! Synthetic graph generators: Erdős–Rényi, Barabási–Albert and
//! Watts–Strogatz, all seeded and deterministic.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::seed::rng_from;

use super::{Graph, GraphError, NodeId};

/// Parameters for one synthetic graph family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenParams {
    /// Every node pair becomes an edge independently with probability `p`.
    Er { n: usize, p: f64 },
    /// Preferential attachment; each new node attaches `m` edges.
    Ba { n: usize, m: usize },
    /// Ring lattice with `k` nearest neighbors, each edge rewired with
    /// probability `p`.
    Ws { n: usize, k: usize, p: f64 },
}

impl GenParams {
    pub fn generate(&self, seed: u64) -> Result<Graph, GraphError> {
        match *self {
            GenParams::Er { n, p } => generate_er(n, p, seed),
            GenParams::Ba { n, m } => generate_ba(n, m, seed),
            GenParams::Ws { n, k, p } => generate_ws(n, k, p, seed),
        }
    }
}

fn check_probability(p: f64) -> Result<(), GraphError> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(GraphError::InvalidParam(format!(
            "probability must lie in [0, 1], got {p}"
        )));
    }
    Ok(())
}

/// Erdős–Rényi `G(n, p)`: each of the `C(n, 2)` pairs is included
/// independently with probability `p`.
pub fn generate_er(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(GraphError::InvalidParam("n must be >= 1".into()));
    }
    check_probability(p)?;
    let mut rng = rng_from(seed);
    let mut edges = Vec::new();
    for i in 0..n as u32 {
        for j in (i + 1)..n as u32 {
            if rng.random_bool(p) {
                edges.push((NodeId(i), NodeId(j)));
            }
        }
    }
    Graph::new_gameboard(n, &edges)
}

/// Barabási–Albert preferential attachment.
///
/// Starts from a star on `m + 1` nodes (node 0 is the hub); every later node
/// attaches `m` distinct targets drawn proportionally to degree, without
/// replacement. This yields exactly `m * (n - m)` edges.
pub fn generate_ba(n: usize, m: usize, seed: u64) -> Result<Graph, GraphError> {
    if m < 1 || m >= n {
        return Err(GraphError::InvalidParam(format!(
            "require 1 <= m < n, got m={m}, n={n}"
        )));
    }
    let mut rng = rng_from(seed);
    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(m * (n - m));
    // One entry per edge endpoint: sampling uniformly from this list is
    // sampling nodes proportionally to degree.
    let mut endpoints: Vec<NodeId> = Vec::with_capacity(2 * m * (n - m));
    for leaf in 1..=m as u32 {
        edges.push((NodeId(0), NodeId(leaf)));
        endpoints.push(NodeId(0));
        endpoints.push(NodeId(leaf));
    }
    let mut targets: Vec<NodeId> = Vec::with_capacity(m);
    for new in (m + 1) as u32..n as u32 {
        targets.clear();
        while targets.len() < m {
            let &cand = endpoints.choose(&mut rng).expect("endpoint list nonempty");
            if !targets.contains(&cand) {
                targets.push(cand);
            }
        }
        for &t in &targets {
            edges.push((t, NodeId(new)));
            endpoints.push(t);
            endpoints.push(NodeId(new));
        }
    }
    Graph::new_gameboard(n, &edges)
}

/// Watts–Strogatz small world.
///
/// Builds a ring lattice with `floor(k / 2)` neighbors per side, then rewires
/// each lattice edge with probability `p`, avoiding self-loops and duplicate
/// edges; rewiring preserves the edge count. Odd `k` behaves as `k - 1`.
pub fn generate_ws(n: usize, k: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if k < 1 || k >= n {
        return Err(GraphError::InvalidParam(format!(
            "require 1 <= k < n, got k={k}, n={n}"
        )));
    }
    check_probability(p)?;
    let mut rng = rng_from(seed);
    let half = k / 2;
    let mut edge_set: std::collections::HashSet<(NodeId, NodeId)> = std::collections::HashSet::new();
    let key = |a: NodeId, b: NodeId| (a.min(b), a.max(b));
    let mut degrees = vec![0usize; n];
    for j in 1..=half {
        for u in 0..n {
            let v = (u + j) % n;
            edge_set.insert(key(NodeId(u as u32), NodeId(v as u32)));
            degrees[u] += 1;
            degrees[v] += 1;
        }
    }
    for j in 1..=half {
        for u in 0..n {
            if !rng.random_bool(p) {
                continue;
            }
            let old = key(NodeId(u as u32), NodeId(((u + j) % n) as u32));
            if !edge_set.contains(&old) {
                continue; // This lattice edge was already rewired away.
            }
            // A saturated node cannot gain a fresh endpoint.
            if degrees[u] >= n - 1 {
                continue;
            }
            let w = loop {
                let cand = NodeId(rng.random_range(0..n as u32));
                if cand.index() != u && !edge_set.contains(&key(NodeId(u as u32), cand)) {
                    break cand;
                }
            };
            edge_set.remove(&old);
            degrees[old.0.index()] -= 1;
            degrees[old.1.index()] -= 1;
            edge_set.insert(key(NodeId(u as u32), w));
            degrees[u] += 1;
            degrees[w.index()] += 1;
        }
    }
    let mut edges: Vec<(NodeId, NodeId)> = edge_set.into_iter().collect();
    edges.sort_unstable();
    Graph::new_gameboard(n, &edges)
}
