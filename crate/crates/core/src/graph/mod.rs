//! Gameboard graphs: construction, synthetic generators, edge-list IO and
//! community sampling.
//!
//! A [`Graph`] is a simple undirected graph whose nodes carry the pristine
//! board attributes: threshold equal to degree, zero tokens, inactive state.
//! Per-game mutable state lives in the engine; a constructed `Graph` is
//! immutable and can be shared across concurrent games.

mod community;
mod generate;
mod io;

pub use community::{
    community_sizes, extract_cluster_sample, label_propagation, pick_community, Labeling,
    LABEL_PROPAGATION_ROUND_CAP,
};
pub use generate::{generate_ba, generate_er, generate_ws, GenParams};
pub use io::{load_edge_list, save_edge_list, LoadedGraph};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense node identifier in `[0, n)`, stable for the lifetime of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for NodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Activation state of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeState {
    Inactive,
    Red,
    Black,
}

/// Per-node board attributes: threshold, token counts and state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeAttrs {
    pub theta: u64,
    pub red_tokens: u64,
    pub black_tokens: u64,
    pub state: NodeState,
}

impl NodeAttrs {
    pub fn total_tokens(&self) -> u64 {
        self.red_tokens + self.black_tokens
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("self-loop on node {0} is not allowed")]
    SelfLoop(NodeId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(NodeId, NodeId),
    #[error("edge endpoint {0} is outside the node range 0..{1}")]
    EndpointOutOfRange(NodeId, usize),
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
    #[error("no community of size >= {0} exists")]
    NoCommunityLargeEnough(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Simple undirected gameboard graph.
///
/// Degree-zero nodes are retained but flagged ineligible: they can never be
/// selected and are excluded from win counting.
#[derive(Debug, Clone)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    attrs: Vec<NodeAttrs>,
    edge_count: usize,
    // Sum of 1/degree over each node's neighbors, cached for heuristics.
    nbr_inv_degree_sum: Vec<f64>,
    // Original node ids when this graph came from a file or a sample.
    original_ids: Option<Vec<u64>>,
}

impl Graph {
    /// Build a fresh gameboard over `n` nodes from an undirected edge list.
    ///
    /// Every node starts inactive with zero tokens and threshold equal to its
    /// degree. Self-loops and duplicate edges are rejected.
    pub fn new_gameboard(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Graph, GraphError> {
        let mut adjacency: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for e in [u, v] {
                if e.index() >= n {
                    return Err(GraphError::EndpointOutOfRange(e, n));
                }
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            adjacency[u.index()].push(v);
            adjacency[v.index()].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        let attrs = adjacency
            .iter()
            .map(|nbrs| NodeAttrs {
                theta: nbrs.len() as u64,
                red_tokens: 0,
                black_tokens: 0,
                state: NodeState::Inactive,
            })
            .collect();
        let nbr_inv_degree_sum = adjacency
            .iter()
            .map(|nbrs| {
                nbrs.iter()
                    .map(|w| 1.0 / adjacency[w.index()].len() as f64)
                    .sum()
            })
            .collect();
        Ok(Graph {
            adjacency,
            attrs,
            edge_count: edges.len(),
            nbr_inv_degree_sum,
            original_ids: None,
        })
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Neighbor count of `v`.
    pub fn degree(&self, v: NodeId) -> Result<usize, GraphError> {
        self.adjacency
            .get(v.index())
            .map(|nbrs| nbrs.len())
            .ok_or(GraphError::UnknownNode(v))
    }

    /// Unchecked degree for hot paths; panics on an out-of-range id.
    pub(crate) fn degree_of(&self, v: NodeId) -> usize {
        self.adjacency[v.index()].len()
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v.index()]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u.index()].binary_search(&v).is_ok()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        v.index() < self.adjacency.len()
    }

    /// Degree-zero nodes are never selectable and never counted for a win.
    pub fn is_selectable(&self, v: NodeId) -> bool {
        self.degree_of(v) > 0
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.adjacency.len() as u32).map(NodeId)
    }

    /// Pristine board attributes (threshold = degree, no tokens, inactive).
    pub fn initial_attrs(&self) -> &[NodeAttrs] {
        &self.attrs
    }

    pub(crate) fn nbr_inv_degree_sum(&self, v: NodeId) -> f64 {
        self.nbr_inv_degree_sum[v.index()]
    }

    /// All edges as `(u, v)` pairs with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in self.node_ids() {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Original id of `v` when loaded from a file or sampled; `None` for
    /// synthetic graphs.
    pub fn original_id(&self, v: NodeId) -> Option<u64> {
        self.original_ids.as_ref().map(|ids| ids[v.index()])
    }

    pub(crate) fn set_original_ids(&mut self, ids: Vec<u64>) {
        debug_assert_eq!(ids.len(), self.node_count());
        self.original_ids = Some(ids);
    }

    /// Induced subgraph on `nodes` (deduplicated, sorted ascending), with ids
    /// remapped densely and thresholds reset to the induced degrees. Original
    /// ids are carried through.
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> Result<Graph, GraphError> {
        let mut sorted: Vec<NodeId> = nodes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut remap = std::collections::HashMap::with_capacity(sorted.len());
        for (new, &old) in sorted.iter().enumerate() {
            if !self.contains(old) {
                return Err(GraphError::UnknownNode(old));
            }
            remap.insert(old, NodeId(new as u32));
        }
        let mut edges = Vec::new();
        for &old in &sorted {
            for &w in self.neighbors(old) {
                if old < w {
                    if let Some(&new_w) = remap.get(&w) {
                        edges.push((remap[&old], new_w));
                    }
                }
            }
        }
        let mut sub = Graph::new_gameboard(sorted.len(), &edges)?;
        let ids = sorted
            .iter()
            .map(|&old| self.original_id(old).unwrap_or(old.0 as u64))
            .collect();
        sub.set_original_ids(ids);
        Ok(sub)
    }
}
