//! Shared test fixtures: an independent brute-force cascade simulator and a
//! random-position fuzzer.
//!
//! The oracle simulator is written directly from the diffusion rules with its
//! own data layout; it never calls into the engine, so agreement between the
//! two is a real check.

use std::collections::VecDeque;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use influence_duel::engine::{GameConfig, GameState, PlayerColor};
use influence_duel::graph::{Graph, NodeId, NodeState};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleNode {
    pub theta: u64,
    pub red: u64,
    pub black: u64,
    /// 0 inactive, 1 red, 2 black
    pub state: u8,
}

impl OracleNode {
    fn total(&self) -> u64 {
        self.red + self.black
    }
}

/// Donate `t` tokens of one color to node `v` and run the diffusion to
/// quiescence. Returns the activations in processed order as
/// `(node, donor_is_red)` pairs.
///
/// Rules, restated independently of the engine:
/// on activation a node adopts the donor color and converts all opposing
/// tokens; if its threshold still equals its degree it hands one token to
/// every neighbor, otherwise it drains all tokens round-robin over neighbors
/// sorted by threshold descending (ties to the lower id); its threshold then
/// grows by its degree. Queue processing is FIFO with a threshold re-check
/// at dequeue; neighbors (and the node itself) are enqueued whenever their
/// totals reach their thresholds.
pub fn oracle_donate(
    adj: &[Vec<usize>],
    nodes: &mut [OracleNode],
    donor_is_red: bool,
    v: usize,
    t: u64,
) -> Vec<(usize, bool)> {
    if donor_is_red {
        nodes[v].red += t;
    } else {
        nodes[v].black += t;
    }
    let mut events = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    if nodes[v].total() >= nodes[v].theta {
        queue.push_back(v);
    }
    while let Some(u) = queue.pop_front() {
        if nodes[u].total() < nodes[u].theta {
            continue;
        }
        // Activate u for the donor color.
        let degree = adj[u].len() as u64;
        let theta = nodes[u].theta;
        let total = nodes[u].total();
        if donor_is_red {
            nodes[u].red = total;
            nodes[u].black = 0;
            nodes[u].state = 1;
        } else {
            nodes[u].black = total;
            nodes[u].red = 0;
            nodes[u].state = 2;
        }
        let mut order: Vec<usize> = adj[u].clone();
        order.sort_by(|&a, &b| nodes[b].theta.cmp(&nodes[a].theta).then(a.cmp(&b)));
        let give = |nodes: &mut [OracleNode], from: usize, to: usize| {
            if donor_is_red {
                nodes[from].red -= 1;
                nodes[to].red += 1;
            } else {
                nodes[from].black -= 1;
                nodes[to].black += 1;
            }
        };
        if theta == degree {
            for &w in &order {
                give(nodes, u, w);
            }
        } else {
            'drain: loop {
                for &w in &order {
                    if (donor_is_red && nodes[u].red == 0) || (!donor_is_red && nodes[u].black == 0)
                    {
                        break 'drain;
                    }
                    give(nodes, u, w);
                }
                if (donor_is_red && nodes[u].red == 0) || (!donor_is_red && nodes[u].black == 0) {
                    break;
                }
            }
        }
        nodes[u].theta += degree;
        events.push((u, donor_is_red));
        for &w in order.iter().chain(std::iter::once(&u)) {
            if nodes[w].total() >= nodes[w].theta {
                queue.push_back(w);
            }
        }
    }
    events
}

/// A random small board with a random consistent position: thresholds are
/// integer multiples of the degree, token totals sit below the threshold,
/// and colored states imply a past activation.
pub struct FuzzPosition {
    pub graph: Arc<Graph>,
    pub state: GameState,
    pub adj: Vec<Vec<usize>>,
    pub oracle: Vec<OracleNode>,
}

pub fn random_position(rng: &mut ChaCha8Rng, max_nodes: usize) -> FuzzPosition {
    let n = rng.random_range(2..=max_nodes);
    let mut edges = Vec::new();
    for i in 0..n as u32 {
        for j in (i + 1)..n as u32 {
            if rng.random_bool(0.5) {
                edges.push((NodeId(i), NodeId(j)));
            }
        }
    }
    let graph = Arc::new(Graph::new_gameboard(n, &edges).unwrap());
    let mut cfg = GameConfig::default_for(&graph);
    cfg.budget_red = 20;
    cfg.budget_black = 20;
    let mut state = GameState::new(Arc::clone(&graph), &cfg);
    let mut oracle = Vec::with_capacity(n);
    let mut adj = Vec::with_capacity(n);
    for v in graph.node_ids() {
        let degree = graph.degree(v).unwrap() as u64;
        adj.push(graph.neighbors(v).iter().map(|w| w.index()).collect());
        if degree == 0 {
            oracle.push(OracleNode {
                theta: 0,
                red: 0,
                black: 0,
                state: 0,
            });
            continue;
        }
        let fired: u64 = rng.random_range(0..=2);
        let theta = degree * (1 + fired);
        let total = rng.random_range(0..theta);
        let red = if total == 0 {
            0
        } else {
            rng.random_range(0..=total)
        };
        let black = total - red;
        let state_code = if fired == 0 {
            0
        } else {
            rng.random_range(1..=2) as u8
        };
        let node_state = match state_code {
            1 => NodeState::Red,
            2 => NodeState::Black,
            _ => NodeState::Inactive,
        };
        state.set_node(v, theta, red, black, node_state);
        oracle.push(OracleNode {
            theta,
            red,
            black,
            state: state_code,
        });
    }
    FuzzPosition {
        graph,
        state,
        adj,
        oracle,
    }
}

/// Pick an eligible donation for `player` on the fuzz position, if any:
/// a selectable inactive or opponent-colored node and an amount within
/// `[1, capacity]`.
pub fn random_donation(
    pos: &FuzzPosition,
    player: PlayerColor,
    rng: &mut ChaCha8Rng,
) -> Option<(NodeId, u64)> {
    let eligible = pos.state.eligible_nodes(player);
    if eligible.is_empty() {
        return None;
    }
    let v = eligible[rng.random_range(0..eligible.len())];
    let cap = pos.state.capacity(v).unwrap();
    let t = rng.random_range(1..=cap.min(20));
    Some((v, t))
}
