//! Node-scoring heuristics and their equal-weight linear combination.
//!
//! Four signals rank candidate nodes: token parity (`ph`), hubs with weak
//! neighbors (`hwn`), low thresholds with an opponent bonus (`nlt`) and hubs
//! on the verge of activation (`hva`). Each raw column is min-max normalized
//! across the candidate set before the weighted sum, so differing scales
//! cannot drown each other out.

use thiserror::Error;

use crate::engine::{GameState, PlayerColor};
use crate::graph::{Graph, NodeId};

/// Combination weights. Defaults to the equal-weight mix (0.25 each) with a
/// 2x low-threshold bonus for opponent-held nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeuristicWeights {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub lambda: f64,
    /// `nlt` multiplier for nodes currently held by the opponent.
    pub nlt_opponent_bonus: f64,
}

impl Default for HeuristicWeights {
    fn default() -> Self {
        HeuristicWeights {
            alpha: 0.25,
            beta: 0.25,
            gamma: 0.25,
            lambda: 0.25,
            nlt_opponent_bonus: 2.0,
        }
    }
}

impl HeuristicWeights {
    pub fn validate(&self) -> Result<(), HeuristicError> {
        let ws = [self.alpha, self.beta, self.gamma, self.lambda];
        if ws.iter().any(|w| *w < 0.0 || w.is_nan()) {
            return Err(HeuristicError::InvalidWeights(
                "weights must be non-negative".into(),
            ));
        }
        let sum: f64 = ws.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(HeuristicError::InvalidWeights(format!(
                "weights must sum to 1, got {sum}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum HeuristicError {
    #[error("empty candidate set")]
    EmptyCandidates,
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
}

/// A candidate with its raw heuristic scores and combined final score.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredNode {
    pub node: NodeId,
    pub ph: f64,
    pub hwn: f64,
    pub nlt: f64,
    pub hva: f64,
    pub final_score: f64,
}

/// Token parity: the player's tokens on `v` minus the opponent's.
pub fn ph(state: &GameState, v: NodeId, player: PlayerColor) -> f64 {
    let a = state.node(v);
    let (own, opp) = match player {
        PlayerColor::Red => (a.red_tokens, a.black_tokens),
        PlayerColor::Black => (a.black_tokens, a.red_tokens),
    };
    own as f64 - opp as f64
}

/// Hubs with weak neighbors: sum of reciprocal neighbor degrees. Rewards
/// both neighbor count and neighbor weakness; 0 for isolated nodes.
pub fn hwn(graph: &Graph, v: NodeId) -> f64 {
    graph.nbr_inv_degree_sum(v)
}

/// Low threshold: `1/theta`, doubled (by the configured bonus) when the node
/// is held by the opponent.
pub fn nlt(state: &GameState, v: NodeId, player: PlayerColor, bonus: f64) -> f64 {
    let a = state.node(v);
    if a.theta == 0 {
        return 0.0;
    }
    let b = if a.state == player.opponent().as_state() {
        bonus
    } else {
        1.0
    };
    b / a.theta as f64
}

/// Hubs on the verge of activation: `degree / (capacity + 1)`.
pub fn hva(state: &GameState, v: NodeId) -> f64 {
    let degree = state.graph().degree_of(v) as f64;
    degree / (state.capacity_of(v) as f64 + 1.0)
}

fn normalize_column(values: &[f64]) -> Vec<f64> {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max > min {
        values.iter().map(|v| (v - min) / (max - min)).collect()
    } else {
        // A constant column neither helps nor hurts.
        vec![0.5; values.len()]
    }
}

/// Score `candidates` for `player` and sort them best first.
///
/// Each raw column is min-max normalized to `[0, 1]` across the candidate
/// set (a constant column maps to 0.5 everywhere), then combined with the
/// weights. Ties are broken by lower node id.
pub fn final_metric(
    state: &GameState,
    candidates: &[NodeId],
    player: PlayerColor,
    weights: &HeuristicWeights,
) -> Result<Vec<ScoredNode>, HeuristicError> {
    if candidates.is_empty() {
        return Err(HeuristicError::EmptyCandidates);
    }
    let graph = state.graph();
    let ph_raw: Vec<f64> = candidates.iter().map(|&v| ph(state, v, player)).collect();
    let hwn_raw: Vec<f64> = candidates.iter().map(|&v| hwn(graph, v)).collect();
    let nlt_raw: Vec<f64> = candidates
        .iter()
        .map(|&v| nlt(state, v, player, weights.nlt_opponent_bonus))
        .collect();
    let hva_raw: Vec<f64> = candidates.iter().map(|&v| hva(state, v)).collect();

    let ph_n = normalize_column(&ph_raw);
    let hwn_n = normalize_column(&hwn_raw);
    let nlt_n = normalize_column(&nlt_raw);
    let hva_n = normalize_column(&hva_raw);

    let mut scored: Vec<ScoredNode> = candidates
        .iter()
        .enumerate()
        .map(|(i, &node)| ScoredNode {
            node,
            ph: ph_raw[i],
            hwn: hwn_raw[i],
            nlt: nlt_raw[i],
            hva: hva_raw[i],
            final_score: weights.alpha * ph_n[i]
                + weights.beta * hwn_n[i]
                + weights.gamma * nlt_n[i]
                + weights.lambda * hva_n[i],
        })
        .collect();
    scored.sort_by(|a, b| {
        b.final_score
            .partial_cmp(&a.final_score)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.node.cmp(&b.node))
    });
    Ok(scored)
}
