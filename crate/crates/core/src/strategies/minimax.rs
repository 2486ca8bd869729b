//! Depth-limited minimax with alpha-beta pruning.
//!
//! Moves are full firings of eligible affordable nodes; leaves are scored by
//! node-count difference plus a small heuristic tie-breaker, always from the
//! searching player's perspective.

use std::collections::HashSet;

use rand_chacha::ChaCha8Rng;

use crate::engine::{GameState, Move, PlayerColor};
use crate::graph::NodeId;
use crate::heuristics::{final_metric, HeuristicWeights};

use super::{Choice, Strategy};

/// Search depth is counted in plies; a pass consumes a ply.
#[derive(Debug, Clone)]
pub struct MinimaxConfig {
    pub depth: u32,
    pub weights: HeuristicWeights,
    /// Weight of the heuristic leaf term; node counts stay dominant.
    pub leaf_heuristic_coeff: f64,
}

impl Default for MinimaxConfig {
    fn default() -> Self {
        MinimaxConfig {
            depth: 4,
            weights: Default::default(),
            leaf_heuristic_coeff: 0.01,
        }
    }
}

// Firing moves for the side to move: every eligible node whose capacity fits
// the budget, ascending by id.
fn fire_moves(state: &GameState, player: PlayerColor, excluded: Option<&HashSet<NodeId>>) -> Vec<Move> {
    let budget = state.budget(player);
    if budget == 0 {
        return Vec::new();
    }
    state
        .eligible_nodes(player)
        .into_iter()
        .filter(|v| excluded.map_or(true, |ex| !ex.contains(v)))
        .filter_map(|v| {
            let amount = state.capacity_of(v);
            (amount <= budget).then_some(Move::Donate { node: v, amount })
        })
        .collect()
}

// Leaf evaluation from the root player's perspective: own minus opponent
// node counts, plus a small mean-heuristic term over the root player's
// eligible nodes.
fn evaluate(state: &GameState, root: PlayerColor, cfg: &MinimaxConfig) -> f64 {
    let (red, black) = state.counts();
    let diff = match root {
        PlayerColor::Red => red as f64 - black as f64,
        PlayerColor::Black => black as f64 - red as f64,
    };
    let candidates = state.eligible_nodes(root);
    let tiebreak = if candidates.is_empty() {
        0.0
    } else {
        let scored = final_metric(state, &candidates, root, &cfg.weights)
            .expect("candidates nonempty");
        scored.iter().map(|s| s.final_score).sum::<f64>() / scored.len() as f64
    };
    diff + cfg.leaf_heuristic_coeff * tiebreak
}

fn alpha_beta(
    state: &GameState,
    depth: u32,
    mut alpha: f64,
    mut beta: f64,
    root: PlayerColor,
    cfg: &MinimaxConfig,
) -> f64 {
    if depth == 0 || state.is_terminal() {
        return evaluate(state, root, cfg);
    }
    let mover = state.to_move();
    let moves = fire_moves(state, mover, None);
    if moves.is_empty() {
        let mut child = state.clone();
        child.apply_move(Move::Pass).expect("pass is always legal");
        return alpha_beta(&child, depth - 1, alpha, beta, root, cfg);
    }
    if mover == root {
        let mut value = f64::NEG_INFINITY;
        for mv in moves {
            let mut child = state.clone();
            child.apply_move(mv).expect("generated move is legal");
            value = value.max(alpha_beta(&child, depth - 1, alpha, beta, root, cfg));
            if value >= beta {
                break;
            }
            alpha = alpha.max(value);
        }
        value
    } else {
        let mut value = f64::INFINITY;
        for mv in moves {
            let mut child = state.clone();
            child.apply_move(mv).expect("generated move is legal");
            value = value.min(alpha_beta(&child, depth - 1, alpha, beta, root, cfg));
            if value <= alpha {
                break;
            }
            beta = beta.min(value);
        }
        value
    }
}

/// Alpha-beta search from the root. Returns the best move and its exact root
/// value, or `None` when the player has no affordable firing. Root ties go to
/// the lower node id.
pub fn search_root(
    state: &GameState,
    player: PlayerColor,
    cfg: &MinimaxConfig,
    excluded: &HashSet<NodeId>,
) -> Option<(Move, f64)> {
    debug_assert_eq!(state.to_move(), player, "minimax searches from the mover");
    let moves = fire_moves(state, player, Some(excluded));
    let mut best: Option<(Move, f64)> = None;
    let mut alpha = f64::NEG_INFINITY;
    for mv in moves {
        let mut child = state.clone();
        child.apply_move(mv).expect("generated move is legal");
        let value = alpha_beta(
            &child,
            cfg.depth.saturating_sub(1),
            alpha,
            f64::INFINITY,
            player,
            cfg,
        );
        if best.as_ref().map_or(true, |(_, b)| value > *b) {
            best = Some((mv, value));
        }
        alpha = alpha.max(value);
    }
    best
}

/// The move alpha-beta minimax picks for `player`, if any.
pub fn minimax_ab(
    state: &GameState,
    player: PlayerColor,
    cfg: &MinimaxConfig,
    excluded: &HashSet<NodeId>,
) -> Option<Move> {
    search_root(state, player, cfg, excluded).map(|(mv, _)| mv)
}

/// Unpruned minimax root value over the identical move space and evaluation.
/// This is the independent reference that pruning must reproduce exactly.
pub fn plain_minimax_value(
    state: &GameState,
    depth: u32,
    root: PlayerColor,
    cfg: &MinimaxConfig,
) -> f64 {
    if depth == 0 || state.is_terminal() {
        return evaluate(state, root, cfg);
    }
    let mover = state.to_move();
    let moves = fire_moves(state, mover, None);
    if moves.is_empty() {
        let mut child = state.clone();
        child.apply_move(Move::Pass).expect("pass is always legal");
        return plain_minimax_value(&child, depth - 1, root, cfg);
    }
    let values = moves.into_iter().map(|mv| {
        let mut child = state.clone();
        child.apply_move(mv).expect("generated move is legal");
        plain_minimax_value(&child, depth - 1, root, cfg)
    });
    if mover == root {
        values.fold(f64::NEG_INFINITY, f64::max)
    } else {
        values.fold(f64::INFINITY, f64::min)
    }
}

/// Full root value of the pruned search (for soundness checks).
pub fn alpha_beta_value(
    state: &GameState,
    depth: u32,
    root: PlayerColor,
    cfg: &MinimaxConfig,
) -> f64 {
    alpha_beta(
        state,
        depth,
        f64::NEG_INFINITY,
        f64::INFINITY,
        root,
        cfg,
    )
}

/// Alpha-beta minimax as a playing strategy.
pub struct MinimaxStrategy {
    cfg: MinimaxConfig,
}

impl MinimaxStrategy {
    pub fn new(cfg: MinimaxConfig) -> MinimaxStrategy {
        MinimaxStrategy { cfg }
    }
}

impl Strategy for MinimaxStrategy {
    fn name(&self) -> &str {
        "minimax"
    }

    fn choose(
        &self,
        state: &GameState,
        player: PlayerColor,
        excluded: &HashSet<NodeId>,
        _rng: &mut ChaCha8Rng,
    ) -> Option<Choice> {
        match minimax_ab(state, player, &self.cfg, excluded)? {
            Move::Donate { node, .. } => Some(Choice::node(node)),
            Move::Pass => None,
        }
    }
}
