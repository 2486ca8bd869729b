//! The move-selection contract and the non-search opponents.
//!
//! A strategy is handed a read-only view of the game state, the player it
//! acts for, the set of nodes already tried this turn and a seeded
//! randomness stream, and answers with a node (plus an amount, for
//! amount-emitting strategies) or "no move".

mod basic;
mod minimax;

pub use basic::{MaxThresholdStrategy, MinThresholdStrategy, RandomStrategy};
pub use minimax::{
    alpha_beta_value, minimax_ab, plain_minimax_value, search_root, MinimaxConfig,
    MinimaxStrategy,
};

use std::collections::HashSet;

use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::engine::{GameState, PlayerColor};
use crate::graph::NodeId;

/// A strategy's answer: the node to donate to, with an explicit amount for
/// chosen-amount play.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Choice {
    pub node: NodeId,
    pub amount: Option<u64>,
}

impl Choice {
    pub fn node(node: NodeId) -> Choice {
        Choice { node, amount: None }
    }
}

/// The move-selection contract every player implementation satisfies.
///
/// The returned node must be eligible and outside `excluded`; implementations
/// must be deterministic given the state, the exclusions and the stream
/// position of `rng`.
pub trait Strategy {
    fn name(&self) -> &str;

    /// Whether choices carry an explicit amount (required for the
    /// chosen-amount token policy).
    fn emits_amount(&self) -> bool {
        false
    }

    fn choose(
        &self,
        state: &GameState,
        player: PlayerColor,
        excluded: &HashSet<NodeId>,
        rng: &mut ChaCha8Rng,
    ) -> Option<Choice>;
}

#[derive(Debug, Error)]
pub enum StrategyError {
    #[error("unknown strategy {0:?} (expected one of: random, min-threshold, max-threshold, minimax, mcts, eps-mcts)")]
    UnknownName(String),
}

/// Knobs shared by the strategy constructors; used by the harness and CLI.
#[derive(Debug, Clone)]
pub struct StrategyParams {
    pub iterations: u64,
    pub epsilon: f64,
    pub uct_c: f64,
    pub depth: u32,
    pub weights: crate::heuristics::HeuristicWeights,
    /// Enumerate (node, amount) pairs in search instead of firing.
    pub choose_amount: bool,
    /// Override the rollout policy implied by the strategy name.
    pub rollout: Option<crate::mcts::RolloutPolicy>,
}

impl Default for StrategyParams {
    fn default() -> Self {
        StrategyParams {
            iterations: 1000,
            epsilon: 0.7,
            uct_c: std::f64::consts::SQRT_2,
            depth: 4,
            weights: Default::default(),
            choose_amount: false,
            rollout: None,
        }
    }
}

/// Build a strategy from its CLI name.
pub fn from_name(
    name: &str,
    params: &StrategyParams,
) -> Result<Box<dyn Strategy + Send + Sync>, StrategyError> {
    use crate::mcts::{AmountMode, MctsConfig, MctsStrategy, RolloutPolicy};
    let amount_mode = if params.choose_amount {
        AmountMode::ChooseAmount
    } else {
        AmountMode::Fire
    };
    let mcts_cfg = |rollout: RolloutPolicy| MctsConfig {
        iterations: params.iterations,
        time_cap: None,
        exploration: params.uct_c,
        epsilon: params.epsilon,
        rollout,
        amount_mode,
        weights: params.weights,
    };
    match name {
        "random" => Ok(Box::new(RandomStrategy)),
        "min-threshold" => Ok(Box::new(MinThresholdStrategy)),
        "max-threshold" => Ok(Box::new(MaxThresholdStrategy)),
        "minimax" => Ok(Box::new(MinimaxStrategy::new(MinimaxConfig {
            depth: params.depth,
            weights: params.weights,
            ..Default::default()
        }))),
        "mcts" => Ok(Box::new(MctsStrategy::new(
            "mcts",
            mcts_cfg(params.rollout.unwrap_or(RolloutPolicy::Random)),
        ))),
        "eps-mcts" => Ok(Box::new(MctsStrategy::new(
            "eps-mcts",
            mcts_cfg(params.rollout.unwrap_or(RolloutPolicy::EpsGreedy)),
        ))),
        other => Err(StrategyError::UnknownName(other.to_string())),
    }
}

/// The six strategy names accepted by the CLI.
pub const STRATEGY_NAMES: [&str; 6] = [
    "random",
    "min-threshold",
    "max-threshold",
    "minimax",
    "mcts",
    "eps-mcts",
];
