//! The turn loop: strategy querying with affordability retries, alternating
//! turns, termination and winner determination.

use std::collections::HashSet;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::seed::{mix, rng_from, stream};
use crate::strategies::Strategy;

use super::{GameConfig, GameResult, GameState, Move, PlayerColor, TokenPolicy, TurnRecord};

/// Let the player to move take one turn.
///
/// The strategy is queried for a node among the eligible nodes not yet tried
/// this turn; a pick whose required amount exceeds the budget is excluded and
/// the strategy re-queried. When no affordable option remains (or the budget
/// is already empty) the turn is a pass. The required amount follows the
/// player's token policy: fire-capacity donates the full capacity, one-token
/// donates 1, chosen-amount uses the strategy's amount clamped to
/// `[1, capacity]`.
pub fn take_turn(
    state: &mut GameState,
    strategy: &dyn Strategy,
    rng: &mut ChaCha8Rng,
) -> TurnRecord {
    let player = state.to_move();
    let turn_index = state.turn_index();
    let budget = state.budget(player);
    let mut mv = Move::Pass;
    if budget > 0 {
        let mut excluded: HashSet<crate::graph::NodeId> = HashSet::new();
        while let Some(choice) = strategy.choose(state, player, &excluded, rng) {
            if !excluded.insert(choice.node) {
                break; // The strategy repeated an excluded node; give up.
            }
            if !state.is_eligible(choice.node, player) {
                continue; // Contract violation: treat as an exhausted option.
            }
            let capacity = state.capacity_of(choice.node);
            let amount = match state.policy(player) {
                TokenPolicy::FireCapacity => capacity,
                TokenPolicy::OneToken => 1,
                TokenPolicy::ChosenAmount => choice.amount.unwrap_or(1).clamp(1, capacity),
            };
            if amount > budget {
                continue;
            }
            mv = Move::Donate {
                node: choice.node,
                amount,
            };
            break;
        }
    }
    let activations = state.apply_move(mv).expect("move was validated");
    TurnRecord {
        turn_index,
        player,
        mv,
        activations,
    }
}

/// Play a full game with per-color randomness streams derived from `seed`.
pub fn play_game(
    graph: &Arc<Graph>,
    cfg: &GameConfig,
    strat_red: &dyn Strategy,
    strat_black: &dyn Strategy,
    seed: u64,
) -> GameResult {
    let rng_red = rng_from(mix(seed, stream::RED));
    let rng_black = rng_from(mix(seed, stream::BLACK));
    play_game_with_rngs(graph, cfg, strat_red, strat_black, rng_red, rng_black)
}

/// Play a full game with explicit per-player randomness streams.
///
/// Exposing the streams makes color-symmetry checks possible: swapping the
/// strategies, budgets, policies, starter and streams mirrors the outcome.
pub fn play_game_with_rngs(
    graph: &Arc<Graph>,
    cfg: &GameConfig,
    strat_red: &dyn Strategy,
    strat_black: &dyn Strategy,
    mut rng_red: ChaCha8Rng,
    mut rng_black: ChaCha8Rng,
) -> GameResult {
    let mut state = GameState::new(Arc::clone(graph), cfg);
    let mut trace = Vec::new();
    while !state.is_terminal() {
        let record = match state.to_move() {
            PlayerColor::Red => take_turn(&mut state, strat_red, &mut rng_red),
            PlayerColor::Black => take_turn(&mut state, strat_black, &mut rng_black),
        };
        trace.push(record);
    }
    let (red_nodes, black_nodes) = state.counts();
    GameResult {
        outcome: state.winner(),
        red_nodes,
        black_nodes,
        turns: state.turn_index(),
        trace,
    }
}
