//! Two-player competitive influence game on undirected graphs.
//!
//! Red and black take turns donating tokens to nodes of a shared board. A
//! node whose tokens reach its threshold activates for the donating side,
//! converts the opponent's tokens, spreads tokens to its neighbors (possibly
//! cascading) and becomes harder to flip: its threshold grows by its degree.
//! The side holding more nodes when both players are out of moves wins.
//!
//! The crate provides:
//!
//! - [`graph`]: the gameboard, Erdős–Rényi / Barabási–Albert /
//!   Watts–Strogatz generators, SNAP-style edge-list IO and label-propagation
//!   community sampling;
//! - [`engine`]: game state, the threshold diffusion model with cascades,
//!   the turn loop and winner determination;
//! - [`heuristics`]: four node-scoring signals and their normalized
//!   combination;
//! - [`strategies`]: the strategy contract plus random, min/max-threshold
//!   and alpha-beta minimax opponents;
//! - [`mcts`]: general MCTS and the epsilon-greedy heuristic variant;
//! - [`harness`]: seeded tournaments, randomness tables, donation-policy
//!   experiments and CSV/JSON emission.
//!
//! Start with the runnable examples (`cargo run --example play_single_game`)
//! or the `influence-duel` binary.

pub mod cli;
pub mod engine;
pub mod graph;
pub mod harness;
pub mod heuristics;
pub mod mcts;
pub mod seed;
pub mod strategies;

pub use engine::{GameConfig, GameResult, GameState, Move, Outcome, PlayerColor, TokenPolicy};
pub use graph::{Graph, NodeId, NodeState};
