//! Play one full game (epsilon-greedy MCTS vs min-threshold) on a
//! small-world board and print the trace.
//!
//! Run: `cargo run --release --example play_single_game`

use std::sync::Arc;

use influence_duel::engine::{play_game, write_trace_text, GameConfig};
use influence_duel::graph::generate_ws;
use influence_duel::strategies::{from_name, StrategyParams};

fn main() {
    let graph = Arc::new(generate_ws(30, 4, 0.3, 11).unwrap());
    let cfg = GameConfig::default_for(&graph);
    let params = StrategyParams {
        iterations: 200,
        ..Default::default()
    };
    let black = from_name("eps-mcts", &params).unwrap();
    let red = from_name("min-threshold", &params).unwrap();

    let result = play_game(&graph, &cfg, red.as_ref(), black.as_ref(), 7);
    let mut out = std::io::stdout();
    write_trace_text(&result, &mut out).unwrap();
}
