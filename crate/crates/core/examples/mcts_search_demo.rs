//! Run one MCTS search and inspect the root statistics.
//!
//! Run: `cargo run --release --example mcts_search_demo`

use std::collections::HashSet;
use std::sync::Arc;

use influence_duel::engine::{GameConfig, GameState};
use influence_duel::graph::generate_ws;
use influence_duel::mcts::{build_search_tree, MctsConfig, RolloutPolicy};
use influence_duel::seed::rng_from;

fn main() {
    let graph = Arc::new(generate_ws(24, 4, 0.3, 5).unwrap());
    let cfg = GameConfig::default_for(&graph);
    let state = GameState::new(Arc::clone(&graph), &cfg);

    let search_cfg = MctsConfig {
        iterations: 400,
        rollout: RolloutPolicy::EpsGreedy,
        ..Default::default()
    };
    let mut rng = rng_from(99);
    let tree = build_search_tree(&state, &search_cfg, &HashSet::new(), &mut rng);

    let mut children = tree.root_children();
    children.sort_by(|a, b| b.1.cmp(&a.1));
    println!(
        "root: {} visits over {} children; top ten by visits:",
        tree.root().visits,
        children.len()
    );
    println!("move             visits  mean");
    for (mv, visits, mean) in children.into_iter().take(10) {
        println!("{:<16} {:<7} {:.3}", format!("{mv:?}"), visits, mean);
    }
    println!("\nchosen move: {:?}", tree.best_move());
}
