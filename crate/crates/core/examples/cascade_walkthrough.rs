//! Step through the diffusion mechanics by hand: a donation that fires a
//! node, converts enemy tokens, spreads, and cascades down a path.
//!
//! Run: `cargo run --example cascade_walkthrough`

use std::sync::Arc;

use influence_duel::engine::{GameConfig, GameState, PlayerColor};
use influence_duel::graph::{Graph, NodeId};

fn dump(state: &GameState) {
    for v in state.graph().node_ids() {
        let a = state.node(v);
        println!(
            "  node {v}: theta={} red={} black={} state={:?}",
            a.theta, a.red_tokens, a.black_tokens, a.state
        );
    }
}

fn main() {
    // A 3-node path: thresholds (1, 2, 1).
    let graph = Arc::new(
        Graph::new_gameboard(3, &[(NodeId(0), NodeId(1)), (NodeId(1), NodeId(2))]).unwrap(),
    );
    let mut cfg = GameConfig::default_for(&graph);
    cfg.budget_black = 2;
    let mut state = GameState::new(Arc::clone(&graph), &cfg);

    println!("before any donation:");
    dump(&state);

    // Black fires the middle node: it activates, sends one token to each
    // endpoint, and both endpoints cross their unit thresholds in turn.
    let events = state
        .apply_donation(PlayerColor::Black, NodeId(1), 2)
        .unwrap();
    println!("\nblack donates 2 tokens to node 1; activations in order:");
    for e in &events {
        println!("  node {} fires {}", e.node, e.color);
    }

    println!("\nafter the cascade (note the doubled thresholds):");
    dump(&state);
    let (red, black) = state.counts();
    println!("\ncounts: red={red} black={black} -> {}", state.winner());
}
