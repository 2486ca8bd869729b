//! Score candidate nodes with the four heuristics and their combination.
//!
//! Run: `cargo run --example heuristic_scores`

use std::sync::Arc;

use influence_duel::engine::{GameConfig, GameState, PlayerColor};
use influence_duel::graph::{Graph, NodeId, NodeState};
use influence_duel::heuristics::final_metric;

fn main() {
    // A 5-node star with a contested center: black leads 2-1 there, one
    // leaf is already red, another red leaf has been hardened by a firing.
    let edges: Vec<(NodeId, NodeId)> = (1..=4).map(|i| (NodeId(0), NodeId(i))).collect();
    let graph = Arc::new(Graph::new_gameboard(5, &edges).unwrap());
    let cfg = GameConfig::default_for(&graph);
    let mut state = GameState::new(Arc::clone(&graph), &cfg);
    state.set_node(NodeId(0), 4, 1, 2, NodeState::Inactive);
    state.set_node(NodeId(2), 2, 1, 0, NodeState::Red);
    state.set_node(NodeId(4), 4, 1, 0, NodeState::Red);

    let candidates = state.eligible_nodes(PlayerColor::Black);
    let scored = final_metric(&state, &candidates, PlayerColor::Black, &Default::default())
        .unwrap();
    println!("candidates for black, best first:");
    println!("node   ph     hwn    nlt    hva    final");
    for s in &scored {
        println!(
            "{:<5} {:<6.2} {:<6.2} {:<6.2} {:<6.2} {:.4}",
            s.node.0, s.ph, s.hwn, s.nlt, s.hva, s.final_score
        );
    }
}
