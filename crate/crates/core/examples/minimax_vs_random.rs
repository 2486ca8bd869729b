//! A short duel: alpha-beta minimax (black) against random play (red).
//!
//! Run: `cargo run --release --example minimax_vs_random`

use influence_duel::harness::{run_match, DatasetKind, ExperimentSpec, StrategySpec};
use influence_duel::strategies::StrategyParams;

fn main() {
    let mut spec = ExperimentSpec::new(
        DatasetKind::RandomGraph,
        StrategySpec::with_params(
            "minimax",
            StrategyParams {
                depth: 4,
                ..Default::default()
            },
        ),
        StrategySpec::new("random"),
    );
    spec.games = 10;
    spec.master_seed = 17;
    let out = run_match(&spec).unwrap();
    println!(
        "minimax (black) vs random (red) over {} games: w={} l={} d={} win_rate={:.2}",
        out.stats.games(),
        out.stats.w,
        out.stats.l,
        out.stats.d,
        out.stats.win_rate
    );
    for r in &out.records {
        println!(
            "  game {}: starter={} winner={} ({}-{} on n={})",
            r.run_id, r.starter, r.winner, r.black_nodes, r.red_nodes, r.graph_n
        );
    }
}
