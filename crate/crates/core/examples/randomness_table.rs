//! Measure outcome randomness: repeat seeded games on fixed boards and
//! report per-board outcome percentages.
//!
//! Run: `cargo run --release --example randomness_table`

use influence_duel::harness::{randomness_table, DatasetKind, StrategySpec};
use influence_duel::strategies::StrategyParams;

fn main() {
    let params = StrategyParams {
        iterations: 100,
        ..Default::default()
    };
    let table = randomness_table(
        &DatasetKind::SmallWorld,
        &StrategySpec::with_params("eps-mcts", params.clone()),
        &StrategySpec::with_params("mcts", params),
        3,
        6,
        None,
        12,
    )
    .unwrap();
    println!("graph  n    m     red%   black%  draw%");
    for row in &table.rows {
        println!(
            "{:<6} {:<4} {:<5} {:<6.1} {:<7.1} {:<5.1}",
            row.graph_index + 1,
            row.graph_n,
            row.graph_m,
            row.red_pct,
            row.black_pct,
            row.draw_pct
        );
    }
    let pooled = table.pooled().unwrap();
    println!("pooled black win_rate: {:.3}", pooled.win_rate);
}
