//! Run a small seeded tournament and emit CSV results plus plot data.
//!
//! Run: `cargo run --release --example tournament`

use influence_duel::harness::{
    emit_results, run_match, DatasetKind, ExperimentSpec, OutputFormat, StrategySpec,
};
use influence_duel::strategies::StrategyParams;

fn main() {
    let mut spec = ExperimentSpec::new(
        DatasetKind::SmallWorld,
        StrategySpec::with_params(
            "eps-mcts",
            StrategyParams {
                iterations: 150,
                ..Default::default()
            },
        ),
        StrategySpec::new("max-threshold"),
    );
    spec.games = 10;
    spec.master_seed = 2024;

    let out = run_match(&spec).unwrap();
    println!(
        "{} vs {}: w={} l={} d={} win_rate={:.2}",
        out.black_strategy, out.red_strategy, out.stats.w, out.stats.l, out.stats.d,
        out.stats.win_rate
    );

    let path = std::env::temp_dir().join("influence_duel_tournament.csv");
    emit_results(&out, &path, OutputFormat::Csv).unwrap();
    println!(
        "records: {} | plot data: {}",
        path.display(),
        path.with_extension("plot.csv").display()
    );
}
