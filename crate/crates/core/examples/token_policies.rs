//! Compare donation policies: firing the full capacity versus dripping one
//! token per turn, with both sides selecting nodes by general MCTS.
//!
//! Run: `cargo run --release --example token_policies`

use influence_duel::harness::{token_policy_experiment, DatasetKind, Formation};

fn main() {
    for (label, dataset) in [
        ("random-graph", DatasetKind::RandomGraph),
        ("scale-free", DatasetKind::ScaleFree),
        ("small-world", DatasetKind::SmallWorld),
    ] {
        let out =
            token_policy_experiment(Formation::FireVsOne, dataset, 6, 150, None, 8).unwrap();
        println!(
            "fire-vs-one on {label:<13} fire(black) w={} l={} d={} win_rate={:.2}",
            out.stats.w, out.stats.l, out.stats.d, out.stats.win_rate
        );
    }
}
