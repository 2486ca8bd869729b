//! Generate one board from each synthetic family and print degree stats.
//!
//! Run: `cargo run --example generate_graphs`

use influence_duel::graph::{generate_ba, generate_er, generate_ws, Graph};

fn describe(label: &str, graph: &Graph) {
    let mut degrees: Vec<usize> = graph
        .node_ids()
        .map(|v| graph.degree(v).unwrap())
        .collect();
    degrees.sort_unstable();
    let n = graph.node_count();
    println!(
        "{label:<12} n={n:<4} m={:<5} deg(min/med/max) = {}/{}/{}",
        graph.edge_count(),
        degrees[0],
        degrees[n / 2],
        degrees[n - 1],
    );
}

fn main() {
    let seed = 42;
    describe("random", &generate_er(60, 0.3, seed).unwrap());
    describe("scale-free", &generate_ba(60, 3, seed).unwrap());
    describe("small-world", &generate_ws(60, 4, 0.3, seed).unwrap());
}
