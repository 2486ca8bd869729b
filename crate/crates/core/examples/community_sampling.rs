//! Detect communities by label propagation and sample a playable board from
//! the community closest to a target size.
//!
//! Run: `cargo run --example community_sampling`

use influence_duel::graph::{
    community_sizes, extract_cluster_sample, generate_ws, label_propagation,
};

fn main() {
    // A clustered small-world graph stands in for a real network.
    let graph = generate_ws(120, 6, 0.05, 3).unwrap();
    let labeling = label_propagation(&graph, 1);
    let sizes = community_sizes(&labeling.labels);
    println!(
        "label propagation found {} communities (converged: {}):",
        sizes.len(),
        labeling.converged
    );
    for (label, size) in sizes.iter().take(8) {
        println!("  label {label}: {size} nodes");
    }

    let sample = extract_cluster_sample(&graph, 40, 12, 1).unwrap();
    println!(
        "\nsampled board: {} nodes, {} edges (thresholds reset to degrees)",
        sample.node_count(),
        sample.edge_count()
    );
}
