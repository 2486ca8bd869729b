//! Label propagation community detection and cluster sampling.

use rand::seq::{IndexedRandom, SliceRandom};

use crate::seed::{mix, rng_from, stream};

use super::{Graph, GraphError, NodeId};

/// Rounds after which label propagation gives up and returns the current
/// labels with `converged == false`.
pub const LABEL_PROPAGATION_ROUND_CAP: usize = 100;

/// Per-node community labels.
#[derive(Debug, Clone)]
pub struct Labeling {
    pub labels: Vec<u64>,
    pub converged: bool,
}

/// Asynchronous label propagation.
///
/// Nodes start with their own id as label and are updated in a fresh seeded
/// random order each round; a node adopts the most frequent label among its
/// neighbors, ties broken by a seeded random choice. Stops when a full round
/// changes nothing or after [`LABEL_PROPAGATION_ROUND_CAP`] rounds.
pub fn label_propagation(graph: &Graph, seed: u64) -> Labeling {
    let n = graph.node_count();
    let mut labels: Vec<u64> = (0..n as u64).collect();
    if n == 0 {
        return Labeling {
            labels,
            converged: true,
        };
    }
    let mut rng = rng_from(seed);
    let mut order: Vec<usize> = (0..n).collect();
    let mut freq: std::collections::HashMap<u64, usize> = std::collections::HashMap::new();
    let mut best: Vec<u64> = Vec::new();
    for _round in 0..LABEL_PROPAGATION_ROUND_CAP {
        order.shuffle(&mut rng);
        let mut changed = false;
        for &u in &order {
            let nbrs = graph.neighbors(NodeId(u as u32));
            if nbrs.is_empty() {
                continue;
            }
            freq.clear();
            for &w in nbrs {
                *freq.entry(labels[w.index()]).or_insert(0) += 1;
            }
            let top = *freq.values().max().unwrap();
            best.clear();
            best.extend(freq.iter().filter(|(_, &c)| c == top).map(|(&l, _)| l));
            // Sort before the random pick so the draw is independent of hash
            // iteration order.
            best.sort_unstable();
            let pick = *best.choose(&mut rng).unwrap();
            if labels[u] != pick {
                labels[u] = pick;
                changed = true;
            }
        }
        if !changed {
            return Labeling {
                labels,
                converged: true,
            };
        }
    }
    Labeling {
        labels,
        converged: false,
    }
}

/// Community sizes, sorted by (size descending, label ascending).
pub fn community_sizes(labels: &[u64]) -> Vec<(u64, usize)> {
    let mut counts: std::collections::HashMap<u64, usize> = std::collections::HashMap::new();
    for &l in labels {
        *counts.entry(l).or_insert(0) += 1;
    }
    let mut sizes: Vec<(u64, usize)> = counts.into_iter().collect();
    sizes.sort_unstable_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    sizes
}

/// Choose the community whose size is closest to `target` among those of size
/// at least `min_size`; ties go to the larger community.
pub fn pick_community(sizes: &[(u64, usize)], target: usize, min_size: usize) -> Option<u64> {
    sizes
        .iter()
        .filter(|(_, s)| *s >= min_size)
        .min_by(|(la, sa), (lb, sb)| {
            let da = sa.abs_diff(target);
            let db = sb.abs_diff(target);
            da.cmp(&db).then(sb.cmp(sa)).then(la.cmp(lb))
        })
        .map(|(l, _)| *l)
}

/// Sample a connected `sample`-node subgraph from the community closest in
/// size to `target_cluster`.
///
/// The community is found by label propagation, then a seeded breadth-first
/// walk from a random member collects `sample` nodes; the induced subgraph is
/// re-thresholded like a fresh board. Should the walk exhaust a disconnected
/// community fragment, it restarts from the lowest unvisited member.
pub fn extract_cluster_sample(
    graph: &Graph,
    target_cluster: usize,
    sample: usize,
    seed: u64,
) -> Result<Graph, GraphError> {
    if sample == 0 {
        return Err(GraphError::InvalidParam("sample must be >= 1".into()));
    }
    let labeling = label_propagation(graph, mix(seed, stream::LABELS));
    let sizes = community_sizes(&labeling.labels);
    let label = pick_community(&sizes, target_cluster, sample)
        .ok_or(GraphError::NoCommunityLargeEnough(sample))?;
    let members: Vec<NodeId> = graph
        .node_ids()
        .filter(|v| labeling.labels[v.index()] == label)
        .collect();

    let mut rng = rng_from(mix(seed, stream::GRAPH));
    let start = *members.choose(&mut rng).expect("community nonempty");
    let mut visited = vec![false; graph.node_count()];
    let mut picked: Vec<NodeId> = Vec::with_capacity(sample);
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(start);
    visited[start.index()] = true;
    while picked.len() < sample {
        let u = match queue.pop_front() {
            Some(u) => u,
            None => {
                // Disconnected community: continue from the lowest unvisited member.
                let next = members
                    .iter()
                    .find(|v| !visited[v.index()])
                    .copied()
                    .expect("community has >= sample members");
                visited[next.index()] = true;
                next
            }
        };
        picked.push(u);
        for &w in graph.neighbors(u) {
            if labeling.labels[w.index()] == label && !visited[w.index()] {
                visited[w.index()] = true;
                queue.push_back(w);
            }
        }
    }
    graph.induced_subgraph(&picked)
}
