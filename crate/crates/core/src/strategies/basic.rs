//! The baseline opponents: random, minimum threshold and maximum threshold.

use std::collections::HashSet;

use rand::seq::IndexedRandom;
use rand_chacha::ChaCha8Rng;

use crate::engine::{GameState, PlayerColor};
use crate::graph::NodeId;

use super::{Choice, Strategy};

fn open_candidates(
    state: &GameState,
    player: PlayerColor,
    excluded: &HashSet<NodeId>,
) -> Vec<NodeId> {
    state
        .eligible_nodes(player)
        .into_iter()
        .filter(|v| !excluded.contains(v))
        .collect()
}

/// Uniform choice over the open eligible nodes.
pub struct RandomStrategy;

impl Strategy for RandomStrategy {
    fn name(&self) -> &str {
        "random"
    }

    fn choose(
        &self,
        state: &GameState,
        player: PlayerColor,
        excluded: &HashSet<NodeId>,
        rng: &mut ChaCha8Rng,
    ) -> Option<Choice> {
        open_candidates(state, player, excluded)
            .choose(rng)
            .map(|&v| Choice::node(v))
    }
}

/// The open eligible node with the smallest threshold; ties to the lower id.
pub struct MinThresholdStrategy;

impl Strategy for MinThresholdStrategy {
    fn name(&self) -> &str {
        "min-threshold"
    }

    fn choose(
        &self,
        state: &GameState,
        player: PlayerColor,
        excluded: &HashSet<NodeId>,
        _rng: &mut ChaCha8Rng,
    ) -> Option<Choice> {
        open_candidates(state, player, excluded)
            .into_iter()
            .min_by_key(|&v| (state.node(v).theta, v))
            .map(Choice::node)
    }
}

/// The open eligible node with the largest threshold; ties to the lower id.
pub struct MaxThresholdStrategy;

impl Strategy for MaxThresholdStrategy {
    fn name(&self) -> &str {
        "max-threshold"
    }

    fn choose(
        &self,
        state: &GameState,
        player: PlayerColor,
        excluded: &HashSet<NodeId>,
        _rng: &mut ChaCha8Rng,
    ) -> Option<Choice> {
        open_candidates(state, player, excluded)
            .into_iter()
            .max_by_key(|&v| (state.node(v).theta, std::cmp::Reverse(v)))
            .map(Choice::node)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::GameConfig;
    use crate::graph::{Graph, NodeState};
    use crate::seed::rng_from;
    use std::sync::Arc;

    fn state_on(graph: Graph) -> GameState {
        let graph = Arc::new(graph);
        let cfg = GameConfig::default_for(&graph);
        GameState::new(graph, &cfg)
    }

    fn path(n: u32) -> Graph {
        let edges: Vec<(NodeId, NodeId)> =
            (0..n - 1).map(|i| (NodeId(i), NodeId(i + 1))).collect();
        Graph::new_gameboard(n as usize, &edges).unwrap()
    }

    #[test]
    fn random_is_nearly_uniform() {
        // Path of 3: all nodes eligible. 30000 draws, each within 1/3 +- 0.01.
        let s = state_on(path(3));
        let mut rng = rng_from(99);
        let mut counts = [0u32; 3];
        let draws = 30_000;
        for _ in 0..draws {
            let c = RandomStrategy
                .choose(&s, PlayerColor::Black, &HashSet::new(), &mut rng)
                .unwrap();
            counts[c.node.index()] += 1;
        }
        for c in counts {
            let freq = c as f64 / draws as f64;
            assert!((freq - 1.0 / 3.0).abs() <= 0.01, "freq {freq}");
        }
    }

    #[test]
    fn random_single_and_empty() {
        let s = state_on(path(2));
        let mut rng = rng_from(1);
        let mut excluded = HashSet::new();
        excluded.insert(NodeId(1));
        let c = RandomStrategy.choose(&s, PlayerColor::Black, &excluded, &mut rng);
        assert_eq!(c.unwrap().node, NodeId(0));
        excluded.insert(NodeId(0));
        assert!(RandomStrategy
            .choose(&s, PlayerColor::Black, &excluded, &mut rng)
            .is_none());
    }

    #[test]
    fn min_threshold_picks_smallest() {
        // Star with 3 leaves: thetas (3, 1, 1, 1).
        let g = Graph::new_gameboard(
            4,
            &[
                (NodeId(0), NodeId(1)),
                (NodeId(0), NodeId(2)),
                (NodeId(0), NodeId(3)),
            ],
        )
        .unwrap();
        let mut s = state_on(g);
        // Make thresholds {3, 5, 2} on nodes {0, 1, 2}; exclude node 3.
        s.set_node(NodeId(1), 5, 0, 0, NodeState::Inactive);
        s.set_node(NodeId(2), 2, 0, 0, NodeState::Inactive);
        let mut excluded = HashSet::new();
        excluded.insert(NodeId(3));
        let mut rng = rng_from(0);
        let c = MinThresholdStrategy
            .choose(&s, PlayerColor::Black, &excluded, &mut rng)
            .unwrap();
        assert_eq!(c.node, NodeId(2));
        let c = MaxThresholdStrategy
            .choose(&s, PlayerColor::Black, &excluded, &mut rng)
            .unwrap();
        assert_eq!(c.node, NodeId(1));
    }

    #[test]
    fn threshold_ties_break_to_lower_id() {
        let s = state_on(path(8));
        let mut rng = rng_from(0);
        // Interior nodes 1..=6 all have theta 2; endpoints theta 1.
        let mut excluded = HashSet::new();
        excluded.insert(NodeId(0));
        excluded.insert(NodeId(7));
        let c = MinThresholdStrategy
            .choose(&s, PlayerColor::Red, &excluded, &mut rng)
            .unwrap();
        assert_eq!(c.node, NodeId(1));
        let c = MaxThresholdStrategy
            .choose(&s, PlayerColor::Red, &excluded, &mut rng)
            .unwrap();
        assert_eq!(c.node, NodeId(1));
    }

    #[test]
    fn all_excluded_returns_none() {
        let s = state_on(path(3));
        let mut rng = rng_from(0);
        let excluded: HashSet<NodeId> = (0..3).map(NodeId).collect();
        assert!(MinThresholdStrategy
            .choose(&s, PlayerColor::Black, &excluded, &mut rng)
            .is_none());
    }
}
