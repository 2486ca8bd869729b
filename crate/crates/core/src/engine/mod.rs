//! Game state and the loyalty diffusion model.
//!
//! A donation pushes tokens onto a node; when a node's tokens reach its
//! threshold it activates for the donating color, converts the opponent's
//! tokens, spreads its tokens to neighbors and raises its threshold by its
//! degree. Spread tokens can push neighbors over their thresholds, producing
//! a FIFO cascade.

mod game;
mod trace;

pub use game::{play_game, play_game_with_rngs, take_turn};
pub use trace::{trace_to_json, write_trace_text};

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, NodeAttrs, NodeId, NodeState};

/// One of the two competing parties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlayerColor {
    Red,
    Black,
}

impl PlayerColor {
    pub fn opponent(self) -> PlayerColor {
        match self {
            PlayerColor::Red => PlayerColor::Black,
            PlayerColor::Black => PlayerColor::Red,
        }
    }

    pub(crate) fn index(self) -> usize {
        match self {
            PlayerColor::Red => 0,
            PlayerColor::Black => 1,
        }
    }

    pub fn as_state(self) -> NodeState {
        match self {
            PlayerColor::Red => NodeState::Red,
            PlayerColor::Black => NodeState::Black,
        }
    }
}

impl std::fmt::Display for PlayerColor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PlayerColor::Red => "red",
            PlayerColor::Black => "black",
        })
    }
}

/// How many tokens a player's move places on the selected node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TokenPolicy {
    /// Donate exactly the node's capacity, firing it immediately.
    FireCapacity,
    /// Donate a single token per turn.
    OneToken,
    /// The strategy chooses an amount in `[1, capacity]`. Only meaningful for
    /// strategies that emit amounts (the search strategies).
    ChosenAmount,
}

/// Static per-game configuration.
#[derive(Debug, Clone)]
pub struct GameConfig {
    pub budget_red: u64,
    pub budget_black: u64,
    pub policy_red: TokenPolicy,
    pub policy_black: TokenPolicy,
    pub starter: PlayerColor,
    /// Hard turn limit; unreachable in normal play, present as a backstop.
    pub safety_turn_cap: u64,
    /// On each activation the threshold grows by `loyalty_growth * degree`.
    pub loyalty_growth: u64,
}

impl GameConfig {
    /// Defaults for a given board: budget of one token per node and player,
    /// fire-capacity policy on both sides, black starts, cap of 10 turns per
    /// node, unit loyalty growth.
    pub fn default_for(graph: &Graph) -> GameConfig {
        let n = graph.node_count() as u64;
        GameConfig {
            budget_red: n,
            budget_black: n,
            policy_red: TokenPolicy::FireCapacity,
            policy_black: TokenPolicy::FireCapacity,
            starter: PlayerColor::Black,
            safety_turn_cap: 10 * n.max(1),
            loyalty_growth: 1,
        }
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        if self.safety_turn_cap < 1 {
            return Err(EngineError::InvalidConfig(
                "safety_turn_cap must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// A player's move: pass, or donate `amount` tokens to `node`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Move {
    Pass,
    Donate { node: NodeId, amount: u64 },
}

/// A node activating for a color during a cascade.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Activation {
    pub node: NodeId,
    pub color: PlayerColor,
}

/// Game outcome by strict node-count majority.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    #[serde(rename = "red")]
    RedWin,
    #[serde(rename = "black")]
    BlackWin,
    #[serde(rename = "draw")]
    Draw,
}

impl Outcome {
    /// Result value for `player`: win 1, draw 0.5, loss 0.
    pub fn score_for(self, player: PlayerColor) -> f64 {
        match (self, player) {
            (Outcome::Draw, _) => 0.5,
            (Outcome::RedWin, PlayerColor::Red) | (Outcome::BlackWin, PlayerColor::Black) => 1.0,
            _ => 0.0,
        }
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::RedWin => "red",
            Outcome::BlackWin => "black",
            Outcome::Draw => "draw",
        })
    }
}

/// One completed turn: the move made and every activation it triggered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TurnRecord {
    pub turn_index: u64,
    pub player: PlayerColor,
    #[serde(rename = "move")]
    pub mv: Move,
    pub activations: Vec<Activation>,
}

/// Final result of a played game.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GameResult {
    pub outcome: Outcome,
    pub red_nodes: usize,
    pub black_nodes: usize,
    pub turns: u64,
    pub trace: Vec<TurnRecord>,
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("node {0} is not eligible for {1}")]
    IneligibleNode(NodeId, PlayerColor),
    #[error("amount {amount} outside [1, {capacity}] for node {node}")]
    AmountOutOfRange {
        node: NodeId,
        amount: u64,
        capacity: u64,
    },
    #[error("amount {amount} exceeds remaining budget {budget}")]
    InsufficientBudget { amount: u64, budget: u64 },
    #[error("activation of node {0} below threshold")]
    BelowThreshold(NodeId),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
}

/// The full mutable game position: a per-game copy of the board attributes
/// plus budgets and turn bookkeeping. Owned by exactly one game at a time;
/// clones are cheap enough for tree search.
#[derive(Debug, Clone)]
pub struct GameState {
    graph: Arc<Graph>,
    nodes: Vec<NodeAttrs>,
    budgets: [u64; 2],
    initial_budgets: [u64; 2],
    policies: [TokenPolicy; 2],
    to_move: PlayerColor,
    consecutive_passes: u8,
    turn_index: u64,
    safety_turn_cap: u64,
    loyalty_growth: u64,
}

impl GameState {
    pub fn new(graph: Arc<Graph>, cfg: &GameConfig) -> GameState {
        let nodes = graph.initial_attrs().to_vec();
        GameState {
            graph,
            nodes,
            budgets: [cfg.budget_red, cfg.budget_black],
            initial_budgets: [cfg.budget_red, cfg.budget_black],
            policies: [cfg.policy_red, cfg.policy_black],
            to_move: cfg.starter,
            consecutive_passes: 0,
            turn_index: 0,
            safety_turn_cap: cfg.safety_turn_cap,
            loyalty_growth: cfg.loyalty_growth,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn node(&self, v: NodeId) -> &NodeAttrs {
        &self.nodes[v.index()]
    }

    pub fn budget(&self, player: PlayerColor) -> u64 {
        self.budgets[player.index()]
    }

    pub fn initial_budget(&self, player: PlayerColor) -> u64 {
        self.initial_budgets[player.index()]
    }

    pub fn policy(&self, player: PlayerColor) -> TokenPolicy {
        self.policies[player.index()]
    }

    pub fn to_move(&self) -> PlayerColor {
        self.to_move
    }

    pub fn turn_index(&self) -> u64 {
        self.turn_index
    }

    pub fn consecutive_passes(&self) -> u8 {
        self.consecutive_passes
    }

    fn tokens_of(&self, v: NodeId, color: PlayerColor) -> u64 {
        match color {
            PlayerColor::Red => self.nodes[v.index()].red_tokens,
            PlayerColor::Black => self.nodes[v.index()].black_tokens,
        }
    }

    fn tokens_of_mut(&mut self, v: NodeId, color: PlayerColor) -> &mut u64 {
        match color {
            PlayerColor::Red => &mut self.nodes[v.index()].red_tokens,
            PlayerColor::Black => &mut self.nodes[v.index()].black_tokens,
        }
    }

    /// Tokens still needed to fire `v` right now.
    pub fn capacity(&self, v: NodeId) -> Result<u64, EngineError> {
        if !self.graph.contains(v) {
            return Err(EngineError::UnknownNode(v));
        }
        Ok(self.capacity_of(v))
    }

    pub(crate) fn capacity_of(&self, v: NodeId) -> u64 {
        let a = &self.nodes[v.index()];
        a.theta.saturating_sub(a.total_tokens())
    }

    /// A node is eligible for `player` when it is selectable (degree > 0) and
    /// either inactive or held by the opponent.
    pub fn is_eligible(&self, v: NodeId, player: PlayerColor) -> bool {
        if !self.graph.contains(v) || !self.graph.is_selectable(v) {
            return false;
        }
        let state = self.nodes[v.index()].state;
        state == NodeState::Inactive || state == player.opponent().as_state()
    }

    /// All nodes `player` may currently select, ascending by id.
    pub fn eligible_nodes(&self, player: PlayerColor) -> Vec<NodeId> {
        self.graph
            .node_ids()
            .filter(|&v| self.is_eligible(v, player))
            .collect()
    }

    /// Donate `amount` tokens of `player`'s color to `v`, cascading any
    /// activations to quiescence. Returns the activations in processed order.
    /// A precondition violation rejects the move and leaves the state intact.
    pub fn apply_donation(
        &mut self,
        player: PlayerColor,
        v: NodeId,
        amount: u64,
    ) -> Result<Vec<Activation>, EngineError> {
        if !self.graph.contains(v) {
            return Err(EngineError::UnknownNode(v));
        }
        if !self.is_eligible(v, player) {
            return Err(EngineError::IneligibleNode(v, player));
        }
        let capacity = self.capacity_of(v);
        if amount < 1 || amount > capacity {
            return Err(EngineError::AmountOutOfRange {
                node: v,
                amount,
                capacity,
            });
        }
        let budget = self.budgets[player.index()];
        if amount > budget {
            return Err(EngineError::InsufficientBudget { amount, budget });
        }
        self.budgets[player.index()] -= amount;
        *self.tokens_of_mut(v, player) += amount;
        if self.nodes[v.index()].total_tokens() >= self.nodes[v.index()].theta {
            let mut queue = std::collections::VecDeque::new();
            queue.push_back((v, player));
            Ok(self.process_cascade(queue))
        } else {
            Ok(Vec::new())
        }
    }

    /// Fire `v` for `color`: adopt the color, convert the opponent's tokens,
    /// spread tokens to neighbors and raise the threshold by
    /// `loyalty_growth * degree`. Requires the threshold condition.
    pub fn activate(&mut self, v: NodeId, color: PlayerColor) -> Result<(), EngineError> {
        if !self.graph.contains(v) {
            return Err(EngineError::UnknownNode(v));
        }
        let degree = self.graph.degree_of(v) as u64;
        let theta = self.nodes[v.index()].theta;
        if self.nodes[v.index()].total_tokens() < theta {
            return Err(EngineError::BelowThreshold(v));
        }
        {
            let a = &mut self.nodes[v.index()];
            a.state = color.as_state();
            // Losing tokens switch sides rather than vanish.
            let total = a.total_tokens();
            match color {
                PlayerColor::Red => {
                    a.red_tokens = total;
                    a.black_tokens = 0;
                }
                PlayerColor::Black => {
                    a.black_tokens = total;
                    a.red_tokens = 0;
                }
            }
        }
        let order = self.spread_order(v);
        if theta == degree {
            // First firing: one token to every neighbor.
            for &w in &order {
                *self.tokens_of_mut(v, color) -= 1;
                *self.tokens_of_mut(w, color) += 1;
            }
        } else {
            // Re-firing: drain all tokens round-robin, strongest-threshold
            // neighbor served first in each round.
            'outer: loop {
                for &w in &order {
                    if self.tokens_of(v, color) == 0 {
                        break 'outer;
                    }
                    *self.tokens_of_mut(v, color) -= 1;
                    *self.tokens_of_mut(w, color) += 1;
                }
                if self.tokens_of(v, color) == 0 {
                    break;
                }
            }
        }
        self.nodes[v.index()].theta += self.loyalty_growth * degree;
        Ok(())
    }

    // Neighbors sorted by threshold descending, ties by lower id.
    fn spread_order(&self, v: NodeId) -> Vec<NodeId> {
        let mut order: Vec<NodeId> = self.graph.neighbors(v).to_vec();
        order.sort_by(|a, b| {
            self.nodes[b.index()]
                .theta
                .cmp(&self.nodes[a.index()].theta)
                .then(a.0.cmp(&b.0))
        });
        order
    }

    /// Run queued activations to quiescence, FIFO, re-checking the threshold
    /// condition at dequeue. Returns the activations in processed order.
    pub fn process_cascade(
        &mut self,
        mut queue: std::collections::VecDeque<(NodeId, PlayerColor)>,
    ) -> Vec<Activation> {
        let mut events = Vec::new();
        while let Some((v, color)) = queue.pop_front() {
            let a = &self.nodes[v.index()];
            if a.total_tokens() < a.theta {
                continue; // Stale entry: tokens already spread.
            }
            self.activate(v, color).expect("threshold checked");
            events.push(Activation { node: v, color });
            // The spread may have pushed neighbors over their thresholds; the
            // node itself re-fires if its leftover re-crossed the new bar.
            let mut check = self.spread_order(v);
            check.push(v);
            for w in check {
                let aw = &self.nodes[w.index()];
                if aw.total_tokens() >= aw.theta {
                    queue.push_back((w, color));
                }
            }
        }
        events
    }

    /// Donation moves available to `player` under its token policy, sorted by
    /// (node, amount). Excluded nodes are skipped. An empty result forces a
    /// pass.
    pub fn legal_moves(
        &self,
        player: PlayerColor,
        excluded: &std::collections::HashSet<NodeId>,
    ) -> Vec<Move> {
        let budget = self.budgets[player.index()];
        if budget == 0 {
            return Vec::new();
        }
        let mut moves = Vec::new();
        for v in self.eligible_nodes(player) {
            if excluded.contains(&v) {
                continue;
            }
            let cap = self.capacity_of(v);
            match self.policy(player) {
                TokenPolicy::FireCapacity => {
                    if cap <= budget {
                        moves.push(Move::Donate {
                            node: v,
                            amount: cap,
                        });
                    }
                }
                TokenPolicy::OneToken => moves.push(Move::Donate { node: v, amount: 1 }),
                TokenPolicy::ChosenAmount => {
                    for amount in 1..=cap.min(budget) {
                        moves.push(Move::Donate { node: v, amount });
                    }
                }
            }
        }
        moves
    }

    /// Apply a move for the player to move, updating turn bookkeeping.
    pub fn apply_move(&mut self, mv: Move) -> Result<Vec<Activation>, EngineError> {
        let events = match mv {
            Move::Pass => {
                self.consecutive_passes += 1;
                Vec::new()
            }
            Move::Donate { node, amount } => {
                let events = self.apply_donation(self.to_move, node, amount)?;
                self.consecutive_passes = 0;
                events
            }
        };
        self.to_move = self.to_move.opponent();
        self.turn_index += 1;
        Ok(events)
    }

    /// The game ends on two consecutive passes, exhausted budgets on both
    /// sides, or the safety turn cap.
    pub fn is_terminal(&self) -> bool {
        self.consecutive_passes >= 2
            || (self.budgets[0] == 0 && self.budgets[1] == 0)
            || self.turn_index >= self.safety_turn_cap
    }

    /// Node counts `(red, black)` over selectable nodes.
    pub fn counts(&self) -> (usize, usize) {
        let mut red = 0;
        let mut black = 0;
        for v in self.graph.node_ids() {
            if !self.graph.is_selectable(v) {
                continue;
            }
            match self.nodes[v.index()].state {
                NodeState::Red => red += 1,
                NodeState::Black => black += 1,
                NodeState::Inactive => {}
            }
        }
        (red, black)
    }

    /// Outcome by strict node-count majority; equality is a draw.
    pub fn winner(&self) -> Outcome {
        let (red, black) = self.counts();
        match red.cmp(&black) {
            std::cmp::Ordering::Greater => Outcome::RedWin,
            std::cmp::Ordering::Less => Outcome::BlackWin,
            std::cmp::Ordering::Equal => Outcome::Draw,
        }
    }

    /// Total tokens sitting on the board.
    pub fn tokens_on_board(&self) -> u64 {
        self.nodes.iter().map(|a| a.total_tokens()).sum()
    }

    /// Overwrite one node's attributes. Scenario/test setup only: no
    /// invariant checks are performed.
    pub fn set_node(&mut self, v: NodeId, theta: u64, red: u64, black: u64, state: NodeState) {
        self.nodes[v.index()] = NodeAttrs {
            theta,
            red_tokens: red,
            black_tokens: black,
            state,
        };
    }

    /// Overwrite a budget (scenario/test setup; also resets the recorded
    /// initial budget).
    pub fn set_budget(&mut self, player: PlayerColor, amount: u64) {
        self.budgets[player.index()] = amount;
        self.initial_budgets[player.index()] = amount;
    }

    /// Set the player to move (scenario/test setup).
    pub fn set_to_move(&mut self, player: PlayerColor) {
        self.to_move = player;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NodeState;

    fn board(n: usize, edges: &[(u32, u32)]) -> Arc<Graph> {
        let edges: Vec<(NodeId, NodeId)> =
            edges.iter().map(|&(a, b)| (NodeId(a), NodeId(b))).collect();
        Arc::new(Graph::new_gameboard(n, &edges).unwrap())
    }

    fn state_with_budgets(graph: &Arc<Graph>, red: u64, black: u64) -> GameState {
        let mut cfg = GameConfig::default_for(graph);
        cfg.budget_red = red;
        cfg.budget_black = black;
        GameState::new(Arc::clone(graph), &cfg)
    }

    fn path3() -> Arc<Graph> {
        board(3, &[(0, 1), (1, 2)])
    }

    #[test]
    fn capacity_arithmetic() {
        let g = board(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        let mut s = state_with_budgets(&g, 10, 10);
        s.set_node(NodeId(0), 5, 2, 1, NodeState::Inactive);
        assert_eq!(s.capacity(NodeId(0)).unwrap(), 2);
        // Fresh degree-4 node.
        let g = board(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let s = state_with_budgets(&g, 10, 10);
        assert_eq!(s.capacity(NodeId(0)).unwrap(), 4);
        assert!(matches!(
            s.capacity(NodeId(9)),
            Err(EngineError::UnknownNode(_))
        ));
    }

    #[test]
    fn capacity_after_first_firing_doubles() {
        // Degree-3 node fired: tokens spread to 0, theta raised to 6. On K4
        // the neighbors stay below their own thresholds, so nothing cascades.
        let g = board(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let mut s = state_with_budgets(&g, 10, 10);
        let events = s.apply_donation(PlayerColor::Black, NodeId(0), 3).unwrap();
        assert_eq!(events.len(), 1);
        assert_eq!(s.node(NodeId(0)).theta, 6);
        assert_eq!(s.node(NodeId(0)).total_tokens(), 0);
        assert_eq!(s.capacity(NodeId(0)).unwrap(), 6);
    }

    #[test]
    fn eligibility_rules() {
        let g = board(4, &[(0, 1), (1, 2)]); // node 3 isolated
        let mut s = state_with_budgets(&g, 5, 5);
        // All inactive: every non-isolated node, for either player.
        assert_eq!(
            s.eligible_nodes(PlayerColor::Red),
            vec![NodeId(0), NodeId(1), NodeId(2)]
        );
        assert_eq!(
            s.eligible_nodes(PlayerColor::Black),
            vec![NodeId(0), NodeId(1), NodeId(2)]
        );
        // Mixed states: red may pick the black node and the inactive one.
        s.set_node(NodeId(0), 2, 1, 0, NodeState::Red);
        s.set_node(NodeId(1), 4, 0, 1, NodeState::Black);
        assert_eq!(
            s.eligible_nodes(PlayerColor::Red),
            vec![NodeId(1), NodeId(2)]
        );
        assert_eq!(
            s.eligible_nodes(PlayerColor::Black),
            vec![NodeId(0), NodeId(2)]
        );
        // Every node red: nothing left for red.
        for v in 0..3 {
            s.set_node(NodeId(v), 2, 1, 0, NodeState::Red);
        }
        assert!(s.eligible_nodes(PlayerColor::Red).is_empty());
    }

    #[test]
    fn donation_below_threshold_just_sits() {
        let g = board(4, &[(0, 1), (0, 2), (0, 3)]);
        let mut s = state_with_budgets(&g, 5, 5);
        let events = s.apply_donation(PlayerColor::Black, NodeId(0), 1).unwrap();
        assert!(events.is_empty());
        assert_eq!(s.node(NodeId(0)).black_tokens, 1);
        assert_eq!(s.node(NodeId(0)).state, NodeState::Inactive);
        assert_eq!(s.budget(PlayerColor::Black), 4);
    }

    #[test]
    fn donation_at_threshold_fires_and_spreads() {
        // Fresh degree-2 node, black donates 2: activates and each neighbor
        // receives one black token.
        let g = path3();
        let mut s = state_with_budgets(&g, 5, 5);
        let events = s.apply_donation(PlayerColor::Black, NodeId(1), 2).unwrap();
        assert!(!events.is_empty());
        assert_eq!(events[0].node, NodeId(1));
        assert_eq!(s.node(NodeId(1)).state, NodeState::Black);
    }

    #[test]
    fn donation_conversion_flips_tokens() {
        // theta=3 node holding two black tokens; red donates 1: fires red and
        // all three tokens spread as red (K4 keeps the neighbors quiet).
        let g = board(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let mut s = state_with_budgets(&g, 5, 5);
        s.set_node(NodeId(0), 3, 0, 2, NodeState::Inactive);
        let events = s.apply_donation(PlayerColor::Red, NodeId(0), 1).unwrap();
        assert_eq!(events.len(), 1);
        assert_eq!(events[0].node, NodeId(0));
        assert_eq!(events[0].color, PlayerColor::Red);
        assert_eq!(s.node(NodeId(0)).state, NodeState::Red);
        assert_eq!(s.node(NodeId(0)).total_tokens(), 0);
        for v in [1, 2, 3] {
            assert_eq!(s.node(NodeId(v)).red_tokens, 1);
            assert_eq!(s.node(NodeId(v)).black_tokens, 0);
        }
    }

    #[test]
    fn rejected_donations_leave_state_unchanged() {
        let g = path3();
        let mut s = state_with_budgets(&g, 1, 1);
        let before = s.clone();
        // Overshoot capacity.
        assert!(matches!(
            s.apply_donation(PlayerColor::Black, NodeId(1), 5),
            Err(EngineError::AmountOutOfRange { .. })
        ));
        // Exceed budget.
        assert!(matches!(
            s.apply_donation(PlayerColor::Black, NodeId(1), 2),
            Err(EngineError::InsufficientBudget { .. })
        ));
        assert_eq!(s.node(NodeId(1)), before.node(NodeId(1)));
        assert_eq!(s.budget(PlayerColor::Black), 1);
        // Own-colored node is ineligible.
        s.set_node(NodeId(0), 1, 0, 1, NodeState::Black);
        assert!(matches!(
            s.apply_donation(PlayerColor::Black, NodeId(0), 1),
            Err(EngineError::IneligibleNode(..))
        ));
    }

    #[test]
    fn first_activation_gives_one_token_per_neighbor() {
        let g = board(4, &[(0, 1), (0, 2), (0, 3)]);
        let mut s = state_with_budgets(&g, 5, 5);
        s.set_node(NodeId(0), 3, 3, 0, NodeState::Inactive);
        s.activate(NodeId(0), PlayerColor::Red).unwrap();
        for v in [1, 2, 3] {
            assert_eq!(s.node(NodeId(v)).red_tokens, 1);
        }
        assert_eq!(s.node(NodeId(0)).total_tokens(), 0);
        assert_eq!(s.node(NodeId(0)).theta, 6);
    }

    #[test]
    fn reactivation_round_robin_by_descending_threshold() {
        // Re-firing node with theta 6 and 6 tokens, neighbor thetas (5, 4, 2):
        // two full rounds, two tokens each.
        let g = board(4, &[(0, 1), (0, 2), (0, 3)]);
        let mut s = state_with_budgets(&g, 10, 10);
        s.set_node(NodeId(0), 6, 0, 6, NodeState::Black);
        s.set_node(NodeId(1), 5, 0, 0, NodeState::Inactive);
        s.set_node(NodeId(2), 4, 0, 0, NodeState::Inactive);
        s.set_node(NodeId(3), 2, 0, 0, NodeState::Inactive);
        s.activate(NodeId(0), PlayerColor::Black).unwrap();
        for v in [1, 2, 3] {
            assert_eq!(s.node(NodeId(v)).black_tokens, 2, "node {v}");
        }
        assert_eq!(s.node(NodeId(0)).total_tokens(), 0);
        assert_eq!(s.node(NodeId(0)).theta, 9);
    }

    #[test]
    fn activation_converts_before_spreading() {
        // Node holding (red, black) = (1, 2) activating red holds (3, 0)
        // before the spread, so every spread token is red.
        let g = board(4, &[(0, 1), (0, 2), (0, 3)]);
        let mut s = state_with_budgets(&g, 10, 10);
        s.set_node(NodeId(0), 3, 1, 2, NodeState::Inactive);
        s.activate(NodeId(0), PlayerColor::Red).unwrap();
        let spread: u64 = [1, 2, 3]
            .iter()
            .map(|&v| s.node(NodeId(v)).red_tokens)
            .sum();
        assert_eq!(spread, 3);
        assert_eq!(s.node(NodeId(0)).black_tokens, 0);
    }

    #[test]
    fn activate_below_threshold_is_an_error() {
        let g = path3();
        let mut s = state_with_budgets(&g, 5, 5);
        assert!(matches!(
            s.activate(NodeId(1), PlayerColor::Red),
            Err(EngineError::BelowThreshold(_))
        ));
    }

    #[test]
    fn path_cascade_hand_trace() {
        // Black fires the middle of a 3-node path. The endpoints each get a
        // token, cross their unit thresholds and fire back into the middle:
        // final count black 3, red 0; the middle ends with 2 tokens < theta 4.
        let g = path3();
        let mut s = state_with_budgets(&g, 0, 2);
        let events = s.apply_donation(PlayerColor::Black, NodeId(1), 2).unwrap();
        let fired: Vec<u32> = events.iter().map(|e| e.node.0).collect();
        assert_eq!(fired, vec![1, 0, 2]);
        assert!(events.iter().all(|e| e.color == PlayerColor::Black));
        let (red, black) = s.counts();
        assert_eq!((red, black), (0, 3));
        assert_eq!(s.node(NodeId(1)).black_tokens, 2);
        assert_eq!(s.node(NodeId(1)).theta, 4);
        assert_eq!(s.node(NodeId(0)).theta, 2);
        assert_eq!(s.node(NodeId(2)).theta, 2);
        // Quiescence: nobody sits at or above threshold.
        for v in s.graph().node_ids() {
            assert!(s.node(v).total_tokens() < s.node(v).theta);
        }
    }

    #[test]
    fn leaf_firing_does_not_cascade_into_big_center() {
        // Star center theta 4: firing one leaf sends a single token there.
        let g = board(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let mut s = state_with_budgets(&g, 0, 5);
        let events = s.apply_donation(PlayerColor::Black, NodeId(1), 1).unwrap();
        assert_eq!(events.len(), 1);
        assert_eq!(events[0].node, NodeId(1));
        assert_eq!(s.node(NodeId(0)).black_tokens, 1);
        assert_eq!(s.node(NodeId(0)).state, NodeState::Inactive);
    }

    #[test]
    fn stale_cascade_entries_are_skipped() {
        let g = board(2, &[(0, 1)]);
        let mut s = state_with_budgets(&g, 5, 5);
        s.set_node(NodeId(0), 1, 0, 1, NodeState::Inactive);
        s.set_node(NodeId(1), 5, 0, 0, NodeState::Inactive);
        let queue = std::collections::VecDeque::from([
            (NodeId(0), PlayerColor::Black),
            (NodeId(0), PlayerColor::Black),
        ]);
        let events = s.process_cascade(queue);
        // The second entry finds the tokens already spread and is skipped.
        assert_eq!(events.len(), 1);
    }

    #[test]
    fn winner_by_strict_majority() {
        let g = board(4, &[(0, 1), (1, 2), (2, 3)]);
        let mut s = state_with_budgets(&g, 5, 5);
        assert_eq!(s.winner(), Outcome::Draw); // 0-0
        s.set_node(NodeId(0), 2, 0, 1, NodeState::Black);
        s.set_node(NodeId(1), 4, 0, 1, NodeState::Black);
        s.set_node(NodeId(2), 4, 0, 1, NodeState::Black);
        assert_eq!(s.winner(), Outcome::BlackWin); // 3-0
        s.set_node(NodeId(2), 4, 1, 0, NodeState::Red);
        s.set_node(NodeId(3), 2, 1, 0, NodeState::Red);
        assert_eq!(s.winner(), Outcome::Draw); // 2-2
    }

    #[test]
    fn isolated_nodes_do_not_count() {
        let g = board(3, &[(0, 1)]); // node 2 isolated
        let mut s = state_with_budgets(&g, 5, 5);
        s.set_node(NodeId(2), 1, 1, 0, NodeState::Red);
        assert_eq!(s.counts(), (0, 0));
    }

    #[test]
    fn token_conservation_through_cascades() {
        let g = board(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let mut s = state_with_budgets(&g, 4, 4);
        let initial = s.initial_budget(PlayerColor::Red) + s.initial_budget(PlayerColor::Black);
        s.apply_donation(PlayerColor::Black, NodeId(0), 2).unwrap();
        s.apply_donation(PlayerColor::Red, NodeId(2), 2).unwrap();
        let remaining = s.budget(PlayerColor::Red) + s.budget(PlayerColor::Black);
        assert_eq!(s.tokens_on_board() + remaining, initial);
    }
}
