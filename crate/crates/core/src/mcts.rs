//! Monte Carlo tree search: UCT selection, single-node expansion, random or
//! heuristic epsilon-greedy rollouts, and best-child-by-visits.
//!
//! With random rollouts this is the general MCTS baseline; with
//! epsilon-greedy rollouts the simulation step scores candidate nodes with
//! the heuristic combination and picks the best with probability epsilon.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::engine::{GameState, Move, PlayerColor, TokenPolicy};
use crate::graph::NodeId;
use crate::heuristics::{final_metric, HeuristicWeights};
use crate::strategies::{Choice, Strategy};

/// How simulation moves are picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RolloutPolicy {
    Random,
    EpsGreedy,
}

/// Whether search moves fire the selected node or enumerate every donation
/// amount in `[1, capacity]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmountMode {
    Fire,
    ChooseAmount,
}

#[derive(Debug, Clone)]
pub struct MctsConfig {
    pub iterations: u64,
    pub time_cap: Option<Duration>,
    /// UCT exploration constant.
    pub exploration: f64,
    /// Probability of taking the heuristically best rollout move.
    pub epsilon: f64,
    pub rollout: RolloutPolicy,
    pub amount_mode: AmountMode,
    pub weights: HeuristicWeights,
}

impl Default for MctsConfig {
    fn default() -> Self {
        MctsConfig {
            iterations: 1000,
            time_cap: None,
            exploration: std::f64::consts::SQRT_2,
            epsilon: 0.7,
            rollout: RolloutPolicy::EpsGreedy,
            amount_mode: AmountMode::Fire,
            weights: Default::default(),
        }
    }
}

/// One node of the search tree.
///
/// `score_sum` accumulates results from the perspective of the player who
/// moved into the node (the root accumulates the root player's results), so
/// a parent maximizes its children's means directly.
#[derive(Debug)]
pub struct SearchNode {
    /// The move that led here; `None` at the root.
    pub mv: Option<Move>,
    /// Player to move in this position.
    pub player_to_move: PlayerColor,
    pub visits: u64,
    pub score_sum: f64,
    pub children: Vec<usize>,
    pub untried: Vec<Move>,
    parent: Option<usize>,
    mover: Option<PlayerColor>,
    state: GameState,
    terminal: bool,
}

impl SearchNode {
    pub fn mean(&self) -> f64 {
        if self.visits == 0 {
            0.0
        } else {
            self.score_sum / self.visits as f64
        }
    }

    pub fn state(&self) -> &GameState {
        &self.state
    }

    pub fn is_terminal(&self) -> bool {
        self.terminal
    }
}

/// Upper confidence bound of a child given its parent's visit count.
/// Unvisited children score infinity so they are tried first.
pub fn uct(child: &SearchNode, parent_visits: u64, c: f64) -> f64 {
    uct_value(child.score_sum, child.visits, parent_visits, c)
}

/// UCT from raw statistics: `score_sum / visits + c * sqrt(ln(parent) / visits)`.
pub fn uct_value(score_sum: f64, visits: u64, parent_visits: u64, c: f64) -> f64 {
    if visits == 0 {
        return f64::INFINITY;
    }
    score_sum / visits as f64 + c * ((parent_visits as f64).ln() / visits as f64).sqrt()
}

/// A search tree rooted at one game position.
pub struct SearchTree {
    nodes: Vec<SearchNode>,
    root_player: PlayerColor,
    cfg: MctsConfig,
}

impl SearchTree {
    /// Build a tree over `state` for the player to move. Root moves honor
    /// the excluded set; untried moves are expanded in seeded random order.
    pub fn new(
        state: &GameState,
        cfg: MctsConfig,
        excluded: &HashSet<NodeId>,
        rng: &mut ChaCha8Rng,
    ) -> SearchTree {
        let root_player = state.to_move();
        let mut tree = SearchTree {
            nodes: Vec::new(),
            root_player,
            cfg,
        };
        tree.push_node(None, None, state.clone(), Some(excluded), rng);
        tree
    }

    fn push_node(
        &mut self,
        parent: Option<usize>,
        mv: Option<Move>,
        state: GameState,
        excluded: Option<&HashSet<NodeId>>,
        rng: &mut ChaCha8Rng,
    ) -> usize {
        let terminal = state.is_terminal();
        let mut untried = Vec::new();
        if !terminal {
            let empty = HashSet::new();
            untried = state.legal_moves(state.to_move(), excluded.unwrap_or(&empty));
            if untried.is_empty() {
                untried.push(Move::Pass);
            }
            untried.shuffle(rng);
        }
        let mover = parent.map(|p| self.nodes[p].player_to_move);
        let node = SearchNode {
            mv,
            player_to_move: state.to_move(),
            visits: 0,
            score_sum: 0.0,
            children: Vec::new(),
            untried,
            parent,
            mover,
            state,
            terminal,
        };
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub fn root(&self) -> &SearchNode {
        &self.nodes[0]
    }

    pub fn node(&self, idx: usize) -> &SearchNode {
        &self.nodes[idx]
    }

    /// Root children as (move, visits, mean score), in expansion order.
    pub fn root_children(&self) -> Vec<(Move, u64, f64)> {
        self.nodes[0]
            .children
            .iter()
            .map(|&c| {
                let n = &self.nodes[c];
                (n.mv.expect("child has a move"), n.visits, n.mean())
            })
            .collect()
    }

    /// Selection plus expansion: descend by UCT through fully expanded
    /// nodes, then expand one untried move. Returns the new node's index (or
    /// a terminal node's own index).
    pub fn traverse(&mut self, rng: &mut ChaCha8Rng) -> usize {
        let mut idx = 0;
        loop {
            if self.nodes[idx].terminal {
                return idx;
            }
            if let Some(mv) = self.nodes[idx].untried.pop() {
                let mut state = self.nodes[idx].state.clone();
                state.apply_move(mv).expect("untried move is legal");
                let child = self.push_node(Some(idx), Some(mv), state, None, rng);
                self.nodes[idx].children.push(child);
                return child;
            }
            let parent_visits = self.nodes[idx].visits;
            let c = self.cfg.exploration;
            let mut best = None;
            let mut best_score = f64::NEG_INFINITY;
            for &child in &self.nodes[idx].children {
                let score = uct(&self.nodes[child], parent_visits, c);
                if score > best_score {
                    best_score = score;
                    best = Some(child);
                }
            }
            idx = best.expect("fully expanded node has children");
        }
    }

    /// Play the node's position to the end with the rollout policy; the
    /// result is 1/0.5/0 from the root player's perspective.
    pub fn rollout(&self, idx: usize, rng: &mut ChaCha8Rng) -> f64 {
        let mut state = self.nodes[idx].state.clone();
        while !state.is_terminal() {
            let mv = rollout_policy(&state, &self.cfg, rng);
            state.apply_move(mv).expect("rollout move is legal");
        }
        state.winner().score_for(self.root_player)
    }

    /// Add a result along the leaf-to-root path, flipping perspective so each
    /// node accumulates wins for the player who moved into it.
    pub fn backpropagate(&mut self, leaf: usize, result: f64) {
        let mut idx = Some(leaf);
        while let Some(i) = idx {
            let node = &mut self.nodes[i];
            node.visits += 1;
            let contribution = match node.mover {
                Some(m) if m != self.root_player => 1.0 - result,
                _ => result,
            };
            node.score_sum += contribution;
            idx = node.parent;
        }
    }

    /// The root move with the most visits; ties prefer lower node id, then
    /// smaller amount.
    pub fn best_move(&self) -> Move {
        let mut best: Option<(u64, (u8, u32, u64), Move)> = None;
        for &c in &self.nodes[0].children {
            let node = &self.nodes[c];
            let mv = node.mv.expect("child has a move");
            let key = move_order_key(&mv);
            let better = match &best {
                None => true,
                Some((bv, bk, _)) => node.visits > *bv || (node.visits == *bv && key < *bk),
            };
            if better {
                best = Some((node.visits, key, mv));
            }
        }
        best.map(|(_, _, mv)| mv).unwrap_or(Move::Pass)
    }
}

// Ordering key for tie-breaks: donations before pass, lower node, smaller amount.
fn move_order_key(mv: &Move) -> (u8, u32, u64) {
    match *mv {
        Move::Donate { node, amount } => (0, node.0, amount),
        Move::Pass => (1, u32::MAX, u64::MAX),
    }
}

/// One simulation move for the player to move, under that player's token
/// policy.
///
/// Random mode picks a legal move uniformly. Epsilon-greedy mode ranks the
/// candidate nodes with the heuristic combination, takes the best with
/// probability epsilon and otherwise one of the remaining candidates
/// uniformly; donation amounts follow the mover's policy (chosen-amount
/// movers draw the amount uniformly from `[1, min(capacity, budget)]`).
pub fn rollout_policy(state: &GameState, cfg: &MctsConfig, rng: &mut ChaCha8Rng) -> Move {
    let player = state.to_move();
    let no_exclusions = HashSet::new();
    let legal = state.legal_moves(player, &no_exclusions);
    if legal.is_empty() {
        return Move::Pass;
    }
    match cfg.rollout {
        RolloutPolicy::Random => *legal.choose(rng).expect("legal moves nonempty"),
        RolloutPolicy::EpsGreedy => {
            // Candidate nodes, deduplicated (legal moves are sorted by node).
            let mut candidates: Vec<NodeId> = Vec::new();
            for mv in &legal {
                if let Move::Donate { node, .. } = mv {
                    if candidates.last() != Some(node) {
                        candidates.push(*node);
                    }
                }
            }
            let scored = final_metric(state, &candidates, player, &cfg.weights)
                .expect("candidates nonempty");
            let node = if scored.len() == 1 || rng.random::<f64>() < cfg.epsilon {
                scored[0].node
            } else {
                scored[1..]
                    .choose(rng)
                    .expect("more than one candidate")
                    .node
            };
            let capacity = state.capacity_of(node);
            let budget = state.budget(player);
            let amount = match state.policy(player) {
                TokenPolicy::FireCapacity => capacity,
                TokenPolicy::OneToken => 1,
                TokenPolicy::ChosenAmount => rng.random_range(1..=capacity.min(budget)),
            };
            Move::Donate { node, amount }
        }
    }
}

/// Run a full search and return the best root move. With no legal move the
/// answer is a pass.
pub fn search(
    state: &GameState,
    cfg: &MctsConfig,
    excluded: &HashSet<NodeId>,
    rng: &mut ChaCha8Rng,
) -> Move {
    build_search_tree(state, cfg, excluded, rng).best_move()
}

/// Like [`search`] but returns the whole tree for inspection.
pub fn build_search_tree(
    state: &GameState,
    cfg: &MctsConfig,
    excluded: &HashSet<NodeId>,
    rng: &mut ChaCha8Rng,
) -> SearchTree {
    let mut tree = SearchTree::new(state, cfg.clone(), excluded, rng);
    if tree.root().terminal {
        return tree;
    }
    let start = Instant::now();
    let mut iteration = 0u64;
    loop {
        if cfg.iterations > 0 && iteration >= cfg.iterations {
            break;
        }
        if let Some(cap) = cfg.time_cap {
            if start.elapsed() >= cap {
                break;
            }
        }
        if cfg.iterations == 0 && cfg.time_cap.is_none() {
            break; // Misconfigured: avoid spinning forever.
        }
        let leaf = tree.traverse(rng);
        let result = tree.rollout(leaf, rng);
        tree.backpropagate(leaf, result);
        iteration += 1;
    }
    tree
}

/// MCTS as a playing strategy. `mcts` uses random rollouts (the general
/// baseline); `eps-mcts` uses heuristic epsilon-greedy rollouts.
pub struct MctsStrategy {
    name: &'static str,
    cfg: MctsConfig,
}

impl MctsStrategy {
    pub fn new(name: &'static str, cfg: MctsConfig) -> MctsStrategy {
        MctsStrategy { name, cfg }
    }

    pub fn config(&self) -> &MctsConfig {
        &self.cfg
    }
}

impl Strategy for MctsStrategy {
    fn name(&self) -> &str {
        self.name
    }

    fn emits_amount(&self) -> bool {
        self.cfg.amount_mode == AmountMode::ChooseAmount
    }

    fn choose(
        &self,
        state: &GameState,
        player: PlayerColor,
        excluded: &HashSet<NodeId>,
        rng: &mut ChaCha8Rng,
    ) -> Option<Choice> {
        debug_assert_eq!(player, state.to_move());
        match search(state, &self.cfg, excluded, rng) {
            Move::Donate { node, amount } => Some(Choice {
                node,
                amount: (self.cfg.amount_mode == AmountMode::ChooseAmount).then_some(amount),
            }),
            Move::Pass => None,
        }
    }
}
