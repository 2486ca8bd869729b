//! Tournament runner: match execution over synthetic or file datasets,
//! win/loss/draw metrics, per-graph randomness tables and the donation-policy
//! experiments.
//!
//! Every experiment is a pure function of its spec: per-game seeds are
//! derived from the master seed and game index, with separate streams for
//! graph creation and play, so games can run in parallel and reproduce
//! independently.

mod config;
mod output;

pub use config::{load_config_file, lookup, ConfigError};
pub use output::{emit_results, read_records_csv, OutputFormat};

use std::path::PathBuf;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::engine::{
    play_game, EngineError, GameConfig, Outcome, PlayerColor, TokenPolicy,
};
use crate::graph::{
    extract_cluster_sample, generate_ba, generate_er, generate_ws, load_edge_list, Graph,
    GraphError,
};
use crate::seed::{mix, mix_all, rng_from, stream};
use crate::strategies::{from_name, StrategyError, StrategyParams};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("no games played")]
    NoGames,
    #[error("invalid experiment spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Where each game's board comes from.
#[derive(Debug, Clone)]
pub enum DatasetKind {
    /// Watts-Strogatz boards: n in [30, 100], k in [3, 7], p = 0.3.
    SmallWorld,
    /// Barabasi-Albert boards: n in [30, 100], m in [1, n/3].
    ScaleFree,
    /// Erdos-Renyi boards: n in [30, 100], p = 0.3.
    RandomGraph,
    /// A fixed subgraph sampled from an edge-list file by label propagation
    /// community detection plus a breadth-first walk.
    File {
        path: PathBuf,
        target_cluster: usize,
        sample: usize,
    },
}

impl DatasetKind {
    /// Parse the CLI form: `sw`, `sf`, `er`, or `file:<path>`.
    pub fn parse(s: &str, target_cluster: usize, sample: usize) -> Result<Self, HarnessError> {
        match s {
            "sw" => Ok(DatasetKind::SmallWorld),
            "sf" => Ok(DatasetKind::ScaleFree),
            "er" => Ok(DatasetKind::RandomGraph),
            other => match other.strip_prefix("file:") {
                Some(path) if !path.is_empty() => Ok(DatasetKind::File {
                    path: PathBuf::from(path),
                    target_cluster,
                    sample,
                }),
                _ => Err(HarnessError::InvalidSpec(format!(
                    "unknown dataset {other:?} (expected sw, sf, er or file:<path>)"
                ))),
            },
        }
    }

    /// Generate the board for one game of a synthetic family. Parameter
    /// ranges follow the synthetic dataset table; bounds are inclusive.
    fn synth_graph(&self, seed: u64) -> Result<Graph, GraphError> {
        let mut rng = rng_from(seed);
        let n: usize = rng.random_range(30..=100);
        match self {
            DatasetKind::SmallWorld => {
                let k = rng.random_range(3..=7);
                generate_ws(n, k, 0.3, rng.random())
            }
            DatasetKind::ScaleFree => {
                let m = rng.random_range(1..=n / 3);
                generate_ba(n, m, rng.random())
            }
            DatasetKind::RandomGraph => generate_er(n, 0.3, rng.random()),
            DatasetKind::File { .. } => unreachable!("file datasets are fixed"),
        }
    }

    /// Load and sample the fixed board for a file dataset.
    fn load_fixed(&self, seed: u64) -> Result<Option<Arc<Graph>>, HarnessError> {
        match self {
            DatasetKind::File {
                path,
                target_cluster,
                sample,
            } => {
                let loaded = load_edge_list(path)?;
                let sampled =
                    extract_cluster_sample(&loaded.graph, *target_cluster, *sample, seed)?;
                Ok(Some(Arc::new(sampled)))
            }
            _ => Ok(None),
        }
    }
}

/// One player's strategy, by CLI name plus tuning knobs.
#[derive(Debug, Clone)]
pub struct StrategySpec {
    pub name: String,
    pub params: StrategyParams,
}

impl StrategySpec {
    pub fn new(name: &str) -> StrategySpec {
        StrategySpec {
            name: name.to_string(),
            params: Default::default(),
        }
    }

    pub fn with_params(name: &str, params: StrategyParams) -> StrategySpec {
        StrategySpec {
            name: name.to_string(),
            params,
        }
    }
}

/// A full tournament description; output is a pure function of this value.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub dataset: DatasetKind,
    pub black: StrategySpec,
    pub red: StrategySpec,
    pub games: u64,
    /// Tokens per player; defaults to the board's node count.
    pub budget: Option<u64>,
    pub policy_black: TokenPolicy,
    pub policy_red: TokenPolicy,
    pub master_seed: u64,
}

impl ExperimentSpec {
    pub fn new(dataset: DatasetKind, black: StrategySpec, red: StrategySpec) -> ExperimentSpec {
        ExperimentSpec {
            dataset,
            black,
            red,
            games: 100,
            budget: None,
            policy_black: TokenPolicy::FireCapacity,
            policy_red: TokenPolicy::FireCapacity,
            master_seed: 0,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.games < 1 {
            return Err(HarnessError::InvalidSpec("games must be >= 1".into()));
        }
        for (policy, spec, side) in [
            (self.policy_black, &self.black, "black"),
            (self.policy_red, &self.red, "red"),
        ] {
            if policy == TokenPolicy::ChosenAmount
                && !matches!(spec.name.as_str(), "mcts" | "eps-mcts")
            {
                return Err(HarnessError::InvalidSpec(format!(
                    "{side} uses the chosen-amount policy but strategy {:?} emits no amount",
                    spec.name
                )));
            }
        }
        Ok(())
    }

    // Strategy params with the amount mode implied by the token policy.
    fn side_params(&self, player: PlayerColor) -> StrategyParams {
        let (spec, policy) = match player {
            PlayerColor::Black => (&self.black, self.policy_black),
            PlayerColor::Red => (&self.red, self.policy_red),
        };
        let mut params = spec.params.clone();
        params.choose_amount = policy == TokenPolicy::ChosenAmount;
        params
    }

    /// Starter for a game index: even games to black, odd to red, so an odd
    /// game count gives the extra start to black.
    pub fn starter_for(&self, game_index: u64) -> PlayerColor {
        if game_index % 2 == 0 {
            PlayerColor::Black
        } else {
            PlayerColor::Red
        }
    }
}

/// Win/loss/draw counts from the black player's perspective plus the derived
/// rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TournamentStats {
    pub w: u64,
    pub l: u64,
    pub d: u64,
    pub win_rate: f64,
    pub loss_rate: f64,
    pub draw_rate: f64,
}

impl TournamentStats {
    pub fn new(w: u64, l: u64, d: u64) -> Result<TournamentStats, HarnessError> {
        let (win_rate, loss_rate, draw_rate) = rates(w, l, d)?;
        Ok(TournamentStats {
            w,
            l,
            d,
            win_rate,
            loss_rate,
            draw_rate,
        })
    }

    pub fn from_outcomes<'a, I: IntoIterator<Item = &'a Outcome>>(
        outcomes: I,
    ) -> Result<TournamentStats, HarnessError> {
        let (mut w, mut l, mut d) = (0, 0, 0);
        for o in outcomes {
            match o {
                Outcome::BlackWin => w += 1,
                Outcome::RedWin => l += 1,
                Outcome::Draw => d += 1,
            }
        }
        TournamentStats::new(w, l, d)
    }

    pub fn games(&self) -> u64 {
        self.w + self.l + self.d
    }
}

/// The three outcome ratios `(win, loss, draw)` over `w + l + d` games.
pub fn rates(w: u64, l: u64, d: u64) -> Result<(f64, f64, f64), HarnessError> {
    let total = w + l + d;
    if total == 0 {
        return Err(HarnessError::NoGames);
    }
    let t = total as f64;
    Ok((w as f64 / t, l as f64 / t, d as f64 / t))
}

/// One game's result row. The CSV schema carries the first nine fields;
/// budgets ride along in JSON output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GameRecord {
    pub run_id: u64,
    pub starter: PlayerColor,
    pub winner: Outcome,
    pub black_nodes: usize,
    pub red_nodes: usize,
    pub turns: u64,
    pub graph_n: usize,
    pub graph_m: usize,
    pub seed: u64,
    pub budget_black: u64,
    pub budget_red: u64,
}

/// A completed match: stats plus every game record, sorted by run id.
#[derive(Debug, Clone, Serialize)]
pub struct MatchOutput {
    pub black_strategy: String,
    pub red_strategy: String,
    pub stats: TournamentStats,
    pub records: Vec<GameRecord>,
}

/// Run every game of the spec. Synthetic datasets draw a fresh board per
/// game; file datasets reuse the fixed sampled subgraph. Games run in
/// parallel; output order and content depend only on the spec.
pub fn run_match(spec: &ExperimentSpec) -> Result<MatchOutput, HarnessError> {
    spec.validate()?;
    let fixed = spec
        .dataset
        .load_fixed(mix(spec.master_seed, stream::DATASET))?;
    let records: Result<Vec<GameRecord>, HarnessError> = (0..spec.games)
        .into_par_iter()
        .map(|i| run_single_game(spec, i, fixed.as_ref()))
        .collect();
    let records = records?;
    let stats =
        TournamentStats::from_outcomes(records.iter().map(|r| &r.winner).collect::<Vec<_>>())?;
    Ok(MatchOutput {
        black_strategy: spec.black.name.clone(),
        red_strategy: spec.red.name.clone(),
        stats,
        records,
    })
}

fn run_single_game(
    spec: &ExperimentSpec,
    game_index: u64,
    fixed: Option<&Arc<Graph>>,
) -> Result<GameRecord, HarnessError> {
    let graph: Arc<Graph> = match fixed {
        Some(g) => Arc::clone(g),
        None => Arc::new(
            spec.dataset
                .synth_graph(mix_all(spec.master_seed, &[game_index, stream::GRAPH]))?,
        ),
    };
    let n = graph.node_count();
    let budget = spec.budget.unwrap_or(n as u64);
    let cfg = GameConfig {
        budget_red: budget,
        budget_black: budget,
        policy_red: spec.policy_red,
        policy_black: spec.policy_black,
        starter: spec.starter_for(game_index),
        safety_turn_cap: 10 * n.max(1) as u64,
        loyalty_growth: 1,
    };
    let black = from_name(&spec.black.name, &spec.side_params(PlayerColor::Black))?;
    let red = from_name(&spec.red.name, &spec.side_params(PlayerColor::Red))?;
    let play_seed = mix_all(spec.master_seed, &[game_index, stream::PLAY]);
    let result = play_game(&graph, &cfg, red.as_ref(), black.as_ref(), play_seed);
    Ok(GameRecord {
        run_id: game_index,
        starter: cfg.starter,
        winner: result.outcome,
        black_nodes: result.black_nodes,
        red_nodes: result.red_nodes,
        turns: result.turns,
        graph_n: n,
        graph_m: graph.edge_count(),
        seed: play_seed,
        budget_black: budget,
        budget_red: budget,
    })
}

/// One row of a randomness table: outcome percentages over repeated runs on
/// a fixed graph.
#[derive(Debug, Clone, Serialize)]
pub struct RandomnessRow {
    pub graph_index: usize,
    pub graph_n: usize,
    pub graph_m: usize,
    pub red_wins: u64,
    pub black_wins: u64,
    pub draws: u64,
    pub red_pct: f64,
    pub black_pct: f64,
    pub draw_pct: f64,
}

/// Outcome percentages per fixed graph over repeated seeded runs.
#[derive(Debug, Clone, Serialize)]
pub struct RandomnessTable {
    pub rows: Vec<RandomnessRow>,
}

impl RandomnessTable {
    /// Pool every row into one stats record (black's perspective).
    pub fn pooled(&self) -> Result<TournamentStats, HarnessError> {
        let w = self.rows.iter().map(|r| r.black_wins).sum();
        let l = self.rows.iter().map(|r| r.red_wins).sum();
        let d = self.rows.iter().map(|r| r.draws).sum();
        TournamentStats::new(w, l, d)
    }
}

/// Play `runs_per_graph` games on each of `graphs` fixed boards, varying
/// only the per-run seed (starters alternate run by run), and report the
/// outcome percentages per board.
pub fn randomness_table(
    dataset: &DatasetKind,
    black: &StrategySpec,
    red: &StrategySpec,
    graphs: usize,
    runs_per_graph: u64,
    budget: Option<u64>,
    master_seed: u64,
) -> Result<RandomnessTable, HarnessError> {
    if graphs == 0 || runs_per_graph == 0 {
        return Err(HarnessError::InvalidSpec(
            "randomness tables need graphs >= 1 and runs >= 1".into(),
        ));
    }
    let fixed = dataset.load_fixed(mix(master_seed, stream::DATASET))?;
    let mut boards: Vec<Arc<Graph>> = Vec::with_capacity(graphs);
    for g in 0..graphs {
        boards.push(match &fixed {
            Some(b) => Arc::clone(b),
            None => Arc::new(
                dataset.synth_graph(mix_all(master_seed, &[g as u64, stream::GRAPH]))?,
            ),
        });
    }
    let outcomes: Result<Vec<(usize, Outcome)>, HarnessError> = (0..graphs as u64
        * runs_per_graph)
        .into_par_iter()
        .map(|idx| {
            let g = (idx / runs_per_graph) as usize;
            let run = idx % runs_per_graph;
            let graph = &boards[g];
            let n = graph.node_count();
            let budget = budget.unwrap_or(n as u64);
            let cfg = GameConfig {
                budget_red: budget,
                budget_black: budget,
                policy_red: TokenPolicy::FireCapacity,
                policy_black: TokenPolicy::FireCapacity,
                starter: if run % 2 == 0 {
                    PlayerColor::Black
                } else {
                    PlayerColor::Red
                },
                safety_turn_cap: 10 * n.max(1) as u64,
                loyalty_growth: 1,
            };
            let black = from_name(&black.name, &black.params)?;
            let red = from_name(&red.name, &red.params)?;
            let seed = mix_all(master_seed, &[g as u64, run, stream::PLAY]);
            let result = play_game(graph, &cfg, red.as_ref(), black.as_ref(), seed);
            Ok((g, result.outcome))
        })
        .collect();
    let outcomes = outcomes?;
    let mut rows = Vec::with_capacity(graphs);
    for g in 0..graphs {
        let (mut w, mut l, mut d) = (0u64, 0u64, 0u64);
        for (gi, o) in &outcomes {
            if *gi == g {
                match o {
                    Outcome::BlackWin => w += 1,
                    Outcome::RedWin => l += 1,
                    Outcome::Draw => d += 1,
                }
            }
        }
        let total = (w + l + d) as f64;
        rows.push(RandomnessRow {
            graph_index: g,
            graph_n: boards[g].node_count(),
            graph_m: boards[g].edge_count(),
            red_wins: l,
            black_wins: w,
            draws: d,
            red_pct: 100.0 * l as f64 / total,
            black_pct: 100.0 * w as f64 / total,
            draw_pct: 100.0 * d as f64 / total,
        });
    }
    Ok(RandomnessTable { rows })
}

/// The three donation-policy formations. Both sides select nodes with
/// general MCTS; only the token policies differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formation {
    /// Black fires the selected node; red donates one token per turn.
    FireVsOne,
    /// Black picks the amount in `[1, capacity]` by search; red donates one.
    ChooseVsOne,
    /// Black fires; red picks the amount by search.
    FireVsChoose,
}

impl Formation {
    pub fn parse(s: &str) -> Result<Formation, HarnessError> {
        match s {
            "fire-vs-one" => Ok(Formation::FireVsOne),
            "choose-vs-one" => Ok(Formation::ChooseVsOne),
            "fire-vs-choose" => Ok(Formation::FireVsChoose),
            other => Err(HarnessError::InvalidSpec(format!(
                "unknown formation {other:?} (expected fire-vs-one, choose-vs-one or fire-vs-choose)"
            ))),
        }
    }

    pub fn policies(self) -> (TokenPolicy, TokenPolicy) {
        // (black, red)
        match self {
            Formation::FireVsOne => (TokenPolicy::FireCapacity, TokenPolicy::OneToken),
            Formation::ChooseVsOne => (TokenPolicy::ChosenAmount, TokenPolicy::OneToken),
            Formation::FireVsChoose => (TokenPolicy::FireCapacity, TokenPolicy::ChosenAmount),
        }
    }
}

/// Wire a donation-policy formation (both sides general MCTS at the given
/// iteration budget) and run the match.
pub fn token_policy_experiment(
    formation: Formation,
    dataset: DatasetKind,
    games: u64,
    iterations: u64,
    budget: Option<u64>,
    master_seed: u64,
) -> Result<MatchOutput, HarnessError> {
    let params = StrategyParams {
        iterations,
        ..Default::default()
    };
    let (policy_black, policy_red) = formation.policies();
    let spec = ExperimentSpec {
        dataset,
        black: StrategySpec::with_params("mcts", params.clone()),
        red: StrategySpec::with_params("mcts", params),
        games,
        budget,
        policy_black,
        policy_red,
        master_seed,
    };
    run_match(&spec)
}
