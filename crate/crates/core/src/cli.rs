//! The `influence-duel` command line: graph generation, single games,
//! tournaments, randomness tables and donation-policy experiments.
//!
//! Every flag can also be supplied through `--config <file>` as a flat
//! `key = value` line (the key is the long flag name); explicit flags
//! override file values. Exit codes: 0 success, 1 usage error, 2 data error.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::engine::{
    play_game, trace_to_json, write_trace_text, GameConfig, PlayerColor, TokenPolicy,
};
use crate::graph::{load_edge_list, save_edge_list, GenParams, Graph, GraphError};
use crate::harness::{
    emit_results, load_config_file, lookup, randomness_table, run_match, token_policy_experiment,
    ConfigError, DatasetKind, ExperimentSpec, Formation, HarnessError, OutputFormat,
    RandomnessTable, StrategySpec,
};
use crate::mcts::RolloutPolicy;
use crate::strategies::{from_name, StrategyParams};

#[derive(Parser)]
#[command(
    name = "influence-duel",
    version,
    about = "Two-player competitive influence game on graphs",
    subcommand_required = true,
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic graph and write it as an edge list.
    GenGraph(GenGraphArgs),
    /// Play one game and print (or export) its trace.
    Play(PlayArgs),
    /// Run a tournament between two strategies.
    Match(MatchArgs),
    /// Repeat games on fixed graphs to measure outcome randomness.
    Randomness(RandomnessArgs),
    /// Run a donation-policy formation (both sides general MCTS).
    TokensExp(TokensExpArgs),
}

#[derive(Args)]
struct GenGraphArgs {
    /// er | ba | ws
    #[arg(long)]
    model: Option<String>,
    /// Node count
    #[arg(long)]
    n: Option<usize>,
    /// Edge probability (er) or rewire probability (ws)
    #[arg(long)]
    p: Option<f64>,
    /// Edges attached per new node (ba)
    #[arg(long)]
    m: Option<usize>,
    /// Ring neighbors (ws)
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output edge-list path
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct TuningArgs {
    /// Search iterations per move for the MCTS strategies
    #[arg(long)]
    iterations: Option<u64>,
    /// Greedy-pick probability for epsilon-greedy rollouts
    #[arg(long)]
    epsilon: Option<f64>,
    /// UCT exploration constant
    #[arg(long = "uct-c")]
    uct_c: Option<f64>,
    /// Rollout policy override: random | eps-greedy
    #[arg(long)]
    rollout: Option<String>,
    /// fire | choose: whether search strategies enumerate donation amounts
    #[arg(long = "amount-mode")]
    amount_mode: Option<String>,
    /// Minimax depth in plies
    #[arg(long)]
    depth: Option<u32>,
}

#[derive(Args)]
struct PlayArgs {
    /// Edge-list file, or a model spec: er:<n>:<p>, ba:<n>:<m>, ws:<n>:<k>:<p>
    #[arg(long)]
    graph: Option<String>,
    /// Black strategy name
    #[arg(long)]
    black: Option<String>,
    /// Red strategy name
    #[arg(long)]
    red: Option<String>,
    /// black | red
    #[arg(long)]
    starter: Option<String>,
    /// Tokens per player (default: node count)
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the trace here (.json for JSON, anything else for text)
    #[arg(long)]
    trace: Option<PathBuf>,
    /// fire | one-token | choose
    #[arg(long = "black-policy")]
    black_policy: Option<String>,
    /// fire | one-token | choose
    #[arg(long = "red-policy")]
    red_policy: Option<String>,
    #[command(flatten)]
    tuning: TuningArgs,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct MatchArgs {
    /// sw | sf | er | file:<path>
    #[arg(long)]
    dataset: Option<String>,
    #[arg(long)]
    black: Option<String>,
    #[arg(long)]
    red: Option<String>,
    #[arg(long)]
    games: Option<u64>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Results file (.csv or .json); a plot-data companion is written beside it
    #[arg(long)]
    out: Option<PathBuf>,
    /// Community size to look for in file datasets
    #[arg(long = "target-cluster")]
    target_cluster: Option<usize>,
    /// Nodes sampled from the chosen community
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long = "black-policy")]
    black_policy: Option<String>,
    #[arg(long = "red-policy")]
    red_policy: Option<String>,
    #[command(flatten)]
    tuning: TuningArgs,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct RandomnessArgs {
    /// sw | sf | er | file:<path>
    #[arg(long)]
    dataset: Option<String>,
    /// Black strategy (default eps-mcts)
    #[arg(long)]
    black: Option<String>,
    /// Red strategy (default mcts)
    #[arg(long)]
    red: Option<String>,
    /// Number of fixed graphs
    #[arg(long)]
    graphs: Option<usize>,
    /// Runs per graph
    #[arg(long)]
    runs: Option<u64>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the table as CSV here
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long = "target-cluster")]
    target_cluster: Option<usize>,
    #[arg(long)]
    sample: Option<usize>,
    #[command(flatten)]
    tuning: TuningArgs,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct TokensExpArgs {
    /// fire-vs-one | choose-vs-one | fire-vs-choose
    #[arg(long)]
    formation: Option<String>,
    /// sw | sf | er | file:<path>
    #[arg(long)]
    dataset: Option<String>,
    #[arg(long)]
    games: Option<u64>,
    #[arg(long)]
    iterations: Option<u64>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long = "target-cluster")]
    target_cluster: Option<usize>,
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long)]
    config: Option<PathBuf>,
}

/// CLI failures, split by exit code.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) => m,
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Io(_) => CliError::Data(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::InvalidParam(_) => CliError::Usage(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::InvalidSpec(_) | HarnessError::Strategy(_) | HarnessError::NoGames => {
                CliError::Usage(e.to_string())
            }
            HarnessError::Graph(g) => g.into(),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

// Flag-or-config-or-default resolution.
struct Resolver {
    map: HashMap<String, String>,
}

impl Resolver {
    fn new(config: Option<&Path>) -> Result<Resolver, CliError> {
        let map = match config {
            Some(path) => load_config_file(path)?,
            None => HashMap::new(),
        };
        Ok(Resolver { map })
    }

    fn opt<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        lookup::<T>(&self.map, key).map_err(CliError::from)
    }

    fn get<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError> {
        Ok(self.opt(flag, key)?.unwrap_or(default))
    }

    fn required<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<T, CliError> {
        self.opt(flag, key)?
            .ok_or_else(|| CliError::Usage(format!("missing required option --{key}")))
    }
}

fn parse_color(s: &str) -> Result<PlayerColor, CliError> {
    match s {
        "black" => Ok(PlayerColor::Black),
        "red" => Ok(PlayerColor::Red),
        other => Err(CliError::Usage(format!(
            "invalid color {other:?} (expected black or red)"
        ))),
    }
}

fn parse_policy(s: &str) -> Result<TokenPolicy, CliError> {
    match s {
        "fire" => Ok(TokenPolicy::FireCapacity),
        "one-token" => Ok(TokenPolicy::OneToken),
        "choose" => Ok(TokenPolicy::ChosenAmount),
        other => Err(CliError::Usage(format!(
            "invalid policy {other:?} (expected fire, one-token or choose)"
        ))),
    }
}

fn parse_rollout(s: &str) -> Result<RolloutPolicy, CliError> {
    match s {
        "random" => Ok(RolloutPolicy::Random),
        "eps-greedy" => Ok(RolloutPolicy::EpsGreedy),
        other => Err(CliError::Usage(format!(
            "invalid rollout {other:?} (expected random or eps-greedy)"
        ))),
    }
}

// A playable graph source: an edge-list path or an inline model spec like
// er:30:0.3, ba:30:3, ws:30:4:0.3.
fn parse_graph_source(s: &str) -> Result<Graph, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let parse_num = |tok: &str, what: &str| -> Result<usize, CliError> {
        tok.parse()
            .map_err(|_| CliError::Usage(format!("bad {what} in graph spec {s:?}")))
    };
    let parse_prob = |tok: &str| -> Result<f64, CliError> {
        tok.parse()
            .map_err(|_| CliError::Usage(format!("bad probability in graph spec {s:?}")))
    };
    let params = match parts.as_slice() {
        ["er", n, p] => GenParams::Er {
            n: parse_num(n, "n")?,
            p: parse_prob(p)?,
        },
        ["ba", n, m] => GenParams::Ba {
            n: parse_num(n, "n")?,
            m: parse_num(m, "m")?,
        },
        ["ws", n, k, p] => GenParams::Ws {
            n: parse_num(n, "n")?,
            k: parse_num(k, "k")?,
            p: parse_prob(p)?,
        },
        _ => {
            // Not a model spec: treat it as a file path.
            return Ok(load_edge_list(Path::new(s))?.graph);
        }
    };
    // Inline specs use a fixed seed; pass a file or use gen-graph for control.
    Ok(params.generate(0)?)
}

fn build_params(tuning: &TuningArgs, r: &Resolver) -> Result<(StrategyParams, Option<TokenPolicy>), CliError> {
    let defaults = StrategyParams::default();
    let rollout = match r.opt(tuning.rollout.clone(), "rollout")? {
        Some(s) => Some(parse_rollout(&s)?),
        None => None,
    };
    let amount_mode = r.opt(tuning.amount_mode.clone(), "amount-mode")?;
    let (choose_amount, implied_policy) = match amount_mode.as_deref() {
        Some("choose") => (true, Some(TokenPolicy::ChosenAmount)),
        Some("fire") | None => (false, None),
        Some(other) => {
            return Err(CliError::Usage(format!(
                "invalid amount-mode {other:?} (expected fire or choose)"
            )))
        }
    };
    // Heuristic weights and the low-threshold opponent bonus are config-file
    // keys (alpha, beta, gamma, lambda, nlt-bonus).
    let dw = crate::heuristics::HeuristicWeights::default();
    let weights = crate::heuristics::HeuristicWeights {
        alpha: r.get(None, "alpha", dw.alpha)?,
        beta: r.get(None, "beta", dw.beta)?,
        gamma: r.get(None, "gamma", dw.gamma)?,
        lambda: r.get(None, "lambda", dw.lambda)?,
        nlt_opponent_bonus: r.get(None, "nlt-bonus", dw.nlt_opponent_bonus)?,
    };
    weights
        .validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let params = StrategyParams {
        iterations: r.get(tuning.iterations, "iterations", defaults.iterations)?,
        epsilon: r.get(tuning.epsilon, "epsilon", defaults.epsilon)?,
        uct_c: r.get(tuning.uct_c, "uct-c", defaults.uct_c)?,
        depth: r.get(tuning.depth, "depth", defaults.depth)?,
        weights,
        choose_amount,
        rollout,
    };
    Ok((params, implied_policy))
}

fn run_gen_graph(args: GenGraphArgs) -> Result<(), CliError> {
    let r = Resolver::new(args.config.as_deref())?;
    let model: String = r.required(args.model, "model")?;
    let n: usize = r.required(args.n, "n")?;
    let seed: u64 = r.get(args.seed, "seed", 0)?;
    let out: PathBuf = r.required(args.out, "out")?;
    let params = match model.as_str() {
        "er" => GenParams::Er {
            n,
            p: r.required(args.p, "p")?,
        },
        "ba" => GenParams::Ba {
            n,
            m: r.required(args.m, "m")?,
        },
        "ws" => GenParams::Ws {
            n,
            k: r.required(args.k, "k")?,
            p: r.required(args.p, "p")?,
        },
        other => {
            return Err(CliError::Usage(format!(
                "invalid model {other:?} (expected er, ba or ws)"
            )))
        }
    };
    let graph = params.generate(seed)?;
    save_edge_list(&graph, &out)?;
    println!(
        "wrote {} nodes, {} edges to {}",
        graph.node_count(),
        graph.edge_count(),
        out.display()
    );
    Ok(())
}

fn run_play(args: PlayArgs) -> Result<(), CliError> {
    let r = Resolver::new(args.config.as_deref())?;
    let source: String = r.required(args.graph, "graph")?;
    let black_name: String = r.required(args.black, "black")?;
    let red_name: String = r.required(args.red, "red")?;
    let starter = parse_color(&r.get(args.starter, "starter", "black".to_string())?)?;
    let seed: u64 = r.get(args.seed, "seed", 0)?;
    let (params, implied_policy) = build_params(&args.tuning, &r)?;

    let graph = Arc::new(parse_graph_source(&source)?);
    let n = graph.node_count() as u64;
    let budget = r.get(args.budget, "budget", n)?;

    let policy_for = |flag: Option<String>, key: &str, name: &str| -> Result<TokenPolicy, CliError> {
        if let Some(s) = r.opt(flag, key)? {
            return parse_policy(&s);
        }
        // amount-mode choose implies the chosen-amount policy for search strategies.
        if matches!(name, "mcts" | "eps-mcts") {
            if let Some(p) = implied_policy {
                return Ok(p);
            }
        }
        Ok(TokenPolicy::FireCapacity)
    };
    let policy_black = policy_for(args.black_policy, "black-policy", &black_name)?;
    let policy_red = policy_for(args.red_policy, "red-policy", &red_name)?;

    let side_params = |policy: TokenPolicy| -> StrategyParams {
        let mut p = params.clone();
        p.choose_amount = policy == TokenPolicy::ChosenAmount;
        p
    };
    let black = from_name(&black_name, &side_params(policy_black))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let red = from_name(&red_name, &side_params(policy_red))
        .map_err(|e| CliError::Usage(e.to_string()))?;

    let cfg = GameConfig {
        budget_red: budget,
        budget_black: budget,
        policy_red,
        policy_black,
        starter,
        safety_turn_cap: 10 * n.max(1),
        loyalty_growth: 1,
    };
    let result = play_game(&graph, &cfg, red.as_ref(), black.as_ref(), seed);
    if let Some(path) = args.trace {
        if path.extension().and_then(|e| e.to_str()) == Some("json") {
            std::fs::write(&path, trace_to_json(&result))?;
        } else {
            let mut f = std::fs::File::create(&path)?;
            write_trace_text(&result, &mut f)?;
        }
        println!("trace written to {}", path.display());
    }
    println!(
        "result={} red_nodes={} black_nodes={} turns={}",
        result.outcome, result.red_nodes, result.black_nodes, result.turns
    );
    Ok(())
}

fn dataset_from(
    r: &Resolver,
    dataset: Option<String>,
    target_cluster: Option<usize>,
    sample: Option<usize>,
) -> Result<DatasetKind, CliError> {
    let name: String = r.required(dataset, "dataset")?;
    let target = r.get(target_cluster, "target-cluster", 200)?;
    let sample = r.get(sample, "sample", 100)?;
    Ok(DatasetKind::parse(&name, target, sample)?)
}

fn print_stats(label: &str, output: &crate::harness::MatchOutput) {
    let s = &output.stats;
    println!(
        "{label}: games={} black={} red={} w={} l={} d={} win_rate={:.3} loss_rate={:.3} draw_rate={:.3}",
        s.games(),
        output.black_strategy,
        output.red_strategy,
        s.w,
        s.l,
        s.d,
        s.win_rate,
        s.loss_rate,
        s.draw_rate
    );
}

fn run_match_cmd(args: MatchArgs) -> Result<(), CliError> {
    let r = Resolver::new(args.config.as_deref())?;
    let dataset = dataset_from(&r, args.dataset, args.target_cluster, args.sample)?;
    let black_name: String = r.required(args.black, "black")?;
    let red_name: String = r.required(args.red, "red")?;
    let games: u64 = r.get(args.games, "games", 100)?;
    let budget: Option<u64> = r.opt(args.budget, "budget")?;
    let seed: u64 = r.get(args.seed, "seed", 0)?;
    let out: Option<PathBuf> = r.opt(args.out, "out")?;
    let (params, implied_policy) = build_params(&args.tuning, &r)?;

    let policy_for = |flag: Option<String>, key: &str, name: &str| -> Result<TokenPolicy, CliError> {
        if let Some(s) = r.opt(flag, key)? {
            return parse_policy(&s);
        }
        if matches!(name, "mcts" | "eps-mcts") {
            if let Some(p) = implied_policy {
                return Ok(p);
            }
        }
        Ok(TokenPolicy::FireCapacity)
    };
    let policy_black = policy_for(args.black_policy, "black-policy", &black_name)?;
    let policy_red = policy_for(args.red_policy, "red-policy", &red_name)?;

    let spec = ExperimentSpec {
        dataset,
        black: StrategySpec::with_params(&black_name, params.clone()),
        red: StrategySpec::with_params(&red_name, params),
        games,
        budget,
        policy_black,
        policy_red,
        master_seed: seed,
    };
    let output = run_match(&spec)?;
    if let Some(path) = &out {
        emit_results(&output, path, OutputFormat::from_path(path))?;
        println!("results written to {}", path.display());
    }
    print_stats("match", &output);
    Ok(())
}

fn print_randomness(table: &RandomnessTable) {
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
}

fn run_randomness(args: RandomnessArgs) -> Result<(), CliError> {
    let r = Resolver::new(args.config.as_deref())?;
    let dataset = dataset_from(&r, args.dataset, args.target_cluster, args.sample)?;
    let black_name: String = r.get(args.black, "black", "eps-mcts".to_string())?;
    let red_name: String = r.get(args.red, "red", "mcts".to_string())?;
    let graphs: usize = r.get(args.graphs, "graphs", 5)?;
    let runs: u64 = r.get(args.runs, "runs", 20)?;
    let budget: Option<u64> = r.opt(args.budget, "budget")?;
    let seed: u64 = r.get(args.seed, "seed", 0)?;
    let out: Option<PathBuf> = r.opt(args.out, "out")?;
    let (params, _) = build_params(&args.tuning, &r)?;

    let table = randomness_table(
        &dataset,
        &StrategySpec::with_params(&black_name, params.clone()),
        &StrategySpec::with_params(&red_name, params),
        graphs,
        runs,
        budget,
        seed,
    )?;
    if let Some(path) = &out {
        let mut buf = String::from("graph_index,graph_n,graph_m,red_pct,black_pct,draw_pct\n");
        for row in &table.rows {
            buf.push_str(&format!(
                "{},{},{},{},{},{}\n",
                row.graph_index, row.graph_n, row.graph_m, row.red_pct, row.black_pct, row.draw_pct
            ));
        }
        std::fs::write(path, buf)?;
        println!("table written to {}", path.display());
    }
    print_randomness(&table);
    let pooled = table.pooled()?;
    println!(
        "pooled: w={} l={} d={} win_rate={:.3}",
        pooled.w, pooled.l, pooled.d, pooled.win_rate
    );
    Ok(())
}

fn run_tokens_exp(args: TokensExpArgs) -> Result<(), CliError> {
    let r = Resolver::new(args.config.as_deref())?;
    let formation = Formation::parse(&r.required(args.formation, "formation")?)?;
    let dataset = dataset_from(&r, args.dataset, args.target_cluster, args.sample)?;
    let games: u64 = r.get(args.games, "games", 100)?;
    let iterations: u64 = r.get(args.iterations, "iterations", 1000)?;
    let budget: Option<u64> = r.opt(args.budget, "budget")?;
    let seed: u64 = r.get(args.seed, "seed", 0)?;
    let out: Option<PathBuf> = r.opt(args.out, "out")?;

    let output = token_policy_experiment(formation, dataset, games, iterations, budget, seed)?;
    if let Some(path) = &out {
        emit_results(&output, path, OutputFormat::from_path(path))?;
        println!("results written to {}", path.display());
    }
    print_stats("tokens-exp", &output);
    Ok(())
}

/// Parse arguments and run; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version print to stdout and exit cleanly.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.cmd {
        Command::GenGraph(args) => run_gen_graph(args),
        Command::Play(args) => run_play(args),
        Command::Match(args) => run_match_cmd(args),
        Command::Randomness(args) => run_randomness(args),
        Command::TokensExp(args) => run_tokens_exp(args),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}
