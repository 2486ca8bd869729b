//! Result emission: CSV and JSON records plus a plot-data companion file.

use std::io::Write;
use std::path::Path;

use crate::engine::{Outcome, PlayerColor};

use super::{GameRecord, HarnessError, MatchOutput};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    /// Infer the format from the output path's extension; CSV by default.
    pub fn from_path(path: &Path) -> OutputFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => OutputFormat::Json,
            _ => OutputFormat::Csv,
        }
    }
}

pub const CSV_HEADER: &str =
    "run_id,starter,winner,black_nodes,red_nodes,turns,graph_n,graph_m,seed";

fn csv_row(r: &GameRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        r.run_id,
        r.starter,
        r.winner,
        r.black_nodes,
        r.red_nodes,
        r.turns,
        r.graph_n,
        r.graph_m,
        r.seed
    )
}

/// Write the match records to `path` (CSV columns exactly: run_id, starter,
/// winner, black_nodes, red_nodes, turns, graph_n, graph_m, seed; JSON
/// mirrors the records with budgets and stats included) and a plot-data
/// companion at `<path stem>.plot.csv` with the per-strategy win/loss/draw
/// triple.
pub fn emit_results(
    output: &MatchOutput,
    path: &Path,
    format: OutputFormat,
) -> Result<(), HarnessError> {
    if output.records.is_empty() {
        return Err(HarnessError::NoGames);
    }
    let mut file = std::fs::File::create(path)?;
    match format {
        OutputFormat::Csv => {
            let mut buf = String::with_capacity(64 * (output.records.len() + 1));
            buf.push_str(CSV_HEADER);
            buf.push('\n');
            for r in &output.records {
                buf.push_str(&csv_row(r));
                buf.push('\n');
            }
            file.write_all(buf.as_bytes())?;
        }
        OutputFormat::Json => {
            let json = serde_json::to_string_pretty(output).expect("match output serializes");
            file.write_all(json.as_bytes())?;
            file.write_all(b"\n")?;
        }
    }
    let plot_path = path.with_extension("plot.csv");
    let mut plot = std::fs::File::create(plot_path)?;
    writeln!(plot, "black_strategy,red_strategy,wins,losses,draws")?;
    writeln!(
        plot,
        "{},{},{},{},{}",
        output.black_strategy,
        output.red_strategy,
        output.stats.w,
        output.stats.l,
        output.stats.d
    )?;
    Ok(())
}

/// Read back a CSV written by [`emit_results`]. Budgets are not part of the
/// CSV schema and come back as zero.
pub fn read_records_csv(path: &Path) -> Result<Vec<GameRecord>, HarnessError> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => {
            return Err(HarnessError::InvalidSpec(format!(
                "unexpected CSV header: {other:?}"
            )))
        }
    }
    let mut records = Vec::new();
    for (idx, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(HarnessError::InvalidSpec(format!(
                "row {}: expected 9 fields, got {}",
                idx + 2,
                fields.len()
            )));
        }
        let parse_err = |what: &str| {
            HarnessError::InvalidSpec(format!("row {}: bad {what}", idx + 2))
        };
        let starter = match fields[1] {
            "red" => PlayerColor::Red,
            "black" => PlayerColor::Black,
            _ => return Err(parse_err("starter")),
        };
        let winner = match fields[2] {
            "red" => Outcome::RedWin,
            "black" => Outcome::BlackWin,
            "draw" => Outcome::Draw,
            _ => return Err(parse_err("winner")),
        };
        records.push(GameRecord {
            run_id: fields[0].parse().map_err(|_| parse_err("run_id"))?,
            starter,
            winner,
            black_nodes: fields[3].parse().map_err(|_| parse_err("black_nodes"))?,
            red_nodes: fields[4].parse().map_err(|_| parse_err("red_nodes"))?,
            turns: fields[5].parse().map_err(|_| parse_err("turns"))?,
            graph_n: fields[6].parse().map_err(|_| parse_err("graph_n"))?,
            graph_m: fields[7].parse().map_err(|_| parse_err("graph_m"))?,
            seed: fields[8].parse().map_err(|_| parse_err("seed"))?,
            budget_black: 0,
            budget_red: 0,
        });
    }
    Ok(records)
}
