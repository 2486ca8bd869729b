//! Game trace export: a line-oriented text log and structured JSON.

use std::io::Write;

use super::{GameResult, Move};

/// Write one line per turn plus a footer line with the result.
///
/// Format: `t=<turn> player=<color> move=<pass|donate:node:amount>
/// activations=<node:color,...|->`.
pub fn write_trace_text(result: &GameResult, out: &mut dyn Write) -> std::io::Result<()> {
    for rec in &result.trace {
        let mv = match rec.mv {
            Move::Pass => "pass".to_string(),
            Move::Donate { node, amount } => format!("donate:{node}:{amount}"),
        };
        let acts = if rec.activations.is_empty() {
            "-".to_string()
        } else {
            rec.activations
                .iter()
                .map(|a| format!("{}:{}", a.node, a.color))
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(
            out,
            "t={} player={} move={} activations={}",
            rec.turn_index, rec.player, mv, acts
        )?;
    }
    writeln!(
        out,
        "result={} red_nodes={} black_nodes={} turns={}",
        result.outcome, result.red_nodes, result.black_nodes, result.turns
    )
}

/// The full result (outcome, counts and trace) as pretty JSON.
pub fn trace_to_json(result: &GameResult) -> String {
    serde_json::to_string_pretty(result).expect("trace serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{Activation, Outcome, PlayerColor, TurnRecord};
    use crate::graph::NodeId;

    fn sample_result() -> GameResult {
        GameResult {
            outcome: Outcome::BlackWin,
            red_nodes: 0,
            black_nodes: 3,
            turns: 1,
            trace: vec![TurnRecord {
                turn_index: 0,
                player: PlayerColor::Black,
                mv: Move::Donate {
                    node: NodeId(1),
                    amount: 2,
                },
                activations: vec![
                    Activation {
                        node: NodeId(1),
                        color: PlayerColor::Black,
                    },
                    Activation {
                        node: NodeId(0),
                        color: PlayerColor::Black,
                    },
                ],
            }],
        }
    }

    #[test]
    fn text_trace_format() {
        let mut buf = Vec::new();
        write_trace_text(&sample_result(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "t=0 player=black move=donate:1:2 activations=1:black,0:black\n\
             result=black red_nodes=0 black_nodes=3 turns=1\n"
        );
    }

    #[test]
    fn json_trace_round_trips_moves() {
        let json = trace_to_json(&sample_result());
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["outcome"], "black");
        assert_eq!(v["trace"][0]["move"]["type"], "donate");
        assert_eq!(v["trace"][0]["move"]["node"], 1);
        assert_eq!(v["trace"][0]["activations"][0]["color"], "black");
    }
}
