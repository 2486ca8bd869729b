//! SNAP-style edge list IO: one `u v` pair per line, whitespace separated,
//! `#`-prefixed comment lines ignored.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::{Graph, GraphError, NodeId};

/// A graph loaded from an edge-list file, with cleanup counters.
#[derive(Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub self_loops_dropped: usize,
    pub duplicate_edges_dropped: usize,
}

/// Load an edge list, remapping arbitrary ids to dense `[0, n)` in order of
/// first appearance. Self-loops and duplicate edges are dropped and counted.
/// Original ids are kept in the graph's side table.
pub fn load_edge_list(path: &Path) -> Result<LoadedGraph, GraphError> {
    let file = std::fs::File::open(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    let reader = BufReader::new(file);
    let display = path.display().to_string();

    let mut remap: HashMap<u64, NodeId> = HashMap::new();
    let mut original: Vec<u64> = Vec::new();
    let mut intern = |raw: u64, original: &mut Vec<u64>| -> NodeId {
        *remap.entry(raw).or_insert_with(|| {
            let id = NodeId(original.len() as u32);
            original.push(raw);
            id
        })
    };

    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let mut seen: std::collections::HashSet<(NodeId, NodeId)> = std::collections::HashSet::new();
    let mut self_loops = 0usize;
    let mut duplicates = 0usize;

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let parse = |tok: Option<&str>, lineno: usize| -> Result<u64, GraphError> {
            let tok = tok.ok_or_else(|| GraphError::Parse {
                path: display.clone(),
                line: lineno,
                msg: "expected two node ids".into(),
            })?;
            tok.parse::<u64>().map_err(|_| GraphError::Parse {
                path: display.clone(),
                line: lineno,
                msg: format!("invalid node id {tok:?}"),
            })
        };
        let a = parse(fields.next(), lineno)?;
        let b = parse(fields.next(), lineno)?;
        if a == b {
            self_loops += 1;
            continue;
        }
        let u = intern(a, &mut original);
        let v = intern(b, &mut original);
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            duplicates += 1;
            continue;
        }
        edges.push(key);
    }

    let mut graph = Graph::new_gameboard(original.len(), &edges)?;
    graph.set_original_ids(original);
    Ok(LoadedGraph {
        graph,
        self_loops_dropped: self_loops,
        duplicate_edges_dropped: duplicates,
    })
}

/// Write a graph as an edge list with a short comment header. Dense ids are
/// written so the file round-trips through [`load_edge_list`].
pub fn save_edge_list(graph: &Graph, path: &Path) -> Result<(), GraphError> {
    let file = std::fs::File::create(path)?;
    let mut w = BufWriter::new(file);
    writeln!(
        w,
        "# nodes: {} edges: {}",
        graph.node_count(),
        graph.edge_count()
    )?;
    for (u, v) in graph.edges() {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()?;
    Ok(())
}
