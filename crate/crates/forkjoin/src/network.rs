//! Acyclic network topologies and their max-plus adjacency structure.
//!
//! Nodes are numbered 1..=n in every public interface and in the text
//! format; an edge (i, j) routes customers from node i to node j. Any
//! finite acyclic graph has at least one node without predecessors (a
//! saturated source with an inexhaustible buffer) and one without
//! successors (an output node), which is exactly the shape the fork-join
//! dynamics expect.
//!
//! Text format, one item per line, `#` starts a comment:
//!
//! ```text
//! nodes 5
//! edge 1 3
//! edge 1 4
//! ```

use crate::matrix::MaxPlusMatrix;
use crate::maxplus::MaxPlus;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TopologyError {
    #[error("a topology needs at least one node")]
    NoNodes,
    #[error("edge ({from}, {to}) is out of range for {nodes} nodes")]
    EdgeOutOfRange { from: usize, to: usize, nodes: usize },
    #[error("self-loop at node {node}")]
    SelfLoop { node: usize },
    #[error("duplicate edge ({from}, {to})")]
    DuplicateEdge { from: usize, to: usize },
    #[error("cycle detected through nodes {}", fmt_cycle(.cycle))]
    Cyclic { cycle: Vec<usize> },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn fmt_cycle(cycle: &[usize]) -> String {
    let mut s = String::new();
    for (i, node) in cycle.iter().enumerate() {
        if i > 0 {
            s.push_str(" -> ");
        }
        let _ = write!(s, "{node}");
    }
    let _ = write!(s, " -> {}", cycle.first().unwrap_or(&0));
    s
}

/// A validated acyclic network topology.
///
/// Construction rejects out-of-range endpoints, self-loops, duplicate edges
/// and cycles; everything derived from the edge relation (topological order,
/// longest path length) is computed once and cached. Instances are immutable
/// and freely shareable between threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    nodes: usize,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
    // 0-based internal derivations
    preds: Vec<Vec<usize>>,
    succs: Vec<Vec<usize>>,
    topo_order: Vec<usize>,
    longest_path: usize,
}

impl Topology {
    /// Builds a topology from a node count and 1-based directed edges.
    pub fn new(nodes: usize, edges: &[(usize, usize)]) -> Result<Self, TopologyError> {
        if nodes == 0 {
            return Err(TopologyError::NoNodes);
        }
        let mut seen = std::collections::HashSet::new();
        for &(from, to) in edges {
            if from == 0 || to == 0 || from > nodes || to > nodes {
                return Err(TopologyError::EdgeOutOfRange { from, to, nodes });
            }
            if from == to {
                return Err(TopologyError::SelfLoop { node: from });
            }
            if !seen.insert((from, to)) {
                return Err(TopologyError::DuplicateEdge { from, to });
            }
        }
        if let Some(cycle) = find_cycle(nodes, edges) {
            return Err(TopologyError::Cyclic { cycle });
        }

        let mut preds = vec![Vec::new(); nodes];
        let mut succs = vec![Vec::new(); nodes];
        for &(from, to) in edges {
            succs[from - 1].push(to - 1);
            preds[to - 1].push(from - 1);
        }

        // Kahn's algorithm; smallest index first for a deterministic order.
        let mut in_deg: Vec<usize> = preds.iter().map(Vec::len).collect();
        let mut ready: Vec<usize> = (0..nodes).filter(|&v| in_deg[v] == 0).collect();
        ready.sort_unstable();
        let mut topo_order = Vec::with_capacity(nodes);
        let mut head = 0;
        while head < ready.len() {
            let v = ready[head];
            head += 1;
            topo_order.push(v);
            for &w in &succs[v] {
                in_deg[w] -= 1;
                if in_deg[w] == 0 {
                    let pos = ready[head..].partition_point(|&x| x < w) + head;
                    ready.insert(pos, w);
                }
            }
        }
        debug_assert_eq!(topo_order.len(), nodes);

        // longest path length in edges, by dynamic programming
        let mut depth = vec![0usize; nodes];
        for &v in &topo_order {
            for &w in &succs[v] {
                depth[w] = depth[w].max(depth[v] + 1);
            }
        }
        let longest_path = depth.into_iter().max().unwrap_or(0);

        Ok(Self { nodes, edges: edges.to_vec(), labels: None, preds, succs, topo_order, longest_path })
    }

    /// Attaches display names, one per node.
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.nodes, "one label per node");
        self.labels = Some(labels);
        self
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    /// Edges as given at construction, 1-based.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Display name of a 1-based node.
    pub fn label(&self, node: usize) -> String {
        match &self.labels {
            Some(l) => l[node - 1].clone(),
            None => node.to_string(),
        }
    }

    /// Nodes without predecessors, 1-based ascending.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.nodes).filter(|&v| self.preds[v].is_empty()).map(|v| v + 1).collect()
    }

    /// Nodes without successors, 1-based ascending.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.nodes).filter(|&v| self.succs[v].is_empty()).map(|v| v + 1).collect()
    }

    /// 1-based predecessors of a 1-based node.
    pub fn predecessors(&self, node: usize) -> Vec<usize> {
        self.preds[node - 1].iter().map(|&v| v + 1).collect()
    }

    /// A topological order of the nodes, 1-based.
    pub fn topological_order(&self) -> Vec<usize> {
        self.topo_order.iter().map(|&v| v + 1).collect()
    }

    /// Maximum number of edges over all directed paths.
    pub fn longest_path_length(&self) -> usize {
        self.longest_path
    }

    /// The standard adjacency matrix G: entry (i, j) is 0 when the edge
    /// i → j exists and ε otherwise. `G.pow(q)` is ℰ for every
    /// `q > longest_path_length()`.
    pub fn standard_adjacency(&self) -> MaxPlusMatrix {
        let mut g = MaxPlusMatrix::eps(self.nodes, self.nodes);
        for &(from, to) in &self.edges {
            g.set(from - 1, to - 1, MaxPlus::ZERO);
        }
        g
    }

    pub(crate) fn topo_order_internal(&self) -> &[usize] {
        &self.topo_order
    }

    pub(crate) fn preds_internal(&self) -> &[Vec<usize>] {
        &self.preds
    }

    /// Parses the line-oriented text format.
    pub fn parse(text: &str) -> Result<Self, TopologyError> {
        let mut nodes: Option<usize> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut nodes_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tok = line.split_whitespace();
            match tok.next() {
                Some("nodes") => {
                    if nodes.is_some() {
                        return Err(parse_err(line_no, format!("duplicate `nodes` line (first at line {nodes_line})")));
                    }
                    let n = parse_usize(tok.next(), line_no, "node count")?;
                    if tok.next().is_some() {
                        return Err(parse_err(line_no, "trailing tokens after `nodes N`".into()));
                    }
                    nodes = Some(n);
                    nodes_line = line_no;
                }
                Some("edge") => {
                    if nodes.is_none() {
                        return Err(parse_err(line_no, "`edge` before `nodes` header".into()));
                    }
                    let from = parse_usize(tok.next(), line_no, "edge source")?;
                    let to = parse_usize(tok.next(), line_no, "edge target")?;
                    if tok.next().is_some() {
                        return Err(parse_err(line_no, "trailing tokens after `edge I J`".into()));
                    }
                    edges.push((from, to));
                }
                Some(word) => {
                    return Err(parse_err(line_no, format!("unknown keyword `{word}`")));
                }
                None => unreachable!(),
            }
        }
        let nodes = nodes.ok_or_else(|| parse_err(0, "missing `nodes N` header".into()))?;
        Self::new(nodes, &edges)
    }

    /// Serializes to the text format; `parse(to_text(t)) == t` for every
    /// valid topology, byte for byte on a second round trip.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "nodes {}", self.nodes);
        for &(from, to) in &self.edges {
            let _ = writeln!(out, "edge {from} {to}");
        }
        out
    }
}

fn parse_err(line: usize, message: String) -> TopologyError {
    TopologyError::Parse { line, message }
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize, TopologyError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse::<usize>().map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

/// Searches the 1-based edge relation for a directed cycle and returns one
/// as a node sequence (`[1, 2]` means 1 → 2 → 1). Endpoints must already be
/// within 1..=nodes.
pub fn find_cycle(nodes: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut succs = vec![Vec::new(); nodes];
    for &(from, to) in edges {
        debug_assert!(from >= 1 && from <= nodes && to >= 1 && to <= nodes);
        succs[from - 1].push(to - 1);
    }
    // iterative DFS with an explicit on-path marking
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let mut color = vec![WHITE; nodes];
    let mut path: Vec<usize> = Vec::new();
    for start in 0..nodes {
        if color[start] != WHITE {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        while let Some(&(v, next)) = stack.last() {
            if next == 0 {
                color[v] = GRAY;
                path.push(v);
            }
            if next < succs[v].len() {
                stack.last_mut().unwrap().1 += 1;
                let w = succs[v][next];
                match color[w] {
                    WHITE => stack.push((w, 0)),
                    GRAY => {
                        let pos = path.iter().position(|&x| x == w).unwrap();
                        return Some(path[pos..].iter().map(|&x| x + 1).collect());
                    }
                    _ => {}
                }
            } else {
                color[v] = BLACK;
                path.pop();
                stack.pop();
            }
        }
    }
    None
}
