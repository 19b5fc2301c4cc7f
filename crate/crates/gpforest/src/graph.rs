//! Graphs with ordered oriented edges, marked vertices and a removed vertex.
//!
//! Vertices and edges are 1-based. The edge list order is significant: edge
//! variables of the polynomial modules are indexed by position in this list.
//! Graphs are connected, loop-free multigraphs (parallel edges allowed) and
//! immutable after construction.
//!
//! Text format (one directive per line, `#` starts a comment):
//!
//! ```text
//! v 3
//! marked 1 2 3
//! remove 3
//! e 1 2
//! e 2 3
//! e 3 1
//! ```

use std::fmt;

use thiserror::Error;

use crate::rng::SplitMix64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph needs at least one vertex")]
    NoVertices,
    #[error("vertex {0} out of range")]
    InvalidVertex(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("marked vertices must be distinct")]
    DuplicateMarked,
    #[error("graph is not connected")]
    NotConnected,
    #[error("deleting edge {0} disconnects the graph")]
    Disconnects(usize),
    #[error("edge index {0} out of range")]
    InvalidEdgeIndex(usize),
    #[error("need at least {needed} edges for {vertices} vertices")]
    TooFewEdges { vertices: usize, needed: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Connected multigraph with oriented, ordered edges.
#[derive(Debug, Clone)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    marked: Vec<usize>,
    removed_vertex: usize,
    label: String,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        // The label is presentation only.
        self.vertex_count == other.vertex_count
            && self.edges == other.edges
            && self.marked == other.marked
            && self.removed_vertex == other.removed_vertex
    }
}

impl Eq for Graph {}

/// Result of contracting an edge: the new graph plus how old edge indices
/// map to new ones (`None` for the contracted edge and any parallel edge
/// dropped as a self-loop).
#[derive(Debug, Clone)]
pub struct Contraction {
    pub graph: Graph,
    pub edge_map: Vec<Option<usize>>,
    pub dropped_loops: Vec<usize>,
}

impl Graph {
    pub fn new(
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
        marked: Vec<usize>,
        removed_vertex: Option<usize>,
    ) -> Result<Graph, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::NoVertices);
        }
        // Connectivity needs at least v-1 edges; rejecting here keeps all
        // later allocations proportional to the edge list.
        if edges.len() + 1 < vertex_count {
            return Err(GraphError::NotConnected);
        }
        for &(t, h) in &edges {
            if t == 0 || t > vertex_count {
                return Err(GraphError::InvalidVertex(t));
            }
            if h == 0 || h > vertex_count {
                return Err(GraphError::InvalidVertex(h));
            }
            if t == h {
                return Err(GraphError::SelfLoop(t));
            }
        }
        for &m in &marked {
            if m == 0 || m > vertex_count {
                return Err(GraphError::InvalidVertex(m));
            }
        }
        for (i, &m) in marked.iter().enumerate() {
            if marked[..i].contains(&m) {
                return Err(GraphError::DuplicateMarked);
            }
        }
        let removed = match removed_vertex {
            Some(r) => {
                if r == 0 || r > vertex_count {
                    return Err(GraphError::InvalidVertex(r));
                }
                r
            }
            // Highest-numbered vertex, preferring one outside the marked set.
            None => (1..=vertex_count)
                .rev()
                .find(|v| !marked.contains(v))
                .unwrap_or(vertex_count),
        };
        let g = Graph {
            vertex_count,
            edges,
            marked,
            removed_vertex: removed,
            label: String::new(),
        };
        if !g.connected_without(None) {
            return Err(GraphError::NotConnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Endpoints (tail, head) of the 1-based edge index.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e - 1]
    }

    pub fn marked(&self) -> &[usize] {
        &self.marked
    }

    pub fn removed_vertex(&self) -> usize {
        self.removed_vertex
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Graph {
        self.label = label.into();
        self
    }

    pub fn with_marked(&self, marked: Vec<usize>) -> Result<Graph, GraphError> {
        let mut g = Graph::new(self.vertex_count, self.edges.clone(), marked, None)?;
        g.label = self.label.clone();
        Ok(g)
    }

    pub fn with_removed_vertex(&self, removed: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::new(
            self.vertex_count,
            self.edges.clone(),
            self.marked.clone(),
            Some(removed),
        )?;
        g.label = self.label.clone();
        Ok(g)
    }

    fn connected_without(&self, skip_edge: Option<usize>) -> bool {
        let mut adj = vec![Vec::new(); self.vertex_count + 1];
        for (i, &(t, h)) in self.edges.iter().enumerate() {
            if Some(i + 1) == skip_edge {
                continue;
            }
            adj[t].push(h);
            adj[h].push(t);
        }
        let mut seen = vec![false; self.vertex_count + 1];
        let mut stack = vec![1];
        seen[1] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// Removes edge `e`; remaining edges keep their relative order.
    pub fn delete(&self, e: usize) -> Result<Graph, GraphError> {
        if e == 0 || e > self.edges.len() {
            return Err(GraphError::InvalidEdgeIndex(e));
        }
        if !self.connected_without(Some(e)) {
            return Err(GraphError::Disconnects(e));
        }
        let mut edges = self.edges.clone();
        edges.remove(e - 1);
        Ok(Graph {
            vertex_count: self.vertex_count,
            edges,
            marked: self.marked.clone(),
            removed_vertex: self.removed_vertex,
            label: String::new(),
        })
    }

    /// Contracts edge `e`, identifying its endpoints; the lower vertex id
    /// survives. Parallel edges that become self-loops are dropped and
    /// reported in the result.
    pub fn contract(&self, e: usize) -> Result<Contraction, GraphError> {
        if e == 0 || e > self.edges.len() {
            return Err(GraphError::InvalidEdgeIndex(e));
        }
        let (t, h) = self.edges[e - 1];
        let keep = t.min(h);
        let gone = t.max(h);
        let map_v = |v: usize| -> usize {
            if v == gone {
                keep
            } else if v > gone {
                v - 1
            } else {
                v
            }
        };
        let mut edges = Vec::with_capacity(self.edges.len() - 1);
        let mut edge_map = vec![None; self.edges.len()];
        let mut dropped_loops = Vec::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if i + 1 == e {
                continue;
            }
            let (a, b) = (map_v(a), map_v(b));
            if a == b {
                dropped_loops.push(i + 1);
                continue;
            }
            edges.push((a, b));
            edge_map[i] = Some(edges.len());
        }
        let mut marked = Vec::new();
        for &m in &self.marked {
            let m = map_v(m);
            if !marked.contains(&m) {
                marked.push(m);
            }
        }
        let graph = Graph::new(self.vertex_count - 1, edges, marked, None)?;
        Ok(Contraction {
            graph,
            edge_map,
            dropped_loops,
        })
    }

    /// Inserts new oriented edges at positions 1..=k; existing edge indices
    /// shift up by k.
    pub fn augment_front(&self, new_edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut edges = Vec::with_capacity(self.edges.len() + new_edges.len());
        for &(t, h) in new_edges {
            if t == 0 || t > self.vertex_count {
                return Err(GraphError::InvalidVertex(t));
            }
            if h == 0 || h > self.vertex_count {
                return Err(GraphError::InvalidVertex(h));
            }
            if t == h {
                return Err(GraphError::SelfLoop(t));
            }
            edges.push((t, h));
        }
        edges.extend_from_slice(&self.edges);
        Ok(Graph {
            vertex_count: self.vertex_count,
            edges,
            marked: self.marked.clone(),
            removed_vertex: self.removed_vertex,
            label: String::new(),
        })
    }

    /// Signed incidence matrix with the removed vertex's row deleted:
    /// column j has +1 at the tail and -1 at the head of edge j.
    pub fn incidence_matrix(&self) -> Vec<Vec<i64>> {
        self.incidence_rows(true)
    }

    /// Full signed incidence matrix, all vertex rows in order.
    pub fn incidence_matrix_full(&self) -> Vec<Vec<i64>> {
        self.incidence_rows(false)
    }

    fn incidence_rows(&self, drop_removed: bool) -> Vec<Vec<i64>> {
        let mut rows = Vec::new();
        for v in 1..=self.vertex_count {
            if drop_removed && v == self.removed_vertex {
                continue;
            }
            let mut row = vec![0i64; self.edges.len()];
            for (j, &(t, h)) in self.edges.iter().enumerate() {
                if t == v {
                    row[j] += 1;
                }
                if h == v {
                    row[j] -= 1;
                }
            }
            rows.push(row);
        }
        rows
    }

    /// Canonical text rendering; `parse` of the output returns an equal graph.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("v {}\n", self.vertex_count));
        if !self.marked.is_empty() {
            out.push_str("marked");
            for m in &self.marked {
                out.push_str(&format!(" {m}"));
            }
            out.push('\n');
        }
        out.push_str(&format!("remove {}\n", self.removed_vertex));
        for &(t, h) in &self.edges {
            out.push_str(&format!("e {t} {h}\n"));
        }
        out
    }

    pub fn parse(input: &str) -> Result<Graph, ParseError> {
        let mut vertex_count: Option<usize> = None;
        let mut marked: Vec<usize> = Vec::new();
        let mut removed: Option<usize> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (idx, raw) in input.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            let mut tok = line.split_whitespace();
            let Some(head) = tok.next() else { continue };
            let syntax = |msg: String| ParseError::Syntax {
                line: line_no,
                msg,
            };
            let parse_num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| syntax(format!("expected a positive integer, got `{s}`")))
            };
            match head {
                "v" => {
                    if vertex_count.is_some() {
                        return Err(syntax("duplicate `v` header".into()));
                    }
                    let n = tok
                        .next()
                        .ok_or_else(|| syntax("`v` needs a vertex count".into()))?;
                    vertex_count = Some(parse_num(n)?);
                }
                "marked" => {
                    if vertex_count.is_none() {
                        return Err(syntax("`marked` before `v` header".into()));
                    }
                    for t in tok.by_ref() {
                        marked.push(parse_num(t)?);
                    }
                    continue;
                }
                "remove" => {
                    if vertex_count.is_none() {
                        return Err(syntax("`remove` before `v` header".into()));
                    }
                    let r = tok
                        .next()
                        .ok_or_else(|| syntax("`remove` needs a vertex id".into()))?;
                    removed = Some(parse_num(r)?);
                }
                "e" => {
                    if vertex_count.is_none() {
                        return Err(syntax("edge before `v` header".into()));
                    }
                    let t = tok
                        .next()
                        .ok_or_else(|| syntax("`e` needs tail and head".into()))?;
                    let h = tok
                        .next()
                        .ok_or_else(|| syntax("`e` needs tail and head".into()))?;
                    edges.push((parse_num(t)?, parse_num(h)?));
                }
                other => {
                    return Err(syntax(format!("unknown directive `{other}`")));
                }
            }
            if let Some(extra) = tok.next() {
                return Err(ParseError::Syntax {
                    line: line_no,
                    msg: format!("unexpected trailing token `{extra}`"),
                });
            }
        }
        let vertex_count = vertex_count.ok_or(ParseError::Syntax {
            line: input.lines().count().max(1),
            msg: "missing `v` header".into(),
        })?;
        Ok(Graph::new(vertex_count, edges, marked, removed)?)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.label.is_empty() {
            write!(f, "g{}e{}", self.vertex_count, self.edges.len())
        } else {
            write!(f, "{}", self.label)
        }
    }
}

fn default_marked(vertex_count: usize) -> Vec<usize> {
    (1..=vertex_count.min(4)).collect()
}

/// Complete graph on n vertices, edges in lexicographic order.
pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            edges.push((i, j));
        }
    }
    Graph::new(n, edges, default_marked(n), None)
        .expect("complete graph is valid")
        .with_label(format!("k{n}"))
}

/// Cycle on n >= 3 vertices: 1-2-...-n-1.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
    edges.push((n, 1));
    Graph::new(n, edges, default_marked(n), None)
        .expect("cycle is valid")
        .with_label(format!("c{n}"))
}

/// Wheel with n >= 3 rim vertices 1..=n and hub n+1; rim edges first,
/// then spokes.
pub fn wheel(rim: usize) -> Graph {
    assert!(rim >= 3, "wheel needs at least 3 rim vertices");
    let mut edges: Vec<(usize, usize)> = (1..rim).map(|i| (i, i + 1)).collect();
    edges.push((rim, 1));
    for i in 1..=rim {
        edges.push((i, rim + 1));
    }
    Graph::new(rim + 1, edges, default_marked(rim), None)
        .expect("wheel is valid")
        .with_label(format!("w{rim}"))
}

/// Random connected multigraph: a random spanning tree plus random extra
/// edges, deterministic in the seed.
pub fn random_connected(
    vertices: usize,
    edge_count: usize,
    seed: u64,
) -> Result<Graph, GraphError> {
    if vertices == 0 {
        return Err(GraphError::NoVertices);
    }
    if vertices > 1 && edge_count < vertices - 1 {
        return Err(GraphError::TooFewEdges {
            vertices,
            needed: vertices - 1,
        });
    }
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::with_capacity(edge_count);
    for v in 2..=vertices {
        let u = 1 + rng.below((v - 1) as u64) as usize;
        edges.push(if rng.bool() { (u, v) } else { (v, u) });
    }
    while edges.len() < edge_count {
        let a = 1 + rng.below(vertices as u64) as usize;
        let b = 1 + rng.below(vertices as u64) as usize;
        if a != b {
            edges.push((a, b));
        }
    }
    // Shuffle so tree edges do not always lead the list.
    for i in (1..edges.len()).rev() {
        let j = rng.below((i + 1) as u64) as usize;
        edges.swap(i, j);
    }
    Ok(
        Graph::new(vertices, edges, default_marked(vertices), None)?
            .with_label(format!("rand-v{vertices}-e{edge_count}-s{seed}")),
    )
}

/// Built-in family lookup: `k<n>`, `w<rim>`, `c<n>`, `rand-v<V>-e<E>-s<S>`.
pub fn family_by_name(name: &str) -> Option<Graph> {
    if let Some(rest) = name.strip_prefix("rand-") {
        let mut v = None;
        let mut e = None;
        let mut s = None;
        for part in rest.split('-') {
            match part.chars().next() {
                Some('v') => v = part[1..].parse::<usize>().ok(),
                Some('e') => e = part[1..].parse::<usize>().ok(),
                Some('s') => s = part[1..].parse::<u64>().ok(),
                _ => return None,
            }
        }
        return random_connected(v?, e?, s?).ok();
    }
    if let Some(n) = name.strip_prefix('k') {
        let n = n.parse::<usize>().ok()?;
        if (2..=9).contains(&n) {
            return Some(complete(n));
        }
        return None;
    }
    if let Some(n) = name.strip_prefix('w') {
        let n = n.parse::<usize>().ok()?;
        if (3..=8).contains(&n) {
            return Some(wheel(n));
        }
        return None;
    }
    if let Some(n) = name.strip_prefix('c') {
        let n = n.parse::<usize>().ok()?;
        if (3..=9).contains(&n) {
            return Some(cycle(n));
        }
        return None;
    }
    None
}

/// Names of the built-in families, for listings.
pub fn family_names() -> Vec<String> {
    let mut names: Vec<String> = (3..=7).map(|n| format!("k{n}")).collect();
    names.extend((4..=6).map(|n| format!("w{n}")));
    names.extend((3..=6).map(|n| format!("c{n}")));
    names.push("rand-v<V>-e<E>-s<SEED>".into());
    names
}

pub fn triangle() -> Graph {
    cycle(3)
}
