//! Simple undirected connected graphs with stable vertex identities.
//!
//! Vertex identities are visible to the harness and the adversary only;
//! exploration strategies never see them.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count must be at least 1")]
    Empty,
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("parallel edge ({0}, {1})")]
    ParallelEdge(usize, usize),
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// An undirected simple connected graph on vertices `0..n`.
///
/// Construction validates simplicity and connectivity; instances are
/// immutable afterwards and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n {
                return Err(GraphError::VertexOutOfRange(a, n));
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange(b, n));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::ParallelEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let g = Graph { n, edges: norm, adj };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as normalized pairs `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Relabels vertices by `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::BadParameter(format!(
                "permutation length {} does not match n = {}",
                perm.len(),
                self.n
            )));
        }
        let edges: Vec<(usize, usize)> =
            self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Graph::new(self.n, &edges)
    }

    /// Length of a longest simple cycle; 0 for acyclic graphs.
    ///
    /// Exact subset dynamic programming; intended for desk scale (n <= 16).
    pub fn circumference(&self) -> usize {
        let n = self.n;
        if self.edges.len() < n {
            // A connected graph with fewer than n edges is a tree.
            return 0;
        }
        let adj_masks: Vec<u32> = (0..n)
            .map(|v| self.adj[v].iter().fold(0u32, |m, &w| m | (1 << w)))
            .collect();
        let mut best = 0usize;
        // Cycles are counted once, anchored at their smallest vertex s.
        for s in 0..n {
            let free = n - s - 1; // vertices strictly above s
            if free + 1 <= best {
                break;
            }
            // dp[mask] = endpoint set of simple paths from s over {s} ∪ (mask shifted above s)
            let mut dp = vec![0u32; 1 << free];
            dp[0] = 1 << s;
            for mask in 0..(1u32 << free) {
                let ends = dp[mask as usize];
                if ends == 0 {
                    continue;
                }
                let size = mask.count_ones() as usize + 1;
                if size >= 3 {
                    // close the cycle back to s
                    if ends & adj_masks[s] & !(1 << s) != 0 {
                        best = best.max(size);
                    }
                }
                let mut rest = ends;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let mut cand = adj_masks[v] >> (s + 1);
                    cand &= !(mask);
                    let mut c = cand;
                    while c != 0 {
                        let w = c.trailing_zeros() as usize;
                        c &= c - 1;
                        dp[(mask | (1 << w)) as usize] |= 1 << (w + s + 1);
                    }
                }
            }
        }
        best
    }

    /// Structural classification used for corpus validation and dispatch.
    pub fn classify(&self) -> Classification {
        Classification {
            is_tree: self.edges.len() == self.n - 1,
            is_bipartite: self.is_bipartite(),
            is_square_path: self.is_square_path(),
        }
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![2u8; self.n];
        let mut queue = std::collections::VecDeque::new();
        side[0] = 0;
        queue.push_back(0usize);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if side[w] == 2 {
                    side[w] = 1 - side[v];
                    queue.push_back(w);
                } else if side[w] == side[v] {
                    return false;
                }
            }
        }
        true
    }

    /// Recognizes squares of paths by reconstructing the spine ordering:
    /// an ordering `v_0..v_{n-1}` such that the edge set is exactly
    /// `{(i, j) : |i - j| <= 2}`.
    pub fn is_square_path(&self) -> bool {
        let n = self.n;
        if n == 1 {
            return true;
        }
        let expected = (n - 1) + n.saturating_sub(2);
        if self.edges.len() != expected {
            return false;
        }
        if n == 2 {
            return true;
        }
        let min_deg = (0..n).map(|v| self.degree(v)).min().unwrap();
        for v0 in (0..n).filter(|&v| self.degree(v) == min_deg) {
            for &v1 in &self.adj[v0] {
                if self.extend_spine(v0, v1) {
                    return true;
                }
            }
        }
        false
    }

    fn extend_spine(&self, v0: usize, v1: usize) -> bool {
        // Each next spine vertex must be adjacent to the two before it.
        let mut used = vec![false; self.n];
        let mut spine = vec![v0, v1];
        used[v0] = true;
        used[v1] = true;
        'grow: while spine.len() < self.n {
            let a = spine[spine.len() - 2];
            let b = spine[spine.len() - 1];
            for &w in &self.adj[b] {
                if !used[w] && self.has_edge(a, w) {
                    used[w] = true;
                    spine.push(w);
                    continue 'grow;
                }
            }
            return false;
        }
        // Edge count equality plus all required adjacencies makes the sets equal.
        spine.windows(2).all(|w| self.has_edge(w[0], w[1]))
            && spine.windows(3).all(|w| self.has_edge(w[0], w[2]))
    }

    /// Parses the graph text format: `n m` on the first line, then `m` lines
    /// `u v`; `#`-prefixed comment lines are permitted anywhere.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line_no, header) = lines.next().ok_or(GraphError::Parse {
            line: 0,
            msg: "empty input".into(),
        })?;
        let mut parts = header.split_whitespace();
        let parse_num = |tok: Option<&str>, line: usize| -> Result<usize, GraphError> {
            tok.ok_or(GraphError::Parse {
                line,
                msg: "expected two integers".into(),
            })?
            .parse()
            .map_err(|_| GraphError::Parse {
                line,
                msg: "invalid integer".into(),
            })
        };
        let n = parse_num(parts.next(), line_no)?;
        let m = parse_num(parts.next(), line_no)?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (line_no, l) = lines.next().ok_or(GraphError::Parse {
                line: 0,
                msg: format!("expected {m} edge lines"),
            })?;
            let mut parts = l.split_whitespace();
            let u = parse_num(parts.next(), line_no)?;
            let v = parse_num(parts.next(), line_no)?;
            edges.push((u, v));
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(GraphError::Parse {
                line: line_no,
                msg: "trailing content after edge list".into(),
            });
        }
        Graph::new(n, &edges)
    }

    /// Canonical text form: bit-exact across runs for identical graphs.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// DOT export with node fill colors taken from an exploration coloring.
    ///
    /// Color values map to a fixed palette: 0 white, 1 red, 2 green, 3 blue,
    /// 4 gray, 5 orange, 6 purple, 7 black; larger values cycle through the
    /// non-white entries.
    pub fn to_dot(&self, coloring: Option<&[u8]>) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph g {{");
        let _ = writeln!(out, "  node [style=filled];");
        for v in 0..self.n {
            let c = coloring.map_or(0, |cs| cs[v]);
            let _ = writeln!(
                out,
                "  {v} [fillcolor=\"{}\", label=\"{v}:{c}\"];",
                dot_color(c)
            );
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        let _ = writeln!(out, "}}");
        out
    }
}

const DOT_PALETTE: [&str; 8] = [
    "white", "red", "green", "blue", "gray", "orange", "purple", "black",
];

fn dot_color(c: u8) -> &'static str {
    if c == 0 {
        DOT_PALETTE[0]
    } else {
        DOT_PALETTE[1 + ((c as usize - 1) % (DOT_PALETTE.len() - 1))]
    }
}

/// Exact flags computed by [`Graph::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub is_tree: bool,
    pub is_bipartite: bool,
    pub is_square_path: bool,
}
