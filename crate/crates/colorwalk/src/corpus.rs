//! The corpus mini-grammar used by the command line:
//! `trees:n<=7`, `connected:n<=6`, `connected:n==6`,
//! `connected:n<=7:circ<=3`, `squarepath:2..14`, `file:<path>`.

use thiserror::Error;

use crate::families::{build_square_path, enumerate_connected_graphs, enumerate_trees};
use crate::graph::Graph;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("bad corpus spec `{0}`")]
    BadSpec(String),
    #[error("graph error: {0}")]
    Graph(#[from] crate::graph::GraphError),
    #[error("io error reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusSpec {
    /// All labeled trees with sizes in the range.
    Trees { min_n: usize, max_n: usize },
    /// All connected labeled graphs with sizes in the range, optionally
    /// filtered by circumference.
    Connected { min_n: usize, max_n: usize, max_circumference: Option<usize> },
    /// Square paths for each size in the range.
    SquarePaths { min_n: usize, max_n: usize },
    /// A single graph file.
    File(String),
}

impl CorpusSpec {
    pub fn parse(spec: &str) -> Result<CorpusSpec, CorpusError> {
        let bad = || CorpusError::BadSpec(spec.to_string());
        if let Some(path) = spec.strip_prefix("file:") {
            return Ok(CorpusSpec::File(path.to_string()));
        }
        let (family, rest) = spec.split_once(':').ok_or_else(bad)?;
        match family {
            "trees" => {
                let (min_n, max_n) = parse_size_constraint(rest).ok_or_else(bad)?;
                Ok(CorpusSpec::Trees { min_n, max_n })
            }
            "connected" => {
                let (size_part, circ_part) = match rest.split_once(':') {
                    None => (rest, None),
                    Some((s, c)) => (s, Some(c)),
                };
                let (min_n, max_n) = parse_size_constraint(size_part).ok_or_else(bad)?;
                let max_circumference = match circ_part {
                    None => None,
                    Some(c) => {
                        Some(c.strip_prefix("circ<=").and_then(|v| v.parse().ok()).ok_or_else(bad)?)
                    }
                };
                Ok(CorpusSpec::Connected { min_n, max_n, max_circumference })
            }
            "squarepath" => {
                let (lo, hi) = rest.split_once("..").ok_or_else(bad)?;
                let min_n = lo.parse().map_err(|_| bad())?;
                let max_n = hi.parse().map_err(|_| bad())?;
                Ok(CorpusSpec::SquarePaths { min_n, max_n })
            }
            _ => Err(bad()),
        }
    }

    /// Materializes the corpus as identified graphs, in deterministic order.
    pub fn members(&self) -> Result<Vec<(String, Graph)>, CorpusError> {
        match self {
            CorpusSpec::Trees { min_n, max_n } => {
                let mut out = Vec::new();
                for n in *min_n..=*max_n {
                    for (i, g) in enumerate_trees(n)?.enumerate() {
                        out.push((format!("trees:n={n}:{i}"), g));
                    }
                }
                Ok(out)
            }
            CorpusSpec::Connected { min_n, max_n, max_circumference } => {
                let mut out = Vec::new();
                for n in *min_n..=*max_n {
                    for (i, g) in enumerate_connected_graphs(n)?.enumerate() {
                        if let Some(k) = max_circumference {
                            if g.circumference() > *k {
                                continue;
                            }
                        }
                        out.push((format!("connected:n={n}:{i}"), g));
                    }
                }
                Ok(out)
            }
            CorpusSpec::SquarePaths { min_n, max_n } => (*min_n..=*max_n)
                .map(|n| Ok((format!("squarepath:n={n}"), build_square_path(n)?)))
                .collect(),
            CorpusSpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|source| CorpusError::Io { path: path.clone(), source })?;
                Ok(vec![(path.clone(), Graph::parse(&text)?)])
            }
        }
    }
}

/// Parses `n<=K` or `n==K` into an inclusive size range starting at 1.
fn parse_size_constraint(s: &str) -> Option<(usize, usize)> {
    if let Some(v) = s.strip_prefix("n<=") {
        let max = v.parse().ok()?;
        Some((1, max))
    } else if let Some(v) = s.strip_prefix("n==") {
        let n = v.parse().ok()?;
        Some((n, n))
    } else {
        None
    }
}
