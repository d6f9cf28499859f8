//! Budget-bounded strategy synthesis and refutation.
//!
//! Decides whether any deterministic memoryless strategy with at most
//! `budget` colors explores a given set of graphs under every start and
//! every adversary choice. The search backtracks over an explicit decision
//! table: OR over the candidate decisions at each newly observed
//! environment, AND over all adversary branches, graphs, and starts. An
//! entry, once committed on the current search branch, binds every later
//! occurrence of its environment.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::graph::Graph;
use crate::model::{observe, Color, Environment, MoveDecision, RunState, Strategy};

/// An explicit finite strategy: a map from canonical environments to
/// decisions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionTable {
    pub entries: BTreeMap<Environment, MoveDecision>,
    pub palette: Color,
    pub recoloring: bool,
}

impl DecisionTable {
    pub fn new(palette: Color, recoloring: bool) -> DecisionTable {
        DecisionTable { entries: BTreeMap::new(), palette, recoloring }
    }

    /// Serializes one line per entry, sorted by environment; bit-exact.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# palette={} recoloring={}", self.palette, self.recoloring);
        for (env, decision) in &self.entries {
            match decision {
                MoveDecision::Move { assign, target } => {
                    let _ = writeln!(out, "env={} -> assign={assign} goto={target}", env.to_text());
                }
                MoveDecision::Stop => {
                    let _ = writeln!(out, "env={} -> STOP", env.to_text());
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Option<DecisionTable> {
        let mut palette = 0;
        let mut recoloring = false;
        let mut entries = BTreeMap::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(meta) = line.strip_prefix('#') {
                for tok in meta.split_whitespace() {
                    if let Some(v) = tok.strip_prefix("palette=") {
                        palette = v.parse().ok()?;
                    } else if let Some(v) = tok.strip_prefix("recoloring=") {
                        recoloring = v.parse().ok()?;
                    }
                }
                continue;
            }
            let rest = line.strip_prefix("env=")?;
            let (env_text, decision_text) = rest.split_once(" -> ")?;
            let env = Environment::parse(env_text)?;
            let decision = if decision_text == "STOP" {
                MoveDecision::Stop
            } else {
                let (a, t) = decision_text.split_once(' ')?;
                let assign = a.strip_prefix("assign=")?.parse().ok()?;
                let target = t.strip_prefix("goto=")?.parse().ok()?;
                MoveDecision::Move { assign, target }
            };
            entries.insert(env, decision);
        }
        Some(DecisionTable { entries, palette, recoloring })
    }
}

impl Strategy for DecisionTable {
    fn name(&self) -> String {
        format!("table:{}c{}", self.palette, if self.recoloring { ":recolor" } else { "" })
    }

    fn palette(&self) -> Option<Color> {
        Some(self.palette)
    }

    fn recoloring_allowed(&self) -> bool {
        self.recoloring
    }

    fn decide(&self, env: &Environment) -> Option<MoveDecision> {
        self.entries.get(env).copied()
    }
}

/// Outcome of a synthesis run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SynthesisResult {
    Realizable { table: DecisionTable, nodes_explored: u64 },
    Unrealizable { nodes_explored: u64 },
    Unknown { nodes_explored: u64 },
}

impl SynthesisResult {
    pub fn nodes_explored(&self) -> u64 {
        match self {
            SynthesisResult::Realizable { nodes_explored, .. }
            | SynthesisResult::Unrealizable { nodes_explored }
            | SynthesisResult::Unknown { nodes_explored } => *nodes_explored,
        }
    }
}

/// Resource caps for synthesis.
#[derive(Debug, Clone, Copy)]
pub struct SynthesisCaps {
    /// Maximum number of search nodes (play steps examined).
    pub max_nodes: u64,
}

impl Default for SynthesisCaps {
    fn default() -> Self {
        SynthesisCaps { max_nodes: 2_000_000_000 }
    }
}

/// The candidate decisions at a new environment, in canonical order:
/// moves with assigns ascending (0 means leaving the vertex uncolored, or
/// erasing under recoloring) and targets ascending, then `Stop` last.
fn candidate_decisions(
    env: &Environment,
    budget: Color,
    recoloring: bool,
    pruning: bool,
) -> Vec<MoveDecision> {
    let assigns: Vec<Color> = if recoloring || env.self_color == 0 {
        (0..=budget).collect()
    } else {
        vec![env.self_color]
    };
    let targets: Vec<Color> = env.neighbor_counts.keys().copied().collect();
    let mut out = Vec::with_capacity(assigns.len() * targets.len() + 1);
    for &assign in &assigns {
        for &target in &targets {
            out.push(MoveDecision::Move { assign, target });
        }
    }
    out.push(MoveDecision::Stop);
    if pruning {
        prune_uniform(env, &mut out);
    }
    out
}

/// Heuristic pruning valid only in the uniform setting (the strategy must
/// explore all graphs, not merely the given set):
/// - on a colored vertex with an uncolored neighbor, only moves into the
///   uncolored class survive;
/// - on an uncolored vertex whose only colored neighbor is its predecessor
///   and which has uncolored neighbors, only moves into the uncolored class
///   survive;
/// - on an uncolored vertex with a colored neighbor, the vertex must be
///   colored now.
fn prune_uniform(env: &Environment, decisions: &mut Vec<MoveDecision>) {
    let colored_neighbors = env.colored_count();
    if env.self_color != 0 && env.count(0) > 0 {
        decisions.retain(|d| matches!(d, MoveDecision::Move { target: 0, .. }));
        return;
    }
    if env.self_color == 0 {
        if colored_neighbors == 1 && env.count(0) > 0 {
            decisions.retain(|d| matches!(d, MoveDecision::Move { target: 0, .. }));
        }
        if colored_neighbors > 0 {
            decisions.retain(|d| !matches!(d, MoveDecision::Move { assign: 0, .. }));
        }
    }
}

/// Append-only play history shared across sibling branches.
type Path = Option<std::rc::Rc<PathCell>>;

struct PathCell {
    key: (usize, Vec<Color>),
    prev: Path,
}

fn path_contains(path: &Path, key: &(usize, Vec<Color>)) -> bool {
    let mut cur = path;
    while let Some(cell) = cur {
        if &cell.key == key {
            return true;
        }
        cur = &cell.prev;
    }
    false
}

/// A pending proof obligation: one play prefix that still has to succeed.
#[derive(Clone)]
struct Obligation {
    graph: usize,
    start: usize,
    position: usize,
    coloring: Vec<Color>,
    /// Bitmask of visited vertices along this play.
    visited: u32,
    /// States already seen along this play, for loop detection.
    path: Path,
}

struct Searcher<'a> {
    graphs: &'a [Graph],
    budget: Color,
    recoloring: bool,
    pruning: bool,
    caps: SynthesisCaps,
    table: BTreeMap<Environment, MoveDecision>,
    nodes: u64,
    capped: bool,
}

impl<'a> Searcher<'a> {
    /// Discharges all obligations on the stack; true when every play can be
    /// completed successfully under some extension of the current table.
    ///
    /// Obligations whose environments are already committed are discharged
    /// iteratively; recursion happens only when a fresh environment forces
    /// an OR choice, so the recursion depth is bounded by the number of
    /// distinct environments.
    fn solve(&mut self, mut obligations: Vec<Obligation>) -> bool {
        loop {
            let ob = match obligations.pop() {
                None => return true,
                Some(ob) => ob,
            };
            self.nodes += 1;
            if self.nodes > self.caps.max_nodes {
                self.capped = true;
                return false;
            }

            let g = &self.graphs[ob.graph];
            let state_key = (ob.position, ob.coloring.clone());
            if path_contains(&ob.path, &state_key) {
                // The adversary replays its choices forever.
                return false;
            }
            let env = Environment::new(
                ob.coloring[ob.position],
                g.neighbors(ob.position).iter().map(|&w| ob.coloring[w]),
            );

            if let Some(&decision) = self.table.get(&env) {
                match self.expand(&ob, decision, state_key) {
                    None => return false,
                    Some(children) => {
                        obligations.extend(children.into_iter().rev());
                        continue;
                    }
                }
            }

            for decision in
                candidate_decisions(&env, self.budget, self.recoloring, self.pruning)
            {
                if !self.legal(&env, decision) {
                    continue;
                }
                let children = match self.expand(&ob, decision, state_key.clone()) {
                    None => continue,
                    Some(children) => children,
                };
                self.table.insert(env.clone(), decision);
                let mut next = obligations.clone();
                next.extend(children.into_iter().rev());
                if self.solve(next) {
                    return true;
                }
                self.table.remove(&env);
                if self.capped {
                    return false;
                }
            }
            return false;
        }
    }

    fn legal(&self, env: &Environment, decision: MoveDecision) -> bool {
        match decision {
            MoveDecision::Stop => true,
            MoveDecision::Move { assign, target } => {
                env.count(target) > 0
                    && (self.recoloring || env.self_color == 0 || assign == env.self_color)
                    && assign <= self.budget
            }
        }
    }

    /// Applies a decision to an obligation. `None` when the play fails; the
    /// successor obligations (empty for a successful stop) otherwise, in
    /// ascending order of the chosen vertex.
    fn expand(
        &self,
        ob: &Obligation,
        decision: MoveDecision,
        state_key: (usize, Vec<Color>),
    ) -> Option<Vec<Obligation>> {
        let g = &self.graphs[ob.graph];
        let full = (1u32 << g.vertex_count()) - 1;
        match decision {
            MoveDecision::Stop => {
                (ob.position == ob.start && ob.visited == full).then(Vec::new)
            }
            MoveDecision::Move { assign, target } => {
                let mut coloring = ob.coloring.clone();
                coloring[ob.position] = assign;
                let path: Path = Some(std::rc::Rc::new(PathCell {
                    key: state_key,
                    prev: ob.path.clone(),
                }));
                let children = g
                    .neighbors(ob.position)
                    .iter()
                    .copied()
                    .filter(|&w| ob.coloring[w] == target)
                    .map(|w| Obligation {
                        graph: ob.graph,
                        start: ob.start,
                        position: w,
                        coloring: coloring.clone(),
                        visited: ob.visited | (1 << w),
                        path: path.clone(),
                    })
                    .collect();
                Some(children)
            }
        }
    }
}

fn initial_obligations(graphs: &[Graph]) -> Vec<Obligation> {
    let mut obligations = Vec::new();
    // Pushed in reverse so that graph 0, start 0 is examined first.
    for (gi, g) in graphs.iter().enumerate().rev() {
        for start in (0..g.vertex_count()).rev() {
            obligations.push(Obligation {
                graph: gi,
                start,
                position: start,
                coloring: vec![0; g.vertex_count()],
                visited: 1 << start,
                path: None,
            });
        }
    }
    obligations
}

/// Decides whether some strategy with at most `budget` colors explores
/// every graph of the set from every start under every adversary. One
/// table is shared across all graphs and starts.
pub fn synthesize(
    graphs: &[Graph],
    budget: Color,
    recoloring: bool,
    caps: SynthesisCaps,
) -> SynthesisResult {
    synthesize_inner(graphs, budget, recoloring, false, caps)
}

/// Like [`synthesize`], but optionally prunes decisions that no strategy
/// required to explore all graphs may take. Only meaningful for reproducing
/// uniform lower bounds; off by default there and in [`synthesize`].
pub fn refute_with_pruning(
    graphs: &[Graph],
    budget: Color,
    lemma_pruning: bool,
    caps: SynthesisCaps,
) -> SynthesisResult {
    synthesize_inner(graphs, budget, false, lemma_pruning, caps)
}

fn synthesize_inner(
    graphs: &[Graph],
    budget: Color,
    recoloring: bool,
    pruning: bool,
    caps: SynthesisCaps,
) -> SynthesisResult {
    assert!(budget >= 1, "budget must be at least 1");
    let mut searcher = Searcher {
        graphs,
        budget,
        recoloring,
        pruning,
        caps,
        table: BTreeMap::new(),
        nodes: 0,
        capped: false,
    };
    let found = searcher.solve(initial_obligations(graphs));
    if found {
        let mut table = DecisionTable::new(budget, recoloring);
        table.entries = searcher.table;
        SynthesisResult::Realizable { table, nodes_explored: searcher.nodes }
    } else if searcher.capped {
        SynthesisResult::Unknown { nodes_explored: searcher.nodes }
    } else {
        SynthesisResult::Unrealizable { nodes_explored: searcher.nodes }
    }
}

/// All environments any strategy with the given budget could ever observe
/// on `graphs`, computed as a fixed point over states reachable under any
/// legal decision sequence (a superset of any single table's reach).
pub fn reachable_environments(
    graphs: &[Graph],
    budget: Color,
    recoloring: bool,
) -> Vec<Environment> {
    let mut envs: std::collections::BTreeSet<Environment> = std::collections::BTreeSet::new();
    for g in graphs {
        let mut seen: std::collections::HashSet<(usize, Vec<Color>)> =
            std::collections::HashSet::new();
        let mut stack: Vec<(usize, Vec<Color>)> = (0..g.vertex_count())
            .map(|s| (s, vec![0; g.vertex_count()]))
            .collect();
        while let Some((pos, coloring)) = stack.pop() {
            if !seen.insert((pos, coloring.clone())) {
                continue;
            }
            let state = RunState {
                position: pos,
                coloring: coloring.clone(),
                visited: Vec::new(),
                steps: 0,
            };
            let env = observe(g, &state);
            for decision in candidate_decisions(&env, budget, recoloring, false) {
                if let MoveDecision::Move { assign, target } = decision {
                    if !recoloring && env.self_color != 0 && assign != env.self_color {
                        continue;
                    }
                    let mut next = coloring.clone();
                    next[pos] = assign;
                    for &w in g.neighbors(pos) {
                        if coloring[w] == target {
                            stack.push((w, next.clone()));
                        }
                    }
                }
            }
            envs.insert(env);
        }
    }
    envs.into_iter().collect()
}

/// Exhaustive independent check: enumerates every total decision table over
/// the reachable environment closure and tests each one by direct play
/// enumeration. Realizable iff some table succeeds everywhere.
///
/// `max_env` bounds the closure size; exceeding it aborts with `Unknown`.
pub fn enumerate_tables_oracle(
    graphs: &[Graph],
    budget: Color,
    recoloring: bool,
    max_env: usize,
) -> SynthesisResult {
    let envs = reachable_environments(graphs, budget, recoloring);
    if envs.len() > max_env {
        return SynthesisResult::Unknown { nodes_explored: 0 };
    }
    let options: Vec<Vec<MoveDecision>> = envs
        .iter()
        .map(|e| candidate_decisions(e, budget, recoloring, false))
        .collect();
    let mut choice = vec![0usize; envs.len()];
    let mut tables_tried: u64 = 0;
    loop {
        tables_tried += 1;
        let mut table = DecisionTable::new(budget, recoloring);
        for (i, env) in envs.iter().enumerate() {
            table.entries.insert(env.clone(), options[i][choice[i]]);
        }
        if graphs.iter().all(|g| table_succeeds_everywhere(g, &table)) {
            return SynthesisResult::Realizable { table, nodes_explored: tables_tried };
        }
        // Odometer increment over the per-environment option lists.
        let mut i = 0;
        loop {
            if i == envs.len() {
                return SynthesisResult::Unrealizable { nodes_explored: tables_tried };
            }
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Direct play enumeration of one table on one graph: every start, every
/// adversary branch, with per-play loop detection.
fn table_succeeds_everywhere(g: &Graph, table: &DecisionTable) -> bool {
    (0..g.vertex_count()).all(|start| {
        let state = RunState::initial(g, start);
        let mut path = Vec::new();
        play_succeeds(g, table, start, state, &mut path)
    })
}

fn play_succeeds(
    g: &Graph,
    table: &DecisionTable,
    start: usize,
    state: RunState,
    path: &mut Vec<(usize, Vec<Color>)>,
) -> bool {
    let key = (state.position, state.coloring.clone());
    if path.contains(&key) {
        return false;
    }
    let env = observe(g, &state);
    let decision = match table.decide(&env) {
        None => return false,
        Some(d) => d,
    };
    match decision {
        MoveDecision::Stop => state.position == start && state.all_visited(),
        MoveDecision::Move { assign, target } => {
            if env.count(target) == 0
                || (!table.recoloring && env.self_color != 0 && assign != env.self_color)
                || assign > table.palette
            {
                return false;
            }
            let mut coloring = state.coloring.clone();
            coloring[state.position] = assign;
            path.push(key);
            let ok = g
                .neighbors(state.position)
                .iter()
                .copied()
                .filter(|&w| state.coloring[w] == target)
                .all(|w| {
                    let mut visited = state.visited.clone();
                    visited[w] = true;
                    let child = RunState {
                        position: w,
                        coloring: coloring.clone(),
                        visited,
                        steps: state.steps + 1,
                    };
                    play_succeeds(g, table, start, child, path)
                });
            path.pop();
            ok
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::verify_all;
    use crate::families::{build_complete, build_path};

    fn caps() -> SynthesisCaps {
        SynthesisCaps { max_nodes: 50_000_000 }
    }

    #[test]
    fn triangle_needs_two_colors() {
        let triangle = build_complete(3).unwrap();
        let r = synthesize(std::slice::from_ref(&triangle), 1, false, caps());
        assert!(matches!(r, SynthesisResult::Unrealizable { .. }), "{r:?}");
        let r = synthesize(std::slice::from_ref(&triangle), 2, false, caps());
        match r {
            SynthesisResult::Realizable { table, .. } => {
                assert!(verify_all(&triangle, &table).all_succeed());
            }
            other => panic!("expected realizable, got {other:?}"),
        }
    }

    #[test]
    fn p2_needs_one_color() {
        let p2 = build_path(2).unwrap();
        let r = synthesize(std::slice::from_ref(&p2), 1, false, caps());
        match r {
            SynthesisResult::Realizable { table, .. } => {
                assert!(verify_all(&p2, &table).all_succeed());
            }
            other => panic!("expected realizable, got {other:?}"),
        }
    }

    #[test]
    fn oracle_matches_engine_on_p3() {
        let p3 = build_path(3).unwrap();
        let graphs = [p3];
        let oracle = enumerate_tables_oracle(&graphs, 1, false, 12);
        let engine = synthesize(&graphs, 1, false, caps());
        assert_eq!(
            matches!(oracle, SynthesisResult::Realizable { .. }),
            matches!(engine, SynthesisResult::Realizable { .. }),
            "oracle {oracle:?} vs engine {engine:?}"
        );
    }

    #[test]
    fn oracle_examples() {
        let triangle = build_complete(3).unwrap();
        let r = enumerate_tables_oracle(std::slice::from_ref(&triangle), 1, false, 12);
        assert!(matches!(r, SynthesisResult::Unrealizable { .. }), "{r:?}");
        let p2 = build_path(2).unwrap();
        let r = enumerate_tables_oracle(std::slice::from_ref(&p2), 1, false, 12);
        assert!(matches!(r, SynthesisResult::Realizable { .. }), "{r:?}");
    }

    #[test]
    fn monotone_in_budget_and_graph_set() {
        let p3 = build_path(3).unwrap();
        let p2 = build_path(2).unwrap();
        for budget in 1..=3 {
            let single = synthesize(std::slice::from_ref(&p3), budget, false, caps());
            if matches!(single, SynthesisResult::Realizable { .. }) {
                let larger = synthesize(std::slice::from_ref(&p3), budget + 1, false, caps());
                assert!(matches!(larger, SynthesisResult::Realizable { .. }));
            } else {
                let both = synthesize(&[p2.clone(), p3.clone()], budget, false, caps());
                assert!(matches!(both, SynthesisResult::Unrealizable { .. }));
            }
        }
    }

    #[test]
    fn pruning_only_shrinks_the_search_space() {
        // Pruning removes OR options, so pruned-Realizable implies plain-
        // Realizable and plain-Unrealizable implies pruned-Unrealizable;
        // the converses hold only in the uniform setting.
        let triangle = build_complete(3).unwrap();
        let p4 = build_path(4).unwrap();
        for (graphs, budget) in [
            (vec![triangle], 1),
            (vec![p4.clone()], 1),
            (vec![p4], 2),
        ] {
            let plain = refute_with_pruning(&graphs, budget, false, caps());
            let pruned = refute_with_pruning(&graphs, budget, true, caps());
            if matches!(pruned, SynthesisResult::Realizable { .. }) {
                assert!(matches!(plain, SynthesisResult::Realizable { .. }), "budget {budget}");
            }
            if matches!(plain, SynthesisResult::Unrealizable { .. }) {
                assert!(
                    matches!(pruned, SynthesisResult::Unrealizable { .. }),
                    "budget {budget}"
                );
            }
            assert!(pruned.nodes_explored() <= plain.nodes_explored());
        }
    }

    #[test]
    fn table_text_round_trip() {
        let p2 = build_path(2).unwrap();
        let r = synthesize(std::slice::from_ref(&p2), 1, false, caps());
        let table = match r {
            SynthesisResult::Realizable { table, .. } => table,
            other => panic!("{other:?}"),
        };
        let text = table.to_text();
        let parsed = DecisionTable::parse(&text).unwrap();
        assert_eq!(parsed, table);
        assert!(verify_all(&p2, &parsed).all_succeed());
    }
}
