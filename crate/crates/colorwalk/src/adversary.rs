//! Exhaustive adversarial verification.
//!
//! For every start vertex the full game graph over states
//! `(position, coloring)` is explored: the strategy fixes the decision at
//! each state, the adversary owns the choice among equally colored
//! neighbors. A strategy is correct when every branch stops on its start
//! vertex, no reachable cycle exists, and the guaranteed coverage at the
//! initial state is the whole vertex set.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::graph::Graph;
use crate::model::{
    apply_assignment, colors_used_in_coloring, observe, Color, Environment, MoveDecision,
    Outcome, RunState, Strategy,
};

/// Resource caps for one verification run.
#[derive(Debug, Clone, Copy)]
pub struct VerifyCaps {
    /// Maximum number of distinct states explored per start vertex.
    pub max_states_per_start: usize,
}

impl Default for VerifyCaps {
    fn default() -> Self {
        VerifyCaps { max_states_per_start: 1_000_000 }
    }
}

/// Verification result for one start vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StartVerdict {
    Success,
    Failure {
        /// Adversary choices reproducing the failure from the start.
        script: Vec<usize>,
        outcome: Outcome,
    },
    /// The state cap was hit; no judgment.
    Unknown,
}

/// Aggregate over all starts of one graph.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub per_start: Vec<(usize, StartVerdict)>,
    /// Total states explored over all starts.
    pub states_explored: usize,
    /// Maximum number of distinct colors used over all branches; for failed
    /// or capped runs this is a lower bound over the explored region.
    pub max_colors: usize,
}

/// The overall judgment of a [`Verdict`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Overall {
    AllSucceed,
    FailureWitness { start: usize, script: Vec<usize>, outcome: Outcome },
    Unknown,
}

impl Verdict {
    pub fn overall(&self) -> Overall {
        for (start, v) in &self.per_start {
            if let StartVerdict::Failure { script, outcome } = v {
                return Overall::FailureWitness {
                    start: *start,
                    script: script.clone(),
                    outcome: outcome.clone(),
                };
            }
        }
        if self.per_start.iter().any(|(_, v)| matches!(v, StartVerdict::Unknown)) {
            return Overall::Unknown;
        }
        Overall::AllSucceed
    }

    pub fn all_succeed(&self) -> bool {
        matches!(self.overall(), Overall::AllSucceed)
    }
}

/// One explored transition, handed to invariant observers.
pub struct StateObservation<'a> {
    pub start: usize,
    pub position: usize,
    pub coloring_before: &'a [Color],
    pub environment: &'a Environment,
    pub decision: MoveDecision,
    /// Coloring after the assignment; equals `coloring_before` for `Stop`.
    pub coloring_after: &'a [Color],
}

pub type Observer<'a> = &'a (dyn Fn(&StateObservation<'_>) + Sync);

/// Verifies a strategy on a graph over all starts and adversary branches.
pub fn verify_all(g: &Graph, strategy: &dyn Strategy) -> Verdict {
    verify_all_with(g, strategy, VerifyCaps::default(), &|_| ())
}

pub fn verify_all_with(
    g: &Graph,
    strategy: &dyn Strategy,
    caps: VerifyCaps,
    observer: Observer<'_>,
) -> Verdict {
    let results: Vec<(usize, StartResult)> = (0..g.vertex_count())
        .into_par_iter()
        .map(|start| (start, explore_start(g, strategy, start, caps, observer)))
        .collect();
    let mut per_start = Vec::new();
    let mut states_explored = 0;
    let mut max_colors = 0;
    for (start, r) in results {
        states_explored += r.states;
        max_colors = max_colors.max(r.max_colors);
        per_start.push((start, r.verdict));
    }
    Verdict { per_start, states_explored, max_colors }
}

/// Maximum over all adversary branches of the number of distinct colors
/// assigned.
pub fn worst_case_colors(g: &Graph, strategy: &dyn Strategy) -> usize {
    verify_all(g, strategy).max_colors
}

struct StartResult {
    verdict: StartVerdict,
    states: usize,
    max_colors: usize,
}

type StateKey = (usize, Vec<Color>);

struct Node {
    key: StateKey,
    /// `None` for a stop sink; otherwise the assigned color and the
    /// successor states (chosen vertex, shared post-assignment coloring).
    expansion: Expansion,
    /// Guaranteed-coverage bitmask, filled at finalization.
    coverage: u32,
    mark: Mark,
    /// Successor node ids, filled as children complete.
    succ_ids: Vec<usize>,
    assign: Option<Color>,
}

enum Expansion {
    Sink,
    Moves(Vec<(usize, Vec<Color>)>),
}

#[derive(PartialEq, Eq, Clone, Copy)]
enum Mark {
    Gray,
    Done,
}

enum Evaluated {
    Fail(Outcome),
    Sink,
    Moves { assign: Color, successors: Vec<(usize, Vec<Color>)> },
}

fn evaluate(
    g: &Graph,
    strategy: &dyn Strategy,
    start: usize,
    key: &StateKey,
    observer: Observer<'_>,
) -> Evaluated {
    let (position, coloring) = key;
    let mut state = RunState {
        position: *position,
        coloring: coloring.clone(),
        visited: Vec::new(),
        steps: 0,
    };
    let env = observe(g, &state);
    let decision = match strategy.decide(&env) {
        None => return Evaluated::Fail(Outcome::StrategyStuck { environment: env }),
        Some(d) => d,
    };
    match decision {
        MoveDecision::Stop => {
            observer(&StateObservation {
                start,
                position: *position,
                coloring_before: coloring,
                environment: &env,
                decision,
                coloring_after: coloring,
            });
            if *position != start {
                Evaluated::Fail(Outcome::StoppedWrongVertex { vertex: *position })
            } else {
                Evaluated::Sink
            }
        }
        MoveDecision::Move { assign, target } => {
            match apply_assignment(
                g,
                strategy.palette(),
                strategy.recoloring_allowed(),
                &mut state,
                assign,
                target,
            ) {
                Err(reason) => {
                    Evaluated::Fail(Outcome::IllegalMove { step: 0, reason })
                }
                Ok(candidates) => {
                    observer(&StateObservation {
                        start,
                        position: *position,
                        coloring_before: coloring,
                        environment: &env,
                        decision,
                        coloring_after: &state.coloring,
                    });
                    let successors = candidates
                        .into_iter()
                        .map(|w| (w, state.coloring.clone()))
                        .collect();
                    Evaluated::Moves { assign, successors }
                }
            }
        }
    }
}

fn explore_start(
    g: &Graph,
    strategy: &dyn Strategy,
    start: usize,
    caps: VerifyCaps,
    observer: Observer<'_>,
) -> StartResult {
    struct Frame {
        node: usize,
        /// Next successor index to expand; witness scripts are rebuilt from
        /// the already-taken edge `next - 1` of each frame.
        next: usize,
    }

    let mut nodes: Vec<Node> = Vec::new();
    let mut index: HashMap<StateKey, usize> = HashMap::new();
    let mut max_colors = 0usize;

    let root_key: StateKey = (start, vec![0; g.vertex_count()]);

    let new_node = |key: StateKey,
                        nodes: &mut Vec<Node>,
                        index: &mut HashMap<StateKey, usize>,
                        max_colors: &mut usize|
     -> Result<usize, Outcome> {
        match evaluate(g, strategy, start, &key, observer) {
            Evaluated::Fail(outcome) => Err(outcome),
            Evaluated::Sink => {
                let id = nodes.len();
                *max_colors = (*max_colors).max(colors_used_in_coloring(&key.1));
                index.insert(key.clone(), id);
                nodes.push(Node {
                    key,
                    expansion: Expansion::Sink,
                    coverage: 0,
                    mark: Mark::Gray,
                    succ_ids: Vec::new(),
                    assign: None,
                });
                Ok(id)
            }
            Evaluated::Moves { assign, successors } => {
                let id = nodes.len();
                if let Some((_, coloring_after)) = successors.first() {
                    *max_colors = (*max_colors).max(colors_used_in_coloring(coloring_after));
                }
                index.insert(key.clone(), id);
                nodes.push(Node {
                    key,
                    expansion: Expansion::Moves(successors),
                    coverage: 0,
                    mark: Mark::Gray,
                    succ_ids: Vec::new(),
                    assign: Some(assign),
                });
                Ok(id)
            }
        }
    };

    let script_of = |stack: &[Frame], nodes: &[Node], extra: Option<usize>| -> Vec<usize> {
        let mut script = Vec::new();
        for frame in stack {
            if frame.next > 0 {
                if let Expansion::Moves(succs) = &nodes[frame.node].expansion {
                    script.push(succs[frame.next - 1].0);
                }
            }
        }
        if let Some(v) = extra {
            script.push(v);
        }
        script
    };

    let root = match new_node(root_key, &mut nodes, &mut index, &mut max_colors) {
        Ok(id) => id,
        Err(outcome) => {
            return StartResult {
                verdict: StartVerdict::Failure { script: Vec::new(), outcome },
                states: 1,
                max_colors,
            }
        }
    };

    let mut stack = vec![Frame { node: root, next: 0 }];
    while let Some(top) = stack.last_mut() {
        let node_id = top.node;
        let succ = match &nodes[node_id].expansion {
            Expansion::Sink => None,
            Expansion::Moves(succs) => succs.get(top.next).cloned(),
        };
        match succ {
            Some((chosen, coloring)) => {
                top.next += 1;
                let key: StateKey = (chosen, coloring);
                if let Some(&child) = index.get(&key) {
                    match nodes[child].mark {
                        Mark::Gray => {
                            // Reaching a state already on the current path:
                            // the adversary can loop forever.
                            let script = script_of(&stack, &nodes, Some(chosen));
                            return StartResult {
                                verdict: StartVerdict::Failure {
                                    script,
                                    outcome: Outcome::InfiniteLoop {
                                        position: chosen,
                                        first_seen_step: 0,
                                    },
                                },
                                states: nodes.len(),
                                max_colors,
                            };
                        }
                        Mark::Done => {
                            nodes[node_id].succ_ids.push(child);
                        }
                    }
                } else {
                    if nodes.len() >= caps.max_states_per_start {
                        return StartResult {
                            verdict: StartVerdict::Unknown,
                            states: nodes.len(),
                            max_colors,
                        };
                    }
                    match new_node(key, &mut nodes, &mut index, &mut max_colors) {
                        Ok(child) => {
                            nodes[node_id].succ_ids.push(child);
                            stack.push(Frame { node: child, next: 0 });
                        }
                        Err(outcome) => {
                            let script = script_of(&stack, &nodes, Some(chosen));
                            return StartResult {
                                verdict: StartVerdict::Failure { script, outcome },
                                states: nodes.len() + 1,
                                max_colors,
                            };
                        }
                    }
                }
            }
            None => {
                // All successors finalized: compute guaranteed coverage.
                let coverage = match &nodes[node_id].expansion {
                    Expansion::Sink => 1u32 << nodes[node_id].key.0,
                    Expansion::Moves(_) => {
                        let mut gc = u32::MAX;
                        for &s in &nodes[node_id].succ_ids {
                            gc &= nodes[s].coverage;
                        }
                        gc | (1u32 << nodes[node_id].key.0)
                    }
                };
                nodes[node_id].coverage = coverage;
                nodes[node_id].mark = Mark::Done;
                stack.pop();
            }
        }
    }

    let full: u32 = if g.vertex_count() == 32 { u32::MAX } else { (1u32 << g.vertex_count()) - 1 };
    if nodes[root].coverage != full {
        let missing: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| nodes[root].coverage & (1 << v) == 0)
            .collect();
        // Exhibit one branch that misses a vertex: follow, from the root, any
        // successor whose coverage also misses it.
        let target = missing[0];
        let mut script = Vec::new();
        let mut at = root;
        loop {
            match &nodes[at].expansion {
                Expansion::Sink => break,
                Expansion::Moves(succs) => {
                    let pick = nodes[at]
                        .succ_ids
                        .iter()
                        .position(|&s| nodes[s].coverage & (1 << target) == 0)
                        .expect("a missing vertex is missed by some branch");
                    script.push(succs[pick].0);
                    at = nodes[at].succ_ids[pick];
                }
            }
        }
        return StartResult {
            verdict: StartVerdict::Failure {
                script,
                outcome: Outcome::StoppedIncomplete { missing },
            },
            states: nodes.len(),
            max_colors,
        };
    }

    if strategy.recoloring_allowed() {
        max_colors = max_colors.max(exact_colors_recoloring(&nodes, root));
    }

    StartResult { verdict: StartVerdict::Success, states: nodes.len(), max_colors }
}

/// Exact worst-case color count for recoloring strategies: colors may be
/// erased from the coloring, so the set of colors ever assigned is tracked
/// along plays over the (acyclic) state graph.
fn exact_colors_recoloring(nodes: &[Node], root: usize) -> usize {
    let mut best = 0usize;
    let mut seen: std::collections::HashSet<(usize, u64)> = std::collections::HashSet::new();
    let mut stack: Vec<(usize, u64)> = vec![(root, 0)];
    while let Some((id, mask)) = stack.pop() {
        let mask = match nodes[id].assign {
            Some(a) if a != 0 => mask | (1u64 << a),
            _ => mask,
        };
        if !seen.insert((id, mask)) {
            continue;
        }
        if nodes[id].succ_ids.is_empty() {
            best = best.max(mask.count_ones() as usize);
        } else {
            for &s in &nodes[id].succ_ids {
                stack.push((s, mask));
            }
        }
    }
    best
}

/// One row of a family verification report.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub graph_id: String,
    pub start: usize,
    pub verdict: String,
    pub states: usize,
    pub max_colors: usize,
    /// Adversary script reproducing a failure, when one exists.
    pub witness_script: Option<Vec<usize>>,
}

impl ReportRow {
    pub fn csv_header() -> &'static str {
        "graph_id,start,verdict,states,max_colors"
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.graph_id, self.start, self.verdict, self.states, self.max_colors
        )
    }
}

/// Verifies a strategy over a corpus of identified graphs, one report row
/// per (graph, start). Rows come back sorted by graph id, then start.
pub fn verify_family(
    corpus: impl IntoIterator<Item = (String, Graph)>,
    strategy: &dyn Strategy,
    caps: VerifyCaps,
) -> Vec<ReportRow> {
    let members: Vec<(String, Graph)> = corpus.into_iter().collect();
    let mut rows: Vec<ReportRow> = members
        .par_iter()
        .flat_map_iter(|(id, g)| {
            let verdict = verify_all_with(g, strategy, caps, &|_| ());
            let states_total = verdict.states_explored;
            let max_colors = verdict.max_colors;
            verdict
                .per_start
                .into_iter()
                .map(move |(start, sv)| {
                    let (tag, script) = match sv {
                        StartVerdict::Success => ("success".to_string(), None),
                        StartVerdict::Unknown => ("unknown".to_string(), None),
                        StartVerdict::Failure { script, outcome } => {
                            (outcome.tag().to_string(), Some(script))
                        }
                    };
                    ReportRow {
                        graph_id: id.clone(),
                        start,
                        verdict: tag,
                        states: states_total,
                        max_colors,
                        witness_script: script,
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    rows.sort_by(|a, b| a.graph_id.cmp(&b.graph_id).then(a.start.cmp(&b.start)));
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{DepthFirstSearch, Recolorer, TreeExploration};
    use crate::families::{build_complete, build_fan, build_path, enumerate_trees};
    use crate::model::AdversaryScript;

    struct NeverColors;
    impl Strategy for NeverColors {
        fn name(&self) -> String {
            "never_colors".into()
        }
        fn palette(&self) -> Option<Color> {
            Some(1)
        }
        fn decide(&self, env: &Environment) -> Option<MoveDecision> {
            let target = env.min_present()?;
            Some(MoveDecision::Move { assign: 0, target })
        }
    }

    #[test]
    fn tree_exploration_succeeds_on_small_trees() {
        for n in 1..=6 {
            for tree in enumerate_trees(n).unwrap() {
                let v = verify_all(&tree, &TreeExploration);
                assert!(v.all_succeed(), "failed on {:?}", tree.edges());
                assert!(v.max_colors <= 3);
            }
        }
    }

    #[test]
    fn dfs_succeeds_on_k4_with_three_colors() {
        let k4 = build_complete(4).unwrap();
        let v = verify_all(&k4, &DepthFirstSearch);
        assert!(v.all_succeed());
        assert!(v.max_colors <= 3, "max colors {}", v.max_colors);
    }

    #[test]
    fn never_coloring_fails_with_loop_witness() {
        let p2 = build_path(2).unwrap();
        let v = verify_all(&p2, &NeverColors);
        match v.overall() {
            Overall::FailureWitness { start, script, outcome } => {
                assert!(matches!(outcome, Outcome::InfiniteLoop { .. }));
                // The script must replay to the same failure.
                let (_, replayed) = crate::model::run_scripted(
                    &p2,
                    &NeverColors,
                    start,
                    AdversaryScript::Choices(script),
                    1000,
                )
                .unwrap();
                assert!(matches!(replayed, Outcome::InfiniteLoop { .. }));
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn worst_case_colors_examples() {
        let p7 = build_path(7).unwrap();
        assert_eq!(worst_case_colors(&p7, &TreeExploration), 3);
        let fan4 = build_fan(4).unwrap();
        assert_eq!(worst_case_colors(&fan4, &DepthFirstSearch), 4);
        let k1 = crate::graph::Graph::new(1, &[]).unwrap();
        assert!(worst_case_colors(&k1, &DepthFirstSearch) <= 1);
    }

    #[test]
    fn coverage_detects_unvisited_vertices() {
        // Stops immediately at the start: every other vertex is missed.
        struct EagerStop;
        impl Strategy for EagerStop {
            fn name(&self) -> String {
                "eager_stop".into()
            }
            fn palette(&self) -> Option<Color> {
                Some(1)
            }
            fn decide(&self, _env: &Environment) -> Option<MoveDecision> {
                Some(MoveDecision::Stop)
            }
        }
        let p3 = build_path(3).unwrap();
        let v = verify_all(&p3, &EagerStop);
        match v.overall() {
            Overall::FailureWitness { outcome, .. } => {
                assert!(matches!(outcome, Outcome::StoppedIncomplete { .. }));
            }
            other => panic!("expected incomplete, got {other:?}"),
        }
    }

    #[test]
    fn verdict_invariant_under_relabeling() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let g = build_fan(4).unwrap();
        let v = verify_all(&g, &DepthFirstSearch);
        for _ in 0..5 {
            let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
            perm.shuffle(&mut rng);
            let h = g.relabel(&perm).unwrap();
            let w = verify_all(&h, &DepthFirstSearch);
            assert_eq!(v.all_succeed(), w.all_succeed());
            assert_eq!(v.max_colors, w.max_colors);
        }
    }

    #[test]
    fn recoloring_color_count_tracks_erased_assignments() {
        // PathRecolorer erases colors; on P3 it still used color 1.
        let p3 = build_path(3).unwrap();
        let v = verify_all(&p3, &crate::algorithms::PathRecolorer);
        // Start vertices 0 and 2 are leaves and succeed; start 1 fails.
        let leaf_ok = v
            .per_start
            .iter()
            .filter(|(s, _)| *s == 0 || *s == 2)
            .all(|(_, sv)| matches!(sv, StartVerdict::Success));
        assert!(leaf_ok);
        assert_eq!(v.max_colors, 1);
    }

    #[test]
    fn recolorer_succeeds_on_p4() {
        let p4 = build_path(4).unwrap();
        let v = verify_all(&p4, &Recolorer);
        assert!(v.all_succeed(), "{:?}", v.overall());
        assert!(v.max_colors <= 7);
    }

    /// Guaranteed coverage must agree with explicit play enumeration on
    /// small instances.
    #[test]
    fn coverage_agrees_with_play_enumeration() {
        fn plays_cover_everything(
            g: &Graph,
            strategy: &dyn Strategy,
            start: usize,
        ) -> Option<bool> {
            // Enumerate all plays explicitly; None on any non-success branch.
            fn rec(
                g: &Graph,
                strategy: &dyn Strategy,
                start: usize,
                state: &RunState,
                path: &mut Vec<(usize, Vec<Color>)>,
            ) -> Option<bool> {
                let key = (state.position, state.coloring.clone());
                if path.contains(&key) {
                    return None;
                }
                let env = observe(g, state);
                match strategy.decide(&env)? {
                    MoveDecision::Stop => {
                        (state.position == start).then(|| state.all_visited())
                    }
                    MoveDecision::Move { assign, target } => {
                        let mut next = state.clone();
                        let candidates = apply_assignment(
                            g,
                            strategy.palette(),
                            strategy.recoloring_allowed(),
                            &mut next,
                            assign,
                            target,
                        )
                        .ok()?;
                        path.push(key);
                        let mut all = true;
                        for w in candidates {
                            let mut child = next.clone();
                            child.position = w;
                            child.visited[w] = true;
                            all &= rec(g, strategy, start, &child, path)?;
                        }
                        path.pop();
                        Some(all)
                    }
                }
            }
            let state = RunState::initial(g, start);
            rec(g, strategy, start, &state, &mut Vec::new())
        }

        for n in 2..=4 {
            for tree in enumerate_trees(n).unwrap() {
                for start in 0..n {
                    let brute = plays_cover_everything(&tree, &TreeExploration, start);
                    let v = verify_all(&tree, &TreeExploration);
                    let engine_ok = matches!(
                        v.per_start.iter().find(|(s, _)| *s == start).unwrap().1,
                        StartVerdict::Success
                    );
                    assert_eq!(brute, Some(true));
                    assert!(engine_ok);
                }
            }
        }
    }

    #[test]
    fn branch_counts_match_target_color_classes() {
        // Every explored state has exactly as many successors as neighbors
        // of the target color.
        let g = build_fan(4).unwrap();
        let seen = std::sync::Mutex::new(0usize);
        let observer = |obs: &StateObservation<'_>| {
            if let MoveDecision::Move { target, .. } = obs.decision {
                let count = g
                    .neighbors(obs.position)
                    .iter()
                    .filter(|&&w| obs.coloring_before[w] == target)
                    .count();
                assert!(count > 0);
                *seen.lock().unwrap() += count;
            }
        };
        let v = verify_all_with(&g, &DepthFirstSearch, VerifyCaps::default(), &observer);
        assert!(v.all_succeed());
        assert!(*seen.lock().unwrap() > 0);
    }
}
