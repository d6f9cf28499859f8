//! Execution semantics for zero-memory exploration with vertex coloring.
//!
//! An agent sits on a vertex of a connected graph and observes only its own
//! color and the multiset of neighbor colors. A strategy maps that
//! observation to either `Stop` or a pair (color to assign, neighbor color
//! class to move into); the adversary resolves every remaining choice.
//! A run succeeds when the agent stops on its start vertex after having
//! visited every vertex.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::graph::Graph;

/// A vertex color. 0 is the non-color carried by unvisited vertices and is
/// never counted as a used color.
pub type Color = u8;

/// Shifted modulo: maps `n` to `((n - 1) mod m) + 1`, with range `1..=m`.
pub fn mod1(n: i64, m: i64) -> i64 {
    debug_assert!(m >= 1);
    (n - 1).rem_euclid(m) + 1
}

/// The agent's entire observation: its own color and a count per neighbor
/// color. Canonical by construction (sorted keys, positive counts), so equal
/// observations compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Environment {
    pub self_color: Color,
    pub neighbor_counts: BTreeMap<Color, usize>,
}

impl Environment {
    pub fn new(self_color: Color, neighbors: impl IntoIterator<Item = Color>) -> Environment {
        let mut neighbor_counts = BTreeMap::new();
        for c in neighbors {
            *neighbor_counts.entry(c).or_insert(0) += 1;
        }
        Environment { self_color, neighbor_counts }
    }

    /// Number of neighbors carrying color `c`.
    pub fn count(&self, c: Color) -> usize {
        self.neighbor_counts.get(&c).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.neighbor_counts.values().sum()
    }

    /// Number of neighbors with a nonzero color.
    pub fn colored_count(&self) -> usize {
        self.neighbor_counts
            .iter()
            .filter(|(&c, _)| c != 0)
            .map(|(_, &k)| k)
            .sum()
    }

    /// Largest nonzero neighbor color, or 0 when all neighbors are uncolored.
    pub fn max_colored(&self) -> Color {
        self.neighbor_counts
            .keys()
            .copied()
            .filter(|&c| c != 0)
            .max()
            .unwrap_or(0)
    }

    /// Smallest neighbor color present (0 counts when present).
    pub fn min_present(&self) -> Option<Color> {
        self.neighbor_counts.keys().next().copied()
    }

    /// Distinct nonzero neighbor colors, ascending.
    pub fn colored_values(&self) -> impl Iterator<Item = Color> + '_ {
        self.neighbor_counts.keys().copied().filter(|&c| c != 0)
    }

    /// Text form `(c0|c:k,...)` with keys ascending; bit-exact.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self
            .neighbor_counts
            .iter()
            .map(|(c, k)| format!("{c}:{k}"))
            .collect();
        format!("({}|{})", self.self_color, body.join(","))
    }

    pub fn parse(text: &str) -> Option<Environment> {
        let inner = text.strip_prefix('(')?.strip_suffix(')')?;
        let (self_part, rest) = inner.split_once('|')?;
        let self_color = self_part.parse().ok()?;
        let mut neighbor_counts = BTreeMap::new();
        if !rest.is_empty() {
            for item in rest.split(',') {
                let (c, k) = item.split_once(':')?;
                let c: Color = c.parse().ok()?;
                let k: usize = k.parse().ok()?;
                if k == 0 || neighbor_counts.insert(c, k).is_some() {
                    return None;
                }
            }
        }
        Some(Environment { self_color, neighbor_counts })
    }
}

impl fmt::Display for Environment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A strategy's answer for one observation.
///
/// `Move { assign, target }` colors the current vertex with `assign` (0
/// leaves an uncolored vertex uncolored, or erases under recoloring) and
/// moves into the neighbor class of color `target`. Legality (target class
/// nonempty, recoloring permission) is checked at execution, not here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveDecision {
    Move { assign: Color, target: Color },
    Stop,
}

impl fmt::Display for MoveDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveDecision::Move { assign, target } => {
                write!(f, "assign={assign} goto={target}")
            }
            MoveDecision::Stop => write!(f, "STOP"),
        }
    }
}

/// A deterministic memoryless strategy: a pure total function from
/// observations to decisions.
///
/// `decide` returns `None` when no rule of the strategy covers the
/// observation; execution reports that as [`Outcome::StrategyStuck`].
pub trait Strategy: Sync {
    fn name(&self) -> String;

    /// Largest color the strategy may assign, if bounded.
    fn palette(&self) -> Option<Color>;

    fn recoloring_allowed(&self) -> bool {
        false
    }

    fn decide(&self, env: &Environment) -> Option<MoveDecision>;
}

/// Mutable run state owned by the harness.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RunState {
    pub position: usize,
    pub coloring: Vec<Color>,
    pub visited: Vec<bool>,
    pub steps: usize,
}

impl RunState {
    pub fn initial(g: &Graph, start: usize) -> RunState {
        let mut visited = vec![false; g.vertex_count()];
        visited[start] = true;
        RunState {
            position: start,
            coloring: vec![0; g.vertex_count()],
            visited,
            steps: 0,
        }
    }

    pub fn all_visited(&self) -> bool {
        self.visited.iter().all(|&v| v)
    }
}

/// Observation of the current vertex: own color plus neighbor color counts.
pub fn observe(g: &Graph, state: &RunState) -> Environment {
    Environment::new(
        state.coloring[state.position],
        g.neighbors(state.position).iter().map(|&w| state.coloring[w]),
    )
}

/// Why a run ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Success,
    IllegalMove { step: usize, reason: IllegalMoveReason },
    StoppedWrongVertex { vertex: usize },
    StoppedIncomplete { missing: Vec<usize> },
    InfiniteLoop { position: usize, first_seen_step: usize },
    StrategyStuck { environment: Environment },
}

impl Outcome {
    pub fn is_success(&self) -> bool {
        matches!(self, Outcome::Success)
    }

    /// Short machine-readable tag used in CSV reports.
    pub fn tag(&self) -> &'static str {
        match self {
            Outcome::Success => "success",
            Outcome::IllegalMove { .. } => "illegal_move",
            Outcome::StoppedWrongVertex { .. } => "stopped_wrong_vertex",
            Outcome::StoppedIncomplete { .. } => "stopped_incomplete",
            Outcome::InfiniteLoop { .. } => "infinite_loop",
            Outcome::StrategyStuck { .. } => "strategy_stuck",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IllegalMoveReason {
    /// No neighbor of the requested target color exists.
    NoSuchNeighbor,
    /// Assignment differs from the current nonzero color without recoloring
    /// permission.
    RecoloringForbidden,
    /// Assignment exceeds the strategy's declared palette.
    PaletteExceeded,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RunError {
    #[error("start vertex {0} out of range")]
    BadStart(usize),
    #[error("script exhausted at step {0} (a choice among {1} candidates was required)")]
    ScriptExhausted(usize, usize),
    #[error("script entry {chosen} at step {step} is not a legal choice")]
    BadScriptChoice { step: usize, chosen: usize },
}

/// One executed step of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub position: usize,
    pub environment: Environment,
    pub decision: MoveDecision,
    /// Adversary-chosen successor vertex; `None` for the final `Stop`.
    pub chosen: Option<usize>,
}

/// A replayable record of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub start: usize,
    pub steps: Vec<TraceStep>,
}

impl Trace {
    /// Adversary choices in order, suitable for replay as a script.
    pub fn script(&self) -> Vec<usize> {
        self.steps.iter().filter_map(|s| s.chosen).collect()
    }

    /// Bit-exact trace text: header line, then one line per step.
    pub fn to_text(&self, graph_name: &str, strategy_name: &str) -> String {
        let mut out = format!(
            "graph={graph_name} start={} strategy={strategy_name}\n",
            self.start
        );
        for (i, step) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "{i}: v={} env={}",
                step.position,
                step.environment.to_text()
            ));
            match (&step.decision, step.chosen) {
                (MoveDecision::Stop, _) => out.push_str(" -> STOP\n"),
                (MoveDecision::Move { assign, target }, Some(chosen)) => {
                    out.push_str(&format!(
                        " -> assign={assign} goto={target} chosen={chosen}\n"
                    ));
                }
                (MoveDecision::Move { assign, target }, None) => {
                    // A move that was ruled illegal records no chosen vertex.
                    out.push_str(&format!(" -> assign={assign} goto={target} chosen=-\n"));
                }
            }
        }
        out
    }
}

/// Distinct nonzero colors assigned along a trace.
pub fn colors_used_in_trace(trace: &Trace) -> usize {
    let mut mask = 0u64;
    for step in &trace.steps {
        if let MoveDecision::Move { assign, .. } = step.decision {
            if assign != 0 && step.chosen.is_some() {
                mask |= 1 << assign;
            }
        }
    }
    mask.count_ones() as usize
}

/// Distinct nonzero colors present in a coloring.
pub fn colors_used_in_coloring(coloring: &[Color]) -> usize {
    let mut mask = 0u64;
    for &c in coloring {
        if c != 0 {
            mask |= 1 << c;
        }
    }
    mask.count_ones() as usize
}

/// Neighbor vertices that the adversary may choose from for a decision, in
/// ascending order. Colors are the pre-step colors; the current assignment
/// never affects them because the graph is simple.
pub fn move_candidates(g: &Graph, state: &RunState, target: Color) -> Vec<usize> {
    g.neighbors(state.position)
        .iter()
        .copied()
        .filter(|&w| state.coloring[w] == target)
        .collect()
}

/// Checks decision legality and applies the assignment, returning the
/// candidate successor set. Does not move the agent.
pub fn apply_assignment(
    g: &Graph,
    strategy_palette: Option<Color>,
    recoloring: bool,
    state: &mut RunState,
    assign: Color,
    target: Color,
) -> Result<Vec<usize>, IllegalMoveReason> {
    let own = state.coloring[state.position];
    if !recoloring && own != 0 && assign != own {
        return Err(IllegalMoveReason::RecoloringForbidden);
    }
    if let Some(p) = strategy_palette {
        if assign > p {
            return Err(IllegalMoveReason::PaletteExceeded);
        }
    }
    let candidates = move_candidates(g, state, target);
    if candidates.is_empty() {
        return Err(IllegalMoveReason::NoSuchNeighbor);
    }
    state.coloring[state.position] = assign;
    Ok(candidates)
}

/// Executes one step: observes, consults the strategy, applies the
/// assignment, and moves to the successor selected by `choose` from the
/// legal candidates. Returns the decision taken, or the terminal outcome.
pub fn step(
    g: &Graph,
    strategy: &dyn Strategy,
    state: &mut RunState,
    choose: &mut dyn FnMut(&[usize]) -> usize,
) -> Result<(MoveDecision, Option<usize>), Outcome> {
    let env = observe(g, state);
    let decision = match strategy.decide(&env) {
        Some(d) => d,
        None => return Err(Outcome::StrategyStuck { environment: env }),
    };
    match decision {
        MoveDecision::Stop => Ok((decision, None)),
        MoveDecision::Move { assign, target } => {
            let candidates = apply_assignment(
                g,
                strategy.palette(),
                strategy.recoloring_allowed(),
                state,
                assign,
                target,
            )
            .map_err(|reason| Outcome::IllegalMove { step: state.steps, reason })?;
            let idx = choose(&candidates);
            let next = candidates[idx];
            state.position = next;
            state.visited[next] = true;
            state.steps += 1;
            Ok((decision, Some(next)))
        }
    }
}

/// Default step cap: `4 * n * (palette + 1)^n`, capped at 10^7. A backstop
/// on top of state-repetition detection.
pub fn default_step_cap(g: &Graph, strategy: &dyn Strategy) -> usize {
    let n = g.vertex_count() as u64;
    let palette = strategy.palette().unwrap_or(n as u8) as u64;
    let mut bound = 4u64.saturating_mul(n);
    for _ in 0..n {
        bound = bound.saturating_mul(palette + 1);
        if bound >= 10_000_000 {
            return 10_000_000;
        }
    }
    bound as usize
}

/// How a run resolves adversary choices.
pub enum AdversaryScript {
    /// Explicit chosen vertex ids, consumed one per move.
    Choices(Vec<usize>),
    /// Always the first (smallest id) candidate.
    First,
    /// Seeded deterministic choices.
    Seeded(u64),
}

/// Runs a strategy from `start`, resolving adversary choices by script or
/// policy. The run ends on `Stop`, on a failure, on repetition of a
/// `(position, coloring)` state, or at `step_cap`.
pub fn run_scripted(
    g: &Graph,
    strategy: &dyn Strategy,
    start: usize,
    script: AdversaryScript,
    step_cap: usize,
) -> Result<(Trace, Outcome), RunError> {
    use rand::{Rng, SeedableRng};
    if start >= g.vertex_count() {
        return Err(RunError::BadStart(start));
    }
    let mut state = RunState::initial(g, start);
    let mut trace = Trace { start, steps: Vec::new() };
    let mut seen: std::collections::HashMap<(usize, Vec<Color>), usize> =
        std::collections::HashMap::new();
    let mut script_pos = 0usize;
    let mut rng = match &script {
        AdversaryScript::Seeded(seed) => Some(rand_chacha::ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    loop {
        let state_key = (state.position, state.coloring.clone());
        if let Some(&first) = seen.get(&state_key) {
            return Ok((
                trace,
                Outcome::InfiniteLoop { position: state.position, first_seen_step: first },
            ));
        }
        seen.insert(state_key, trace.steps.len());
        if trace.steps.len() >= step_cap {
            let outcome = Outcome::InfiniteLoop {
                position: state.position,
                first_seen_step: trace.steps.len(),
            };
            return Ok((trace, outcome));
        }

        let env = observe(g, &state);
        let position = state.position;
        let mut choice_err: Option<RunError> = None;
        let result = step(g, strategy, &mut state, &mut |candidates| {
            match &script {
                AdversaryScript::Choices(choices) => {
                    let step_no = trace.steps.len();
                    match choices.get(script_pos) {
                        None => {
                            choice_err =
                                Some(RunError::ScriptExhausted(step_no, candidates.len()));
                            0
                        }
                        Some(&chosen) => {
                            script_pos += 1;
                            match candidates.iter().position(|&c| c == chosen) {
                                Some(idx) => idx,
                                None => {
                                    choice_err = Some(RunError::BadScriptChoice {
                                        step: step_no,
                                        chosen,
                                    });
                                    0
                                }
                            }
                        }
                    }
                }
                AdversaryScript::First => 0,
                AdversaryScript::Seeded(_) => {
                    rng.as_mut().unwrap().gen_range(0..candidates.len())
                }
            }
        });
        if let Some(err) = choice_err {
            return Err(err);
        }
        match result {
            Err(outcome) => {
                if let Outcome::IllegalMove { .. } = outcome {
                    // Record the offending decision for the trace.
                    if let Some(d) = strategy.decide(&env) {
                        trace.steps.push(TraceStep {
                            position,
                            environment: env,
                            decision: d,
                            chosen: None,
                        });
                    }
                }
                return Ok((trace, outcome));
            }
            Ok((decision, chosen)) => {
                trace.steps.push(TraceStep {
                    position,
                    environment: env,
                    decision,
                    chosen,
                });
                if decision == MoveDecision::Stop {
                    let outcome = if position != start {
                        Outcome::StoppedWrongVertex { vertex: position }
                    } else if !state.all_visited() {
                        Outcome::StoppedIncomplete {
                            missing: (0..g.vertex_count())
                                .filter(|&v| !state.visited[v])
                                .collect(),
                        }
                    } else {
                        Outcome::Success
                    };
                    return Ok((trace, outcome));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_path;

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

    struct StopsImmediately;
    impl Strategy for StopsImmediately {
        fn name(&self) -> String {
            "stops".into()
        }
        fn palette(&self) -> Option<Color> {
            Some(0)
        }
        fn decide(&self, _env: &Environment) -> Option<MoveDecision> {
            Some(MoveDecision::Stop)
        }
    }

    #[test]
    fn mod1_examples() {
        assert_eq!(mod1(4, 3), 1);
        assert_eq!(mod1(3, 3), 3);
        assert_eq!(mod1(1, 5), 1);
        assert_eq!(mod1(0, 3), 3);
        for n in 1..=100i64 {
            for m in 1..=10i64 {
                let r = mod1(n, m);
                assert!((1..=m).contains(&r));
                assert_eq!((r - 1).rem_euclid(m), (n - 1).rem_euclid(m));
            }
        }
    }

    #[test]
    fn observe_examples() {
        let triangle = crate::families::build_complete(3).unwrap();
        let state = RunState::initial(&triangle, 0);
        assert_eq!(observe(&triangle, &state), Environment::new(0, [0, 0]));

        let p3 = build_path(3).unwrap();
        let mut state = RunState::initial(&p3, 1);
        state.coloring = vec![1, 0, 2];
        assert_eq!(observe(&p3, &state), Environment::new(0, [1, 2]));

        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let mut state = RunState::initial(&star, 0);
        state.coloring = vec![1, 2, 2, 0];
        let env = observe(&star, &state);
        assert_eq!(env, Environment::new(1, [2, 2, 0]));
        assert_eq!(env.count(2), 2);
        assert_eq!(env.count(0), 1);
    }

    #[test]
    fn env_text_round_trip() {
        let env = Environment::new(3, [0, 2, 2, 5]);
        assert_eq!(env.to_text(), "(3|0:1,2:2,5:1)");
        assert_eq!(Environment::parse(&env.to_text()), Some(env));
        let empty = Environment::new(1, []);
        assert_eq!(empty.to_text(), "(1|)");
        assert_eq!(Environment::parse("(1|)"), Some(empty));
        assert_eq!(Environment::parse("(1|0:0)"), None);
    }

    #[test]
    fn step_moves_and_colors() {
        let p2 = build_path(2).unwrap();
        struct ColorAndGo;
        impl Strategy for ColorAndGo {
            fn name(&self) -> String {
                "color_and_go".into()
            }
            fn palette(&self) -> Option<Color> {
                Some(1)
            }
            fn decide(&self, _env: &Environment) -> Option<MoveDecision> {
                Some(MoveDecision::Move { assign: 1, target: 0 })
            }
        }
        let mut state = RunState::initial(&p2, 0);
        let (d, chosen) = step(&p2, &ColorAndGo, &mut state, &mut |_| 0).unwrap();
        assert_eq!(d, MoveDecision::Move { assign: 1, target: 0 });
        assert_eq!(chosen, Some(1));
        assert_eq!(state.position, 1);
        assert_eq!(state.coloring, vec![1, 0]);
    }

    #[test]
    fn step_rejects_missing_target() {
        let p2 = build_path(2).unwrap();
        struct BadTarget;
        impl Strategy for BadTarget {
            fn name(&self) -> String {
                "bad_target".into()
            }
            fn palette(&self) -> Option<Color> {
                Some(3)
            }
            fn decide(&self, _env: &Environment) -> Option<MoveDecision> {
                Some(MoveDecision::Move { assign: 1, target: 3 })
            }
        }
        let mut state = RunState::initial(&p2, 0);
        let err = step(&p2, &BadTarget, &mut state, &mut |_| 0).unwrap_err();
        assert!(matches!(
            err,
            Outcome::IllegalMove { reason: IllegalMoveReason::NoSuchNeighbor, .. }
        ));
    }

    #[test]
    fn stop_on_single_vertex_succeeds() {
        let k1 = Graph::new(1, &[]).unwrap();
        let (trace, outcome) =
            run_scripted(&k1, &StopsImmediately, 0, AdversaryScript::First, 100).unwrap();
        assert_eq!(outcome, Outcome::Success);
        assert_eq!(trace.steps.len(), 1);
    }

    #[test]
    fn never_coloring_loops_on_p3() {
        let p3 = build_path(3).unwrap();
        let (_, outcome) =
            run_scripted(&p3, &NeverColors, 0, AdversaryScript::First, 1000).unwrap();
        assert!(matches!(outcome, Outcome::InfiniteLoop { .. }));
    }

    #[test]
    fn bad_script_is_an_error() {
        let p3 = build_path(3).unwrap();
        let err = run_scripted(
            &p3,
            &NeverColors,
            0,
            AdversaryScript::Choices(vec![2]),
            1000,
        )
        .unwrap_err();
        assert_eq!(err, RunError::BadScriptChoice { step: 0, chosen: 2 });
        let err = run_scripted(
            &p3,
            &NeverColors,
            0,
            AdversaryScript::Choices(vec![]),
            1000,
        )
        .unwrap_err();
        assert_eq!(err, RunError::ScriptExhausted(0, 1));
    }

    #[test]
    fn colors_used_counts_distinct_nonzero() {
        assert_eq!(colors_used_in_coloring(&[0, 0, 0]), 0);
        assert_eq!(colors_used_in_coloring(&[1, 2, 1, 0]), 2);
    }
}
