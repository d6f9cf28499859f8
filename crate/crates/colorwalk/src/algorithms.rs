//! The exploration strategies, each a pure function from observation to
//! decision.
//!
//! Conventions shared by the depth-first family: the maximum over an
//! all-uncolored neighborhood is 0, so start vertices receive color 1; a
//! `Stop` decision never carries an assignment, which only matters on the
//! one-vertex graph where stopping immediately is the only legal decision.

use crate::model::{mod1, Color, Environment, MoveDecision, Strategy};

/// Colors an undirected tree alternately 1, 2, 3 by distance from the start
/// and backtracks along the unique decreasing neighbor. Palette {1, 2, 3}.
pub struct TreeExploration;

impl Strategy for TreeExploration {
    fn name(&self) -> String {
        "tree".into()
    }

    fn palette(&self) -> Option<Color> {
        Some(3)
    }

    fn decide(&self, env: &Environment) -> Option<MoveDecision> {
        let own = if env.self_color == 0 {
            mod1(env.max_colored() as i64 + 1, 3) as Color
        } else {
            env.self_color
        };
        Some(if env.count(0) > 0 {
            MoveDecision::Move { assign: own, target: 0 }
        } else if own == 1 && env.count(3) == 0 {
            // Start-vertex recognition: the only color-1 vertex whose
            // neighborhood holds no 3.
            MoveDecision::Stop
        } else {
            MoveDecision::Move { assign: own, target: mod1(own as i64 - 1, 3) as Color }
        })
    }
}

/// Depth-first search over arbitrary connected graphs: new vertices receive
/// one more than the largest neighbor color, except that a vertex with no
/// uncolored neighbor reuses the largest neighbor color and immediately
/// backtracks into it. Uses at most n - 1 colors.
pub struct DepthFirstSearch;

impl Strategy for DepthFirstSearch {
    fn name(&self) -> String {
        "dfs".into()
    }

    fn palette(&self) -> Option<Color> {
        None
    }

    fn decide(&self, env: &Environment) -> Option<MoveDecision> {
        Some(dfs_decide(env))
    }
}

fn dfs_decide(env: &Environment) -> MoveDecision {
    if env.self_color == 0 && env.degree() == 0 {
        return MoveDecision::Stop;
    }
    if env.self_color == 0 && env.count(0) == 0 {
        // Color-saving branch: all neighbors colored, reuse the maximum and
        // return into it. A complete step.
        let m = env.max_colored();
        return MoveDecision::Move { assign: m, target: m };
    }
    let own = if env.self_color == 0 { env.max_colored() + 1 } else { env.self_color };
    if env.count(0) > 0 {
        MoveDecision::Move { assign: own, target: 0 }
    } else if own >= 1 && env.count(own - 1) > 0 {
        MoveDecision::Move { assign: own, target: own - 1 }
    } else {
        MoveDecision::Stop
    }
}

/// Size-aware depth-first search: explores all graphs of size exactly `n`
/// with at most `n - 2` colors by handling the last two vertices (those that
/// see a neighbor colored `n - 2`) specially.
pub struct SizedDfs {
    n: usize,
}

impl SizedDfs {
    pub fn new(n: usize) -> Option<SizedDfs> {
        (n >= 5).then_some(SizedDfs { n })
    }

    /// Smallest color c >= 1 such that no neighbor carries c + 1.
    fn smallest_unproblematic(env: &Environment) -> Color {
        (1..).find(|&c| env.count(c + 1) == 0).unwrap()
    }
}

impl Strategy for SizedDfs {
    fn name(&self) -> String {
        format!("dfs_n:{}", self.n)
    }

    fn palette(&self) -> Option<Color> {
        Some((self.n - 2) as Color)
    }

    fn decide(&self, env: &Environment) -> Option<MoveDecision> {
        let last = (self.n - 2) as Color;
        if env.self_color == 0 && env.count(last) >= 1 {
            let assign = Self::smallest_unproblematic(env);
            if env.count(last) == 1 {
                // Rule 1: one n-2 neighbor; go on exploring, else return to it.
                let target = if env.count(0) > 0 { 0 } else { last };
                return Some(MoveDecision::Move { assign, target });
            }
            // Rule 2: two n-2 neighbors; head for the smallest color seen.
            let target = env.min_present()?;
            return Some(MoveDecision::Move { assign, target });
        }
        if env.self_color > 1 && env.count(0) == 0 && env.count(env.self_color - 1) == 0 {
            // Rule 3: backtracking blocked; take the largest color.
            return Some(MoveDecision::Move {
                assign: env.self_color,
                target: env.max_colored(),
            });
        }
        Some(dfs_decide(env))
    }
}

/// The cyclic order on `{1..2k-1}` in which every value exceeds its k - 1
/// cyclic predecessors and is exceeded by its k - 1 successors.
#[derive(Debug, Clone, Copy)]
pub struct CyclicPalette {
    k: usize,
}

impl CyclicPalette {
    pub fn new(k: usize) -> Option<CyclicPalette> {
        (k >= 3).then_some(CyclicPalette { k })
    }

    pub fn size(&self) -> usize {
        2 * self.k - 1
    }

    /// Whether `b` lies among the k - 1 cyclic predecessors of `a`.
    fn precedes(&self, b: Color, a: Color) -> bool {
        let m = self.size() as i64;
        let d = (a as i64 - b as i64).rem_euclid(m);
        d >= 1 && d <= self.k as i64 - 1
    }

    /// Cyclic maximum of a nonempty set of values in `{1..2k-1}`: the unique
    /// value whose k - 1 cyclic predecessors cover all others, or the plain
    /// maximum when no such value exists.
    pub fn cyclic_max(&self, values: &[Color]) -> Option<Color> {
        if values.is_empty() {
            return None;
        }
        for &a in values {
            if values.iter().all(|&b| b == a || self.precedes(b, a)) {
                return Some(a);
            }
        }
        values.iter().copied().max()
    }
}

/// Free-function form of the cyclic maximum.
pub fn cyclic_max(k: usize, values: &[Color]) -> Option<Color> {
    CyclicPalette::new(k)?.cyclic_max(values)
}

/// Depth-first search for graphs of circumference at most `k`, reusing
/// colors cyclically modulo 2k - 1. Uses at most 2k - 1 colors.
pub struct SmallDfs {
    palette: CyclicPalette,
}

impl SmallDfs {
    pub fn new(k: usize) -> Option<SmallDfs> {
        Some(SmallDfs { palette: CyclicPalette::new(k)? })
    }

    fn k(&self) -> usize {
        (self.palette.size() + 1) / 2
    }
}

impl Strategy for SmallDfs {
    fn name(&self) -> String {
        format!("smalldfs:{}", self.k())
    }

    fn palette(&self) -> Option<Color> {
        Some(self.palette.size() as Color)
    }

    fn decide(&self, env: &Environment) -> Option<MoveDecision> {
        let m = self.palette.size() as i64;
        if env.self_color == 0 && env.degree() == 0 {
            return Some(MoveDecision::Stop);
        }
        let own = if env.self_color == 0 {
            let colored: Vec<Color> = env.colored_values().collect();
            match self.palette.cyclic_max(&colored) {
                None => 1,
                Some(c) => mod1(c as i64 + 1, m) as Color,
            }
        } else {
            env.self_color
        };
        Some(if env.count(0) > 0 {
            MoveDecision::Move { assign: own, target: 0 }
        } else {
            let back = mod1(own as i64 - 1, m) as Color;
            if env.count(back) > 0 {
                MoveDecision::Move { assign: own, target: back }
            } else {
                MoveDecision::Stop
            }
        })
    }
}

/// Explorer for squares of paths: alternates colors 1, 2, 3 for a sense of
/// direction and spends a fourth color to avoid completing a {1,2,3}
/// triangle. Returns `None` on observations no square-path run can produce.
pub struct SquarePathExploration;

impl Strategy for SquarePathExploration {
    fn name(&self) -> String {
        "squarepath".into()
    }

    fn palette(&self) -> Option<Color> {
        Some(4)
    }

    fn decide(&self, env: &Environment) -> Option<MoveDecision> {
        if env.self_color != 0 {
            return Some(if env.count(0) > 0 {
                MoveDecision::Move { assign: env.self_color, target: 0 }
            } else {
                let back = mod1(env.self_color as i64 - 1, 3) as Color;
                if env.count(back) > 0 {
                    MoveDecision::Move { assign: env.self_color, target: back }
                } else {
                    MoveDecision::Stop
                }
            });
        }
        let colored: Vec<Color> = env
            .neighbor_counts
            .iter()
            .filter(|(&c, _)| c != 0)
            .flat_map(|(&c, &k)| std::iter::repeat(c).take(k))
            .collect();
        match colored.len() {
            0 => Some(MoveDecision::Move { assign: 1, target: 0 }),
            1 => {
                let w = colored[0];
                Some(MoveDecision::Move {
                    assign: mod1(w as i64 + 1, 3) as Color,
                    target: w,
                })
            }
            2 if colored == [1, 2] && env.count(0) == 2 => {
                // Exact neighborhood {1, 2, 0, 0}: return to the 2 so the
                // start side is finished first.
                Some(MoveDecision::Move { assign: 2, target: 2 })
            }
            2 => {
                let assign = match (colored[0], colored[1]) {
                    (1, 3) | (3, 3) | (3, 4) => 1,
                    (1, 1) | (1, 2) | (1, 4) => 2,
                    (2, 2) | (2, 3) | (2, 4) => 3,
                    _ => return None, // {4,4} cannot occur on square paths
                };
                Some(forward_or_back(env, assign))
            }
            3 => {
                let assign = match (colored[0], colored[1], colored[2]) {
                    (1, 2, 3) => 4,
                    (1, 1, 3) | (1, 3, 3) => 1,
                    (1, 1, 2) | (1, 2, 2) | (1, 2, 4) | (1, 1, 4) | (1, 4, 4) => 2,
                    (2, 2, 3) | (2, 2, 4) | (2, 3, 4) | (2, 4, 4) => 3,
                    _ => return None,
                };
                Some(forward_or_back(env, assign))
            }
            _ => None,
        }
    }
}

fn forward_or_back(env: &Environment, assign: Color) -> MoveDecision {
    if env.count(0) > 0 {
        MoveDecision::Move { assign, target: 0 }
    } else {
        MoveDecision::Move { assign, target: mod1(assign as i64 - 1, 3) as Color }
    }
}

/// Red/green hue carried by recoloring codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hue {
    Red,
    Green,
}

impl Hue {
    pub fn flip(self) -> Hue {
        match self {
            Hue::Red => Hue::Green,
            Hue::Green => Hue::Red,
        }
    }
}

/// The eight-value code space of [`Recolorer`]: 0 unvisited; labels 1..=3
/// paired with red/green as codes 1..=6 (red odd, green even); 7 deleted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecolorCode {
    Unvisited,
    Labeled { label: u8, hue: Hue },
    Deleted,
}

impl RecolorCode {
    pub const DELETED: Color = 7;

    pub fn encode(self) -> Color {
        match self {
            RecolorCode::Unvisited => 0,
            RecolorCode::Labeled { label, hue } => {
                debug_assert!((1..=3).contains(&label));
                2 * (label - 1) + if hue == Hue::Green { 2 } else { 1 }
            }
            RecolorCode::Deleted => Self::DELETED,
        }
    }

    pub fn decode(code: Color) -> Option<RecolorCode> {
        Some(match code {
            0 => RecolorCode::Unvisited,
            1..=6 => RecolorCode::Labeled {
                label: (code + 1) / 2,
                hue: if code % 2 == 1 { Hue::Red } else { Hue::Green },
            },
            7 => RecolorCode::Deleted,
            _ => return None,
        })
    }
}

/// Breadth-first explorer with recoloring: labels vertices 1, 2, 3 by depth,
/// sweeps the frontier phase by phase flipping between red and green, and
/// deletes exhausted subtrees. Never uses more than 7 colors.
pub struct Recolorer;

/// Cyclic successor of a label in {1, 2, 3}.
fn next_label(l: u8) -> u8 {
    mod1(l as i64 + 1, 3) as u8
}

/// Cyclic predecessor of a label in {1, 2, 3}.
fn prev_label(l: u8) -> u8 {
    mod1(l as i64 - 1, 3) as u8
}

/// Cyclic minimum of a set of labels drawn from at most two cyclically
/// adjacent values: of a pair (a, next(a)) the smaller is a. All three
/// labels at once never occur on a freshly visited vertex.
fn cyclic_min_label(labels: &[u8]) -> Option<u8> {
    let mut distinct: Vec<u8> = labels.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    match distinct.as_slice() {
        [] => None,
        [a] => Some(*a),
        [a, b] if next_label(*a) == *b => Some(*a),
        [a, b] if next_label(*b) == *a => Some(*b),
        _ => None,
    }
}

impl Recolorer {
    fn parents(env: &Environment, label: u8) -> Vec<Color> {
        let want = prev_label(label);
        Self::labeled_codes(env)
            .into_iter()
            .filter(|&code| matches!(RecolorCode::decode(code),
                Some(RecolorCode::Labeled { label, .. }) if label == want))
            .collect()
    }

    fn labeled_codes(env: &Environment) -> Vec<Color> {
        env.neighbor_counts
            .keys()
            .copied()
            .filter(|&c| (1..=6).contains(&c))
            .collect()
    }
}

impl Strategy for Recolorer {
    fn name(&self) -> String {
        "recolorer".into()
    }

    fn palette(&self) -> Option<Color> {
        Some(7)
    }

    fn recoloring_allowed(&self) -> bool {
        true
    }

    fn decide(&self, env: &Environment) -> Option<MoveDecision> {
        let own = RecolorCode::decode(env.self_color)?;
        let labeled = Self::labeled_codes(env);

        // Effective label: the prospective one on a fresh vertex. Deleted
        // neighbors are ignored for all classification.
        let (label, own_hue) = match own {
            RecolorCode::Deleted => return None, // deleted vertices are never revisited
            RecolorCode::Labeled { label, hue } => (label, Some(hue)),
            RecolorCode::Unvisited => {
                let neighbor_labels: Vec<u8> = labeled
                    .iter()
                    .map(|&c| match RecolorCode::decode(c) {
                        Some(RecolorCode::Labeled { label, .. }) => label,
                        _ => unreachable!(),
                    })
                    .collect();
                let label = match cyclic_min_label(&neighbor_labels) {
                    None => 1, // start vertex: no labeled neighbors
                    Some(base) => next_label(base),
                };
                (label, None)
            }
        };

        // Children: unlabeled neighbors count as potential children; among
        // labeled neighbors, those carrying the successor label.
        let child_label = next_label(label);
        let labeled_children: Vec<Color> = labeled
            .iter()
            .copied()
            .filter(|&c| matches!(RecolorCode::decode(c),
                Some(RecolorCode::Labeled { label, .. }) if label == child_label))
            .collect();
        let no_children = env.count(0) == 0 && labeled_children.is_empty();

        let parents = Self::parents(env, label);

        if no_children {
            // Entire subtree explored, or nothing to explore: delete and
            // retreat. Without a parent this is the start vertex; stopping
            // there ends the run.
            return Some(match parents.first() {
                None => MoveDecision::Stop,
                Some(&p) => MoveDecision::Move { assign: RecolorCode::DELETED, target: p },
            });
        }

        match own_hue {
            None => {
                // First visit: label by depth, color against the parents'
                // color, and retreat to a parent (the start vertex has none
                // and descends instead).
                let has_red_parent = parents.iter().any(|&c| {
                    matches!(RecolorCode::decode(c), Some(RecolorCode::Labeled { hue: Hue::Red, .. }))
                });
                let hue = if has_red_parent { Hue::Green } else { Hue::Red };
                let assign = RecolorCode::Labeled { label, hue }.encode();
                let target = match parents.first() {
                    Some(&p) => p,
                    None => env
                        .neighbor_counts
                        .keys()
                        .copied()
                        .find(|&c| c != RecolorCode::DELETED)?,
                };
                Some(MoveDecision::Move { assign, target })
            }
            Some(hue) => {
                if env.count(0) > 0 {
                    // The level below is not fully explored.
                    return Some(MoveDecision::Move { assign: env.self_color, target: 0 });
                }
                let same_color_child =
                    RecolorCode::Labeled { label: child_label, hue }.encode();
                if env.count(same_color_child) > 0 {
                    // Some deeper level is not fully explored.
                    return Some(MoveDecision::Move {
                        assign: env.self_color,
                        target: same_color_child,
                    });
                }
                let flipped_child =
                    RecolorCode::Labeled { label: child_label, hue: hue.flip() }.encode();
                if !labeled_children.is_empty()
                    && labeled_children.iter().all(|&c| c == flipped_child)
                {
                    // Subtree swept: agree with the children and retreat.
                    let assign = RecolorCode::Labeled { label, hue: hue.flip() }.encode();
                    let target = match parents.first() {
                        Some(&p) => p,
                        None => flipped_child,
                    };
                    return Some(MoveDecision::Move { assign, target });
                }
                None
            }
        }
    }
}

/// One-color path walker with recoloring: colors its way from the start
/// leaf to the far leaf, then walks back erasing. Correct on paths entered
/// at a leaf.
pub struct PathRecolorer;

impl Strategy for PathRecolorer {
    fn name(&self) -> String {
        "pathrecolorer".into()
    }

    fn palette(&self) -> Option<Color> {
        Some(1)
    }

    fn recoloring_allowed(&self) -> bool {
        true
    }

    fn decide(&self, env: &Environment) -> Option<MoveDecision> {
        Some(if env.degree() == 0 {
            MoveDecision::Stop
        } else if env.self_color == 0 && env.count(0) > 0 {
            MoveDecision::Move { assign: 1, target: 0 }
        } else if env.self_color == 1 && env.count(1) == 0 {
            MoveDecision::Stop
        } else {
            // Turned around: erase and follow the colored trail back.
            MoveDecision::Move { assign: 0, target: 1 }
        })
    }
}

/// Looks up a strategy by its registry name: `tree`, `dfs`, `dfs_n:<n>`,
/// `smalldfs:<k>`, `squarepath`, `recolorer`, `pathrecolorer`.
pub fn strategy_by_name(name: &str) -> Option<Box<dyn Strategy>> {
    match name {
        "tree" => Some(Box::new(TreeExploration)),
        "dfs" => Some(Box::new(DepthFirstSearch)),
        "squarepath" => Some(Box::new(SquarePathExploration)),
        "recolorer" => Some(Box::new(Recolorer)),
        "pathrecolorer" => Some(Box::new(PathRecolorer)),
        _ => {
            if let Some(arg) = name.strip_prefix("dfs_n:") {
                let n: usize = arg.parse().ok()?;
                return SizedDfs::new(n).map(|s| Box::new(s) as Box<dyn Strategy>);
            }
            if let Some(arg) = name.strip_prefix("smalldfs:") {
                let k: usize = arg.parse().ok()?;
                return SmallDfs::new(k).map(|s| Box::new(s) as Box<dyn Strategy>);
            }
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(self_color: Color, neighbors: &[Color]) -> Environment {
        Environment::new(self_color, neighbors.iter().copied())
    }

    fn mv(assign: Color, target: Color) -> Option<MoveDecision> {
        Some(MoveDecision::Move { assign, target })
    }

    #[test]
    fn tree_exploration_decisions() {
        let s = TreeExploration;
        assert_eq!(s.decide(&env(0, &[0, 0])), mv(1, 0));
        assert_eq!(s.decide(&env(1, &[2, 2, 2])), Some(MoveDecision::Stop));
        assert_eq!(s.decide(&env(3, &[2, 1])), mv(3, 2));
        // Wrap: a 1-colored vertex with a 3-neighbor backtracks into it.
        assert_eq!(s.decide(&env(1, &[3, 2])), mv(1, 3));
        // Fresh vertex among colored ones: max{3} + 1 wraps to 1.
        assert_eq!(s.decide(&env(0, &[3, 0])), mv(1, 0));
    }

    #[test]
    fn dfs_decisions() {
        let s = DepthFirstSearch;
        assert_eq!(s.decide(&env(0, &[3, 5, 5])), mv(5, 5));
        assert_eq!(s.decide(&env(0, &[0, 0, 2])), mv(3, 0));
        assert_eq!(s.decide(&env(1, &[2, 2])), Some(MoveDecision::Stop));
        assert_eq!(s.decide(&env(4, &[3, 5])), mv(4, 3));
        assert_eq!(s.decide(&env(0, &[])), Some(MoveDecision::Stop));
    }

    #[test]
    fn sized_dfs_decisions() {
        let s = SizedDfs::new(6).unwrap();
        // Rule 1 with an uncolored neighbor: smallest unproblematic is 2
        // because a 2-neighbor blocks color 1.
        assert_eq!(s.decide(&env(0, &[4, 0, 2])), mv(2, 0));
        // Rule 1 with everything colored: return to the n-2 neighbor.
        assert_eq!(s.decide(&env(0, &[4])), mv(1, 4));
        // Rule 2: two n-2 neighbors; head for the smallest color present.
        assert_eq!(s.decide(&env(0, &[4, 4, 1])), mv(1, 1));
        // Rule 3 (n = 10): blocked backtracking takes the largest color.
        let s10 = SizedDfs::new(10).unwrap();
        assert_eq!(s10.decide(&env(5, &[7, 3])), mv(5, 7));
        // Plain DFS otherwise.
        assert_eq!(s.decide(&env(0, &[0, 1])), mv(2, 0));
        assert!(SizedDfs::new(4).is_none());
    }

    #[test]
    fn cyclic_max_paper_examples() {
        for k in 3..=6 {
            let kk = (k + 1) as Color;
            assert_eq!(cyclic_max(k, &[1, 2]), Some(2), "k = {k}");
            assert_eq!(cyclic_max(k, &[2, kk]), Some(kk), "k = {k}");
            assert_eq!(cyclic_max(k, &[1, kk]), Some(1), "k = {k}");
        }
    }

    #[test]
    fn cyclic_max_total_and_tie_free_on_pairs() {
        for k in 3..=8usize {
            let m = (2 * k - 1) as Color;
            let palette = CyclicPalette::new(k).unwrap();
            for a in 1..=m {
                for b in (a + 1)..=m {
                    let r = palette.cyclic_max(&[a, b]).unwrap();
                    assert!(r == a || r == b);
                    // Exactly one of the two window conditions holds.
                    assert_ne!(palette.precedes(a, b), palette.precedes(b, a));
                    // Agreement with the linear characterization.
                    let expected = if (b - a) as usize <= k - 1 { b } else { a };
                    assert_eq!(r, expected, "k = {k}, pair ({a}, {b})");
                }
            }
        }
    }

    #[test]
    fn cyclic_max_multiset_fallback() {
        // With k = 3, {1, 2, 4} has no dominating element: fall back to the
        // plain maximum.
        assert_eq!(cyclic_max(3, &[1, 2, 4]), Some(4));
        // {5, 1}: 1 dominates (5 is its predecessor).
        assert_eq!(cyclic_max(3, &[5, 1]), Some(1));
        assert_eq!(cyclic_max(3, &[4, 5, 1]), Some(1));
        assert_eq!(cyclic_max(3, &[]), None);
    }

    #[test]
    fn small_dfs_decisions() {
        let s = SmallDfs::new(3).unwrap();
        // max3{5} = 5, then (5 + 1) mod1 5 = 1; no uncolored neighbor, so
        // backtrack to (1 - 1) mod1 5 = 5.
        assert_eq!(s.decide(&env(0, &[5])), mv(1, 5));
        assert_eq!(s.decide(&env(1, &[5])), mv(1, 5));
        let s4 = SmallDfs::new(4).unwrap();
        assert_eq!(s4.decide(&env(0, &[0, 0, 0])), mv(1, 0));
    }

    #[test]
    fn square_path_decisions() {
        let s = SquarePathExploration;
        assert_eq!(s.decide(&env(0, &[1, 2, 0, 0])), mv(2, 2));
        assert_eq!(s.decide(&env(0, &[1, 2, 3, 0])), mv(4, 0));
        assert_eq!(s.decide(&env(0, &[1, 2, 3])), mv(4, 3));
        assert_eq!(s.decide(&env(0, &[2])), mv(3, 2));
        assert_eq!(s.decide(&env(0, &[0, 0, 0, 0])), mv(1, 0));
        assert_eq!(s.decide(&env(0, &[3, 4, 0])), mv(1, 0));
        assert_eq!(s.decide(&env(2, &[1, 3])), mv(2, 1));
        assert_eq!(s.decide(&env(1, &[2, 2])), Some(MoveDecision::Stop));
        // {4, 4} is unreachable on square paths.
        assert_eq!(s.decide(&env(0, &[4, 4])), None);
    }

    #[test]
    fn recolor_code_round_trip() {
        assert_eq!(
            RecolorCode::Labeled { label: 1, hue: Hue::Red }.encode(),
            1
        );
        for code in 0..=7 {
            assert_eq!(RecolorCode::decode(code).unwrap().encode(), code);
        }
        assert!(RecolorCode::decode(8).is_none());
    }

    #[test]
    fn recolorer_decisions() {
        let s = Recolorer;
        // Start vertex, all neighbors unvisited: label 1 red (code 1), then
        // descend into an unvisited neighbor.
        assert_eq!(s.decide(&env(0, &[0, 0, 0])), mv(1, 0));
        // Fresh leaf below a red parent: nothing to explore, delete.
        assert_eq!(s.decide(&env(0, &[1])), mv(7, 1));
        // Labeled red vertex whose children all turned green: agree and
        // retreat to the (green label-1) parent.
        assert_eq!(s.decide(&env(3, &[2, 6])), mv(4, 2));
        // Unlabeled child present: descend.
        assert_eq!(s.decide(&env(1, &[0, 7])), mv(1, 0));
        // Same-color child present: descend into it.
        assert_eq!(s.decide(&env(1, &[3, 4])), mv(1, 3));
        // All children deleted at the start vertex: stop.
        assert_eq!(s.decide(&env(1, &[7, 7])), Some(MoveDecision::Stop));
        // All children deleted elsewhere: delete and retreat.
        assert_eq!(s.decide(&env(3, &[1, 7])), mv(7, 1));
    }

    #[test]
    fn path_recolorer_decisions() {
        let s = PathRecolorer;
        assert_eq!(s.decide(&env(0, &[0])), mv(1, 0));
        assert_eq!(s.decide(&env(0, &[1])), mv(0, 1));
        assert_eq!(s.decide(&env(1, &[1, 0])), mv(0, 1));
        assert_eq!(s.decide(&env(1, &[0])), Some(MoveDecision::Stop));
        assert_eq!(s.decide(&env(0, &[])), Some(MoveDecision::Stop));
    }

    #[test]
    fn registry_resolves_names() {
        for name in ["tree", "dfs", "dfs_n:6", "smalldfs:3", "squarepath", "recolorer", "pathrecolorer"] {
            let s = strategy_by_name(name).unwrap_or_else(|| panic!("{name} missing"));
            assert_eq!(s.name(), name);
        }
        assert!(strategy_by_name("dfs_n:4").is_none());
        assert!(strategy_by_name("smalldfs:2").is_none());
        assert!(strategy_by_name("nope").is_none());
    }
}
