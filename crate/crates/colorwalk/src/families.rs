//! Witness-family generators and exhaustive graph enumeration.
//!
//! Generators follow the 1-based indexing of the source constructions
//! externally; vertex ids are 0-based internally. The mapping is documented
//! per generator.

use crate::graph::{Graph, GraphError};

/// Identifies a parameterized graph family instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFamilyId {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    SquarePath(usize),
    /// Spine of `m` vertices, private leaf on every spine vertex except
    /// positions `i` and `j`, one shared leaf adjacent to both.
    MergedLeafCaterpillar(usize, usize, usize),
    Fan(usize),
    BipartiteDoubleFan(usize),
    /// Builds two graphs; see [`build_circumference_pair`].
    CircumferencePair(usize),
    CliqueTwoLeaves(usize),
    CantGoBackFixture,
    TriangleFanFixture(usize, usize),
}

impl GraphFamilyId {
    /// Builds the family instance; `CircumferencePair` yields two graphs.
    pub fn build(self) -> Result<Vec<Graph>, GraphError> {
        Ok(match self {
            GraphFamilyId::Path(n) => vec![build_path(n)?],
            GraphFamilyId::Cycle(n) => vec![build_cycle(n)?],
            GraphFamilyId::Complete(n) => vec![build_complete(n)?],
            GraphFamilyId::SquarePath(n) => vec![build_square_path(n)?],
            GraphFamilyId::MergedLeafCaterpillar(m, i, j) => {
                vec![build_merged_leaf_caterpillar(m, i, j)?]
            }
            GraphFamilyId::Fan(m) => vec![build_fan(m)?],
            GraphFamilyId::BipartiteDoubleFan(m) => vec![build_bipartite_double_fan(m)?],
            GraphFamilyId::CircumferencePair(k) => {
                let (a, b) = build_circumference_pair(k)?;
                vec![a, b]
            }
            GraphFamilyId::CliqueTwoLeaves(n) => vec![build_clique_two_leaves(n)?],
            GraphFamilyId::CantGoBackFixture => vec![build_cant_go_back_fixture()?],
            GraphFamilyId::TriangleFanFixture(r, k) => vec![build_triangle_fan_fixture(r, k)?],
        })
    }
}

fn require(cond: bool, msg: &str) -> Result<(), GraphError> {
    if cond {
        Ok(())
    } else {
        Err(GraphError::BadParameter(msg.to_string()))
    }
}

/// Path `v_0 - v_1 - ... - v_{n-1}`.
pub fn build_path(n: usize) -> Result<Graph, GraphError> {
    require(n >= 1, "path requires n >= 1")?;
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::new(n, &edges)
}

pub fn build_cycle(n: usize) -> Result<Graph, GraphError> {
    require(n >= 3, "cycle requires n >= 3")?;
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((0, n - 1));
    Graph::new(n, &edges)
}

pub fn build_complete(n: usize) -> Result<Graph, GraphError> {
    require(n >= 1, "complete graph requires n >= 1")?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges)
}

/// Square of a path: path edges plus edges between vertices at distance 2.
pub fn build_square_path(n: usize) -> Result<Graph, GraphError> {
    require(n >= 1, "square path requires n >= 1")?;
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    edges.extend((2..n).map(|v| (v - 2, v)));
    Graph::new(n, &edges)
}

/// Spine path of `m` vertices (spine position `r` in `1..=m` is vertex
/// `r - 1`), a private leaf on every spine vertex except positions `i` and
/// `j`, and one shared leaf adjacent to spine positions `i` and `j`.
/// Private leaves take ids `m..2m-2` in spine order; the shared leaf is the
/// last vertex `2m - 2`. Total: `2m - 1` vertices.
pub fn build_merged_leaf_caterpillar(
    m: usize,
    i: usize,
    j: usize,
) -> Result<Graph, GraphError> {
    require(m >= 3, "merged-leaf caterpillar requires m >= 3")?;
    require(
        1 <= i && i < j && j <= m,
        "merged-leaf caterpillar requires 1 <= i < j <= m",
    )?;
    let mut edges: Vec<_> = (1..m).map(|v| (v - 1, v)).collect();
    let mut next = m;
    for r in 1..=m {
        if r != i && r != j {
            edges.push((r - 1, next));
            next += 1;
        }
    }
    let shared = next;
    edges.push((i - 1, shared));
    edges.push((j - 1, shared));
    Graph::new(2 * m - 1, &edges)
}

/// Path of `m` vertices `0..m` plus an apex vertex `m` adjacent to all of
/// them.
pub fn build_fan(m: usize) -> Result<Graph, GraphError> {
    require(m >= 2, "fan requires m >= 2")?;
    let mut edges: Vec<_> = (1..m).map(|v| (v - 1, v)).collect();
    edges.extend((0..m).map(|v| (v, m)));
    Graph::new(m + 1, &edges)
}

/// Path of `m` vertices; apex `m` is adjacent to the odd path positions
/// (1-based, so vertices 0, 2, 4, ...), apex `m + 1` to the even positions.
pub fn build_bipartite_double_fan(m: usize) -> Result<Graph, GraphError> {
    require(m >= 2, "bipartite double fan requires m >= 2")?;
    let u = m;
    let u_even = m + 1;
    let mut edges: Vec<_> = (1..m).map(|v| (v - 1, v)).collect();
    for pos in 1..=m {
        if pos % 2 == 1 {
            edges.push((pos - 1, u));
        } else {
            edges.push((pos - 1, u_even));
        }
    }
    Graph::new(m + 2, &edges)
}

/// The circumference-`k` witness pair.
///
/// Both graphs start from a path of `2k` vertices (position `p` in `1..=2k`
/// is vertex `p - 1`) with a leaf attached at position `2k - 3`.
/// G1 additionally has a leaf at position `k - 1` and the chord `{1, k}`;
/// G2 instead has leaves at positions `1` and `k` and the chord
/// `{k - 1, 2k - 2}`. Leaves take ids following the path vertices, in the
/// order listed. Both graphs have circumference exactly `k`.
pub fn build_circumference_pair(k: usize) -> Result<(Graph, Graph), GraphError> {
    require(k >= 3, "circumference pair requires k >= 3")?;
    let path: Vec<_> = (1..2 * k).map(|v| (v - 1, v)).collect();

    let mut e1 = path.clone();
    e1.push((2 * k - 3 - 1, 2 * k)); // leaf at position 2k-3
    e1.push((k - 1 - 1, 2 * k + 1)); // leaf at position k-1
    e1.push((0, k - 1)); // chord {1, k}
    let g1 = Graph::new(2 * k + 2, &e1)?;

    let mut e2 = path;
    e2.push((2 * k - 3 - 1, 2 * k)); // leaf at position 2k-3
    e2.push((0, 2 * k + 1)); // leaf at position 1
    e2.push((k - 1, 2 * k + 2)); // leaf at position k
    e2.push((k - 1 - 1, 2 * k - 2 - 1)); // chord {k-1, 2k-2}
    let g2 = Graph::new(2 * k + 3, &e2)?;
    Ok((g1, g2))
}

/// Clique of `n - 3` vertices (`0..n-3`) where vertices 0 and 1 each carry a
/// leaf (`n - 3`, `n - 2`) and the remaining clique vertices are all adjacent
/// to a special vertex `s = n - 1` of degree `n - 5`.
pub fn build_clique_two_leaves(n: usize) -> Result<Graph, GraphError> {
    require(n >= 6, "clique-two-leaves requires n >= 6")?;
    let clique = n - 3;
    let mut edges = Vec::new();
    for u in 0..clique {
        for v in (u + 1)..clique {
            edges.push((u, v));
        }
    }
    edges.push((0, n - 3));
    edges.push((1, n - 2));
    let s = n - 1;
    for v in 2..clique {
        edges.push((v, s));
    }
    Graph::new(n, &edges)
}

/// Two length-2 paths sharing an endpoint: `u - v - p - v' - u'`.
/// Vertices: p = 0, v = 1, v' = 2, u = 3, u' = 4.
pub fn build_cant_go_back_fixture() -> Result<Graph, GraphError> {
    Graph::new(5, &[(0, 1), (0, 2), (1, 3), (2, 4)])
}

/// Triangle `p, v, v'` where `v` additionally carries `r + k` pendant
/// vertices (`r` play the uncolored leaves, `k` the colored neighbors).
/// Vertices: p = 0, v = 1, v' = 2, pendants 3..3+r+k.
pub fn build_triangle_fan_fixture(r: usize, k: usize) -> Result<Graph, GraphError> {
    let mut edges = vec![(0, 1), (0, 2), (1, 2)];
    for t in 0..(r + k) {
        edges.push((1, 3 + t));
    }
    Graph::new(3 + r + k, &edges)
}

/// All labeled trees on `n` vertices in deterministic order
/// (lexicographic Prüfer sequences). Bounded to `n <= 10`.
pub fn enumerate_trees(n: usize) -> Result<impl Iterator<Item = Graph>, GraphError> {
    require((1..=10).contains(&n), "tree enumeration requires 1 <= n <= 10")?;
    let seqs: Box<dyn Iterator<Item = Vec<usize>>> = if n <= 2 {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new(PruferOdometer {
            n,
            seq: Some(vec![0; n - 2]),
        })
    };
    Ok(seqs.map(move |s| tree_from_prufer(n, &s)))
}

struct PruferOdometer {
    n: usize,
    seq: Option<Vec<usize>>,
}

impl Iterator for PruferOdometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.seq.clone()?;
        let seq = self.seq.as_mut().unwrap();
        let mut pos = seq.len();
        loop {
            if pos == 0 {
                self.seq = None;
                break;
            }
            pos -= 1;
            if seq[pos] + 1 < self.n {
                seq[pos] += 1;
                for x in &mut seq[pos + 1..] {
                    *x = 0;
                }
                break;
            }
        }
        Some(current)
    }
}

fn tree_from_prufer(n: usize, seq: &[usize]) -> Graph {
    if n == 1 {
        return Graph::new(1, &[]).unwrap();
    }
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let l = *leaves.iter().next().expect("a leaf always remains");
        leaves.remove(&l);
        edges.push((l, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let mut rest = leaves.into_iter();
    let u = rest.next().expect("two vertices remain");
    let v = rest.next().expect("two vertices remain");
    edges.push((u, v));
    Graph::new(n, &edges).expect("Prüfer decoding yields a tree")
}

/// All connected labeled graphs on `n` vertices in deterministic order
/// (ascending edge-subset bitmask over the edges of `K_n`). Bounded to
/// `n <= 7`.
pub fn enumerate_connected_graphs(
    n: usize,
) -> Result<impl Iterator<Item = Graph>, GraphError> {
    require(
        (1..=7).contains(&n),
        "connected-graph enumeration requires 1 <= n <= 7",
    )?;
    let all_edges: Vec<(usize, usize)> = {
        let mut e = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                e.push((u, v));
            }
        }
        e
    };
    let total = 1u64 << all_edges.len();
    Ok((0..total).filter_map(move |mask| {
        if !mask_connected(n, &all_edges, mask) {
            return None;
        }
        let edges: Vec<_> = all_edges
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Some(Graph::new(n, &edges).expect("mask pre-filtered for connectivity"))
    }))
}

fn mask_connected(n: usize, all_edges: &[(usize, usize)], mask: u64) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut components = n;
    for (i, &(u, v)) in all_edges.iter().enumerate() {
        if mask >> i & 1 == 1 {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
                components -= 1;
            }
        }
    }
    components == 1
}

/// Deduplicates a sequence of graphs up to isomorphism via canonical
/// edge-bitmask minimization over all vertex permutations. Intended for
/// `n <= 6`.
pub fn dedup_isomorphic(graphs: impl Iterator<Item = Graph>) -> Vec<Graph> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for g in graphs {
        if seen.insert(canonical_mask(&g)) {
            out.push(g);
        }
    }
    out
}

fn canonical_mask(g: &Graph) -> u64 {
    let n = g.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    permute(&mut perm, 0, &mut |p| {
        let mut mask = 0u64;
        for &(u, v) in g.edges() {
            let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
            mask |= 1 << (a * n + b);
        }
        best = best.min(mask);
    });
    best
}

fn permute(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_examples() {
        let g = build_path(1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        let g = build_path(7).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (7, 6));
        assert_eq!(g.circumference(), 0);
        let g = build_path(4).unwrap();
        let degs: Vec<_> = (0..4).map(|v| g.degree(v)).collect();
        assert_eq!(degs, vec![1, 2, 2, 1]);
    }

    #[test]
    fn square_path_examples() {
        let g = build_square_path(3).unwrap();
        assert_eq!(g, build_complete(3).unwrap());
        let g = build_square_path(18).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (18, 33));
        assert_eq!(build_square_path(5).unwrap().circumference(), 5);
    }

    #[test]
    fn caterpillar_examples() {
        for m in 3..=8 {
            for i in 1..m {
                for j in (i + 1)..=m {
                    let g = build_merged_leaf_caterpillar(m, i, j).unwrap();
                    assert_eq!(g.vertex_count(), 2 * m - 1);
                    assert_eq!(g.circumference(), j - i + 2);
                }
            }
        }
        let g = build_merged_leaf_caterpillar(3, 1, 3).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.circumference(), 4);
        let g = build_merged_leaf_caterpillar(4, 2, 3).unwrap();
        let shared = g.vertex_count() - 1;
        assert_eq!(g.degree(shared), 2);
        assert_eq!(g.neighbors(shared), &[1, 2]);
        assert!(build_merged_leaf_caterpillar(4, 3, 3).is_err());
        assert!(build_merged_leaf_caterpillar(4, 0, 2).is_err());
    }

    #[test]
    fn fan_examples() {
        let g = build_fan(2).unwrap();
        assert_eq!(g, build_complete(3).unwrap());
        let g = build_fan(5).unwrap();
        assert_eq!(g.degree(5), 5);
        assert_eq!(g.vertex_count(), 6);
    }

    #[test]
    fn bipartite_double_fan_examples() {
        for m in 2..=12 {
            let g = build_bipartite_double_fan(m).unwrap();
            assert!(g.is_bipartite(), "m = {m} not bipartite");
        }
        let g = build_bipartite_double_fan(2).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.degree(2), 1);
        assert_eq!(g.degree(3), 1);
        let g = build_bipartite_double_fan(6).unwrap();
        assert_eq!(g.degree(6), 3);
        assert_eq!(g.degree(7), 3);
    }

    #[test]
    fn circumference_pair_examples() {
        for k in 3..=6 {
            let (g1, g2) = build_circumference_pair(k).unwrap();
            assert_eq!(g1.circumference(), k, "G1 at k = {k}");
            assert_eq!(g2.circumference(), k, "G2 at k = {k}");
            assert_ne!(g1.vertex_count(), g2.vertex_count());
        }
        let (g1, _) = build_circumference_pair(3).unwrap();
        assert_eq!(g1.vertex_count(), 8);
    }

    #[test]
    fn clique_two_leaves_examples() {
        let g = build_clique_two_leaves(8).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.degree(7), 3); // s
        for n in 6..=10 {
            let g = build_clique_two_leaves(n).unwrap();
            assert_eq!(g.degree(n - 1), n - 5);
            for v in 0..(n - 3) {
                assert_eq!(g.degree(v), n - 3, "clique vertex {v} at n = {n}");
            }
        }
        assert!(build_clique_two_leaves(5).is_err());
    }

    #[test]
    fn tree_enumeration_counts() {
        assert_eq!(enumerate_trees(1).unwrap().count(), 1);
        assert_eq!(enumerate_trees(2).unwrap().count(), 1);
        assert_eq!(enumerate_trees(3).unwrap().count(), 3);
        assert_eq!(enumerate_trees(5).unwrap().count(), 125);
        for n in 2..=6 {
            let expected = (n as u64).pow(n as u32 - 2);
            let mut count = 0u64;
            for t in enumerate_trees(n).unwrap() {
                assert_eq!(t.edge_count(), n - 1);
                count += 1;
            }
            assert_eq!(count, expected, "n = {n}");
        }
        assert!(enumerate_trees(11).is_err());
    }

    #[test]
    fn connected_enumeration_counts() {
        assert_eq!(enumerate_connected_graphs(2).unwrap().count(), 1);
        assert_eq!(enumerate_connected_graphs(3).unwrap().count(), 4);
        assert_eq!(enumerate_connected_graphs(4).unwrap().count(), 38);
        assert_eq!(enumerate_connected_graphs(5).unwrap().count(), 728);
        assert!(enumerate_connected_graphs(8).is_err());
    }

    #[test]
    fn dedup_reduces_to_isomorphism_classes() {
        // Connected graphs on 4 vertices: 38 labeled, 6 up to isomorphism.
        let classes = dedup_isomorphic(enumerate_connected_graphs(4).unwrap());
        assert_eq!(classes.len(), 6);
        let classes = dedup_isomorphic(enumerate_trees(4).unwrap());
        assert_eq!(classes.len(), 2); // path and star
    }

    #[test]
    fn family_id_dispatch() {
        assert_eq!(GraphFamilyId::CircumferencePair(3).build().unwrap().len(), 2);
        assert_eq!(GraphFamilyId::Fan(3).build().unwrap().len(), 1);
        let fix = GraphFamilyId::CantGoBackFixture.build().unwrap();
        assert_eq!(fix[0].vertex_count(), 5);
        let tf = GraphFamilyId::TriangleFanFixture(2, 3).build().unwrap();
        assert_eq!(tf[0].vertex_count(), 8);
        assert_eq!(tf[0].degree(1), 2 + 2 + 3);
    }
}
