//! Induced-path buckets keyed by endpoint pairs and their heavy vertices.

use super::{choose, frac_gt, Eps};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracle::WITNESS_BUDGET;
use std::collections::BTreeMap;

/// An induced path, endpoints first and last, stored with its smaller
/// endpoint first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedPath {
    pub vertices: Vec<usize>,
}

impl InducedPath {
    pub fn endpoints(&self) -> (usize, usize) {
        (self.vertices[0], *self.vertices.last().expect("paths are nonempty"))
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }
}

/// All induced paths on at most `t − 1` vertices, grouped by endpoint pair.
#[derive(Debug, Clone)]
pub struct PathBuckets {
    pub t: usize,
    pub n: usize,
    buckets: BTreeMap<(usize, usize), Vec<InducedPath>>,
}

impl PathBuckets {
    /// The paths with endpoints `{u, v}`; empty for unconnected pairs.
    pub fn bucket(&self, u: usize, v: usize) -> &[InducedPath] {
        let key = (u.min(v), u.max(v));
        self.buckets.get(&key).map_or(&[], Vec::as_slice)
    }

    /// Nonempty buckets in ascending key order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &[InducedPath])> {
        self.buckets.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    pub fn nonempty_buckets(&self) -> usize {
        self.buckets.len()
    }

    pub fn total_paths(&self) -> usize {
        self.buckets.values().map(Vec::len).sum()
    }

    /// All endpoint pairs, nonempty buckets or not: the heavy-vertex
    /// denominator.
    pub fn pair_count(&self) -> usize {
        choose(self.n, 2)
    }
}

/// Enumerates every induced path of `G` on at most `t − 1` vertices into
/// per-pair buckets. On `P_t`-free inputs this is all induced paths.
pub fn path_buckets(g: &Graph, t: usize) -> Result<PathBuckets> {
    path_buckets_with_budget(g, t, WITNESS_BUDGET)
}

/// As [`path_buckets`], aborting once more than `budget` extension steps
/// have been spent.
pub fn path_buckets_with_budget(g: &Graph, t: usize, budget: u64) -> Result<PathBuckets> {
    let max_len = t.saturating_sub(1);
    let mut buckets: BTreeMap<(usize, usize), Vec<InducedPath>> = BTreeMap::new();
    let mut left = budget;
    let mut path = Vec::new();
    for start in g.vertices().iter() {
        path.push(start);
        let mut forbidden = VertexSet::new();
        forbidden.insert(start);
        grow(g, &mut path, &forbidden, max_len, &mut left, &mut |p| {
            // Each path is seen once from either endpoint; keep the
            // orientation that starts at the smaller one.
            if p[0] < p[p.len() - 1] {
                buckets
                    .entry((p[0], p[p.len() - 1]))
                    .or_default()
                    .push(InducedPath { vertices: p.to_vec() });
            }
        })?;
        path.pop();
    }
    Ok(PathBuckets { t, n: g.n(), buckets })
}

/// Depth-first extension of an induced path: candidates are neighbors of the
/// last vertex not adjacent to (or equal to) any earlier vertex.
fn grow(
    g: &Graph,
    path: &mut Vec<usize>,
    forbidden: &VertexSet,
    max_len: usize,
    budget: &mut u64,
    emit: &mut impl FnMut(&[usize]),
) -> Result<()> {
    if path.len() >= 2 {
        emit(path);
    }
    if path.len() >= max_len {
        return Ok(());
    }
    let last = *path.last().expect("path is nonempty");
    let cands = g.neighbors(last).difference(forbidden);
    let next_forbidden = forbidden.union(g.neighbors(last));
    for w in cands.iter() {
        if *budget == 0 {
            return Err(Error::WitnessBudget { op: "induced path buckets", budget: WITNESS_BUDGET });
        }
        *budget -= 1;
        path.push(w);
        let mut f = next_forbidden.clone();
        f.insert(w);
        grow(g, path, &f, max_len, budget, emit)?;
        path.pop();
    }
    Ok(())
}

/// Picks a vertex whose closed neighborhood hits strictly more than an `eps`
/// fraction of paths in strictly more than an `eps` fraction of all pairs.
/// Among qualifying vertices the one with the most qualifying pairs wins,
/// ties by smallest index; `None` when nothing qualifies.
pub fn heavy_vertex(g: &Graph, eps: Eps, index: &PathBuckets) -> Option<usize> {
    let total_pairs = index.pair_count();
    let sets: Vec<(usize, Vec<VertexSet>)> = index
        .iter()
        .map(|(_, paths)| (paths.len(), paths.iter().map(InducedPath::vertex_set).collect()))
        .collect();
    let mut best: Option<(usize, usize)> = None;
    for x in g.vertices().iter() {
        let ball = g.closed_neighborhood(&VertexSet::singleton(x));
        let qualifying = sets
            .iter()
            .filter(|(size, paths)| {
                let hits = paths.iter().filter(|p| p.intersects(&ball)).count();
                frac_gt(hits, *size, eps)
            })
            .count();
        if frac_gt(qualifying, total_pairs, eps) {
            let better = best.map_or(true, |(q, _)| qualifying > q);
            if better {
                best = Some((qualifying, x));
            }
        }
    }
    best.map(|(_, x)| x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn make_graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges, None).unwrap()
    }

    fn path_graph(n: usize) -> Graph {
        make_graph(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    #[test]
    fn p3_has_three_buckets() {
        let g = path_graph(3);
        let idx = path_buckets(&g, 6).unwrap();
        assert_eq!(idx.nonempty_buckets(), 3);
        assert_eq!(idx.bucket(0, 2).len(), 1);
        assert_eq!(idx.bucket(0, 2)[0].vertices, vec![0, 1, 2]);
        assert_eq!(idx.bucket(0, 1)[0].vertices, vec![0, 1]);
    }

    #[test]
    fn isolated_vertices_have_empty_buckets() {
        let g = make_graph(2, &[]);
        let idx = path_buckets(&g, 6).unwrap();
        assert_eq!(idx.nonempty_buckets(), 0);
        assert!(idx.bucket(0, 1).is_empty());
    }

    #[test]
    fn c5_buckets_follow_the_arcs() {
        // The cycle edge 0–1 chords any longer 0–1 walk, so the adjacent
        // pair keeps only the edge; the far detour shows up for 0 and 2.
        let g = make_graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let idx = path_buckets(&g, 6).unwrap();
        let close = idx.bucket(0, 1);
        assert_eq!(close.len(), 1);
        assert_eq!(close[0].vertices, vec![0, 1]);
        let far = idx.bucket(0, 2);
        assert_eq!(far.len(), 2);
        assert_eq!(far[0].vertices, vec![0, 1, 2]);
        assert_eq!(far[1].vertices, vec![0, 4, 3, 2]);
    }

    #[test]
    fn length_cap_prunes_long_paths() {
        let g = path_graph(8);
        let idx = path_buckets(&g, 4).unwrap();
        // Only subpaths on ≤ 3 vertices remain.
        assert!(idx.iter().all(|(_, b)| b.iter().all(|p| p.vertices.len() <= 3)));
        assert!(idx.bucket(0, 3).is_empty());
        assert_eq!(idx.bucket(0, 2).len(), 1);
    }

    #[test]
    fn nonempty_iff_connected_pair() {
        let g = make_graph(5, &[(0, 1), (1, 2), (3, 4)]);
        let idx = path_buckets(&g, 6).unwrap();
        for u in 0..5 {
            for v in u + 1..5 {
                let connected = (u < 3) == (v < 3);
                assert_eq!(!idx.bucket(u, v).is_empty(), connected, "pair ({u},{v})");
            }
        }
    }

    #[test]
    fn k2_heavy_vertex_is_zero() {
        let g = make_graph(2, &[(0, 1)]);
        let idx = path_buckets(&g, 6).unwrap();
        assert_eq!(heavy_vertex(&g, Eps::new(1, 4), &idx), Some(0));
    }

    #[test]
    fn long_path_has_no_tenth_heavy_vertex() {
        let g = path_graph(200);
        let idx = path_buckets(&g, 6).unwrap();
        assert_eq!(heavy_vertex(&g, Eps::new(1, 10), &idx), None);
    }

    #[test]
    fn tiny_budget_fails_loudly() {
        let g = make_graph(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        match path_buckets_with_budget(&g, 6, 3) {
            Err(Error::WitnessBudget { .. }) => {}
            other => panic!("expected witness-budget failure, got {other:?}"),
        }
    }
}
