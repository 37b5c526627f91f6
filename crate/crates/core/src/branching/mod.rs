//! Subproblems of the branching recursion and the operations that grow them.

use std::collections::BTreeMap;

use num::BigUint;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

mod potential;
mod solve;
mod strategy;
mod tuples;

pub use potential::{log2_of_product, potential_mu, potential_mu_secondary, PotentialForm};
pub use solve::{
    solve_max_degenerate, solve_mwis, NodeCounts, Solution, SolveConfig, SolveStats,
    DEFAULT_NODE_BUDGET, DEFAULT_TIME_BUDGET_SECS,
};
pub use strategy::{
    choose_action_cgt, choose_action_pt, establish_secondary, Action, Mode, SecondaryCtx,
    StrategyConfig,
};
pub use tuples::{enumerate_branch_tuples, for_each_branch_tuple, BranchTuple};

/// A state of the branching recursion.
///
/// Vertices in `a` have been decided into the solution and carry positions
/// (`eta`), vertices in `x` have been decided out, and `w` is the active set
/// still to be decided here; the remaining free vertices are handled by other
/// parts of the recursion and must not be adjacent to `w`. `zeta` lower-bounds
/// the position each active vertex may still receive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subproblem {
    /// Vertices decided into the solution.
    pub a: VertexSet,
    /// Vertices decided out of the solution.
    pub x: VertexSet,
    /// Active vertices, a union of connected components of the free area.
    pub w: VertexSet,
    /// Recursion level; `w` always has fewer than `0.99^{-level}` vertices.
    pub level: usize,
    /// Position of each `a`-vertex in the ordering under construction,
    /// `1..=n`; `0` means unassigned.
    pub eta: Vec<usize>,
    /// Minimum position each `w`-vertex may still take, `1..=n+1`; entries
    /// outside `w` are stale and ignored.
    pub zeta: Vec<usize>,
}

/// The result of filtering a subproblem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterOutcome {
    /// A decided-in vertex already exceeds its degree quota; the subproblem
    /// admits no clean completion and the node gets no children.
    Dead,
    /// All offending active vertices have been deleted; the result is clean.
    Cleaned(Subproblem),
}

/// Number of remaining slots for earlier neighbors of `v` if it were placed
/// at position `p`: `d` minus the neighbors already assigned a position
/// smaller than `p`. Negative means the placement is overcommitted.
pub fn quota(g: &Graph, eta: &[usize], v: usize, p: usize, d: usize) -> i64 {
    let earlier = g
        .neighbors(v)
        .iter()
        .filter(|&u| eta[u] != 0 && eta[u] < p)
        .count();
    d as i64 - earlier as i64
}

/// Whether a vertex set of `size` is small enough for a subproblem of
/// `level`, i.e. `size < 0.99^{-level}`, decided in exact integer arithmetic.
pub fn fits_level(size: usize, level: usize) -> bool {
    let l = u32::try_from(level).expect("recursion level fits in u32");
    BigUint::from(size) * BigUint::from(99u8).pow(l) < BigUint::from(100u8).pow(l)
}

/// The root recursion level for an `n`-vertex graph:
/// `⌈−log_{0.99}(n+1)⌉`, the smallest `ℓ` with `(100/99)^ℓ ≥ n+1`.
pub fn initial_level(n: usize) -> usize {
    let target = BigUint::from(n + 1);
    let mut p100 = BigUint::from(1u8);
    let mut p99 = BigUint::from(1u8);
    let mut level = 0;
    while p100 < &target * &p99 {
        p100 *= 100u8;
        p99 *= 99u8;
        level += 1;
    }
    level
}

impl Subproblem {
    /// The root subproblem: nothing decided, every vertex active with the
    /// weakest position bound, level `⌈−log_{0.99}(n+1)⌉`.
    pub fn root(g: &Graph) -> Subproblem {
        let n = g.n();
        Subproblem {
            a: VertexSet::new(),
            x: VertexSet::new(),
            w: g.vertices(),
            level: initial_level(n),
            eta: vec![0; n],
            zeta: vec![1; n],
        }
    }

    fn n(&self) -> usize {
        self.eta.len()
    }

    /// Vertices not yet decided either way (`w` is always a subset).
    pub fn free_vertices(&self, g: &Graph) -> VertexSet {
        let mut free = g.vertices();
        free.remove_all(&self.a);
        free.remove_all(&self.x);
        free
    }

    /// Verifies the structural invariants: disjoint decisions, `w` confined
    /// to the free area and non-adjacent to the rest of it, the level size
    /// bound, `eta` an edge-injective assignment exactly on `a`, and `zeta`
    /// within `1..=n+1` on `w`.
    pub fn check_invariants(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        let fail = |msg: String| Err(Error::contract("subproblem_invariants", msg));
        if self.eta.len() != n || self.zeta.len() != n {
            return fail(format!("map lengths must equal n = {n}"));
        }
        if !self.a.is_disjoint_from(&self.x) {
            return fail("a and x must be disjoint".into());
        }
        let free = self.free_vertices(g);
        if !self.w.is_subset_of(&free) {
            return fail("w must avoid the decided vertices".into());
        }
        let rest = free.difference(&self.w);
        if g.sets_adjacent(&self.w, &rest) {
            return fail("w must be non-adjacent to the other free vertices".into());
        }
        if !fits_level(self.w.len(), self.level) {
            return fail(format!(
                "|w| = {} is too large for level {}",
                self.w.len(),
                self.level
            ));
        }
        for v in 0..n {
            let assigned = self.eta[v] != 0;
            if assigned != self.a.contains(v) {
                return fail(format!("eta must be assigned exactly on a (vertex {v})"));
            }
            if assigned && self.eta[v] > n {
                return fail(format!("eta({v}) = {} exceeds n", self.eta[v]));
            }
        }
        for (u, v) in g.edges() {
            if self.a.contains(*u) && self.a.contains(*v) && self.eta[*u] == self.eta[*v] {
                return fail(format!("eta must differ on the edge ({u}, {v})"));
            }
        }
        for v in self.w.iter() {
            if self.zeta[v] == 0 || self.zeta[v] > n + 1 {
                return fail(format!("zeta({v}) = {} out of range", self.zeta[v]));
            }
        }
        Ok(())
    }

    /// Offending vertices of both kinds: decided-in vertices whose earlier
    /// neighborhood (assigned earlier, or active and allowed earlier) exceeds
    /// `d`, and active vertices whose position bound is exhausted.
    pub fn find_offending(&self, g: &Graph, d: usize) -> (VertexSet, VertexSet) {
        let n = self.n();
        let mut off_a = VertexSet::new();
        for v in self.a.iter() {
            let pv = self.eta[v];
            let crowd = g
                .neighbors(v)
                .iter()
                .filter(|&u| {
                    (self.a.contains(u) && self.eta[u] < pv)
                        || (self.w.contains(u) && self.zeta[u] <= pv)
                })
                .count();
            if crowd > d {
                off_a.insert(v);
            }
        }
        let mut off_w = VertexSet::new();
        for v in self.w.iter() {
            if self.zeta[v] > n || quota(g, &self.eta, v, self.zeta[v], d) < 0 {
                off_w.insert(v);
            }
        }
        (off_a, off_w)
    }

    /// Whether no vertex offends.
    pub fn is_clean(&self, g: &Graph, d: usize) -> bool {
        let (off_a, off_w) = self.find_offending(g, d);
        off_a.is_empty() && off_w.is_empty()
    }

    /// One filtering pass: dead if a decided-in vertex offends, otherwise
    /// the result of deleting every offending active vertex. Deleting active
    /// vertices never creates new offenders, so one pass leaves a clean
    /// subproblem.
    pub fn filter_step(&self, g: &Graph, d: usize) -> FilterOutcome {
        let (off_a, off_w) = self.find_offending(g, d);
        if !off_a.is_empty() {
            return FilterOutcome::Dead;
        }
        if off_w.is_empty() {
            return FilterOutcome::Cleaned(self.clone());
        }
        let cleaned = self
            .delete_vertices(&off_w)
            .expect("offending active vertices lie inside w");
        FilterOutcome::Cleaned(cleaned)
    }

    /// Moves `z` from the active set to the decided-out set.
    pub fn delete_vertices(&self, z: &VertexSet) -> Result<Subproblem> {
        if !z.is_subset_of(&self.w) {
            return Err(Error::contract(
                "delete_vertices",
                "deleted set must lie inside w",
            ));
        }
        let mut next = self.clone();
        next.x.union_with(z);
        next.w.remove_all(z);
        Ok(next)
    }

    /// Moves `z` into the solution at the guessed positions, with each
    /// guessed left-neighbor set exempt from the position push: every
    /// remaining active neighbor of a taken vertex `u` outside `D_u` must
    /// come later than `u` in the final ordering.
    pub fn take_vertices(
        &self,
        g: &Graph,
        z: &VertexSet,
        eta_ext: &[usize],
        left: &BTreeMap<usize, VertexSet>,
        d: usize,
    ) -> Result<Subproblem> {
        let n = self.n();
        let fail = |msg: String| Err(Error::contract("take_vertices", msg));
        if !z.is_subset_of(&self.w) {
            return fail("taken set must lie inside w".into());
        }
        if eta_ext.len() != n {
            return fail(format!("position map length must equal n = {n}"));
        }
        let dom = self.a.union(z);
        for v in 0..n {
            let assigned = eta_ext[v] != 0;
            if assigned != dom.contains(v) {
                return fail(format!(
                    "position guess must be assigned exactly on a ∪ z (vertex {v})"
                ));
            }
        }
        for v in self.a.iter() {
            if eta_ext[v] != self.eta[v] {
                return fail(format!("position guess must extend eta (vertex {v})"));
            }
        }
        for u in z.iter() {
            if eta_ext[u] < self.zeta[u] || eta_ext[u] > n {
                return fail(format!(
                    "position {} of taken vertex {u} outside [zeta, n] = [{}, {n}]",
                    eta_ext[u], self.zeta[u]
                ));
            }
        }
        for (u, v) in g.edges() {
            if dom.contains(*u) && dom.contains(*v) && eta_ext[*u] == eta_ext[*v] {
                return fail(format!(
                    "position guess must differ on the edge ({u}, {v})"
                ));
            }
        }
        if left.len() != z.len() || !z.iter().all(|u| left.contains_key(&u)) {
            return fail("left-neighbor guess must cover exactly the taken set".into());
        }
        let w_next = self.w.difference(z);
        for (&u, du) in left {
            if !du.is_subset_of(&w_next) {
                return fail(format!(
                    "left neighbors of {u} must be active vertices outside the taken set"
                ));
            }
            let cap = quota(g, eta_ext, u, eta_ext[u], d);
            if (du.len() as i64) > cap {
                return fail(format!(
                    "left-neighbor set of {u} has {} vertices but the quota allows {cap}",
                    du.len()
                ));
            }
        }
        let mut next = self.clone();
        next.a.union_with(z);
        next.w = w_next;
        next.eta = eta_ext.to_vec();
        for u in z.iter() {
            let push = 1 + eta_ext[u];
            let du = &left[&u];
            for w_ in g.neighbors_in(u, &next.w).iter() {
                if !du.contains(w_) && next.zeta[w_] < push {
                    next.zeta[w_] = push;
                }
            }
        }
        Ok(next)
    }

    /// Whether the level is positive and every component of the active area
    /// is small enough for the next level down.
    pub fn is_splittable(&self, g: &Graph) -> bool {
        self.level >= 1
            && g.components_within(&self.w)
                .iter()
                .all(|c| fits_level(c.len(), self.level - 1))
    }

    /// Splits the active area into one or two next-level parts, each a union
    /// of components: components are taken in non-increasing size (ties by
    /// smallest vertex) and the greedy maximal prefix that still fits the
    /// next level becomes the first part. Children are ordered by their
    /// smallest active vertex.
    pub fn split_subproblem(&self, g: &Graph) -> Result<Vec<Subproblem>> {
        if self.level == 0 {
            return Err(Error::contract(
                "split_subproblem",
                "a level-0 subproblem cannot split",
            ));
        }
        let mut comps = g.components_within(&self.w);
        comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a.first().cmp(&b.first())));
        if comps.iter().any(|c| !fits_level(c.len(), self.level - 1)) {
            return Err(Error::contract(
                "split_subproblem",
                "a component is too large for the next level",
            ));
        }
        let child = |w: VertexSet| Subproblem {
            w,
            level: self.level - 1,
            ..self.clone()
        };
        let mut prefix = VertexSet::new();
        let mut taken = 0;
        for comp in &comps {
            if !fits_level(prefix.len() + comp.len(), self.level - 1) {
                break;
            }
            prefix.union_with(comp);
            taken += 1;
        }
        if taken == comps.len() {
            return Ok(vec![child(prefix)]);
        }
        let suffix = self.w.difference(&prefix);
        if !fits_level(suffix.len(), self.level - 1) {
            return Err(Error::contract(
                "split_subproblem",
                "greedy split left an oversized remainder",
            ));
        }
        let mut parts = vec![child(prefix), child(suffix)];
        parts.sort_by(|p, q| p.w.first().cmp(&q.w.first()));
        Ok(parts)
    }

    /// Whether `self` extends `base`: decisions only grow (and only into
    /// `base`'s active area), the active area only shrinks, positions are
    /// preserved, position bounds only rise, and newly decided-in vertices
    /// respect the bounds they had.
    pub fn extends(&self, base: &Subproblem) -> bool {
        if !base.a.is_subset_of(&self.a) || !base.x.is_subset_of(&self.x) {
            return false;
        }
        if !self.a.difference(&base.a).is_subset_of(&base.w)
            || !self.x.difference(&base.x).is_subset_of(&base.w)
        {
            return false;
        }
        if !self.w.is_subset_of(&base.w) {
            return false;
        }
        if base.a.iter().any(|v| self.eta[v] != base.eta[v]) {
            return false;
        }
        if self.w.iter().any(|v| self.zeta[v] < base.zeta[v]) {
            return false;
        }
        self.a
            .difference(&base.a)
            .iter()
            .all(|v| self.eta[v] >= base.zeta[v])
    }

    /// Whether `self` extends `base` and decides all of its active area,
    /// reaching level 0.
    pub fn extends_completely(&self, base: &Subproblem) -> bool {
        if !self.extends(base) || self.level != 0 {
            return false;
        }
        let decided = self.a.difference(&base.a).union(&self.x.difference(&base.x));
        decided == base.w
    }
}

/// Whether the subproblem is compatible with a fixed optimum `s_star` and
/// ordering `eta_star` (positions on `s_star`, `0` elsewhere): everything
/// decided in belongs to the optimum at its true position, nothing decided
/// out does, position bounds have not overtaken the truth, and whenever a
/// bound admits placing an active vertex before a decided-in neighbor, the
/// truth indeed places it there.
pub fn is_lucky(g: &Graph, sub: &Subproblem, s_star: &VertexSet, eta_star: &[usize]) -> bool {
    if !sub.a.is_subset_of(s_star) || sub.x.intersects(s_star) {
        return false;
    }
    if sub.a.iter().any(|v| sub.eta[v] != eta_star[v]) {
        return false;
    }
    if sub
        .w
        .intersection(s_star)
        .iter()
        .any(|u| sub.zeta[u] > eta_star[u])
    {
        return false;
    }
    for u in sub.w.iter() {
        for v in g.neighbors_in(u, &sub.a).iter() {
            if sub.zeta[u] <= eta_star[v]
                && !(s_star.contains(u) && eta_star[u] < eta_star[v])
            {
                return false;
            }
        }
    }
    true
}
