//! The branching recursion: maximum-weight induced degenerate subgraphs by
//! exhaustive structured guessing over clean subproblems.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use num::BigUint;

use crate::error::{Error, Result, Violation};
use crate::graph::{Graph, VertexSet};
use crate::oracle::{is_long_cycle_free, is_pt_free};

use super::potential::{potential_mu, potential_mu_secondary, PotentialForm};
use super::strategy::{
    choose_action_cgt, choose_action_pt, Action, Mode, SecondaryCtx, StrategyConfig,
};
use super::tuples::for_each_branch_tuple;
use super::{quota, FilterOutcome, Subproblem};

/// Nodes the recursion may expand before giving up.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;
/// Wall-clock seconds the recursion may spend before giving up.
pub const DEFAULT_TIME_BUDGET_SECS: u64 = 300;

/// Largest input whose `P_t`-freeness is verified before solving; beyond
/// this the promise is trusted.
const PT_CHECK_CAP: usize = 24;
/// Largest input whose long-cycle-freeness is verified before solving.
const CYCLE_CHECK_CAP: usize = 20;

/// Everything a solve needs besides the graph.
#[derive(Debug, Clone)]
pub struct SolveConfig {
    /// Degeneracy bound of the sought induced subgraph.
    pub d: usize,
    /// Forbidden-structure parameter: no induced `P_t`, or no induced
    /// cycle on more than `t` vertices, depending on `mode`.
    pub t: usize,
    pub mode: Mode,
    pub node_budget: u64,
    pub time_budget: Duration,
    /// Check the potential and quota invariants at every branch node.
    pub validate: bool,
    /// Passed through to pivot selection; see [`StrategyConfig`].
    pub heavy_eps_override: Option<crate::buckets::Eps>,
}

impl SolveConfig {
    pub fn new(d: usize, t: usize, mode: Mode) -> Self {
        SolveConfig {
            d,
            t,
            mode,
            node_budget: DEFAULT_NODE_BUDGET,
            time_budget: Duration::from_secs(DEFAULT_TIME_BUDGET_SECS),
            validate: false,
            heavy_eps_override: None,
        }
    }
}

/// How many nodes of each kind the recursion expanded.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NodeCounts {
    pub leaf: u64,
    pub filter: u64,
    pub split: u64,
    pub branch: u64,
    pub free: u64,
}

impl NodeCounts {
    pub fn total(&self) -> u64 {
        self.leaf + self.filter + self.split + self.branch + self.free
    }
}

/// Work measurements of one solve.
#[derive(Debug, Clone)]
pub struct SolveStats {
    pub nodes: NodeCounts,
    /// Most success edges on any root-to-leaf path.
    pub max_success_per_path: u64,
    /// Most split nodes on any root-to-leaf path.
    pub max_split_per_path: u64,
    pub elapsed: Duration,
}

/// The answer: the vertex set, its weight, and a witnessing elimination
/// order in which every vertex has at most `d` earlier neighbors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub set: VertexSet,
    pub weight: u64,
    pub ordering: Vec<usize>,
}

/// A fully decided extension of some subproblem, bubbling up the tree.
#[derive(Debug, Clone)]
struct Completion {
    a: VertexSet,
    xset: VertexSet,
    eta: Vec<usize>,
    weight: u64,
}

/// `true` if `cand` replaces `inc` under the global tie-breaking rule:
/// larger weight first, then lexicographically smaller sorted vertex list.
fn better(cand: &Completion, inc: &Completion) -> bool {
    match cand.weight.cmp(&inc.weight) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => cand.a.cmp_lex(&inc.a) == Ordering::Less,
    }
}

/// The exact potential of a node, in whichever form its strategy tracks.
enum NodeMu {
    Primary(BigUint),
    /// `None` when the subproblem has no chip.
    Secondary(Option<BigUint>),
}

enum NodeKind {
    Leaf,
    Filter,
    Split,
    Branch,
    Free,
}

struct Driver<'a> {
    g: &'a Graph,
    cfg: &'a SolveConfig,
    scfg: StrategyConfig,
    deadline: Instant,
    counts: NodeCounts,
    max_success: u64,
    max_split: u64,
}

impl Driver<'_> {
    /// Counts one expanded node and enforces both budgets.
    fn tick(&mut self, kind: NodeKind) -> Result<()> {
        match kind {
            NodeKind::Leaf => self.counts.leaf += 1,
            NodeKind::Filter => self.counts.filter += 1,
            NodeKind::Split => self.counts.split += 1,
            NodeKind::Branch => self.counts.branch += 1,
            NodeKind::Free => self.counts.free += 1,
        }
        let used = self.counts.total();
        if used > self.cfg.node_budget {
            return Err(Error::NodeBudget { budget: self.cfg.node_budget, used });
        }
        if Instant::now() >= self.deadline {
            return Err(Error::TimeBudget { budget_secs: self.cfg.time_budget.as_secs() });
        }
        Ok(())
    }

    /// Records the per-path counters of a finished root-to-leaf path.
    fn note_path(&mut self, succ: u64, splits: u64) {
        self.max_success = self.max_success.max(succ);
        self.max_split = self.max_split.max(splits);
    }

    /// Evaluates one clean subproblem: decides its node type and recurses.
    /// `succ` and `splits` count success edges and split nodes on the path
    /// from the root.
    fn eval(
        &mut self,
        sub: Subproblem,
        mut secondary: Option<SecondaryCtx>,
        succ: u64,
        splits: u64,
    ) -> Result<Completion> {
        loop {
            let action = match self.cfg.mode {
                Mode::PtFree => choose_action_pt(self.g, &sub, self.cfg.t, &self.scfg)?,
                Mode::LongCycleFree => {
                    choose_action_cgt(self.g, &sub, self.cfg.t, &self.scfg, secondary.as_ref())?
                }
            };
            match action {
                Action::EnterSecondary(ctx) => secondary = Some(ctx),
                Action::ExitSecondary => secondary = None,
                Action::MakeLeaf => return self.leaf(sub, succ, splits),
                Action::MakeSplit => return self.split(sub, succ, splits),
                Action::MakeBranch { pivot, heavy } | Action::SecondaryBranch { pivot, heavy } => {
                    return self.branch(sub, secondary, pivot, heavy, succ, splits)
                }
            }
        }
    }

    /// A level-0 node: everything in its region is decided.
    fn leaf(&mut self, sub: Subproblem, succ: u64, splits: u64) -> Result<Completion> {
        self.tick(NodeKind::Leaf)?;
        self.note_path(succ, splits);
        if !sub.w.is_empty() {
            return Err(Error::contract(
                "solve",
                "a level-0 subproblem still has active vertices",
            ));
        }
        let weight = self.g.weight_of(&sub.a)?;
        Ok(Completion { a: sub.a, xset: sub.x, eta: sub.eta, weight })
    }

    /// A split node: solve each part at the next level down and merge the
    /// parts' decisions, which concern disjoint vertex sets.
    fn split(&mut self, sub: Subproblem, succ: u64, splits: u64) -> Result<Completion> {
        self.tick(NodeKind::Split)?;
        let parts = sub.split_subproblem(self.g)?;
        let mut a = sub.a.clone();
        let mut xset = sub.x.clone();
        let mut eta = sub.eta.clone();
        for part in parts {
            self.tick(NodeKind::Free)?;
            let done = self.eval(part, None, succ, splits + 1)?;
            for v in done.a.difference(&sub.a).iter() {
                eta[v] = done.eta[v];
            }
            a.union_with(&done.a);
            xset.union_with(&done.xset);
        }
        if self.cfg.validate {
            let merged = Subproblem {
                a: a.clone(),
                x: xset.clone(),
                w: VertexSet::new(),
                level: 0,
                eta: eta.clone(),
                zeta: sub.zeta.clone(),
            };
            if !merged.extends_completely(&sub) {
                return Err(Violation::new(
                    "solve_split",
                    "recombined split parts do not completely extend the parent",
                    a.to_vec(),
                )
                .into());
            }
        }
        let weight = self.g.weight_of(&a)?;
        Ok(Completion { a, xset, eta, weight })
    }

    /// A branch node: the failure child deletes the pivot; one success
    /// child per structured guess takes the pivot with an entourage. Every
    /// success child is filtered, and survivors re-enter the recursion
    /// through a free node.
    fn branch(
        &mut self,
        sub: Subproblem,
        secondary: Option<SecondaryCtx>,
        pivot: usize,
        heavy: bool,
        succ: u64,
        splits: u64,
    ) -> Result<Completion> {
        self.tick(NodeKind::Branch)?;
        let g = self.g;
        let d = self.cfg.d;
        let parent_mu = if self.cfg.validate {
            Some(self.node_potential(&sub, secondary.as_ref())?)
        } else {
            None
        };

        let mut pivot_set = VertexSet::new();
        pivot_set.insert(pivot);
        let fail_sub = sub.delete_vertices(&pivot_set)?;
        if let Some(mu) = &parent_mu {
            // Deleting a vertex can only thin the witness buckets.
            self.assert_potential_step(mu, &fail_sub, secondary.as_ref(), false, pivot)?;
        }
        let mut best = self.eval(fail_sub, secondary.clone(), succ, splits)?;

        for_each_branch_tuple(g, &sub, pivot, d, &mut |tuple: &super::BranchTuple| {
            self.tick(NodeKind::Filter)?;
            let taken =
                sub.take_vertices(g, &tuple.taken(pivot), &tuple.eta_ext, &tuple.left, d)?;
            match taken.filter_step(g, d) {
                FilterOutcome::Dead => {
                    self.note_path(succ + 1, splits);
                }
                FilterOutcome::Cleaned(clean) => {
                    self.tick(NodeKind::Free)?;
                    if self.cfg.validate {
                        self.assert_success_quota(&sub, &clean, pivot)?;
                        if let Some(mu) = &parent_mu {
                            self.assert_potential_step(
                                mu,
                                &clean,
                                secondary.as_ref(),
                                heavy,
                                pivot,
                            )?;
                        }
                    }
                    let cand = self.eval(clean, secondary.clone(), succ + 1, splits)?;
                    if better(&cand, &best) {
                        best = cand;
                    }
                }
            }
            Ok(())
        })?;
        Ok(best)
    }

    /// The potential a node's own strategy tracks: primary bucket products
    /// outside the secondary mode, link products inside it.
    fn node_potential(&self, sub: &Subproblem, secondary: Option<&SecondaryCtx>) -> Result<NodeMu> {
        let (d, t) = (self.cfg.d, self.cfg.t);
        match (self.cfg.mode, secondary) {
            (Mode::PtFree, _) => Ok(NodeMu::Primary(potential_mu(
                self.g,
                sub,
                d,
                t,
                PotentialForm::Paths,
            )?)),
            (Mode::LongCycleFree, None) => Ok(NodeMu::Primary(potential_mu(
                self.g,
                sub,
                d,
                t,
                PotentialForm::Tripods,
            )?)),
            (Mode::LongCycleFree, Some(ctx)) => Ok(NodeMu::Secondary(potential_mu_secondary(
                self.g, sub, d, t, ctx,
            )?)),
        }
    }

    /// Asserts the potential comparison between a branch node and one
    /// child: never an increase, and a strict decrease into success
    /// children of a certified-heavy pivot whenever the parent's product
    /// exceeds 1. Secondary comparisons only apply while both nodes still
    /// have a chip.
    fn assert_potential_step(
        &self,
        parent: &NodeMu,
        child: &Subproblem,
        secondary: Option<&SecondaryCtx>,
        strict_wanted: bool,
        pivot: usize,
    ) -> Result<()> {
        let child_mu = self.node_potential(child, secondary)?;
        let (p, c) = match (parent, child_mu) {
            (NodeMu::Primary(p), NodeMu::Primary(c)) => (p.clone(), c),
            (NodeMu::Secondary(Some(p)), NodeMu::Secondary(Some(c))) => (p.clone(), c),
            (NodeMu::Secondary(_), NodeMu::Secondary(_)) => return Ok(()),
            _ => {
                return Err(Error::contract(
                    "assert_potential_step",
                    "parent and child potentials are of different forms",
                ))
            }
        };
        let one = BigUint::from(1u32);
        if strict_wanted && p > one {
            if c >= p {
                return Err(Violation::new(
                    "potential",
                    format!(
                        "success child of heavy pivot {pivot} kept potential {c} (parent {p})"
                    ),
                    vec![pivot],
                )
                .into());
            }
        } else if c > p {
            return Err(Violation::new(
                "potential",
                format!("child of pivot {pivot} raised the potential to {c} (parent {p})"),
                vec![pivot],
            )
            .into());
        }
        Ok(())
    }

    /// Asserts the quota drop into a success child: every still-active
    /// neighbor of the pivot lost at least one quota unit.
    fn assert_success_quota(
        &self,
        parent: &Subproblem,
        child: &Subproblem,
        pivot: usize,
    ) -> Result<()> {
        let d = self.cfg.d;
        for u in self.g.neighbors_in(pivot, &child.w).iter() {
            let before = quota(self.g, &parent.eta, u, parent.zeta[u], d);
            let after = quota(self.g, &child.eta, u, child.zeta[u], d);
            if after > before - 1 {
                return Err(Violation::new(
                    "success_quota",
                    format!("neighbor {u} of taken pivot {pivot} kept quota {after} (was {before})"),
                    vec![pivot, u],
                )
                .into());
            }
        }
        Ok(())
    }
}

/// Solves maximum-weight induced `d`-degenerate subgraph on a graph
/// satisfying the mode's structural promise. Inputs small enough for the
/// exhaustive check get their promise verified; larger ones are trusted.
pub fn solve_max_degenerate(g: &Graph, cfg: &SolveConfig) -> Result<(Solution, SolveStats)> {
    match cfg.mode {
        Mode::PtFree => {
            if cfg.t < 2 {
                return Err(Error::contract("solve", "t must be at least 2"));
            }
            if g.n() <= PT_CHECK_CAP && !is_pt_free(g, cfg.t)? {
                return Err(Violation::new(
                    "solve",
                    format!("the input graph contains an induced path on {} vertices", cfg.t),
                    vec![],
                )
                .into());
            }
        }
        Mode::LongCycleFree => {
            if cfg.t < 6 || cfg.t % 2 != 0 {
                return Err(Error::contract("solve", "t must be even and at least 6"));
            }
            if g.n() <= CYCLE_CHECK_CAP && !is_long_cycle_free(g, cfg.t)? {
                return Err(Violation::new(
                    "solve",
                    format!("the input graph contains an induced cycle longer than {}", cfg.t),
                    vec![],
                )
                .into());
            }
        }
    }
    let start = Instant::now();
    let root = Subproblem::root(g);
    if cfg.validate {
        root.check_invariants(g)?;
    }
    let mut driver = Driver {
        g,
        cfg,
        scfg: StrategyConfig {
            heavy_eps_override: cfg.heavy_eps_override,
            validate: cfg.validate,
        },
        deadline: start + cfg.time_budget,
        counts: NodeCounts::default(),
        max_success: 0,
        max_split: 0,
    };
    let done = driver.eval(root, None, 0, 0)?;
    let solution = build_solution(g, cfg.d, done)?;
    let stats = SolveStats {
        nodes: driver.counts,
        max_success_per_path: driver.max_success,
        max_split_per_path: driver.max_split,
        elapsed: start.elapsed(),
    };
    Ok((solution, stats))
}

/// Maximum-weight independent set: the `d = 0` case of
/// [`solve_max_degenerate`].
pub fn solve_mwis(g: &Graph, cfg: &SolveConfig) -> Result<(Solution, SolveStats)> {
    if cfg.d != 0 {
        return Err(Error::contract(
            "solve_mwis",
            "an independent-set solve requires d = 0",
        ));
    }
    solve_max_degenerate(g, cfg)
}

/// Orders the answer by its positions and verifies the witness: every
/// vertex sees at most `d` earlier solution neighbors.
fn build_solution(g: &Graph, d: usize, done: Completion) -> Result<Solution> {
    let mut ordering: Vec<usize> = done.a.to_vec();
    ordering.sort_by_key(|&v| (done.eta[v], v));
    let mut placed = VertexSet::new();
    for &v in &ordering {
        let earlier = g.neighbors_in(v, &placed).len();
        if earlier > d {
            return Err(Error::contract(
                "solve",
                format!("vertex {v} of the answer has {earlier} earlier neighbors; the witness ordering is broken"),
            ));
        }
        placed.insert(v);
    }
    if g.weight_of(&done.a)? != done.weight {
        return Err(Error::contract("solve", "answer weight is inconsistent"));
    }
    Ok(Solution { set: done.a, weight: done.weight, ordering })
}
