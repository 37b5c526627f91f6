//! Pivot selection: when to stop, split, or branch, and on which vertex.

use num::rational::Ratio;

use crate::buckets::{
    c_link_buckets, find_chip, heavy_vertex, path_buckets, secondary_heavy_vertex,
    tripod_buckets, tripod_heavy_vertex, Eps,
};
use crate::error::{Error, Result, Violation};
use crate::graph::{induced_subgraph, Graph, VertexSet};
use crate::separator::connected_balanced_separator;

use super::Subproblem;

/// Which structural guarantee the input graph is trusted to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// No induced path on `t` vertices.
    PtFree,
    /// No induced cycle on more than `t` vertices.
    LongCycleFree,
}

/// Knobs for pivot selection.
#[derive(Debug, Clone, Default)]
pub struct StrategyConfig {
    /// Replaces the mode's built-in heaviness threshold. A ratio above 1
    /// makes every heaviness test fail (and skips the witness enumeration),
    /// which forces the no-heavy-vertex arms for testing.
    pub heavy_eps_override: Option<Eps>,
    /// Enables the deeper structural checks during witness enumeration.
    pub validate: bool,
}

/// What the recursion should do at a node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    /// Level 0: the subproblem is fully decided.
    MakeLeaf,
    /// Every active component fits the next level down.
    MakeSplit,
    /// Branch on `pivot`; `heavy` records whether the heaviness formula
    /// certified it (as opposed to a degenerate fallback choice).
    MakeBranch { pivot: usize, heavy: bool },
    /// No heavy vertex exists: switch to the secondary strategy with this
    /// freshly established context.
    EnterSecondary(SecondaryCtx),
    /// Branch chosen by the secondary strategy.
    SecondaryBranch { pivot: usize, heavy: bool },
    /// The subproblem became splittable: drop the secondary context and
    /// decide again with the primary strategy.
    ExitSecondary,
}

/// The frozen frame of one secondary-strategy invocation. All fields are in
/// the ambient graph's indexing and refer to the subproblem at entry: the
/// augmented connected core `x` with its closed active neighborhood `k`, the
/// giant component `c1`, the far component `c2` with its own separator `y`
/// and frontier `l = N(y) ∩ c2`, the unique part `d0` of `c2 ∖ l` reaching
/// back to `k`, and the far side `b = c2 ∖ d0` the strategy cuts away from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondaryCtx {
    pub x: VertexSet,
    pub k: VertexSet,
    pub c1: VertexSet,
    pub c2: VertexSet,
    pub y: VertexSet,
    pub l: VertexSet,
    pub d0: VertexSet,
    pub b: VertexSet,
}

fn impossible(eps: Eps) -> bool {
    eps.numer() > eps.denom()
}

/// Decides the node type under the strategy for graphs with no induced
/// `P_t`: leaf whenever possible, split whenever possible, else branch on a
/// `1/(3t)`-heavy vertex of the active area. Both fractions in the
/// heaviness test are strict, so a lone active vertex spans no endpoint
/// pair and can never be certified; it is branched on anyway, without the
/// potential-drop guarantee. Any other absence of a heavy vertex disproves
/// the precondition.
pub fn choose_action_pt(
    g: &Graph,
    sub: &Subproblem,
    t: usize,
    cfg: &StrategyConfig,
) -> Result<Action> {
    if t < 2 {
        return Err(Error::contract("choose_action_pt", "t must be at least 2"));
    }
    if sub.level == 0 {
        return Ok(Action::MakeLeaf);
    }
    if sub.is_splittable(g) {
        return Ok(Action::MakeSplit);
    }
    let eps = cfg
        .heavy_eps_override
        .unwrap_or_else(|| Ratio::new(1, 3 * t as u64));
    let found = if impossible(eps) {
        None
    } else {
        let (gsub, map) = induced_subgraph(g, &sub.w);
        let index = path_buckets(&gsub, t)?;
        heavy_vertex(&gsub, eps, &index).map(|v| map[v])
    };
    match found {
        Some(pivot) => Ok(Action::MakeBranch { pivot, heavy: true }),
        None if sub.w.len() == 1 => Ok(Action::MakeBranch {
            pivot: sub.w.first().expect("nonempty"),
            heavy: false,
        }),
        None => Err(Violation::new(
            "choose_action_pt",
            format!("no {eps}-heavy vertex in a non-splittable subproblem; the graph is not P_t-free"),
            sub.w.to_vec(),
        )
        .into()),
    }
}

/// Decides the node type under the strategy for graphs with no induced
/// cycle longer than `t`. In primary mode: leaf, split, or branch on a
/// `(10^{-8}/t)`-heavy vertex; with none, establish a secondary context. In
/// secondary mode (context given): exit as soon as the subproblem is
/// splittable; otherwise locate the chip and branch on its unique active
/// neighbor, or on a `1/(2t)`-secondary-heavy vertex of its link structure.
pub fn choose_action_cgt(
    g: &Graph,
    sub: &Subproblem,
    t: usize,
    cfg: &StrategyConfig,
    secondary: Option<&SecondaryCtx>,
) -> Result<Action> {
    if t < 6 || t % 2 != 0 {
        return Err(Error::contract(
            "choose_action_cgt",
            "t must be even and at least 6",
        ));
    }
    if let Some(ctx) = secondary {
        if sub.level == 0 || sub.is_splittable(g) {
            return Ok(Action::ExitSecondary);
        }
        return secondary_pivot(g, sub, t, cfg, ctx);
    }
    if sub.level == 0 {
        return Ok(Action::MakeLeaf);
    }
    if sub.is_splittable(g) {
        return Ok(Action::MakeSplit);
    }
    let eps = cfg
        .heavy_eps_override
        .unwrap_or_else(|| Ratio::new(1, 100_000_000 * t as u64));
    let found = if impossible(eps) && sub.w.len() >= 3 {
        // With fewer than three active vertices there are no triples and
        // the heaviness test is vacuously true, so only larger areas skip
        // the enumeration.
        None
    } else {
        let (gsub, map) = induced_subgraph(g, &sub.w);
        let index = tripod_buckets(&gsub, t)?;
        tripod_heavy_vertex(&gsub, eps, &index).map(|v| map[v])
    };
    match found {
        Some(pivot) => Ok(Action::MakeBranch { pivot, heavy: true }),
        None => Ok(Action::EnterSecondary(establish_secondary(g, sub, t)?)),
    }
}

/// Chooses the branching pivot inside an established secondary context.
fn secondary_pivot(
    g: &Graph,
    sub: &Subproblem,
    t: usize,
    cfg: &StrategyConfig,
    ctx: &SecondaryCtx,
) -> Result<Action> {
    let h = &sub.w;
    let Some(chip) = find_chip(g, h, &ctx.c2, &ctx.b, &ctx.k)? else {
        return Err(Violation::new(
            "choose_action_cgt",
            "no chip in a non-splittable secondary subproblem",
            h.to_vec(),
        )
        .into());
    };
    let boundary = g.neighborhood(&chip).intersection(h);
    if boundary.len() == 1 {
        // Branching here disconnects the chip's remainder from k on every
        // side, so the children all become splittable.
        return Ok(Action::SecondaryBranch {
            pivot: boundary.first().expect("nonempty"),
            heavy: false,
        });
    }
    let index = c_link_buckets(g, h, &chip, t, cfg.validate)?;
    let pivot = secondary_heavy_vertex(g, h, &index, Ratio::new(1, 2 * t as u64))?;
    Ok(Action::SecondaryBranch { pivot, heavy: true })
}

/// Builds the secondary context for a subproblem with no heavy vertex: a
/// balanced separator core of the giant active component, augmented with the
/// far component's own separator and a connecting path until the two are
/// more than `8t` apart, then the frontier decomposition around the far
/// side.
pub fn establish_secondary(g: &Graph, sub: &Subproblem, t: usize) -> Result<SecondaryCtx> {
    let comps = g.components_within(&sub.w);
    let c1 = comps
        .iter()
        .max_by(|a, b| a.len().cmp(&b.len()).then(b.first().cmp(&a.first())))
        .cloned()
        .ok_or_else(|| Error::contract("establish_secondary", "the active area is empty"))?;
    let (g1, map1) = induced_subgraph(g, &c1);
    let sep = connected_balanced_separator(&g1, t, &g1.vertices())?;
    let mut x: VertexSet = sep.x.iter().map(|v| map1[v]).collect();

    let n = g.n();
    for _ in 0..=n {
        let mut k = g.neighborhood(&x).intersection(&sub.w);
        k.union_with(&x);
        let far = c1.difference(&k);
        let c2 = g
            .components_within(&far)
            .into_iter()
            .filter(|c| 5 * c.len() >= 2 * c1.len())
            .max_by(|a, b| a.len().cmp(&b.len()).then(b.first().cmp(&a.first())))
            .ok_or_else(|| {
                Error::Violation(Violation::new(
                    "establish_secondary",
                    "no component holds 0.4 of the giant component beyond the separator \
                     neighborhood, so a heavy vertex was promised",
                    x.to_vec(),
                ))
            })?;
        let (g2, map2) = induced_subgraph(g, &c2);
        let sep2 = connected_balanced_separator(&g2, t, &g2.vertices())?;
        let y: VertexSet = sep2.x.iter().map(|v| map2[v]).collect();

        let from_x = g.distances_within(&c1, &x);
        let dist = y
            .iter()
            .filter_map(|v| from_x[v])
            .min()
            .ok_or_else(|| {
                Error::Violation(Violation::new(
                    "establish_secondary",
                    "the far separator is unreachable from the core inside the giant component",
                    y.to_vec(),
                ))
            })?;
        if dist > 8 * t {
            return finalize_secondary(g, c1, x, k, c2, y);
        }
        let path = g
            .shortest_path_within(&c1, &x, &y)
            .expect("a finite distance yields a path");
        x.union_with(&y);
        for v in path {
            x.insert(v);
        }
    }
    Err(Violation::new(
        "establish_secondary",
        "separator augmentation failed to push the far separator away",
        x.to_vec(),
    )
    .into())
}

/// Completes the context once the core and the far separator are far apart.
fn finalize_secondary(
    g: &Graph,
    c1: VertexSet,
    x: VertexSet,
    k: VertexSet,
    c2: VertexSet,
    y: VertexSet,
) -> Result<SecondaryCtx> {
    let l = g.neighborhood(&y).intersection(&c2);
    let interior = c2.difference(&l);
    let parts = g.components_within(&interior);
    let touching: Vec<&VertexSet> = parts
        .iter()
        .filter(|p| g.neighborhood(p).intersects(&k))
        .collect();
    let d0 = match touching.len() {
        1 => touching[0].clone(),
        0 => {
            return Err(Violation::new(
                "establish_secondary",
                "no component beyond the inner frontier reaches back to the core neighborhood",
                c2.to_vec(),
            )
            .into())
        }
        _ => {
            let mut cert = touching[0].to_vec();
            cert.extend(touching[1].to_vec());
            return Err(Violation::new(
                "establish_secondary",
                "two components reach back to the core neighborhood; the graph has a long \
                 induced cycle",
                cert,
            )
            .into());
        }
    };
    let b = c2.difference(&d0);
    Ok(SecondaryCtx { x, k, c1, c2, y, l, d0, b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::fits_level;

    fn make_graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges, None).unwrap()
    }

    fn path_graph(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        make_graph(n, &edges)
    }

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    /// The smallest level whose capacity admits `size` vertices; a connected
    /// component of exactly that size is then never splittable.
    fn tight_level(size: usize) -> usize {
        (0..).find(|&l| fits_level(size, l)).unwrap()
    }

    fn whole_graph_subproblem(g: &Graph, level: usize) -> Subproblem {
        Subproblem {
            a: VertexSet::new(),
            x: VertexSet::new(),
            w: g.vertices(),
            level,
            eta: vec![0; g.n()],
            zeta: vec![1; g.n()],
        }
    }

    #[test]
    fn level_zero_is_a_leaf_in_both_modes() {
        let g = make_graph(1, &[]);
        let sub = Subproblem {
            a: VertexSet::new(),
            x: set(&[0]),
            w: VertexSet::new(),
            level: 0,
            eta: vec![0],
            zeta: vec![1],
        };
        let cfg = StrategyConfig::default();
        assert_eq!(choose_action_pt(&g, &sub, 6, &cfg).unwrap(), Action::MakeLeaf);
        assert_eq!(
            choose_action_cgt(&g, &sub, 6, &cfg, None).unwrap(),
            Action::MakeLeaf
        );
    }

    #[test]
    fn roots_of_small_graphs_split_first() {
        let g = path_graph(3);
        let root = Subproblem::root(&g);
        let cfg = StrategyConfig::default();
        assert_eq!(choose_action_pt(&g, &root, 6, &cfg).unwrap(), Action::MakeSplit);
        assert_eq!(
            choose_action_cgt(&g, &root, 6, &cfg, None).unwrap(),
            Action::MakeSplit
        );
    }

    #[test]
    fn pt_branches_on_the_smallest_heaviest_vertex() {
        // On P3 as the whole active area every vertex hits every bucket
        // path, so the tie breaks to vertex 0.
        let g = path_graph(3);
        let sub = whole_graph_subproblem(&g, tight_level(3));
        sub.check_invariants(&g).unwrap();
        assert!(!sub.is_splittable(&g));
        let cfg = StrategyConfig::default();
        assert_eq!(
            choose_action_pt(&g, &sub, 6, &cfg).unwrap(),
            Action::MakeBranch { pivot: 0, heavy: true }
        );
    }

    #[test]
    fn pt_branches_on_a_lone_active_vertex_without_a_certificate() {
        // One active vertex spans no endpoint pair, and the strict outer
        // fraction cannot certify anything over zero pairs.
        let g = path_graph(3);
        let sub = Subproblem {
            a: VertexSet::new(),
            x: set(&[0, 1]),
            w: set(&[2]),
            level: 1,
            eta: vec![0; 3],
            zeta: vec![1; 3],
        };
        sub.check_invariants(&g).unwrap();
        assert!(!sub.is_splittable(&g));
        let cfg = StrategyConfig::default();
        assert_eq!(
            choose_action_pt(&g, &sub, 6, &cfg).unwrap(),
            Action::MakeBranch { pivot: 2, heavy: false }
        );
    }

    #[test]
    fn pt_suppressed_heaviness_still_branches_on_a_lone_vertex() {
        let g = path_graph(3);
        let sub = Subproblem {
            a: VertexSet::new(),
            x: set(&[0, 1]),
            w: set(&[2]),
            level: 1,
            eta: vec![0; 3],
            zeta: vec![1; 3],
        };
        let cfg = StrategyConfig {
            heavy_eps_override: Some(Ratio::new(2, 1)),
            ..Default::default()
        };
        assert_eq!(
            choose_action_pt(&g, &sub, 6, &cfg).unwrap(),
            Action::MakeBranch { pivot: 2, heavy: false }
        );
    }

    #[test]
    fn pt_reports_a_violation_when_no_heavy_vertex_exists() {
        // An impossible threshold suppresses every candidate; with two or
        // more active vertices that is a structural violation.
        let g = path_graph(3);
        let sub = Subproblem {
            a: VertexSet::new(),
            x: set(&[0]),
            w: set(&[1, 2]),
            level: tight_level(2),
            eta: vec![0; 3],
            zeta: vec![1; 3],
        };
        sub.check_invariants(&g).unwrap();
        let cfg = StrategyConfig {
            heavy_eps_override: Some(Ratio::new(2, 1)),
            ..Default::default()
        };
        let err = choose_action_pt(&g, &sub, 6, &cfg).unwrap_err();
        assert!(matches!(err, Error::Violation(_)));
    }

    #[test]
    fn cgt_requires_an_even_t_of_at_least_six() {
        let g = path_graph(3);
        let root = Subproblem::root(&g);
        let cfg = StrategyConfig::default();
        assert!(choose_action_cgt(&g, &root, 5, &cfg, None).is_err());
        assert!(choose_action_cgt(&g, &root, 4, &cfg, None).is_err());
    }

    #[test]
    fn cgt_branches_on_a_tripod_heavy_vertex() {
        let g = make_graph(3, &[(0, 1), (0, 2), (1, 2)]);
        let sub = whole_graph_subproblem(&g, tight_level(3));
        assert!(!sub.is_splittable(&g));
        let cfg = StrategyConfig::default();
        assert_eq!(
            choose_action_cgt(&g, &sub, 6, &cfg, None).unwrap(),
            Action::MakeBranch { pivot: 0, heavy: true }
        );
    }

    #[test]
    fn cgt_heaviness_is_vacuous_below_three_active_vertices() {
        let g = make_graph(2, &[(0, 1)]);
        let sub = whole_graph_subproblem(&g, tight_level(2));
        assert!(!sub.is_splittable(&g));
        // Even an impossible override cannot suppress the vacuous case.
        let cfg = StrategyConfig {
            heavy_eps_override: Some(Ratio::new(2, 1)),
            ..Default::default()
        };
        assert_eq!(
            choose_action_cgt(&g, &sub, 6, &cfg, None).unwrap(),
            Action::MakeBranch { pivot: 0, heavy: true }
        );
    }

    #[test]
    fn long_path_with_no_heavy_vertex_enters_the_secondary_strategy() {
        // On a 250-vertex path the far separator ends up more than 8t = 48
        // steps from the core, so the context is established organically
        // once the heaviness test is suppressed.
        let g = path_graph(250);
        let sub = whole_graph_subproblem(&g, tight_level(250));
        assert!(!sub.is_splittable(&g));
        let cfg = StrategyConfig {
            heavy_eps_override: Some(Ratio::new(2, 1)),
            ..Default::default()
        };
        let action = choose_action_cgt(&g, &sub, 6, &cfg, None).unwrap();
        let Action::EnterSecondary(ctx) = action else {
            panic!("expected to enter the secondary strategy, got {action:?}");
        };
        assert_eq!(ctx.c1, g.vertices());
        assert!(g.is_connected_within(&ctx.x));
        assert!(5 * ctx.c2.len() >= 2 * ctx.c1.len());
        let from_x = g.distances_within(&ctx.c1, &ctx.x);
        let dist = ctx.y.iter().filter_map(|v| from_x[v]).min().unwrap();
        assert!(dist > 48, "distance {dist} not beyond 8t");
        assert_eq!(ctx.b.union(&ctx.d0), ctx.c2);
        assert!(ctx.b.is_disjoint_from(&ctx.d0));

        // The chip is the whole far component; on a path its active
        // boundary is a single frontier vertex, which becomes the pivot.
        let next = choose_action_cgt(&g, &sub, 6, &cfg, Some(&ctx)).unwrap();
        let Action::SecondaryBranch { pivot, heavy } = next else {
            panic!("expected a secondary branch, got {next:?}");
        };
        assert!(!heavy);
        assert!(ctx.k.contains(pivot));
    }

    #[test]
    fn secondary_exits_as_soon_as_the_subproblem_splits() {
        let g = path_graph(6);
        let root = Subproblem::root(&g);
        let ctx = SecondaryCtx {
            x: set(&[0]),
            k: set(&[0, 1]),
            c1: g.vertices(),
            c2: set(&[2, 3, 4, 5]),
            y: set(&[4]),
            l: set(&[3, 5]),
            d0: set(&[2]),
            b: set(&[3, 4, 5]),
        };
        let cfg = StrategyConfig::default();
        assert_eq!(
            choose_action_cgt(&g, &root, 6, &cfg, Some(&ctx)).unwrap(),
            Action::ExitSecondary
        );
    }

    #[test]
    fn secondary_branches_on_the_link_heavy_vertex() {
        // Hand-built frame: the chip {2, 3, 4} touches the core
        // neighborhood {0, 1} at two boundary vertices, so link buckets
        // decide the pivot; every candidate ties and vertex 0 wins.
        let g = make_graph(5, &[(0, 2), (1, 3), (2, 3), (3, 4)]);
        let sub = whole_graph_subproblem(&g, tight_level(5));
        assert!(!sub.is_splittable(&g));
        let ctx = SecondaryCtx {
            x: set(&[0]),
            k: set(&[0, 1]),
            c1: g.vertices(),
            c2: set(&[2, 3, 4]),
            y: set(&[4]),
            l: set(&[3]),
            d0: set(&[2]),
            b: set(&[4]),
        };
        let cfg = StrategyConfig::default();
        assert_eq!(
            choose_action_cgt(&g, &sub, 6, &cfg, Some(&ctx)).unwrap(),
            Action::SecondaryBranch { pivot: 0, heavy: true }
        );
    }
}
