//! Chip detection and chip links: pair-keyed link buckets inside a component
//! and the heavy-vertex rule over them.

use super::{choose, frac_ge, frac_gt, Budget, Eps};
use crate::error::{Error, Result, Violation};
use crate::graph::{Graph, VertexSet};
use crate::oracle::WITNESS_BUDGET;
use std::collections::BTreeMap;

/// A link through a component: endpoints on the component's boundary,
/// interior inside it, induced apart from the (possible) endpoint edge.
/// Vertices run from the smaller endpoint to the larger.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CLink {
    pub vertices: Vec<usize>,
}

impl CLink {
    pub fn endpoints(&self) -> (usize, usize) {
        (self.vertices[0], *self.vertices.last().expect("links have at least three vertices"))
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }
}

/// Links of a fixed component grouped by endpoint pair.
#[derive(Debug, Clone)]
pub struct LinkBuckets {
    /// The component's neighborhood in the ambient induced subgraph.
    pub boundary: VertexSet,
    pub t: usize,
    buckets: BTreeMap<(usize, usize), Vec<CLink>>,
}

impl LinkBuckets {
    pub fn bucket(&self, u: usize, v: usize) -> &[CLink] {
        let key = (u.min(v), u.max(v));
        self.buckets.get(&key).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &[CLink])> {
        self.buckets.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    /// All boundary pairs: the heavy-vertex denominator. Every pair's bucket
    /// is nonempty, so this equals the number of buckets.
    pub fn pair_count(&self) -> usize {
        choose(self.boundary.len(), 2)
    }

    pub fn total_links(&self) -> usize {
        self.buckets.values().map(Vec::len).sum()
    }
}

/// Finds the unique component of `G[h ∩ c2]` holding both a vertex of `b`
/// and a vertex with a neighbor in `k`. Two such components certify an
/// induced cycle longer than `t` and are reported as a violation.
pub fn find_chip(
    g: &Graph,
    h: &VertexSet,
    c2: &VertexSet,
    b: &VertexSet,
    k: &VertexSet,
) -> Result<Option<VertexSet>> {
    if !b.is_subset_of(c2) {
        return Err(Error::contract("find_chip", "b must be a subset of c2"));
    }
    if !k.is_disjoint_from(c2) {
        return Err(Error::contract("find_chip", "k must be disjoint from c2"));
    }
    let mut chip = None;
    for comp in g.components_within(&h.intersection(c2)) {
        if comp.intersects(b) && g.neighborhood(&comp).intersects(k) {
            match chip {
                None => chip = Some(comp),
                Some(ref first) => {
                    let mut cert = first.to_vec();
                    cert.extend(comp.iter());
                    return Err(Error::Violation(Violation::new(
                        "find_chip",
                        "two components reach both b and k; the graph has an induced cycle longer than t",
                        cert,
                    )));
                }
            }
        }
    }
    Ok(chip)
}

/// Enumerates every link of `c_prime` inside `G[h]` into buckets keyed by
/// boundary pairs. Links are capped at `t` vertices; with `validate` set,
/// a closing link on `t + 1` vertices is reported as a violation instead of
/// being discarded. An empty bucket is a violation either way.
pub fn c_link_buckets(
    g: &Graph,
    h: &VertexSet,
    c_prime: &VertexSet,
    t: usize,
    validate: bool,
) -> Result<LinkBuckets> {
    if t < 4 || t % 2 != 0 {
        return Err(Error::contract("c_link_buckets", format!("t = {t} must be even and ≥ 4")));
    }
    if c_prime.is_empty() || !c_prime.is_subset_of(h) {
        return Err(Error::contract("c_link_buckets", "c_prime must be a nonempty subset of h"));
    }
    if !g.is_connected_within(c_prime) {
        return Err(Error::contract("c_link_buckets", "c_prime must induce a connected graph"));
    }
    let boundary = g.neighborhood(c_prime).intersection(h);
    if boundary.len() < 2 {
        return Err(Error::contract(
            "c_link_buckets",
            "the component boundary must have at least two vertices",
        ));
    }

    let mut steps = Budget::new(WITNESS_BUDGET);
    let mut buckets: BTreeMap<(usize, usize), Vec<CLink>> = BTreeMap::new();
    // Interior length cap: `t − 2` keeps closings within `t` vertices; in
    // validate mode one more step lets an over-long closing surface.
    let max_interior = if validate { t - 1 } else { t - 2 };
    for u in boundary.iter() {
        let mut path = vec![u];
        for c in g.neighbors_in(u, h).intersection(c_prime).iter() {
            path.push(c);
            grow_link(
                g,
                h,
                c_prime,
                &boundary,
                &mut path,
                &VertexSet::new(),
                max_interior,
                t,
                &mut steps,
                &mut buckets,
            )?;
            path.pop();
        }
    }

    for u in boundary.iter() {
        for v in boundary.iter().filter(|&v| v > u) {
            if !buckets.contains_key(&(u, v)) {
                return Err(Error::Violation(Violation::new(
                    "c_link_buckets",
                    "a boundary pair has no link; connectivity or long-cycle-freeness precondition violated",
                    vec![u, v],
                )));
            }
        }
    }
    Ok(LinkBuckets { boundary, t, buckets })
}

/// Extends `path = [u, interior…]`: closes at boundary vertices adjacent to
/// the last interior vertex and non-adjacent to the earlier interior (the
/// `u`-edge is exempt), and recurses deeper into the component.
#[allow(clippy::too_many_arguments)]
fn grow_link(
    g: &Graph,
    h: &VertexSet,
    c_prime: &VertexSet,
    boundary: &VertexSet,
    path: &mut Vec<usize>,
    closed_off: &VertexSet,
    max_interior: usize,
    t: usize,
    steps: &mut Budget,
    buckets: &mut BTreeMap<(usize, usize), Vec<CLink>>,
) -> Result<()> {
    let u = path[0];
    let last = *path.last().expect("path holds u and at least one interior vertex");
    // Each link is recorded once, oriented from its smaller endpoint; the
    // reversed orientation is found when the DFS starts at the other end.
    for v in g.neighbors_in(last, h).intersection(boundary).difference(closed_off).iter() {
        if v <= u {
            continue;
        }
        steps.take("chip link enumeration")?;
        let mut vertices = path.clone();
        vertices.push(v);
        if vertices.len() > t {
            return Err(Error::Violation(Violation::new(
                "c_link_buckets",
                "a link exceeds t vertices; the graph has an induced cycle longer than t",
                vertices,
            )));
        }
        buckets.entry((u, v)).or_default().push(CLink { vertices });
    }
    if path.len() - 1 >= max_interior {
        return Ok(());
    }
    let blocked = closed_off.union(&g.neighbors_in(u, h));
    let next_closed = closed_off.union(&g.neighbors_in(last, h));
    for c in g.neighbors_in(last, h).intersection(c_prime).difference(&blocked).iter() {
        steps.take("chip link enumeration")?;
        path.push(c);
        grow_link(g, h, c_prime, boundary, path, &next_closed, max_interior, t, steps, buckets)?;
        path.pop();
    }
    Ok(())
}

/// Picks a vertex of `G[h]` whose closed neighborhood within `h` hits
/// strictly more than an `eps` fraction of links in at least an `eps`
/// fraction of boundary pairs. Ties: most qualifying pairs, then smallest
/// index. Absence breaches the link heaviness guarantee and is a violation.
pub fn secondary_heavy_vertex(
    g: &Graph,
    h: &VertexSet,
    index: &LinkBuckets,
    eps: Eps,
) -> Result<usize> {
    let total = index.pair_count();
    let link_sets: Vec<(usize, Vec<VertexSet>)> = index
        .iter()
        .map(|(_, links)| (links.len(), links.iter().map(CLink::vertex_set).collect()))
        .collect();
    let mut best: Option<(usize, usize)> = None;
    for x in h.iter() {
        let mut ball = g.neighbors_in(x, h);
        ball.insert(x);
        let qualifying = link_sets
            .iter()
            .filter(|(size, sets)| {
                let hits = sets.iter().filter(|s| s.intersects(&ball)).count();
                frac_gt(hits, *size, eps)
            })
            .count();
        if frac_ge(qualifying, total, eps) && best.map_or(true, |(q, _)| qualifying > q) {
            best = Some((qualifying, x));
        }
    }
    best.map(|(_, x)| x).ok_or_else(|| {
        Error::Violation(Violation::new(
            "secondary_heavy_vertex",
            format!("no {eps}-heavy vertex over the chip links; heaviness guarantee violated"),
            index.boundary.to_vec(),
        ))
    })
}
