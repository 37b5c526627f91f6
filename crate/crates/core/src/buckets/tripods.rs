//! Connectors and tripods: enumeration, bags, triple-keyed buckets, and the
//! tripod heavy-vertex rule.

use super::{choose, frac_ge, frac_gt, Budget, Eps};
use crate::error::{Error, Result, Violation};
use crate::graph::{Graph, VertexSet};
use crate::oracle::WITNESS_BUDGET;
use std::collections::{BTreeMap, BTreeSet};

/// Center of a connector: one identified vertex, or a triangle (sorted).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Center {
    Identified(usize),
    Triangle([usize; 3]),
}

/// Three paths joined at a center. Each leg runs from its center endpoint to
/// its tip; legs are sorted by tip, and a degenerate leg is the center
/// endpoint alone. Tips are pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Connector {
    pub center: Center,
    pub legs: [Vec<usize>; 3],
}

/// A connector every leg of which fits the tripod length cap `t/2 + 1`.
pub type Tripod = Connector;

impl Connector {
    pub fn tips(&self) -> [usize; 3] {
        [0, 1, 2].map(|i| *self.legs[i].last().expect("legs are nonempty"))
    }

    pub fn vertices(&self) -> VertexSet {
        let mut all: VertexSet = self.legs.iter().flatten().copied().collect();
        if let Center::Triangle(c) = self.center {
            for v in c {
                all.insert(v);
            }
        }
        all
    }

    /// Tips of legs with exactly `t/2 + 1` vertices — the long legs.
    pub fn long_tips(&self, t: usize) -> VertexSet {
        self.legs
            .iter()
            .filter(|leg| leg.len() == t / 2 + 1)
            .map(|leg| *leg.last().expect("legs are nonempty"))
            .collect()
    }

    /// The tripod spanned by the first `t/2 + 1` vertices of each leg.
    pub fn core(&self, t: usize) -> Tripod {
        let cap = t / 2 + 1;
        let mut legs = self.legs.clone().map(|leg| {
            leg.into_iter().take(cap).collect::<Vec<_>>()
        });
        legs.sort_by_key(|leg| *leg.last().expect("legs are nonempty"));
        Connector { center: self.center, legs }
    }

    /// Checks that this structure is an induced subgraph of `g`: legs are
    /// induced paths, pairwise non-adjacent apart from the center, and the
    /// center is the identified vertex or an exact triangle.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let tips = self.tips();
        if tips[0] == tips[1] || tips[1] == tips[2] || tips[0] == tips[2] {
            return false;
        }
        let shared = match self.center {
            Center::Identified(c) => {
                if self.legs.iter().any(|leg| leg[0] != c) {
                    return false;
                }
                VertexSet::singleton(c)
            }
            Center::Triangle([a, b, c]) => {
                if !(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) {
                    return false;
                }
                let starts: VertexSet = self.legs.iter().map(|leg| leg[0]).collect();
                if starts != [a, b, c].into_iter().collect() {
                    return false;
                }
                starts
            }
        };
        for leg in &self.legs {
            for i in 0..leg.len() {
                for j in i + 1..leg.len() {
                    if g.has_edge(leg[i], leg[j]) != (j == i + 1) {
                        return false;
                    }
                }
            }
        }
        // Bodies (legs without their center endpoints) must be pairwise
        // disjoint and non-adjacent, and non-adjacent to foreign center
        // vertices in the triangle case.
        let bodies: Vec<VertexSet> =
            self.legs.iter().map(|leg| leg[1..].iter().copied().collect()).collect();
        for i in 0..3 {
            for j in i + 1..3 {
                if !bodies[i].is_disjoint_from(&bodies[j])
                    || g.neighborhood(&bodies[i]).intersects(&bodies[j])
                {
                    return false;
                }
            }
            if let Center::Triangle(_) = self.center {
                let foreign = shared.difference(&VertexSet::singleton(self.legs[i][0]));
                if g.neighborhood(&bodies[i]).intersects(&foreign) || bodies[i].intersects(&foreign)
                {
                    return false;
                }
            }
        }
        true
    }
}

/// Bags aligned with the legs: a long leg's bag is the component of
/// `G − T*` holding its tip; a short leg's bag is the tip alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripodBags {
    pub bags: [VertexSet; 3],
}

/// Enumerates every tripod of `G` (legs capped at `t/2 + 1` vertices), each
/// once in canonical form.
pub fn enumerate_tripods(g: &Graph, t: usize) -> Result<Vec<Tripod>> {
    enumerate_tripods_with_budget(g, t, WITNESS_BUDGET)
}

/// As [`enumerate_tripods`] with an explicit step budget.
pub fn enumerate_tripods_with_budget(g: &Graph, t: usize, budget: u64) -> Result<Vec<Tripod>> {
    let mut steps = Budget::new(budget);
    enumerate_impl(g, t, &mut steps)
}

fn enumerate_impl(g: &Graph, t: usize, steps: &mut Budget) -> Result<Vec<Tripod>> {
    if t < 4 || t % 2 != 0 {
        return Err(Error::contract("enumerate_tripods", format!("t = {t} must be even and ≥ 4")));
    }
    let cap = t / 2 + 1;
    let mut out = BTreeSet::new();

    // Identified centers: pick three legs growing from one vertex, tips
    // strictly increasing (which also rules out two degenerate legs).
    for c in g.vertices().iter() {
        let legs = legs_from(g, c, cap, &VertexSet::new(), steps)?;
        combine_three(&legs, steps, &mut |tri| {
            let candidate =
                Connector { center: Center::Identified(c), legs: tri.map(<[usize]>::to_vec) };
            if candidate.is_valid_in(g) {
                out.insert(candidate);
            }
        })?;
    }

    // Triangle centers: one leg per triangle vertex; bodies must avoid the
    // other two center vertices and their neighborhoods.
    for a in g.vertices().iter() {
        for b in g.neighbors(a).iter().filter(|&b| b > a) {
            for c in g.neighbors(a).intersection(g.neighbors(b)).iter().filter(|&c| c > b) {
                let triangle = [a, b, c];
                let legs_per: Vec<Vec<Vec<usize>>> = [(a, b, c), (b, a, c), (c, a, b)]
                    .into_iter()
                    .map(|(own, other1, other2)| {
                        let mut avoid = g.closed_neighborhood(&VertexSet::singleton(other1))
                            .union(&g.closed_neighborhood(&VertexSet::singleton(other2)));
                        avoid.remove(own);
                        legs_from(g, own, cap, &avoid, steps)
                    })
                    .collect::<Result<_>>()?;
                for l1 in &legs_per[0] {
                    for l2 in &legs_per[1] {
                        for l3 in &legs_per[2] {
                            steps.take("tripod enumeration")?;
                            let mut legs = [l1.clone(), l2.clone(), l3.clone()];
                            legs.sort_by_key(|leg| *leg.last().expect("legs are nonempty"));
                            let candidate =
                                Connector { center: Center::Triangle(triangle), legs };
                            if candidate.is_valid_in(g) {
                                out.insert(candidate);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// All induced paths starting at `start` on at most `cap` vertices whose
/// later vertices avoid `avoid`, including the one-vertex path.
fn legs_from(
    g: &Graph,
    start: usize,
    cap: usize,
    avoid: &VertexSet,
    steps: &mut Budget,
) -> Result<Vec<Vec<usize>>> {
    let mut out = vec![vec![start]];
    let mut path = vec![start];
    let mut forbidden = avoid.clone();
    forbidden.insert(start);
    grow_leg(g, &mut path, &forbidden, cap, steps, &mut out)?;
    Ok(out)
}

fn grow_leg(
    g: &Graph,
    path: &mut Vec<usize>,
    forbidden: &VertexSet,
    cap: usize,
    steps: &mut Budget,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    if path.len() >= cap {
        return Ok(());
    }
    let last = *path.last().expect("path is nonempty");
    let cands = g.neighbors(last).difference(forbidden);
    let next_forbidden = forbidden.union(g.neighbors(last));
    for w in cands.iter() {
        steps.take("tripod leg enumeration")?;
        path.push(w);
        out.push(path.clone());
        let mut f = next_forbidden.clone();
        f.insert(w);
        grow_leg(g, path, &f, cap, steps, out)?;
        path.pop();
    }
    Ok(())
}

/// Calls `visit` on every choice of three legs with strictly increasing tips.
fn combine_three<'a>(
    legs: &'a [Vec<usize>],
    steps: &mut Budget,
    visit: &mut impl FnMut([&'a [usize]; 3]),
) -> Result<()> {
    // Group by tip so combinations with equal tips are never formed.
    let mut by_tip: BTreeMap<usize, Vec<&[usize]>> = BTreeMap::new();
    for leg in legs {
        by_tip.entry(*leg.last().expect("legs are nonempty")).or_default().push(leg);
    }
    let tips: Vec<usize> = by_tip.keys().copied().collect();
    for (i, &t1) in tips.iter().enumerate() {
        for (j, &t2) in tips.iter().enumerate().skip(i + 1) {
            for &t3 in tips.iter().skip(j + 1) {
                for &l1 in &by_tip[&t1] {
                    for &l2 in &by_tip[&t2] {
                        for &l3 in &by_tip[&t3] {
                            steps.take("tripod combination")?;
                            visit([l1, l2, l3]);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Computes the bags of a tripod via `T* = N[V(T) ∖ L(T)] ∖ L(T)`. A
/// component of `G − T*` holding two long tips certifies a long induced
/// cycle and is reported as a violation.
pub fn tripod_bags(g: &Graph, tripod: &Tripod, t: usize) -> Result<TripodBags> {
    let long_tips = tripod.long_tips(t);
    let t_star = g
        .closed_neighborhood(&tripod.vertices().difference(&long_tips))
        .difference(&long_tips);
    let comps = g.components_within(&g.vertices().difference(&t_star));
    for comp in &comps {
        let inside = comp.intersection(&long_tips);
        if inside.len() > 1 {
            let mut cert = inside.to_vec();
            cert.extend(comp.iter());
            return Err(Error::Violation(Violation::new(
                "tripod_bags",
                "two long-leg tips share a component outside T*; the graph has an induced cycle longer than t",
                cert,
            )));
        }
    }
    let bags = [0, 1, 2].map(|i| {
        let tip = *tripod.legs[i].last().expect("legs are nonempty");
        if long_tips.contains(tip) {
            comps
                .iter()
                .find(|c| c.contains(tip))
                .cloned()
                .unwrap_or_else(|| VertexSet::singleton(tip))
        } else {
            VertexSet::singleton(tip)
        }
    });
    for i in 0..3 {
        for j in i + 1..3 {
            if !bags[i].is_disjoint_from(&bags[j]) {
                let cert: Vec<usize> = bags[i].intersection(&bags[j]).to_vec();
                return Err(Error::Violation(Violation::new(
                    "tripod_bags",
                    "bags overlap",
                    cert,
                )));
            }
        }
    }
    Ok(TripodBags { bags })
}

/// Tripods of `G` grouped into buckets keyed by sorted vertex triples: a
/// tripod joins the bucket of every triple drawn one vertex per bag.
#[derive(Debug, Clone)]
pub struct TripodBuckets {
    pub t: usize,
    pub n: usize,
    pub tripods: Vec<Tripod>,
    pub bags: Vec<TripodBags>,
    buckets: BTreeMap<[usize; 3], Vec<usize>>,
}

impl TripodBuckets {
    /// Indices into `tripods` for the bucket of `{u, v, w}`.
    pub fn bucket(&self, u: usize, v: usize, w: usize) -> &[usize] {
        let mut key = [u, v, w];
        key.sort_unstable();
        self.buckets.get(&key).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = ([usize; 3], &[usize])> {
        self.buckets.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    pub fn nonempty_buckets(&self) -> usize {
        self.buckets.len()
    }

    /// All vertex triples: the heavy-vertex denominator.
    pub fn triple_count(&self) -> usize {
        choose(self.n, 3)
    }
}

pub fn tripod_buckets(g: &Graph, t: usize) -> Result<TripodBuckets> {
    tripod_buckets_with_budget(g, t, WITNESS_BUDGET)
}

pub fn tripod_buckets_with_budget(g: &Graph, t: usize, budget: u64) -> Result<TripodBuckets> {
    let mut steps = Budget::new(budget);
    let tripods = enumerate_impl(g, t, &mut steps)?;
    let mut bags = Vec::with_capacity(tripods.len());
    let mut buckets: BTreeMap<[usize; 3], Vec<usize>> = BTreeMap::new();
    for (idx, tripod) in tripods.iter().enumerate() {
        let b = tripod_bags(g, tripod, t)?;
        for u in b.bags[0].iter() {
            for v in b.bags[1].iter() {
                for w in b.bags[2].iter() {
                    steps.take("tripod buckets")?;
                    let mut key = [u, v, w];
                    key.sort_unstable();
                    buckets.entry(key).or_default().push(idx);
                }
            }
        }
        bags.push(b);
    }
    Ok(TripodBuckets { t, n: g.n(), tripods, bags, buckets })
}

/// Picks a vertex whose closed neighborhood hits strictly more than an `eps`
/// fraction of tripods in at least an `eps` fraction of all triples. Ties:
/// most qualifying triples, then smallest index.
pub fn tripod_heavy_vertex(g: &Graph, eps: Eps, index: &TripodBuckets) -> Option<usize> {
    let total = index.triple_count();
    let tripod_sets: Vec<VertexSet> = index.tripods.iter().map(Connector::vertices).collect();
    let mut best: Option<(usize, usize)> = None;
    for x in g.vertices().iter() {
        let ball = g.closed_neighborhood(&VertexSet::singleton(x));
        let qualifying = index
            .iter()
            .filter(|(_, ids)| {
                let hits = ids.iter().filter(|&&i| tripod_sets[i].intersects(&ball)).count();
                frac_gt(hits, ids.len(), eps)
            })
            .count();
        if frac_ge(qualifying, total, eps) {
            let better = best.map_or(true, |(q, _)| qualifying > q);
            if better {
                best = Some((qualifying, x));
            }
        }
    }
    best.map(|(_, x)| x)
}

/// Builds a connector with tips `u, v, w` from an inclusion-minimal connected
/// superset: shortest `u`–`v` path, shortest path from `w` to it, greedy
/// trimming to minimality, then structural extraction.
pub fn minimal_connector(g: &Graph, u: usize, v: usize, w: usize) -> Result<Connector> {
    let all = g.vertices();
    if u == v || v == w || u == w || !all.contains(u) || !all.contains(v) || !all.contains(w) {
        return Err(Error::contract("minimal_connector", "tips must be three distinct vertices"));
    }
    let p_uv = g
        .shortest_path_within(&all, &VertexSet::singleton(u), &VertexSet::singleton(v))
        .ok_or_else(|| Error::contract("minimal_connector", "u and v are disconnected"))?;
    let on_puv: VertexSet = p_uv.iter().copied().collect();
    let p_w = g
        .shortest_path_within(&all, &VertexSet::singleton(w), &on_puv)
        .ok_or_else(|| Error::contract("minimal_connector", "w is disconnected from u and v"))?;
    let mut b: VertexSet = on_puv.union(&p_w.iter().copied().collect());

    // Greedy trimming: drop any vertex (smallest first) whose removal keeps
    // the set connected around the three tips.
    let tips: VertexSet = [u, v, w].into_iter().collect();
    loop {
        let removable = b.difference(&tips).iter().find(|&x| {
            let smaller = b.difference(&VertexSet::singleton(x));
            g.is_connected_within(&smaller)
        });
        match removable {
            Some(x) => b.remove(x),
            None => break,
        }
    }
    extract_connector(g, &b, [u, v, w])
}

/// Reads the connector structure off a minimal connected set: a triangle or
/// a degree-3 vertex is the center; otherwise the set is a path and the
/// center is the tip interior to it.
fn extract_connector(g: &Graph, b: &VertexSet, tips: [usize; 3]) -> Result<Connector> {
    let degree = |x: usize| g.neighbors_in(x, b).len();
    let violation = |detail: &str| {
        Err(Error::Violation(Violation::new("minimal_connector", detail, b.to_vec())))
    };

    // Triangle center: three mutually adjacent vertices inside the set.
    let mut triangle = None;
    'outer: for a1 in b.iter() {
        for a2 in g.neighbors_in(a1, b).iter().filter(|&x| x > a1) {
            for a3 in g.neighbors_in(a1, b).intersection(&g.neighbors_in(a2, b)).iter() {
                if a3 > a2 {
                    triangle = Some([a1, a2, a3]);
                    break 'outer;
                }
            }
        }
    }
    if let Some(tri) = triangle {
        let tri_set: VertexSet = tri.into_iter().collect();
        let mut legs: Vec<Vec<usize>> = Vec::new();
        for &a in &tri {
            // The leg through `a` lives in the component of `a` once the
            // other two center vertices are removed.
            let rest = b.difference(&tri_set.difference(&VertexSet::singleton(a)));
            let comp = g
                .components_within(&rest)
                .into_iter()
                .find(|c| c.contains(a))
                .expect("a lies in its own component");
            legs.push(path_from(g, a, &comp)?);
        }
        let mut legs: [Vec<usize>; 3] =
            legs.try_into().expect("exactly three triangle legs");
        legs.sort_by_key(|leg| *leg.last().expect("legs are nonempty"));
        let connector = Connector { center: Center::Triangle(tri), legs };
        return check_extracted(g, connector, tips);
    }

    if let Some(c) = b.iter().find(|&x| degree(x) == 3) {
        let mut legs: Vec<Vec<usize>> = g
            .components_within(&b.difference(&VertexSet::singleton(c)))
            .into_iter()
            .map(|comp| {
                let start = g.neighbors_in(c, &comp).first().expect("component touches center");
                let mut leg = vec![c];
                leg.extend(path_from(g, start, &comp)?);
                Ok(leg)
            })
            .collect::<Result<_>>()?;
        if legs.len() != 3 {
            return violation("degree-3 vertex does not split the set into three legs");
        }
        legs.sort_by_key(|leg| *leg.last().expect("legs are nonempty"));
        let legs: [Vec<usize>; 3] = legs.try_into().expect("length checked");
        return check_extracted(g, Connector { center: Center::Identified(c), legs }, tips);
    }

    // No branch vertex: the set is a path between two of the tips and the
    // third tip is its interior center, carrying a degenerate leg.
    let ends: Vec<usize> = b.iter().filter(|&x| degree(x) == 1).collect();
    if ends.len() != 2 {
        return violation("minimal set is neither branched nor a path");
    }
    let walk = path_from(g, ends[0], b)?;
    let center = *tips
        .iter()
        .find(|&&x| x != walk[0] && x != *walk.last().expect("walk is nonempty"))
        .expect("one tip is interior");
    let pos = walk.iter().position(|&x| x == center).expect("center lies on the walk");
    let mut first: Vec<usize> = walk[..=pos].iter().rev().copied().collect();
    let second: Vec<usize> = walk[pos..].to_vec();
    if first.len() == 1 {
        // The center is an endpoint of the walk: it coincides with a tip
        // pair only when tips are not distinct, which was rejected earlier.
        first = vec![center];
    }
    let mut legs = [vec![center], first, second];
    legs.sort_by_key(|leg| *leg.last().expect("legs are nonempty"));
    check_extracted(g, Connector { center: Center::Identified(center), legs }, tips)
}

/// Walks the unique induced path through a path-shaped component starting at
/// `start`.
fn path_from(g: &Graph, start: usize, within: &VertexSet) -> Result<Vec<usize>> {
    let mut walk = vec![start];
    let mut seen = VertexSet::singleton(start);
    loop {
        let last = *walk.last().expect("walk is nonempty");
        let next = g.neighbors_in(last, within).difference(&seen);
        match next.len() {
            0 => return Ok(walk),
            1 => {
                let x = next.first().expect("nonempty");
                walk.push(x);
                seen.insert(x);
            }
            _ => {
                return Err(Error::Violation(Violation::new(
                    "minimal_connector",
                    "leg component is not a path",
                    within.to_vec(),
                )))
            }
        }
    }
}

fn check_extracted(g: &Graph, connector: Connector, tips: [usize; 3]) -> Result<Connector> {
    let mut want = tips;
    want.sort_unstable();
    let mut got = connector.tips();
    got.sort_unstable();
    if got != want || !connector.is_valid_in(g) {
        return Err(Error::Violation(Violation::new(
            "minimal_connector",
            "extracted structure is not a connector with the requested tips",
            connector.vertices().to_vec(),
        )));
    }
    Ok(connector)
}
