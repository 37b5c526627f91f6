//! Enumeration of the guessed neighborhood, positions, and left neighbors for taking a pivot.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

use super::{quota, Subproblem};

/// One way of taking a branching pivot: a guessed set of its earlier active
/// neighbors, positions for all of them, and a left-neighbor set for each
/// taken vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchTuple {
    /// Guessed earlier neighbors of the pivot inside the active area.
    pub d_set: VertexSet,
    /// Position map extended to the decided-in set plus `d_set` and the
    /// pivot; `0` elsewhere.
    pub eta_ext: Vec<usize>,
    /// Left-neighbor guess for every taken vertex; the pivot's set is empty.
    pub left: BTreeMap<usize, VertexSet>,
}

impl BranchTuple {
    /// The set this tuple takes: `d_set` plus the pivot.
    pub fn taken(&self, pivot: usize) -> VertexSet {
        let mut z = self.d_set.clone();
        z.insert(pivot);
        z
    }
}

/// All subsets of `pool` with at most `max_size` elements, ordered as
/// ascending bitmasks.
fn bounded_subsets_ascending(pool: &VertexSet, max_size: usize) -> Vec<VertexSet> {
    let elems = pool.to_vec();
    let mut out = Vec::new();
    let mut current = Vec::new();
    grow_subsets(&elems, 0, max_size, &mut current, &mut out);
    out.sort();
    out
}

fn grow_subsets(
    elems: &[usize],
    from: usize,
    room: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<VertexSet>,
) {
    out.push(current.iter().copied().collect());
    if room == 0 {
        return;
    }
    for i in from..elems.len() {
        current.push(elems[i]);
        grow_subsets(elems, i + 1, room - 1, current, out);
        current.pop();
    }
}

/// Streams every branch tuple for `pivot` in the pinned deterministic order:
/// guessed neighborhoods as ascending bitmasks, then position vectors in
/// ascending lexicographic order (taken vertices ascending, each position
/// ranging over `[zeta, n]` subject to differing along edges), then
/// left-neighbor choices with earlier taken vertices most significant and
/// each set an ascending bitmask. Stops early if the callback errors.
pub fn for_each_branch_tuple<F>(
    g: &Graph,
    sub: &Subproblem,
    pivot: usize,
    d: usize,
    mut f: F,
) -> Result<()>
where
    F: FnMut(&BranchTuple) -> Result<()>,
{
    if !sub.w.contains(pivot) {
        return Err(Error::contract(
            "enumerate_branch_tuples",
            "pivot must be an active vertex",
        ));
    }
    let cap = quota(g, &sub.eta, pivot, sub.zeta[pivot], d);
    if cap < 0 {
        return Err(Error::contract(
            "enumerate_branch_tuples",
            "pivot offends at its position bound; the subproblem is not clean",
        ));
    }
    let pool = g.neighbors_in(pivot, &sub.w);
    for d_set in bounded_subsets_ascending(&pool, cap as usize) {
        let mut members = d_set.to_vec();
        members.push(pivot);
        members.sort_unstable();
        let mut eta_ext = sub.eta.clone();
        assign_positions(g, sub, d, &d_set, &members, 0, &mut eta_ext, &mut f)?;
    }
    Ok(())
}

/// Assigns positions to `members[idx..]` in lexicographic order, then hands
/// each completed position vector to the left-neighbor enumeration.
#[allow(clippy::too_many_arguments)]
fn assign_positions<F>(
    g: &Graph,
    sub: &Subproblem,
    d: usize,
    d_set: &VertexSet,
    members: &[usize],
    idx: usize,
    eta_ext: &mut Vec<usize>,
    f: &mut F,
) -> Result<()>
where
    F: FnMut(&BranchTuple) -> Result<()>,
{
    let n = g.n();
    if idx == members.len() {
        return emit_left_guesses(g, sub, d, d_set, members, eta_ext, f);
    }
    let u = members[idx];
    for p in sub.zeta[u]..=n {
        let collides = g.neighbors(u).iter().any(|v| eta_ext[v] == p);
        if collides {
            continue;
        }
        eta_ext[u] = p;
        assign_positions(g, sub, d, d_set, members, idx + 1, eta_ext, f)?;
        eta_ext[u] = 0;
    }
    Ok(())
}

/// Enumerates all left-neighbor guesses for a fixed position vector. Each
/// taken vertex may exempt a subset of the remaining active area no larger
/// than its quota under the extended positions; a negative quota admits no
/// guess at all, and the tuple set for this position vector is empty.
fn emit_left_guesses<F>(
    g: &Graph,
    sub: &Subproblem,
    d: usize,
    d_set: &VertexSet,
    members: &[usize],
    eta_ext: &[usize],
    f: &mut F,
) -> Result<()>
where
    F: FnMut(&BranchTuple) -> Result<()>,
{
    let taken: VertexSet = members.iter().copied().collect();
    let outside = sub.w.difference(&taken);
    let mut choices: Vec<Vec<VertexSet>> = Vec::with_capacity(members.len());
    for &u in members {
        let room = quota(g, eta_ext, u, eta_ext[u], d);
        if room < 0 {
            return Ok(());
        }
        if d_set.contains(u) {
            choices.push(bounded_subsets_ascending(&outside, room as usize));
        } else {
            // The pivot's left-neighbor set is pinned to be empty.
            choices.push(vec![VertexSet::new()]);
        }
    }
    let mut picks = vec![0usize; members.len()];
    loop {
        let left: BTreeMap<usize, VertexSet> = members
            .iter()
            .enumerate()
            .map(|(slot, &u)| (u, choices[slot][picks[slot]].clone()))
            .collect();
        let tuple = BranchTuple {
            d_set: d_set.clone(),
            eta_ext: eta_ext.to_vec(),
            left,
        };
        f(&tuple)?;
        // Advance the odometer with the last taken vertex cycling fastest.
        let mut slot = members.len();
        loop {
            if slot == 0 {
                return Ok(());
            }
            slot -= 1;
            picks[slot] += 1;
            if picks[slot] < choices[slot].len() {
                break;
            }
            picks[slot] = 0;
        }
    }
}

/// Collects every branch tuple for `pivot` in the pinned order.
pub fn enumerate_branch_tuples(
    g: &Graph,
    sub: &Subproblem,
    pivot: usize,
    d: usize,
) -> Result<Vec<BranchTuple>> {
    let mut out = Vec::new();
    for_each_branch_tuple(g, sub, pivot, d, |t| {
        out.push(t.clone());
        Ok(())
    })?;
    Ok(out)
}
