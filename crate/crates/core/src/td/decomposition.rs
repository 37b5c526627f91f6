//! Rooted forests whose ancestor chains cover every edge of the graph they
//! decompose, with depth accounting and properization.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use std::collections::BTreeMap;

/// A treedepth decomposition: a rooted forest stored as a parent map over
/// its vertex set. Validity against a graph means every edge between two
/// decomposition vertices joins an ancestor to a descendant.
///
/// The depth of a vertex counts the vertices on its path from the root,
/// so roots have depth 1 and the depth of the decomposition is the longest
/// such path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TreedepthDecomposition {
    parent: BTreeMap<usize, Option<usize>>,
}

impl Default for TreedepthDecomposition {
    fn default() -> Self {
        TreedepthDecomposition::new()
    }
}

impl TreedepthDecomposition {
    /// The empty forest.
    pub fn new() -> TreedepthDecomposition {
        TreedepthDecomposition { parent: BTreeMap::new() }
    }

    /// Builds a forest from `(vertex, parent)` pairs, rejecting duplicate
    /// vertices, parents outside the vertex set, and cycles.
    pub fn from_parents(pairs: &[(usize, Option<usize>)]) -> Result<TreedepthDecomposition> {
        let err = |msg: String| Error::Contract { op: "decomposition", msg };
        let mut parent = BTreeMap::new();
        for &(v, p) in pairs {
            if parent.insert(v, p).is_some() {
                return Err(err(format!("vertex {v} appears twice")));
            }
        }
        for &(v, p) in pairs {
            if let Some(p) = p {
                if !parent.contains_key(&p) {
                    return Err(err(format!("parent {p} of vertex {v} is not a vertex")));
                }
            }
        }
        let f = TreedepthDecomposition { parent };
        for &v in f.parent.keys() {
            // A chain longer than the vertex count must have revisited.
            let mut steps = 0;
            let mut at = v;
            while let Some(p) = f.parent[&at] {
                steps += 1;
                if steps > f.parent.len() {
                    return Err(err(format!("parent chain from vertex {v} cycles")));
                }
                at = p;
            }
        }
        Ok(f)
    }

    /// Adds a fresh vertex below an existing parent (or as a new root);
    /// acyclicity is preserved by construction.
    pub fn insert(&mut self, v: usize, parent: Option<usize>) -> Result<()> {
        let err = |msg: String| Error::Contract { op: "decomposition", msg };
        if self.parent.contains_key(&v) {
            return Err(err(format!("vertex {v} is already present")));
        }
        if let Some(p) = parent {
            if !self.parent.contains_key(&p) {
                return Err(err(format!("parent {p} of vertex {v} is not a vertex")));
            }
        }
        self.parent.insert(v, parent);
        Ok(())
    }

    pub fn vertices(&self) -> VertexSet {
        self.parent.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.parent.contains_key(&v)
    }

    /// The parent of `v`; `None` both for roots and for absent vertices.
    pub fn parent_of(&self, v: usize) -> Option<usize> {
        self.parent.get(&v).copied().flatten()
    }

    /// The children of `v` in ascending order.
    pub fn children_of(&self, v: usize) -> Vec<usize> {
        self.parent
            .iter()
            .filter(|&(_, &p)| p == Some(v))
            .map(|(&c, _)| c)
            .collect()
    }

    /// The roots in ascending order.
    pub fn roots(&self) -> Vec<usize> {
        self.parent
            .iter()
            .filter(|&(_, &p)| p.is_none())
            .map(|(&r, _)| r)
            .collect()
    }

    /// The path from `v`'s root down to `v`, both inclusive; empty when `v`
    /// is absent.
    pub fn path_from_root(&self, v: usize) -> Vec<usize> {
        if !self.contains(v) {
            return Vec::new();
        }
        let mut path = vec![v];
        let mut at = v;
        while let Some(p) = self.parent_of(at) {
            path.push(p);
            at = p;
        }
        path.reverse();
        path
    }

    /// Vertices on the path from the root to `v`, so roots have depth 1;
    /// zero when `v` is absent.
    pub fn depth_of(&self, v: usize) -> usize {
        self.path_from_root(v).len()
    }

    /// The depth of the deepest vertex; zero for the empty forest.
    pub fn depth(&self) -> usize {
        self.parent.keys().map(|&v| self.depth_of(v)).max().unwrap_or(0)
    }

    /// Strict ancestorship: `anc` lies on the path from the root to `v`,
    /// above `v` itself.
    pub fn is_ancestor_of(&self, anc: usize, v: usize) -> bool {
        let mut at = v;
        while let Some(p) = self.parent_of(at) {
            if p == anc {
                return true;
            }
            at = p;
        }
        false
    }

    /// Whether `u` and `v` are equal or in ancestor–descendant relation.
    pub fn related(&self, u: usize, v: usize) -> bool {
        u == v || self.is_ancestor_of(u, v) || self.is_ancestor_of(v, u)
    }

    /// `v` together with all its descendants.
    pub fn subtree(&self, v: usize) -> VertexSet {
        let mut out = VertexSet::singleton(v);
        let mut frontier = vec![v];
        while let Some(u) = frontier.pop() {
            for c in self.children_of(u) {
                out.insert(c);
                frontier.push(c);
            }
        }
        out
    }

    /// The vertex sets of the trees, ordered by their smallest member.
    pub fn forest_components(&self) -> Vec<VertexSet> {
        self.roots().into_iter().map(|r| self.subtree(r)).collect()
    }

    /// The canonical parent-array form: `(vertex, parent)` pairs in
    /// ascending vertex order. Doubles as the deterministic tie-break key
    /// between forests on the same vertex set.
    pub fn parent_pairs(&self) -> Vec<(usize, Option<usize>)> {
        self.parent.iter().map(|(&v, &p)| (v, p)).collect()
    }

    /// Checks validity for `g`: vertices in range and every edge of `g`
    /// between two decomposition vertices in ancestor–descendant relation.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let err = |msg: String| Error::Contract { op: "decomposition", msg };
        if let Some(&v) = self.parent.keys().last() {
            if v >= g.n() {
                return Err(err(format!("vertex {v} is outside the graph")));
            }
        }
        for &(u, v) in g.edges() {
            if self.contains(u) && self.contains(v) && !self.related(u, v) {
                return Err(err(format!(
                    "edge {{{u}, {v}}} joins vertices that are not in ancestor-descendant relation"
                )));
            }
        }
        Ok(())
    }

    /// Whether `self` is a subforest of `other` that is closed under taking
    /// parents: same parent on every shared vertex, so a root of `self` is a
    /// root of `other` too.
    pub fn is_parent_closed_in(&self, other: &TreedepthDecomposition) -> bool {
        self.parent
            .iter()
            .all(|(&v, &p)| other.contains(v) && other.parent.get(&v) == Some(&p))
    }

    /// Unions two forests on disjoint vertex sets.
    pub fn merge_disjoint(&self, other: &TreedepthDecomposition) -> Result<TreedepthDecomposition> {
        let mut parent = self.parent.clone();
        for (&v, &p) in &other.parent {
            if parent.insert(v, p).is_some() {
                return Err(Error::Contract {
                    op: "decomposition",
                    msg: format!("vertex {v} is in both forests"),
                });
            }
        }
        Ok(TreedepthDecomposition { parent })
    }

    /// The subforest on a parent-closed vertex set; rejects sets whose
    /// members would lose their parent.
    pub fn restrict(&self, keep: &VertexSet) -> Result<TreedepthDecomposition> {
        let mut parent = BTreeMap::new();
        for v in keep.iter() {
            let p = match self.parent.get(&v) {
                Some(&p) => p,
                None => {
                    return Err(Error::Contract {
                        op: "decomposition",
                        msg: format!("vertex {v} is not in the forest"),
                    })
                }
            };
            if let Some(p) = p {
                if !keep.contains(p) {
                    return Err(Error::Contract {
                        op: "decomposition",
                        msg: format!("the kept set is not parent-closed: {v} loses its parent {p}"),
                    });
                }
            }
            parent.insert(v, p);
        }
        Ok(TreedepthDecomposition { parent })
    }

    /// Deletes a vertex set: survivors whose parent was deleted become
    /// roots, so the remaining forest is `F − gone` with its induced edges.
    pub fn remove_set(&self, gone: &VertexSet) -> TreedepthDecomposition {
        let parent = self
            .parent
            .iter()
            .filter(|&(&v, _)| !gone.contains(v))
            .map(|(&v, &p)| (v, p.filter(|q| !gone.contains(*q))))
            .collect();
        TreedepthDecomposition { parent }
    }
}

/// Whether every non-root vertex hangs on by an edge: some descendant of
/// `u` (possibly `u` itself) is adjacent in `g` to `u`'s parent.
pub fn is_proper(g: &Graph, f: &TreedepthDecomposition) -> bool {
    f.parent_pairs().iter().all(|&(u, p)| match p {
        None => true,
        Some(p) => f.subtree(u).iter().any(|w| g.has_edge(w, p)),
    })
}

/// Properizes a decomposition: while some non-root `u` has no descendant
/// adjacent to its parent `v`, reattach `u` as a child of `v`'s parent
/// (or make it a root). Each step moves `u`'s whole subtree up a level, so
/// the sum of depths strictly decreases and the loop terminates; the depth
/// never increases and validity for `g` is preserved.
pub fn make_proper(g: &Graph, f: &TreedepthDecomposition) -> Result<TreedepthDecomposition> {
    f.validate(g)?;
    let mut out = f.clone();
    loop {
        let violating = out.parent_pairs().into_iter().find_map(|(u, p)| {
            let p = p?;
            let hangs_on = out.subtree(u).iter().any(|w| g.has_edge(w, p));
            (!hangs_on).then_some((u, p))
        });
        match violating {
            Some((u, v)) => {
                let grandparent = out.parent_of(v);
                out.parent.insert(u, grandparent);
            }
            None => break,
        }
    }
    debug_assert!(out.validate(g).is_ok());
    debug_assert!(out.depth() <= f.depth().max(1) || f.is_empty());
    Ok(out)
}
