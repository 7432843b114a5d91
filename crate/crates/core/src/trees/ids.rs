//! Trees with numbered vertices, and the edge surgery built on them.
//!
//! Vertices are numbered `1..=v(T)` in depth-first preorder with children
//! visited in canonical order, so vertex 1 is the root. An edge is named by
//! its endpoint farther from the root, hence edge ids are `2..=v(T)`.
//!
//! For edges `e` and `f`, `e ≻ f` holds when `f` survives cutting away the
//! part of the tree hanging from `e`, that is when `f ≠ e` and `f` is not a
//! descendant of `e`. A descending sequence `e₁, …, e_r` has `e_i ≻ e_j` for
//! every `i < j`. Its strip pieces are what hangs from `e₁`, then what hangs
//! from `e₂` after that, and so on; the last piece is what remains around the
//! root.

use super::{Forest, RootedTree};
use crate::{Error, Result};

pub type VertexId = usize;

/// A rooted subtree (a parent-closed vertex set containing the root),
/// with its shape and the forest of what is left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedSubtree {
    pub vertices: Vec<VertexId>,
    pub subtree: RootedTree,
    pub complement: Forest,
}

#[derive(Clone, Debug)]
pub struct TreeWithIds {
    tree: RootedTree,
    // All indexed by id − 1.
    parent: Vec<Option<VertexId>>,
    children: Vec<Vec<VertexId>>,
    // Last id in the preorder block of each vertex's subtree.
    block_end: Vec<VertexId>,
    depth: Vec<usize>,
}

impl TreeWithIds {
    pub fn new(tree: &RootedTree) -> Self {
        let m = tree.size();
        let mut out = TreeWithIds {
            tree: tree.clone(),
            parent: Vec::with_capacity(m),
            children: Vec::with_capacity(m),
            block_end: Vec::with_capacity(m),
            depth: Vec::with_capacity(m),
        };
        out.number(tree, None, 0);
        out
    }

    fn number(&mut self, node: &RootedTree, parent: Option<VertexId>, depth: usize) -> VertexId {
        self.parent.push(parent);
        self.children.push(Vec::new());
        self.block_end.push(0);
        self.depth.push(depth);
        let id = self.parent.len();
        let mut last = id;
        for c in node.children() {
            let cid = self.parent.len() + 1;
            self.children[id - 1].push(cid);
            last = self.number(c, Some(id), depth + 1);
        }
        self.block_end[id - 1] = last;
        last
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn size(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> VertexId {
        1
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<VertexId> {
        1..=self.size()
    }

    /// Edge ids, each named after its far endpoint.
    pub fn edges(&self) -> std::ops::RangeInclusive<VertexId> {
        2..=self.size()
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v - 1]
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v - 1]
    }

    /// Distance from the root.
    pub fn depth(&self, v: VertexId) -> usize {
        self.depth[v - 1]
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.children[v - 1].is_empty()
    }

    pub fn leaves(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.is_leaf(v)).collect()
    }

    /// True when `v` lies in the subtree hanging from `u` (including `u`).
    pub fn is_descendant(&self, u: VertexId, v: VertexId) -> bool {
        u <= v && v <= self.block_end[u - 1]
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if (1..=self.size()).contains(&v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn check_edge(&self, e: VertexId) -> Result<()> {
        if (2..=self.size()).contains(&e) {
            Ok(())
        } else {
            Err(Error::UnknownEdge(e))
        }
    }

    /// The subtree hanging from `v`.
    pub fn subtree_at(&self, v: VertexId) -> RootedTree {
        let alive = vec![true; self.size()];
        self.induced(v, &alive)
    }

    /// The tree spanned by the live descendants of `top`; `alive[v − 1]` marks
    /// live vertices and `top` itself must be live.
    pub fn induced(&self, top: VertexId, alive: &[bool]) -> RootedTree {
        let kids = self.children[top - 1]
            .iter()
            .filter(|&&c| alive[c - 1])
            .map(|&c| self.induced(c, alive))
            .collect();
        RootedTree::from_children(kids)
    }

    /// Cuts edge `e`: returns the part containing the root and the part
    /// hanging from `e`.
    pub fn detach(&self, e: VertexId) -> Result<(RootedTree, RootedTree)> {
        self.check_edge(e)?;
        let alive: Vec<bool> = self.vertices().map(|v| !self.is_descendant(e, v)).collect();
        Ok((self.induced(self.root(), &alive), self.subtree_at(e)))
    }

    /// Whether `e ≻ f`, i.e. `f` survives when `e` and everything above it is cut.
    pub fn edge_below(&self, e: VertexId, f: VertexId) -> Result<bool> {
        self.check_edge(e)?;
        self.check_edge(f)?;
        Ok(e != f && !self.is_descendant(e, f))
    }

    pub fn is_descending(&self, seq: &[VertexId]) -> Result<bool> {
        for (i, &e) in seq.iter().enumerate() {
            self.check_edge(e)?;
            for &f in &seq[i + 1..] {
                if !self.edge_below(e, f)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Every descending sequence of `k` edges, in lexicographic order.
    pub fn descending_sequences(&self, k: usize) -> Vec<Vec<VertexId>> {
        let mut out = Vec::new();
        self.walk_descending(k, |seq, _| {
            if seq.len() == k {
                out.push(seq.to_vec());
            }
        });
        out
    }

    /// Strip pieces of a descending sequence; `r` edges give `r + 1` pieces,
    /// the last one containing the root.
    pub fn strip_sequence(&self, seq: &[VertexId]) -> Result<Vec<RootedTree>> {
        if !self.is_descending(seq)? {
            return Err(Error::Domain(format!("edge sequence {seq:?} is not descending")));
        }
        let mut alive = vec![true; self.size()];
        let mut pieces = Vec::with_capacity(seq.len() + 1);
        for &e in seq {
            pieces.push(self.induced(e, &alive));
            self.kill_block(e, &mut alive);
        }
        pieces.push(self.induced(self.root(), &alive));
        Ok(pieces)
    }

    fn kill_block(&self, e: VertexId, alive: &mut [bool]) {
        for slot in &mut alive[e - 1..self.block_end[e - 1]] {
            *slot = false;
        }
    }

    /// Calls `visit(seq, pieces)` for every descending sequence of length at
    /// most `max_len` (the empty one included), where `pieces` are its strip
    /// pieces with the root piece last.
    pub fn walk_descending<F>(&self, max_len: usize, mut visit: F)
    where
        F: FnMut(&[VertexId], &[RootedTree]),
    {
        let mut alive = vec![true; self.size()];
        let mut seq = Vec::new();
        let mut pieces = Vec::new();
        self.walk_rec(max_len, &mut alive, &mut seq, &mut pieces, &mut visit);
    }

    fn walk_rec<F>(
        &self,
        max_len: usize,
        alive: &mut Vec<bool>,
        seq: &mut Vec<VertexId>,
        pieces: &mut Vec<RootedTree>,
        visit: &mut F,
    ) where
        F: FnMut(&[VertexId], &[RootedTree]),
    {
        pieces.push(self.induced(self.root(), alive));
        visit(seq, pieces);
        pieces.pop();
        if seq.len() == max_len {
            return;
        }
        for e in self.edges() {
            if !alive[e - 1] {
                continue;
            }
            let saved = alive.clone();
            pieces.push(self.induced(e, alive));
            self.kill_block(e, alive);
            seq.push(e);
            self.walk_rec(max_len, alive, seq, pieces, visit);
            seq.pop();
            pieces.pop();
            *alive = saved;
        }
    }

    /// Every parent-closed vertex set containing the root.
    pub fn rooted_subtrees(&self) -> Vec<RootedSubtree> {
        self.closed_sets(self.root())
            .into_iter()
            .map(|mut vertices| {
                vertices.sort_unstable();
                let mut inside = vec![false; self.size()];
                for &v in &vertices {
                    inside[v - 1] = true;
                }
                let subtree = self.induced(self.root(), &inside);
                let complement = self.components_outside(&inside);
                RootedSubtree {
                    vertices,
                    subtree,
                    complement,
                }
            })
            .collect()
    }

    // Vertex sets containing `v` and closed under parents within v's subtree.
    fn closed_sets(&self, v: VertexId) -> Vec<Vec<VertexId>> {
        let mut acc = vec![vec![v]];
        for &c in self.children(v) {
            let child_sets = self.closed_sets(c);
            let mut next = Vec::with_capacity(acc.len() * (child_sets.len() + 1));
            for base in &acc {
                next.push(base.clone());
                for cs in &child_sets {
                    let mut merged = base.clone();
                    merged.extend_from_slice(cs);
                    next.push(merged);
                }
            }
            acc = next;
        }
        acc
    }

    // Components of the vertices not marked in `removed`, each rooted at its
    // vertex nearest the root.
    fn components_outside(&self, removed: &[bool]) -> Forest {
        let alive: Vec<bool> = removed.iter().map(|r| !r).collect();
        let tops = self
            .vertices()
            .filter(|&v| alive[v - 1] && self.parent(v).is_none_or(|p| !alive[p - 1]));
        Forest::new(tops.map(|v| self.induced(v, &alive)).collect())
    }

    /// The forest left after deleting a set of distinct leaves.
    pub fn delete_leaves(&self, leaves: &[VertexId]) -> Result<Forest> {
        let mut removed = vec![false; self.size()];
        for &v in leaves {
            self.check_vertex(v)?;
            if !self.is_leaf(v) {
                return Err(Error::Domain(format!("vertex {v} is not a leaf")));
            }
            if removed[v - 1] {
                return Err(Error::Domain(format!("leaf {v} listed twice")));
            }
            removed[v - 1] = true;
        }
        Ok(self.components_outside(&removed))
    }
}

/// Attaches `branch` below vertex `v` of `base` by a new edge.
pub fn graft(branch: &RootedTree, v: VertexId, base: &TreeWithIds) -> Result<RootedTree> {
    base.check_vertex(v)?;
    Ok(graft_rec(base, base.root(), v, branch))
}

fn graft_rec(base: &TreeWithIds, cur: VertexId, target: VertexId, branch: &RootedTree) -> RootedTree {
    let mut kids: Vec<RootedTree> = base
        .children(cur)
        .iter()
        .map(|&c| {
            if base.is_descendant(c, target) {
                graft_rec(base, c, target, branch)
            } else {
                base.subtree_at(c)
            }
        })
        .collect();
    if cur == target {
        kids.push(branch.clone());
    }
    RootedTree::from_children(kids)
}
