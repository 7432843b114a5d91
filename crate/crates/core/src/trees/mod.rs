//! Canonical rooted trees, forests, enumeration and counting.
//!
//! A tree is written as nested parentheses: `()` is the single vertex, and a
//! vertex with children `c₁ … c_k` is `(c₁…c_k)`. The canonical encoding lists
//! children in ascending order of their own encodings, so two trees are
//! isomorphic exactly when their encodings agree.

mod ids;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::algebra::factorial;
use crate::{Error, Result};

pub use ids::{graft, RootedSubtree, TreeWithIds, VertexId};

/// A canonical representative of an isomorphism class of rooted trees.
///
/// Ordering is by vertex count, then by encoding; equality and hashing use
/// the encoding alone.
#[derive(Clone)]
pub struct RootedTree {
    children: Vec<RootedTree>,
    code: String,
    size: usize,
    leaves: usize,
    height: usize,
}

impl RootedTree {
    pub fn singleton() -> Self {
        Self::from_children(Vec::new())
    }

    /// The tree whose root has the given child subtrees.
    pub fn from_children(mut children: Vec<RootedTree>) -> Self {
        children.sort_by(|a, b| a.code.cmp(&b.code));
        let mut code = String::with_capacity(2 + children.iter().map(|c| c.code.len()).sum::<usize>());
        code.push('(');
        for c in &children {
            code.push_str(&c.code);
        }
        code.push(')');
        let size = 1 + children.iter().map(|c| c.size).sum::<usize>();
        let leaves = if children.is_empty() {
            1
        } else {
            children.iter().map(|c| c.leaves).sum()
        };
        let height = children.iter().map(|c| c.height + 1).max().unwrap_or(0);
        RootedTree {
            children,
            code,
            size,
            leaves,
            height,
        }
    }

    /// The path with `n ≥ 1` vertices, rooted at an end.
    pub fn chain(n: usize) -> Self {
        assert!(n >= 1, "a chain needs at least one vertex");
        (1..n).fold(Self::singleton(), |t, _| Self::from_children(vec![t]))
    }

    /// The root with `k` leaf children (`k = 0` gives the singleton).
    pub fn shrub(k: usize) -> Self {
        Self::from_children(vec![Self::singleton(); k])
    }

    pub fn encoding(&self) -> &str {
        &self.code
    }

    pub fn children(&self) -> &[RootedTree] {
        &self.children
    }

    /// Vertex count.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves
    }

    /// Longest root-to-leaf distance.
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn is_singleton(&self) -> bool {
        self.children.is_empty()
    }

    /// Order of the automorphism group: the product over classes of
    /// isomorphic children of `m! · α^m`.
    pub fn aut_size(&self) -> BigUint {
        let mut out = BigUint::one();
        for (child, mult) in self.child_classes() {
            out *= factorial(mult);
            out *= child.aut_size().pow(mult as u32);
        }
        out
    }

    /// Distinct child subtrees with their multiplicities.
    pub fn child_classes(&self) -> Vec<(&RootedTree, usize)> {
        let mut out: Vec<(&RootedTree, usize)> = Vec::new();
        for c in &self.children {
            match out.last_mut() {
                Some((prev, m)) if prev.code == c.code => *m += 1,
                _ => out.push((c, 1)),
            }
        }
        out
    }

    /// The forest left after removing the root.
    pub fn delete_root(&self) -> Forest {
        Forest::new(self.children.clone())
    }

    /// Number of vertices at distance exactly `m` from the root.
    pub fn height_census(&self, m: usize) -> usize {
        if m == 0 {
            1
        } else {
            self.children.iter().map(|c| c.height_census(m - 1)).sum()
        }
    }

    /// Number of maps `f: V(T) → {1..n}` with `f(parent) < f(child)` on every edge.
    pub fn count_strict_maps(&self, n: usize) -> BigUint {
        self.strict_map_counts(n).into_iter().sum()
    }

    // Entry c−1 counts the maps of this subtree that send the root to c.
    fn strict_map_counts(&self, n: usize) -> Vec<BigUint> {
        let mut out = vec![BigUint::one(); n];
        for child in &self.children {
            let sub = child.strict_map_counts(n);
            // Suffix sums: maps of the child with root label above c.
            let mut above = BigUint::zero();
            for c in (0..n).rev() {
                out[c] *= &above;
                above += &sub[c];
            }
        }
        out
    }
}

impl PartialEq for RootedTree {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code
    }
}

impl Eq for RootedTree {}

impl Hash for RootedTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl Ord for RootedTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size.cmp(&other.size).then_with(|| self.code.cmp(&other.code))
    }
}

impl PartialOrd for RootedTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code)
    }
}

impl fmt::Debug for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootedTree({})", self.code)
    }
}

impl FromStr for RootedTree {
    type Err = Error;

    /// Parses any parenthesization; children may appear in any order.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::TreeParse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut stack: Vec<Vec<RootedTree>> = Vec::new();
        let mut done: Option<RootedTree> = None;
        for ch in s.chars().filter(|c| !c.is_whitespace()) {
            if done.is_some() {
                return Err(bad("trailing characters after the root closes"));
            }
            match ch {
                '(' => stack.push(Vec::new()),
                ')' => {
                    let kids = stack.pop().ok_or_else(|| bad("unbalanced ')'"))?;
                    let node = RootedTree::from_children(kids);
                    match stack.last_mut() {
                        Some(parent) => parent.push(node),
                        None => done = Some(node),
                    }
                }
                other => return Err(bad(&format!("unexpected character {other:?}"))),
            }
        }
        match done {
            Some(t) => Ok(t),
            None if stack.is_empty() => Err(bad("empty encoding")),
            None => Err(bad("unbalanced '('")),
        }
    }
}

/// A multiset of rooted trees, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Forest {
    trees: Vec<RootedTree>,
}

impl Forest {
    pub fn new(mut trees: Vec<RootedTree>) -> Self {
        trees.sort();
        Forest { trees }
    }

    pub fn empty() -> Self {
        Forest { trees: Vec::new() }
    }

    pub fn trees(&self) -> &[RootedTree] {
        &self.trees
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Total vertex count.
    pub fn size(&self) -> usize {
        self.trees.iter().map(RootedTree::size).sum()
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.trees.iter().map(RootedTree::encoding).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Forest{self}")
    }
}

/// One representative per isomorphism class of trees with `m` vertices,
/// sorted by encoding. Empty for `m = 0`.
pub fn enumerate_trees(m: usize) -> Vec<RootedTree> {
    let mut by_size: Vec<Vec<RootedTree>> = vec![Vec::new(), vec![RootedTree::singleton()]];
    for k in 2..=m {
        // Children of the root form a multiset of trees with k − 1 vertices in
        // total. Walk the smaller trees in a fixed order and pick indices
        // non-increasingly so each multiset appears once.
        let pool: Vec<&RootedTree> = by_size[1..k].iter().flatten().collect();
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        collect_multisets(&pool, pool.len(), k - 1, &mut chosen, &mut out);
        out.sort_by(|a, b| a.code.cmp(&b.code));
        by_size.push(out);
    }
    by_size.into_iter().nth(m).unwrap_or_default()
}

fn collect_multisets(
    pool: &[&RootedTree],
    limit: usize,
    remaining: usize,
    chosen: &mut Vec<RootedTree>,
    out: &mut Vec<RootedTree>,
) {
    if remaining == 0 {
        out.push(RootedTree::from_children(chosen.clone()));
        return;
    }
    for i in 0..limit {
        let t = pool[i];
        if t.size <= remaining {
            chosen.push(t.clone());
            collect_multisets(pool, i + 1, remaining - t.size, chosen, out);
            chosen.pop();
        }
    }
}

/// All trees with `1..=max` vertices, in [`RootedTree`] order.
pub fn trees_up_to(max: usize) -> Vec<RootedTree> {
    (1..=max).flat_map(enumerate_trees).collect()
}

/// Number of vertices at height `m` (free-function form).
pub fn height_census(tree: &RootedTree, m: usize) -> usize {
    tree.height_census(m)
}

/// Strict order-preserving maps into a chain of length `n` (free-function form).
pub fn count_strict_maps(tree: &RootedTree, n: usize) -> BigUint {
    tree.count_strict_maps(n)
}

/// Groups a list of trees into a multiplicity map.
pub fn multiplicities<'a>(trees: impl IntoIterator<Item = &'a RootedTree>) -> BTreeMap<RootedTree, usize> {
    let mut out = BTreeMap::new();
    for t in trees {
        *out.entry(t.clone()).or_insert(0) += 1;
    }
    out
}
