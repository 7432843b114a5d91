//! A system `H_T` that detects the tree `T`.
//!
//! Number the vertices of `T` as in [`TreeWithIds`], give each non-root
//! vertex `v_i` the variable `z_i` (standing for the edge above it), and let
//! `H_i` be the product of the variables of `v_i`'s children, so leaves get
//! the constant 1. Then `P_{T′}(H_T)` is `(α_T, 0, …, 0)` when `T′ ≅ T` and
//! zero for every other tree with the same vertex count.

use crate::algebra::{int, Series, SeriesVector};
use crate::trees::{RootedTree, TreeWithIds};
use crate::{Error, Result};

/// Total degree large enough that no term of any `P_{T′}(H_T)` is cut off.
fn exact_order(m: usize) -> usize {
    ((m - 1) * (m - 1)).max(1)
}

/// The detecting system `H_T` in `v(T)` variables.
pub fn gadget_system(tree: &RootedTree) -> SeriesVector {
    let ids = TreeWithIds::new(tree);
    let m = ids.size();
    let trunc = exact_order(m);
    let comps = ids
        .vertices()
        .map(|v| {
            let mut exps = vec![0u32; m];
            for &c in ids.children(v) {
                exps[c - 1] = 1;
            }
            Series::monomial(m, trunc, &exps, int(1))
        })
        .collect();
    SeriesVector::new(comps).expect("one component per variable")
}

/// `P_{probe}(H_{target})` for trees with the same vertex count.
pub fn independence_probe(target: &RootedTree, probe: &RootedTree) -> Result<SeriesVector> {
    if target.size() != probe.size() {
        return Err(Error::Domain(format!(
            "trees {target} and {probe} have different vertex counts"
        )));
    }
    Ok(super::p_tree(probe, &gadget_system(target)))
}
