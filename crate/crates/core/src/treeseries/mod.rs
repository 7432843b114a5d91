//! Tree-indexed series built from a system `H`.
//!
//! For a tree `T` and a labeling `f` of its vertices by `1..n`, the labeled
//! term is the product over vertices `v` of `H_{f(v)}` differentiated once in
//! the variable `z_{f(c)}` for every child `c` of `v`. Summing over labelings
//! with root label `i` gives `P_{T,i}`; dividing by `α_T` gives `𝒫_{T,i}`.
//!
//! The sum over labelings is evaluated by contraction: `P_{T,i}` is the sum
//! over child labels `j₁, …, j_k` of `∂_{j₁}⋯∂_{j_k} H_i · Π_c P_{T_c, j_c}`,
//! where `T_c` are the child subtrees. Results are memoized per subtree.

mod gadget;
mod keylemma;

use std::collections::HashMap;

use crate::algebra::{from_biguint, int, Rational, Series, SeriesVector};
use crate::trees::RootedTree;
use crate::{Error, Result};

pub use gadget::{gadget_system, independence_probe};
pub use keylemma::{key_lemma_case, key_lemma_sides, random_y_values, verify_key_lemma, KeyLemmaCase, YValues};

/// Evaluator of `P_T`, `𝒫_T` and the operators `D_T`, `𝒟_T` for one system `H`.
#[derive(Clone, Debug)]
pub struct TreeSeries {
    h: SeriesVector,
    p: HashMap<String, SeriesVector>,
    // Key: component index and the sorted list of differentiation variables.
    derivs: HashMap<(usize, Vec<usize>), Series>,
}

impl TreeSeries {
    pub fn new(h: &SeriesVector) -> Self {
        TreeSeries {
            h: h.clone(),
            p: HashMap::new(),
            derivs: HashMap::new(),
        }
    }

    pub fn system(&self) -> &SeriesVector {
        &self.h
    }

    fn nvars(&self) -> usize {
        self.h.nvars()
    }

    fn derivative(&mut self, i: usize, vars: &[usize]) -> Series {
        if vars.is_empty() {
            return self.h.components()[i].clone();
        }
        let key = (i, vars.to_vec());
        if let Some(d) = self.derivs.get(&key) {
            return d.clone();
        }
        let (last, rest) = vars.split_last().expect("nonempty");
        let d = self.derivative(i, rest).partial(*last);
        self.derivs.insert(key, d.clone());
        d
    }

    /// The vector `P_T`.
    pub fn p_tree(&mut self, tree: &RootedTree) -> SeriesVector {
        if let Some(p) = self.p.get(tree.encoding()) {
            return p.clone();
        }
        let child_ps: Vec<SeriesVector> = tree.children().iter().map(|c| self.p_tree(c)).collect();
        let n = self.nvars();
        let trunc = self.h.trunc();
        let mut comps = vec![Series::zero(n, trunc); n];
        let mut labels = Vec::with_capacity(child_ps.len());
        let one = Series::constant(n, trunc, int(1));
        self.contract(&child_ps, &mut labels, one, &mut comps);
        let p = SeriesVector::new(comps).expect("components share the shape of H");
        self.p.insert(tree.encoding().to_string(), p.clone());
        p
    }

    fn contract(&mut self, child_ps: &[SeriesVector], labels: &mut Vec<usize>, prod: Series, comps: &mut [Series]) {
        let c = labels.len();
        if c == child_ps.len() {
            let mut key = labels.clone();
            key.sort_unstable();
            for (i, slot) in comps.iter_mut().enumerate() {
                let d = self.derivative(i, &key);
                if !d.is_zero() {
                    *slot += &(&d * &prod);
                }
            }
            return;
        }
        for j in 0..self.nvars() {
            let pj = &child_ps[c].components()[j];
            if pj.is_zero() {
                continue;
            }
            let next = &prod * pj;
            if next.is_zero() {
                continue;
            }
            labels.push(j);
            self.contract(child_ps, labels, next, comps);
            labels.pop();
        }
    }

    /// `𝒫_T = P_T / α_T`.
    pub fn p_script(&mut self, tree: &RootedTree) -> SeriesVector {
        let alpha: Rational = from_biguint(&tree.aut_size());
        self.p_tree(tree).scale(&alpha.recip())
    }

    /// `D_T q = Σ_i P_{T,i} ∂_i q`.
    pub fn d_apply(&mut self, tree: &RootedTree, q: &Series) -> Result<Series> {
        let p = self.p_tree(tree);
        apply_field(&p, q)
    }

    /// `𝒟_T q = Σ_i 𝒫_{T,i} ∂_i q`.
    pub fn d_script_apply(&mut self, tree: &RootedTree, q: &Series) -> Result<Series> {
        let p = self.p_script(tree);
        apply_field(&p, q)
    }

    /// `𝒟_T` applied to each component.
    pub fn d_script_apply_vector(&mut self, tree: &RootedTree, q: &SeriesVector) -> Result<SeriesVector> {
        let p = self.p_script(tree);
        let comps = q
            .components()
            .iter()
            .map(|c| apply_field(&p, c))
            .collect::<Result<Vec<_>>>()?;
        SeriesVector::new(comps)
    }
}

fn apply_field(p: &SeriesVector, q: &Series) -> Result<Series> {
    if q.nvars() != p.nvars() || q.trunc() != p.trunc() {
        return Err(Error::Dimension(format!(
            "tree operator in {} variables at order {} applied to a series in {} variables at order {}",
            p.nvars(),
            p.trunc(),
            q.nvars(),
            q.trunc()
        )));
    }
    let mut out = Series::zero(q.nvars(), q.trunc());
    for (i, pi) in p.components().iter().enumerate() {
        let dq = q.partial(i);
        if !pi.is_zero() && !dq.is_zero() {
            out += &(pi * &dq);
        }
    }
    Ok(out)
}

/// `P_T(H)`.
pub fn p_tree(tree: &RootedTree, h: &SeriesVector) -> SeriesVector {
    TreeSeries::new(h).p_tree(tree)
}

/// `𝒫_T(H) = P_T(H) / α_T`.
pub fn p_script(tree: &RootedTree, h: &SeriesVector) -> SeriesVector {
    TreeSeries::new(h).p_script(tree)
}

/// `D_T q` for the system `H`.
pub fn d_tree_apply(tree: &RootedTree, h: &SeriesVector, q: &Series) -> Result<Series> {
    TreeSeries::new(h).d_apply(tree, q)
}

/// `𝒟_T q` for the system `H`.
pub fn d_script_apply(tree: &RootedTree, h: &SeriesVector, q: &Series) -> Result<Series> {
    TreeSeries::new(h).d_script_apply(tree, q)
}
