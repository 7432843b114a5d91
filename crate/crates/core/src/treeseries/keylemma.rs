//! Randomized check of the grafting identity behind the tree expansions.
//!
//! Fix a tree `S`, a length `r ≥ 1` and a vertex count `m`. Attach a constant
//! `Y^{(i)}_T` to every slot `i = 1..r` and tree `T`. Applying the operators
//! `Y^{(1)}_{T₁}𝒟_{T₁} ⋯ Y^{(r)}_{T_r}𝒟_{T_r}` to `𝒫_S` and summing over all
//! tuples with `v(T₁) + ⋯ + v(T_r) + v(S) = m` gives the same series as
//! summing, over trees `T` with `m` vertices and descending sequences of `r`
//! edges whose root strip piece is `S`, the product of `Y^{(i)}` over the
//! other pieces times `𝒫_T`. The constants are drawn from a seeded generator.

use std::collections::HashMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::TreeSeries;
use crate::algebra::{int, Rational, SeriesVector};
use crate::trees::{enumerate_trees, trees_up_to, RootedTree, TreeWithIds};

/// Values for the constants `Y^{(slot)}_T`.
#[derive(Clone, Debug, Default)]
pub struct YValues {
    values: HashMap<(usize, String), Rational>,
}

impl YValues {
    pub fn set(&mut self, slot: usize, tree: &RootedTree, value: Rational) {
        self.values.insert((slot, tree.encoding().to_string()), value);
    }

    /// Unset entries read as zero.
    pub fn get(&self, slot: usize, tree: &RootedTree) -> Rational {
        self.values
            .get(&(slot, tree.encoding().to_string()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

/// Draws `Y^{(i)}_T` for slots `1..=slots` and all trees with at most
/// `max_vertices` vertices: numerators in `[−9, 9]`, denominators in `{1, 2, 3}`.
pub fn random_y_values(max_vertices: usize, slots: usize, seed: u64) -> YValues {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trees = trees_up_to(max_vertices);
    let mut out = YValues::default();
    for slot in 1..=slots {
        for tree in &trees {
            let num = rng.gen_range(-9i64..=9);
            let den = rng.gen_range(1i64..=3);
            out.set(slot, tree, int(num) / int(den));
        }
    }
    out
}

/// Both sides of one instance.
#[derive(Clone, Debug)]
pub struct KeyLemmaCase {
    pub m: usize,
    pub r: usize,
    pub base: RootedTree,
    pub seed: u64,
    pub lhs: SeriesVector,
    pub rhs: SeriesVector,
}

impl KeyLemmaCase {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Evaluates both sides for the given constants.
pub fn key_lemma_sides(
    ts: &mut TreeSeries,
    m: usize,
    r: usize,
    base: &RootedTree,
    y: &YValues,
) -> (SeriesVector, SeriesVector) {
    let n = ts.system().nvars();
    let trunc = ts.system().trunc();
    let zero = SeriesVector::zero(n, trunc);
    if m < base.size() + r {
        return (zero.clone(), zero);
    }
    let budget = m - base.size();
    let small = trees_up_to(budget);

    // level[b] = sum over tuples (T_j, …, T_r) with b vertices in total of the
    // operator product applied to 𝒫_S, for the current slot j.
    let mut level: Vec<SeriesVector> = vec![zero.clone(); budget + 1];
    level[0] = ts.p_script(base);
    for slot in (1..=r).rev() {
        let mut next = vec![zero.clone(); budget + 1];
        for (b, slot_sum) in next.iter_mut().enumerate() {
            for tree in small.iter().filter(|t| t.size() <= b) {
                let inner = &level[b - tree.size()];
                let coeff = y.get(slot, tree);
                if inner.is_zero() || coeff.is_zero() {
                    continue;
                }
                let applied = ts
                    .d_script_apply_vector(tree, inner)
                    .expect("all series share the shape of H");
                *slot_sum += &applied.scale(&coeff);
            }
        }
        level = next;
    }
    let lhs = level.swap_remove(budget);

    let mut rhs = zero;
    for tree in enumerate_trees(m) {
        let mut weight = Rational::zero();
        TreeWithIds::new(&tree).walk_descending(r, |seq, pieces| {
            if seq.len() != r || pieces[r] != *base {
                return;
            }
            let mut prod = int(1);
            for (i, piece) in pieces[..r].iter().enumerate() {
                prod *= y.get(i + 1, piece);
            }
            weight += prod;
        });
        if !weight.is_zero() {
            rhs += &ts.p_script(&tree).scale(&weight);
        }
    }
    (lhs, rhs)
}

/// One seeded instance with all of its data.
pub fn key_lemma_case(m: usize, r: usize, base: &RootedTree, h: &SeriesVector, seed: u64) -> KeyLemmaCase {
    let y = random_y_values(m.max(1), r, seed);
    let mut ts = TreeSeries::new(h);
    let (lhs, rhs) = key_lemma_sides(&mut ts, m, r, base, &y);
    KeyLemmaCase {
        m,
        r,
        base: base.clone(),
        seed,
        lhs,
        rhs,
    }
}

/// Whether the identity holds for one seeded draw of the constants.
pub fn verify_key_lemma(m: usize, r: usize, base: &RootedTree, h: &SeriesVector, seed: u64) -> bool {
    key_lemma_case(m, r, base, h, seed).holds()
}
