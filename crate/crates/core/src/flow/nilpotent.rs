//! Vanishing of height-weighted tree sums when the Jacobian of `H` is nilpotent.
//!
//! For homogeneous `H` with `(JH)^k = 0`, the sum `Σ_{T∈𝕋_s} h_{T,m} 𝒫_T`
//! vanishes for every `m ≥ k` and every size `s`, where `h_{T,m}` counts the
//! vertices at height `m`. For chains this reads `𝒫_{C_m} = (JH)^{m−1}·H = 0`.

use crate::algebra::{int, Series, SeriesVector};
use crate::trees::{enumerate_trees, RootedTree};
use crate::treeseries::TreeSeries;
use crate::{Error, Result};

/// `JH[i][j] = ∂_j H_i`.
pub fn jacobian(h: &SeriesVector) -> Vec<Vec<Series>> {
    h.components()
        .iter()
        .map(|hi| (0..h.nvars()).map(|j| hi.partial(j)).collect())
        .collect()
}

fn mat_mul(a: &[Vec<Series>], b: &[Vec<Series>]) -> Vec<Vec<Series>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = Series::zero(a[i][j].nvars(), a[i][j].trunc());
                    for (l, b_row) in b.iter().enumerate() {
                        if !a[i][l].is_zero() && !b_row[j].is_zero() {
                            acc += &(&a[i][l] * &b_row[j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `(JH)^k` for `k ≥ 1`.
pub fn jacobian_power(h: &SeriesVector, k: usize) -> Vec<Vec<Series>> {
    let j = jacobian(h);
    (1..k).fold(j.clone(), |acc, _| mat_mul(&acc, &j))
}

fn mat_vec(a: &[Vec<Series>], v: &SeriesVector) -> SeriesVector {
    let comps = a
        .iter()
        .map(|row| {
            let mut acc = Series::zero(v.nvars(), v.trunc());
            for (aij, vj) in row.iter().zip(v.components()) {
                if !aij.is_zero() && !vj.is_zero() {
                    acc += &(aij * vj);
                }
            }
            acc
        })
        .collect();
    SeriesVector::new(comps).expect("square matrix times vector")
}

/// The common degree of all terms of `H`, or `None` for `H = 0`.
fn homogeneous_degree(h: &SeriesVector) -> Result<Option<usize>> {
    let lo = h.order();
    let hi = h.components().iter().filter_map(Series::max_degree).max();
    match (lo, hi) {
        (None, _) => Ok(None),
        (Some(d), Some(e)) if d == e && d >= 2 => Ok(Some(d)),
        _ => Err(Error::Domain("system must be homogeneous of degree 2 or more".into())),
    }
}

/// `Σ_{T∈𝕋_size} h_{T,height} 𝒫_T`.
pub fn height_weighted_sum(ts: &mut TreeSeries, height: usize, size: usize) -> SeriesVector {
    let h = ts.system();
    let mut out = SeriesVector::zero(h.nvars(), h.trunc());
    for tree in enumerate_trees(size) {
        let count = tree.height_census(height);
        if count > 0 {
            out += &ts.p_script(&tree).scale(&int(count as i64));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct HeightSum {
    pub height: usize,
    pub size: usize,
    pub sum: SeriesVector,
}

impl HeightSum {
    pub fn vanishes(&self) -> bool {
        self.sum.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct ChainCheck {
    pub length: usize,
    /// `𝒫_{C_m}` equals `(JH)^{m−1}·H`.
    pub matrix_form: bool,
    pub vanishes: bool,
}

#[derive(Clone, Debug)]
pub struct NilpotentReport {
    pub k: usize,
    pub jacobian_nilpotent: bool,
    pub sums: Vec<HeightSum>,
    pub chains: Vec<ChainCheck>,
}

impl NilpotentReport {
    pub fn all_pass(&self) -> bool {
        self.jacobian_nilpotent
            && self.sums.iter().all(HeightSum::vanishes)
            && self.chains.iter().all(|c| c.matrix_form && c.vanishes)
    }
}

/// Checks `(JH)^k = 0`, then evaluates the height sums for heights
/// `k..max_size` and sizes up to `max_size`, and the chains `C_k..C_{max_size}`.
///
/// `H` is re-read as an exact polynomial at an order high enough that no
/// tree series is cut off. A Jacobian that is not nilpotent is reported, not
/// rejected.
pub fn nilpotent_vanishing(h: &SeriesVector, k: usize, max_size: usize) -> Result<NilpotentReport> {
    if k == 0 {
        return Err(Error::Domain("nilpotency index must be positive".into()));
    }
    let Some(d) = homogeneous_degree(h)? else {
        return Ok(NilpotentReport {
            k,
            jacobian_nilpotent: true,
            sums: Vec::new(),
            chains: Vec::new(),
        });
    };
    let trunc = ((d - 1) * max_size + 1).max(k * (d - 1));
    let h = h.with_trunc(trunc);
    let jacobian_nilpotent = jacobian_power(&h, k).iter().all(|row| row.iter().all(Series::is_zero));

    let mut ts = TreeSeries::new(&h);
    let mut sums = Vec::new();
    for height in k..max_size {
        for size in height + 1..=max_size {
            let sum = height_weighted_sum(&mut ts, height, size);
            sums.push(HeightSum { height, size, sum });
        }
    }
    let mut chains = Vec::new();
    for length in k.max(2)..=max_size {
        let p = ts.p_script(&RootedTree::chain(length));
        let matrix = mat_vec(&jacobian_power(&h, length - 1), &h);
        chains.push(ChainCheck {
            length,
            matrix_form: p == matrix,
            vanishes: p.is_zero(),
        });
    }
    Ok(NilpotentReport {
        k,
        jacobian_nilpotent,
        sums,
        chains,
    })
}
