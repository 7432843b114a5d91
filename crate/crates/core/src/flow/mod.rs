//! D-Log, formal flow and formal inverse of maps `F = z + H`.
//!
//! Every quantity here has a direct route (solving, exponentiating or
//! composing series) and a tree-expansion route through `𝒫_T`; the two are
//! compared by the verification suites.

mod nilpotent;

use num_traits::Zero;

use crate::algebra::{eval_poly_in, exp_derivation, int, Coeff, Derivation, RatPoly, Rational, Series, SeriesVector};
use crate::coeffs::CoeffTables;
use crate::trees::{trees_up_to, RootedTree, TreeWithIds};
use crate::treeseries::TreeSeries;
use crate::{Error, Result};

pub use nilpotent::{
    height_weighted_sum, jacobian, jacobian_power, nilpotent_vanishing, ChainCheck, HeightSum, NilpotentReport,
};

/// A map `F = z + H` with `H` of order at least 2.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalMap {
    f: SeriesVector,
    h: SeriesVector,
}

impl FormalMap {
    /// Validates that `F` has no constant term and identity linear part.
    pub fn new(f: SeriesVector) -> Result<Self> {
        let z = SeriesVector::identity(f.len(), f.trunc());
        let h = f.checked_sub(&z)?;
        if let Some(d) = h.order() {
            if d < 2 {
                return Err(Error::Domain(format!(
                    "map is not the identity plus terms of degree 2 and higher (found a degree-{d} term in F - z)"
                )));
            }
        }
        Ok(FormalMap { f, h })
    }

    /// `F = z + H`.
    pub fn from_higher(h: SeriesVector) -> Result<Self> {
        let z = SeriesVector::identity(h.len(), h.trunc());
        Self::new(z.checked_add(&h)?)
    }

    pub fn map(&self) -> &SeriesVector {
        &self.f
    }

    /// `H = F − z`.
    pub fn higher(&self) -> &SeriesVector {
        &self.h
    }

    pub fn nvars(&self) -> usize {
        self.f.len()
    }

    pub fn trunc(&self) -> usize {
        self.f.trunc()
    }

    fn identity(&self) -> SeriesVector {
        SeriesVector::identity(self.nvars(), self.trunc())
    }

    /// Trees that can contribute below the truncation order: `𝒫_T` starts in
    /// degree `(d−1)·v(T) + 1` when `H` starts in degree `d`.
    pub fn contributing_trees(&self) -> Vec<RootedTree> {
        match self.h.order() {
            None => Vec::new(),
            Some(d) => {
                let max_v = (self.trunc().saturating_sub(1)) / (d - 1);
                trees_up_to(max_v)
            }
        }
    }
}

/// The D-Log `a` of a map: the field with `exp(a·D)·z = F`.
#[derive(Clone, Debug, PartialEq)]
pub struct DLog {
    pub a: SeriesVector,
}

impl DLog {
    pub fn derivation(&self) -> Derivation {
        Derivation::new(self.a.clone())
    }
}

/// Fixed-point solve `a ← a + (F − exp(a·D)·z)` starting from `a = H`.
///
/// Each correction starts one degree higher than the last, so at most `N`
/// rounds are needed at truncation order `N`.
pub fn dlog(map: &FormalMap) -> Result<DLog> {
    let z = map.identity();
    let mut a = map.higher().clone();
    for _ in 0..=map.trunc() {
        let image = exp_derivation(&Derivation::new(a.clone()), &int(1), &z)?;
        let residual = map.map().checked_sub(&image)?;
        if residual.is_zero() {
            return Ok(DLog { a });
        }
        a += &residual;
    }
    Err(Error::Domain(
        "D-Log iteration did not settle within the truncation order".into(),
    ))
}

/// `Σ_T φ_T 𝒫_T` over the trees that reach below the truncation order.
pub fn dlog_tree_sum(map: &FormalMap, tables: &CoeffTables) -> SeriesVector {
    let mut ts = TreeSeries::new(map.higher());
    let mut out = SeriesVector::zero(map.nvars(), map.trunc());
    for tree in map.contributing_trees() {
        let phi = tables.phi(&tree);
        if !phi.is_zero() {
            out += &ts.p_script(&tree).scale(&phi);
        }
    }
    out
}

/// `F_τ = exp(τA)·z` for `τ` in any coefficient ring (a rational, `t`, `t + s`).
pub fn flow<C: Coeff>(map: &FormalMap, tau: &C) -> Result<SeriesVector<C>> {
    let a = dlog(map)?.a.map_coeffs(C::from_rational);
    let z = SeriesVector::<C>::identity(map.nvars(), map.trunc());
    exp_derivation(&Derivation::new(a), tau, &z)
}

/// `F_τ` at a rational time.
pub fn flow_at(map: &FormalMap, tau: &Rational) -> Result<SeriesVector> {
    flow(map, tau)
}

/// `F_t` with polynomial coefficients in the time `t`.
pub fn flow_symbolic(map: &FormalMap) -> Result<SeriesVector<RatPoly>> {
    flow(map, &RatPoly::t())
}

/// `z + Σ_T ψ_T(τ) 𝒫_T`.
pub fn flow_tree_sum<C: Coeff>(map: &FormalMap, tables: &CoeffTables, tau: &C) -> SeriesVector<C> {
    let mut ts = TreeSeries::new(map.higher());
    let mut out = SeriesVector::<C>::identity(map.nvars(), map.trunc());
    for tree in map.contributing_trees() {
        let weight = eval_poly_in(&tables.psi(&tree), tau);
        if !weight.is_zero() {
            out += &ts.p_script(&tree).map_coeffs(C::from_rational).mul_coeff(&weight);
        }
    }
    out
}

/// `F⁻¹ = z + Σ_T (−1)^{v(T)} 𝒫_T`.
pub fn inverse_tree(map: &FormalMap) -> SeriesVector {
    let mut ts = TreeSeries::new(map.higher());
    let mut out = map.identity();
    for tree in map.contributing_trees() {
        let p = ts.p_script(&tree);
        if tree.size() % 2 == 0 {
            out += &p;
        } else {
            out -= &p;
        }
    }
    out
}

/// Solves `G(F) = z` degree by degree: `G ← G − (G(F) − z)`.
pub fn inverse_solver(map: &FormalMap) -> Result<SeriesVector> {
    let z = map.identity();
    let mut g = z.clone();
    for _ in 0..=map.trunc() {
        let err = g.compose(map.map())?.checked_sub(&z)?;
        if err.is_zero() {
            return Ok(g);
        }
        g -= &err;
    }
    Err(Error::Domain(
        "inverse iteration did not settle within the truncation order".into(),
    ))
}

/// Both sides of `exp(τA)·𝒫_S = 𝒫_S + Σ_T (Σ_{T′<T, T′≅S} ψ_{T∖T′}(τ)) 𝒫_T`.
///
/// `None` stands for the empty tree, with `𝒫_∅ = z`; then the right side is
/// the tree expansion of the flow.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpOnTree<C: Coeff = Rational> {
    pub lhs: SeriesVector<C>,
    pub rhs: SeriesVector<C>,
}

impl<C: Coeff> ExpOnTree<C> {
    pub fn equal(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn exp_on_ptree<C: Coeff>(
    map: &FormalMap,
    tables: &CoeffTables,
    base: Option<&RootedTree>,
    tau: &C,
) -> Result<ExpOnTree<C>> {
    let mut ts = TreeSeries::new(map.higher());
    let start: SeriesVector = match base {
        Some(s) => ts.p_script(s),
        None => map.identity(),
    };
    let start = start.map_coeffs(C::from_rational);
    let a = dlog(map)?.a.map_coeffs(C::from_rational);
    let lhs = exp_derivation(&Derivation::new(a), tau, &start)?;

    let base_size = base.map_or(0, RootedTree::size);
    let mut rhs = start;
    for tree in map.contributing_trees() {
        if tree.size() <= base_size {
            continue;
        }
        let mut weight = C::zero();
        match base {
            None => weight = eval_poly_in(&tables.psi(&tree), tau),
            Some(s) => {
                for sub in TreeWithIds::new(&tree).rooted_subtrees() {
                    if sub.subtree == *s {
                        weight += &eval_poly_in(&tables.psi_forest(&sub.complement), tau);
                    }
                }
            }
        }
        if !weight.is_zero() {
            rhs += &ts.p_script(&tree).map_coeffs(C::from_rational).mul_coeff(&weight);
        }
    }
    Ok(ExpOnTree { lhs, rhs })
}

/// Lifts a series over `ℚ[t]` to `ℚ[t, s]` by renaming `t` to `s`.
pub fn rename_t_to_s(v: &SeriesVector<RatPoly>) -> SeriesVector<crate::algebra::RatPoly2> {
    v.map_coeffs(crate::algebra::RatPoly2::from_s)
}

/// Convenience for tests and the CLI: the one-variable map `z + z²`.
pub fn example_quadratic(trunc: usize) -> FormalMap {
    let f =
        Series::from_terms(1, trunc, [(vec![1], int(1)), (vec![2], int(1))]).expect("exponent vectors have length 1");
    FormalMap::new(SeriesVector::new(vec![f]).expect("single component")).expect("identity plus z^2")
}
