//! Exact tree calculus for formal maps `F = z + H`.
//!
//! The crate computes, with exact rational arithmetic, the tree coefficients
//! `φ_T` of the D-Log of `F`, the flow polynomials `ψ_T(t)` of the formal flow
//! `F_t = exp(tA)·z`, and the tree formula for the formal inverse. Every
//! coefficient can be obtained by more than one route, and the [`verify`]
//! module cross-checks the routes against each other.
//!
//! Module map:
//!
//! * [`algebra`]: rationals, polynomials in `t` (and `t, s`), truncated
//!   multivariate power series, derivations and their exponentials,
//!   Bernoulli numbers and polynomials.
//! * [`trees`]: canonical rooted trees, enumeration, automorphism counts,
//!   and edge/vertex surgery.
//! * [`coeffs`]: the `φ_T` and `ψ_T(t)` tables and the identities they obey.
//! * [`treeseries`]: the tree-indexed series `P_T`, `𝒫_T` and operators `D_T`.
//! * [`flow`]: D-Log, formal flow, formal inverse, nilpotent-Jacobian checks.
//! * [`verify`]: reproducible verification suites with verdict reports.
//! * [`io`]: the JSON wire format for series.

pub mod algebra;
pub mod coeffs;
mod error;
pub mod flow;
pub mod io;
pub mod trees;
pub mod treeseries;
pub mod verify;

pub use algebra::{Coeff, RatPoly, RatPoly2, Rational, Series, SeriesVector};
pub use coeffs::CoeffTables;
pub use error::{Error, Result};
pub use flow::FormalMap;
pub use trees::{Forest, RootedTree, TreeWithIds};
