//! Exact scalar, polynomial and truncated power-series arithmetic.
//!
//! Coefficients live in a [`Coeff`] ring: the rationals, `ℚ[t]` ([`RatPoly`])
//! or `ℚ[t, s]` ([`RatPoly2`]). A [`Series`] is a sparse truncated power
//! series in `n` variables over any such ring.

mod bernoulli;
mod derivation;
mod diff;
mod poly;
mod poly2;
mod series;
pub mod univariate;

use std::fmt;
use std::ops::{AddAssign, Mul, Neg, SubAssign};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

pub use bernoulli::{bernoulli_number, bernoulli_polynomial};
pub use derivation::{exp_derivation, Derivation};
pub use diff::{binomial_poly, delta_inverse};
pub use poly::RatPoly;
pub use poly2::RatPoly2;
pub use series::{Exponents, Series, SeriesVector};

use crate::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// A commutative ℚ-algebra usable as a series coefficient.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_rational(r: &Rational) -> Self;

    /// Multiplication by a rational scalar.
    fn scale(&self, r: &Rational) -> Self;
}

impl Coeff for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

/// `n / d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_biguint(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Evaluates `p` at `tau` inside the ring `C` by Horner's rule.
///
/// With `C = RatPoly` and `tau = t` this is the identity; with `C = RatPoly2`
/// and `tau = t + s` it is the substitution `p(t + s)`.
pub fn eval_poly_in<C: Coeff>(p: &RatPoly, tau: &C) -> C {
    let mut acc = C::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc * tau;
        acc += &C::from_rational(c);
    }
    acc
}
