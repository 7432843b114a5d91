//! Dense truncated power series in one variable `x`.
//!
//! A series is a `Vec<C>` of coefficients of `x^0, x^1, …`; every function
//! takes the number of coefficients `len` to keep. These back the generating
//! function checks and the Bernoulli expansions.

use num_traits::Zero;

use super::{factorial, from_biguint, int, Coeff, Rational};
use crate::{Error, Result};

fn coeff_or_zero<C: Coeff>(a: &[C], k: usize) -> C {
    a.get(k).cloned().unwrap_or_else(C::zero)
}

pub fn mul<C: Coeff>(a: &[C], b: &[C], len: usize) -> Vec<C> {
    let mut out = vec![C::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            out[i + j] += &(ai.clone() * bj);
        }
    }
    out
}

/// `a / b` where `b` has rational coefficients and `b(0) ≠ 0`.
pub fn div<C: Coeff>(a: &[C], b: &[Rational], len: usize) -> Result<Vec<C>> {
    let b0 = b
        .first()
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::Domain("series division by a series with zero constant term".into()))?;
    let inv = b0.recip();
    let mut out: Vec<C> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = coeff_or_zero(a, k);
        for j in 1..=k.min(b.len().saturating_sub(1)) {
            if !b[j].is_zero() {
                acc -= &out[k - j].scale(&b[j]);
            }
        }
        out.push(acc.scale(&inv));
    }
    Ok(out)
}

/// `e^{c x} = Σ c^k x^k / k!`.
pub fn exp_scaled<C: Coeff>(c: &C, len: usize) -> Vec<C> {
    let mut out = Vec::with_capacity(len);
    let mut pow = C::one();
    for k in 0..len {
        out.push(pow.scale(&from_biguint(&factorial(k)).recip()));
        pow = pow * c;
    }
    out
}

/// `(e^x − 1) / x = Σ x^k / (k+1)!`.
pub fn expm1_over_x(len: usize) -> Vec<Rational> {
    (0..len).map(|k| from_biguint(&factorial(k + 1)).recip()).collect()
}

/// `ln(1 + x) = Σ_{k≥1} (−1)^{k−1} x^k / k`.
pub fn log1p(len: usize) -> Vec<Rational> {
    (0..len)
        .map(|k| match k {
            0 => Rational::zero(),
            _ if k % 2 == 1 => int(1) / int(k as i64),
            _ => int(-1) / int(k as i64),
        })
        .collect()
}

/// `(1 + x)^τ = Σ binom(τ, k) x^k` for `τ` in any coefficient ring.
pub fn binomial_series<C: Coeff>(tau: &C, len: usize) -> Vec<C> {
    let mut out = Vec::with_capacity(len);
    let mut term = C::one();
    for k in 0..len {
        out.push(term.clone());
        let mut falling = tau.clone();
        falling -= &C::from_rational(&int(k as i64));
        term = (term * &falling).scale(&int(k as i64 + 1).recip());
    }
    out
}
