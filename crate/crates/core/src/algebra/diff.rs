//! Finite-difference calculus in the binomial basis.

use num_traits::Zero;

use super::{int, Coeff, RatPoly, Rational};

/// `binom(t, k) = t(t−1)⋯(t−k+1)/k!`.
pub fn binomial_poly(k: usize) -> RatPoly {
    let mut p = RatPoly::constant(int(1));
    for j in 0..k {
        let step = RatPoly::from_coeffs(vec![int(-(j as i64)), int(1)]);
        p = (p * &step).scale(&Rational::new(1.into(), (j as i64 + 1).into()));
    }
    p
}

/// The antidifference `g` with `g(t+1) − g(t) = h(t)` and `g(0) = 0`.
///
/// Writes `h = Σ c_k binom(t, k)` with `c_k = Δ^k h(0)`, read off the forward
/// difference table of `h(0), …, h(deg h)`, and returns `Σ c_k binom(t, k+1)`.
pub fn delta_inverse(h: &RatPoly) -> RatPoly {
    let Some(deg) = h.degree() else {
        return RatPoly::zero();
    };
    let mut table: Vec<Rational> = (0..=deg).map(|x| h.eval(&int(x as i64))).collect();
    let mut g = RatPoly::zero();
    for k in 0..=deg {
        if !table[0].is_zero() {
            g += &binomial_poly(k + 1).scale(&table[0]);
        }
        for i in 0..table.len() - 1 {
            table[i] = &table[i + 1] - &table[i];
        }
        table.pop();
    }
    // Every binom(t, k+1) with k ≥ 0 vanishes at 0, so g(0) = 0 already.
    g
}
