//! Sparse bivariate polynomials in `t` and `s` over ℚ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::{int, Coeff, RatPoly, Rational};

/// `Σ c_{ij} t^i s^j`, keyed by `(i, j)`. No stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatPoly2 {
    terms: BTreeMap<(usize, usize), Rational>,
}

impl RatPoly2 {
    pub fn monomial(c: Rational, t_pow: usize, s_pow: usize) -> Self {
        let mut p = RatPoly2::zero();
        p.add_term((t_pow, s_pow), c);
        p
    }

    pub fn t() -> Self {
        Self::monomial(int(1), 1, 0)
    }

    pub fn s() -> Self {
        Self::monomial(int(1), 0, 1)
    }

    /// Embeds `p(t)`.
    pub fn from_t(p: &RatPoly) -> Self {
        let mut out = RatPoly2::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_term((k, 0), c.clone());
        }
        out
    }

    /// Embeds `p(s)`.
    pub fn from_s(p: &RatPoly) -> Self {
        let mut out = RatPoly2::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_term((0, k), c.clone());
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t_pow: usize, s_pow: usize) -> Rational {
        self.terms.get(&(t_pow, s_pow)).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, key: (usize, usize), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }
}

impl fmt::Display for RatPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(i, j), c)| format!("({c})*t^{i}*s^{j}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Zero for RatPoly2 {
    fn zero() -> Self {
        RatPoly2 { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for RatPoly2 {
    fn one() -> Self {
        Self::monomial(int(1), 0, 0)
    }
}

impl<'a> AddAssign<&'a RatPoly2> for RatPoly2 {
    fn add_assign(&mut self, rhs: &'a RatPoly2) {
        for (&k, c) in &rhs.terms {
            self.add_term(k, c.clone());
        }
    }
}

impl<'a> SubAssign<&'a RatPoly2> for RatPoly2 {
    fn sub_assign(&mut self, rhs: &'a RatPoly2) {
        for (&k, c) in &rhs.terms {
            self.add_term(k, -c.clone());
        }
    }
}

impl Add for RatPoly2 {
    type Output = RatPoly2;
    fn add(mut self, rhs: RatPoly2) -> RatPoly2 {
        self += &rhs;
        self
    }
}

impl Sub for RatPoly2 {
    type Output = RatPoly2;
    fn sub(mut self, rhs: RatPoly2) -> RatPoly2 {
        self -= &rhs;
        self
    }
}

impl Neg for RatPoly2 {
    type Output = RatPoly2;
    fn neg(self) -> RatPoly2 {
        RatPoly2 {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a RatPoly2> for RatPoly2 {
    type Output = RatPoly2;
    fn mul(self, rhs: &'a RatPoly2) -> RatPoly2 {
        let mut out = RatPoly2::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term((i + k, j + l), a * b);
            }
        }
        out
    }
}

impl Mul for RatPoly2 {
    type Output = RatPoly2;
    fn mul(self, rhs: RatPoly2) -> RatPoly2 {
        self * &rhs
    }
}

impl Coeff for RatPoly2 {
    fn from_rational(r: &Rational) -> Self {
        Self::monomial(r.clone(), 0, 0)
    }

    fn scale(&self, r: &Rational) -> Self {
        let mut out = RatPoly2::zero();
        for (&k, c) in &self.terms {
            out.add_term(k, c * r);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_expands_binomially() {
        // (t + s)^2 = t^2 + 2ts + s^2
        let sq = RatPoly::monomial(int(1), 2).shift_symbolic();
        assert_eq!(sq.coeff(2, 0), int(1));
        assert_eq!(sq.coeff(1, 1), int(2));
        assert_eq!(sq.coeff(0, 2), int(1));
        assert_eq!(sq.terms().count(), 3);
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = RatPoly2::t() + RatPoly2::s();
        let b = a.clone() - RatPoly2::s();
        assert_eq!(b, RatPoly2::t());
        assert!((a.clone() - a).is_zero());
    }
}
