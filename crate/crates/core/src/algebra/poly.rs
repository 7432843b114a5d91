//! Dense univariate polynomials in `t` over ℚ.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{int, Coeff, RatPoly2, Rational};
use crate::{Error, Result};

/// A polynomial `Σ c_k t^k` with rational coefficients.
///
/// Coefficients are stored in ascending order; the vector is empty for the
/// zero polynomial and otherwise ends in a nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = RatPoly { coeffs };
        p.normalize();
        p
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(int(1), 1)
    }

    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `p(t + c)`.
    pub fn shift(&self, c: &Rational) -> Self {
        let lin = RatPoly::from_coeffs(vec![c.clone(), int(1)]);
        let mut acc = RatPoly::zero();
        for k in self.coeffs.iter().rev() {
            acc = acc * &lin;
            acc += &RatPoly::constant(k.clone());
        }
        acc
    }

    /// Forward difference `Δp(t) = p(t + 1) − p(t)`.
    pub fn delta(&self) -> Self {
        self.shift(&int(1)) - self.clone()
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * int(k as i64))
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// The bivariate polynomial `p(t + s)`.
    pub fn shift_symbolic(&self) -> RatPoly2 {
        super::eval_poly_in(self, &(RatPoly2::t() + RatPoly2::s()))
    }

    /// Exact Lagrange interpolation through `(x_i, y_i)`; the `x_i` must be
    /// pairwise distinct.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Result<Self> {
        let mut acc = RatPoly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = RatPoly::constant(yi.clone());
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let denom = xi - xj;
                if denom.is_zero() {
                    return Err(Error::Domain(format!("repeated interpolation node {xi}")));
                }
                let factor = RatPoly::from_coeffs(vec![-xj.clone() / &denom, denom.recip()]);
                basis = basis * &factor;
            }
            acc += &basis;
        }
        Ok(acc)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Zero for RatPoly {
    fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for RatPoly {
    fn one() -> Self {
        RatPoly::constant(int(1))
    }
}

impl<'a> AddAssign<&'a RatPoly> for RatPoly {
    fn add_assign(&mut self, rhs: &'a RatPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.normalize();
    }
}

impl<'a> SubAssign<&'a RatPoly> for RatPoly {
    fn sub_assign(&mut self, rhs: &'a RatPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        self.normalize();
    }
}

impl Add for RatPoly {
    type Output = RatPoly;
    fn add(mut self, rhs: RatPoly) -> RatPoly {
        self += &rhs;
        self
    }
}

impl Sub for RatPoly {
    type Output = RatPoly;
    fn sub(mut self, rhs: RatPoly) -> RatPoly {
        self -= &rhs;
        self
    }
}

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a RatPoly> for RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &'a RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(out)
    }
}

impl Mul for RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: RatPoly) -> RatPoly {
        self * &rhs
    }
}

impl Coeff for RatPoly {
    fn from_rational(r: &Rational) -> Self {
        RatPoly::constant(r.clone())
    }

    fn scale(&self, r: &Rational) -> Self {
        RatPoly::from_coeffs(self.coeffs.iter().map(|c| c * r).collect())
    }
}
