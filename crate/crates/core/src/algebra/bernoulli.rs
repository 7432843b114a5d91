//! Bernoulli numbers and polynomials from their generating functions.

use super::univariate::{div, exp_scaled, expm1_over_x};
use super::{factorial, from_biguint, RatPoly, Rational};

/// `b_n` from `x / (e^x − 1) = Σ b_n x^n / n!` (so `b_1 = −1/2`).
pub fn bernoulli_number(n: usize) -> Rational {
    let gf =
        div(&[Rational::from_integer(1.into())], &expm1_over_x(n + 1), n + 1).expect("(e^x - 1)/x has constant term 1");
    &gf[n] * from_biguint(&factorial(n))
}

/// `B_n(t)` from `x e^{tx} / (e^x − 1) = Σ B_n(t) x^n / n!`.
pub fn bernoulli_polynomial(n: usize) -> RatPoly {
    let len = n + 1;
    let etx = exp_scaled(&RatPoly::t(), len);
    let gf = div(&etx, &expm1_over_x(len), len).expect("(e^x - 1)/x has constant term 1");
    gf[n].clone() * &RatPoly::constant(from_biguint(&factorial(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn small_bernoulli_numbers() {
        assert_eq!(bernoulli_number(0), int(1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(3), int(0));
        assert_eq!(bernoulli_number(4), rat(-1, 30));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
    }

    #[test]
    fn small_bernoulli_polynomials() {
        assert_eq!(bernoulli_polynomial(0), RatPoly::constant(int(1)));
        assert_eq!(bernoulli_polynomial(1), RatPoly::from_coeffs(vec![rat(-1, 2), int(1)]));
        assert_eq!(
            bernoulli_polynomial(2),
            RatPoly::from_coeffs(vec![rat(1, 6), int(-1), int(1)])
        );
    }

    #[test]
    fn difference_and_derivative_laws() {
        for n in 1..=12usize {
            let b = bernoulli_polynomial(n);
            assert_eq!(b.delta(), RatPoly::monomial(int(n as i64), n - 1), "n = {n}");
            assert_eq!(b.eval(&int(0)), bernoulli_number(n));
            assert_eq!(
                bernoulli_polynomial(n + 1).derivative(),
                b.clone() * &RatPoly::constant(int(n as i64 + 1))
            );
        }
    }
}
