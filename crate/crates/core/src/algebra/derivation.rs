use super::{factorial, from_biguint, Coeff, Series, SeriesVector};
use crate::{Error, Result};

/// The vector field `A = a·D = Σ a_i ∂/∂z_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation<C = super::Rational> {
    a: SeriesVector<C>,
}

impl<C: Coeff> Derivation<C> {
    pub fn new(a: SeriesVector<C>) -> Self {
        Derivation { a }
    }

    pub fn coeffs(&self) -> &SeriesVector<C> {
        &self.a
    }

    /// `A·q = Σ a_i ∂_i q`.
    pub fn apply(&self, q: &Series<C>) -> Result<Series<C>> {
        if q.nvars() != self.a.len() || q.trunc() != self.a.trunc() {
            return Err(Error::Dimension(format!(
                "derivation in {} variables at order {} applied to a series in {} variables at order {}",
                self.a.len(),
                self.a.trunc(),
                q.nvars(),
                q.trunc()
            )));
        }
        let mut out = Series::zero(q.nvars(), q.trunc());
        for (i, ai) in self.a.components().iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let dq = q.partial(i);
            if !dq.is_zero() {
                out += &(ai * &dq);
            }
        }
        Ok(out)
    }

    pub fn apply_vector(&self, q: &SeriesVector<C>) -> Result<SeriesVector<C>> {
        let comps = q
            .components()
            .iter()
            .map(|c| self.apply(c))
            .collect::<Result<Vec<_>>>()?;
        SeriesVector::new(comps)
    }

    /// True when every coefficient has only terms of degree ≥ 2.
    pub fn raises_order(&self) -> bool {
        self.a.order().is_none_or(|d| d >= 2)
    }
}

/// `exp(τA)·Q = Σ_k τ^k A^k Q / k!`.
///
/// The sum stops at the first `k` with `A^k Q = 0` at the truncation order,
/// which happens by `k = trunc + 1` since each application raises the order.
/// `τ` may be a rational or a polynomial variable such as `t`.
pub fn exp_derivation<C: Coeff>(a: &Derivation<C>, tau: &C, q: &SeriesVector<C>) -> Result<SeriesVector<C>> {
    if !a.raises_order() {
        return Err(Error::Domain(
            "exp(A) needs a derivation whose coefficients only involve monomials of degree 2 and higher".into(),
        ));
    }
    a.coeffs().check_compatible(q)?;
    let mut out = q.clone();
    if tau.is_zero() {
        return Ok(out);
    }
    let mut term = q.clone();
    let mut tau_pow = C::one();
    let mut k = 0usize;
    loop {
        term = a.apply_vector(&term)?;
        if term.is_zero() {
            break;
        }
        k += 1;
        tau_pow = tau_pow * tau;
        let weight = tau_pow.scale(&from_biguint(&factorial(k)).recip());
        out += &term.mul_coeff(&weight);
    }
    Ok(out)
}
