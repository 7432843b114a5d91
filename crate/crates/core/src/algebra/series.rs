//! Sparse truncated power series in `n` variables.
//!
//! A [`Series`] stores the terms of total degree `≤ trunc`; everything above
//! the truncation order is discarded by every constructor and operation.
//! Inputs are treated as exact up to `trunc`, so a product or a composition
//! is exact through `trunc` as long as its factors are.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::{int, Coeff, Rational};
use crate::{Error, Result};

/// Exponent vector of a monomial; its length is the number of variables.
pub type Exponents = Vec<u32>;

fn degree(exps: &[u32]) -> usize {
    exps.iter().map(|&e| e as usize).sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series<C = Rational> {
    nvars: usize,
    trunc: usize,
    terms: BTreeMap<Exponents, C>,
}

impl<C: Coeff> Series<C> {
    pub fn zero(nvars: usize, trunc: usize) -> Self {
        Series {
            nvars,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, trunc: usize, c: C) -> Self {
        Self::monomial(nvars, trunc, &vec![0; nvars], c)
    }

    /// The coordinate `z_{i+1}` (variables are indexed from zero).
    pub fn var(nvars: usize, trunc: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::monomial(nvars, trunc, &exps, C::one())
    }

    /// `c · z^exps`. Panics if `exps.len() != nvars`.
    pub fn monomial(nvars: usize, trunc: usize, exps: &[u32], c: C) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length must equal nvars");
        let mut s = Self::zero(nvars, trunc);
        s.add_term(exps.to_vec(), c);
        s
    }

    /// Builds a series from `(exponents, coefficient)` pairs, summing repeats
    /// and dropping zero coefficients and terms above `trunc`.
    pub fn from_terms<I>(nvars: usize, trunc: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, C)>,
    {
        let mut s = Self::zero(nvars, trunc);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::Dimension(format!(
                    "exponent vector {exps:?} has length {}, expected {nvars}",
                    exps.len()
                )));
            }
            s.add_term(exps, c);
        }
        Ok(s)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    /// Lowest total degree of a stored term; `None` for the zero series.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().map(|e| degree(e)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| degree(e)).max()
    }

    /// Adds `c · z^exps` in place, keeping the invariants.
    pub(crate) fn add_term(&mut self, exps: Exponents, c: C) {
        if c.is_zero() || degree(&exps) > self.trunc {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        Series {
            nvars: self.nvars,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| degree(e) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-truncates at `trunc`. Lowering drops terms; raising keeps the stored
    /// terms, i.e. treats the series as an exact polynomial.
    pub fn with_trunc(&self, trunc: usize) -> Self {
        Series {
            nvars: self.nvars,
            trunc,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| degree(e) <= trunc)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars || self.trunc != other.trunc {
            return Err(Error::Dimension(format!(
                "series over {} variables at order {} vs {} variables at order {}",
                self.nvars, self.trunc, other.nvars, other.trunc
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Product truncated at the shared order.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.nvars, self.trunc);
        for (ea, ca) in &self.terms {
            let da = degree(ea);
            for (eb, cb) in &other.terms {
                if da + degree(eb) > self.trunc {
                    continue;
                }
                let exps: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca.clone() * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map_terms(|c| c.scale(r))
    }

    pub fn mul_coeff(&self, k: &C) -> Self {
        self.map_terms(|c| c.clone() * k)
    }

    fn map_terms(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Self::zero(self.nvars, self.trunc);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Converts coefficients into another ring.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        let mut out = Series::zero(self.nvars, self.trunc);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// `∂/∂z_{i+1}`. Panics if `i >= nvars`.
    pub fn partial(&self, i: usize) -> Self {
        assert!(
            i < self.nvars,
            "variable index {i} out of range for {} variables",
            self.nvars
        );
        let mut out = Self::zero(self.nvars, self.trunc);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[i] -= 1;
            out.add_term(exps, c.scale(&int(e[i] as i64)));
        }
        out
    }

    /// Mixed partial derivative by the listed variable indices.
    pub fn partials(&self, vars: &[usize]) -> Self {
        vars.iter().fold(self.clone(), |acc, &i| acc.partial(i))
    }

    /// `g(F₁, …, F_n)` where `g = self` and `n = self.nvars`.
    ///
    /// Every component of `F` must have zero constant term. The result lives
    /// in `F`'s variables at order `min(self.trunc, F.trunc)`.
    pub fn compose(&self, f: &SeriesVector<C>) -> Result<Self> {
        if f.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "cannot substitute {} series into a series in {} variables",
                f.len(),
                self.nvars
            )));
        }
        for (i, fi) in f.components().iter().enumerate() {
            if fi.order() == Some(0) {
                return Err(Error::Domain(format!(
                    "component {} of the inner map has a nonzero constant term",
                    i + 1
                )));
            }
        }
        let trunc = self.trunc.min(f.trunc());
        let inner: Vec<Series<C>> = f.components().iter().map(|c| c.with_trunc(trunc)).collect();
        let nv = f.nvars();
        let mut powers: HashMap<(usize, u32), Series<C>> = HashMap::new();
        let mut out = Series::zero(nv, trunc);
        for (e, c) in &self.terms {
            if degree(e) > trunc {
                continue;
            }
            let mut term = Series::constant(nv, trunc, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let p = power_cached(&mut powers, &inner[i], i, k);
                term = &term * &p;
                if term.is_zero() {
                    break;
                }
            }
            out += &term;
        }
        Ok(out)
    }
}

fn power_cached<C: Coeff>(
    cache: &mut HashMap<(usize, u32), Series<C>>,
    base: &Series<C>,
    i: usize,
    k: u32,
) -> Series<C> {
    if let Some(p) = cache.get(&(i, k)) {
        return p.clone();
    }
    let p = if k == 1 {
        base.clone()
    } else {
        let prev = power_cached(cache, base, i, k - 1);
        &prev * base
    };
    cache.insert((i, k), p.clone());
    p
}

impl<C: Coeff + fmt::Display> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| b.cmp(a)));
        for (n, e) in keys.into_iter().enumerate() {
            let c = self.terms[e].to_string();
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| match k {
                    1 => format!("z{}", i + 1),
                    _ => format!("z{}^{k}", i + 1),
                })
                .collect();
            let mut coeff = if c.contains(' ') { format!("({c})") } else { c };
            if n > 0 {
                match coeff.strip_prefix('-') {
                    Some(mag) => {
                        write!(f, " - ")?;
                        coeff = mag.to_string();
                    }
                    None => write!(f, " + ")?,
                }
            }
            match (mono.is_empty(), coeff.as_str()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, "1") => write!(f, "{}", mono.join("*"))?,
                (false, _) => write!(f, "{coeff}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl<'a, C: Coeff> AddAssign<&'a Series<C>> for Series<C> {
    fn add_assign(&mut self, rhs: &'a Series<C>) {
        self.check_compatible(rhs).expect("series addition");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl<'a, C: Coeff> SubAssign<&'a Series<C>> for Series<C> {
    fn sub_assign(&mut self, rhs: &'a Series<C>) {
        self.check_compatible(rhs).expect("series subtraction");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c.clone());
        }
    }
}

impl<C: Coeff> Add for Series<C> {
    type Output = Series<C>;
    fn add(mut self, rhs: Series<C>) -> Series<C> {
        self += &rhs;
        self
    }
}

impl<C: Coeff> Sub for Series<C> {
    type Output = Series<C>;
    fn sub(mut self, rhs: Series<C>) -> Series<C> {
        self -= &rhs;
        self
    }
}

impl<C: Coeff> Neg for Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        self.map_terms(|c| -c.clone())
    }
}

impl<'a, C: Coeff> Mul<&'a Series<C>> for &'a Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: &'a Series<C>) -> Series<C> {
        self.checked_mul(rhs).expect("series multiplication")
    }
}

/// An `n`-tuple of series in `n` variables sharing one truncation order.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesVector<C = Rational> {
    components: Vec<Series<C>>,
}

impl<C: Coeff> SeriesVector<C> {
    pub fn new(components: Vec<Series<C>>) -> Result<Self> {
        let n = components.len();
        if let Some(first) = components.first() {
            for (i, c) in components.iter().enumerate() {
                if c.nvars() != n || c.trunc() != first.trunc() {
                    return Err(Error::Dimension(format!(
                        "component {} has {} variables at order {}; expected {n} variables at order {}",
                        i + 1,
                        c.nvars(),
                        c.trunc(),
                        first.trunc()
                    )));
                }
            }
        }
        Ok(SeriesVector { components })
    }

    /// The identity map `z = (z₁, …, z_n)`.
    pub fn identity(n: usize, trunc: usize) -> Self {
        SeriesVector {
            components: (0..n).map(|i| Series::var(n, trunc, i)).collect(),
        }
    }

    pub fn zero(n: usize, trunc: usize) -> Self {
        SeriesVector {
            components: (0..n).map(|_| Series::zero(n, trunc)).collect(),
        }
    }

    pub fn components(&self) -> &[Series<C>] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Series<C>> {
        self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn trunc(&self) -> usize {
        self.components.first().map_or(0, Series::trunc)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Series::is_zero)
    }

    /// Minimum order over the components; `None` when all are zero.
    pub fn order(&self) -> Option<usize> {
        self.components.iter().filter_map(Series::order).min()
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() || self.trunc() != other.trunc() {
            return Err(Error::Dimension(format!(
                "vectors of length {} at order {} vs length {} at order {}",
                self.len(),
                self.trunc(),
                other.len(),
                other.trunc()
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Series<C>, &Series<C>) -> Series<C>) -> Self {
        SeriesVector {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Series<C>) -> Series<C>) -> Self {
        SeriesVector {
            components: self.components.iter().map(f).collect(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> SeriesVector<D> {
        SeriesVector {
            components: self.components.iter().map(|s| s.map_coeffs(&f)).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|s| s.scale(r))
    }

    pub fn mul_coeff(&self, k: &C) -> Self {
        self.map(|s| s.mul_coeff(k))
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        self.map(|s| s.homogeneous_part(d))
    }

    pub fn with_trunc(&self, trunc: usize) -> Self {
        self.map(|s| s.with_trunc(trunc))
    }

    /// Componentwise composition `self ∘ inner`.
    pub fn compose(&self, inner: &SeriesVector<C>) -> Result<Self> {
        let components = self
            .components
            .iter()
            .map(|g| g.compose(inner))
            .collect::<Result<Vec<_>>>()?;
        Ok(SeriesVector { components })
    }
}

impl<C: Coeff> AddAssign<&SeriesVector<C>> for SeriesVector<C> {
    fn add_assign(&mut self, rhs: &SeriesVector<C>) {
        self.check_compatible(rhs).expect("vector addition");
        for (a, b) in self.components.iter_mut().zip(&rhs.components) {
            *a += b;
        }
    }
}

impl<C: Coeff> SubAssign<&SeriesVector<C>> for SeriesVector<C> {
    fn sub_assign(&mut self, rhs: &SeriesVector<C>) {
        self.check_compatible(rhs).expect("vector subtraction");
        for (a, b) in self.components.iter_mut().zip(&rhs.components) {
            *a -= b;
        }
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for SeriesVector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
