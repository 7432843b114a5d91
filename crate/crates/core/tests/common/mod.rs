//! Brute-force oracles shared by the integration tests.
//!
//! Nothing here calls the library's tree or coefficient machinery: trees are
//! handled as parent arrays, and every count is obtained by exhaustive search.

#![allow(dead_code)]

use std::collections::BTreeSet;

use dlogflow::algebra::{int, Rational, Series, SeriesVector};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `parent[v]` for vertices `1..m`; vertex 0 is the root.
pub type Parents = Vec<usize>;

/// Parses the nested-parenthesis encoding into a parent array, vertices in
/// preorder.
pub fn parents_of(code: &str) -> Parents {
    let mut parents = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut next = 0;
    for ch in code.chars() {
        match ch {
            '(' => {
                if let Some(&p) = stack.last() {
                    parents.push(p);
                }
                stack.push(next);
                next += 1;
            }
            ')' => {
                stack.pop();
            }
            _ => panic!("unexpected character {ch:?}"),
        }
    }
    parents
}

pub fn size_of(parents: &Parents) -> usize {
    parents.len() + 1
}

fn children(parents: &Parents, v: usize) -> Vec<usize> {
    (1..size_of(parents)).filter(|&c| parents[c - 1] == v).collect()
}

/// Canonical string: children's strings sorted, then wrapped.
fn canonical_at(parents: &Parents, v: usize) -> String {
    let mut kids: Vec<String> = children(parents, v)
        .into_iter()
        .map(|c| canonical_at(parents, c))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

pub fn canonical(parents: &Parents) -> String {
    canonical_at(parents, 0)
}

/// Every parent array with `parent[v] < v`, reduced to distinct shapes.
pub fn brute_trees(m: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut parents = vec![0; m.saturating_sub(1)];
    loop {
        out.insert(canonical(&parents));
        // Odometer over parent[i] ∈ 0..=i (vertex i+1 picks a smaller vertex).
        let mut i = 0;
        loop {
            if i == parents.len() {
                return out;
            }
            if parents[i] < i {
                parents[i] += 1;
                break;
            }
            parents[i] = 0;
            i += 1;
        }
    }
}

fn parent_or_none(parents: &Parents, v: usize) -> Option<usize> {
    (v > 0).then(|| parents[v - 1])
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out
}

/// Permutations of the vertices fixing the root and commuting with `parent`.
pub fn brute_automorphisms(parents: &Parents) -> usize {
    let m = size_of(parents);
    permutations(m)
        .into_iter()
        .filter(|p| p[0] == 0)
        .filter(|p| (1..m).all(|v| parent_or_none(parents, p[v]) == Some(p[parents[v - 1]])))
        .count()
}

fn labelings(m: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.checked_pow(m as u32).unwrap_or(0);
    (0..total).map(move |mut idx| {
        let mut f = vec![0; m];
        for slot in f.iter_mut() {
            *slot = idx % n;
            idx /= n;
        }
        f
    })
}

/// Labelings `V → {1..n}` that strictly increase from every parent to its children.
pub fn brute_strict_maps(parents: &Parents, n: usize) -> u64 {
    if n == 0 {
        return 0;
    }
    let m = size_of(parents);
    labelings(m, n)
        .filter(|f| (1..m).all(|v| f[parents[v - 1]] < f[v]))
        .count() as u64
}

/// `P_T` straight from its definition: the sum over all labelings `f` of
/// `Π_v (∂_{f(children of v)} H_{f(v)})`, kept per root label.
pub fn labeling_sum(parents: &Parents, h: &SeriesVector) -> SeriesVector {
    let m = size_of(parents);
    let n = h.nvars();
    let trunc = h.trunc();
    let mut comps = vec![Series::zero(n, trunc); n];
    for f in labelings(m, n) {
        let mut prod = Series::constant(n, trunc, int(1));
        for v in 0..m {
            let mut factor = h.components()[f[v]].clone();
            for c in children(parents, v) {
                factor = factor.partial(f[c]);
            }
            prod = &prod * &factor;
            if prod.is_zero() {
                break;
            }
        }
        comps[f[0]] += &prod;
    }
    SeriesVector::new(comps).unwrap()
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Bernoulli numbers with `B₁ = −1/2` from `Σ_{k=0}^{n} C(n+1, k) B_k = 0`.
pub fn bernoulli_numbers(max: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = vec![int(1)];
    for n in 1..=max {
        let mut s = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            s += Rational::from_integer(binomial(n + 1, k)) * bk;
        }
        b.push(-s / Rational::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// Coefficients (ascending) of `B_n(t) = Σ_k C(n, k) B_k t^{n−k}`.
pub fn bernoulli_poly(n: usize) -> Vec<Rational> {
    let b = bernoulli_numbers(n);
    let mut out = vec![Rational::zero(); n + 1];
    for (k, bk) in b.iter().enumerate() {
        out[n - k] = Rational::from_integer(binomial(n, k)) * bk;
    }
    out
}

/// Taylor coefficients of `x / (e^x − 1)` times `n!`, by inverting
/// `(e^x − 1)/x = Σ x^k/(k+1)!` term by term.
pub fn bernoulli_from_generating_function(max: usize) -> Vec<Rational> {
    let fact = |k: usize| Rational::from_integer((1..=k).fold(BigInt::one(), |a, i| a * i));
    let g: Vec<Rational> = (0..=max).map(|k| fact(k + 1).recip()).collect();
    let mut inv: Vec<Rational> = vec![int(1)];
    for k in 1..=max {
        let mut s = Rational::zero();
        for j in 1..=k {
            s += &g[j] * &inv[k - j];
        }
        inv.push(-s);
    }
    inv.iter().enumerate().map(|(k, c)| c * fact(k)).collect()
}

/// Coefficients (ascending) of `t(t−1)⋯(t−n+1)/n!`.
pub fn binomial_poly(n: usize) -> Vec<Rational> {
    let mut p = vec![int(1)];
    for i in 0..n {
        // Multiply by (t − i).
        let mut next = vec![Rational::zero(); p.len() + 1];
        for (k, c) in p.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * int(i as i64);
        }
        p = next;
    }
    let nf = Rational::from_integer((1..=n).fold(BigInt::one(), |a, i| a * i));
    p.into_iter().map(|c| c / &nf).collect()
}

/// Lagrange interpolation through `(x_i, y_i)`, ascending coefficients.
pub fn interpolate(points: &[(i64, Rational)]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); points.len()];
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![int(1)];
        let mut denom = int(1);
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * int(*xj);
            }
            basis = next;
            denom *= int(xi - xj);
        }
        for (k, c) in basis.iter().enumerate() {
            out[k] += c * yi / &denom;
        }
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// `exp(τA)·q` summed term by term until `A^k q` vanishes.
pub fn exp_field(a: &SeriesVector, tau: &Rational, q: &SeriesVector) -> SeriesVector {
    let apply = |s: &Series| {
        let mut out = Series::zero(s.nvars(), s.trunc());
        for (i, ai) in a.components().iter().enumerate() {
            out += &(ai * &s.partial(i));
        }
        out
    };
    let comps = q
        .components()
        .iter()
        .map(|qi| {
            let mut total = qi.clone();
            let mut term = qi.clone();
            let mut k = 1;
            loop {
                term = apply(&term).scale(&(tau / int(k)));
                if term.is_zero() {
                    return total;
                }
                total += &term;
                k += 1;
            }
        })
        .collect();
    SeriesVector::new(comps).unwrap()
}
