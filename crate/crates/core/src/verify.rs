//! Reproducible verification suites.
//!
//! Each suite checks one family of identities over all trees up to a vertex
//! bound or over seeded random inputs, and returns a [`VerdictReport`] with
//! one entry per case. Randomized suites derive one seed per case from the
//! master seed and record it, so a failing case can be replayed alone.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{int, RatPoly, RatPoly2, Rational, Series, SeriesVector};
use crate::coeffs::{identities, CoeffTables};
use crate::flow::{self, nilpotent_vanishing, FormalMap};
use crate::trees::{enumerate_trees, trees_up_to, RootedTree};
use crate::treeseries::{independence_probe, key_lemma_case};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    R00,
    Delta,
    Additive,
    Omega,
    KeyLemma,
    Independence,
    FlowGroup,
    Nilpotent,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::R00,
        Suite::Delta,
        Suite::Additive,
        Suite::Omega,
        Suite::KeyLemma,
        Suite::Independence,
        Suite::FlowGroup,
        Suite::Nilpotent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::R00 => "r00",
            Suite::Delta => "delta",
            Suite::Additive => "additive",
            Suite::Omega => "omega",
            Suite::KeyLemma => "keylemma",
            Suite::Independence => "independence",
            Suite::FlowGroup => "flowgroup",
            Suite::Nilpotent => "nilpotent",
        }
    }

    pub fn is_randomized(self) -> bool {
        matches!(self, Suite::KeyLemma | Suite::FlowGroup)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
            Error::Parse(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Case {
    pub descriptor: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Case {
    fn new(descriptor: impl Into<String>, pass: bool) -> Self {
        Case {
            descriptor: descriptor.into(),
            pass,
            witness: None,
        }
    }

    /// Attaches `witness()` only when the case fails.
    fn with_witness(mut self, witness: impl FnOnce() -> String) -> Self {
        if !self.pass {
            self.witness = Some(witness());
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictReport {
    pub suite: Suite,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub cases: Vec<Case>,
}

impl VerdictReport {
    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.pass).count()
    }
}

/// Parameters shared by all suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    pub max_vertices: usize,
    pub trunc: usize,
    pub seed: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            max_vertices: 6,
            trunc: 6,
            seed: 0,
        }
    }
}

pub fn run_suite(suite: Suite, params: &SuiteParams, tables: &CoeffTables) -> VerdictReport {
    let cases = match suite {
        Suite::R00 => r00_cases(params, tables),
        Suite::Delta => delta_cases(params, tables),
        Suite::Additive => additive_cases(params, tables),
        Suite::Omega => omega_cases(params, tables),
        Suite::KeyLemma => key_lemma_cases(params),
        Suite::Independence => independence_cases(params),
        Suite::FlowGroup => flow_group_cases(params, tables),
        Suite::Nilpotent => nilpotent_cases(params),
    };
    VerdictReport {
        suite,
        seed: suite.is_randomized().then_some(params.seed),
        cases,
    }
}

fn tree_case(tree: &RootedTree, what: &str, pass: bool) -> Case {
    Case::new(format!("{what} {tree}"), pass)
}

fn r00_cases(p: &SuiteParams, tables: &CoeffTables) -> Vec<Case> {
    let mut out = Vec::new();
    for tree in trees_up_to(p.max_vertices).iter().filter(|t| t.size() >= 2) {
        let sum = identities::recurrence_sum(tables, tree);
        out.push(tree_case(tree, "recurrence", sum.is_zero()).with_witness(|| format!("sum = {sum}")));
        let leaf = identities::leaf_identity(tables, tree);
        out.push(
            tree_case(tree, "phi leaf deletion", leaf.holds())
                .with_witness(|| format!("left = {}, right = {}", leaf.rest, leaf.rhs)),
        );
    }
    out
}

fn delta_cases(p: &SuiteParams, tables: &CoeffTables) -> Vec<Case> {
    let mut out = Vec::new();
    for tree in trees_up_to(p.max_vertices) {
        let pass = identities::delta_root(tables, &tree);
        out.push(
            tree_case(&tree, "delta root", pass)
                .with_witness(|| format!("psi = {}, delta = {}", tables.psi(&tree), tables.psi(&tree).delta())),
        );
        if tree.size() >= 2 {
            out.push(tree_case(
                &tree,
                "delta leaves",
                identities::delta_leaves(tables, &tree),
            ));
        }
    }
    out
}

fn additive_cases(p: &SuiteParams, tables: &CoeffTables) -> Vec<Case> {
    let mut out = Vec::new();
    for tree in trees_up_to(p.max_vertices) {
        out.push(tree_case(&tree, "additive", identities::additive(tables, &tree)));
        out.push(tree_case(
            &tree,
            "derivative by edges",
            identities::derivative_by_edges(tables, &tree),
        ));
        out.push(tree_case(
            &tree,
            "derivative by subtrees",
            identities::derivative_by_subtrees(tables, &tree),
        ));
    }
    out
}

/// Number of points at which the flow polynomial is compared with a direct count.
const OMEGA_POINTS: usize = 5;

fn omega_cases(p: &SuiteParams, tables: &CoeffTables) -> Vec<Case> {
    let mut out = Vec::new();
    for tree in trees_up_to(p.max_vertices) {
        let pass = identities::order_poly_agrees(tables, &tree, OMEGA_POINTS);
        out.push(tree_case(&tree, "order polynomial", pass).with_witness(|| {
            let counts: Vec<String> = (0..=OMEGA_POINTS)
                .map(|n| tree.count_strict_maps(n).to_string())
                .collect();
            format!("psi = {}, counts = [{}]", tables.psi(&tree), counts.join(", "))
        }));
        out.push(tree_case(&tree, "reciprocity", identities::reciprocity(tables, &tree)));
        out.push(tree_case(
            &tree,
            "degree and sign",
            identities::degree_and_sign(tables, &tree),
        ));
    }
    out
}

/// A random rational with numerator in `[−9, 9]` and denominator in `{1, 2, 3}`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    int(rng.gen_range(-9i64..=9)) / int(rng.gen_range(1i64..=3))
}

/// Exponent vectors of all monomials of total degree `d` in `n` variables.
pub fn monomials(n: usize, d: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

/// A random `H` in `n` variables with terms of the given degrees. Each
/// monomial appears with probability one half, and draws are repeated until
/// `H ≠ 0`. Degrees above `trunc` are ignored; if none remain, `H = 0`.
pub fn random_system(n: usize, degrees: &[usize], trunc: usize, rng: &mut impl Rng) -> SeriesVector {
    let degrees: Vec<usize> = degrees.iter().copied().filter(|&d| d <= trunc).collect();
    if n == 0 || degrees.is_empty() {
        return SeriesVector::zero(n, trunc);
    }
    loop {
        let comps: Vec<Series> = (0..n)
            .map(|_| {
                let terms = degrees
                    .iter()
                    .flat_map(|&d| monomials(n, d))
                    .filter_map(|e| rng.gen_bool(0.5).then(|| (e, random_rational(rng))));
                Series::from_terms(n, trunc, terms.collect::<Vec<_>>()).expect("exponents have length n")
            })
            .collect();
        let h = SeriesVector::new(comps).expect("square system");
        if !h.is_zero() {
            return h;
        }
    }
}

/// Parameters of one randomized map, drawn from `seed`.
#[derive(Clone, Debug)]
pub struct RandomMap {
    pub seed: u64,
    pub map: FormalMap,
}

/// `F = z + H` with `n ∈ 1..=3` variables and `H` of degrees 2 and/or 3
/// (degree 2 alone when `trunc < 3`).
pub fn random_map(seed: u64, trunc: usize) -> RandomMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=3);
    let degrees: &[usize] = match rng.gen_range(0..3) {
        1 if trunc >= 3 => &[3],
        2 => &[2, 3],
        _ => &[2],
    };
    let h = random_system(n, degrees, trunc, &mut rng);
    let map = FormalMap::from_higher(h).expect("terms of degree 2 and 3 only");
    RandomMap { seed, map }
}

fn case_seeds(master: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    (0..count).map(|_| rng.gen()).collect()
}

/// Number of randomized instances per randomized suite.
pub const RANDOM_CASES: usize = 20;
pub const RANDOM_MAPS: usize = 10;

/// One key-lemma instance drawn from `seed`: `n ≤ 2`, `r ≤ 2`, `m ≤ max_m`,
/// quadratic homogeneous `H`.
pub fn key_lemma_random_case(seed: u64, max_m: usize) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=2);
    let r = rng.gen_range(1..=2usize.min(max_m.saturating_sub(1)).max(1));
    let bases: Vec<RootedTree> = trees_up_to(max_m.saturating_sub(r).max(1));
    let base = bases[rng.gen_range(0..bases.len())].clone();
    let m = rng.gen_range(base.size() + r..=max_m.max(base.size() + r));
    // 𝒫_T for quadratic H is homogeneous of degree v(T) + 1.
    let h = random_system(n, &[2], m + 1, &mut rng);
    let y_seed = rng.gen();
    let case = key_lemma_case(m, r, &base, &h, y_seed);
    Case::new(format!("seed {seed}: m={m} r={r} n={n} base {base}"), case.holds())
        .with_witness(|| format!("lhs = {}, rhs = {}", case.lhs, case.rhs))
}

fn key_lemma_cases(p: &SuiteParams) -> Vec<Case> {
    let max_m = p.max_vertices.clamp(2, 5);
    case_seeds(p.seed, RANDOM_CASES)
        .into_iter()
        .map(|s| key_lemma_random_case(s, max_m))
        .collect()
}

fn independence_cases(p: &SuiteParams) -> Vec<Case> {
    let mut out = Vec::new();
    for m in 1..=p.max_vertices.min(5) {
        let trees = enumerate_trees(m);
        for target in &trees {
            for probe in &trees {
                let got = independence_probe(target, probe).expect("equal vertex counts");
                let trunc = got.trunc();
                let mut expect = SeriesVector::zero(m, trunc);
                if target == probe {
                    let alpha = crate::algebra::from_biguint(&target.aut_size());
                    let mut comps = expect.into_components();
                    comps[0] = Series::constant(m, trunc, alpha);
                    expect = SeriesVector::new(comps).expect("square");
                }
                out.push(
                    Case::new(format!("probe {probe} on {target}"), got == expect).with_witness(|| got.to_string()),
                );
            }
        }
    }
    out
}

fn check(out: &mut Vec<Case>, label: String, result: Result<bool>) {
    match result {
        Ok(pass) => out.push(Case::new(label, pass)),
        Err(e) => out.push(Case {
            descriptor: label,
            pass: false,
            witness: Some(e.to_string()),
        }),
    }
}

/// The law checks for one map.
pub fn flow_laws(rm: &RandomMap, tables: &CoeffTables) -> Vec<Case> {
    let map = &rm.map;
    let f = map.map();
    let z = SeriesVector::identity(map.nvars(), map.trunc());
    let tag = |what: &str| format!("seed {}: {what}", rm.seed);
    let mut out = Vec::new();

    check(
        &mut out,
        tag("dlog round trip"),
        (|| {
            let a = flow::dlog(map)?;
            Ok(crate::algebra::exp_derivation(&a.derivation(), &int(1), &z)? == *f)
        })(),
    );
    check(
        &mut out,
        tag("dlog tree sum"),
        (|| Ok(flow::dlog(map)?.a == flow::dlog_tree_sum(map, tables)))(),
    );
    check(
        &mut out,
        tag("flow at 2"),
        (|| Ok(flow::flow_at(map, &int(2))? == f.compose(f)?))(),
    );
    check(
        &mut out,
        tag("flow at -1 inverts"),
        (|| Ok(flow::flow_at(map, &int(-1))?.compose(f)? == z))(),
    );
    check(
        &mut out,
        tag("inverse routes"),
        (|| {
            let tree = flow::inverse_tree(map);
            Ok(tree == flow::inverse_solver(map)? && tree == flow::flow_at(map, &int(-1))?)
        })(),
    );
    check(
        &mut out,
        tag("flow at -2"),
        (|| {
            let inv = flow::inverse_solver(map)?;
            Ok(flow::flow_at(map, &int(-2))? == inv.compose(&inv)?)
        })(),
    );
    check(
        &mut out,
        tag("symbolic flow tree sum"),
        (|| Ok(flow::flow_symbolic(map)? == flow::flow_tree_sum(map, tables, &RatPoly::t())))(),
    );
    check(
        &mut out,
        tag("semigroup"),
        (|| {
            let small = FormalMap::new(f.with_trunc(map.trunc().min(5)))?;
            let joint = flow::flow(&small, &(RatPoly2::t() + RatPoly2::s()))?;
            let ft = flow::flow(&small, &RatPoly2::t())?;
            let fs = flow::rename_t_to_s(&flow::flow_symbolic(&small)?);
            Ok(ft.compose(&fs)? == joint)
        })(),
    );
    out
}

/// Exponential of the D-Log acting on `𝒫_S` for every `S` with `v(S) ≤ 3`.
pub fn exp_on_tree_laws(rm: &RandomMap, tables: &CoeffTables) -> Vec<Case> {
    let mut out = Vec::new();
    let mut bases: Vec<Option<RootedTree>> = vec![None];
    bases.extend(trees_up_to(3).into_iter().map(Some));
    for base in &bases {
        let label = match base {
            Some(s) => format!("seed {}: exp on tree {s}", rm.seed),
            None => format!("seed {}: exp on empty tree", rm.seed),
        };
        let res = flow::exp_on_ptree(&rm.map, tables, base.as_ref(), &RatPoly::t()).map(|e| e.equal());
        check(&mut out, label, res);
    }
    out
}

fn flow_group_cases(p: &SuiteParams, tables: &CoeffTables) -> Vec<Case> {
    let mut out = Vec::new();
    for seed in case_seeds(p.seed, RANDOM_MAPS) {
        let rm = random_map(seed, p.trunc);
        out.extend(flow_laws(&rm, tables));
        if rm.map.nvars() <= 2 && rm.map.higher().order() == Some(2) {
            out.extend(exp_on_tree_laws(&rm, tables));
        }
    }
    out
}

/// Homogeneous systems with nilpotent Jacobian, with their nilpotency index.
pub fn nilpotent_examples(trunc: usize) -> Vec<(String, SeriesVector, usize)> {
    let two = SeriesVector::new(vec![
        Series::monomial(2, trunc, &[0, 2], int(1)),
        Series::zero(2, trunc),
    ])
    .expect("square");
    let three = SeriesVector::new(vec![
        Series::monomial(3, trunc, &[0, 2, 0], int(1)),
        Series::monomial(3, trunc, &[0, 0, 2], int(1)),
        Series::zero(3, trunc),
    ])
    .expect("square");
    vec![
        ("H = (z2^2, 0)".to_string(), two, 2),
        ("H = (z2^2, z3^2, 0)".to_string(), three, 3),
    ]
}

fn nilpotent_cases(p: &SuiteParams) -> Vec<Case> {
    let mut out = Vec::new();
    for (name, h, k) in nilpotent_examples(2) {
        match nilpotent_vanishing(&h, k, p.max_vertices) {
            Ok(report) => {
                out.push(Case::new(format!("{name}: (JH)^{k} = 0"), report.jacobian_nilpotent));
                for s in &report.sums {
                    out.push(
                        Case::new(format!("{name}: height {} size {}", s.height, s.size), s.vanishes())
                            .with_witness(|| s.sum.to_string()),
                    );
                }
                for c in &report.chains {
                    out.push(Case::new(
                        format!("{name}: chain of length {}", c.length),
                        c.matrix_form && c.vanishes,
                    ));
                }
            }
            Err(e) => out.push(Case {
                descriptor: name,
                pass: false,
                witness: Some(e.to_string()),
            }),
        }
    }
    out
}
