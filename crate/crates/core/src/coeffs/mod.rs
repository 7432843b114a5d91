//! The tree coefficients `φ_T` and flow polynomials `ψ_T(t)`.
//!
//! Both come from the same strip sums: for a tree `T` and `j ≥ 1`, let
//! `σ_T(j)` be the sum, over descending edge sequences of length `j`, of the
//! product of `φ` over the `j + 1` strip pieces. Then
//!
//! * `φ_T = 1` for the singleton and `φ_T = −Σ_j σ_T(j) / (j+1)!` otherwise;
//! * `ψ_T(t) = φ_T t + Σ_j σ_T(j) t^{j+1} / (j+1)!`.
//!
//! Independent routes to `ψ_T` are the bottom-up antidifference algorithm
//! ([`CoeffTables::psi_algorithm`]) and interpolation of strict order-preserving
//! map counts ([`order_polynomial`]). [`identities`] checks how they relate.

pub mod identities;

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::RwLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{delta_inverse, factorial, from_biguint, int, parse_rational, RatPoly, Rational};
use crate::trees::{Forest, RootedTree, TreeWithIds};
use crate::{Error, Result};

/// Thread-safe memo tables for `φ_T`, `ψ_T` and the antidifference route.
///
/// Entries are keyed by canonical encoding. Every value is a pure function
/// of its key, so concurrent fillers agree and the last write wins.
#[derive(Default)]
pub struct CoeffTables {
    strip: RwLock<HashMap<String, Vec<Rational>>>,
    phi: RwLock<HashMap<String, Rational>>,
    psi: RwLock<HashMap<String, RatPoly>>,
    algo: RwLock<HashMap<String, RatPoly>>,
}

#[derive(Serialize, Deserialize, Default)]
struct TableDump {
    phi: BTreeMap<String, String>,
    psi: BTreeMap<String, Vec<String>>,
}

impl CoeffTables {
    pub fn new() -> Self {
        Self::default()
    }

    fn cached<V: Clone>(map: &RwLock<HashMap<String, V>>, key: &str) -> Option<V> {
        map.read().expect("table lock poisoned").get(key).cloned()
    }

    fn store<V>(map: &RwLock<HashMap<String, V>>, key: &str, value: V) {
        map.write().expect("table lock poisoned").insert(key.to_string(), value);
    }

    /// `σ_T(j)` for `j = 1..v(T)−1` (index `j − 1`).
    ///
    /// The first edge of a descending sequence splits off the part hanging
    /// below it, and the rest of the sequence is a descending sequence of the
    /// part containing the root. So `σ_T(j) = Σ_e φ(hanging) · σ_{root part}(j−1)`
    /// with `σ_S(0) = φ_S`, which avoids walking every sequence.
    pub fn strip_sums(&self, tree: &RootedTree) -> Vec<Rational> {
        if let Some(v) = Self::cached(&self.strip, tree.encoding()) {
            return v;
        }
        let m = tree.size();
        let mut sums = vec![Rational::zero(); m.saturating_sub(1)];
        let ids = TreeWithIds::new(tree);
        for e in ids.edges() {
            let (root_part, hanging) = ids.detach(e).expect("edge ids are valid");
            let head = self.phi(&hanging);
            if head.is_zero() {
                continue;
            }
            sums[0] += &head * self.phi(&root_part);
            for (j, tail) in self.strip_sums(&root_part).iter().enumerate() {
                sums[j + 1] += &head * tail;
            }
        }
        Self::store(&self.strip, tree.encoding(), sums.clone());
        sums
    }

    /// `φ_T` by the strip-sum recurrence.
    pub fn phi(&self, tree: &RootedTree) -> Rational {
        if tree.is_singleton() {
            return int(1);
        }
        if let Some(v) = Self::cached(&self.phi, tree.encoding()) {
            return v;
        }
        let mut acc = Rational::zero();
        for (j, s) in self.strip_sums(tree).iter().enumerate() {
            acc -= s / from_biguint(&factorial(j + 2));
        }
        Self::store(&self.phi, tree.encoding(), acc.clone());
        acc
    }

    /// Alias of [`phi`](Self::phi), named after the recurrence it evaluates.
    pub fn phi_recurrence(&self, tree: &RootedTree) -> Rational {
        self.phi(tree)
    }

    /// `ψ_T(t)` from the strip sums.
    pub fn psi(&self, tree: &RootedTree) -> RatPoly {
        if let Some(v) = Self::cached(&self.psi, tree.encoding()) {
            return v;
        }
        let mut coeffs = vec![Rational::zero(), self.phi(tree)];
        for (j, s) in self.strip_sums(tree).iter().enumerate() {
            coeffs.push(s / from_biguint(&factorial(j + 2)));
        }
        let p = RatPoly::from_coeffs(coeffs);
        Self::store(&self.psi, tree.encoding(), p.clone());
        p
    }

    /// Alias of [`psi`](Self::psi), named after the defining sum.
    pub fn psi_def(&self, tree: &RootedTree) -> RatPoly {
        self.psi(tree)
    }

    /// `ψ_T` bottom-up: a leaf gets `t`, and a vertex whose children carry
    /// `N₁, …, N_k` gets `Δ⁻¹(N₁⋯N_k)`.
    pub fn psi_algorithm(&self, tree: &RootedTree) -> RatPoly {
        if let Some(v) = Self::cached(&self.algo, tree.encoding()) {
            return v;
        }
        let prod = tree
            .children()
            .iter()
            .fold(RatPoly::constant(int(1)), |acc, c| acc * &self.psi_algorithm(c));
        let p = delta_inverse(&prod);
        Self::store(&self.algo, tree.encoding(), p.clone());
        p
    }

    /// Product of the component `ψ`; the empty forest gives 1.
    pub fn psi_forest(&self, forest: &Forest) -> RatPoly {
        forest
            .trees()
            .iter()
            .fold(RatPoly::constant(int(1)), |acc, t| acc * &self.psi(t))
    }

    /// `φ` of the only component, or 0 when there is not exactly one.
    pub fn phi_forest(&self, forest: &Forest) -> Rational {
        match forest.trees() {
            [only] => self.phi(only),
            _ => Rational::zero(),
        }
    }

    /// Number of memoized `ψ` entries.
    pub fn len(&self) -> usize {
        self.psi.read().expect("table lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Writes the `φ` and `ψ` tables as JSON with `"p/q"` coefficients.
    pub fn to_json(&self) -> String {
        let dump = TableDump {
            phi: self
                .phi
                .read()
                .expect("table lock poisoned")
                .iter()
                .map(|(k, v)| (k.clone(), v.to_string()))
                .collect(),
            psi: self
                .psi
                .read()
                .expect("table lock poisoned")
                .iter()
                .map(|(k, v)| (k.clone(), v.coeffs().iter().map(|c| c.to_string()).collect()))
                .collect(),
        };
        serde_json::to_string_pretty(&dump).expect("string maps always serialize")
    }

    /// Loads tables written by [`to_json`](Self::to_json). Keys are
    /// re-canonicalized so hand-written files work too.
    pub fn from_json(text: &str) -> Result<Self> {
        let dump: TableDump =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("coefficient tables: {e}")))?;
        let out = CoeffTables::new();
        for (k, v) in dump.phi {
            let tree: RootedTree = k.parse()?;
            Self::store(&out.phi, tree.encoding(), parse_rational(&v)?);
        }
        for (k, v) in dump.psi {
            let tree: RootedTree = k.parse()?;
            let coeffs = v.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
            Self::store(&out.psi, tree.encoding(), RatPoly::from_coeffs(coeffs));
        }
        Ok(out)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
    }

    /// Loads a table file, or starts empty when the file does not exist.
    pub fn load_or_new(path: &Path) -> Result<Self> {
        match std::fs::read_to_string(path) {
            Ok(text) => Self::from_json(&text),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Self::new()),
            Err(e) => Err(Error::Parse(format!("cannot read {}: {e}", path.display()))),
        }
    }
}

/// The polynomial through `(n, #strict maps T → {1..n})` for `n = 0..=v(T)`.
pub fn order_polynomial(tree: &RootedTree) -> RatPoly {
    let points: Vec<(Rational, Rational)> = (0..=tree.size())
        .map(|n| (int(n as i64), from_biguint(&tree.count_strict_maps(n))))
        .collect();
    RatPoly::interpolate(&points).expect("interpolation nodes are distinct")
}
