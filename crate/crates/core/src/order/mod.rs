//! Finite posets and the domain-theoretic property checkers built on them.
//!
//! Every order table is validated on construction, so the rest of the crate can
//! treat a [`FinPoset`] as a genuine partial order. Elements are addressed by
//! their index into the label list.

mod domain;
mod topology;

pub use domain::{
    compact_elements, dense_chain_search, domain_report, way_below, way_below_definitional,
    way_below_principal, Approximation, DomainReport, Path, QuasiFailure, ReportOptions,
    Witness, DEFAULT_FIN_LIMIT, DEFINITIONAL_LIMIT,
};
pub use topology::{lawson_opens, scott_opens, TOPOLOGY_LIMIT};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("a poset needs at least one element")]
    Empty,
    #[error("order table row {row} has {found} entries, expected {expected}")]
    NotSquare { row: usize, expected: usize, found: usize },
    #[error("{labels} labels given for a {rows}x{rows} order table")]
    LabelMismatch { labels: usize, rows: usize },
    #[error("element {0} is not below itself")]
    NotReflexive(usize),
    #[error("elements {0} and {1} are distinct but below each other")]
    NotAntisymmetric(usize, usize),
    #[error("{0} <= {1} and {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("element index {0} is not in the poset")]
    ElementNotInPoset(usize),
    #[error("elements {0} and {1} have no meet")]
    MeetNotDefined(usize, usize),
    #[error("poset of size {size} exceeds the limit {limit} for this operation")]
    SizeLimit { size: usize, limit: usize },
}

/// A finite partially ordered set with an explicit order relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    labels: Vec<String>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

/// JSON shape of a poset: `{ "elements": [labels], "leq": [[bool, ...], ...] }`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
}

impl FinPoset {
    /// Validates `leq` (row `i`, column `j` meaning `i <= j`) as a partial order.
    ///
    /// The first violated axiom is reported, scanning reflexivity, then
    /// antisymmetry, then transitivity in index order.
    pub fn new(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, OrderError> {
        let n = leq.len();
        if n == 0 {
            return Err(OrderError::Empty);
        }
        if labels.len() != n {
            return Err(OrderError::LabelMismatch { labels: labels.len(), rows: n });
        }
        for (row, r) in leq.iter().enumerate() {
            if r.len() != n {
                return Err(OrderError::NotSquare { row, expected: n, found: r.len() });
            }
        }
        for (i, row) in leq.iter().enumerate() {
            if !row[i] {
                return Err(OrderError::NotReflexive(i));
            }
        }
        let poset = Self::from_table_unchecked(labels, |i, j| leq[i][j], n);
        for i in 0..n {
            for j in poset.up[i].ones().filter(|&j| j > i) {
                if poset.up[j].contains(i) {
                    return Err(OrderError::NotAntisymmetric(i, j));
                }
            }
        }
        for i in 0..n {
            for j in poset.up[i].ones() {
                if !poset.up[j].is_subset(&poset.up[i]) {
                    let k = poset.up[j].difference(&poset.up[i]).next().expect("not a subset");
                    return Err(OrderError::NotTransitive(i, j, k));
                }
            }
        }
        Ok(poset)
    }

    /// Builds and validates a poset from an order predicate.
    pub fn from_fn<F>(labels: Vec<String>, leq: F) -> Result<Self, OrderError>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = labels.len();
        let table = (0..n).map(|i| (0..n).map(|j| leq(i, j)).collect()).collect();
        Self::new(labels, table)
    }

    fn from_table_unchecked<F>(labels: Vec<String>, leq: F, n: usize) -> Self
    where
        F: Fn(usize, usize) -> bool,
    {
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    up[i].insert(j);
                    down[j].insert(i);
                }
            }
        }
        FinPoset { labels, up, down }
    }

    pub fn from_json(json: PosetJson) -> Result<Self, OrderError> {
        Self::new(json.elements, json.leq)
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.labels.clone(),
            leq: (0..self.len()).map(|i| (0..self.len()).map(|j| self.leq(i, j)).collect()).collect(),
        }
    }

    /// A chain `0 < 1 < ... < n-1` labelled by its indices.
    pub fn chain(n: usize) -> Result<Self, OrderError> {
        Self::from_fn(index_labels(n), |i, j| i <= j)
    }

    /// An `n`-element antichain.
    pub fn antichain(n: usize) -> Result<Self, OrderError> {
        Self::from_fn(index_labels(n), |i, j| i == j)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// `↑a`, the elements above `a`.
    pub fn up(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    /// `↓a`, the elements below `a`.
    pub fn down(&self, a: usize) -> &FixedBitSet {
        &self.down[a]
    }

    pub fn check_element(&self, a: usize) -> Result<(), OrderError> {
        if a < self.len() {
            Ok(())
        } else {
            Err(OrderError::ElementNotInPoset(a))
        }
    }

    /// Up-closure of a subset.
    pub fn up_closure<I: IntoIterator<Item = usize>>(&self, set: I) -> FixedBitSet {
        let mut acc = FixedBitSet::with_capacity(self.len());
        for x in set {
            acc.union_with(&self.up[x]);
        }
        acc
    }

    pub fn down_closure<I: IntoIterator<Item = usize>>(&self, set: I) -> FixedBitSet {
        let mut acc = FixedBitSet::with_capacity(self.len());
        for x in set {
            acc.union_with(&self.down[x]);
        }
        acc
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&b| self.up[b].count_ones(..) == self.len())
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&t| self.down[t].count_ones(..) == self.len())
    }

    /// Least upper bound of `set`; the bottom element for the empty set.
    pub fn lub(&self, set: &[usize]) -> Option<usize> {
        let mut bounds = self.full_set();
        for &s in set {
            bounds.intersect_with(&self.up[s]);
        }
        bounds.ones().find(|&u| bounds.is_subset(&self.up[u]))
    }

    /// Greatest lower bound of `set`; the top element for the empty set.
    pub fn glb(&self, set: &[usize]) -> Option<usize> {
        let mut bounds = self.full_set();
        for &s in set {
            bounds.intersect_with(&self.down[s]);
        }
        bounds.ones().find(|&l| bounds.is_subset(&self.down[l]))
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.lub(&[a, b])
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.glb(&[a, b])
    }

    /// Binary meet table; `None` entries mark missing meets.
    pub fn meet_table(&self) -> Vec<Vec<Option<usize>>> {
        let n = self.len();
        (0..n).map(|a| (0..n).map(|b| self.meet(a, b)).collect()).collect()
    }

    pub fn is_meet_semilattice(&self) -> bool {
        (0..self.len()).all(|a| (a..self.len()).all(|b| self.meet(a, b).is_some()))
    }

    pub fn is_lattice(&self) -> bool {
        self.is_meet_semilattice()
            && (0..self.len()).all(|a| (a..self.len()).all(|b| self.join(a, b).is_some()))
    }

    /// Nonempty, and every pair has an upper bound inside the set.
    pub fn is_directed(&self, set: &[usize]) -> bool {
        if set.is_empty() {
            return false;
        }
        set.iter().all(|&x| {
            set.iter().all(|&y| set.iter().any(|&z| self.leq(x, z) && self.leq(y, z)))
        })
    }

    pub fn is_chain(&self, set: &[usize]) -> bool {
        set.iter().all(|&x| set.iter().all(|&y| self.leq(x, y) || self.leq(y, x)))
    }

    /// Minimal elements strictly above the bottom. Empty if there is no bottom.
    pub fn atoms(&self) -> Vec<usize> {
        match self.bottom() {
            Some(b) => self.covers_of(b),
            None => Vec::new(),
        }
    }

    /// Elements covering `a`.
    pub fn covers_of(&self, a: usize) -> Vec<usize> {
        self.up[a]
            .ones()
            .filter(|&b| b != a)
            .filter(|&b| !self.up[a].ones().any(|c| c != a && c != b && self.leq(c, b)))
            .collect()
    }

    /// The cover relation (transitive reduction), sorted.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for a in 0..self.len() {
            for b in self.covers_of(a) {
                edges.push((a, b));
            }
        }
        edges.sort_unstable();
        edges
    }

    /// The order-dual poset on the same labels.
    pub fn dual(&self) -> FinPoset {
        FinPoset { labels: self.labels.clone(), up: self.down.clone(), down: self.up.clone() }
    }

    /// Whether `map` (indexed by elements of `self`) is an order isomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &FinPoset, map: &[usize]) -> bool {
        if self.len() != other.len() || map.len() != self.len() {
            return false;
        }
        let mut seen = FixedBitSet::with_capacity(other.len());
        for &m in map {
            if m >= other.len() || seen.contains(m) {
                return false;
            }
            seen.insert(m);
        }
        (0..self.len())
            .all(|a| (0..self.len()).all(|b| self.leq(a, b) == other.leq(map[a], map[b])))
    }

    /// DOT digraph with one node per element and one edge per cover.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {} {{\n", dot_id(name));
        for (i, l) in self.labels.iter().enumerate() {
            out.push_str(&format!("  n{} [label=\"{}\"];\n", i, dot_escape(&truncate_label(l))));
        }
        for (a, b) in self.hasse() {
            out.push_str(&format!("  n{} -> n{};\n", a, b));
        }
        out.push_str("}\n");
        out
    }

    pub(crate) fn full_set(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        s.insert_range(..);
        s
    }
}

pub(crate) fn index_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

const LABEL_WIDTH: usize = 40;

fn truncate_label(label: &str) -> String {
    if label.chars().count() <= LABEL_WIDTH {
        label.to_string()
    } else {
        let mut s: String = label.chars().take(LABEL_WIDTH - 3).collect();
        s.push_str("...");
        s
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn dot_id(name: &str) -> String {
    let clean: String =
        name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' }).collect();
    if clean.is_empty() || clean.starts_with(|c: char| c.is_ascii_digit()) {
        format!("g_{clean}")
    } else {
        clean
    }
}
