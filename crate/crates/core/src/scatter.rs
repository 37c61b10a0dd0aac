//! Cantor–Bendixson derivatives, on explicit finite topologies and
//! symbolically on ordinal spaces `[0, α]` with `α < ω^9`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cantor::{rat, Rational};
use crate::partitions::{collapse, PartitionError};

/// Points are `u64` bits.
pub const MAX_POINTS: usize = 64;
/// Exponents stay below this bound.
pub const MAX_EXPONENT: u32 = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScatterError {
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("{0} points exceed the limit of 64")]
    TooManyPoints(usize),
    #[error("cannot parse ordinal `{input}`: {reason}")]
    OrdinalParse { input: String, reason: String },
    #[error("exponent {0} exceeds the bound {MAX_EXPONENT}")]
    ExponentTooLarge(u32),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

fn members(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask & (1u64 << i) != 0)
}

/// Finite topological space given by its open sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinTop {
    labels: Vec<String>,
    opens: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinTopJson {
    pub points: Vec<String>,
    pub opens: Vec<Vec<usize>>,
}

impl FinTop {
    /// Validates: contains `∅` and the whole space, closed under union and intersection.
    pub fn new(labels: Vec<String>, opens: impl IntoIterator<Item = u64>) -> Result<FinTop, ScatterError> {
        let n = labels.len();
        if n > MAX_POINTS {
            return Err(ScatterError::TooManyPoints(n));
        }
        let full = full_mask(n);
        let set: BTreeSet<u64> = opens.into_iter().collect();
        if let Some(bad) = set.iter().find(|&&u| u & !full != 0) {
            return Err(ScatterError::InvalidTopology(format!("open set {bad:#b} has points outside the space")));
        }
        if !set.contains(&0) {
            return Err(ScatterError::InvalidTopology("empty set is not open".into()));
        }
        if !set.contains(&full) {
            return Err(ScatterError::InvalidTopology("whole space is not open".into()));
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&(a | b)) {
                    return Err(ScatterError::InvalidTopology(format!("union of {a:#b} and {b:#b} is not open")));
                }
                if !set.contains(&(a & b)) {
                    return Err(ScatterError::InvalidTopology(format!("intersection of {a:#b} and {b:#b} is not open")));
                }
            }
        }
        Ok(FinTop { labels, opens: set.into_iter().collect() })
    }

    pub fn from_json(json: &FinTopJson) -> Result<FinTop, ScatterError> {
        let n = json.points.len();
        let mut opens = Vec::with_capacity(json.opens.len());
        for u in &json.opens {
            let mut mask = 0u64;
            for &x in u {
                if x >= n {
                    return Err(ScatterError::InvalidTopology(format!("point {x} is out of range")));
                }
                mask |= 1 << x;
            }
            opens.push(mask);
        }
        FinTop::new(json.points.clone(), opens)
    }

    pub fn to_json(&self) -> FinTopJson {
        FinTopJson { points: self.labels.clone(), opens: self.opens.iter().map(|&u| members(u).collect()).collect() }
    }

    pub fn discrete(n: usize) -> Result<FinTop, ScatterError> {
        FinTop::new(default_labels(n), 0..=full_mask(n))
    }

    pub fn indiscrete(n: usize) -> Result<FinTop, ScatterError> {
        FinTop::new(default_labels(n), [0, full_mask(n)])
    }

    /// `{∅, {a}, {a, b}}`.
    pub fn sierpinski() -> FinTop {
        FinTop::new(vec!["a".into(), "b".into()], [0b00, 0b01, 0b11]).expect("valid topology")
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

    pub fn opens(&self) -> &[u64] {
        &self.opens
    }

    fn full(&self) -> u64 {
        full_mask(self.len())
    }

    pub fn is_open(&self, set: u64) -> bool {
        self.opens.binary_search(&set).is_ok()
    }

    pub fn is_closed(&self, set: u64) -> bool {
        self.is_open(self.full() & !set)
    }

    pub fn is_clopen(&self, set: u64) -> bool {
        self.is_open(set) && self.is_closed(set)
    }

    /// Complement of the union of the opens missing `set`.
    pub fn closure(&self, set: u64) -> u64 {
        let outside = self.opens.iter().filter(|&&u| u & set == 0).fold(0u64, |m, &u| m | u);
        self.full() & !outside
    }

    pub fn isolated_points(&self) -> u64 {
        (0..self.len()).filter(|&x| self.is_open(1 << x)).fold(0u64, |m, x| m | (1 << x))
    }

    /// Subspace on the points of `set`, re-indexed in order.
    pub fn subspace(&self, set: u64) -> FinTop {
        let keep: Vec<usize> = members(set & self.full()).collect();
        let squeeze = |u: u64| keep.iter().enumerate().filter(|&(_, &x)| u & (1 << x) != 0).fold(0u64, |m, (i, _)| m | (1 << i));
        let opens: BTreeSet<u64> = self.opens.iter().map(|&u| squeeze(u)).collect();
        FinTop { labels: keep.iter().map(|&x| self.labels[x].clone()).collect(), opens: opens.into_iter().collect() }
    }

    pub fn is_stonean(&self) -> bool {
        self.opens.iter().all(|&u| self.is_open(self.closure(u)))
    }

    /// Distinct points are separated by a clopen set.
    pub fn is_totally_disconnected(&self) -> bool {
        let clopens: Vec<u64> = self.opens.iter().copied().filter(|&u| self.is_closed(u)).collect();
        (0..self.len()).all(|x| {
            (0..self.len()).all(|y| x == y || clopens.iter().any(|&c| c & (1 << x) != 0 && c & (1 << y) == 0))
        })
    }

    pub fn is_hausdorff(&self) -> bool {
        (0..self.len()).all(|x| {
            (0..self.len()).all(|y| {
                x == y
                    || self.opens.iter().any(|&u| {
                        u & (1 << x) != 0 && u & (1 << y) == 0 && self.opens.iter().any(|&v| v & (1 << y) != 0 && v & u == 0)
                    })
            })
        })
    }

    pub fn is_discrete(&self) -> bool {
        self.isolated_points() == self.full()
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Removes the isolated points.
pub fn cb_derivative_fin(t: &FinTop) -> FinTop {
    t.subspace(t.full() & !t.isolated_points())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CbRank {
    /// Number of derivative steps taken until the space stopped changing.
    pub rank: usize,
    pub scattered: bool,
    /// Points left once the derivative stabilizes; empty iff scattered.
    pub residue: Vec<String>,
    /// Points removed at each step.
    pub stages: Vec<Vec<String>>,
}

/// Least `n` with `Dⁿ(T) = ∅`, or the stable residue.
pub fn cb_rank_fin(t: &FinTop) -> CbRank {
    let mut cur = t.clone();
    let mut stages = Vec::new();
    while !cur.is_empty() {
        let iso = cur.isolated_points();
        if iso == 0 {
            break;
        }
        stages.push(members(iso).map(|x| cur.labels[x].clone()).collect());
        cur = cur.subspace(cur.full() & !iso);
    }
    CbRank { rank: stages.len(), scattered: cur.is_empty(), residue: cur.labels.clone(), stages }
}

pub fn is_scattered_fin(t: &FinTop) -> bool {
    cb_rank_fin(t).scattered
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointStage {
    pub point: String,
    pub stage: usize,
    /// Whether the point is clopen in the derivative where it becomes isolated.
    pub clopen: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StoneScatteredReport {
    pub stonean: bool,
    pub scattered: bool,
    pub pass: bool,
    pub stages: Vec<PointStage>,
}

/// Stonean and scattered, with the stage at which each point is removed.
pub fn stone_scattered_check(t: &FinTop) -> StoneScatteredReport {
    let mut stages = Vec::new();
    let mut cur = t.clone();
    let mut step = 0;
    while !cur.is_empty() {
        let iso = cur.isolated_points();
        if iso == 0 {
            break;
        }
        for x in members(iso) {
            stages.push(PointStage { point: cur.labels[x].clone(), stage: step, clopen: cur.is_clopen(1 << x) });
        }
        cur = cur.subspace(cur.full() & !iso);
        step += 1;
    }
    let stonean = t.is_stonean();
    let scattered = cur.is_empty();
    StoneScatteredReport { stonean, scattered, pass: stonean && scattered, stages }
}

/// Ordinal `ω^e₁·c₁ + … + ω^e_k·c_k` with `e₁ > … > e_k` and `c_i > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct OrdinalCnf {
    terms: Vec<(u32, u64)>,
}

impl OrdinalCnf {
    pub fn zero() -> Self {
        OrdinalCnf::default()
    }

    pub fn finite(n: u64) -> Self {
        OrdinalCnf::from_terms(&[(0, n)]).expect("exponent 0 is in range")
    }

    pub fn omega_power(e: u32) -> Result<Self, ScatterError> {
        OrdinalCnf::from_terms(&[(e, 1)])
    }

    /// Sums the terms left to right with ordinal addition.
    pub fn from_terms(terms: &[(u32, u64)]) -> Result<Self, ScatterError> {
        let mut acc = OrdinalCnf::zero();
        for &(e, c) in terms {
            if e > MAX_EXPONENT {
                return Err(ScatterError::ExponentTooLarge(e));
            }
            if c > 0 {
                acc = acc.add(&OrdinalCnf { terms: vec![(e, c)] });
            }
        }
        Ok(acc)
    }

    pub fn terms(&self) -> &[(u32, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|&(e, _)| e == 0)
    }

    pub fn leading_exponent(&self) -> Option<u32> {
        self.terms.first().map(|&(e, _)| e)
    }

    /// Ordinal sum: the terms of `self` below the leading exponent of `other` are absorbed.
    pub fn add(&self, other: &OrdinalCnf) -> OrdinalCnf {
        let Some(&(lead, c)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(u32, u64)> = self.terms.iter().copied().take_while(|&(e, _)| e > lead).collect();
        let same = self.terms.iter().find(|&&(e, _)| e == lead).map_or(0, |&(_, c)| c);
        terms.push((lead, same + c));
        terms.extend(other.terms.iter().skip(1).copied());
        OrdinalCnf { terms }
    }

    /// Limit ordinals of `[0, α]` form a copy of `[1, β]`; returns `β`, or
    /// `None` when `α` is finite.
    pub fn cb_derivative(&self) -> Option<OrdinalCnf> {
        if self.is_finite() {
            return None;
        }
        let terms = self.terms.iter().filter(|&&(e, _)| e > 0).map(|&(e, c)| (e - 1, c)).collect();
        Some(OrdinalCnf { terms })
    }

    /// Least `n` with the `n`-fold derivative of `[0, α]` empty.
    pub fn cb_rank(&self) -> usize {
        let mut rank = 1;
        let mut cur = self.clone();
        while let Some(next) = cur.cb_derivative() {
            rank += 1;
            cur = next;
        }
        rank
    }
}

impl Ord for OrdinalCnf {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            match a.0.cmp(&b.0).then(a.1.cmp(&b.1)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for OrdinalCnf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OrdinalCnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&(e, c)| match (e, c) {
                (0, c) => c.to_string(),
                (1, 1) => "w".into(),
                (1, c) => format!("w*{c}"),
                (e, 1) => format!("w^{e}"),
                (e, c) => format!("w^{e}*{c}"),
            })
            .collect();
        f.write_str(&parts.join("+"))
    }
}

/// Grammar: terms `w^E*C`, `w^E`, `w*C`, `w` or `C` joined by `+`.
impl FromStr for OrdinalCnf {
    type Err = ScatterError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| ScatterError::OrdinalParse { input: input.into(), reason: reason.into() };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty"));
        }
        let num = |t: &str, what: &str| t.parse::<u64>().map_err(|_| err(&format!("bad {what} `{t}`")));
        let mut terms = Vec::new();
        for term in s.split('+') {
            let (base, coeff) = match term.split_once('*') {
                Some((b, c)) => (b, num(c, "coefficient")?),
                None => (term, 1),
            };
            let exponent = if let Some(rest) = base.strip_prefix('w') {
                match rest.strip_prefix('^') {
                    Some(e) => u32::try_from(num(e, "exponent")?).map_err(|_| err("exponent too large"))?,
                    None if rest.is_empty() => 1,
                    None => return Err(err(&format!("bad term `{term}`"))),
                }
            } else if term.contains('*') {
                return Err(err(&format!("bad term `{term}`")));
            } else {
                terms.push((0, num(base, "constant")?));
                continue;
            };
            terms.push((exponent, coeff));
        }
        OrdinalCnf::from_terms(&terms)
    }
}

impl Serialize for OrdinalCnf {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The chain `K_q = Z ∪ {x_r | r ≤ q}` inside a finite truncation of `[0, ω]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KqChain {
    pub space: FinTop,
    /// Rational labels of the isolated points, increasing.
    pub labels: Vec<Rational>,
    /// Index of the limit point.
    pub limit: usize,
    pub cuts: Vec<Rational>,
    pub members: Vec<u64>,
}

/// `m` isolated points labelled `i/(m+1)` plus one limit point, with `K_q`
/// for the `n` cuts `q = j/(n+1)`.
pub fn kq_chain_witness(m: usize, n: usize) -> Result<KqChain, ScatterError> {
    if n < 2 || m < n || m >= MAX_POINTS {
        return Err(ScatterError::BadParameters(format!("need 2 ≤ n ≤ m < 64, got m={m}, n={n}")));
    }
    let den = m as i64 + 1;
    let labels: Vec<Rational> = (1..=m as i64).map(|i| rat(i, den)).collect();
    let limit = m;
    let mut names: Vec<String> = labels.iter().map(ToString::to_string).collect();
    names.push("ω".into());
    let full = full_mask(m + 1);
    // Neighbourhoods of the limit point are cofinite; in the truncation that leaves only the whole space.
    let opens = (0..(1u64 << m)).chain([full]);
    let space = FinTop::new(names, opens)?;
    let cuts: Vec<Rational> = (1..=n as i64).map(|j| rat(j, n as i64 + 1)).collect();
    let members = cuts
        .iter()
        .map(|q| labels.iter().enumerate().filter(|(_, r)| *r <= q).fold(1u64 << limit, |acc, (i, _)| acc | (1 << i)))
        .collect();
    Ok(KqChain { space, labels, limit, cuts, members })
}

impl KqChain {
    pub fn sizes(&self) -> Vec<u32> {
        self.members.iter().map(|m| m.count_ones()).collect()
    }

    pub fn all_closed(&self) -> bool {
        self.members.iter().all(|&k| self.space.is_closed(k))
    }

    pub fn strictly_increasing(&self) -> bool {
        self.members.windows(2).all(|w| w[0] & !w[1] == 0 && w[0] != w[1])
    }

    /// `K ↦ C_K` through `Δ ∪ K²` reverses inclusion: larger `K`, coarser relation, smaller subalgebra.
    pub fn dual_reverses_order(&self) -> Result<bool, ScatterError> {
        let n = self.space.len();
        let rels = self
            .members
            .iter()
            .map(|&k| collapse(n, &members(k).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(rels.windows(2).all(|w| w[0].refines(&w[1]) && w[0] != w[1]))
    }
}
