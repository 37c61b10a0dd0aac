//! Closed equivalence relations on `[0,1]` made of finitely many square blocks,
//! and the triadic relations `R` and `S_n` whose joins show that binary meets
//! need not distribute over directed joins in the lattice of closed
//! equivalence relations on the interval.
//!
//! A [`TriRel`] denotes `Δ ∪ ⋃ [l,u]²` over its blocks. All endpoints are exact
//! rationals; touching blocks share a point and therefore merge under join.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::partitions::EqRel;

pub type Rational = BigRational;

/// Deepest `R_d` / `S_n` the generators will build.
pub const MAX_DEPTH: usize = 10;
/// Finest grid `{k/3^m}` accepted by [`sample_to_grid`].
pub const MAX_GRID: u32 = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CantorError {
    #[error("depth {depth} exceeds the maximum {max}")]
    DepthLimit { depth: usize, max: usize },
    #[error("invalid block list: {0}")]
    InvalidBlocks(String),
    #[error("endpoint {0} does not lie on the sampling grid")]
    GridTooCoarse(String),
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn third() -> Rational {
    rat(1, 3)
}

/// `3^(-n)`.
pub fn triadic_width(n: usize) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(3), n))
}

/// A finite binary string addressing a stage of the construction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Address(pub Vec<bool>);

impl Address {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, bit: bool) -> Address {
        let mut v = self.0.clone();
        v.push(bit);
        Address(v)
    }

    /// All addresses of length exactly `n`, in lexicographic order.
    pub fn all_of_length(n: usize) -> Vec<Address> {
        (0..(1usize << n))
            .map(|code| Address((0..n).rev().map(|i| code & (1 << i) != 0).collect()))
            .collect()
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Address {
    type Err = CantorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "ε" || s.is_empty() {
            return Ok(Address::default());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(CantorError::BadParameters(format!("`{other}` is not a binary digit"))),
            })
            .collect::<Result<_, _>>()
            .map(Address)
    }
}

/// The four endpoints `a < b < c < d` attached to an address.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Stage {
    pub fn root() -> Stage {
        Stage { a: Rational::zero(), b: rat(1, 3), c: rat(2, 3), d: Rational::one() }
    }

    /// Stage `σ0` (left, inside `[a,b]`) or `σ1` (right, inside `[c,d]`).
    pub fn child(&self, right: bool) -> Stage {
        let (lo, hi) = if right { (&self.c, &self.d) } else { (&self.a, &self.b) };
        let step = (hi - lo) * third();
        Stage { a: lo.clone(), b: lo + &step, c: hi - &step, d: hi.clone() }
    }
}

pub fn stage_intervals(address: &Address) -> Stage {
    address.0.iter().fold(Stage::root(), |s, &bit| s.child(bit))
}

/// Stages for every address of length at most `depth`, by length then lexicographically.
fn stages_up_to(depth: usize) -> Vec<(Address, Stage)> {
    let mut out = vec![(Address::default(), Stage::root())];
    let mut level = 0;
    let mut start = 0;
    while level < depth {
        let end = out.len();
        for i in start..end {
            let (addr, stage) = out[i].clone();
            out.push((addr.child(false), stage.child(false)));
            out.push((addr.child(true), stage.child(true)));
        }
        start = end;
        level += 1;
    }
    out
}

/// A closed interval `[lo, hi]` with `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub lo: Rational,
    pub hi: Rational,
}

impl Block {
    pub fn new(lo: Rational, hi: Rational) -> Block {
        Block { lo, hi }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_block(&self, other: &Block) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

/// `Δ ∪ ⋃ block²` for sorted, pairwise disjoint, non-touching blocks in `[0,1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TriRel {
    blocks: Vec<Block>,
}

impl TriRel {
    /// The diagonal, with no blocks.
    pub fn diagonal() -> TriRel {
        TriRel::default()
    }

    /// `[0,1]²`.
    pub fn full() -> TriRel {
        TriRel { blocks: vec![Block::new(Rational::zero(), Rational::one())] }
    }

    /// Validates and sorts a block list.
    pub fn from_blocks(mut blocks: Vec<Block>) -> Result<TriRel, CantorError> {
        blocks.sort_by(|x, y| x.lo.cmp(&y.lo));
        for b in &blocks {
            if b.lo >= b.hi {
                return Err(CantorError::InvalidBlocks(format!("[{}, {}] is degenerate", b.lo, b.hi)));
            }
            if b.lo.is_negative() || b.hi > Rational::one() {
                return Err(CantorError::InvalidBlocks(format!("[{}, {}] leaves [0,1]", b.lo, b.hi)));
            }
        }
        for pair in blocks.windows(2) {
            if pair[1].lo <= pair[0].hi {
                return Err(CantorError::InvalidBlocks(format!(
                    "[{}, {}] and [{}, {}] intersect",
                    pair[0].lo, pair[0].hi, pair[1].lo, pair[1].hi
                )));
            }
        }
        Ok(TriRel { blocks })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block_containing(&self, x: &Rational) -> Option<&Block> {
        let idx = self.blocks.partition_point(|b| &b.hi < x);
        self.blocks.get(idx).filter(|b| b.contains(x))
    }

    /// Whether `(x, y)` belongs to the relation.
    pub fn relates(&self, x: &Rational, y: &Rational) -> bool {
        x == y || self.block_containing(x).is_some_and(|b| b.contains(y))
    }

    /// `self ⊆ other` as subsets of `[0,1]²`.
    pub fn is_subrelation(&self, other: &TriRel) -> bool {
        self.blocks
            .iter()
            .all(|b| other.block_containing(&b.lo).is_some_and(|o| o.contains_block(b)))
    }

    /// Transitive closure of the union: overlapping or touching blocks merge.
    pub fn join(&self, other: &TriRel) -> TriRel {
        let mut all: Vec<&Block> = self.blocks.iter().chain(&other.blocks).collect();
        all.sort_by(|x, y| x.lo.cmp(&y.lo));
        let mut merged: Vec<Block> = Vec::new();
        for b in all {
            match merged.last_mut() {
                Some(last) if b.lo <= last.hi => {
                    if b.hi > last.hi {
                        last.hi = b.hi.clone();
                    }
                }
                _ => merged.push(b.clone()),
            }
        }
        TriRel { blocks: merged }
    }

    /// Intersection; degenerate overlaps collapse into the diagonal.
    pub fn meet(&self, other: &TriRel) -> TriRel {
        let mut out = Vec::new();
        for x in &self.blocks {
            for y in &other.blocks {
                let lo = (&x.lo).max(&y.lo);
                let hi = (&x.hi).min(&y.hi);
                if lo < hi {
                    out.push(Block::new(lo.clone(), hi.clone()));
                }
            }
        }
        out.sort_by(|x, y| x.lo.cmp(&y.lo));
        TriRel { blocks: out }
    }

    /// Largest block length, zero for the diagonal.
    pub fn max_offdiag_width(&self) -> Rational {
        self.blocks.iter().map(Block::width).max().unwrap_or_else(Rational::zero)
    }

    pub fn is_full(&self) -> bool {
        self.blocks.len() == 1 && self.blocks[0].lo.is_zero() && self.blocks[0].hi.is_one()
    }
}

impl Serialize for TriRel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[String; 2]> =
            self.blocks.iter().map(|b| [b.lo.to_string(), b.hi.to_string()]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TriRel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let pairs: Vec<[String; 2]> = Vec::deserialize(d)?;
        let parse = |s: &str| Rational::from_str(s).map_err(|e| D::Error::custom(format!("`{s}`: {e}")));
        let blocks = pairs
            .iter()
            .map(|[l, u]| Ok(Block::new(parse(l)?, parse(u)?)))
            .collect::<Result<Vec<_>, D::Error>>()?;
        TriRel::from_blocks(blocks).map_err(D::Error::custom)
    }
}

fn check_depth(depth: usize) -> Result<(), CantorError> {
    if depth > MAX_DEPTH {
        Err(CantorError::DepthLimit { depth, max: MAX_DEPTH })
    } else {
        Ok(())
    }
}

/// `R_d`: the middle blocks `[b_σ, c_σ]` for every `|σ| ≤ d`.
pub fn relation_r(depth: usize) -> Result<TriRel, CantorError> {
    check_depth(depth)?;
    let blocks = stages_up_to(depth).into_iter().map(|(_, s)| Block::new(s.b, s.c)).collect();
    // Middle blocks never meet, so R is transitive in block form.
    TriRel::from_blocks(blocks).map_err(|e| CantorError::AssertionFailed(format!("R_{depth}: {e}")))
}

/// `S_n`: the outer blocks `[a_σ, d_σ]` for every `|σ| = n`.
pub fn relation_s(n: usize) -> Result<TriRel, CantorError> {
    check_depth(n)?;
    let blocks = Address::all_of_length(n)
        .iter()
        .map(|addr| {
            let s = stage_intervals(addr);
            Block::new(s.a, s.d)
        })
        .collect();
    TriRel::from_blocks(blocks).map_err(|e| CantorError::AssertionFailed(format!("S_{n}: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub depth: usize,
    pub r_blocks: usize,
    pub checks: Vec<Check>,
}

impl CounterexampleReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn require(checks: &mut Vec<Check>, name: String, pass: bool, witness: String) -> Result<(), CantorError> {
    if !pass {
        return Err(CantorError::AssertionFailed(format!("{name}: {witness}")));
    }
    checks.push(Check { name, pass, witness });
    Ok(())
}

/// Verifies, for the truncation `R_d`:
/// `R_d ∨ S_n` is full for `1 ≤ n ≤ d`; `R_d ∨ Δ = R_d` is not full;
/// `S_n` shrinks to the diagonal with width `3^(-n)`; and for every `|σ| < d`
/// the chain `a_σ S b_σ0 R c_σ0 S d_σ0 = b_σ R c_σ = a_σ1 S b_σ1 R c_σ1 S d_σ1`
/// links `a_σ` to `d_σ` inside `R_d ∨ S_{|σ|+1}`.
pub fn verify_counterexample(depth: usize) -> Result<CounterexampleReport, CantorError> {
    check_depth(depth)?;
    let r = relation_r(depth)?;
    let s: Vec<TriRel> = (0..=depth + 1).map(|n| relation_s(n.min(MAX_DEPTH))).collect::<Result<_, _>>()?;
    let mut checks = Vec::new();

    for (n, s_n) in s.iter().enumerate().take(depth + 1).skip(1) {
        let joined = r.join(s_n);
        let witness = format!("R_{depth} ∨ S_{n} has {} block(s)", joined.blocks().len());
        require(&mut checks, format!("join_full_s{n}"), joined.is_full(), witness)?;
    }

    let with_diag = r.join(&TriRel::diagonal());
    require(
        &mut checks,
        "join_diagonal_identity".into(),
        with_diag == r,
        format!("R_{depth} ∨ Δ has {} blocks", with_diag.blocks().len()),
    )?;
    require(
        &mut checks,
        "r_not_full".into(),
        !r.is_full(),
        format!("R_{depth} has {} blocks, widest {}", r.blocks().len(), r.max_offdiag_width()),
    )?;

    for (n, s_n) in s.iter().enumerate().take(depth + 1).skip(1) {
        let width = s_n.max_offdiag_width();
        let expected = triadic_width(n);
        require(&mut checks, format!("width_s{n}"), width == expected, format!("{width}"))?;
        let next = &s[n + 1];
        if n < depth {
            require(
                &mut checks,
                format!("nested_s{}", n + 1),
                next.is_subrelation(s_n),
                format!("S_{} ⊆ S_{n}", n + 1),
            )?;
        }
    }

    for len in 0..depth {
        let s_next = &s[len + 1];
        let joined = r.join(s_next);
        for addr in Address::all_of_length(len) {
            let witness = transitivity_chain(&addr, &r, s_next, &joined)?;
            require(&mut checks, format!("chain_{addr}"), true, witness)?;
        }
    }

    Ok(CounterexampleReport { depth, r_blocks: r.blocks().len(), checks })
}

/// Checks every link of the chain from `a_σ` to `d_σ`, returning it rendered.
fn transitivity_chain(
    addr: &Address,
    r: &TriRel,
    s_next: &TriRel,
    joined: &TriRel,
) -> Result<String, CantorError> {
    let parent = stage_intervals(addr);
    let left = parent.child(false);
    let right = parent.child(true);
    let fail = |what: String| CantorError::AssertionFailed(format!("chain for σ={addr}: {what}"));

    let equalities = [
        (&parent.a, &left.a, "a_σ = a_σ0"),
        (&left.d, &parent.b, "d_σ0 = b_σ"),
        (&parent.c, &right.a, "c_σ = a_σ1"),
        (&right.d, &parent.d, "d_σ1 = d_σ"),
    ];
    for (x, y, name) in equalities {
        if x != y {
            return Err(fail(format!("{name} fails ({x} vs {y})")));
        }
    }

    // (from, relation name, to)
    let links: [(&Rational, &str, &Rational); 7] = [
        (&left.a, "S", &left.b),
        (&left.b, "R", &left.c),
        (&left.c, "S", &left.d),
        (&parent.b, "R", &parent.c),
        (&right.a, "S", &right.b),
        (&right.b, "R", &right.c),
        (&right.c, "S", &right.d),
    ];
    let mut rendered = parent.a.to_string();
    for (x, name, y) in links {
        let rel = if name == "R" { r } else { s_next };
        if !rel.relates(x, y) {
            return Err(fail(format!("({x}, {y}) not in {name}")));
        }
        rendered.push_str(&format!(" {name} {y}"));
    }
    if !joined.relates(&parent.a, &parent.d) {
        return Err(fail(format!("({}, {}) missing from the computed join", parent.a, parent.d)));
    }
    Ok(rendered)
}

/// Restriction of `rel` to the grid `{ k/3^m | 0 ≤ k ≤ 3^m }` as a partition of
/// `3^m + 1` points (point `k` is `k/3^m`).
pub fn sample_to_grid(rel: &TriRel, m: u32) -> Result<EqRel, CantorError> {
    if m > MAX_GRID {
        return Err(CantorError::BadParameters(format!("grid exponent {m} exceeds {MAX_GRID}")));
    }
    let scale = BigInt::from(3u32.pow(m));
    let to_index = |x: &Rational| -> Result<usize, CantorError> {
        let scaled = x * Rational::from_integer(scale.clone());
        if !scaled.is_integer() {
            return Err(CantorError::GridTooCoarse(x.to_string()));
        }
        usize::try_from(scaled.to_integer()).map_err(|_| CantorError::GridTooCoarse(x.to_string()))
    };
    let points = 3usize.pow(m) + 1;
    let mut labels: Vec<usize> = (0..points).collect();
    for b in rel.blocks() {
        let (lo, hi) = (to_index(&b.lo)?, to_index(&b.hi)?);
        for label in labels.iter_mut().take(hi + 1).skip(lo) {
            *label = lo;
        }
    }
    Ok(EqRel::from_labels(&labels))
}

/// Finite stage of the order-dense chain `x ↦ Δ ∪ [x,1]²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseChain {
    pub cuts: Vec<Rational>,
    pub relations: Vec<TriRel>,
}

/// `Δ ∪ [x,1]²`, the relation whose algebra is the functions constant on `[x,1]`.
pub fn tail_relation(x: &Rational) -> Result<TriRel, CantorError> {
    TriRel::from_blocks(vec![Block::new(x.clone(), Rational::one())])
}

/// The relations `Δ ∪ [i/(n+1), 1]²` for `i = 1..n`.
pub fn dense_chain_witness(n: usize) -> Result<DenseChain, CantorError> {
    if n < 2 {
        return Err(CantorError::BadParameters(format!("need at least 2 chain members, got {n}")));
    }
    let den = n as i64 + 1;
    let cuts: Vec<Rational> = (1..=n as i64).map(|i| rat(i, den)).collect();
    let relations = cuts.iter().map(tail_relation).collect::<Result<_, _>>()?;
    Ok(DenseChain { cuts, relations })
}

impl DenseChain {
    /// Each relation strictly contains the next one.
    pub fn is_strictly_decreasing(&self) -> bool {
        self.relations
            .windows(2)
            .all(|w| w[1].is_subrelation(&w[0]) && !w[0].is_subrelation(&w[1]))
    }

    /// The member cut at the midpoint between members `i` and `i + 1`.
    pub fn refine(&self, i: usize) -> Result<TriRel, CantorError> {
        let (x, y) = match (self.cuts.get(i), self.cuts.get(i + 1)) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(CantorError::BadParameters(format!("no consecutive pair at {i}"))),
        };
        tail_relation(&((x + y) / rat(2, 1)))
    }

    /// Whether `mid` lies strictly between members `i` and `i + 1`.
    pub fn strictly_between(&self, i: usize, mid: &TriRel) -> bool {
        let (outer, inner) = (&self.relations[i], &self.relations[i + 1]);
        mid.is_subrelation(outer)
            && inner.is_subrelation(mid)
            && mid != outer
            && mid != inner
    }
}
