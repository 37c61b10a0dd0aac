//! Finite orthomodular posets and their Boolean subalgebras.
//!
//! Subsets of an OMP are `u64` masks, so at most 64 elements are supported.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::order::{FinPoset, OrderError};
use crate::staralg::{c_lattice, generated_algebra, minimal_projections, Matrix, StarAlgError, StarAlgebra};

/// Largest OMP whose subsets fit in a mask.
pub const MAX_OMP: usize = 64;
/// Largest spectrum accepted by [`verify_caf_iso`].
pub const MAX_CAF_SPECTRUM: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrthoError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    StarAlg(#[from] StarAlgError),
    #[error("bad orthocomplement table: {0}")]
    BadOrtho(String),
    #[error("poset has no bottom or no top")]
    NotBounded,
    #[error("axiom {axiom} violated at {witness:?}")]
    AxiomViolated { axiom: Axiom, witness: Vec<usize> },
    #[error("{size} elements exceed the limit {limit}")]
    SizeLimit { size: usize, limit: usize },
    #[error("not a Boolean algebra: {0}")]
    NotBoolean(String),
    #[error("algebra is not commutative")]
    NotCommutative,
    #[error("isomorphism check failed: {0}")]
    IsoFailure(String),
}

/// The five orthomodular poset axioms, in checking order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axiom {
    /// `p⊥⊥ = p`
    Involution,
    /// `p ≤ q ⇒ q⊥ ≤ p⊥`
    Antitone,
    /// `p ∨ p⊥ = 1`
    Complement,
    /// `p ≤ q⊥ ⇒ p ∨ q exists`
    OrthogonalJoin,
    /// `p ≥ q⊥` and `p ∧ q = 0` imply `p = q⊥`
    Orthomodular,
}

impl Axiom {
    pub fn number(self) -> usize {
        self as usize + 1
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::Involution => "involution",
            Axiom::Antitone => "antitone",
            Axiom::Complement => "complement",
            Axiom::OrthogonalJoin => "orthogonal-join",
            Axiom::Orthomodular => "orthomodular",
        };
        write!(f, "A{} ({name})", self.number())
    }
}

/// A failed axiom instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

impl Violation {
    /// Re-evaluates the axiom at the witness from scratch.
    pub fn recheck(&self, p: &FinPoset, ortho: &[usize]) -> bool {
        let (zero, one) = match (p.bottom(), p.top()) {
            (Some(z), Some(o)) => (z, o),
            _ => return false,
        };
        match (self.axiom, self.witness.as_slice()) {
            (Axiom::Involution, &[a]) => ortho[ortho[a]] != a,
            (Axiom::Antitone, &[a, b]) => p.leq(a, b) && !p.leq(ortho[b], ortho[a]),
            (Axiom::Complement, &[a]) => p.join(a, ortho[a]) != Some(one),
            (Axiom::OrthogonalJoin, &[a, b]) => p.leq(a, ortho[b]) && p.join(a, b).is_none(),
            (Axiom::Orthomodular, &[a, b]) => {
                p.leq(ortho[b], a) && p.meet(a, b) == Some(zero) && a != ortho[b]
            }
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmpJson {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub ortho: Vec<usize>,
}

/// Finite orthomodular poset.
#[derive(Clone, Debug)]
pub struct Omp {
    poset: FinPoset,
    ortho: Vec<usize>,
    zero: usize,
    one: usize,
    join: Vec<Vec<Option<usize>>>,
    meet: Vec<Vec<Option<usize>>>,
}

fn check_tables(p: &FinPoset, ortho: &[usize]) -> Result<(usize, usize), OrthoError> {
    let n = p.len();
    if n > MAX_OMP {
        return Err(OrthoError::SizeLimit { size: n, limit: MAX_OMP });
    }
    if ortho.len() != n {
        return Err(OrthoError::BadOrtho(format!("{} entries for {n} elements", ortho.len())));
    }
    if let Some(&bad) = ortho.iter().find(|&&x| x >= n) {
        return Err(OrthoError::BadOrtho(format!("entry {bad} is not an element")));
    }
    match (p.bottom(), p.top()) {
        (Some(z), Some(o)) => Ok((z, o)),
        _ => Err(OrthoError::NotBounded),
    }
}

/// Every axiom failure, grouped by axiom in checking order.
pub fn violations(p: &FinPoset, ortho: &[usize]) -> Result<Vec<Violation>, OrthoError> {
    let (zero, one) = check_tables(p, ortho)?;
    let n = p.len();
    let mut out = Vec::new();
    let mut push = |axiom, witness| out.push(Violation { axiom, witness });
    for a in 0..n {
        if ortho[ortho[a]] != a {
            push(Axiom::Involution, vec![a]);
        }
    }
    for a in 0..n {
        for b in 0..n {
            if p.leq(a, b) && !p.leq(ortho[b], ortho[a]) {
                push(Axiom::Antitone, vec![a, b]);
            }
        }
    }
    for a in 0..n {
        if p.join(a, ortho[a]) != Some(one) {
            push(Axiom::Complement, vec![a]);
        }
    }
    for a in 0..n {
        for b in 0..n {
            if p.leq(a, ortho[b]) && p.join(a, b).is_none() {
                push(Axiom::OrthogonalJoin, vec![a, b]);
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if p.leq(ortho[b], a) && p.meet(a, b) == Some(zero) && a != ortho[b] {
                push(Axiom::Orthomodular, vec![a, b]);
            }
        }
    }
    Ok(out)
}

/// Accepts the tables iff all five axioms hold; reports the first failure otherwise.
pub fn validate_omp(p: FinPoset, ortho: Vec<usize>) -> Result<Omp, OrthoError> {
    let (zero, one) = check_tables(&p, &ortho)?;
    if let Some(v) = violations(&p, &ortho)?.into_iter().next() {
        return Err(OrthoError::AxiomViolated { axiom: v.axiom, witness: v.witness });
    }
    let n = p.len();
    let join = (0..n).map(|a| (0..n).map(|b| p.join(a, b)).collect()).collect();
    let meet = (0..n).map(|a| (0..n).map(|b| p.meet(a, b)).collect()).collect();
    Ok(Omp { poset: p, ortho, zero, one, join, meet })
}

impl Omp {
    pub fn from_json(json: OmpJson) -> Result<Omp, OrthoError> {
        let p = FinPoset::new(json.elements, json.leq)?;
        validate_omp(p, json.ortho)
    }

    pub fn to_json(&self) -> OmpJson {
        let pj = self.poset.to_json();
        OmpJson { elements: pj.elements, leq: pj.leq, ortho: self.ortho.clone() }
    }

    /// The power set of a `k`-set with complement.
    pub fn boolean(k: usize) -> Result<Omp, OrthoError> {
        if k > 6 {
            return Err(OrthoError::SizeLimit { size: 1 << k, limit: MAX_OMP });
        }
        let n = 1usize << k;
        let labels = (0..n)
            .map(|m| {
                let items: Vec<String> = (0..k).filter(|i| m & (1 << i) != 0).map(|i| i.to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        let p = FinPoset::from_fn(labels, |a, b| a & !b == 0)?;
        validate_omp(p, (0..n).map(|m| (n - 1) ^ m).collect())
    }

    /// `MO_n`: `0`, `1` and `n` incomparable pairs `a_i`, `a_i⊥`.
    pub fn mo(n: usize) -> Result<Omp, OrthoError> {
        let (p, ortho) = mo_tables(n)?;
        validate_omp(p, ortho)
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn ortho(&self, a: usize) -> usize {
        self.ortho[a]
    }

    pub fn ortho_table(&self) -> &[usize] {
        &self.ortho
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    /// Join if it exists in the poset.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.join[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.meet[a][b]
    }

    pub fn mask_label(&self, mask: u64) -> String {
        let items: Vec<&str> = (0..self.len()).filter(|&i| mask & (1 << i) != 0).map(|i| self.poset.label(i)).collect();
        format!("{{{}}}", items.join(","))
    }

    /// Closes `mask` under `⊥`, joins and meets; `None` when some pair lacks a join or meet.
    fn close(&self, mask: u64) -> Option<u64> {
        let n = self.len();
        let mut cur = mask | (1 << self.zero) | (1 << self.one);
        loop {
            let members: Vec<usize> = (0..n).filter(|&i| cur & (1 << i) != 0).collect();
            let mut next = cur;
            for &a in &members {
                next |= 1 << self.ortho[a];
                for &b in &members {
                    next |= 1 << self.join(a, b)?;
                    next |= 1 << self.meet(a, b)?;
                }
            }
            if next == cur {
                return Some(cur);
            }
            cur = next;
        }
    }

    fn is_distributive_on(&self, mask: u64) -> bool {
        let members: Vec<usize> = (0..self.len()).filter(|&i| mask & (1 << i) != 0).collect();
        let ops = |a: usize, b: usize| (self.join(a, b), self.meet(a, b));
        members.iter().all(|&x| {
            members.iter().all(|&y| {
                members.iter().all(|&z| {
                    let lhs = ops(y, z).0.and_then(|yz| self.meet(x, yz));
                    let rhs = match (ops(x, y).1, ops(x, z).1) {
                        (Some(xy), Some(xz)) => self.join(xy, xz),
                        _ => None,
                    };
                    lhs.is_some() && lhs == rhs
                })
            })
        })
    }

    /// `mask` contains 0, 1, is `⊥`-closed, closed under existing pairwise joins
    /// and meets (all of which must exist), and distributive.
    pub fn is_boolean_subalgebra(&self, mask: u64) -> bool {
        self.close(mask) == Some(mask) && self.is_distributive_on(mask)
    }

    /// Whether the whole OMP is a Boolean algebra.
    pub fn is_boolean(&self) -> bool {
        let full = if self.len() == 64 { u64::MAX } else { (1u64 << self.len()) - 1 };
        self.is_boolean_subalgebra(full)
    }
}

fn mo_tables(n: usize) -> Result<(FinPoset, Vec<usize>), OrthoError> {
    let size = 2 * n + 2;
    let mut labels = vec!["0".to_string(), "1".to_string()];
    for i in 0..n {
        labels.push(format!("a{i}"));
        labels.push(format!("a{i}'"));
    }
    let p = FinPoset::from_fn(labels, |a, b| a == b || a == 0 || b == 1)?;
    let mut ortho = vec![1, 0];
    for i in 0..n {
        ortho.push(3 + 2 * i);
        ortho.push(2 + 2 * i);
    }
    debug_assert_eq!(ortho.len(), size);
    Ok((p, ortho))
}

/// A table pair that differs from a valid OMP in exactly one table, with the
/// axiom it is expected to break first.
#[derive(Clone, Debug)]
pub struct MutationFixture {
    pub name: &'static str,
    pub poset: FinPoset,
    pub ortho: Vec<usize>,
    pub expected: Axiom,
    pub expected_witness: Vec<usize>,
}

fn with_extra_leq(p: &FinPoset, extra: &[(usize, usize)], removed: &[(usize, usize)]) -> Result<FinPoset, OrthoError> {
    let n = p.len();
    let mut leq: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| p.leq(a, b)).collect()).collect();
    for &(a, b) in extra {
        leq[a][b] = true;
    }
    for &(a, b) in removed {
        leq[a][b] = false;
    }
    Ok(FinPoset::new(p.labels().to_vec(), leq)?)
}

/// Single-table mutations, one per axiom.
pub fn mutation_fixtures() -> Result<Vec<MutationFixture>, OrthoError> {
    let mut out = Vec::new();

    // MO_2 with a⊥ redefined as a: a0' now maps to a0, whose image is a0 again.
    let (p, mut ortho) = mo_tables(2)?;
    ortho[2] = 2;
    out.push(MutationFixture { name: "mo2-self-orthogonal", poset: p, ortho, expected: Axiom::Involution, expected_witness: vec![3] });

    // 2^3 without {0} ≤ {0,1}.
    let b3 = Omp::boolean(3)?;
    let p = with_extra_leq(b3.poset(), &[], &[(0b001, 0b011)])?;
    out.push(MutationFixture {
        name: "boolean3-missing-cover",
        poset: p,
        ortho: b3.ortho_table().to_vec(),
        expected: Axiom::Antitone,
        expected_witness: vec![0b100, 0b110],
    });

    // 2^2 with the two atoms made comparable.
    let b2 = Omp::boolean(2)?;
    let p = with_extra_leq(b2.poset(), &[(0b01, 0b10)], &[])?;
    out.push(MutationFixture {
        name: "boolean2-atoms-comparable",
        poset: p,
        ortho: b2.ortho_table().to_vec(),
        expected: Axiom::Complement,
        expected_witness: vec![0b01],
    });

    // MO_4 where every pair of atoms except a2, a3 is orthogonal: a0 and a1
    // then have the two minimal upper bounds a2' and a3'.
    let (p, ortho) = mo_tables(4)?;
    let atom = |i: usize| 2 + 2 * i;
    let coatom = |i: usize| 3 + 2 * i;
    let mut extra = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            if i != j && !(i >= 2 && j >= 2) {
                extra.push((atom(i), coatom(j)));
            }
        }
    }
    let p = with_extra_leq(&p, &extra, &[])?;
    out.push(MutationFixture {
        name: "mo4-partial-orthogonality",
        poset: p,
        ortho,
        expected: Axiom::OrthogonalJoin,
        expected_witness: vec![atom(0), atom(1)],
    });

    // MO_2 with a0 ≤ a1 and a1' ≤ a0': the hexagon, an ortholattice that is not orthomodular.
    let (p, ortho) = mo_tables(2)?;
    let p = with_extra_leq(&p, &[(2, 4), (5, 3)], &[])?;
    out.push(MutationFixture {
        name: "mo2-hexagon",
        poset: p,
        ortho,
        expected: Axiom::Orthomodular,
        expected_witness: vec![3, 4],
    });
    Ok(out)
}

/// Boolean subalgebras of an OMP ordered by inclusion.
#[derive(Clone, Debug)]
pub struct BoolSubLattice {
    /// Masks sorted by size, then value; index 0 is `{0,1}`.
    pub subalgebras: Vec<u64>,
    pub poset: FinPoset,
}

impl BoolSubLattice {
    pub fn len(&self) -> usize {
        self.subalgebras.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subalgebras.is_empty()
    }

    pub fn index_of(&self, mask: u64) -> Option<usize> {
        self.subalgebras.iter().position(|&m| m == mask)
    }
}

/// Enumerates Boolean subalgebras by closing `B ∪ {x}` from `{0,1}` upwards.
pub fn boolean_subalgebras(p: &Omp) -> Result<BoolSubLattice, OrthoError> {
    let n = p.len();
    let seed = p.close(0).ok_or_else(|| OrthoError::NotBoolean("{0,1} is not closed".into()))?;
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let mut memo: HashMap<u64, Option<u64>> = HashMap::new();
    if p.is_distributive_on(seed) {
        seen.insert(seed);
        queue.push_back(seed);
    }
    while let Some(b) = queue.pop_front() {
        for x in (0..n).filter(|&x| b & (1 << x) == 0) {
            let grown = *memo.entry(b | (1 << x)).or_insert_with(|| p.close(b | (1 << x)));
            if let Some(c) = grown {
                if !seen.contains(&c) && p.is_distributive_on(c) {
                    seen.insert(c);
                    queue.push_back(c);
                }
            }
        }
    }
    let mut subalgebras: Vec<u64> = seen.into_iter().collect();
    subalgebras.sort_by_key(|&m| (m.count_ones(), m));
    let labels = subalgebras.iter().map(|&m| p.mask_label(m)).collect();
    let poset = FinPoset::from_fn(labels, |i, j| subalgebras[i] & !subalgebras[j] == 0)?;
    Ok(BoolSubLattice { subalgebras, poset })
}

/// Maximal Boolean subalgebras.
pub fn blocks(p: &Omp) -> Result<Vec<u64>, OrthoError> {
    let lat = boolean_subalgebras(p)?;
    Ok((0..lat.len()).filter(|&i| lat.poset.up(i).count_ones(..) == 1).map(|i| lat.subalgebras[i]).collect())
}

/// Atoms of a finite Boolean algebra as points of a discrete space, with each
/// element sent to the clopen set of atoms below it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StoneSpace {
    pub points: Vec<usize>,
    /// `clopen[e]` is the mask over `points` of atoms below element `e`.
    pub clopen: Vec<u64>,
}

pub fn stone_space(b: &Omp) -> Result<StoneSpace, OrthoError> {
    if !b.is_boolean() {
        return Err(OrthoError::NotBoolean("not a distributive lattice".into()));
    }
    let points = b.poset().atoms();
    let clopen: Vec<u64> = (0..b.len())
        .map(|e| points.iter().enumerate().filter(|&(_, &a)| b.poset().leq(a, e)).fold(0u64, |m, (i, _)| m | (1 << i)))
        .collect();
    let distinct: BTreeSet<u64> = clopen.iter().copied().collect();
    if points.len() >= 64 || distinct.len() != 1usize << points.len() {
        return Err(OrthoError::NotBoolean("elements do not match subsets of atoms".into()));
    }
    Ok(StoneSpace { points, clopen })
}

impl StoneSpace {
    /// Every subset of a finite discrete space is clopen; returns their count.
    pub fn clopen_count(&self) -> usize {
        1 << self.points.len()
    }
}

/// Node-by-node comparison of subalgebras with Boolean subalgebras of projections.
#[derive(Clone, Debug, Serialize)]
pub struct CafIsoReport {
    pub spectrum: usize,
    pub subalgebras: usize,
    pub boolean_subalgebras: usize,
    /// `(subalgebra label, Boolean subalgebra label)` for each node.
    pub correspondence: Vec<(String, String)>,
}

/// The projections of `A` as an OMP: `p ≤ q` iff `p = pq`, `p⊥ = I − p`.
pub fn projection_omp(a: &StarAlgebra) -> Result<(Omp, Vec<Matrix>), OrthoError> {
    if !a.is_commutative() {
        return Err(OrthoError::NotCommutative);
    }
    let minimal = minimal_projections(a)?;
    let k = minimal.len();
    if k > MAX_CAF_SPECTRUM {
        return Err(OrthoError::SizeLimit { size: k, limit: MAX_CAF_SPECTRUM });
    }
    let n = a.ambient();
    let projections: Vec<Matrix> = (0..(1usize << k))
        .map(|m| (0..k).filter(|j| m & (1 << j) != 0).fold(Matrix::zero(n), |acc, j| acc.add(&minimal[j])))
        .collect();
    let labels = projections.iter().map(Matrix::short_label).collect();
    let p = FinPoset::from_fn(labels, |i, j| projections[i].mul(&projections[j]) == projections[i])?;
    let id = Matrix::identity(n);
    let ortho = projections
        .iter()
        .map(|q| {
            let c = id.sub(q);
            projections.iter().position(|r| *r == c).ok_or_else(|| OrthoError::BadOrtho("I − p is missing".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((validate_omp(p, ortho)?, projections))
}

/// Checks that `C ↦ Proj(C)` is an order isomorphism from the subalgebras of a
/// commutative algebra onto the Boolean subalgebras of its projections, and
/// that each `C` is generated by `Proj(C)`.
pub fn verify_caf_iso(a: &StarAlgebra) -> Result<CafIsoReport, OrthoError> {
    let (omp, projections) = projection_omp(a)?;
    let bsubs = boolean_subalgebras(&omp)?;
    let lat = c_lattice(a)?;
    let fail = |msg: String| Err(OrthoError::IsoFailure(msg));

    let mut map = Vec::with_capacity(lat.len());
    for (i, node) in lat.nodes.iter().enumerate() {
        let mask = projections
            .iter()
            .enumerate()
            .filter(|(_, q)| node.algebra.contains(q))
            .fold(0u64, |m, (j, _)| m | (1 << j));
        let Some(target) = bsubs.index_of(mask) else {
            return fail(format!("Proj of node {i} is not a Boolean subalgebra"));
        };
        let gens: Vec<Matrix> = (0..projections.len()).filter(|j| mask & (1 << j) != 0).map(|j| projections[j].clone()).collect();
        if generated_algebra(a.ambient(), &gens)? != node.algebra {
            return fail(format!("node {i} is not generated by its projections"));
        }
        map.push(target);
    }
    let distinct: BTreeSet<usize> = map.iter().copied().collect();
    if distinct.len() != map.len() || map.len() != bsubs.len() {
        return fail(format!("{} subalgebras against {} Boolean subalgebras", map.len(), bsubs.len()));
    }
    if !lat.poset.is_isomorphism(&bsubs.poset, &map) {
        return fail("order is not preserved in both directions".into());
    }
    let correspondence = lat
        .nodes
        .iter()
        .zip(&map)
        .map(|(node, &t)| (node.partition.to_string(), bsubs.poset.label(t).to_string()))
        .collect();
    Ok(CafIsoReport {
        spectrum: projections.len().trailing_zeros() as usize,
        subalgebras: lat.len(),
        boolean_subalgebras: bsubs.len(),
        correspondence,
    })
}
