//! Way-below relation, compact elements and the seven-property domain report.
//!
//! Two evaluation paths exist for everything that quantifies over directed
//! subsets. The definitional path enumerates every directed subset and is
//! capped at [`DEFINITIONAL_LIMIT`] elements. The principal path only uses the
//! singleton directed sets `{m}`: a finite directed set contains its own
//! supremum, so the two paths agree on every finite poset. The test suite
//! cross-validates them wherever both run.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{FinPoset, OrderError};

/// Largest poset on which directed subsets are enumerated exhaustively.
pub const DEFINITIONAL_LIMIT: usize = 15;

/// Largest poset on which `fin(C)` is enumerated over all subsets by default.
pub const DEFAULT_FIN_LIMIT: usize = 12;

/// Subset-size bound used for `fin(C)` on posets above [`DEFAULT_FIN_LIMIT`].
const DEFAULT_LARGE_FIN_BOUND: usize = 2;

const DENSE_CHAIN_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Path {
    /// All directed subsets enumerated.
    Definitional,
    /// Only principal directed sets `{m}`.
    Principal,
}

impl Path {
    pub fn for_size(n: usize) -> Path {
        if n <= DEFINITIONAL_LIMIT {
            Path::Definitional
        } else {
            Path::Principal
        }
    }
}

/// Precomputed approximation data for one poset: the directed sets used as
/// tests, and the way-below relation derived from them.
pub struct Approximation<'a> {
    poset: &'a FinPoset,
    path: Path,
    /// Directed sets paired with their supremum.
    directed: Vec<(FixedBitSet, usize)>,
    /// `way_below[c]` is `{ b | b ≪ c }`.
    way_below: Vec<FixedBitSet>,
}

impl<'a> Approximation<'a> {
    pub fn new(poset: &'a FinPoset) -> Self {
        Self::with_path(poset, Path::for_size(poset.len()))
            .expect("path chosen by size is always admissible")
    }

    pub fn with_path(poset: &'a FinPoset, path: Path) -> Result<Self, OrderError> {
        let n = poset.len();
        let directed = match path {
            Path::Definitional => {
                if n > DEFINITIONAL_LIMIT {
                    return Err(OrderError::SizeLimit { size: n, limit: DEFINITIONAL_LIMIT });
                }
                enumerate_directed(poset)
            }
            Path::Principal => (0..n)
                .map(|m| {
                    let mut s = FixedBitSet::with_capacity(n);
                    s.insert(m);
                    (s, m)
                })
                .collect(),
        };

        // b ≪ c iff every test set D with c ≤ ⋁D meets ↑b, i.e. b ∈ ↓D.
        let downs: Vec<FixedBitSet> =
            directed.iter().map(|(d, _)| poset.down_closure(d.ones())).collect();
        let mut way_below = vec![poset.full_set(); n];
        for ((_, sup), down) in directed.iter().zip(&downs) {
            for c in poset.down(*sup).ones() {
                way_below[c].intersect_with(down);
            }
        }
        Ok(Approximation { poset, path, directed, way_below })
    }

    pub fn path(&self) -> Path {
        self.path
    }

    pub fn poset(&self) -> &FinPoset {
        self.poset
    }

    pub fn way_below(&self, b: usize, c: usize) -> bool {
        self.way_below[c].contains(b)
    }

    /// `↡c`.
    pub fn approximants(&self, c: usize) -> &FixedBitSet {
        &self.way_below[c]
    }

    pub fn compact_elements(&self) -> Vec<usize> {
        (0..self.poset.len()).filter(|&c| self.way_below(c, c)).collect()
    }

    /// The test directed sets with their suprema.
    pub fn directed_sets(&self) -> &[(FixedBitSet, usize)] {
        &self.directed
    }

    /// Set-level `F ≪ c` for `F` given by its up-closure.
    pub fn set_way_below(&self, upset: &FixedBitSet, c: usize) -> bool {
        self.directed
            .iter()
            .filter(|(_, sup)| self.poset.leq(c, *sup))
            .all(|(d, _)| !d.is_disjoint(upset))
    }

    /// Set-level `F ≪ F`.
    pub fn set_way_below_self(&self, upset: &FixedBitSet) -> bool {
        self.directed
            .iter()
            .filter(|(_, sup)| upset.contains(*sup))
            .all(|(d, _)| !d.is_disjoint(upset))
    }
}

fn enumerate_directed(p: &FinPoset) -> Vec<(FixedBitSet, usize)> {
    let n = p.len();
    let up: Vec<u32> = (0..n).map(|i| p.up(i).ones().fold(0u32, |m, j| m | (1 << j))).collect();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let directed = members
            .iter()
            .all(|&x| members.iter().all(|&y| up[x] & up[y] & mask != 0));
        if !directed {
            continue;
        }
        // Finite posets are dcpos, so the supremum exists.
        let sup = p.lub(&members).expect("finite directed set has a supremum");
        let mut set = FixedBitSet::with_capacity(n);
        for &m in &members {
            set.insert(m);
        }
        out.push((set, sup));
    }
    out
}

fn check_pair(p: &FinPoset, b: usize, c: usize) -> Result<(), OrderError> {
    p.check_element(b)?;
    p.check_element(c)
}

/// `b ≪ c`, via the definitional path when the poset is small enough.
pub fn way_below(p: &FinPoset, b: usize, c: usize) -> Result<bool, OrderError> {
    check_pair(p, b, c)?;
    Ok(Approximation::new(p).way_below(b, c))
}

/// `b ≪ c` by enumerating every directed subset.
pub fn way_below_definitional(p: &FinPoset, b: usize, c: usize) -> Result<bool, OrderError> {
    check_pair(p, b, c)?;
    Ok(Approximation::with_path(p, Path::Definitional)?.way_below(b, c))
}

/// `b ≪ c` using principal directed sets only.
pub fn way_below_principal(p: &FinPoset, b: usize, c: usize) -> Result<bool, OrderError> {
    check_pair(p, b, c)?;
    Ok(p.up(c).ones().all(|m| p.leq(b, m)))
}

/// `{ c | c ≪ c }`.
pub fn compact_elements(p: &FinPoset) -> Vec<usize> {
    Approximation::new(p).compact_elements()
}

#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    /// Subset-size bound for `fin(C)`; `None` picks the default for the poset size.
    pub fin_bound: Option<usize>,
    /// Force an evaluation path instead of choosing by size.
    pub path: Option<Path>,
    /// Run the generic order-dense chain search instead of the covering-pair shortcut.
    pub generic_dense_chain: bool,
    /// Fail with `MeetNotDefined` instead of reporting meet-continuity as not applicable.
    pub require_meet_continuity: bool,
}

/// Why `fin(C)` (or `compfin(C)`) fails the quasi-continuity conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuasiFailure {
    Empty,
    NotDirected { first: Vec<usize>, second: Vec<usize> },
    NotSeparated { other: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "property", rename_all = "snake_case")]
pub enum Witness {
    NotAlgebraic { element: usize, compact_below: Vec<usize> },
    NotContinuous { element: usize, way_below: Vec<usize> },
    NotMeetContinuous { element: usize, directed: Vec<usize> },
    NotAtomistic { element: usize, atoms_below: Vec<usize> },
    NoBottom,
    NotQuasiContinuous { element: usize, bound: usize, failure: QuasiFailure },
    NotQuasiAlgebraic { element: usize, bound: usize, failure: QuasiFailure },
    DenseChain { chain: Vec<usize> },
}

impl Witness {
    /// Re-derives the violation from scratch; `true` if it is still one.
    pub fn recheck(&self, p: &FinPoset) -> bool {
        match self {
            Witness::NotAlgebraic { element, .. } => {
                let approx = Approximation::new(p);
                let below: Vec<usize> = approx
                    .compact_elements()
                    .into_iter()
                    .filter(|&k| p.leq(k, *element))
                    .collect();
                !approximates(p, &below, *element)
            }
            Witness::NotContinuous { element, .. } => {
                let approx = Approximation::new(p);
                let below: Vec<usize> = approx.approximants(*element).ones().collect();
                !approximates(p, &below, *element)
            }
            Witness::NotMeetContinuous { element, directed } => {
                if !p.is_directed(directed) {
                    return false;
                }
                let Some(sup) = p.lub(directed) else { return false };
                let lhs = p.meet(*element, sup);
                let parts: Option<Vec<usize>> =
                    directed.iter().map(|&d| p.meet(*element, d)).collect();
                match (lhs, parts) {
                    (Some(l), Some(parts)) => p.lub(&parts) != Some(l),
                    _ => false,
                }
            }
            Witness::NotAtomistic { element, .. } => {
                let below: Vec<usize> =
                    p.atoms().into_iter().filter(|&a| p.leq(a, *element)).collect();
                p.bottom().is_some() && p.lub(&below) != Some(*element)
            }
            Witness::NoBottom => p.bottom().is_none(),
            Witness::NotQuasiContinuous { element, bound, failure } => {
                let approx = Approximation::new(p);
                let cands = candidate_upsets(p, *bound);
                let fam = fin_family(&approx, &cands, *element);
                failure_holds(p, &fam, *element, failure)
            }
            Witness::NotQuasiAlgebraic { element, bound, failure } => {
                let approx = Approximation::new(p);
                let cands = candidate_upsets(p, *bound);
                let fam = compfin_family(&approx, &fin_family(&approx, &cands, *element));
                failure_holds(p, &fam, *element, failure)
            }
            Witness::DenseChain { chain } => chain.len() >= 2 && is_dense_chain(p, chain),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DenseChainMode {
    CoveringPair,
    Generic,
}

/// The seven properties, with a witness for each one that fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainReport {
    pub algebraic: bool,
    pub continuous: bool,
    /// `None` when the poset is not a meet-semilattice.
    pub meet_continuous: Option<bool>,
    pub atomistic: bool,
    pub quasi_continuous: bool,
    pub quasi_algebraic: bool,
    pub order_scattered: bool,
    pub path: Path,
    pub fin_subset_bound: usize,
    /// `fin(C)` was enumerated only up to `fin_subset_bound` elements.
    pub bounded: bool,
    pub dense_chain_mode: DenseChainMode,
    pub witnesses: Vec<Witness>,
}

impl DomainReport {
    pub fn all_true(&self) -> bool {
        self.algebraic
            && self.continuous
            && self.meet_continuous == Some(true)
            && self.atomistic
            && self.quasi_continuous
            && self.quasi_algebraic
            && self.order_scattered
    }
}

/// Nonempty directed set whose supremum is `target`.
fn approximates(p: &FinPoset, set: &[usize], target: usize) -> bool {
    p.is_directed(set) && p.lub(set) == Some(target)
}

pub fn domain_report(p: &FinPoset, opts: &ReportOptions) -> Result<DomainReport, OrderError> {
    let n = p.len();
    let path = opts.path.unwrap_or_else(|| Path::for_size(n));
    let approx = Approximation::with_path(p, path)?;
    let mut witnesses = Vec::new();

    let compact = approx.compact_elements();
    let mut algebraic = true;
    let mut continuous = true;
    for c in 0..n {
        let compact_below: Vec<usize> =
            compact.iter().copied().filter(|&k| p.leq(k, c)).collect();
        if !approximates(p, &compact_below, c) {
            algebraic = false;
            witnesses.push(Witness::NotAlgebraic { element: c, compact_below });
        }
        let way: Vec<usize> = approx.approximants(c).ones().collect();
        if !approximates(p, &way, c) {
            continuous = false;
            witnesses.push(Witness::NotContinuous { element: c, way_below: way });
        }
    }

    let meet_continuous = match missing_meet(p) {
        Some((a, b)) if opts.require_meet_continuity => {
            return Err(OrderError::MeetNotDefined(a, b));
        }
        Some(_) => None,
        None => {
            let failure = meet_continuity_failure(&approx);
            if let Some((element, directed)) = failure {
                witnesses.push(Witness::NotMeetContinuous { element, directed });
                Some(false)
            } else {
                Some(true)
            }
        }
    };

    let atomistic = match p.bottom() {
        None => {
            witnesses.push(Witness::NoBottom);
            false
        }
        Some(_) => {
            let atoms = p.atoms();
            let mut ok = true;
            for c in 0..n {
                let below: Vec<usize> = atoms.iter().copied().filter(|&a| p.leq(a, c)).collect();
                if p.lub(&below) != Some(c) {
                    ok = false;
                    witnesses.push(Witness::NotAtomistic { element: c, atoms_below: below });
                }
            }
            ok
        }
    };

    let bound = opts.fin_bound.unwrap_or(if n <= DEFAULT_FIN_LIMIT { n } else { DEFAULT_LARGE_FIN_BOUND });
    let bound = bound.clamp(1, n);
    let cands = candidate_upsets(p, bound);
    let mut quasi_continuous = true;
    let mut quasi_algebraic = true;
    for c in 0..n {
        let fin = fin_family(&approx, &cands, c);
        if let Some(failure) = quasi_failure(p, &fin, c) {
            quasi_continuous = false;
            witnesses.push(Witness::NotQuasiContinuous { element: c, bound, failure });
        }
        let compfin = compfin_family(&approx, &fin);
        if let Some(failure) = quasi_failure(p, &compfin, c) {
            quasi_algebraic = false;
            witnesses.push(Witness::NotQuasiAlgebraic { element: c, bound, failure });
        }
    }

    let (order_scattered, dense_chain_mode) = if opts.generic_dense_chain {
        match dense_chain_search(p)? {
            Some(chain) => {
                witnesses.push(Witness::DenseChain { chain });
                (false, DenseChainMode::Generic)
            }
            None => (true, DenseChainMode::Generic),
        }
    } else {
        // Any finite chain with two or more elements has a covering pair.
        (true, DenseChainMode::CoveringPair)
    };

    Ok(DomainReport {
        algebraic,
        continuous,
        meet_continuous,
        atomistic,
        quasi_continuous,
        quasi_algebraic,
        order_scattered,
        path,
        fin_subset_bound: bound,
        bounded: bound < n,
        dense_chain_mode,
        witnesses,
    })
}

fn missing_meet(p: &FinPoset) -> Option<(usize, usize)> {
    (0..p.len()).flat_map(|a| (a..p.len()).map(move |b| (a, b))).find(|&(a, b)| p.meet(a, b).is_none())
}

/// First `(c, D)` with `c ∧ ⋁D ≠ ⋁{c ∧ d}`; the poset must be a meet-semilattice.
fn meet_continuity_failure(approx: &Approximation<'_>) -> Option<(usize, Vec<usize>)> {
    let p = approx.poset();
    let meets = p.meet_table();
    let meet = |a: usize, b: usize| meets[a][b].expect("meet-semilattice");
    match approx.path() {
        Path::Definitional => {
            for (set, sup) in approx.directed_sets() {
                let members: Vec<usize> = set.ones().collect();
                for c in 0..p.len() {
                    let parts: Vec<usize> = members.iter().map(|&d| meet(c, d)).collect();
                    if p.lub(&parts) != Some(meet(c, *sup)) {
                        return Some((c, members));
                    }
                }
            }
            None
        }
        Path::Principal => {
            // A finite directed set has a greatest member m, so ⋁{c ∧ d} = c ∧ m
            // reduces to c ∧ d ≤ c ∧ m for each comparable pair d ≤ m.
            for m in 0..p.len() {
                for d in p.down(m).ones() {
                    for c in 0..p.len() {
                        if p.lub(&[meet(c, d), meet(c, m)]) != Some(meet(c, m)) {
                            return Some((c, vec![d, m]));
                        }
                    }
                }
            }
            None
        }
    }
}

/// Distinct up-closures of nonempty subsets with at most `bound` elements,
/// each with one generating subset.
fn candidate_upsets(p: &FinPoset, bound: usize) -> Vec<(FixedBitSet, Vec<usize>)> {
    let mut seen: HashMap<FixedBitSet, Vec<usize>> = HashMap::new();
    let mut frontier: Vec<(FixedBitSet, Vec<usize>)> = Vec::new();
    for x in 0..p.len() {
        let u = p.up(x).clone();
        if !seen.contains_key(&u) {
            seen.insert(u.clone(), vec![x]);
            frontier.push((u, vec![x]));
        }
    }
    for _ in 1..bound {
        let mut next = Vec::new();
        for (u, gens) in &frontier {
            for x in 0..p.len() {
                if u.contains(x) {
                    continue;
                }
                let mut v = u.clone();
                v.union_with(p.up(x));
                if !seen.contains_key(&v) {
                    let mut g = gens.clone();
                    g.push(x);
                    seen.insert(v.clone(), g.clone());
                    next.push((v, g));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by(|a, b| a.1.cmp(&b.1));
    out
}

fn fin_family(
    approx: &Approximation<'_>,
    cands: &[(FixedBitSet, Vec<usize>)],
    c: usize,
) -> Vec<(FixedBitSet, Vec<usize>)> {
    cands.iter().filter(|(u, _)| approx.set_way_below(u, c)).cloned().collect()
}

fn compfin_family(
    approx: &Approximation<'_>,
    fin: &[(FixedBitSet, Vec<usize>)],
) -> Vec<(FixedBitSet, Vec<usize>)> {
    fin.iter().filter(|(u, _)| approx.set_way_below_self(u)).cloned().collect()
}

/// Checks directedness (in the preorder `G ≤ H ⇔ ↑H ⊆ ↑G`) and separation.
fn quasi_failure(
    p: &FinPoset,
    fam: &[(FixedBitSet, Vec<usize>)],
    c: usize,
) -> Option<QuasiFailure> {
    if fam.is_empty() {
        return Some(QuasiFailure::Empty);
    }
    let mut common = p.full_set();
    for (u, _) in fam {
        common.intersect_with(u);
    }
    let has_least = fam.iter().any(|(u, _)| *u == common);
    if !has_least {
        let minimal: Vec<&FixedBitSet> = fam
            .iter()
            .map(|(u, _)| u)
            .filter(|u| !fam.iter().any(|(v, _)| v != *u && v.is_subset(u)))
            .collect();
        for (u1, g1) in fam {
            for (u2, g2) in fam {
                let mut both = u1.clone();
                both.intersect_with(u2);
                if !minimal.iter().any(|m| m.is_subset(&both)) {
                    return Some(QuasiFailure::NotDirected { first: g1.clone(), second: g2.clone() });
                }
            }
        }
    }
    // Some member must avoid each d with c ≰ d, i.e. d must lie outside the common part.
    common.ones().find(|&d| !p.leq(c, d)).map(|other| QuasiFailure::NotSeparated { other })
}

fn failure_holds(
    p: &FinPoset,
    fam: &[(FixedBitSet, Vec<usize>)],
    c: usize,
    failure: &QuasiFailure,
) -> bool {
    match failure {
        QuasiFailure::Empty => fam.is_empty(),
        QuasiFailure::NotDirected { first, second } => {
            let u1 = p.up_closure(first.iter().copied());
            let u2 = p.up_closure(second.iter().copied());
            let in_fam = |u: &FixedBitSet| fam.iter().any(|(v, _)| v == u);
            if !in_fam(&u1) || !in_fam(&u2) {
                return false;
            }
            let mut both = u1;
            both.intersect_with(&u2);
            !fam.iter().any(|(v, _)| v.is_subset(&both))
        }
        QuasiFailure::NotSeparated { other } => {
            !p.leq(c, *other) && fam.iter().all(|(u, _)| u.contains(*other))
        }
    }
}

fn is_dense_chain(p: &FinPoset, chain: &[usize]) -> bool {
    p.is_chain(chain)
        && chain.iter().all(|&x| {
            chain.iter().all(|&y| {
                !p.lt(x, y) || chain.iter().any(|&z| p.lt(x, z) && p.lt(z, y))
            })
        })
}

/// Exhaustive search for an order-dense chain with at least two elements.
///
/// Enumerates every chain, so it is capped at 16 elements; it exists to
/// cross-check the covering-pair shortcut used by [`domain_report`].
pub fn dense_chain_search(p: &FinPoset) -> Result<Option<Vec<usize>>, OrderError> {
    let n = p.len();
    if n > DENSE_CHAIN_LIMIT {
        return Err(OrderError::SizeLimit { size: n, limit: DENSE_CHAIN_LIMIT });
    }
    // Number of elements below each element gives a linear extension.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| p.down(i).count_ones(..));
    let mut chain = Vec::new();
    Ok(extend_chain(p, &order, 0, &mut chain))
}

fn extend_chain(
    p: &FinPoset,
    order: &[usize],
    start: usize,
    chain: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    for pos in start..order.len() {
        let x = order[pos];
        if chain.last().is_some_and(|&last| !p.lt(last, x)) {
            continue;
        }
        chain.push(x);
        if chain.len() >= 2 && is_dense_chain(p, chain) {
            return Some(chain.clone());
        }
        if let Some(found) = extend_chain(p, order, pos + 1, chain) {
            return Some(found);
        }
        chain.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::tests::random_poset;
    use crate::order::index_labels;
    use rand::SeedableRng;

    fn v_shape() -> FinPoset {
        // bottom 0 with two incomparable atoms 1, 2
        FinPoset::from_fn(index_labels(3), |i, j| i == j || i == 0).unwrap()
    }

    #[test]
    fn chain_way_below_is_order() {
        let p = FinPoset::chain(3).unwrap();
        assert!(way_below(&p, 0, 2).unwrap());
        assert!(!way_below(&p, 2, 0).unwrap());
        assert_eq!(way_below(&p, 0, 7), Err(OrderError::ElementNotInPoset(7)));
    }

    #[test]
    fn compact_elements_small() {
        assert_eq!(compact_elements(&FinPoset::chain(3).unwrap()), vec![0, 1, 2]);
        assert_eq!(compact_elements(&FinPoset::chain(1).unwrap()), vec![0]);
    }

    #[test]
    fn definitional_refuses_large_posets() {
        let p = FinPoset::chain(16).unwrap();
        assert!(matches!(
            Approximation::with_path(&p, Path::Definitional),
            Err(OrderError::SizeLimit { .. })
        ));
        assert_eq!(Approximation::new(&p).path(), Path::Principal);
    }

    #[test]
    fn paths_agree_on_random_posets() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for n in 1..=9 {
            for _ in 0..10 {
                let p = random_poset(&mut rng, n, 0.35);
                let def = Approximation::with_path(&p, Path::Definitional).unwrap();
                let pri = Approximation::with_path(&p, Path::Principal).unwrap();
                for b in 0..n {
                    for c in 0..n {
                        assert_eq!(def.way_below(b, c), pri.way_below(b, c));
                        assert_eq!(def.way_below(b, c), p.leq(b, c));
                    }
                }
            }
        }
    }

    #[test]
    fn v_shape_report() {
        let r = domain_report(&v_shape(), &ReportOptions::default()).unwrap();
        assert!(r.algebraic && r.continuous && r.atomistic);
        // the two atoms have no join but every meet exists
        assert_eq!(r.meet_continuous, Some(true));
        assert!(r.order_scattered);
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn chain_is_not_atomistic() {
        let p = FinPoset::chain(3).unwrap();
        let r = domain_report(&p, &ReportOptions::default()).unwrap();
        assert!(!r.atomistic);
        assert!(r.algebraic && r.continuous && r.quasi_continuous && r.quasi_algebraic);
        assert_eq!(r.witnesses.len(), 1);
        assert!(r.witnesses.iter().all(|w| w.recheck(&p)));
    }

    #[test]
    fn antichain_has_no_bottom_and_no_meets() {
        let p = FinPoset::antichain(2).unwrap();
        let r = domain_report(&p, &ReportOptions::default()).unwrap();
        assert_eq!(r.meet_continuous, None);
        assert!(!r.atomistic);
        assert!(r.witnesses.contains(&Witness::NoBottom));
        assert!(r.witnesses.iter().all(|w| w.recheck(&p)));
        let strict = ReportOptions { require_meet_continuity: true, ..Default::default() };
        assert_eq!(domain_report(&p, &strict), Err(OrderError::MeetNotDefined(0, 1)));
    }

    #[test]
    fn bogus_witnesses_do_not_recheck() {
        let p = FinPoset::chain(3).unwrap();
        assert!(!Witness::NotAlgebraic { element: 2, compact_below: vec![] }.recheck(&p));
        assert!(!Witness::NotContinuous { element: 1, way_below: vec![] }.recheck(&p));
        assert!(!Witness::NoBottom.recheck(&p));
        assert!(!Witness::DenseChain { chain: vec![0, 2] }.recheck(&p));
        assert!(!Witness::NotMeetContinuous { element: 1, directed: vec![0, 2] }.recheck(&p));
        let q = Witness::NotQuasiContinuous {
            element: 2,
            bound: 3,
            failure: QuasiFailure::NotSeparated { other: 1 },
        };
        assert!(!q.recheck(&p));
    }

    #[test]
    fn report_paths_agree() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let p = random_poset(&mut rng, 7, 0.4);
            let def = domain_report(&p, &ReportOptions { path: Some(Path::Definitional), ..Default::default() }).unwrap();
            let pri = domain_report(&p, &ReportOptions { path: Some(Path::Principal), ..Default::default() }).unwrap();
            assert_eq!(def.algebraic, pri.algebraic);
            assert_eq!(def.continuous, pri.continuous);
            assert_eq!(def.meet_continuous, pri.meet_continuous);
            assert_eq!(def.atomistic, pri.atomistic);
            assert_eq!(def.quasi_continuous, pri.quasi_continuous);
            assert_eq!(def.quasi_algebraic, pri.quasi_algebraic);
            assert!(def.witnesses.iter().all(|w| w.recheck(&p)));
        }
    }

    #[test]
    fn generic_dense_chain_search_finds_nothing_finite() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..20 {
            let p = random_poset(&mut rng, 8, 0.5);
            assert_eq!(dense_chain_search(&p).unwrap(), None);
            let r = domain_report(&p, &ReportOptions { generic_dense_chain: true, ..Default::default() }).unwrap();
            assert!(r.order_scattered);
            assert_eq!(r.dense_chain_mode, DenseChainMode::Generic);
        }
        assert!(dense_chain_search(&FinPoset::chain(17).unwrap()).is_err());
    }

    #[test]
    fn large_posets_are_marked_bounded() {
        let p = FinPoset::chain(14).unwrap();
        let r = domain_report(&p, &ReportOptions::default()).unwrap();
        assert!(r.bounded);
        assert_eq!(r.fin_subset_bound, 2);
        let full = domain_report(&FinPoset::chain(5).unwrap(), &ReportOptions::default()).unwrap();
        assert!(!full.bounded);
    }

    #[test]
    fn report_serializes_with_fixed_keys() {
        let r = domain_report(&v_shape(), &ReportOptions::default()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in [
            "algebraic",
            "continuous",
            "meet_continuous",
            "atomistic",
            "quasi_continuous",
            "quasi_algebraic",
            "order_scattered",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
    }
}
