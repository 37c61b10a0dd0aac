//! Equivalence relations on `{0, .., n-1}` and their lattices.
//!
//! For a finite set `X` the commutative subalgebras of `C(X)` correspond to the
//! partitions of `X`: a partition `R` gives the functions constant on its
//! classes. Larger relations give smaller algebras, so the same set of
//! partitions carries two opposite orders. [`Orientation`] names which one a
//! lattice uses.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::order::{FinPoset, OrderError};

/// Default largest ground set for [`partition_lattice`] (Bell(8) = 4140 elements).
pub const DEFAULT_LATTICE_LIMIT: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("relations live on ground sets of different sizes ({0} vs {1})")]
    GroundMismatch(usize, usize),
    #[error("element {element} is outside the ground set of size {n}")]
    OutOfRange { element: usize, n: usize },
    #[error("classes do not partition the ground set: {0}")]
    NotAPartition(String),
    #[error("ground set of size {n} exceeds the limit {limit}")]
    SizeLimit { n: usize, limit: usize },
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// An equivalence relation, stored as its canonical restricted growth string:
/// `labels[x]` is the index of the class of `x`, classes numbered by least member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EqRel {
    labels: Vec<usize>,
}

/// JSON shape `{ "n": int, "classes": [[ints]] }`, elements 0-based.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EqRelJson {
    pub n: usize,
    pub classes: Vec<Vec<usize>>,
}

impl EqRel {
    /// The diagonal: every element in its own class.
    pub fn discrete(n: usize) -> Self {
        EqRel { labels: (0..n).collect() }
    }

    /// A single class.
    pub fn full(n: usize) -> Self {
        EqRel { labels: vec![0; n] }
    }

    /// Canonicalizes an arbitrary class labelling.
    pub fn from_labels<T: Eq + std::hash::Hash>(raw: &[T]) -> Self {
        let mut ids: HashMap<&T, usize> = HashMap::new();
        let labels = raw
            .iter()
            .map(|x| {
                let next = ids.len();
                *ids.entry(x).or_insert(next)
            })
            .collect();
        EqRel { labels }
    }

    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Self, PartitionError> {
        let mut owner = vec![None; n];
        for (ci, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(PartitionError::NotAPartition(format!("class {ci} is empty")));
            }
            for &x in class {
                if x >= n {
                    return Err(PartitionError::OutOfRange { element: x, n });
                }
                if owner[x].is_some() {
                    return Err(PartitionError::NotAPartition(format!("{x} appears twice")));
                }
                owner[x] = Some(ci);
            }
        }
        let raw: Vec<usize> = owner
            .into_iter()
            .enumerate()
            .map(|(x, o)| o.ok_or_else(|| PartitionError::NotAPartition(format!("{x} is not covered"))))
            .collect::<Result<_, _>>()?;
        Ok(Self::from_labels(&raw))
    }

    pub fn from_json(json: &EqRelJson) -> Result<Self, PartitionError> {
        Self::from_classes(json.n, &json.classes)
    }

    pub fn to_json(&self) -> EqRelJson {
        EqRelJson { n: self.n(), classes: self.classes() }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn num_classes(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.labels[x]
    }

    /// Classes, sorted by least member, members ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.num_classes()];
        for (x, &l) in self.labels.iter().enumerate() {
            classes[l].push(x);
        }
        classes
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    /// `self ⊆ other` as sets of pairs.
    pub fn refines(&self, other: &EqRel) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let mut image = vec![None; self.num_classes()];
        self.labels.iter().zip(&other.labels).all(|(&a, &b)| match image[a] {
            None => {
                image[a] = Some(b);
                true
            }
            Some(prev) => prev == b,
        })
    }

    fn check_ground(&self, other: &EqRel) -> Result<(), PartitionError> {
        if self.n() == other.n() {
            Ok(())
        } else {
            Err(PartitionError::GroundMismatch(self.n(), other.n()))
        }
    }

    /// Smallest equivalence relation containing both: connected components of the union.
    pub fn join(&self, other: &EqRel) -> Result<EqRel, PartitionError> {
        self.check_ground(other)?;
        let mut uf = UnionFind::new(self.n());
        for rel in [self, other] {
            let mut first = vec![None; rel.num_classes()];
            for (x, &l) in rel.labels.iter().enumerate() {
                match first[l] {
                    None => first[l] = Some(x),
                    Some(r) => uf.union(r, x),
                }
            }
        }
        Ok(uf.into_relation())
    }

    /// Intersection of the two relations.
    pub fn meet(&self, other: &EqRel) -> Result<EqRel, PartitionError> {
        self.check_ground(other)?;
        let pairs: Vec<(usize, usize)> =
            self.labels.iter().copied().zip(other.labels.iter().copied()).collect();
        Ok(EqRel::from_labels(&pairs))
    }

    /// The quotient map `x ↦ [x]`; the quotient has one point per class.
    pub fn quotient(&self) -> (usize, Vec<usize>) {
        (self.num_classes(), self.labels.clone())
    }

    /// Pull back along `h: Y → X`: `y ~ y'` iff `h(y) ~ h(y')`.
    pub fn pullback(&self, h: &[usize]) -> Result<EqRel, PartitionError> {
        let n = self.n();
        let raw: Vec<usize> = h
            .iter()
            .map(|&x| {
                if x < n {
                    Ok(self.labels[x])
                } else {
                    Err(PartitionError::OutOfRange { element: x, n })
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(EqRel::from_labels(&raw))
    }
}

impl fmt::Display for EqRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for class in self.classes() {
            let items: Vec<String> = class.iter().map(|x| x.to_string()).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        Ok(())
    }
}

/// Parses the display form `{0,1}{2}`; the ground set is `0..=max`.
impl FromStr for EqRel {
    type Err = PartitionError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| PartitionError::NotAPartition(format!("`{input}`: {why}"));
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let body = s.strip_prefix('{').and_then(|b| b.strip_suffix('}')).ok_or_else(|| bad("expected `{...}` classes"))?;
        let classes = body
            .split("}{")
            .map(|class| class.split(',').map(|x| x.parse::<usize>().map_err(|_| bad("bad element"))).collect())
            .collect::<Result<Vec<Vec<usize>>, _>>()?;
        let n = classes.iter().flatten().max().map_or(0, |&m| m + 1);
        EqRel::from_classes(n, &classes)
    }
}

/// The relation `Δ ∪ K²`: one class `K`, singletons elsewhere.
pub fn collapse(n: usize, k: &[usize]) -> Result<EqRel, PartitionError> {
    let mut raw: Vec<usize> = (0..n).collect();
    if let Some(&bad) = k.iter().find(|&&x| x >= n) {
        return Err(PartitionError::OutOfRange { element: bad, n });
    }
    if let Some(&first) = k.first() {
        for &x in k {
            raw[x] = first;
        }
    }
    Ok(EqRel::from_labels(&raw))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn into_relation(mut self) -> EqRel {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        EqRel::from_labels(&roots)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `R ≤ S` iff `R ⊆ S`; bottom is the diagonal.
    Refinement,
    /// `R ≤ S` iff `S ⊆ R`, the inclusion order of the algebras `C_R`;
    /// bottom is the one-class relation (the scalars).
    Subalgebra,
}

impl FromStr for Orientation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "refinement" => Ok(Orientation::Refinement),
            "subalgebra" => Ok(Orientation::Subalgebra),
            other => Err(format!("unknown orientation `{other}` (expected refinement or subalgebra)")),
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Refinement => "refinement",
            Orientation::Subalgebra => "subalgebra",
        })
    }
}

/// All partitions of an `n`-set ordered in the chosen orientation.
#[derive(Clone, Debug)]
pub struct PartitionLattice {
    pub orientation: Orientation,
    pub partitions: Vec<EqRel>,
    pub poset: FinPoset,
    index: HashMap<EqRel, usize>,
}

impl PartitionLattice {
    pub fn index_of(&self, r: &EqRel) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }
}

pub fn partition_lattice(n: usize, orientation: Orientation) -> Result<PartitionLattice, PartitionError> {
    partition_lattice_with_limit(n, orientation, DEFAULT_LATTICE_LIMIT)
}

pub fn partition_lattice_with_limit(
    n: usize,
    orientation: Orientation,
    limit: usize,
) -> Result<PartitionLattice, PartitionError> {
    if n == 0 || n > limit {
        return Err(PartitionError::SizeLimit { n, limit });
    }
    let partitions = all_partitions(n);
    let labels = partitions.iter().map(|p| p.to_string()).collect();
    let poset = FinPoset::from_fn(labels, |i, j| match orientation {
        Orientation::Refinement => partitions[i].refines(&partitions[j]),
        Orientation::Subalgebra => partitions[j].refines(&partitions[i]),
    })?;
    let index = partitions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    Ok(PartitionLattice { orientation, partitions, poset, index })
}

/// Every partition of `{0..n-1}`, in lexicographic order of restricted growth strings.
pub fn all_partitions(n: usize) -> Vec<EqRel> {
    fn grow(labels: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<EqRel>) {
        if labels.len() == n {
            out.push(EqRel { labels: labels.clone() });
            return;
        }
        let next = if labels.is_empty() { 0 } else { max + 1 };
        for l in 0..=next {
            labels.push(l);
            grow(labels, max.max(l), n, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(EqRel { labels: vec![] });
    } else {
        grow(&mut Vec::with_capacity(n), 0, n, &mut out);
    }
    out
}

/// Bell numbers via the Bell triangle.
pub fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0]
}

/// Stirling numbers of the second kind.
pub fn stirling2(n: usize, k: usize) -> u128 {
    let mut table = vec![vec![0u128; k + 1]; n + 1];
    table[0][0] = 1;
    for i in 1..=n {
        for j in 1..=k.min(i) {
            table[i][j] = j as u128 * table[i - 1][j] + table[i - 1][j - 1];
        }
    }
    table[n][k]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{domain_report, way_below_definitional, Approximation, Path, ReportOptions};
    use std::collections::HashSet;

    #[test]
    fn display_form_parses_back() {
        for r in all_partitions(4) {
            assert_eq!(r.to_string().parse::<EqRel>().unwrap(), r);
        }
        assert_eq!(" {0, 2} {1}".parse::<EqRel>().unwrap(), rel(3, &[&[0, 2], &[1]]));
        for bad in ["", "{}", "{0,1}{1}", "{0}{2}", "{a}", "0,1"] {
            assert!(bad.parse::<EqRel>().is_err(), "{bad}");
        }
    }

    fn rel(n: usize, classes: &[&[usize]]) -> EqRel {
        let cs: Vec<Vec<usize>> = classes.iter().map(|c| c.to_vec()).collect();
        EqRel::from_classes(n, &cs).unwrap()
    }

    /// Brute force: canonicalize every map {0..n} -> {0..n}.
    fn partitions_by_brute_force(n: usize) -> HashSet<EqRel> {
        let mut out = HashSet::new();
        let total = n.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let raw: Vec<usize> = (0..n)
                .map(|_| {
                    let d = c % n;
                    c /= n;
                    d
                })
                .collect();
            out.insert(EqRel::from_labels(&raw));
        }
        out
    }

    /// Brute force: all pairs of the smallest transitive relation containing both.
    fn join_by_closure(r: &EqRel, s: &EqRel) -> EqRel {
        let n = r.n();
        let mut m = vec![vec![false; n]; n];
        for x in 0..n {
            for y in 0..n {
                m[x][y] = r.related(x, y) || s.related(x, y);
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if m[i][k] && m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
        let raw: Vec<usize> = (0..n).map(|x| (0..n).find(|&y| m[x][y]).unwrap()).collect();
        EqRel::from_labels(&raw)
    }

    #[test]
    fn join_examples() {
        let a = rel(3, &[&[0, 1], &[2]]);
        let b = rel(3, &[&[0], &[1, 2]]);
        assert_eq!(a.join(&b).unwrap(), EqRel::full(3));
        assert_eq!(a.join(&EqRel::discrete(3)).unwrap(), a);
        let c = rel(4, &[&[0, 1], &[2], &[3]]);
        let d = rel(4, &[&[0], &[1], &[2, 3]]);
        let expected = rel(4, &[&[0, 1], &[2, 3]]);
        assert_eq!(c.join(&d).unwrap(), expected);
        assert_eq!(join_by_closure(&c, &d), expected);
    }

    #[test]
    fn meet_examples() {
        let full = EqRel::full(3);
        let a = rel(3, &[&[0, 1], &[2]]);
        assert_eq!(full.meet(&a).unwrap(), a);
        assert_eq!(a.meet(&a).unwrap(), a);
        let x = rel(4, &[&[0, 1], &[2, 3]]);
        let y = rel(4, &[&[0, 2], &[1, 3]]);
        assert_eq!(x.meet(&y).unwrap(), EqRel::discrete(4));
    }

    #[test]
    fn ground_mismatch() {
        assert_eq!(
            EqRel::full(3).join(&EqRel::full(4)),
            Err(PartitionError::GroundMismatch(3, 4))
        );
        assert_eq!(
            EqRel::full(3).meet(&EqRel::full(2)),
            Err(PartitionError::GroundMismatch(3, 2))
        );
    }

    #[test]
    fn from_classes_validation() {
        assert!(matches!(
            EqRel::from_classes(3, &[vec![0, 1]]),
            Err(PartitionError::NotAPartition(_))
        ));
        assert!(matches!(
            EqRel::from_classes(3, &[vec![0, 1], vec![1, 2]]),
            Err(PartitionError::NotAPartition(_))
        ));
        assert_eq!(
            EqRel::from_classes(2, &[vec![0, 5]]),
            Err(PartitionError::OutOfRange { element: 5, n: 2 })
        );
        // canonical form ignores the order classes are listed in
        assert_eq!(rel(3, &[&[2], &[1, 0]]), rel(3, &[&[0, 1], &[2]]));
    }

    #[test]
    fn collapse_examples() {
        assert_eq!(collapse(3, &[0, 1]).unwrap(), rel(3, &[&[0, 1], &[2]]));
        assert_eq!(collapse(3, &[]).unwrap(), EqRel::discrete(3));
        assert_eq!(collapse(4, &[0, 1, 2]).unwrap(), rel(4, &[&[0, 1, 2], &[3]]));
        assert_eq!(collapse(3, &[1]).unwrap(), EqRel::discrete(3));
        assert_eq!(collapse(3, &[3]), Err(PartitionError::OutOfRange { element: 3, n: 3 }));
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(rel(3, &[&[0, 1], &[2]]).quotient(), (2, vec![0, 0, 1]));
        assert_eq!(EqRel::discrete(3).quotient(), (3, vec![0, 1, 2]));
        assert_eq!(EqRel::full(4).quotient().0, 1);
    }

    #[test]
    fn lattice_sizes_match_brute_force() {
        for n in 1..=6 {
            let lat = partition_lattice(n, Orientation::Refinement).unwrap();
            let brute = partitions_by_brute_force(n);
            assert_eq!(lat.len(), brute.len());
            assert_eq!(lat.len() as u128, bell(n));
            let got: HashSet<EqRel> = lat.partitions.iter().cloned().collect();
            assert_eq!(got, brute);
        }
        assert_eq!(partition_lattice(3, Orientation::Subalgebra).unwrap().len(), 5);
        assert_eq!(partition_lattice(4, Orientation::Subalgebra).unwrap().len(), 15);
    }

    #[test]
    fn singleton_lattice_and_limits() {
        let lat = partition_lattice(1, Orientation::Subalgebra).unwrap();
        assert_eq!(lat.len(), 1);
        assert_eq!(lat.poset.bottom(), lat.poset.top());
        assert!(matches!(
            partition_lattice(9, Orientation::Refinement),
            Err(PartitionError::SizeLimit { n: 9, limit: 8 })
        ));
        assert!(partition_lattice(0, Orientation::Refinement).is_err());
        assert!(partition_lattice_with_limit(5, Orientation::Refinement, 4).is_err());
        assert_eq!(partition_lattice_with_limit(4, Orientation::Refinement, 4).unwrap().len(), 15);
    }

    #[test]
    fn subalgebra_orientation_bounds() {
        let lat = partition_lattice(4, Orientation::Subalgebra).unwrap();
        let bottom = lat.poset.bottom().unwrap();
        let top = lat.poset.top().unwrap();
        assert_eq!(lat.partitions[bottom], EqRel::full(4));
        assert_eq!(lat.partitions[top], EqRel::discrete(4));
    }

    #[test]
    fn orientations_are_dual() {
        for n in 1..=5 {
            let r = partition_lattice(n, Orientation::Refinement).unwrap();
            let s = partition_lattice(n, Orientation::Subalgebra).unwrap();
            assert_eq!(r.poset.dual(), s.poset);
        }
    }

    #[test]
    fn atoms_are_two_class_relations() {
        for n in 1..=6 {
            let lat = partition_lattice(n, Orientation::Subalgebra).unwrap();
            let atoms = lat.poset.atoms();
            assert_eq!(atoms.len() as u128, stirling2(n, 2));
            assert_eq!(atoms.len(), (1usize << (n - 1)) - 1);
            assert!(atoms.iter().all(|&a| lat.partitions[a].num_classes() == 2));
        }
    }

    #[test]
    fn join_and_meet_are_lattice_operations() {
        for n in 1..=5 {
            let lat = partition_lattice(n, Orientation::Refinement).unwrap();
            let ps = &lat.partitions;
            for (i, a) in ps.iter().enumerate() {
                for (j, b) in ps.iter().enumerate() {
                    let join = a.join(b).unwrap();
                    let meet = a.meet(b).unwrap();
                    assert_eq!(lat.poset.lub(&[i, j]), lat.index_of(&join));
                    assert_eq!(lat.poset.glb(&[i, j]), lat.index_of(&meet));
                    // absorption
                    assert_eq!(a.join(&meet).unwrap(), *a);
                    assert_eq!(a.meet(&join).unwrap(), *a);
                    if n <= 4 {
                        assert_eq!(join, join_by_closure(a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn join_and_meet_are_monotone() {
        let ps = all_partitions(4);
        for a in &ps {
            for b in &ps {
                if !a.refines(b) {
                    continue;
                }
                for c in &ps {
                    assert!(a.join(c).unwrap().refines(&b.join(c).unwrap()));
                    assert!(a.meet(c).unwrap().refines(&b.meet(c).unwrap()));
                }
            }
        }
    }

    #[test]
    fn partition_lattice_of_three_in_order_core() {
        let lat = partition_lattice(3, Orientation::Refinement).unwrap();
        let a = lat.index_of(&rel(3, &[&[0, 1], &[2]])).unwrap();
        let b = lat.index_of(&rel(3, &[&[0], &[1, 2]])).unwrap();
        let one = lat.index_of(&EqRel::full(3)).unwrap();
        assert_eq!(lat.poset.lub(&[a, b]), Some(one));
        assert_eq!(lat.poset.hasse().len(), 6);
        let all: Vec<usize> = (0..5).collect();
        assert_eq!(crate::order::compact_elements(&lat.poset), all);
    }

    #[test]
    fn way_below_on_partition_lattice_of_four() {
        let lat = partition_lattice(4, Orientation::Subalgebra).unwrap();
        let approx = Approximation::with_path(&lat.poset, Path::Definitional).unwrap();
        assert!(way_below_definitional(&lat.poset, 0, 14).is_ok());
        for b in 0..15 {
            for c in 0..15 {
                assert_eq!(approx.way_below(b, c), lat.poset.leq(b, c));
            }
        }
    }

    #[test]
    fn domain_report_on_small_partition_lattices() {
        for n in 1..=4 {
            for o in [Orientation::Subalgebra, Orientation::Refinement] {
                let lat = partition_lattice(n, o).unwrap();
                let r = domain_report(&lat.poset, &ReportOptions::default()).unwrap();
                assert!(r.all_true(), "n={n} {o}: {r:?}");
            }
        }
    }

    #[test]
    fn pullback_examples() {
        let c = collapse(3, &[0, 1]).unwrap();
        // Y = {0,1} included into X = {0,1,2}
        assert_eq!(c.pullback(&[0, 1]).unwrap(), EqRel::full(2));
        assert_eq!(c.pullback(&[0, 1, 2]).unwrap(), c);
        assert_eq!(rel(3, &[&[0], &[1], &[2]]).pullback(&[2, 2]).unwrap(), EqRel::full(2));
        assert!(c.pullback(&[3]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let r = rel(5, &[&[0, 3], &[1], &[2, 4]]);
        let text = serde_json::to_string(&r.to_json()).unwrap();
        assert_eq!(text, r#"{"n":5,"classes":[[0,3],[1],[2,4]]}"#);
        let back: EqRelJson = serde_json::from_str(&text).unwrap();
        assert_eq!(EqRel::from_json(&back).unwrap(), r);
    }

    #[test]
    fn counting_helpers() {
        assert_eq!((0..=6).map(bell).collect::<Vec<_>>(), vec![1, 1, 2, 5, 15, 52, 203]);
        assert_eq!(bell(8), 4140);
        assert_eq!(stirling2(5, 2), 15);
        assert_eq!(stirling2(4, 4), 1);
    }
}
