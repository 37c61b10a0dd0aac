//! Finite-dimensional *-algebras of matrices over the Gaussian rationals.
//!
//! Commutative algebras generated by projections are handled through their
//! minimal projections, which play the role of the points of the spectrum.

mod matrix;
mod scalar;
mod spectral;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use matrix::{Matrix, Span};
pub use scalar::GaussRat;
pub use spectral::{minimal_polynomial, rational_roots, spectral_projections};

use crate::order::{FinPoset, OrderError};
use crate::partitions::{all_partitions, EqRel, PartitionError};

/// Largest ambient matrix size.
pub const MAX_AMBIENT: usize = 16;
/// Largest algebra dimension the closure will build.
pub const MAX_ALGEBRA_DIM: usize = 64;
/// Largest spectrum for which the subalgebra lattice is built.
pub const MAX_SPECTRUM: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StarAlgError {
    #[error("matrix of size {found} where size {expected} was expected")]
    DimMismatch { expected: usize, found: usize },
    #[error("{what} {size} exceeds the limit {limit}")]
    SizeLimit { what: &'static str, size: usize, limit: usize },
    #[error("algebra is not commutative")]
    NotCommutative,
    #[error("generator {0} is not a projection")]
    GeneratorNotProjection(usize),
    #[error("basis is not closed: {0}")]
    NotClosed(String),
    #[error("not a subalgebra of the ambient algebra")]
    NotSubalgebra,
    #[error("ambient algebra is not commutative")]
    AmbientNotCommutative,
    #[error("map is not total: h({index}) = {value} but the codomain has {codomain} points")]
    NotTotal { index: usize, value: usize, codomain: usize },
    #[error("map is not surjective: {0} has no preimage")]
    NotSurjective(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// Unital *-subalgebra of `M_n`, stored by its canonical echelon basis.
#[derive(Clone, Debug)]
pub struct StarAlgebra {
    n: usize,
    generators: Vec<Matrix>,
    span: Span,
}

impl PartialEq for StarAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.span == other.span
    }
}

impl Eq for StarAlgebra {}

/// Input format: ambient size plus generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    #[serde(default)]
    pub generators: Vec<Matrix>,
}

fn check_ambient(n: usize) -> Result<(), StarAlgError> {
    if n == 0 || n > MAX_AMBIENT {
        return Err(StarAlgError::SizeLimit { what: "ambient size", size: n, limit: MAX_AMBIENT });
    }
    Ok(())
}

fn check_dims(n: usize, ms: &[Matrix]) -> Result<(), StarAlgError> {
    match ms.iter().find(|m| m.dim() != n) {
        Some(m) => Err(StarAlgError::DimMismatch { expected: n, found: m.dim() }),
        None => Ok(()),
    }
}

/// Smallest unital *-subalgebra of `M_n` containing `generators`.
pub fn generated_algebra(n: usize, generators: &[Matrix]) -> Result<StarAlgebra, StarAlgError> {
    check_ambient(n)?;
    check_dims(n, generators)?;
    let mut span = Span::new(n * n);
    let mut elems: Vec<Matrix> = Vec::new();
    let mut queue: VecDeque<Matrix> = VecDeque::new();
    queue.push_back(Matrix::identity(n));
    queue.extend(generators.iter().cloned());
    while let Some(m) = queue.pop_front() {
        if !span.insert(m.entries()) {
            continue;
        }
        if span.dim() > MAX_ALGEBRA_DIM {
            return Err(StarAlgError::SizeLimit {
                what: "algebra dimension",
                size: span.dim(),
                limit: MAX_ALGEBRA_DIM,
            });
        }
        queue.push_back(m.adjoint());
        queue.push_back(m.mul(&m));
        for e in &elems {
            queue.push_back(e.mul(&m));
            queue.push_back(m.mul(e));
        }
        elems.push(m);
    }
    Ok(StarAlgebra { n, generators: generators.to_vec(), span })
}

impl StarAlgebra {
    /// `span{I}`.
    pub fn scalars(n: usize) -> Result<StarAlgebra, StarAlgError> {
        generated_algebra(n, &[])
    }

    /// Diagonal matrices in `M_k`, generated by the diagonal matrix units.
    pub fn diagonal(k: usize) -> Result<StarAlgebra, StarAlgError> {
        check_ambient(k)?;
        let units: Vec<Matrix> = (0..k).map(|i| Matrix::unit(k, i, i)).collect();
        Ok(StarAlgebra::from_orthogonal_projections(k, units))
    }

    /// Validates that `basis` spans a unital *-subalgebra.
    pub fn from_basis(n: usize, basis: &[Matrix]) -> Result<StarAlgebra, StarAlgError> {
        check_ambient(n)?;
        check_dims(n, basis)?;
        let mut span = Span::new(n * n);
        for m in basis {
            span.insert(m.entries());
        }
        let alg = StarAlgebra { n, generators: basis.to_vec(), span };
        alg.check_closed()?;
        Ok(alg)
    }

    /// Span of pairwise orthogonal projections summing to `I`; such a span is
    /// already a commutative *-subalgebra, so no closure is run.
    pub(crate) fn from_orthogonal_projections(n: usize, projections: Vec<Matrix>) -> StarAlgebra {
        let mut span = Span::new(n * n);
        for p in &projections {
            span.insert(p.entries());
        }
        StarAlgebra { n, generators: projections, span }
    }

    pub fn from_json(json: &AlgebraJson) -> Result<StarAlgebra, StarAlgError> {
        generated_algebra(json.dim, &json.generators)
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson { dim: self.n, generators: self.generators.clone() }
    }

    /// Ambient matrix size.
    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Linear dimension.
    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    /// Reduced echelon basis.
    pub fn basis(&self) -> Vec<Matrix> {
        self.span.rows().iter().map(|r| Matrix::from_flat(self.n, r.clone())).collect()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        m.dim() == self.n && self.span.contains(m.entries())
    }

    pub fn is_subalgebra_of(&self, other: &StarAlgebra) -> bool {
        self.n == other.n && self.span.is_subspace_of(&other.span)
    }

    pub fn is_commutative(&self) -> bool {
        let basis = self.basis();
        basis.iter().enumerate().all(|(i, a)| basis[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Identity, products and adjoints of basis elements stay inside the span.
    pub fn check_closed(&self) -> Result<(), StarAlgError> {
        if !self.contains(&Matrix::identity(self.n)) {
            return Err(StarAlgError::NotClosed("identity missing".into()));
        }
        let basis = self.basis();
        for (i, a) in basis.iter().enumerate() {
            if !self.contains(&a.adjoint()) {
                return Err(StarAlgError::NotClosed(format!("adjoint of basis element {i}")));
            }
            for (j, b) in basis.iter().enumerate() {
                if !self.contains(&a.mul(b)) {
                    return Err(StarAlgError::NotClosed(format!("product of basis elements {i} and {j}")));
                }
            }
        }
        Ok(())
    }

    fn require_commutative(&self) -> Result<(), StarAlgError> {
        if self.is_commutative() {
            Ok(())
        } else {
            Err(StarAlgError::NotCommutative)
        }
    }
}

/// Splits every part `q` into `qp` and `q(I − p)`, dropping zeros.
fn refine(parts: Vec<Matrix>, p: &Matrix) -> Vec<Matrix> {
    let mut out = Vec::with_capacity(parts.len() * 2);
    for q in parts {
        let inside = q.mul(p);
        let outside = q.sub(&inside);
        for r in [inside, outside] {
            if !r.is_zero() {
                out.push(r);
            }
        }
    }
    out
}

/// Minimal projections of a commutative algebra whose generators are projections,
/// found by refining `{I}` against each generator.
pub fn minimal_projections(a: &StarAlgebra) -> Result<Vec<Matrix>, StarAlgError> {
    a.require_commutative()?;
    if let Some(i) = a.generators.iter().position(|g| !g.is_projection()) {
        return Err(StarAlgError::GeneratorNotProjection(i));
    }
    let parts = a.generators.iter().fold(vec![Matrix::identity(a.n)], refine);
    if parts.len() != a.dim() {
        return Err(StarAlgError::NotClosed(format!(
            "{} minimal projections for an algebra of dimension {}",
            parts.len(),
            a.dim()
        )));
    }
    Ok(parts)
}

/// Characters of a commutative projection-generated algebra, one per minimal projection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    pub projections: Vec<Matrix>,
    /// `values[j][b]` is the value of character `j` on basis element `b`.
    pub values: Vec<Vec<GaussRat>>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.projections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projections.is_empty()
    }

    /// `χ_p(a)`: the coefficient of `a` on the minimal projection `p`.
    pub fn character(&self, j: usize, a: &Matrix) -> GaussRat {
        character(&self.projections[j], a)
    }
}

fn character(p: &Matrix, a: &Matrix) -> GaussRat {
    &a.mul(p).trace() / &p.trace()
}

pub fn spectrum(a: &StarAlgebra) -> Result<Spectrum, StarAlgError> {
    let projections = minimal_projections(a)?;
    let basis = a.basis();
    let values: Vec<Vec<GaussRat>> =
        projections.iter().map(|p| basis.iter().map(|b| character(p, b)).collect()).collect();
    for (bi, b) in basis.iter().enumerate() {
        let terms: Vec<(GaussRat, &Matrix)> =
            projections.iter().enumerate().map(|(j, p)| (values[j][bi].clone(), p)).collect();
        if Matrix::combination(a.n, &terms) != *b {
            return Err(StarAlgError::NotClosed(format!("basis element {bi} is not Σ χ(b) p")));
        }
    }
    Ok(Spectrum { projections, values })
}

/// Span of the block sums of `minimal` over the blocks of `partition`.
pub fn block_sum_algebra(n: usize, minimal: &[Matrix], partition: &EqRel) -> StarAlgebra {
    let sums = partition
        .classes()
        .iter()
        .map(|block| block.iter().fold(Matrix::zero(n), |acc, &j| acc.add(&minimal[j])))
        .collect();
    StarAlgebra::from_orthogonal_projections(n, sums)
}

#[derive(Clone, Debug)]
pub struct CNode {
    pub partition: EqRel,
    pub algebra: StarAlgebra,
}

/// All subalgebras of a commutative projection-generated algebra, ordered by inclusion.
#[derive(Clone, Debug)]
pub struct CLattice {
    pub minimal_projections: Vec<Matrix>,
    pub nodes: Vec<CNode>,
    pub poset: FinPoset,
}

fn block_masks(r: &EqRel) -> Vec<u32> {
    r.classes().iter().map(|c| c.iter().fold(0u32, |m, &j| m | (1 << j))).collect()
}

pub fn c_lattice(a: &StarAlgebra) -> Result<CLattice, StarAlgError> {
    let minimal = minimal_projections(a)?;
    let k = minimal.len();
    if k > MAX_SPECTRUM {
        return Err(StarAlgError::SizeLimit { what: "spectrum size", size: k, limit: MAX_SPECTRUM });
    }
    let nodes: Vec<CNode> = all_partitions(k)
        .into_iter()
        .map(|partition| {
            let algebra = block_sum_algebra(a.n, &minimal, &partition);
            CNode { partition, algebra }
        })
        .collect();
    // In minimal-projection coordinates every generator is a 0/1 vector, and a
    // 0/1 vector lies in the span of disjoint 0/1 vectors iff it is a union of them.
    let masks: Vec<Vec<u32>> = nodes.iter().map(|nd| block_masks(&nd.partition)).collect();
    let labels = nodes.iter().map(|nd| nd.partition.to_string()).collect();
    let poset = FinPoset::from_fn(labels, |i, j| {
        masks[i].iter().all(|&g| masks[j].iter().all(|&c| c & g == 0 || c & !g == 0))
    })?;
    Ok(CLattice { minimal_projections: minimal, nodes, poset })
}

impl CLattice {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, alg: &StarAlgebra) -> Option<usize> {
        self.nodes.iter().position(|nd| nd.algebra == *alg)
    }

    /// Compares the stored order with matrix-level span containment on every pair;
    /// returns the first disagreeing pair.
    pub fn verify_inclusions(&self) -> Option<(usize, usize)> {
        let n = self.nodes.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.nodes[i].algebra.is_subalgebra_of(&self.nodes[j].algebra) != self.poset.leq(i, j))
    }

    /// Graphviz rendering with one node per subalgebra.
    pub fn to_dot(&self, name: &str) -> String {
        self.poset.to_dot(name)
    }
}

/// The two-dimensional subalgebras `span{q, I − q}` for `q` a nontrivial projection.
pub fn atoms(a: &StarAlgebra) -> Result<Vec<StarAlgebra>, StarAlgError> {
    let minimal = minimal_projections(a)?;
    let k = minimal.len();
    if k > MAX_SPECTRUM {
        return Err(StarAlgError::SizeLimit { what: "spectrum size", size: k, limit: MAX_SPECTRUM });
    }
    let id = Matrix::identity(a.n);
    let mut out = Vec::new();
    // Each atom is counted once by taking the side of q that holds projection 0.
    for rest in 0..(1u32 << (k - 1)) {
        let set = 1 | (rest << 1);
        if set == (1u32 << k) - 1 {
            continue;
        }
        let q = (0..k).filter(|j| set & (1 << j) != 0).fold(Matrix::zero(a.n), |acc, j| acc.add(&minimal[j]));
        let complement = id.sub(&q);
        out.push(StarAlgebra::from_orthogonal_projections(a.n, vec![q, complement]));
    }
    Ok(out)
}

/// Join of two subalgebras of a commutative ambient algebra.
pub fn csa_join(c: &StarAlgebra, d: &StarAlgebra, ambient: &StarAlgebra) -> Result<StarAlgebra, StarAlgError> {
    if !ambient.is_commutative() {
        return Err(StarAlgError::AmbientNotCommutative);
    }
    if !c.is_subalgebra_of(ambient) || !d.is_subalgebra_of(ambient) {
        return Err(StarAlgError::NotSubalgebra);
    }
    let mut gens = c.basis();
    gens.extend(d.basis());
    generated_algebra(ambient.n, &gens)
}

/// Outcome of checking that an algebra is generated by its projections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionCheck {
    pub generated: bool,
    /// Minimal projections found inside the algebra.
    pub projections: Vec<Matrix>,
    /// Set when a spectral projection cannot be formed with rational eigenvalues.
    pub obstruction: Option<String>,
}

/// Finds the projections of a commutative algebra through the spectral
/// decompositions of the self-adjoint parts of its basis, then checks that
/// they generate the algebra.
pub fn generated_by_projections(c: &StarAlgebra) -> Result<ProjectionCheck, StarAlgError> {
    c.require_commutative()?;
    let n = c.n;
    let half = GaussRat::real(num_rational::BigRational::new(1.into(), 2.into()));
    let half_i = &half * &GaussRat::i();
    let mut parts = vec![Matrix::identity(n)];
    for b in c.basis() {
        let star = b.adjoint();
        let re = b.add(&star).scale(&half);
        let im = b.sub(&star).scale(&(-half_i.clone()));
        for h in [re, im] {
            match spectral_projections(&h) {
                Ok(decomp) => {
                    for (_, p) in decomp {
                        parts = refine(parts, &p);
                    }
                }
                Err(reason) => {
                    return Ok(ProjectionCheck { generated: false, projections: Vec::new(), obstruction: Some(reason) })
                }
            }
        }
    }
    let all_inside = parts.iter().all(|p| p.is_projection() && c.contains(p));
    let generated = all_inside && generated_algebra(n, &parts)? == *c;
    Ok(ProjectionCheck { generated, projections: parts, obstruction: None })
}

fn check_map(h: &[usize], codomain: usize) -> Result<(), StarAlgError> {
    match h.iter().enumerate().find(|&(_, &x)| x >= codomain) {
        Some((index, &value)) => Err(StarAlgError::NotTotal { index, value, codomain }),
        None => Ok(()),
    }
}

/// Image of the subalgebra `C_R ⊆ C(X)` under precomposition with `h: Y → X`,
/// as a partition of `Y`: `y ~ y'` iff `h(y) R h(y')`.
pub fn pushforward_hom(h: &[usize], x_n: usize, c: &EqRel) -> Result<EqRel, StarAlgError> {
    if c.n() != x_n {
        return Err(StarAlgError::DimMismatch { expected: x_n, found: c.n() });
    }
    check_map(h, x_n)?;
    Ok(c.pullback(h)?)
}

/// The same image computed on matrices: each block projection of `C_R` in
/// `diag(C^X)` is sent to `diag(f ∘ h)` in `diag(C^Y)`.
pub fn pushforward_matrix(h: &[usize], x_n: usize, c: &EqRel) -> Result<StarAlgebra, StarAlgError> {
    if c.n() != x_n {
        return Err(StarAlgError::DimMismatch { expected: x_n, found: c.n() });
    }
    check_map(h, x_n)?;
    check_ambient(h.len())?;
    let images: Vec<Matrix> = c
        .classes()
        .iter()
        .map(|block| Matrix::diag_ints(&h.iter().map(|x| i64::from(block.contains(x))).collect::<Vec<_>>()))
        .filter(|m| !m.is_zero())
        .collect();
    generated_algebra(h.len(), &images)
}

/// For surjective `h: Y → X`, the preimage of `C_S ⊆ C(Y)` under precomposition:
/// the finest relation on `X` containing every `(h(y), h(y'))` with `y S y'`.
pub fn pullback_adjoint(h: &[usize], x_n: usize, d: &EqRel) -> Result<EqRel, StarAlgError> {
    if d.n() != h.len() {
        return Err(StarAlgError::DimMismatch { expected: h.len(), found: d.n() });
    }
    check_map(h, x_n)?;
    if let Some(x) = (0..x_n).find(|x| !h.contains(x)) {
        return Err(StarAlgError::NotSurjective(x));
    }
    let mut rel = EqRel::discrete(x_n);
    for class in d.classes() {
        let image: Vec<usize> = class.iter().map(|&y| h[y]).collect();
        rel = rel.join(&crate::partitions::collapse(x_n, &image)?)?;
    }
    Ok(rel)
}

#[cfg(test)]
mod tests;
