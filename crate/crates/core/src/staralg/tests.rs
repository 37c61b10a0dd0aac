use rand::rngs::StdRng;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};

use super::*;
use crate::order::Approximation;
use crate::partitions::{collapse, partition_lattice, stirling2, Orientation};

fn g(s: &str) -> GaussRat {
    s.parse().unwrap()
}

fn rows(r: &[&[&str]]) -> Matrix {
    Matrix::from_rows(r.iter().map(|row| row.iter().map(|s| g(s)).collect()).collect()).unwrap()
}

#[test]
fn generated_algebra_examples() {
    let p = Matrix::diag_ints(&[1, 0]);
    let a = generated_algebra(2, std::slice::from_ref(&p)).unwrap();
    assert_eq!(a.dim(), 2);
    assert!(a.contains(&Matrix::identity(2).sub(&p)));
    assert_eq!(StarAlgebra::scalars(2).unwrap().dim(), 1);
    let full = generated_algebra(2, &[Matrix::unit(2, 0, 1)]).unwrap();
    assert_eq!(full.dim(), 4);
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        assert!(full.contains(&Matrix::unit(2, i, j)));
    }
    assert!(matches!(
        generated_algebra(2, &[Matrix::identity(3)]),
        Err(StarAlgError::DimMismatch { expected: 2, found: 3 })
    ));
    assert!(generated_algebra(17, &[]).is_err());
}

#[test]
fn commutativity_examples() {
    assert!(StarAlgebra::diagonal(3).unwrap().is_commutative());
    assert!(!generated_algebra(2, &[Matrix::unit(2, 0, 1)]).unwrap().is_commutative());
    let a = generated_algebra(3, &[Matrix::diag_ints(&[1, 1, 0]), Matrix::diag_ints(&[1, 0, 0])]).unwrap();
    assert!(a.is_commutative());
    assert_eq!(a.dim(), 3);
    assert_eq!(a, StarAlgebra::diagonal(3).unwrap());
}

#[test]
fn from_basis_validates_closure() {
    let ok = StarAlgebra::from_basis(2, &[Matrix::identity(2), Matrix::diag_ints(&[1, 0])]).unwrap();
    assert_eq!(ok.dim(), 2);
    let no_adjoint = StarAlgebra::from_basis(2, &[Matrix::identity(2), Matrix::unit(2, 0, 1)]);
    assert!(matches!(no_adjoint, Err(StarAlgError::NotClosed(_))));
    let no_unit = StarAlgebra::from_basis(2, &[Matrix::diag_ints(&[1, 0])]);
    assert!(matches!(no_unit, Err(StarAlgError::NotClosed(_))));
}

fn random_matrix(rng: &mut StdRng, n: usize) -> Matrix {
    let shape: u8 = rng.gen_range(0..3);
    match shape {
        // a diagonal 0/1 projection
        0 => Matrix::diag_ints(&(0..n).map(|_| rng.gen_range(0..2)).collect::<Vec<_>>()),
        // a matrix unit
        1 => Matrix::unit(n, rng.gen_range(0..n), rng.gen_range(0..n)),
        // a small diagonal with integer entries
        _ => Matrix::diag_ints(&(0..n).map(|_| rng.gen_range(-2..3)).collect::<Vec<_>>()),
    }
}

#[test]
fn generated_algebra_is_a_closure_operator() {
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..40 {
        let n = rng.gen_range(1..=4);
        let small: Vec<Matrix> = (0..rng.gen_range(0..3)).map(|_| random_matrix(&mut rng, n)).collect();
        let mut large = small.clone();
        large.extend((0..rng.gen_range(0..3)).map(|_| random_matrix(&mut rng, n)));
        let a = generated_algebra(n, &small).unwrap();
        let b = generated_algebra(n, &large).unwrap();
        assert!(small.iter().all(|m| a.contains(m)), "extensive");
        assert!(a.is_subalgebra_of(&b), "monotone");
        assert_eq!(generated_algebra(n, &a.basis()).unwrap(), a, "idempotent");
        a.check_closed().unwrap();
        b.check_closed().unwrap();
    }
}

#[test]
fn minimal_projections_examples() {
    let a = generated_algebra(3, &[Matrix::diag_ints(&[1, 1, 0]), Matrix::diag_ints(&[1, 0, 0])]).unwrap();
    assert_eq!(
        minimal_projections(&a).unwrap(),
        vec![Matrix::diag_ints(&[1, 0, 0]), Matrix::diag_ints(&[0, 1, 0]), Matrix::diag_ints(&[0, 0, 1])]
    );
    assert_eq!(minimal_projections(&StarAlgebra::scalars(3).unwrap()).unwrap(), vec![Matrix::identity(3)]);
    let c = generated_algebra(2, &[Matrix::diag_ints(&[1, 0])]).unwrap();
    assert_eq!(minimal_projections(&c).unwrap(), vec![Matrix::diag_ints(&[1, 0]), Matrix::diag_ints(&[0, 1])]);
    let m2 = generated_algebra(2, &[Matrix::unit(2, 0, 1)]).unwrap();
    assert_eq!(minimal_projections(&m2), Err(StarAlgError::NotCommutative));
    let scaled = generated_algebra(2, &[Matrix::diag_ints(&[2, 0])]).unwrap();
    assert_eq!(minimal_projections(&scaled), Err(StarAlgError::GeneratorNotProjection(0)));
}

#[test]
fn minimal_projections_are_an_orthogonal_resolution() {
    let half = "1/2";
    let swap_proj = rows(&[&[half, half, "0"], &[half, half, "0"], &["0", "0", "0"]]);
    let a = generated_algebra(3, &[swap_proj, Matrix::diag_ints(&[0, 0, 1])]).unwrap();
    let ps = minimal_projections(&a).unwrap();
    assert_eq!(ps.len(), a.dim());
    let sum = ps.iter().fold(Matrix::zero(3), |acc, p| acc.add(p));
    assert_eq!(sum, Matrix::identity(3));
    for (i, p) in ps.iter().enumerate() {
        assert!(p.is_projection() && !p.is_zero() && a.contains(p));
        for q in &ps[i + 1..] {
            assert!(p.mul(q).is_zero());
        }
    }
}

#[test]
fn spectrum_examples() {
    let d3 = spectrum(&StarAlgebra::diagonal(3).unwrap()).unwrap();
    assert_eq!(d3.len(), 3);
    let a = Matrix::diag_ints(&[5, -1, 2]);
    let evals: Vec<GaussRat> = (0..3).map(|j| d3.character(j, &a)).collect();
    assert_eq!(evals, a.diagonal());
    assert_eq!(spectrum(&StarAlgebra::scalars(2).unwrap()).unwrap().len(), 1);
    let gen = Matrix::diag_ints(&[1, 1, 0]);
    let c = generated_algebra(3, std::slice::from_ref(&gen)).unwrap();
    let sp = spectrum(&c).unwrap();
    assert_eq!(sp.len(), 2);
    let on_gen: Vec<GaussRat> = (0..2).map(|j| sp.character(j, &gen)).collect();
    assert_eq!(on_gen, vec![GaussRat::one(), GaussRat::zero()]);
    let complement = Matrix::identity(3).sub(&gen);
    let on_complement: Vec<GaussRat> = (0..2).map(|j| sp.character(j, &complement)).collect();
    assert_eq!(on_complement, vec![GaussRat::zero(), GaussRat::one()]);
}

#[test]
fn characters_are_multiplicative() {
    let a = StarAlgebra::diagonal(3).unwrap();
    let sp = spectrum(&a).unwrap();
    let x = Matrix::diag(&[g("1/2+1 i"), g("-3"), g("2 i")]);
    let y = Matrix::diag(&[g("4"), g("1/3 i"), g("-1")]);
    for j in 0..3 {
        assert_eq!(sp.character(j, &x.mul(&y)), &sp.character(j, &x) * &sp.character(j, &y));
        assert_eq!(sp.character(j, &x.adjoint()), sp.character(j, &x).conj());
    }
}

#[test]
fn lattice_sizes() {
    assert_eq!(c_lattice(&StarAlgebra::diagonal(3).unwrap()).unwrap().len(), 5);
    assert_eq!(c_lattice(&StarAlgebra::diagonal(4).unwrap()).unwrap().len(), 15);
    let trivial = c_lattice(&StarAlgebra::scalars(2).unwrap()).unwrap();
    assert_eq!(trivial.len(), 1);
    assert_eq!(trivial.poset.bottom(), trivial.poset.top());
}

#[test]
fn lattice_bottom_is_scalars_and_top_is_everything() {
    let a = StarAlgebra::diagonal(3).unwrap();
    let lat = c_lattice(&a).unwrap();
    let bottom = lat.poset.bottom().unwrap();
    let top = lat.poset.top().unwrap();
    assert_eq!(lat.nodes[bottom].algebra, StarAlgebra::scalars(3).unwrap());
    assert_eq!(lat.nodes[top].algebra, a);
}

/// The node order must agree with the subalgebra orientation of the partition lattice.
fn bridge_holds(k: usize) {
    let lat = c_lattice(&StarAlgebra::diagonal(k).unwrap()).unwrap();
    let parts = partition_lattice(k, Orientation::Subalgebra).unwrap();
    let map: Vec<usize> = lat.nodes.iter().map(|nd| parts.index_of(&nd.partition).unwrap()).collect();
    assert!(lat.poset.is_isomorphism(&parts.poset, &map));
}

#[test]
fn lattice_matches_partitions() {
    for k in 1..=5 {
        bridge_holds(k);
    }
}

#[test]
fn lattice_order_is_span_containment() {
    for k in 1..=4 {
        let lat = c_lattice(&StarAlgebra::diagonal(k).unwrap()).unwrap();
        assert_eq!(lat.verify_inclusions(), None);
    }
    // a non-diagonal ambient with two-dimensional minimal projection
    let half = "1/2";
    let p = rows(&[&[half, half, "0"], &[half, half, "0"], &["0", "0", "0"]]);
    let a = generated_algebra(3, &[p, Matrix::diag_ints(&[0, 0, 1])]).unwrap();
    let lat = c_lattice(&a).unwrap();
    assert_eq!(lat.len(), 5);
    assert_eq!(lat.verify_inclusions(), None);
}

#[test]
fn atoms_counts_and_covers() {
    assert_eq!(atoms(&StarAlgebra::diagonal(3).unwrap()).unwrap().len(), 3);
    assert_eq!(atoms(&StarAlgebra::diagonal(4).unwrap()).unwrap().len(), 7);
    assert!(atoms(&StarAlgebra::scalars(3).unwrap()).unwrap().is_empty());
    for k in 1..=5 {
        let a = StarAlgebra::diagonal(k).unwrap();
        let found = atoms(&a).unwrap();
        assert_eq!(found.len() as u128, stirling2(k, 2));
        assert!(found.iter().all(|c| c.dim() == 2 && c.is_subalgebra_of(&a)));
        let lat = c_lattice(&a).unwrap();
        let mut covers: Vec<usize> = lat.poset.atoms();
        let mut located: Vec<usize> = found.iter().map(|c| lat.index_of(c).unwrap()).collect();
        covers.sort_unstable();
        located.sort_unstable();
        assert_eq!(covers, located);
    }
}

#[test]
fn join_examples() {
    let e = StarAlgebra::diagonal(3).unwrap();
    let at = atoms(&e).unwrap();
    assert_eq!(csa_join(&at[0], &at[1], &e).unwrap(), e);
    assert_eq!(csa_join(&at[2], &at[2], &e).unwrap(), at[2]);
    let scalars = StarAlgebra::scalars(3).unwrap();
    assert_eq!(csa_join(&scalars, &at[1], &e).unwrap(), at[1]);
    let m3 = generated_algebra(3, &[Matrix::unit(3, 0, 1), Matrix::unit(3, 1, 2)]).unwrap();
    assert_eq!(csa_join(&scalars, &scalars, &m3), Err(StarAlgError::AmbientNotCommutative));
    let off = generated_algebra(2, &[Matrix::diag_ints(&[1, 0])]).unwrap();
    let e2 = generated_algebra(2, &[rows(&[&["1/2", "1/2"], &["1/2", "1/2"]])]).unwrap();
    assert_eq!(csa_join(&off, &off, &e2), Err(StarAlgError::NotSubalgebra));
}

#[test]
fn join_is_least_upper_bound_in_lattice() {
    for k in 1..=4 {
        let e = StarAlgebra::diagonal(k).unwrap();
        let lat = c_lattice(&e).unwrap();
        for i in 0..lat.len() {
            for j in 0..lat.len() {
                let joined = csa_join(&lat.nodes[i].algebra, &lat.nodes[j].algebra, &e).unwrap();
                assert_eq!(lat.index_of(&joined), lat.poset.join(i, j));
            }
        }
    }
}

#[test]
fn projection_generation_examples() {
    let d3 = generated_by_projections(&StarAlgebra::diagonal(3).unwrap()).unwrap();
    assert!(d3.generated);
    assert_eq!(d3.projections.len(), 3);
    let s = generated_by_projections(&StarAlgebra::scalars(2).unwrap()).unwrap();
    assert!(s.generated);
    assert_eq!(s.projections, vec![Matrix::identity(2)]);
    let c = generated_by_projections(&generated_algebra(2, &[Matrix::diag_ints(&[1, 0])]).unwrap()).unwrap();
    assert!(c.generated);
    assert!(c.projections.contains(&Matrix::diag_ints(&[1, 0])));
}

#[test]
fn projection_generation_on_non_diagonal_algebras() {
    // C*(swap) has projections (I ± swap)/2.
    let swap = rows(&[&["0", "1"], &["1", "0"]]);
    let a = generated_algebra(2, &[swap]).unwrap();
    let check = generated_by_projections(&a).unwrap();
    assert!(check.generated);
    assert!(check.projections.contains(&rows(&[&["1/2", "1/2"], &["1/2", "1/2"]])));
    // a Hermitian generator with eigenvalues (1 ± √5)/2 has no rational spectral projections
    let golden = generated_algebra(2, &[rows(&[&["1", "1"], &["1", "0"]])]).unwrap();
    let check = generated_by_projections(&golden).unwrap();
    assert!(!check.generated);
    assert!(check.obstruction.is_some());
    let m2 = generated_algebra(2, &[Matrix::unit(2, 0, 1)]).unwrap();
    assert_eq!(generated_by_projections(&m2), Err(StarAlgError::NotCommutative));
}

#[test]
fn pushforward_examples() {
    let c = collapse(3, &[0, 1]).unwrap();
    assert_eq!(pushforward_hom(&[0, 1, 2], 3, &c).unwrap(), c);
    for r in all_partitions(3) {
        assert_eq!(pushforward_hom(&[2, 2], 3, &r).unwrap(), EqRel::full(2));
    }
    assert_eq!(pushforward_hom(&[0, 1], 3, &c).unwrap(), EqRel::full(2));
    assert!(matches!(pushforward_hom(&[0, 3], 3, &c), Err(StarAlgError::NotTotal { index: 1, value: 3, codomain: 3 })));
}

fn all_maps(y_n: usize, x_n: usize) -> Vec<Vec<usize>> {
    let count = x_n.pow(y_n as u32);
    (0..count)
        .map(|mut code| {
            (0..y_n)
                .map(|_| {
                    let v = code % x_n;
                    code /= x_n;
                    v
                })
                .collect()
        })
        .collect()
}

#[test]
fn pushforward_matches_matrix_route() {
    for x_n in 1..=3 {
        for y_n in 1..=3 {
            let diag_y: Vec<Matrix> = (0..y_n).map(|i| Matrix::unit(y_n, i, i)).collect();
            for h in all_maps(y_n, x_n) {
                for c in all_partitions(x_n) {
                    let by_partition = pushforward_hom(&h, x_n, &c).unwrap();
                    let by_matrix = pushforward_matrix(&h, x_n, &c).unwrap();
                    assert_eq!(by_matrix, block_sum_algebra(y_n, &diag_y, &by_partition), "h={h:?} c={c}");
                }
            }
        }
    }
}

#[test]
fn pushforward_is_monotone_and_preserves_directed_joins() {
    for x_n in 1..=3 {
        let xs = partition_lattice(x_n, Orientation::Subalgebra).unwrap();
        let approx = Approximation::with_path(&xs.poset, crate::order::Path::Definitional).unwrap();
        for y_n in 1..=3 {
            let ys = partition_lattice(y_n, Orientation::Subalgebra).unwrap();
            for h in all_maps(y_n, x_n) {
                let image: Vec<usize> = xs
                    .partitions
                    .iter()
                    .map(|c| ys.index_of(&pushforward_hom(&h, x_n, c).unwrap()).unwrap())
                    .collect();
                for (a, b) in (0..xs.len()).flat_map(|a| (0..xs.len()).map(move |b| (a, b))) {
                    if xs.poset.leq(a, b) {
                        assert!(ys.poset.leq(image[a], image[b]));
                    }
                }
                for (set, sup) in approx.directed_sets() {
                    let members: Vec<usize> = set.ones().map(|i| image[i]).collect();
                    assert_eq!(ys.poset.lub(&members), Some(image[*sup]));
                }
            }
        }
    }
}

#[test]
fn pullback_adjoint_examples() {
    // h: {0,1,2,3} → {0,1}, 0,1 ↦ 0 and 2,3 ↦ 1
    let h = [0, 0, 1, 1];
    let d = collapse(4, &[1, 2]).unwrap();
    assert_eq!(pullback_adjoint(&h, 2, &d).unwrap(), EqRel::full(2));
    assert_eq!(pullback_adjoint(&h, 2, &EqRel::discrete(4)).unwrap(), EqRel::discrete(2));
    assert_eq!(pullback_adjoint(&[0, 0], 2, &EqRel::discrete(2)), Err(StarAlgError::NotSurjective(1)));
}

#[test]
fn pullback_adjoint_is_monotone_for_surjections() {
    for x_n in 1..=3 {
        let xs = partition_lattice(x_n, Orientation::Subalgebra).unwrap();
        for y_n in x_n..=4 {
            let ys = partition_lattice(y_n, Orientation::Subalgebra).unwrap();
            for h in all_maps(y_n, x_n).into_iter().filter(|h| (0..x_n).all(|x| h.contains(&x))) {
                let image: Vec<usize> = ys
                    .partitions
                    .iter()
                    .map(|d| xs.index_of(&pullback_adjoint(&h, x_n, d).unwrap()).unwrap())
                    .collect();
                for a in 0..ys.len() {
                    for b in 0..ys.len() {
                        if ys.poset.leq(a, b) {
                            assert!(xs.poset.leq(image[a], image[b]));
                        }
                    }
                }
                // It is adjoint to the pushforward: C ⊆ adj(D) iff push(C) ⊆ D.
                for (ci, c) in xs.partitions.iter().enumerate() {
                    let pushed = ys.index_of(&pushforward_hom(&h, x_n, c).unwrap()).unwrap();
                    for di in 0..ys.len() {
                        assert_eq!(ys.poset.leq(pushed, di), xs.poset.leq(ci, image[di]));
                    }
                }
            }
        }
    }
}

#[test]
fn algebra_json_round_trip() {
    let json = r#"{"dim":2,"generators":[[["1","0"],["0","0"]]]}"#;
    let parsed: AlgebraJson = serde_json::from_str(json).unwrap();
    let a = StarAlgebra::from_json(&parsed).unwrap();
    assert_eq!(a.dim(), 2);
    assert_eq!(serde_json::to_string(&a.to_json()).unwrap(), json);
}
