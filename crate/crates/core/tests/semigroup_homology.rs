use std::collections::{BTreeSet, HashSet};

use edgerees::homology::{betti_from_complex, multigraded_betti};
use edgerees::{ExponentVector, FieldChoice, Graph, SimplicialComplex, ToricPresentation};
use itertools::Itertools;
use proptest::prelude::*;

fn ev(v: &[u32]) -> ExponentVector {
    ExponentVector::new(v.to_vec())
}

/// All sums of `q`-element multisets of generators.
fn brute_degree(p: &ToricPresentation, q: usize) -> BTreeSet<ExponentVector> {
    (0..p.num_generators())
        .combinations_with_replacement(q)
        .map(|ks| ks.iter().fold(ExponentVector::zeros(p.ambient_dim()), |acc, &k| acc.add(&p.generators()[k])))
        .collect()
}

/// Every face of a complex, straight from the definition: subsets `F` of
/// generators with `a - sum F` a sum of generators.
fn brute_faces(p: &ToricPresentation, a: &ExponentVector) -> BTreeSet<Vec<usize>> {
    let q = p.degree_of(a).unwrap() as usize;
    let layers: Vec<BTreeSet<ExponentVector>> = (0..=q).map(|k| brute_degree(p, k)).collect();
    (0..p.num_generators())
        .powerset()
        .filter(|f| f.len() <= q)
        .filter(|f| {
            let s = f.iter().fold(ExponentVector::zeros(p.ambient_dim()), |acc, &k| acc.add(&p.generators()[k]));
            a.checked_sub(&s).is_some_and(|rest| layers[q - f.len()].contains(&rest))
        })
        .collect()
}

fn all_faces(c: &SimplicialComplex) -> BTreeSet<Vec<usize>> {
    c.faces_by_dimension().into_values().flatten().collect()
}

fn small_graphs() -> Vec<Graph> {
    vec![
        Graph::cycle(3).unwrap(),
        Graph::cycle(4).unwrap(),
        Graph::cycle(5).unwrap(),
        Graph::path(4).unwrap(),
        Graph::disjoint_edges(2).unwrap(),
        Graph::complete_bipartite(1, 3).unwrap(),
        Graph::new(4, [(1, 2), (2, 3), (1, 3), (3, 4)]).unwrap(),
    ]
}

/// `u_1 v_3 v_4 ... v_{2m}` in the Rees algebra of `m` disjoint edges.
fn disjoint_edges_degree(m: usize) -> ExponentVector {
    let mut a = vec![1u32; 2 * m];
    a.push(2 * m as u32 - 2);
    ExponentVector::new(a)
}

/// `F_i = {u_i, v_1..v_2m} \ {v_{2i-1}, v_{2i}}` with `u_i = i - 1` and
/// `v_j = m + j - 1` as generator indices.
fn disjoint_edges_facets(m: usize) -> Vec<Vec<usize>> {
    (1..=m)
        .map(|i| {
            let mut f = vec![i - 1];
            f.extend((1..=2 * m).filter(|&j| j != 2 * i - 1 && j != 2 * i).map(|j| m + j - 1));
            f
        })
        .sorted()
        .collect()
}

#[test]
fn enumeration_matches_multisets_and_membership() {
    for g in small_graphs() {
        let p = ToricPresentation::rees_algebra(&g).unwrap();
        for q in 0..=3 {
            let fast: BTreeSet<_> = p.enumerate_degree(q).into_iter().collect();
            assert_eq!(fast, brute_degree(&p, q), "{g:?} q={q}");
            for b in &fast {
                let w = p.membership(b).unwrap().expect("element of the semigroup");
                let sum = w.iter().fold(ExponentVector::zeros(p.ambient_dim()), |acc, &k| acc.add(&p.generators()[k]));
                assert_eq!(&sum, b);
                assert_eq!(w.len(), q);
            }
        }
    }
}

#[test]
fn membership_rejects_everything_else_of_the_right_degree() {
    let p = ToricPresentation::rees_algebra(&Graph::cycle(4).unwrap()).unwrap();
    let members: HashSet<_> = brute_degree(&p, 2).into_iter().collect();
    // all vectors in N^5 with coordinate sum 4
    for a in 0..=4u32 {
        for b in 0..=4 - a {
            for c in 0..=4 - a - b {
                for d in 0..=4 - a - b - c {
                    let v = ev(&[a, b, c, d, 4 - a - b - c - d]);
                    assert_eq!(p.contains(&v).unwrap(), members.contains(&v), "{v}");
                }
            }
        }
    }
}

#[test]
fn divisor_complexes_match_definition() {
    for g in small_graphs() {
        let p = ToricPresentation::rees_algebra(&g).unwrap();
        for q in 1..=3 {
            for a in p.enumerate_degree(q) {
                let c = p.divisor_complex(&a).unwrap();
                assert_eq!(all_faces(&c), brute_faces(&p, &a), "{g:?} a={a}");
            }
        }
    }
}

#[test]
fn divisor_complexes_are_closed_under_faces() {
    let p = ToricPresentation::rees_algebra(&Graph::cycle(5).unwrap()).unwrap();
    for a in p.enumerate_degree(3) {
        let faces = all_faces(&p.divisor_complex(&a).unwrap());
        for f in &faces {
            for k in 0..f.len() {
                let mut sub = f.clone();
                sub.remove(k);
                assert!(faces.contains(&sub));
            }
        }
    }
}

#[test]
fn pure_subring_complexes_coincide() {
    for g in small_graphs() {
        let rees = ToricPresentation::rees_algebra(&g).unwrap();
        let edge_in_rees = rees.pure_restriction(&(1..=g.n()).collect::<Vec<_>>()).unwrap();
        assert_eq!(edge_in_rees.num_generators(), g.num_edges());
        for q in 1..=3 {
            for a in edge_in_rees.enumerate_degree(q) {
                let big = rees.divisor_complex(&a).unwrap();
                let small = edge_in_rees.divisor_complex(&a).unwrap();
                // generator k of the restriction is generator k of the Rees presentation
                assert_eq!(all_faces(&big), all_faces(&small), "{g:?} a={a}");
            }
        }
    }
}

#[test]
fn disjoint_edges_facets_are_exactly_the_displayed_ones() {
    for m in 2..=4 {
        let p = ToricPresentation::rees_algebra(&Graph::disjoint_edges(m).unwrap()).unwrap();
        let a = disjoint_edges_degree(m);
        let c = p.divisor_complex(&a).unwrap();
        assert_eq!(c.facets(), disjoint_edges_facets(m).as_slice(), "m = {m}");
    }
}

#[test]
fn disjoint_edges_homology_is_a_sphere_in_degree_m_minus_2() {
    for m in 2..=4 {
        let p = ToricPresentation::rees_algebra(&Graph::disjoint_edges(m).unwrap()).unwrap();
        let c = p.divisor_complex(&disjoint_edges_degree(m)).unwrap();
        let h = c.reduced_homology_dims(FieldChoice::Rationals);
        let top = m as isize - 2;
        assert!(h[&top] >= 1, "m = {m}: {h:?}");
        assert!(h.iter().filter(|(&i, _)| i > top).all(|(_, &d)| d == 0));
        assert_eq!(h, c.reduced_homology_dims(FieldChoice::PrimeField(32003)));
        assert!(multigraded_betti(&p, &disjoint_edges_degree(m), m - 1, FieldChoice::Rationals).unwrap() >= 1);
    }
}

#[test]
fn betti_zero_convention() {
    let p = ToricPresentation::new(2, vec![ev(&[2, 0]), ev(&[1, 1]), ev(&[0, 2])]).unwrap();
    assert_eq!(multigraded_betti(&p, &ev(&[0, 0]), 0, FieldChoice::Rationals).unwrap(), 1);
    assert_eq!(multigraded_betti(&p, &ev(&[2, 0]), 0, FieldChoice::Rationals).unwrap(), 0);
    assert_eq!(multigraded_betti(&p, &ev(&[2, 2]), 1, FieldChoice::Rationals).unwrap(), 1);
    assert!(multigraded_betti(&p, &ev(&[1, 0]), 0, FieldChoice::Rationals).is_err());
}

fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    (1usize..=7).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::btree_set(0..n, 1..=n.min(4)), 1..6).prop_map(move |fs| {
            SimplicialComplex::from_facets(n, fs.into_iter().map(|f| f.into_iter().collect()).collect()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn boundary_squares_to_zero(c in complex_strategy()) {
        let top = c.dimension().unwrap();
        for i in 0..=top {
            prop_assert!(c.boundary_matrix(i).mul(&c.boundary_matrix(i + 1)).is_zero());
        }
    }

    #[test]
    fn euler_characteristic(c in complex_strategy()) {
        let f = c.f_vector();
        // f[0] is the empty face
        let alt: i64 = f.iter().enumerate().map(|(k, &n)| if k % 2 == 0 { -(n as i64) } else { n as i64 }).sum();
        prop_assert_eq!(c.reduced_euler_characteristic(FieldChoice::Rationals), alt);
    }

    #[test]
    fn rationals_and_large_prime_agree(c in complex_strategy()) {
        prop_assert_eq!(
            c.reduced_homology_dims(FieldChoice::Rationals),
            c.reduced_homology_dims(FieldChoice::PrimeField(32003))
        );
    }

    #[test]
    fn cones_are_acyclic(c in complex_strategy()) {
        let cone = c.cone("apex");
        prop_assert!(cone.reduced_homology_dims(FieldChoice::Rationals).values().all(|&d| d == 0));
        prop_assert!(betti_from_complex(&cone, FieldChoice::Rationals).is_empty());
    }
}
