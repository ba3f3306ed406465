#![allow(dead_code)]

use std::collections::BTreeSet;

use edgerees::{ExponentVector, Graph, ToricPresentation};
use itertools::Itertools;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All sums of `q`-element multisets of generators.
pub fn brute_degree(p: &ToricPresentation, q: usize) -> BTreeSet<ExponentVector> {
    (0..p.num_generators())
        .combinations_with_replacement(q)
        .map(|ks| ks.iter().fold(ExponentVector::zeros(p.ambient_dim()), |acc, &k| acc.add(&p.generators()[k])))
        .collect()
}

pub fn graph_strategy(min_n: usize, max_n: usize, p_percent: u32) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(move |n| {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        proptest::collection::vec(0u32..100, pairs.len()).prop_map(move |coins| {
            let edges = pairs.iter().zip(&coins).filter(|(_, &c)| c < p_percent).map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<_> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).filter(|_| rng.gen_bool(p)).collect();
    Graph::new(n, edges).unwrap()
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The six-vertex graph with a vertex of degree five used throughout.
pub fn six_vertex_example() -> Graph {
    Graph::new(6, [(1, 2), (2, 3), (3, 4), (1, 4), (2, 4), (2, 5), (2, 6)]).unwrap()
}

pub fn two_triangles() -> Graph {
    Graph::disjoint_union(&Graph::cycle(3).unwrap(), &Graph::cycle(3).unwrap()).unwrap()
}
