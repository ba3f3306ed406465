//! Affine semigroups generated by equal-degree monomials, with the edge ring
//! `K[G]` and the Rees algebra `K[G*]` as the main instances.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homology::SimplicialComplex;

/// Exponent vector of a monomial `x^a`, i.e. a point of `N^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(coords: Vec<u32>) -> Self {
        ExponentVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        ExponentVector(vec![0; dim])
    }

    /// `e_i + e_j`, 0-based.
    pub fn edge(dim: usize, i: usize, j: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] += 1;
        v[j] += 1;
        ExponentVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Coordinatewise `self <= other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &ExponentVector) -> Option<ExponentVector> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(ExponentVector)
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Support as 0-based coordinate indices.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| i)
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A toric ring `K[u_1, ..., u_m]` given by the exponent vectors of its
/// monomial generators, all of one common total degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricPresentation {
    ambient_dim: usize,
    generators: Vec<ExponentVector>,
    labels: Vec<String>,
}

impl ToricPresentation {
    /// Generators are labelled `g1, g2, ...`.
    pub fn new(ambient_dim: usize, generators: Vec<ExponentVector>) -> Result<Self> {
        let labels = (1..=generators.len()).map(|k| format!("g{k}")).collect();
        Self::with_labels(ambient_dim, generators, labels)
    }

    pub fn with_labels(ambient_dim: usize, generators: Vec<ExponentVector>, labels: Vec<String>) -> Result<Self> {
        if labels.len() != generators.len() {
            return Err(Error::InvalidPresentation(format!(
                "{} labels for {} generators",
                labels.len(),
                generators.len()
            )));
        }
        if generators.len() > 64 {
            return Err(Error::InvalidPresentation("more than 64 generators".into()));
        }
        let mut seen = HashSet::new();
        for g in &generators {
            if g.dim() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: g.dim() });
            }
            if g.is_zero() {
                return Err(Error::InvalidPresentation("zero generator".into()));
            }
            if g.total() != generators[0].total() {
                return Err(Error::InvalidPresentation(format!(
                    "generators {} and {g} have different degrees",
                    generators[0]
                )));
            }
            if !seen.insert(g) {
                return Err(Error::InvalidPresentation(format!("repeated generator {g}")));
            }
        }
        Ok(ToricPresentation { ambient_dim, generators, labels })
    }

    /// The edge ring `K[G]`: one generator `e_i + e_j` per edge, in
    /// lexicographic edge order.
    pub fn edge_ring(g: &Graph) -> Result<Self> {
        if g.num_edges() == 0 {
            return Err(Error::EmptyEdgeSet);
        }
        let gens = g.edges0().iter().map(|&(i, j)| ExponentVector::edge(g.n(), i, j)).collect();
        let labels = g.edges().iter().map(|(i, j)| format!("x{i}x{j}")).collect();
        Self::with_labels(g.n(), gens, labels)
    }

    /// The Rees algebra `R(I(G)) = K[G*]`. The edges of `G` come first in
    /// lexicographic order, then the cone edges `{i, n+1}` ordered by `i`.
    pub fn rees_algebra(g: &Graph) -> Result<Self> {
        if g.num_edges() == 0 {
            return Err(Error::EmptyEdgeSet);
        }
        let d = g.n() + 1;
        let mut gens: Vec<_> = g.edges0().iter().map(|&(i, j)| ExponentVector::edge(d, i, j)).collect();
        let mut labels: Vec<_> = g.edges().iter().map(|(i, j)| format!("x{i}x{j}")).collect();
        for i in 0..g.n() {
            gens.push(ExponentVector::edge(d, i, g.n()));
            labels.push(format!("x{}t", i + 1));
        }
        Self::with_labels(d, gens, labels)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Common total degree of the generators, `None` for the empty
    /// presentation.
    pub fn generator_degree(&self) -> Option<u64> {
        self.generators.first().map(ExponentVector::total)
    }

    /// Semigroup degree of `b` (number of generators in any factorisation),
    /// if the total degree is divisible by the generator degree.
    pub fn degree_of(&self, b: &ExponentVector) -> Option<u64> {
        match self.generator_degree() {
            None => b.is_zero().then_some(0),
            Some(d) => b.total().is_multiple_of(d).then(|| b.total() / d),
        }
    }

    fn check_dim(&self, b: &ExponentVector) -> Result<()> {
        if b.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: b.dim() });
        }
        Ok(())
    }

    /// A factorisation of `b` into generators, as sorted generator indices
    /// (0-based, with repetition), or `None` if `b` is not in the semigroup.
    pub fn membership(&self, b: &ExponentVector) -> Result<Option<Vec<usize>>> {
        self.check_dim(b)?;
        Ok(MembershipOracle::new(self).witness(b))
    }

    pub fn contains(&self, b: &ExponentVector) -> Result<bool> {
        self.check_dim(b)?;
        Ok(MembershipOracle::new(self).contains(b))
    }

    /// All distinct sums of `q` generators, sorted.
    pub fn enumerate_degree(&self, q: usize) -> Vec<ExponentVector> {
        self.enumerate_up_to(q, None).expect("no limit set").pop().unwrap_or_default()
    }

    /// Layers `0..=q_max` of the semigroup, each sorted. With a limit, fails
    /// once the total number of elements would exceed it.
    pub fn enumerate_up_to(&self, q_max: usize, limit: Option<usize>) -> Result<Vec<Vec<ExponentVector>>> {
        let mut layers = vec![vec![ExponentVector::zeros(self.ambient_dim)]];
        let mut count = 1usize;
        for _ in 0..q_max {
            let prev = layers.last().unwrap();
            let mut next = BTreeSet::new();
            for v in prev {
                for g in &self.generators {
                    next.insert(v.add(g));
                }
            }
            count += next.len();
            if let Some(max) = limit {
                if count > max {
                    return Err(Error::LimitExceeded(format!("more than {max} multidegrees up to degree {q_max}")));
                }
            }
            layers.push(next.into_iter().collect());
        }
        Ok(layers)
    }

    /// The squarefree divisor complex `Delta_a`: vertices are generator
    /// indices, `F` is a face iff `a - sum_{i in F} gen_i` lies in the
    /// semigroup.
    pub fn divisor_complex(&self, a: &ExponentVector) -> Result<SimplicialComplex> {
        self.check_dim(a)?;
        let mut oracle = MembershipOracle::new(self);
        if !oracle.contains(a) {
            return Err(Error::DegreeNotInSemigroup(a.to_string()));
        }
        Ok(self.divisor_complex_with(a, |b| oracle.contains(b)))
    }

    /// Same as [`divisor_complex`](Self::divisor_complex), with a caller
    /// supplied membership test; `a` is assumed to be in the semigroup.
    pub fn divisor_complex_with<F>(&self, a: &ExponentVector, mut member: F) -> SimplicialComplex
    where
        F: FnMut(&ExponentVector) -> bool,
    {
        let candidates: Vec<usize> = (0..self.generators.len())
            .filter(|&k| a.checked_sub(&self.generators[k]).is_some_and(|rest| member(&rest)))
            .collect();

        let mut faces: HashSet<u64> = HashSet::new();
        faces.insert(0);
        // (face mask, residual, next candidate position)
        let mut stack = vec![(0u64, a.clone(), 0usize)];
        while let Some((mask, residual, from)) = stack.pop() {
            for pos in from..candidates.len() {
                let k = candidates[pos];
                let Some(rest) = residual.checked_sub(&self.generators[k]) else {
                    continue;
                };
                let grown = mask | (1u64 << k);
                // subsets of faces are faces, so only faces need extending
                let is_face = mask == 0 || member(&rest);
                if is_face {
                    faces.insert(grown);
                    stack.push((grown, rest, pos + 1));
                }
            }
        }

        let facets: Vec<Vec<usize>> = faces
            .iter()
            .filter(|&&f| !candidates.iter().any(|&k| f & (1 << k) == 0 && faces.contains(&(f | (1 << k)))))
            .map(|&f| (0..64).filter(|k| f & (1 << k) != 0).collect())
            .collect();
        SimplicialComplex::new(self.labels.clone(), facets).expect("facets built from generator indices")
    }

    /// The combinatorial pure subring `A ∩ K[x_i : i in t]` (`t` 1-based):
    /// the generators whose support lies in `t`.
    pub fn pure_restriction(&self, t: &[usize]) -> Result<Self> {
        let mut keep = vec![false; self.ambient_dim];
        for &i in t {
            if i == 0 || i > self.ambient_dim {
                return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: i });
            }
            keep[i - 1] = true;
        }
        let (gens, labels): (Vec<_>, Vec<_>) = self
            .generators
            .iter()
            .zip(&self.labels)
            .filter(|(g, _)| g.support().all(|i| keep[i]))
            .map(|(g, l)| (g.clone(), l.clone()))
            .unzip();
        Ok(ToricPresentation { ambient_dim: self.ambient_dim, generators: gens, labels })
    }
}

/// Depth-first factorisation search with a memo of residuals known to be
/// outside the semigroup. Generators are bucketed by their first nonzero
/// coordinate: the first nonzero coordinate of the residual can only be
/// covered by a generator starting there.
pub struct MembershipOracle<'a> {
    p: &'a ToricPresentation,
    by_first: Vec<Vec<usize>>,
    max_coord: u32,
    failed: HashSet<ExponentVector>,
}

impl<'a> MembershipOracle<'a> {
    pub fn new(p: &'a ToricPresentation) -> Self {
        let mut by_first = vec![Vec::new(); p.ambient_dim];
        for (k, g) in p.generators.iter().enumerate() {
            if let Some(i) = g.support().next() {
                by_first[i].push(k);
            }
        }
        let max_coord = p.generators.iter().flat_map(|g| g.coords().iter().copied()).max().unwrap_or(0);
        MembershipOracle { p, by_first, max_coord, failed: HashSet::new() }
    }

    pub fn contains(&mut self, b: &ExponentVector) -> bool {
        self.witness(b).is_some()
    }

    pub fn witness(&mut self, b: &ExponentVector) -> Option<Vec<usize>> {
        let q = self.p.degree_of(b)?;
        if b.coords().iter().any(|&c| c as u64 > q * self.max_coord as u64) {
            return None;
        }
        let mut witness = Vec::with_capacity(q as usize);
        if self.solve(&mut b.clone(), &mut witness) {
            witness.sort_unstable();
            Some(witness)
        } else {
            None
        }
    }

    fn solve(&mut self, residual: &mut ExponentVector, witness: &mut Vec<usize>) -> bool {
        let Some(first) = residual.support().next() else {
            return true;
        };
        if self.failed.contains(residual) {
            return false;
        }
        for idx in 0..self.by_first[first].len() {
            let k = self.by_first[first][idx];
            let gen = &self.p.generators[k];
            if !gen.divides(residual) {
                continue;
            }
            for (r, g) in residual.0.iter_mut().zip(&gen.0) {
                *r -= g;
            }
            witness.push(k);
            if self.solve(residual, witness) {
                return true;
            }
            witness.pop();
            let gen = &self.p.generators[k];
            for (r, g) in residual.0.iter_mut().zip(&gen.0) {
                *r += g;
            }
        }
        self.failed.insert(residual.clone());
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    pub(crate) fn veronese() -> ToricPresentation {
        ToricPresentation::new(2, vec![ev(&[2, 0]), ev(&[1, 1]), ev(&[0, 2])]).unwrap()
    }

    #[test]
    fn edge_presentations() {
        let e = Graph::new(2, [(1, 2)]).unwrap();
        assert_eq!(ToricPresentation::edge_ring(&e).unwrap().generators(), &[ev(&[1, 1])]);
        let tri = Graph::cycle(3).unwrap();
        assert_eq!(
            ToricPresentation::edge_ring(&tri).unwrap().generators(),
            &[ev(&[1, 1, 0]), ev(&[1, 0, 1]), ev(&[0, 1, 1])]
        );
        assert_eq!(ToricPresentation::edge_ring(&Graph::empty(3).unwrap()), Err(Error::EmptyEdgeSet));
        assert_eq!(veronese().generator_degree(), Some(2));
    }

    #[test]
    fn presentation_validation() {
        assert!(ToricPresentation::new(2, vec![ev(&[2, 0]), ev(&[1, 0])]).is_err());
        assert!(ToricPresentation::new(2, vec![ev(&[2, 0]), ev(&[2, 0])]).is_err());
        assert!(ToricPresentation::new(2, vec![ev(&[0, 0])]).is_err());
        assert!(ToricPresentation::new(3, vec![ev(&[2, 0])]).is_err());
    }

    #[test]
    fn rees_presentations() {
        let p = ToricPresentation::rees_algebra(&Graph::new(2, [(1, 2)]).unwrap()).unwrap();
        assert_eq!((p.num_generators(), p.ambient_dim()), (3, 3));
        let p = ToricPresentation::rees_algebra(&Graph::disjoint_edges(2).unwrap()).unwrap();
        assert_eq!((p.num_generators(), p.ambient_dim()), (6, 5));
        assert_eq!(
            p.generators(),
            &[
                ev(&[1, 1, 0, 0, 0]),
                ev(&[0, 0, 1, 1, 0]),
                ev(&[1, 0, 0, 0, 1]),
                ev(&[0, 1, 0, 0, 1]),
                ev(&[0, 0, 1, 0, 1]),
                ev(&[0, 0, 0, 1, 1]),
            ]
        );
        let two = Graph::cycle(3).unwrap().disjoint_union(&Graph::cycle(3).unwrap()).unwrap();
        let p = ToricPresentation::rees_algebra(&two).unwrap();
        assert_eq!((p.num_generators(), p.ambient_dim()), (12, 7));
    }

    #[test]
    fn membership_witnesses() {
        let v = veronese();
        let w = v.membership(&ev(&[2, 2])).unwrap().unwrap();
        assert!(w == vec![0, 2] || w == vec![1, 1]);
        assert_eq!(v.membership(&ev(&[0, 0])).unwrap(), Some(vec![]));
        assert_eq!(v.membership(&ev(&[1, 0])).unwrap(), None);
        assert_eq!(v.membership(&ev(&[3, 0])).unwrap(), None);
        assert!(v.membership(&ev(&[1, 1, 1])).is_err());

        let p = ToricPresentation::rees_algebra(&Graph::disjoint_edges(2).unwrap()).unwrap();
        let b = ev(&[1, 1, 1, 1, 2]);
        let w = p.membership(&b).unwrap().unwrap();
        assert_eq!(w.len(), 3);
        let sum = w.iter().fold(ExponentVector::zeros(5), |acc, &k| acc.add(&p.generators()[k]));
        assert_eq!(sum, b);
        // x1^2 x2 t = u1 v1, while x1^2 x3 t^0 is not a product of edges
        assert_eq!(p.membership(&ev(&[2, 1, 0, 0, 1])).unwrap(), Some(vec![0, 2]));
        assert_eq!(p.membership(&ev(&[2, 0, 0, 0, 0])).unwrap(), None);
    }

    #[test]
    fn enumeration() {
        let v = veronese();
        assert_eq!(v.enumerate_degree(1), vec![ev(&[0, 2]), ev(&[1, 1]), ev(&[2, 0])]);
        assert_eq!(v.enumerate_degree(2), vec![ev(&[0, 4]), ev(&[1, 3]), ev(&[2, 2]), ev(&[3, 1]), ev(&[4, 0])]);
        let p = ToricPresentation::rees_algebra(&Graph::new(2, [(1, 2)]).unwrap()).unwrap();
        assert_eq!(p.enumerate_degree(2).len(), 6);
        assert!(v.enumerate_up_to(5, Some(10)).is_err());
    }

    #[test]
    fn veronese_divisor_complex() {
        let c = veronese().divisor_complex(&ev(&[2, 2])).unwrap();
        assert_eq!(c.facets(), &[vec![0, 2], vec![1]]);
        let c = veronese().divisor_complex(&ev(&[1, 1])).unwrap();
        assert_eq!(c.facets(), &[vec![1]]);
        assert!(matches!(veronese().divisor_complex(&ev(&[1, 0])), Err(Error::DegreeNotInSemigroup(_))));
        let c = veronese().divisor_complex(&ev(&[0, 0])).unwrap();
        assert!(c.is_irrelevant());
    }

    #[test]
    fn disjoint_edges_divisor_complex() {
        // u1 = 0, u2 = 1, v1..v4 = 2..5
        let p = ToricPresentation::rees_algebra(&Graph::disjoint_edges(2).unwrap()).unwrap();
        let c = p.divisor_complex(&ev(&[1, 1, 1, 1, 2])).unwrap();
        assert_eq!(c.facets(), &[vec![0, 4, 5], vec![1, 2, 3]]);
    }

    #[test]
    fn pure_restrictions() {
        let g = Graph::cycle(5).unwrap();
        let rees = ToricPresentation::rees_algebra(&g).unwrap();
        let restricted = rees.pure_restriction(&[1, 2, 3, 4, 5]).unwrap();
        let edge = ToricPresentation::edge_ring(&g).unwrap();
        assert_eq!(
            restricted.generators(),
            edge.generators()
                .iter()
                .map(|v| {
                    let mut c = v.coords().to_vec();
                    c.push(0);
                    ExponentVector::new(c)
                })
                .collect::<Vec<_>>()
                .as_slice()
        );
        assert_eq!(rees.pure_restriction(&[]).unwrap().num_generators(), 0);
        assert_eq!(veronese().pure_restriction(&[1]).unwrap().generators(), &[ev(&[2, 0])]);
    }
}
