//! Edge polytopes of connected non-bipartite graphs.
//!
//! For such a graph the edge polytope `P_G = conv{e_i + e_j}` lies in the
//! hyperplane `sum z = 2` and its facets are cut out by
//!
//! * `z_i >= 0` for every regular vertex `i` (every component of `G - i` is
//!   non-bipartite), and
//! * `sum_{N(T)} z_j - sum_T z_i >= 0` for every fundamental independent set
//!   `T` (connected bipartite link `T#`, and the rest of the graph is empty or
//!   has only non-bipartite components).
//!
//! The lattice points of `qP_G` and of its relative interior then come from a
//! bounded enumeration against this system.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{mask_to_vertices, Bits, Graph};
use crate::homology::{FieldChoice, IntMatrix};
use crate::semigroup::ExponentVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FacetSource {
    /// `z_i >= 0`, 1-based vertex.
    RegularVertex { vertex: usize },
    /// `sum_{N(T)} z_j - sum_T z_i >= 0`, 1-based vertex sets.
    Fundamental { set: Vec<usize>, neighbors: Vec<usize> },
}

/// `sum_k coeffs[k] * z_k >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    pub coeffs: Vec<i32>,
    pub source: FacetSource,
}

impl Inequality {
    pub fn evaluate(&self, z: &[u32]) -> i64 {
        self.coeffs.iter().zip(z).map(|(&c, &v)| c as i64 * v as i64).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalSet {
    pub set: Vec<usize>,
    pub neighbors: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetSystem {
    pub ambient_dim: usize,
    /// Coordinate sum on `P_G`; the `q`-th dilation has sum `q * affine_rhs`.
    pub affine_rhs: u32,
    pub inequalities: Vec<Inequality>,
    /// Vertices of the polytope, one per edge.
    pub vertices: Vec<ExponentVector>,
}

/// Options for [`FacetSystem::dilation_points`].
#[derive(Clone, Copy, Debug, Default)]
pub struct PointQuery {
    /// Relative interior instead of the closed polytope.
    pub strict: bool,
    /// Keep only points with every coordinate at least 1.
    pub positive_only: bool,
    /// Abort once more than this many points are found.
    pub limit: Option<usize>,
}

fn require_connected_non_bipartite(g: &Graph) -> Result<()> {
    if g.num_edges() == 0 || !g.is_connected() {
        return Err(Error::UnsupportedGraph("edge polytope facets need a connected graph".into()));
    }
    if g.is_bipartite_graph() {
        return Err(Error::UnsupportedGraph("edge polytope facets need a non-bipartite graph".into()));
    }
    Ok(())
}

fn all_non_bipartite(g: &Graph, mask: u64) -> bool {
    g.components_within(mask).into_iter().all(|c| !g.bipartition_within(c).is_bipartite())
}

/// Vertices `i` such that every component of `G - i` is non-bipartite.
pub fn regular_vertices(g: &Graph) -> Result<Vec<usize>> {
    require_connected_non_bipartite(g)?;
    let all = g.all_mask();
    Ok((0..g.n()).filter(|&i| all_non_bipartite(g, all & !(1u64 << i))).map(|i| i + 1).collect())
}

/// Every fundamental set `T`, together with `N(T)`, ordered by the bitmask
/// of `T`.
pub fn fundamental_sets(g: &Graph) -> Result<Vec<FundamentalSet>> {
    require_connected_non_bipartite(g)?;
    let mut out = Vec::new();
    let mut stack = vec![(0u64, g.all_mask())];
    let all = g.all_mask();
    // enumerate nonempty independent sets: extend by vertices above the
    // current maximum that are not adjacent to anything chosen
    while let Some((set, cand)) = stack.pop() {
        for v in Bits(cand) {
            let grown = set | (1u64 << v);
            let above = if v == 63 { 0 } else { !((1u64 << (v + 1)) - 1) };
            let next_cand = cand & above & !g.adj_mask(v);
            stack.push((grown, next_cand));
            if is_fundamental(g, grown, all) {
                let nb = g.neighborhood(grown);
                out.push((grown, FundamentalSet { set: mask_to_vertices(grown), neighbors: mask_to_vertices(nb) }));
            }
        }
    }
    out.sort_by_key(|(m, _)| *m);
    Ok(out.into_iter().map(|(_, f)| f).collect())
}

fn is_fundamental(g: &Graph, t: u64, all: u64) -> bool {
    let nb = g.neighborhood(t);
    // T# has edges only between T and N(T)
    let start = t & t.wrapping_neg();
    let (mut reach_t, mut reach_n) = (start, 0u64);
    loop {
        let new_n = g.neighborhood(reach_t) & nb;
        let new_t = g.neighborhood(new_n) & t;
        if new_n == reach_n && new_t == reach_t {
            break;
        }
        reach_n = new_n;
        reach_t = new_t;
    }
    if reach_t | reach_n != t | nb {
        return false;
    }
    let rest = all & !(t | nb);
    rest == 0 || all_non_bipartite(g, rest)
}

/// Facet description of `P_G` for a connected non-bipartite `G`.
pub fn facet_system(g: &Graph) -> Result<FacetSystem> {
    let n = g.n();
    let mut inequalities: Vec<Inequality> = Vec::new();
    for v in regular_vertices(g)? {
        let mut coeffs = vec![0; n];
        coeffs[v - 1] = 1;
        inequalities.push(Inequality { coeffs, source: FacetSource::RegularVertex { vertex: v } });
    }
    for f in fundamental_sets(g)? {
        let mut coeffs = vec![0; n];
        for &j in &f.neighbors {
            coeffs[j - 1] = 1;
        }
        for &i in &f.set {
            coeffs[i - 1] = -1;
        }
        if inequalities.iter().any(|q| q.coeffs == coeffs) {
            continue;
        }
        inequalities
            .push(Inequality { coeffs, source: FacetSource::Fundamental { set: f.set, neighbors: f.neighbors } });
    }
    let vertices = g.edges0().iter().map(|&(i, j)| ExponentVector::edge(n, i, j)).collect();
    Ok(FacetSystem { ambient_dim: n, affine_rhs: 2, inequalities, vertices })
}

impl FacetSystem {
    /// Affine dimension of the polytope: rank of the differences of its
    /// vertices.
    pub fn dimension(&self) -> usize {
        let Some((base, rest)) = self.vertices.split_first() else {
            return 0;
        };
        let rows: Vec<Vec<i64>> = rest
            .iter()
            .map(|v| v.coords().iter().zip(base.coords()).map(|(&a, &b)| a as i64 - b as i64).collect())
            .collect();
        if rows.is_empty() {
            return 0;
        }
        IntMatrix::from_rows(rows).rank(FieldChoice::Rationals)
    }

    /// Membership of `z` in `qP` (or its relative interior when `strict`).
    pub fn contains(&self, z: &ExponentVector, q: u32, strict: bool) -> bool {
        let threshold = strict as i64;
        z.dim() == self.ambient_dim
            && z.total() == q as u64 * self.affine_rhs as u64
            && self.inequalities.iter().all(|ineq| ineq.evaluate(z.coords()) >= threshold)
    }

    /// Every vertex satisfies every inequality with equality somewhere and
    /// lies on the affine hyperplane. Returns the first offending inequality.
    pub fn check_support(&self) -> std::result::Result<(), Inequality> {
        for ineq in &self.inequalities {
            let values: Vec<i64> = self.vertices.iter().map(|v| ineq.evaluate(v.coords())).collect();
            if values.iter().any(|&x| x < 0) || !values.contains(&0) {
                return Err(ineq.clone());
            }
        }
        Ok(())
    }

    /// Lattice points of `qP` (or of its relative interior), sorted
    /// lexicographically.
    pub fn dilation_points(&self, q: u32, query: PointQuery) -> Result<Vec<ExponentVector>> {
        let mut out = Vec::new();
        let mut walker = PointWalker::new(self, q, query);
        walker.walk(&mut |z| {
            out.push(ExponentVector::new(z.to_vec()));
            match query.limit {
                Some(max) if out.len() > max => {
                    Err(Error::LimitExceeded(format!("more than {max} lattice points in dilation {q}")))
                }
                _ => Ok(true),
            }
        })?;
        Ok(out)
    }

    /// The lexicographically first point, if any.
    pub fn first_point(&self, q: u32, query: PointQuery) -> Option<ExponentVector> {
        let mut found = None;
        PointWalker::new(self, q, query)
            .walk(&mut |z| {
                found = Some(ExponentVector::new(z.to_vec()));
                Ok(false)
            })
            .expect("callback never fails");
        found
    }

    /// Smallest `q >= 1` whose dilation has an interior lattice point. The
    /// search stops at `dim + 1`, where an interior point always exists.
    pub fn interior_threshold(&self) -> Result<u32> {
        let cap = self.dimension() as u32 + 1;
        let query = PointQuery { strict: true, ..Default::default() };
        (1..=cap)
            .find(|&q| self.first_point(q, query).is_some())
            .ok_or_else(|| Error::Internal(format!("no interior lattice point up to the cap q = {cap}")))
    }
}

/// `q0` of the edge polytope of a connected non-bipartite graph.
pub fn q_zero(g: &Graph) -> Result<u32> {
    facet_system(g)?.interior_threshold()
}

/// Depth-first enumeration over coordinates. Before descending, every
/// inequality must still be satisfiable by some completion within the
/// remaining coordinate budget.
struct PointWalker<'a> {
    fs: &'a FacetSystem,
    q: u32,
    lo: u32,
    target: u32,
    threshold: i64,
    /// For each inequality and depth k: (#positive, #negative, sum of |neg|,
    /// max positive coefficient) among coordinates k..d.
    suffix: Vec<Vec<(u32, u32, i64, i64)>>,
    z: Vec<u32>,
}

impl<'a> PointWalker<'a> {
    fn new(fs: &'a FacetSystem, q: u32, query: PointQuery) -> Self {
        let d = fs.ambient_dim;
        let suffix = fs
            .inequalities
            .iter()
            .map(|ineq| {
                let mut acc = vec![(0, 0, 0, 0); d + 1];
                for k in (0..d).rev() {
                    let (p, n, sn, mp) = acc[k + 1];
                    let c = ineq.coeffs[k] as i64;
                    acc[k] = match c.signum() {
                        1 => (p + 1, n, sn, mp.max(c)),
                        -1 => (p, n + 1, sn - c, mp),
                        _ => (p, n, sn, mp),
                    };
                }
                acc
            })
            .collect();
        PointWalker {
            fs,
            q,
            lo: query.positive_only as u32,
            target: q * fs.affine_rhs,
            threshold: query.strict as i64,
            suffix,
            z: vec![0; d],
        }
    }

    /// `visit` returns `Ok(false)` to stop early.
    fn walk<F>(&mut self, visit: &mut F) -> Result<()>
    where
        F: FnMut(&[u32]) -> Result<bool>,
    {
        let mut partial = vec![0i64; self.fs.inequalities.len()];
        self.descend(0, 0, &mut partial, visit).map(|_| ())
    }

    fn feasible(&self, k: usize, used: u32, partial: &[i64]) -> bool {
        let d = self.fs.ambient_dim as u32;
        let left = d - k as u32;
        let Some(budget) = self.target.checked_sub(used) else {
            return false;
        };
        if budget > self.q * left || budget < self.lo * left {
            return false;
        }
        partial.iter().zip(&self.suffix).all(|(&val, suf)| {
            let (pos, _neg, neg_sum, max_pos) = suf[k];
            let best = max_pos * (budget.min(self.q * pos) as i64) - self.lo as i64 * neg_sum;
            val + best >= self.threshold
        })
    }

    fn descend<F>(&mut self, k: usize, used: u32, partial: &mut Vec<i64>, visit: &mut F) -> Result<bool>
    where
        F: FnMut(&[u32]) -> Result<bool>,
    {
        if !self.feasible(k, used, partial) {
            return Ok(true);
        }
        let d = self.fs.ambient_dim;
        if k == d {
            return visit(&self.z);
        }
        let hi = self.q.min(self.target - used);
        for v in self.lo..=hi {
            self.z[k] = v;
            for (p, ineq) in partial.iter_mut().zip(&self.fs.inequalities) {
                *p += ineq.coeffs[k] as i64 * v as i64;
            }
            let keep_going = self.descend(k + 1, used + v, partial, visit)?;
            for (p, ineq) in partial.iter_mut().zip(&self.fs.inequalities) {
                *p -= ineq.coeffs[k] as i64 * v as i64;
            }
            if !keep_going {
                self.z[k] = 0;
                return Ok(false);
            }
        }
        self.z[k] = 0;
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn six_vertex_example() -> Graph {
        Graph::new(6, [(1, 2), (2, 3), (3, 4), (1, 4), (2, 4), (2, 5), (2, 6)]).unwrap()
    }

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn rejects_unsupported_graphs() {
        assert!(matches!(regular_vertices(&Graph::cycle(4).unwrap()), Err(Error::UnsupportedGraph(_))));
        let two = Graph::cycle(3).unwrap().disjoint_union(&Graph::cycle(3).unwrap()).unwrap();
        assert!(matches!(facet_system(&two), Err(Error::UnsupportedGraph(_))));
    }

    #[test]
    fn triangle() {
        let t = Graph::cycle(3).unwrap();
        assert!(regular_vertices(&t).unwrap().is_empty());
        let fs = fundamental_sets(&t).unwrap();
        assert_eq!(fs.iter().map(|f| f.set.clone()).collect::<Vec<_>>(), vec![vec![1], vec![2], vec![3]]);
        let sys = facet_system(&t).unwrap();
        assert_eq!(sys.inequalities.len(), 3);
        assert_eq!(sys.dimension(), 2);
        sys.check_support().unwrap();
        assert_eq!(sys.interior_threshold().unwrap(), 3);
    }

    #[test]
    fn six_vertex_cone() {
        let cone = six_vertex_example().cone_graph().unwrap();
        assert_eq!(regular_vertices(&cone).unwrap(), (1..=7).collect::<Vec<_>>());
        let fund = fundamental_sets(&cone).unwrap();
        assert!(fund.iter().any(|f| f.set == vec![1, 3, 5, 6]));
        let sys = facet_system(&cone).unwrap();
        sys.check_support().unwrap();
        assert_eq!(sys.dimension(), 6);
        let positive = sys.dilation_points(4, PointQuery { positive_only: true, ..Default::default() }).unwrap();
        // (1,2,1,1,1,1,1) = {2,5} + {2,6} + {1,4} + {3,7} is a third such point
        assert_eq!(positive, vec![ev(&[1, 1, 1, 1, 1, 1, 2]), ev(&[1, 1, 1, 2, 1, 1, 1]), ev(&[1, 2, 1, 1, 1, 1, 1])]);
        let t = sys
            .inequalities
            .iter()
            .find(|i| matches!(&i.source, FacetSource::Fundamental { set, .. } if set == &[1, 3, 5, 6]))
            .unwrap();
        assert!(positive.iter().all(|z| t.evaluate(z.coords()) == 0));
        let interior = sys.dilation_points(4, PointQuery { strict: true, ..Default::default() }).unwrap();
        assert!(interior.is_empty());
        assert_eq!(sys.interior_threshold().unwrap(), 5);
    }

    #[test]
    fn five_cycle_cone() {
        let cone = Graph::cycle(5).unwrap().cone_graph().unwrap();
        assert_eq!(q_zero(&cone).unwrap(), 3);
    }

    #[test]
    fn point_limit() {
        let sys = facet_system(&Graph::cycle(5).unwrap().cone_graph().unwrap()).unwrap();
        let err = sys.dilation_points(3, PointQuery { limit: Some(2), ..Default::default() });
        assert!(matches!(err, Err(Error::LimitExceeded(_))));
    }
}
