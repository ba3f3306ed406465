//! Finite simple graphs and the matching-type invariants of their edge ideals.
//!
//! Vertices are `1..=n` at the public surface and `0..n` internally. Vertex
//! sets are stored as `u64` bitmasks, which caps graphs at 63 vertices so that
//! the cone graph still fits.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count accepted by [`Graph::new`].
pub const MAX_VERTICES: usize = 63;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    /// 0-based, each pair `(i, j)` with `i < j`, sorted lexicographically.
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
}

/// Outcome of a 2-colouring attempt on a connected vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bipartition {
    /// Colour classes, 1-based and sorted.
    Bipartite { left: Vec<usize>, right: Vec<usize> },
    /// An odd cycle, listed in traversal order, 1-based.
    OddCycle(Vec<usize>),
}

impl Bipartition {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartition::Bipartite { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OddCycleCheck {
    Holds,
    /// Two vertex-disjoint chordless odd cycles with no edge between them.
    Violated {
        first: Vec<usize>,
        second: Vec<usize>,
    },
}

impl OddCycleCheck {
    pub fn holds(&self) -> bool {
        matches!(self, OddCycleCheck::Holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormalityReason {
    /// Every component satisfies the odd cycle condition and at most one is
    /// non-bipartite.
    Normal,
    OddCycleConditionFails {
        component: Vec<usize>,
        first: Vec<usize>,
        second: Vec<usize>,
    },
    SeveralNonBipartiteComponents {
        first: Vec<usize>,
        second: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalityVerdict {
    pub normal: bool,
    pub reason: NormalityReason,
}

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

pub(crate) fn mask_to_vertices(mask: u64) -> Vec<usize> {
    Bits(mask).map(|v| v + 1).collect()
}

/// Iterator over set bits, lowest first.
#[derive(Clone, Copy)]
pub(crate) struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

impl Graph {
    /// Builds a graph on `1..=n` from 1-based edges. Loops, out-of-range
    /// endpoints and repeated edges are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!("{n} vertices exceeds the supported maximum of {MAX_VERTICES}")));
        }
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i == j {
                return Err(Error::InvalidGraph(format!("loop rejected at vertex {i}")));
            }
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(Error::InvalidGraph(format!("endpoint {v} outside 1..={n}")));
                }
            }
            let e = (i.min(j) - 1, i.max(j) - 1);
            if !set.insert(e) {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{}, {}}}", e.0 + 1, e.1 + 1)));
            }
        }
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![0u64; n];
        for &(i, j) in &edges {
            adj[i] |= bit(j);
            adj[j] |= bit(i);
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, std::iter::empty())
    }

    /// Path `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i, i + 1)))
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!("cycle needs at least 3 vertices, got {n}")));
        }
        Self::new(n, (1..n).map(|i| (i, i + 1)).chain(std::iter::once((1, n))))
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))))
    }

    /// `m` disjoint edges `{2i-1, 2i}`.
    pub fn disjoint_edges(m: usize) -> Result<Self> {
        Self::new(2 * m, (1..=m).map(|i| (2 * i - 1, 2 * i)))
    }

    /// Complete bipartite graph with parts `1..=a` and `a+1..=a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        Self::new(a + b, (1..=a).flat_map(|i| (a + 1..=a + b).map(move |j| (i, j))))
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Self> {
        let shift = self.n;
        Self::new(
            self.n + other.n,
            self.edges().into_iter().chain(other.edges().into_iter().map(|(i, j)| (i + shift, j + shift))),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as 1-based pairs `(i, j)`, `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(i, j)| (i + 1, j + 1)).collect()
    }

    pub(crate) fn edges0(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub(crate) fn adj_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub(crate) fn all_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            bit(self.n) - 1
        }
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && (1..=self.n).contains(&i) && (1..=self.n).contains(&j) && self.adj[i - 1] & bit(j - 1) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.adj[v] == 0).map(|v| v + 1).collect()
    }

    pub(crate) fn neighborhood(&self, mask: u64) -> u64 {
        Bits(mask).fold(0, |acc, v| acc | self.adj[v])
    }

    /// Connected components of the subgraph induced on `mask`, ordered by
    /// their smallest vertex.
    pub(crate) fn components_within(&self, mask: u64) -> Vec<u64> {
        let mut rest = mask;
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest & rest.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let grown = self.neighborhood(frontier) & mask & !comp;
                comp |= grown;
                frontier = grown;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }

    /// 2-colouring of the subgraph induced on a connected vertex mask.
    pub(crate) fn bipartition_within(&self, mask: u64) -> Bipartition {
        let Some(start) = Bits(mask).next() else {
            return Bipartition::Bipartite { left: vec![], right: vec![] };
        };
        let mut colour = vec![u8::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::from([start]);
        colour[start] = 0;
        while let Some(u) = queue.pop_front() {
            for w in Bits(self.adj[u] & mask) {
                if colour[w] == u8::MAX {
                    colour[w] = 1 - colour[u];
                    parent[w] = u;
                    queue.push_back(w);
                } else if colour[w] == colour[u] {
                    return Bipartition::OddCycle(odd_cycle_from_conflict(&parent, u, w));
                }
            }
        }
        let (mut left, mut right) = (vec![], vec![]);
        for v in Bits(mask) {
            if colour[v] == 0 {
                left.push(v + 1);
            } else {
                right.push(v + 1);
            }
        }
        Bipartition::Bipartite { left, right }
    }

    pub(crate) fn is_bipartite_mask(&self, mask: u64) -> bool {
        self.components_within(mask).into_iter().all(|c| self.bipartition_within(c).is_bipartite())
    }

    fn component_mask(&self, component: &[usize]) -> Result<u64> {
        let mut mask = 0u64;
        for &v in component {
            if v == 0 || v > self.n {
                return Err(Error::NotAComponent(format!("vertex {v} outside 1..={}", self.n)));
            }
            mask |= bit(v - 1);
        }
        if mask == 0 {
            return Err(Error::NotAComponent("empty vertex set".into()));
        }
        let closed = self.components_within(self.all_mask()).into_iter().any(|c| c == mask);
        if !closed {
            return Err(Error::NotAComponent(format!("{component:?}")));
        }
        Ok(mask)
    }

    /// Vertex sets of the connected components, 1-based, ordered by smallest
    /// vertex. Isolated vertices form singleton components.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        self.components_within(self.all_mask()).into_iter().map(mask_to_vertices).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components_within(self.all_mask()).len() <= 1
    }

    /// Bipartiteness of one connected component, with a colouring or an odd
    /// cycle as witness.
    pub fn is_bipartite(&self, component: &[usize]) -> Result<Bipartition> {
        let mask = self.component_mask(component)?;
        Ok(self.bipartition_within(mask))
    }

    pub fn is_bipartite_graph(&self) -> bool {
        self.is_bipartite_mask(self.all_mask())
    }

    /// A maximum matching, 1-based edges in lexicographic order.
    pub fn maximum_matching(&self) -> Vec<(usize, usize)> {
        let mut search =
            MatchingSearch { adj: &self.adj, current: Vec::new(), best: greedy_matching(&self.adj, self.all_mask()) };
        search.run(self.all_mask());
        let mut m: Vec<_> = search.best.iter().map(|&(i, j)| (i + 1, j + 1)).collect();
        m.sort_unstable();
        m
    }

    pub fn matching_number(&self) -> usize {
        self.maximum_matching().len()
    }

    /// A maximum induced matching, 1-based edges in lexicographic order.
    pub fn maximum_induced_matching(&self) -> Vec<(usize, usize)> {
        let mut search = InducedMatchingSearch { adj: &self.adj, current: Vec::new(), best: Vec::new() };
        search.run(self.all_mask());
        let mut m: Vec<_> = search.best.iter().map(|&(i, j)| (i + 1, j + 1)).collect();
        m.sort_unstable();
        m
    }

    pub fn induced_matching_number(&self) -> usize {
        self.maximum_induced_matching().len()
    }

    /// A minimum edge cover, 1-based. Fails when a vertex is isolated.
    pub fn minimum_edge_cover(&self) -> Result<Vec<(usize, usize)>> {
        if let Some(&v) = self.isolated_vertices().first() {
            return Err(Error::NoCover(v));
        }
        let mut search =
            CoverSearch { adj: &self.adj, current: Vec::new(), best: greedy_cover(&self.adj, self.all_mask()) };
        search.run(self.all_mask());
        let mut c: Vec<_> = search.best.iter().map(|&(i, j)| (i.min(j) + 1, i.max(j) + 1)).collect();
        c.sort_unstable();
        Ok(c)
    }

    pub fn edge_cover_number(&self) -> Result<usize> {
        Ok(self.minimum_edge_cover()?.len())
    }

    pub fn has_perfect_matching(&self) -> bool {
        self.n.is_multiple_of(2) && self.matching_number() * 2 == self.n
    }

    /// Chordless odd cycles inside `mask`, as vertex masks in increasing
    /// numeric order. Exponential in the worst case.
    pub(crate) fn chordless_odd_cycles(&self, mask: u64) -> Vec<u64> {
        let mut found = BTreeSet::new();
        for s in Bits(mask) {
            let allowed = mask & !(bit(s + 1) - 1);
            let mut path = vec![s];
            for v1 in Bits(self.adj[s] & allowed) {
                path.push(v1);
                self.extend_chordless(&mut path, allowed, bit(s) | bit(v1), &mut found);
                path.pop();
            }
        }
        found.into_iter().filter(|c: &u64| c.count_ones() % 2 == 1).collect()
    }

    fn extend_chordless(&self, path: &mut Vec<usize>, allowed: u64, on_path: u64, found: &mut BTreeSet<u64>) {
        let s = path[0];
        let last = *path.last().unwrap();
        let interior = on_path & !bit(s) & !bit(last);
        for y in Bits(self.adj[last] & allowed & !on_path) {
            if self.adj[y] & interior != 0 {
                continue;
            }
            if self.adj[y] & bit(s) != 0 {
                found.insert(on_path | bit(y));
            } else {
                path.push(y);
                self.extend_chordless(path, allowed, on_path | bit(y), found);
                path.pop();
            }
        }
    }

    /// Odd cycle condition on a connected component. Only chordless odd
    /// cycles are enumerated: a chord of an odd cycle cuts off a shorter odd
    /// cycle on a subset of its vertices.
    pub fn odd_cycle_condition(&self, component: &[usize]) -> Result<OddCycleCheck> {
        let mask = self.component_mask(component)?;
        Ok(self.odd_cycle_condition_mask(mask))
    }

    fn odd_cycle_condition_mask(&self, mask: u64) -> OddCycleCheck {
        let cycles = self.chordless_odd_cycles(mask);
        for (k, &a) in cycles.iter().enumerate() {
            let reach = self.neighborhood(a);
            for &b in &cycles[k + 1..] {
                if a & b == 0 && reach & b == 0 {
                    return OddCycleCheck::Violated { first: mask_to_vertices(a), second: mask_to_vertices(b) };
                }
            }
        }
        OddCycleCheck::Holds
    }

    /// `G*`: a new vertex `n + 1` joined to every vertex of `G`.
    pub fn cone_graph(&self) -> Result<Graph> {
        let apex = self.n + 1;
        Graph::new(apex, self.edges().into_iter().chain((1..=self.n).map(|i| (i, apex))))
    }

    /// Normality of `R(I(G)) = K[G*]`: every component satisfies the odd
    /// cycle condition and at most one component is non-bipartite.
    pub fn rees_is_normal(&self) -> NormalityVerdict {
        let mut non_bipartite: Option<u64> = None;
        for comp in self.components_within(self.all_mask()) {
            if self.bipartition_within(comp).is_bipartite() {
                continue;
            }
            if let OddCycleCheck::Violated { first, second } = self.odd_cycle_condition_mask(comp) {
                return NormalityVerdict {
                    normal: false,
                    reason: NormalityReason::OddCycleConditionFails {
                        component: mask_to_vertices(comp),
                        first,
                        second,
                    },
                };
            }
            if let Some(prev) = non_bipartite {
                return NormalityVerdict {
                    normal: false,
                    reason: NormalityReason::SeveralNonBipartiteComponents {
                        first: mask_to_vertices(prev),
                        second: mask_to_vertices(comp),
                    },
                };
            }
            non_bipartite = Some(comp);
        }
        NormalityVerdict { normal: true, reason: NormalityReason::Normal }
    }

    /// Normality of the edge ring `K[G]` itself.
    pub fn edge_ring_is_normal(&self) -> bool {
        self.components_within(self.all_mask()).into_iter().all(|c| self.odd_cycle_condition_mask(c).holds())
    }
}

fn odd_cycle_from_conflict(parent: &[usize], u: usize, w: usize) -> Vec<usize> {
    let ancestors = |mut v: usize| {
        let mut chain = vec![v];
        while parent[v] != usize::MAX {
            v = parent[v];
            chain.push(v);
        }
        chain
    };
    let pu = ancestors(u);
    let pw = ancestors(w);
    let on_pw: HashSet<usize> = pw.iter().copied().collect();
    let lca_pos = pu.iter().position(|v| on_pw.contains(v)).unwrap();
    let lca = pu[lca_pos];
    let mut cycle: Vec<usize> = pu[..=lca_pos].to_vec();
    let w_pos = pw.iter().position(|&v| v == lca).unwrap();
    cycle.extend(pw[..w_pos].iter().rev());
    cycle.into_iter().map(|v| v + 1).collect()
}

fn greedy_matching(adj: &[u64], mask: u64) -> Vec<(usize, usize)> {
    let mut avail = mask;
    let mut out = Vec::new();
    for v in Bits(mask) {
        if avail & bit(v) == 0 {
            continue;
        }
        if let Some(w) = Bits(adj[v] & avail & !bit(v)).next() {
            out.push((v, w));
            avail &= !(bit(v) | bit(w));
        }
    }
    out
}

fn greedy_cover(adj: &[u64], mask: u64) -> Vec<(usize, usize)> {
    let mut uncovered = mask;
    let mut out = Vec::new();
    while uncovered != 0 {
        let v = uncovered.trailing_zeros() as usize;
        let w = Bits(adj[v] & uncovered)
            .next()
            .or_else(|| Bits(adj[v]).next())
            .expect("greedy cover on graph without isolated vertices");
        out.push((v, w));
        uncovered &= !(bit(v) | bit(w));
    }
    out
}

/// Vertices of `avail` with at least one neighbour in `avail`.
fn active(adj: &[u64], avail: u64) -> u64 {
    Bits(avail).filter(|&v| adj[v] & avail != 0).fold(0, |m, v| m | bit(v))
}

struct MatchingSearch<'a> {
    adj: &'a [u64],
    current: Vec<(usize, usize)>,
    best: Vec<(usize, usize)>,
}

impl MatchingSearch<'_> {
    fn run(&mut self, avail: u64) {
        let live = active(self.adj, avail);
        if live == 0 {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        if self.current.len() + live.count_ones() as usize / 2 <= self.best.len() {
            return;
        }
        let v = live.trailing_zeros() as usize;
        for w in Bits(self.adj[v] & live) {
            self.current.push((v, w));
            self.run(live & !(bit(v) | bit(w)));
            self.current.pop();
        }
        self.run(live & !bit(v));
    }
}

struct InducedMatchingSearch<'a> {
    adj: &'a [u64],
    current: Vec<(usize, usize)>,
    best: Vec<(usize, usize)>,
}

impl InducedMatchingSearch<'_> {
    fn run(&mut self, avail: u64) {
        let live = active(self.adj, avail);
        if live == 0 {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        if self.current.len() + live.count_ones() as usize / 2 <= self.best.len() {
            return;
        }
        let v = live.trailing_zeros() as usize;
        for w in Bits(self.adj[v] & live) {
            let closed = bit(v) | bit(w) | self.adj[v] | self.adj[w];
            self.current.push((v, w));
            self.run(live & !closed);
            self.current.pop();
        }
        self.run(live & !bit(v));
    }
}

struct CoverSearch<'a> {
    adj: &'a [u64],
    current: Vec<(usize, usize)>,
    best: Vec<(usize, usize)>,
}

impl CoverSearch<'_> {
    fn run(&mut self, uncovered: u64) {
        if uncovered == 0 {
            if self.current.len() < self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        let lower = (uncovered.count_ones() as usize).div_ceil(2);
        if self.current.len() + lower >= self.best.len() {
            return;
        }
        let v = uncovered.trailing_zeros() as usize;
        // prefer partners that are themselves still uncovered
        let nbrs = self.adj[v];
        for w in Bits(nbrs & uncovered).chain(Bits(nbrs & !uncovered)) {
            self.current.push((v, w));
            self.run(uncovered & !(bit(v) | bit(w)));
            self.current.pop();
        }
    }
}
