//! Regularity of edge rings and Rees algebras.
//!
//! Two independent routes are available:
//!
//! * the Betti route: enumerate multidegrees up to a bound `j_max`, compute
//!   `beta_{i,a}` from squarefree divisor complexes and read off
//!   `reg = max{j - i : beta_{i,j} != 0}`. Truncation makes this a lower bound
//!   unless the table is deep enough.
//! * the normal route: when `R(I(G))` is normal it is Cohen-Macaulay of
//!   dimension `n + 1`, and `reg = (n + 1) - q0` where `q0` is the first
//!   dilation of `P_{G*}` with an interior lattice point.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NormalityReason};
use crate::homology::{betti_from_complex, FieldChoice, IntMatrix};
use crate::polytope::facet_system;
use crate::semigroup::{ExponentVector, ToricPresentation};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultigradedEntry {
    pub i: usize,
    pub degree: ExponentVector,
    pub count: usize,
}

/// Graded Betti numbers `beta_{i,j}` of a toric ring as a module over the
/// polynomial ring on its generators, for internal degrees `j <= j_max`.
/// Only nonzero entries are stored, sorted by `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub entries: Vec<BettiEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multigraded: Option<Vec<MultigradedEntry>>,
    pub field: FieldChoice,
    pub j_max: usize,
    /// Number of generators minus the rank of the generator lattice.
    pub homological_bound: usize,
    pub multidegrees_examined: usize,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries.binary_search_by(|e| (e.i, e.j).cmp(&(i, j))).map_or(0, |k| self.entries[k].count)
    }

    pub fn max_homological_degree(&self) -> Option<usize> {
        self.entries.iter().map(|e| e.i).max()
    }

    /// `sum_j beta_{i,j}` for `i = 0..=max`.
    pub fn totals(&self) -> Vec<usize> {
        let top = self.max_homological_degree().map_or(0, |m| m + 1);
        let mut t = vec![0; top];
        for e in &self.entries {
            t[e.i] += e.count;
        }
        t
    }

    /// Betti diagram in the usual layout: row `j - i`, column `i`, `-` for
    /// zero.
    pub fn render(&self) -> String {
        const W: usize = 5;
        let cols = self.max_homological_degree().map_or(1, |m| m + 1);
        let rows = self.entries.iter().map(|e| e.j - e.i).max().unwrap_or(0) + 1;
        let lw = format!("{}:", rows - 1).len().max(3);
        let rule = "-".repeat(lw + 1 + cols * W + 1);
        let mut out = " ".repeat(lw + 1);
        for i in 0..cols {
            out.push_str(&format!("{i:>W$}"));
        }
        out.push('\n');
        out.push_str(&rule);
        out.push('\n');
        for r in 0..rows {
            out.push_str(&format!("{:>lw$} ", format!("{r}:")));
            for i in 0..cols {
                match self.get(i, i + r) {
                    0 => out.push_str(&format!("{:>W$}", "-")),
                    c => out.push_str(&format!("{c:>W$}")),
                }
            }
            out.push('\n');
        }
        out.push_str(&rule);
        out.push('\n');
        out.push_str(&format!("{:<w$}", "Tot:", w = lw + 1));
        for t in self.totals() {
            out.push_str(&format!("{t:>W$}"));
        }
        out.push('\n');
        out
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BettiOptions {
    pub field: FieldChoice,
    pub multigraded: bool,
    /// Abort when more multidegrees than this would be examined.
    pub max_degrees: Option<usize>,
}

fn lattice_rank(p: &ToricPresentation) -> usize {
    if p.num_generators() == 0 {
        return 0;
    }
    let rows = p.generators().iter().map(|g| g.coords().iter().map(|&c| c as i64).collect()).collect();
    IntMatrix::from_rows(rows).rank(FieldChoice::Rationals)
}

/// Betti table up to internal degree `j_max`, from the divisor complexes of
/// every semigroup element of degree at most `j_max`.
pub fn betti_table(p: &ToricPresentation, j_max: usize, opts: BettiOptions) -> Result<BettiTable> {
    if j_max == 0 {
        return Err(Error::InvalidPresentation("j_max must be at least 1".into()));
    }
    let layers = p.enumerate_up_to(j_max, opts.max_degrees)?;
    let members: Vec<HashSet<&ExponentVector>> = layers.iter().map(|l| l.iter().collect()).collect();
    let member = |b: &ExponentVector| {
        p.degree_of(b).and_then(|q| members.get(q as usize)).is_some_and(|layer| layer.contains(b))
    };

    let degrees: Vec<(usize, &ExponentVector)> =
        layers.iter().enumerate().flat_map(|(q, l)| l.iter().map(move |a| (q, a))).collect();
    let per_degree: Vec<(usize, &ExponentVector, BTreeMap<usize, usize>)> = degrees
        .par_iter()
        .map(|&(q, a)| {
            let complex = p.divisor_complex_with(a, member);
            (q, a, betti_from_complex(&complex, opts.field))
        })
        .collect();

    let mut graded: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut multi = Vec::new();
    for (q, a, betti) in per_degree {
        for (i, c) in betti {
            *graded.entry((i, q)).or_default() += c;
            if opts.multigraded {
                multi.push(MultigradedEntry { i, degree: a.clone(), count: c });
            }
        }
    }
    multi.sort();
    Ok(BettiTable {
        entries: graded.into_iter().map(|((i, j), count)| BettiEntry { i, j, count }).collect(),
        multigraded: opts.multigraded.then_some(multi),
        field: opts.field,
        j_max,
        homological_bound: p.num_generators() - lattice_rank(p),
        multidegrees_examined: degrees.len(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegStatus {
    Exact,
    LowerBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegValue {
    pub value: usize,
    pub status: RegStatus,
}

/// `max{j - i : beta_{i,j} != 0}`. Exact only when
/// `j_max >= reg + max_i + 1`, otherwise a lower bound.
pub fn regularity_from_table(t: &BettiTable) -> Result<RegValue> {
    let value =
        t.entries.iter().filter(|e| e.count > 0).map(|e| e.j.saturating_sub(e.i)).max().ok_or(Error::EmptyTable)?;
    let max_i = t.max_homological_degree().unwrap_or(0);
    let status = if t.j_max > value + max_i { RegStatus::Exact } else { RegStatus::LowerBound };
    Ok(RegValue { value, status })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalRegularity {
    pub value: usize,
    pub q0: u32,
    /// Dimension of `P_{G*}`.
    pub polytope_dim: usize,
}

/// `reg R(I(G)) = (n + 1) - q0` for normal `R(I(G))`.
pub fn regularity_normal(g: &Graph) -> Result<NormalRegularity> {
    if g.num_edges() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let verdict = g.rees_is_normal();
    if !verdict.normal {
        return Err(Error::NotNormal(format!("{:?}", verdict.reason)));
    }
    let cone = g.cone_graph()?;
    let fs = facet_system(&cone)?;
    let polytope_dim = fs.dimension();
    if polytope_dim != g.n() {
        return Err(Error::Internal(format!(
            "edge polytope of the cone graph has dimension {polytope_dim}, expected {}",
            g.n()
        )));
    }
    let q0 = fs.interior_threshold()?;
    let value =
        (g.n() + 1).checked_sub(q0 as usize).ok_or_else(|| Error::Internal(format!("q0 = {q0} exceeds n + 1")))?;
    Ok(NormalRegularity { value, q0, polytope_dim })
}

/// Default truncation for the Betti route:
/// `mat(G) + (#generators - (n + 1)) + 2`.
pub fn default_j_max(g: &Graph) -> usize {
    let gens = g.num_edges() + g.n();
    g.matching_number() + gens.saturating_sub(g.n() + 1) + 2
}

/// Entrywise `beta_{i,j}(K[G]) <= beta_{i,j}(R(I(G)))` on tables truncated
/// at `j_max`.
pub fn betti_dominance_check(g: &Graph, j_max: usize, field: FieldChoice) -> Result<bool> {
    let opts = BettiOptions { field, ..Default::default() };
    let edge = betti_table(&ToricPresentation::edge_ring(g)?, j_max, opts)?;
    let rees = betti_table(&ToricPresentation::rees_algebra(g)?, j_max, opts)?;
    Ok(edge.entries.iter().all(|e| e.count <= rees.get(e.i, e.j)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    NormalFormula,
    BettiTable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Violated,
    Undetermined,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub statement: String,
    /// Whether the hypotheses of the corresponding theorem are met, i.e.
    /// whether a violation would be a contradiction.
    pub theorem_applies: bool,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub components: usize,
    pub bipartite: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub matching_number: usize,
    pub induced_matching_number: usize,
    /// Absent when the graph has an isolated vertex.
    pub edge_cover_number: Option<usize>,
    pub perfect_matching: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentNormality {
    pub vertices: Vec<usize>,
    pub bipartite: bool,
    pub odd_cycle_condition: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normality {
    pub components: Vec<ComponentNormality>,
    pub edge_ring_normal: bool,
    pub rees_normal: bool,
    pub reason: NormalityReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRoute {
    pub j_max: usize,
    pub regularity: RegValue,
    pub table: BettiTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub graph: GraphSummary,
    pub invariants: Invariants,
    pub normality: Normality,
    pub route: Route,
    pub q0: Option<u32>,
    pub regularity: RegValue,
    /// Present when the Betti route ran (as the main route or as a cross
    /// check).
    pub betti: Option<BettiRoute>,
    /// Set when both routes ran and disagree.
    pub discrepancy: bool,
    pub verdicts: Vec<Verdict>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AnalyzeOptions {
    /// Betti-route truncation; defaults to [`default_j_max`].
    pub j_max: Option<usize>,
    pub field: FieldChoice,
    /// Also run the Betti route on normal inputs and compare.
    pub cross_check: bool,
    pub max_degrees: Option<usize>,
}

pub fn invariants(g: &Graph) -> Invariants {
    Invariants {
        matching_number: g.matching_number(),
        induced_matching_number: g.induced_matching_number(),
        edge_cover_number: g.edge_cover_number().ok(),
        perfect_matching: g.has_perfect_matching(),
    }
}

pub fn normality(g: &Graph) -> Normality {
    let components: Vec<ComponentNormality> = g
        .connected_components()
        .into_iter()
        .map(|c| {
            let bipartite = g.is_bipartite(&c).map(|b| b.is_bipartite()).unwrap_or(false);
            let occ = g.odd_cycle_condition(&c).map(|o| o.holds()).unwrap_or(false);
            ComponentNormality { vertices: c, bipartite, odd_cycle_condition: occ }
        })
        .collect();
    let verdict = g.rees_is_normal();
    Normality {
        edge_ring_normal: components.iter().all(|c| c.odd_cycle_condition),
        components,
        rees_normal: verdict.normal,
        reason: verdict.reason,
    }
}

pub fn analyze(g: &Graph, opts: AnalyzeOptions) -> Result<RegularityReport> {
    if g.num_edges() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let invariants = invariants(g);
    let normality = normality(g);
    let bipartite = g.is_bipartite_graph();

    let j_max = opts.j_max.unwrap_or_else(|| default_j_max(g));
    let run_betti = || -> Result<BettiRoute> {
        let p = ToricPresentation::rees_algebra(g)?;
        let table = betti_table(
            &p,
            j_max,
            BettiOptions { field: opts.field, multigraded: false, max_degrees: opts.max_degrees },
        )?;
        Ok(BettiRoute { j_max, regularity: regularity_from_table(&table)?, table })
    };

    let (route, q0, regularity, betti, discrepancy) = if normality.rees_normal {
        let normal = regularity_normal(g)?;
        let exact = RegValue { value: normal.value, status: RegStatus::Exact };
        if opts.cross_check {
            let b = run_betti()?;
            let disagree = match b.regularity.status {
                RegStatus::Exact => b.regularity.value != normal.value,
                RegStatus::LowerBound => b.regularity.value > normal.value,
            };
            (Route::NormalFormula, Some(normal.q0), exact, Some(b), disagree)
        } else {
            (Route::NormalFormula, Some(normal.q0), exact, None, false)
        }
    } else {
        let b = run_betti()?;
        (Route::BettiTable, None, b.regularity, Some(b), false)
    };

    let summary = GraphSummary {
        n: g.n(),
        edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        components: normality.components.len(),
        bipartite,
    };
    let verdicts = verdicts(g, &invariants, normality.rees_normal, bipartite, regularity, betti.as_ref(), discrepancy);
    Ok(RegularityReport { graph: summary, invariants, normality, route, q0, regularity, betti, discrepancy, verdicts })
}

/// `reg >= bound`, decided from a possibly truncated value.
fn at_least(reg: RegValue, bound: usize) -> Outcome {
    match (reg.value >= bound, reg.status) {
        (true, _) => Outcome::Holds,
        (false, RegStatus::Exact) => Outcome::Violated,
        (false, RegStatus::LowerBound) => Outcome::Undetermined,
    }
}

/// `reg <= bound`.
fn at_most(reg: RegValue, bound: usize) -> Outcome {
    match (reg.value <= bound, reg.status) {
        (false, _) => Outcome::Violated,
        (true, RegStatus::Exact) => Outcome::Holds,
        (true, RegStatus::LowerBound) => Outcome::Undetermined,
    }
}

fn equals(reg: RegValue, target: usize) -> Outcome {
    match (at_least(reg, target), at_most(reg, target)) {
        (Outcome::Holds, Outcome::Holds) => Outcome::Holds,
        (Outcome::Violated, _) | (_, Outcome::Violated) => Outcome::Violated,
        _ => Outcome::Undetermined,
    }
}

fn verdicts(
    g: &Graph,
    inv: &Invariants,
    normal: bool,
    bipartite: bool,
    reg: RegValue,
    betti: Option<&BettiRoute>,
    discrepancy: bool,
) -> Vec<Verdict> {
    let mat = inv.matching_number;
    let several = g.num_edges() >= 2;
    let main_applies = normal && several;
    let mut out = vec![
        Verdict {
            name: "mat_le_reg".into(),
            statement: format!("mat(G) = {mat} <= reg R(I(G))"),
            theorem_applies: main_applies,
            outcome: at_least(reg, mat),
        },
        Verdict {
            name: "reg_le_mat_plus_one".into(),
            statement: format!("reg R(I(G)) <= mat(G) + 1 = {}", mat + 1),
            theorem_applies: main_applies,
            outcome: at_most(reg, mat + 1),
        },
        Verdict {
            name: "indmat_le_reg".into(),
            statement: format!("indmat(G) = {} <= reg R(I(G))", inv.induced_matching_number),
            theorem_applies: several,
            outcome: at_least(reg, inv.induced_matching_number),
        },
        Verdict {
            name: "perfect_matching_reg_eq_mat".into(),
            statement: format!("perfect matching and normal => reg R(I(G)) = mat(G) = {mat}"),
            theorem_applies: inv.perfect_matching && main_applies,
            outcome: if inv.perfect_matching && normal { equals(reg, mat) } else { Outcome::NotApplicable },
        },
        Verdict {
            name: "bipartite_reg_eq_mat".into(),
            statement: format!("bipartite => reg R(I(G)) = mat(G) = {mat}"),
            theorem_applies: bipartite && several,
            outcome: if bipartite { equals(reg, mat) } else { Outcome::NotApplicable },
        },
    ];
    if normal {
        if let Some(b) = betti {
            out.push(Verdict {
                name: "routes_agree".into(),
                statement: format!(
                    "Betti route ({:?} {}) agrees with the lattice-point route ({})",
                    b.regularity.status, b.regularity.value, reg.value
                ),
                theorem_applies: true,
                outcome: if discrepancy { Outcome::Violated } else { Outcome::Holds },
            });
        }
    }
    out
}
