//! The structured output document.

use edgerees::polytope::Inequality;
use edgerees::regularity::{BettiEntry, Invariants, Normality, RegValue, Route, Verdict};
use edgerees::{ExponentVector, FieldChoice};
use serde::{Deserialize, Serialize};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub input: InputSection,
    pub invariants: Option<Invariants>,
    pub normality: Option<Normality>,
    pub route: Option<RouteSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti: Option<BettiSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polytope: Option<PolytopeSection>,
    pub verdicts: Vec<Verdict>,
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputSection {
    pub command: String,
    pub source: String,
    pub n: Option<usize>,
    pub edges: Option<Vec<[usize; 2]>>,
    pub generators: Option<Vec<ExponentVector>>,
    pub field: FieldChoice,
    pub j_max: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RouteSection {
    pub kind: Route,
    pub q0: Option<u32>,
    pub regularity: RegValue,
    pub discrepancy: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BettiSection {
    pub ring: String,
    pub j_max: usize,
    pub regularity: RegValue,
    pub homological_bound: usize,
    pub multidegrees_examined: usize,
    pub entries: Vec<BettiEntry>,
    pub totals: Vec<usize>,
    pub diagram: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolytopeSection {
    /// Always the cone graph of the input.
    pub graph: String,
    pub ambient_dim: usize,
    pub dimension: usize,
    pub q0: u32,
    pub facets: Vec<Inequality>,
    pub q: Option<u32>,
    pub interior: bool,
    pub positive_only: bool,
    pub points: Vec<ExponentVector>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchRow {
    pub index: usize,
    pub label: String,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub invariants: Invariants,
    pub isolated_vertices: usize,
    pub rees_normal: bool,
    pub route: Option<Route>,
    pub q0: Option<u32>,
    pub regularity: Option<RegValue>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchDocument {
    pub tool_version: String,
    pub family: String,
    pub field: FieldChoice,
    pub j_max: Option<usize>,
    pub rows: Vec<BatchRow>,
    pub timing_ms: Option<u64>,
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}
