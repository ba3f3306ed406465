//! Exact computations around the Rees algebra `R(I(G))` of the edge ideal of a
//! finite simple graph.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: simple graphs, matchings, edge covers, bipartiteness, the odd
//!   cycle condition and the cone graph `G*` whose edge ring is `R(I(G))`.
//! * [`semigroup`]: toric presentations, semigroup membership with witnesses,
//!   degree-wise enumeration and squarefree divisor complexes.
//! * [`homology`]: reduced simplicial homology over `Q` or `F_p`, and the
//!   bridge from divisor complexes to multigraded Betti numbers.
//! * [`polytope`]: facet systems of edge polytopes of connected non-bipartite
//!   graphs, lattice points of dilations and the interior threshold `q0`.
//! * [`regularity`]: Betti tables, the two regularity routes and per-instance
//!   verification reports.

pub mod error;
pub mod graph;
pub mod homology;
pub mod polytope;
pub mod regularity;
pub mod semigroup;

pub use error::{Error, Result};
pub use graph::Graph;
pub use homology::{FieldChoice, SimplicialComplex};
pub use polytope::FacetSystem;
pub use regularity::{BettiTable, RegularityReport};
pub use semigroup::{ExponentVector, ToricPresentation};
