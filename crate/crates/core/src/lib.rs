//! Sublinear tolerant testing of bounded arboricity.
//!
//! The crate has three layers:
//!
//! * the query model ([`graph`]): a frozen graph behind a counted oracle
//!   that answers degree and i-th-neighbor queries;
//! * the sublinear tester ([`activity`], [`samplers`], [`tester`]), which
//!   only ever sees the oracle;
//! * full-access ground truth ([`decomposition`], [`oracles`]) and the
//!   experiment tooling built on it ([`harness`]).
//!
//! A graph that is ε-close to arboricity `α` is accepted with probability at
//! least 2/3, and a graph that is 20ε-far from arboricity `3α` is rejected
//! with probability at least 2/3.

pub mod activity;
pub mod decomposition;
pub mod graph;
pub mod harness;
pub mod oracles;
pub mod samplers;
pub mod tester;

mod epsilon;

pub use activity::{is_active, sample_schedule, ActivityVerdict, SampleSchedule};
pub use decomposition::{
    assign_edges, forest_decomposition, rounds_for, verify_peeling_bound, ActivityTrace,
    ForestDecomposition, PeelingBoundReport,
};
pub use epsilon::{Epsilon, EpsilonError};
pub use graph::{
    precedes_by_degree, GraphError, NeighborAnswer, QueryCounts, QueryError, QueryGraph,
    QuerySession, Vertex,
};
pub use oracles::{
    brute_force_arboricity_small, distance_to_arboricity, exact_activity_membership,
    exact_arboricity, max_forest_union, DistanceReport,
};
pub use samplers::{estimate_edge_count, sample_edge_almost_uniform, EdgeEstimate, EdgeSample};
pub use tester::{
    estimate_high_edges, estimate_remaining_low_edges, is_bounded_arboricity, is_high_degree,
    test_variant, Answer, Count, Stage, TesterConfig, TesterError, Variant, Verdict,
};
