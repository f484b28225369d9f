//! Regression graphs end to end: construction and validation, Markov
//! equivalence, implied-independence and implied-dependence queries,
//! marginalization and conditioning into summary graphs, confounding
//! detection, and numerical oracles (linear Gaussian systems and exact binary
//! tables) that verify graph-level claims at desk scale.
//!
//! Entry points:
//! - [`RegressionGraph::build`] and the [`format`] module for construction;
//! - [`equivalence::markov_equivalent`] for the skeleton-plus-collision test;
//! - [`separation`] for implied-independence queries on concentration
//!   graphs, DAGs, and general regression graphs;
//! - [`edge_matrix`] for the indicator calculus behind the general criterion;
//! - [`transform`] for summary graphs and the confounding detectors;
//! - [`oracle`] for Gaussian systems and exact binary tables backing every
//!   graph-level verdict numerically.

pub mod bits;
pub mod edge_matrix;
pub mod equivalence;
pub mod format;
pub mod graph;
pub mod oracle;
pub mod separation;
pub mod transform;

pub use bits::{NodeSet, MAX_NODES};
pub use edge_matrix::{
    from_edge_matrix, indicator_closure, induced_edge_matrix, to_edge_matrix, zero_test,
    EdgeMatrix, InducedMatrix, MatrixError, NodePartition,
};
pub use equivalence::{
    equivalent_subclass_members, markov_equivalent, EquivalenceError, EquivalenceReport,
};
pub use format::{export_dot, parse_graph, serialize, ParseError, ParsedGraph};
pub use graph::{
    arrow, dashed, double, full, Block, ComponentKind, Components, EdgeSpec, EndMark, GraphError,
    MixedGraph, NodeId, RegressionGraph, Subclass, SummaryGraph, VConfiguration, VKind,
};
pub use oracle::{
    check_combination_properties, check_singleton_transitivity, cond_cov, dag_binary_table,
    marg_con, pairwise_statements, partial_correlation, regress_coeff, sample_system, Dist,
    GaussianSystem, JointTable, OracleError, PairwiseStatement,
};
pub use separation::{
    d_separate, rg_separate, separate_concentration, IndependenceQuery, QueryError, QueryVerdict,
    Witness,
};
pub use transform::{
    detect_conditioning_distortions, detect_direct_confounding, detect_indirect_confounding,
    detect_distortions, summary_graph, transform_summary, ConditioningDistortions,
    DistortionReport, TransformError, TransformSpec,
};
