//! The Lönne graph Γ_d, its relation system, explicit realizations by framed
//! classes, and the arithmetic checks that accompany the uniqueness argument.

mod checks;
mod graph;
mod realize;

pub use checks::{strip_census, triangle_case_check, StripCensus, TriangleCaseReport, TripleCheck};
pub use graph::{build_graph, relation_system, GraphExport, LonneGraph, RelationCounts, RelationSystem, Vertex};
pub use realize::{
    flip_triangle_third_curve, realize, solve_orientation_signs, validate_assignment, CheckTally, LonneRealization,
    ValidationRecord,
};
