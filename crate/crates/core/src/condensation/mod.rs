//! Condensation identities: index sets, graph constructions and term-by-term
//! evaluation of both sides.

mod construct;
mod identities;
mod index_set;
mod report;

pub use construct::{build_symmetric_double, reduced_subgraphs, split_edge, SymmetricDouble, SymmetricGraph};
pub use identities::{
    bipartite_edge_sides, bipartite_subset_sides, bipartite_two_edge_sides, bipartite_vertex_edge_sides,
    bipartite_vertex_sides, edge_condensation_sides, edge_split_check, four_point_sides, reduced_subgraphs_check,
    symmetric_double_check, two_edge_sides, vertex_condensation_sides, vertex_edge_sides,
};
pub use index_set::IndexSet;
pub use report::{graph_hash, IdentityReport, Instance, Oracle, Part, Term};
