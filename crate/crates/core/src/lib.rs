//! Exact computation of induced-matching width parameters (mim, sim, omim and
//! Omim, plus their linear variants) on small graphs, unrooted quartet
//! consistency, and the quartet-to-graph gadget constructions together with
//! the decompositions that witness their widths.

pub mod cut;
pub mod cycles;
pub mod decomp;
pub mod error;
pub mod gen;
pub mod graph;
pub mod harness;
mod matching;
pub mod reductions;
pub mod uqc;
pub mod widths;

pub use cut::{
    cut_value, max_induced_matching, mim_value, omim_max_value, omim_value, sim_value,
    upper_induced_matching_number, Cut, CutKind,
};
pub use cycles::has_induced_cycle_geq;
pub use decomp::{
    caterpillar_from_order, cuts_of, enumerate_orders, enumerate_ternary_trees, realizes,
    BranchDecomposition, TotalOrder, TreeEdge,
};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
pub use uqc::{solve_uqc, Quartet, UqcInstance};
pub use widths::{Budget, Decision, WidthParam, WidthReport};
