//! Cut-dense graphs and graphs of linear minimum degree.

pub mod checks;
pub mod helper;
pub mod min_degree;
pub mod params;
pub mod paths;

pub use checks::{
    cut_density, gqlem_checks, random_subgraph, sampled_cut_dense_check, sampled_thin_check, HelperChecks,
};
pub use helper::{decompose_cut_dense, decompose_via_helper};
pub use min_degree::{bipartite_decompose, decompose_min_degree, partition_cut_dense, refine_cut};
pub use params::{CutDenseParams, MinDegreeParams};
pub use paths::{connect_pairs, internal_cap, short_path_collection, PairRouting};
