//! Independent reference solvers used to check the subgradient iteration.

mod collinear;
mod grid;
pub mod instances;
mod weiszfeld;

pub use collinear::{collinear_median_oracle, CollinearMedian};
pub use grid::{grid_oracle, GridOracleResult, DEFAULT_REFINE_ROUNDS, DEFAULT_RESOLUTION};
pub use weiszfeld::{weiszfeld_euclidean, WeiszfeldResult};
