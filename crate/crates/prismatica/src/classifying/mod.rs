//! Pointwise evaluation of the classifying map `P̄·S -> P·BG` and its checks.

mod checks;
mod coords;
mod map;

pub use checks::{
    check_all, check_m_compatibility, grid_points, product_samples, MCompatFailure, MCompatReport, ProductPoint, DUAL_PATH_TOL,
};
pub use coords::{from_interior, lambda_bar, lambda_interior, rho_eval, rho_lambda_composed, rho_target_dim, to_interior, InteriorPoint};
pub use map::{classify_cell, translation_discrepancy, ClassifyingTuple, Translation, TupleValue};
