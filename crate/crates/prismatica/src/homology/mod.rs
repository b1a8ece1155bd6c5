//! Integer chain complexes of simplicial and prismatic sets, Smith normal
//! form, homology, and chain-map checks.

pub mod builders;
pub mod complex;
pub mod matrix;
pub mod snf;

pub use builders::{
    aw_chain_map, fibre_complex, inclusion_chain_map, map_f_chain_map, prismatic_total_complex, simplicial_chain_complex, Orientation,
};
pub use complex::{identity_map, verify_chain_map, ChainComplex, ChainMapReport, ChainMapViolation, DegreeHomology, HomologyGroup};
pub use matrix::IntMatrix;
pub use snf::{dense_smith, smith_normal_form, SmithForm};
