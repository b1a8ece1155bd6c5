//! Truncated simplicial sets, the operator algebra on normal forms, and the
//! coordinate maps of the standard simplices.

pub mod complex;
pub mod coords;
pub mod identities;
pub mod map;
pub mod monotone;
pub mod set;
pub mod word;

pub use complex::OrderedComplex;
pub use coords::{eps, eta, eval_coord_map, BaryPoint, CoordKind, BARY_TOL};
pub use identities::{verify_identities, IdentityReport, IdentityViolation};
pub use map::{canonical_point, SimplicialMap};
pub use monotone::Monotone;
pub use set::{GenId, Generator, NormalForm, SimplicialSet, SimplicialSetBuilder};
pub use word::{apply_operator, block_surjection, mu_operator, normalize_word, Letter, OpKind, OperatorWord};
