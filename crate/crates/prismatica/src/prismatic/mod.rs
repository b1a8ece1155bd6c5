//! The prismatic constructions `P(S)`, `P̄(S)` and `P(f)`, their operators,
//! the realization maps `λ`, the comparison maps `i`, `r`, `f`, the `aw` map,
//! and the strong prismatic set `E·S`.

pub mod cell;
pub mod comparison;
pub mod degree;
pub mod es;
pub mod identities;
pub mod realize;

pub use cell::{Payload, PrismCell, PrismOp, PrismaticSet};
pub use comparison::{aw_map, aw_operator, inclusion, map_f, retraction, ComparisonKind};
pub use degree::{Construction, MultiDegree};
pub use es::{EsCell, ProductPrismatic};
pub use identities::{check_operator_identities, PrismIdentityReport, PrismaticOps};
pub use realize::{lambda_eval, lambda_face_discrepancy, PrismPoint};
