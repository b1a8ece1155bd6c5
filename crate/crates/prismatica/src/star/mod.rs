mod complex;
mod membership;
mod pbar;

pub use complex::{st_iso, star_complex, StIsoDegree};
pub use membership::{achievable, in_star, star_membership, StarPair, StarWitness};
pub use pbar::{
    check_pbar, check_pbar_faces, pbar, pbar_inverse, pbar_witness, star_base_face, star_cells, star_fiber_face, PbarDegreeReport,
    PbarFaceReport, StarCell,
};
