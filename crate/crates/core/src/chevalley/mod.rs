//! Chevalley bases, adjoint matrices of torus-normalizing elements and the E6 constructions.

mod adjoint;
mod basis;
mod e6;
mod tits_model;

pub use adjoint::{principal_parity, verify_adams_he, AdamsHeCheck, Adjoint, TitsElement};
pub use basis::{cocycle, ChevalleyBasis, SparseVec};
pub use e6::{
    e6_root, render_extended_action, verify_chevalley2, verify_chevalley3, Chevalley2Report, Chevalley3Report,
    E6Elements, E6_SYMMETRY,
};
pub use tits_model::{all_subsets, check_adams_he, TitsModelElement};
