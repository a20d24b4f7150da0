//! Exact computations with root systems, Weyl and Tits groups, and finite tori of reductive groups.

pub mod chevalley;
pub mod cyclotomic;
pub mod error;
pub mod grouptool;
pub mod harness;
pub mod matrix;
pub mod rootsys;
pub mod semisimple;
pub mod snf;
pub mod torus;
pub mod weyl;

pub use cyclotomic::CyclotomicOrder;
pub use error::{Error, Result};
pub use grouptool::{Fingerprint, SmallGroup, Subgroup};
pub use matrix::IntMatrix;
pub use rootsys::{CartanType, RootSystem, RootSystemLabel, SubSystem};
pub use torus::{FiniteTorus, FrobeniusTwist};
pub use weyl::{InvolutionClass, WeylElement, WeylGroup};
