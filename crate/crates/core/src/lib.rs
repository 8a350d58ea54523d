//! Schur rings over finite abelian groups: enumeration, closure,
//! constructions, isomorphisms and Weisfeiler-Leman experiments.

pub mod abelian_group;
pub mod constructions;
pub mod error;
pub mod isomorphism;
pub mod set;
pub mod sring;
pub mod verify;
pub mod wl;

pub use abelian_group::{AbelianGroup, GroupMorphism, Section, Subgroup};
pub use error::{Error, Result};
pub use set::ElementSet;
pub use sring::{GroupRingVector, SRing, StructureConstants};
