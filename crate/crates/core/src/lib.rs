//! Finite-group engine for checking the nilpotency criterion "G is nilpotent
//! iff every section S of G has an element of order exp(S)".
//!
//! Groups are fully enumerated ([`FiniteGroup`]); subgroups are bit vectors
//! over the parent's element indices ([`Subgroup`]); the complete subgroup
//! lattice drives Sylow, Frattini and section enumeration.

pub mod bitset;
pub mod build;
pub mod error;
pub mod group;
pub mod invariants;
pub mod lattice;
pub mod nilpotency;
pub mod numtheory;
pub mod perm;
pub mod report;
pub mod sections;
pub mod spec_text;
pub mod verifier;

pub use build::{build_group, ActionSpec, GroupSpec, Limits, NamedAction};
pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use invariants::{element_order, exponent, phi, profile, GroupProfile};
pub use lattice::{all_subgroups, Subgroup, SubgroupLattice};
pub use perm::Permutation;
pub use sections::{quotient, sections, Section};
