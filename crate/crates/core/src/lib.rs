//! Exact isomorphism testing for finite groups given by Cayley tables.
//!
//! A group is cut into a characteristic normal subgroup and a quotient; the
//! pieces are compared through their extension data (action and 2-cocycle)
//! up to coboundaries and automorphisms.

pub mod config;
pub mod error;
pub mod abelian;
pub mod builders;
pub mod cayley;
pub mod cohomology;
pub mod corpus;
pub mod isoengine;
pub mod linalg;
pub mod permtools;

pub use config::{Caps, EngineConfig};
pub use error::{Error, NotAGroupReason, Result};
