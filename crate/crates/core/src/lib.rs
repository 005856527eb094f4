//! A desk-scale laboratory for operator-algebra constructions.
//!
//! The crate implements finite, fully computable analogs of the classical
//! group-measure-space machinery: finite-dimensional *-algebras with traces,
//! measure-preserving actions of finite groups and their crossed products,
//! group von Neumann algebras, Mekler's graph-to-group construction, ITPFI
//! T-set classification, and a reduction-verification harness that checks
//! the expected correspondences on exhaustive small catalogs.

pub mod actions;
pub mod caps;
pub mod crossed;
pub mod error;
pub mod groups;
pub mod groupvna;
pub mod harness;
pub mod itpfi;
pub mod linalg;
pub mod mekler;
pub mod redux;
pub mod schema;
pub mod staralg;

pub use caps::{Caps, DEFAULT_TOL};
pub use error::{Error, Result};
pub use linalg::{CMat, CVec};
pub use staralg::{AlgebraReport, StarAlgebra, TraceForm};
