//! Dehn twists on plumbing surfaces and their algebraic shadows.
//!
//! The combinatorial side ([`surface`], [`plumbing`], [`curve`],
//! [`diagram`], [`twist`]) computes exactly with curves and arcs on surfaces
//! built from decorated graphs. The algebraic side ([`fuk`]) computes with
//! twisted complexes over zigzag algebras over the two-element field. The
//! [`stab`] and [`groups`] modules turn the outputs of both into
//! stabilisation records, transfer verdicts and group presentations.

pub mod arcs;
pub mod curve;
pub mod diagram;
pub mod error;
pub mod exec;
pub mod folding;
pub mod fuk;
pub mod groups;
pub mod plumbing;
pub mod stab;
pub mod surface;
pub mod twist;

pub use error::{Error, Result};
