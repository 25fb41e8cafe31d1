//! Exact-arithmetic central extensions and orbit classification for
//! anticommutative algebras.
//!
//! The crate computes, over the rationals and over odd prime fields:
//! second cohomology spaces of anticommutative algebras with their
//! Tortkara-compatible parts, central extensions, automorphism groups,
//! and automorphism orbits on Grassmannians of cohomology classes. On top
//! of that machinery it ships a verified catalog of the nilpotent
//! non-Tortkara anticommutative algebras whose annihilator has
//! codimension 4.
//!
//! Everything is a pure function over immutable values: algebras, forms,
//! subspaces and reports own their data and carry no interior
//! mutability, so values can be shared freely across threads.
//!
//! Start with the runnable examples (`cargo run -p extalg --example
//! cohomology_table`, `--example orbit_classification`, ...) or the
//! `extalg` command-line tool.

pub mod algebra;
pub mod classify;
pub mod cohomology;
pub mod error;
pub mod extension;
pub mod format;
pub mod linalg;
pub mod scalar;
pub mod symmetry;

mod fp;
mod search;

pub use algebra::{Algebra, InvariantSignature, TortkaraWitness};
pub use cohomology::{CohomologySpace, SkewForm};
pub use error::{Error, Result};
pub use extension::ExtensionSpec;
pub use linalg::{Matrix, Subspace};
pub use scalar::{FieldSpec, Scalar};
pub use symmetry::{AutomorphismSet, GrassmannFilter, OrbitReport};
