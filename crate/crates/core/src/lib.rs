//! Exact homological algebra over monomial complete intersections
//! `A = F_p[X_1..X_c]/(X_1^{a_1}, ..., X_c^{a_c})`.
//!
//! Modules are finite-dimensional `F_p`-spaces with commuting nilpotent
//! action matrices. Everything is computed exactly over `F_p`.

pub mod construct;
pub mod error;
pub mod exactalg;
pub mod gk;
pub mod homalg;
pub mod module;
pub mod ring;
pub mod suites;
pub mod support;

pub use error::{Error, Result};
pub use exactalg::{FieldSpec, Mat, Subspace};
pub use homalg::{Complexity, ComplexityVerdict, Resolution};
pub use module::{IsoVerdict, IsoWitness, Module, ModuleMap};
pub use ring::{CIRing, Embedding, LinearForm};
