//! Resolutions, syzygies, tensor products, Tor, extensions and complexity.

pub mod cache;
mod complexity;
mod exact;
mod resolution;
mod tensor;

pub use complexity::{classify_complexity, Complexity, ComplexityVerdict};
pub(crate) use complexity::derive_seed;
pub use exact::{extension, is_exact, Extension};
pub use resolution::{cosyzygy, minimal_cover, resolve, resolve_shared, stable_reduce, syzygy, Resolution};
pub use tensor::{tensor, tor, tor_dims};

/// Default truncation degree for resolutions.
pub const DEFAULT_MAX_DEG: usize = 8;
/// Default number of random trials in isomorphism searches.
pub const DEFAULT_TRIALS: u32 = 16;
