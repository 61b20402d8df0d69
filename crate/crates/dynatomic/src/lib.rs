//! Numerical and exact dynamics for `z -> z^d + c` on top of the
//! combinatorial layer in `dynatomic-core`.

pub mod config;
pub mod cubature;
pub mod error;
pub mod exact;
pub mod formats;
pub mod monodromy;
pub mod orbit;
pub mod parabolic;
pub mod quad_diff;
pub mod rays;
pub mod render;
pub mod roots;
pub mod verify;

pub use dynatomic_core as core;
pub use error::{Error, Result};
