//! Cyclic supercharacters `σ_ω(y) = Σ_j e(ω^j y / n)`, the two families of
//! Gauss sums mod `p`, and the plane regions (hypocycloids, polygons and
//! their Minkowski combinations) that contain their images.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches a
//! file system or a terminal lives in the `cyclosum` companion crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod error;
pub mod factorize;
pub mod gauss;
pub mod geometry;
pub mod math;
pub mod modarith;
pub mod render;
pub mod supercharacter;

pub use error::{Error, Result};
pub use math::C64;
pub use supercharacter::{eval_sigma, image, ImagePoint, ImageSet, SupercharacterSpec};
