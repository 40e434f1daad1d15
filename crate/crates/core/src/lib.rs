//! Cubic surfaces in complex projective 3-space and their twistor lines.
//!
//! The crate builds cubics containing five fibres of the twistor fibration
//! `CP³ → S⁴` from five points on a 2-sphere, finds and labels the 27 lines of
//! a nonsingular cubic, and decides whether a cubic admits a twistor structure
//! for which five of its lines are fibres.

#![allow(clippy::needless_range_loop)]

pub mod construct;
pub mod cubic;
pub mod detect;
pub mod error;
pub mod linalg;
pub mod lines27;
pub mod proj;
pub mod sampling;

pub use cubic::{BinaryCubic, CubicSurface};
pub use error::{Error, Result};
pub use linalg::C64;
pub use proj::{ExtComplex, ProjLine, ProjPoint, ProjTransform, TwistorStructure};
