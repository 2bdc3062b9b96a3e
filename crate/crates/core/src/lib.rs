//! Holonomy, canonical cell classification, and normalized domain renderings
//! for finite-volume strictly convex projective structures on the
//! once-punctured torus and the thrice-punctured sphere.
//!
//! The geometry is generic over two scalar modes: exact rationals (the whole
//! holonomy pipeline is rational, including the bendings that drive cell
//! classification) and validated arbitrary-precision enclosures (for the
//! cube roots that flips and normal forms introduce). See [`scalar`] for the
//! modes, [`holonomy`] for the generators, [`cells`] and [`flips`] for the
//! classification machinery, [`sphere03`] for the three-cusped sphere, and
//! [`cloverleaf`] for rendering.

pub mod cells;
pub mod cloverleaf;
pub mod error;
pub mod flips;
pub mod holonomy;
pub mod projlin;
pub mod scalar;
pub mod sphere03;
pub mod structure;
pub mod trigonal;

pub use error::{Error, Result};
pub use scalar::{Iv, Iv256, Rat, Scalar, Sign, Trichotomy};
