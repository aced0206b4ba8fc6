//! Height functions on hypercube Adinkras, their discrete Morse divisors, and the
//! combinatorial map from heights to the Jacobian of the N = 5 Adinkra curve.

pub mod error;
pub mod geometry;
pub mod heights;
pub mod hypercube;
pub mod jacobian;
pub mod morse;
pub mod reference;
pub mod suites;

pub use error::{Error, Result};
pub use heights::{HeightFn, PinSet};
pub use hypercube::{Color, Face, Rainbow, SignedPermutation, Vertex};
pub use jacobian::{GroupElt, JacobianImage};
pub use morse::{DivisorPoint, MorseDivisor};
