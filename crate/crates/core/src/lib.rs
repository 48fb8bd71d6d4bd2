//! Exact rank and Jordan lengths of invertible matrices, almost homomorphisms
//! measured by them, and the amplification, conversion and free-product
//! constructions built on top.
//!
//! Everything is exact: finite fields, the rationals, extensions of either, and
//! rational function fields `F_p(t)`. No floating point is used anywhere in a
//! computed quantity.

pub mod almosthom;
pub mod amplify;
pub mod error;
pub mod exactfield;
pub mod freeprod;
pub mod jordanlen;
pub mod matspace;
pub mod par;
pub mod rational;
pub mod seed;
pub mod verify;

pub use error::{Error, Result};
