//! Exact fields and polynomials over them.

pub mod ext;
pub mod factor;
pub mod field;
pub mod fpoly;
pub mod json;
pub mod poly;

pub use ext::{ext_make, finite_field, Extension, Separability};
pub use factor::{factor_with_hints, poly_factor, roots_in_field, Factorization};
pub use field::{Elem, Field, FieldKind};
pub use json::{elem_from_json, elem_to_json, field_from_json, field_to_json};
pub use poly::Poly;
