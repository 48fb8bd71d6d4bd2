//! Dense exact matrices over any supported field.

pub mod charpoly;
pub mod elim;
pub mod json;
pub mod matrix;
pub mod perm;
pub mod restrict;
pub mod specialize;

pub use charpoly::charpoly;
pub use json::{matrix_file_from_json, matrix_file_to_json, matrix_from_json, matrix_to_json, MatrixFile};
pub use matrix::Matrix;
pub use perm::{perm_matrix, Permutation};
pub use restrict::restrict_scalars;
pub use specialize::{specialize_matrix, Specialization};
