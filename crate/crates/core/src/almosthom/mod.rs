//! Group windows, almost homomorphisms into `GL_n(K)`, their quality
//! metrics and the two repair operations.

pub mod group;
pub mod hom;
pub mod io;
pub mod repair;

pub use group::{FiniteGroup, GroupOracle, GroupWindow};
pub use hom::{
    hom_from_exact_rep, length, quotient_length, window_from_finite_group, AlmostHom, DefectScan, LengthMode,
    QualityReport,
};
pub use io::{hom_from_json, hom_to_json, read_hom, write_hom};
pub use repair::{adapt_inverses, normalize_identity};
